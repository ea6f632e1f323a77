//! Obstruction campaigns: sweeps over small finite groups looking for a
//! vanishing twisted Alexander polynomial, alongside the monicity and degree
//! checks that every fibered knot passes.

use num_bigint::BigInt;
use serde::Serialize;

use crate::catalog::Knot;
use crate::error::{Error, Result};
use crate::groups::{group_family, GroupSpec};
use crate::twisted::{
    classical_alexander, fibering_report, FiberingReport, Representation, TwistedOptions, Verdict,
};

/// Group families swept by [`vanishing_search`], ordered by group order, then
/// cyclic, dihedral, alternating, symmetric.
pub fn sweep_families(max_order: usize) -> Vec<GroupSpec> {
    let mut specs: Vec<(u128, usize, GroupSpec)> = Vec::new();
    for k in 1..=max_order {
        specs.push((k as u128, 0, GroupSpec::Cyclic(k)));
    }
    for k in 3..=max_order / 2 {
        specs.push((2 * k as u128, 1, GroupSpec::Dihedral(k)));
    }
    for k in 4.. {
        let spec = GroupSpec::Alternating(k);
        let order = spec.order().unwrap();
        if order > max_order as u128 {
            break;
        }
        specs.push((order, 2, spec));
    }
    for k in 3.. {
        let spec = GroupSpec::Symmetric(k);
        let order = spec.order().unwrap();
        if order > max_order as u128 {
            break;
        }
        specs.push((order, 3, spec));
    }
    specs.sort_by_key(|a| (a.0, a.1));
    specs.into_iter().map(|(_, _, s)| s).collect()
}

/// Summary of one (group, representation) pass of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupOutcome {
    pub group: String,
    pub representation: Representation,
    pub order: usize,
    /// `None` when the homomorphism search ran out of budget.
    pub hom_count: Option<usize>,
    pub vanishing: usize,
    pub non_monic: usize,
    pub degree_mismatch: usize,
    pub budget_exceeded: bool,
}

/// A representation with `Δ_{k,γ} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub group: String,
    pub representation: Representation,
    pub rep_images: Vec<String>,
    pub n: usize,
    pub orbit_count: usize,
    /// Whether a second column block also gave the zero polynomial.
    pub second_column_agrees: Option<bool>,
}

/// Result of [`vanishing_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sweep {
    pub knot: String,
    pub max_order: usize,
    pub outcomes: Vec<GroupOutcome>,
    pub witness: Option<Witness>,
    /// All groups searched without finding a witness and without overflow.
    pub exhausted: bool,
}

fn outcome(order: usize, report: &FiberingReport) -> GroupOutcome {
    let r = &report.reports;
    GroupOutcome {
        group: report.group.clone(),
        representation: report.representation,
        order,
        hom_count: Some(r.len()),
        vanishing: r.iter().filter(|x| x.is_vanishing).count(),
        non_monic: r.iter().filter(|x| x.is_monic == Some(false)).count(),
        degree_mismatch: r.iter().filter(|x| x.degree_law_holds() == Some(false)).count(),
        budget_exceeded: false,
    }
}

/// Sweeps [`sweep_families`] up to `max_order`, natural then regular
/// representation (skipped for cyclic groups, where it equals the natural
/// one), and stops after the first group with a vanishing `Δ_{k,γ}`.
pub fn vanishing_search(knot: &Knot, max_order: usize, options: TwistedOptions) -> Result<Sweep> {
    let mut outcomes = Vec::new();
    let mut witness = None;
    let mut overflow = false;
    'groups: for spec in sweep_families(max_order) {
        let group = group_family(&spec, max_order.max(1))?;
        let regular_too = !matches!(spec, GroupSpec::Cyclic(_));
        for use_regular in [false, true] {
            if use_regular && !regular_too {
                continue;
            }
            let representation = if use_regular { Representation::Regular } else { Representation::Natural };
            match fibering_report(knot, &group, use_regular, options) {
                Ok(report) => {
                    outcomes.push(outcome(group.order(), &report));
                    if let Some(w) = report.reports.iter().find(|r| r.is_vanishing) {
                        witness = Some(Witness {
                            group: w.group.clone(),
                            representation: w.representation,
                            rep_images: w.rep_images.clone(),
                            n: w.n,
                            orbit_count: w.orbit_count,
                            second_column_agrees: w.second_column_agrees,
                        });
                        break 'groups;
                    }
                }
                Err(Error::BudgetExceeded { .. }) => {
                    overflow = true;
                    outcomes.push(GroupOutcome {
                        group: group.name().to_string(),
                        representation,
                        order: group.order(),
                        hom_count: None,
                        vanishing: 0,
                        non_monic: 0,
                        degree_mismatch: 0,
                        budget_exceeded: true,
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    let exhausted = witness.is_none() && !overflow;
    Ok(Sweep { knot: knot.name.clone(), max_order, outcomes, witness, exhausted })
}

/// Classical Alexander polynomial checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalCheck {
    pub delta: String,
    pub monic: bool,
    pub degree: i64,
    pub degree_expected: Option<i64>,
}

/// Conditions established for the knot. The last three are equivalent, so a
/// vanishing witness establishes all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub non_monic_classical: bool,
    pub classical_degree_mismatch: bool,
    pub non_monic_twisted: bool,
    pub twisted_degree_mismatch: bool,
    pub vanishing_twisted_polynomial: bool,
    pub uncountably_many_finite_covers: bool,
    pub weakly_subgroup_separable: bool,
}

/// Outcome of an obstruction campaign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Campaign {
    pub knot: String,
    pub classical: ClassicalCheck,
    pub sweep: Sweep,
    pub certificates: Certificates,
    pub verdict: Verdict,
}

/// Classical checks plus [`vanishing_search`].
pub fn obstruct(knot: &Knot, max_order: usize, options: TwistedOptions) -> Result<Campaign> {
    let delta = classical_alexander::<BigInt>(&knot.presentation)?;
    let rep = delta.representative();
    let degree = rep.span_degree().unwrap_or(0);
    let degree_expected = knot.genus.map(|g| 2 * g as i64);
    let classical = ClassicalCheck {
        delta: delta.to_string(),
        monic: rep.is_monic(),
        degree,
        degree_expected,
    };
    let sweep = vanishing_search(knot, max_order, options)?;
    let vanishing = sweep.witness.is_some();
    let certificates = Certificates {
        non_monic_classical: !classical.monic,
        classical_degree_mismatch: degree_expected.is_some_and(|d| d != degree),
        non_monic_twisted: sweep.outcomes.iter().any(|o| o.non_monic > 0),
        twisted_degree_mismatch: sweep.outcomes.iter().any(|o| o.degree_mismatch > 0),
        vanishing_twisted_polynomial: vanishing,
        uncountably_many_finite_covers: vanishing,
        weakly_subgroup_separable: vanishing,
    };
    let c = &certificates;
    let obstructed = c.non_monic_classical
        || c.classical_degree_mismatch
        || c.non_monic_twisted
        || c.twisted_degree_mismatch
        || c.vanishing_twisted_polynomial;
    let verdict = if obstructed { Verdict::ObstructedNonfibered } else { Verdict::ConsistentWithFibered };
    Ok(Campaign { knot: knot.name.clone(), classical, sweep, certificates, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn family_order() {
        let names: Vec<String> = sweep_families(8).iter().map(|s| s.to_string()).collect();
        assert_eq!(
            names,
            [
                "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "dihedral:3",
                "symmetric:3", "cyclic:7", "cyclic:8", "dihedral:4"
            ]
        );
        let big: Vec<String> = sweep_families(24).iter().map(|s| s.to_string()).collect();
        assert!(big.contains(&"alternating:4".to_string()) && big.contains(&"symmetric:4".to_string()));
        assert!(!big.contains(&"alternating:5".to_string()));
    }

    #[test]
    fn fibered_and_nonfibered() {
        let t = lookup("3_1").unwrap().knot().unwrap();
        let c = obstruct(&t, 8, TwistedOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::ConsistentWithFibered);
        assert!(c.sweep.exhausted && c.sweep.witness.is_none());
        let s = lookup("6_1").unwrap().knot().unwrap();
        let c = obstruct(&s, 6, TwistedOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::ObstructedNonfibered);
        assert!(c.certificates.non_monic_classical);
        assert_eq!(c.classical.delta, "2*t^0 + -5*t^1 + 2*t^2");
    }

    #[test]
    fn unknot_is_consistent() {
        let u = lookup("unknot").unwrap().knot().unwrap();
        let c = obstruct(&u, 12, TwistedOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::ConsistentWithFibered);
        assert!(c.sweep.outcomes.iter().all(|o| o.vanishing == 0 && o.non_monic == 0));
    }

    #[test]
    fn overflow_is_recorded_per_group() {
        let t = lookup("3_1").unwrap().knot().unwrap();
        let options = TwistedOptions { budget: crate::homs::SearchBudget { max_nodes: 2 }, ..Default::default() };
        let s = vanishing_search(&t, 6, options).unwrap();
        assert!(s.outcomes.iter().any(|o| o.budget_exceeded && o.hom_count.is_none()));
        assert!(!s.exhausted);
    }
}
