//! Twisted Alexander polynomials of finite-image representations via the
//! Wada quotient, and the fibering checks built on them.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Knot;
use crate::error::{Error, Result};
use crate::fox::fox_jacobian;
use crate::groups::{relabeling_key, PermGroup, Permutation};
use crate::homs::{enumerate_hom_indices, GroupHom, SearchBudget};
use crate::laurent::{LaurentPoly, UnitClass};
use crate::matrix::LaurentMatrix;
use crate::presentation::Presentation;
use crate::scalar::Coefficient;

/// Growth allowed when simplifying a knot presentation before computing determinants.
const SIMPLIFY_GROWTH: usize = 4;

/// `det(t^e P(σ) − I) = ∏_cycles (−1)^{ℓ+1} (t^{eℓ} − 1)`.
pub fn denominator<C: Coefficient>(sigma: &Permutation, e: i64) -> LaurentPoly<C> {
    let mut acc = LaurentPoly::one();
    for cyc in sigma.cycles() {
        let l = cyc.len() as i64;
        let f = LaurentPoly::t_pow_minus_one(e * l);
        acc = if l % 2 == 0 { -(&acc * &f) } else { &acc * &f };
    }
    acc
}

/// Column blocks usable as the Wada denominator, best first: nonzero
/// exponent, then fewest cycles, then smallest index.
pub fn column_candidates(pres: &Presentation, gamma: &GroupHom) -> Vec<usize> {
    let mut js: Vec<usize> = (0..pres.generator_count()).filter(|&j| pres.exponents()[j] != 0).collect();
    js.sort_by_key(|&j| (gamma.images()[j].cycle_count(), j));
    js
}

/// Order of the zeroth homology: `∏ (t^{k} − 1)` over the blocks.
pub fn zeroth_homology_order<C: Coefficient>(blocks: &[usize]) -> LaurentPoly<C> {
    blocks
        .iter()
        .fold(LaurentPoly::one(), |acc, &k| &acc * &LaurentPoly::t_pow_minus_one(k as i64))
}

/// `Δ_{k,γ}` computed with column block `j` deleted, as an actual Laurent
/// polynomial (not yet normalized). `blocks` comes from
/// [`GroupHom::commutator_orbit_blocks`].
pub fn twisted_alexander_at_column<C: Coefficient>(
    pres: &Presentation,
    gamma: &GroupHom,
    blocks: &[usize],
    j: usize,
) -> Result<LaurentPoly<C>> {
    let n = gamma.degree();
    let jac: LaurentMatrix<C> = fox_jacobian(pres, gamma)?;
    let minor = jac.without_columns(j * n, (j + 1) * n);
    let num = minor.determinant()?;
    let den = denominator::<C>(&gamma.images()[j], pres.exponents()[j]);
    let corrected = &num * &zeroth_homology_order(blocks);
    corrected.divide_exact(&den)?.ok_or_else(|| {
        Error::Internal(format!("Wada quotient is not exact (column block {})", j + 1))
    })
}

/// Outcome of one twisted Alexander computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComputation<C: Coefficient> {
    pub delta: UnitClass<C>,
    pub orbit_count: usize,
    pub column: usize,
    /// `Some(agrees)` when a second column block was recomputed.
    pub second_column: Option<bool>,
}

/// `Δ_{k,γ}` up to units.
pub fn twisted_alexander<C: Coefficient>(pres: &Presentation, gamma: &GroupHom) -> Result<UnitClass<C>> {
    Ok(compute(pres, pres, gamma, None, false)?.delta)
}

/// The classical Alexander polynomial: [`twisted_alexander`] for the trivial
/// degree-1 representation.
pub fn classical_alexander<C: Coefficient>(pres: &Presentation) -> Result<UnitClass<C>> {
    twisted_alexander(pres, &GroupHom::trivial(pres))
}

/// Core computation. `orbit_pres`/`orbit_gamma` determine `O_γ` (they carry
/// the meridian structure); `det_pres`/`det_gamma` feed the determinants and
/// may be a Tietze simplification of the former, with `kept` listing the
/// surviving generators.
///
/// The Fox matrix is block diagonal over the orbits of `γ(π)`, so `Δ` is the
/// product of the polynomials of the transitive parts; equal parts up to
/// relabeling are computed once.
fn compute<C: Coefficient>(
    orbit_pres: &Presentation,
    det_pres: &Presentation,
    orbit_gamma: &GroupHom,
    kept: Option<&[usize]>,
    recheck: bool,
) -> Result<TwistedComputation<C>> {
    det_pres.require_deficiency_one()?;
    let mut cache: HashMap<Vec<Vec<usize>>, TwistedComputation<C>> = HashMap::new();
    let mut delta = LaurentPoly::one();
    let mut orbit_count = 0;
    let mut column = None;
    let mut second_column: Option<bool> = None;
    for part in orbit_gamma.transitive_parts() {
        let key = relabeling_key(part.images());
        if !cache.contains_key(&key) {
            let det_part = kept.map_or_else(|| part.clone(), |k| part.restrict(k));
            let c = compute_transitive(orbit_pres, det_pres, &part, &det_part, recheck)?;
            cache.insert(key.clone(), c);
        }
        let c = &cache[&key];
        delta = &delta * c.delta.representative();
        orbit_count += c.orbit_count;
        column.get_or_insert(c.column);
        if let Some(agrees) = c.second_column {
            second_column = Some(second_column.unwrap_or(true) && agrees);
        }
    }
    Ok(TwistedComputation {
        delta: delta.unit_class(),
        orbit_count,
        column: column.unwrap_or(0),
        second_column,
    })
}

fn compute_transitive<C: Coefficient>(
    orbit_pres: &Presentation,
    det_pres: &Presentation,
    orbit_gamma: &GroupHom,
    det_gamma: &GroupHom,
    recheck: bool,
) -> Result<TwistedComputation<C>> {
    let blocks = orbit_gamma.commutator_orbit_blocks(orbit_pres)?;
    let orbit_count = blocks.iter().sum();
    let cols = column_candidates(det_pres, det_gamma);
    let &j = cols
        .first()
        .ok_or_else(|| Error::NotWirtinger("no generator with nonzero exponent".into()))?;
    let delta = twisted_alexander_at_column::<C>(det_pres, det_gamma, &blocks, j)?;
    let delta = delta.unit_class();
    let second_column = match cols.get(1) {
        Some(&k) if recheck => {
            let other = twisted_alexander_at_column::<C>(det_pres, det_gamma, &blocks, k)?;
            Some(other.unit_class() == delta)
        }
        _ => None,
    };
    Ok(TwistedComputation { delta, orbit_count, column: j, second_column })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    ObstructedNonfibered,
    ConsistentWithFibered,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::ObstructedNonfibered => "OBSTRUCTED_NONFIBERED",
            Verdict::ConsistentWithFibered => "CONSISTENT_WITH_FIBERED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Natural,
    Regular,
}

/// Settings shared by the twisted computations.
#[derive(Clone, Copy, Debug)]
pub struct TwistedOptions {
    /// Recompute at a second column block and fail on disagreement.
    pub recheck_column: bool,
    /// Tietze-simplify the knot presentation before taking determinants.
    pub simplify: bool,
    pub budget: SearchBudget,
}

impl Default for TwistedOptions {
    fn default() -> Self {
        TwistedOptions { recheck_column: true, simplify: true, budget: SearchBudget::default() }
    }
}

/// `Δ_{k,γ}` with its fibering checks for one representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedPolyReport {
    pub knot: String,
    pub group: String,
    pub representation: Representation,
    pub rep_images: Vec<String>,
    pub n: usize,
    pub orbit_count: usize,
    pub delta: UnitClass<BigInt>,
    pub is_vanishing: bool,
    pub is_monic: Option<bool>,
    pub degree_actual: Option<i64>,
    pub degree_expected: Option<i64>,
    pub second_column_agrees: Option<bool>,
}

impl TwistedPolyReport {
    /// `2gn − n + O_γ` matches the span degree; `None` when not evaluated.
    pub fn degree_law_holds(&self) -> Option<bool> {
        Some(self.degree_actual? == self.degree_expected?)
    }

    pub fn verdict(&self) -> Verdict {
        if self.is_vanishing || self.is_monic == Some(false) || self.degree_law_holds() == Some(false) {
            Verdict::ObstructedNonfibered
        } else {
            Verdict::ConsistentWithFibered
        }
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            knot: self.knot.clone(),
            group: self.group.clone(),
            representation: self.representation,
            rep_images: self.rep_images.clone(),
            n: self.n,
            orbit_count: self.orbit_count,
            delta: self.delta.to_string(),
            monic: self.is_monic,
            degree: self.degree_actual,
            degree_expected: self.degree_expected,
            verdict: self.verdict(),
        }
    }
}

/// Wire form of [`TwistedPolyReport`].
#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub knot: String,
    pub group: String,
    pub representation: Representation,
    pub rep_images: Vec<String>,
    pub n: usize,
    pub orbit_count: usize,
    pub delta: String,
    pub monic: Option<bool>,
    pub degree: Option<i64>,
    pub degree_expected: Option<i64>,
    pub verdict: Verdict,
}

/// A knot presentation prepared for repeated twisted computations.
pub struct TwistedEngine<'a> {
    knot: &'a Knot,
    simplified: Option<(Presentation, Vec<usize>)>,
    options: TwistedOptions,
}

impl<'a> TwistedEngine<'a> {
    pub fn new(knot: &'a Knot, options: TwistedOptions) -> Result<Self> {
        let pres = &knot.presentation;
        pres.require_deficiency_one()?;
        let simplified = if options.simplify {
            let protect: Vec<usize> = pres.meridian().into_iter().collect();
            let s = pres.simplify(&protect, SIMPLIFY_GROWTH);
            (s.presentation.deficiency() == 1).then_some((s.presentation, s.kept))
        } else {
            None
        };
        Ok(TwistedEngine { knot, simplified, options })
    }

    pub fn knot(&self) -> &Knot {
        self.knot
    }

    /// Presentation used for determinants.
    pub fn working_presentation(&self) -> &Presentation {
        self.simplified.as_ref().map_or(&self.knot.presentation, |(p, _)| p)
    }

    pub fn compute(&self, gamma: &GroupHom) -> Result<TwistedComputation<BigInt>> {
        let pres = &self.knot.presentation;
        let computation = match &self.simplified {
            Some((sp, kept)) => compute(pres, sp, gamma, Some(kept), self.options.recheck_column)?,
            None => compute(pres, pres, gamma, None, self.options.recheck_column)?,
        };
        if computation.second_column == Some(false) {
            return Err(Error::Internal(format!(
                "twisted Alexander polynomial of {} depends on the column block",
                self.knot.name
            )));
        }
        Ok(computation)
    }

    pub fn report(
        &self,
        group_name: &str,
        representation: Representation,
        gamma: &GroupHom,
    ) -> Result<TwistedPolyReport> {
        let c = self.compute(gamma)?;
        Ok(self.report_from(group_name, representation, gamma, c))
    }

    fn report_from(
        &self,
        group_name: &str,
        representation: Representation,
        gamma: &GroupHom,
        c: TwistedComputation<BigInt>,
    ) -> TwistedPolyReport {
        let n = gamma.degree();
        let is_vanishing = c.delta.is_zero();
        let rep = c.delta.representative();
        let degree_actual = rep.span_degree();
        let degree_expected = if is_vanishing {
            None
        } else {
            self.knot.genus.map(|g| 2 * g as i64 * n as i64 - n as i64 + c.orbit_count as i64)
        };
        TwistedPolyReport {
            knot: self.knot.name.clone(),
            group: group_name.to_string(),
            representation,
            rep_images: gamma.cycle_strings(),
            n,
            orbit_count: c.orbit_count,
            is_vanishing,
            is_monic: (!is_vanishing).then(|| rep.is_monic()),
            degree_actual,
            degree_expected,
            second_column_agrees: c.second_column,
            delta: c.delta,
        }
    }
}

/// All reports of a knot against one group, with the summary verdict.
#[derive(Clone, Debug)]
pub struct FiberingReport {
    pub knot: String,
    pub group: String,
    pub representation: Representation,
    pub reports: Vec<TwistedPolyReport>,
}

impl FiberingReport {
    pub fn verdict(&self) -> Verdict {
        if self.reports.iter().any(|r| r.verdict() == Verdict::ObstructedNonfibered) {
            Verdict::ObstructedNonfibered
        } else {
            Verdict::ConsistentWithFibered
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "knot": self.knot,
            "group": self.group,
            "representation": self.representation,
            "hom_count": self.reports.len(),
            "reports": self.reports.iter().map(TwistedPolyReport::to_json).collect::<Vec<_>>(),
            "verdict": self.verdict(),
        })
    }
}

/// Twisted polynomial of every homomorphism `π → Σ` (optionally composed with
/// the regular representation of `Σ`).
///
/// Representations that differ by a relabeling of the points have equal `Δ`
/// and `O_γ`, so each class is computed once; the output still lists every
/// homomorphism in enumeration order.
pub fn fibering_report(
    knot: &Knot,
    group: &PermGroup,
    use_regular: bool,
    options: TwistedOptions,
) -> Result<FiberingReport> {
    let engine = TwistedEngine::new(knot, options)?;
    let homs = enumerate_hom_indices(&knot.presentation, group, options.budget)?;
    let representation = if use_regular { Representation::Regular } else { Representation::Natural };
    let to_hom = |idx: &[usize]| -> GroupHom {
        let images: Vec<Permutation> = idx.iter().map(|&i| group.element(i).clone()).collect();
        let h = GroupHom::new(&knot.presentation, images).expect("enumerated tuple is a homomorphism");
        if use_regular {
            h.regular(group)
        } else {
            h
        }
    };
    let gammas: Vec<GroupHom> = homs.iter().map(|h| to_hom(h)).collect();
    let keys: Vec<Vec<Vec<usize>>> = gammas.iter().map(|g| relabeling_key(g.images())).collect();
    let mut classes: Vec<(&Vec<Vec<usize>>, &GroupHom)> = keys.iter().zip(&gammas).collect();
    classes.sort_by(|a, b| a.0.cmp(b.0));
    classes.dedup_by(|a, b| a.0 == b.0);
    let computed: Vec<TwistedComputation<BigInt>> = classes
        .par_iter()
        .map(|(_, g)| engine.compute(g))
        .collect::<Result<_>>()?;
    let reports = gammas
        .iter()
        .zip(&keys)
        .map(|(g, k)| {
            let c = computed[classes.binary_search_by(|x| x.0.cmp(k)).unwrap()].clone();
            engine.report_from(group.name(), representation, g, c)
        })
        .collect();
    Ok(FiberingReport {
        knot: knot.name.clone(),
        group: group.name().to_string(),
        representation,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::generator_matrix;
    use crate::groups::{group_family, DEFAULT_ORDER_BOUND};

    type P = LaurentPoly<BigInt>;

    fn p(terms: &[(i64, i64)]) -> P {
        P::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn trefoil() -> Presentation {
        Presentation::new(2, vec!["x1 x2 x1 X2 X1 X2".parse().unwrap()], Some(0), vec![1, 1]).unwrap()
    }

    #[test]
    fn denominator_matches_determinant() {
        let pres = Presentation::new(1, vec![], Some(0), vec![1]).unwrap();
        for cycles in [vec![], vec![vec![0, 1]], vec![vec![0, 1, 2], vec![3, 4]], vec![vec![0, 1, 2, 3]]] {
            let sigma = Permutation::from_cycles(5, &cycles).unwrap();
            let gamma = GroupHom::new(&pres, vec![sigma.clone()]).unwrap();
            let m: LaurentMatrix<BigInt> = generator_matrix(&pres, &gamma, 0);
            let det = m.sub(&LaurentMatrix::identity(5)).unwrap().determinant().unwrap();
            assert_eq!(denominator::<BigInt>(&sigma, 1), det);
        }
    }

    #[test]
    fn classical_examples() {
        let unknot = Presentation::wirtinger_from_braid(&[], 1).unwrap();
        assert_eq!(classical_alexander::<BigInt>(&unknot).unwrap().representative(), &P::one());
        let d = classical_alexander::<BigInt>(&trefoil()).unwrap();
        assert_eq!(d.representative(), &p(&[(0, 1), (1, -1), (2, 1)]));
        let braid = Presentation::wirtinger_from_braid(&[1, 1, 1], 2).unwrap();
        assert_eq!(classical_alexander::<BigInt>(&braid).unwrap(), d);
    }

    #[test]
    fn trefoil_s3_transposition_rep() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 2]]).unwrap();
        let gamma = GroupHom::new(&trefoil(), vec![a, b]).unwrap();
        let first = twisted_alexander_at_column::<BigInt>(&trefoil(), &gamma, &[1], 0).unwrap();
        let second = twisted_alexander_at_column::<BigInt>(&trefoil(), &gamma, &[1], 1).unwrap();
        assert_eq!(first.unit_class(), second.unit_class());
        let d = first.unit_class();
        assert!(d.representative().is_monic());
        assert_eq!(d.representative().span_degree(), Some(4));
        assert_eq!(d.representative(), &p(&[(0, -1), (1, 1), (3, -1), (4, 1)]));
    }

    #[test]
    fn machine_integer_path_agrees() {
        let s3 = group_family(&"symmetric:3".parse().unwrap(), DEFAULT_ORDER_BOUND).unwrap();
        let homs = crate::homs::enumerate_homs(&trefoil(), &s3, SearchBudget::default()).unwrap();
        for g in homs {
            let big = twisted_alexander::<BigInt>(&trefoil(), &g).unwrap();
            let small = twisted_alexander::<i128>(&trefoil(), &g).unwrap();
            assert_eq!(big.representative().to_string(), small.representative().to_string());
        }
    }
}
