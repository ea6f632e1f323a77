//! Cyclic covers of a knot complement: presentations of their groups, periodic
//! point counts of the representation shift, abelian cross-checks and entropy
//! profiles.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::PermGroup;
use crate::homs::{count_homs, SearchBudget};
use crate::laurent::LaurentPoly;
use crate::matrix::LaurentMatrix;
use crate::presentation::Presentation;
use crate::smith::AbelianGroup;
use crate::twisted::classical_alexander;
use crate::words::{Letter, Word};

/// Growth allowed when simplifying a rewritten presentation.
const COVER_GROWTH: usize = 4;

/// Presentation of the `r`-fold cyclic cover group, branched over the knot
/// when `branched` is set.
///
/// Reidemeister–Schreier with transversal `x^0, .., x^{r-1}` for the meridian
/// `x`. The Schreier generators are `s_{i,j} = x^j x_i x^{-(j+1)}` for
/// `j < r - 1` and `s_{i,r-1} = x^{r-1} x_i`, one family per non-meridian
/// generator, plus `z = x^r` for the unbranched cover. The result carries no
/// abelianization map and is Tietze-simplified.
pub fn cyclic_cover_presentation(pres: &Presentation, r: usize, branched: bool) -> Result<Presentation> {
    if r == 0 {
        return Err(Error::DimensionMismatch("cover degree must be positive".into()));
    }
    if !pres.is_wirtinger_type() {
        return Err(Error::NotWirtinger(
            "cyclic covers need every generator to map to the meridian class".into(),
        ));
    }
    let m = pres.meridian().expect("Wirtinger type has a meridian");
    let others: Vec<usize> = (0..pres.generator_count()).filter(|&i| i != m).collect();
    let mut index = vec![usize::MAX; pres.generator_count()];
    for (k, &i) in others.iter().enumerate() {
        index[i] = k;
    }
    let z = if branched { None } else { Some(others.len() * r) };
    let schreier = |gen: usize, coset: usize| -> Option<usize> {
        if gen == m {
            if coset == r - 1 {
                z
            } else {
                None
            }
        } else {
            Some(index[gen] * r + coset)
        }
    };
    let mut relators = Vec::with_capacity(pres.relators().len() * r);
    for rel in pres.relators() {
        for start in 0..r {
            let mut coset = start;
            let mut out = Word::empty();
            for l in rel.letters() {
                if l.inverse {
                    coset = (coset + r - 1) % r;
                    if let Some(s) = schreier(l.generator, coset) {
                        out.push_reduced(Letter::neg(s));
                    }
                } else {
                    if let Some(s) = schreier(l.generator, coset) {
                        out.push_reduced(Letter::pos(s));
                    }
                    coset = (coset + 1) % r;
                }
            }
            relators.push(out);
        }
    }
    let count = others.len() * r + usize::from(!branched);
    let raw = Presentation::plain(count, relators)?;
    Ok(raw.simplify(&[], COVER_GROWTH).presentation)
}

/// `π_1` of the `r`-fold cyclic cover of `S³` branched over the knot.
pub fn branched_cover_presentation(pres: &Presentation, r: usize) -> Result<Presentation> {
    cyclic_cover_presentation(pres, r, true)
}

/// Abelianization of a presented group.
pub fn abelianization(pres: &Presentation) -> AbelianGroup<BigInt> {
    let g = pres.generator_count();
    let rows: Vec<Vec<BigInt>> = pres
        .relators()
        .iter()
        .map(|w| {
            let mut row = vec![BigInt::zero(); g];
            for l in w.letters() {
                row[l.generator] += l.exponent();
            }
            row
        })
        .collect();
    AbelianGroup::from_relations(&rows, g)
}

/// `H_1` of the `r`-fold branched cyclic cover.
pub fn cover_homology(pres: &Presentation, r: usize) -> Result<AbelianGroup<BigInt>> {
    Ok(abelianization(&branched_cover_presentation(pres, r)?))
}

/// Number of period-`r` points of the shift: `|Hom(π_1 M_r, Σ)|`.
pub fn fixed_point_count(pres: &Presentation, r: usize, group: &PermGroup, budget: SearchBudget) -> Result<u128> {
    cover_hom_count(pres, r, true, group, budget)
}

/// `|Hom(G, Σ)|` for the group `G` of the `r`-fold cyclic cover.
pub fn cover_hom_count(
    pres: &Presentation,
    r: usize,
    branched: bool,
    group: &PermGroup,
    budget: SearchBudget,
) -> Result<u128> {
    count_homs(&cyclic_cover_presentation(pres, r, branched)?, group, budget)
}

/// `|Hom(H_1(M_r), Z/m)|` from the Smith normal form.
pub fn abelian_hom_count(pres: &Presentation, r: usize, m: u64) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::DimensionMismatch("modulus must be at least 2".into()));
    }
    Ok(cover_homology(pres, r)?.hom_count_to_cyclic(&BigInt::from(m)))
}

/// Order of a finite group, or infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{}", n),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

/// Resultant of two polynomials given by coefficients, constant term first,
/// as the Sylvester determinant.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (p, q) = (f.len().saturating_sub(1), g.len().saturating_sub(1));
    let n = p + q;
    if n == 0 {
        return BigInt::from(1);
    }
    let mut s: LaurentMatrix<BigInt> = LaurentMatrix::zeros(n, n);
    for row in 0..q {
        for (k, c) in f.iter().rev().enumerate() {
            s[(row, row + k)] = LaurentPoly::constant(c.clone());
        }
    }
    for row in 0..p {
        for (k, c) in g.iter().rev().enumerate() {
            s[(q + row, row + k)] = LaurentPoly::constant(c.clone());
        }
    }
    let det = s.determinant().expect("Sylvester matrix is square");
    det.coeff(0)
}

/// `|H_1(M_r)| = |∏_{j=1}^{r-1} Δ(ζ_r^j)|`, computed as the resultant of `Δ`
/// and `1 + t + .. + t^{r-1}`.
pub fn order_oracle(pres: &Presentation, r: usize) -> Result<Order> {
    if r == 0 {
        return Err(Error::DimensionMismatch("cover degree must be positive".into()));
    }
    let delta = classical_alexander::<BigInt>(pres)?;
    let rep = delta.representative();
    if rep.is_zero() {
        return Ok(Order::Infinite);
    }
    let f: Vec<BigInt> = (rep.min_exp().unwrap()..=rep.max_exp().unwrap()).map(|e| rep.coeff(e)).collect();
    let g = vec![BigInt::from(1); r];
    let res = resultant(&f, &g).abs();
    Ok(if res.is_zero() { Order::Infinite } else { Order::Finite(res) })
}

/// Windowed growth test applied to an entropy profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthRule {
    pub delta: f64,
    pub window: usize,
}

impl Default for GrowthRule {
    fn default() -> Self {
        GrowthRule { delta: 0.05, window: 3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyVerdict {
    GrowthDetected,
    NoGrowthDetected,
    Inconclusive,
}

impl std::fmt::Display for EntropyVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EntropyVerdict::GrowthDetected => "growth_detected",
            EntropyVerdict::NoGrowthDetected => "no_growth_detected",
            EntropyVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// Periodic point counts for `r = 1..=r_max` and their exponential rates.
///
/// The verdict is a finite-window estimate, not the limit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyProfile {
    pub knot: String,
    pub group: String,
    /// `counts[r - 1]`; `None` where the search budget ran out.
    pub counts: Vec<Option<u128>>,
    /// `ln(count) / r` where the count is known.
    pub rates: Vec<Option<f64>>,
    pub rule: GrowthRule,
    pub verdict: EntropyVerdict,
    pub heuristic: bool,
}

impl EntropyProfile {
    pub fn from_counts(knot: &str, group: &str, counts: Vec<Option<u128>>, rule: GrowthRule) -> Self {
        let rates: Vec<Option<f64>> = counts
            .iter()
            .enumerate()
            .map(|(i, c)| c.filter(|&c| c > 0).map(|c| (c as f64).ln() / (i + 1) as f64))
            .collect();
        let verdict = if rule.window == 0 || rates.len() < rule.window {
            EntropyVerdict::Inconclusive
        } else {
            let tail = &rates[rates.len() - rule.window..];
            if tail.iter().any(Option::is_none) {
                EntropyVerdict::Inconclusive
            } else if tail.iter().all(|r| r.unwrap() >= rule.delta) {
                EntropyVerdict::GrowthDetected
            } else {
                EntropyVerdict::NoGrowthDetected
            }
        };
        EntropyProfile {
            knot: knot.to_string(),
            group: group.to_string(),
            counts,
            rates,
            rule,
            verdict,
            heuristic: true,
        }
    }

    /// Tab-separated `knot group r count rate` rows with a header line.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("knot\tgroup\tr\tcount\trate\n");
        for (i, (c, rate)) in self.counts.iter().zip(&self.rates).enumerate() {
            let c = c.map_or("overflow".to_string(), |c| c.to_string());
            let rate = rate.map_or("NA".to_string(), |x| format!("{:.6}", x));
            out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", self.knot, self.group, i + 1, c, rate));
        }
        out
    }
}

/// Settings for [`entropy_profile`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EntropyOptions {
    pub rule: GrowthRule,
    pub budget: SearchBudget,
    /// Count over unbranched covers instead.
    pub unbranched: bool,
}


/// Entropy profile of the shift on `Hom(π′, Σ)` over `r = 1..=r_max`.
///
/// Cover degrees are computed in parallel. A budget overflow at some `r`
/// leaves that and every larger `r` uncomputed.
pub fn entropy_profile(
    knot: &str,
    pres: &Presentation,
    group: &PermGroup,
    r_max: usize,
    options: EntropyOptions,
) -> Result<EntropyProfile> {
    if r_max < 1 {
        return Err(Error::DimensionMismatch("r_max must be positive".into()));
    }
    let raw: Vec<Result<u128>> =
        (1..=r_max)
            .into_par_iter()
            .map(|r| cover_hom_count(pres, r, !options.unbranched, group, options.budget))
            .collect();
    let mut counts = Vec::with_capacity(r_max);
    let mut overflowed = false;
    for res in raw {
        match res {
            Ok(c) if !overflowed => counts.push(Some(c)),
            Ok(_) | Err(Error::BudgetExceeded { .. }) => {
                overflowed = true;
                counts.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(EntropyProfile::from_counts(knot, group.name(), counts, options.rule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{group_family, DEFAULT_ORDER_BOUND};

    fn family(s: &str) -> PermGroup {
        group_family(&s.parse().unwrap(), DEFAULT_ORDER_BOUND).unwrap()
    }

    fn braid(b: &[i32], s: usize) -> Presentation {
        Presentation::wirtinger_from_braid(b, s).unwrap()
    }

    fn trefoil() -> Presentation {
        braid(&[1, 1, 1], 2)
    }

    fn figure_eight() -> Presentation {
        braid(&[1, -2, 1, -2], 3)
    }

    fn finite(n: i64) -> Order {
        Order::Finite(BigInt::from(n))
    }

    #[test]
    fn unknot_covers_are_trivial() {
        let u = braid(&[], 1);
        for r in 1..=5 {
            let p = branched_cover_presentation(&u, r).unwrap();
            assert_eq!(p.generator_count(), 0);
            assert_eq!(fixed_point_count(&u, r, &family("symmetric:3"), SearchBudget::default()).unwrap(), 1);
        }
    }

    #[test]
    fn trefoil_cover_homology() {
        assert_eq!(cover_homology(&trefoil(), 2).unwrap().to_string(), "Z/3");
        assert_eq!(cover_homology(&trefoil(), 3).unwrap().to_string(), "Z/2 + Z/2");
        assert_eq!(cover_homology(&trefoil(), 5).unwrap().to_string(), "0");
        assert_eq!(cover_homology(&trefoil(), 6).unwrap().free_rank, 2);
        assert_eq!(abelian_hom_count(&trefoil(), 3, 2).unwrap(), BigInt::from(4));
        assert_eq!(abelian_hom_count(&trefoil(), 2, 2).unwrap(), BigInt::from(1));
        assert!(abelian_hom_count(&trefoil(), 2, 1).is_err());
    }

    #[test]
    fn unbranched_cover_keeps_the_knot_group_abelianization() {
        // r = 1 gives the knot group itself
        let p = cyclic_cover_presentation(&trefoil(), 1, false).unwrap();
        assert_eq!(abelianization(&p).to_string(), "Z");
        assert_eq!(count_homs(&p, &family("symmetric:3"), SearchBudget::default()).unwrap(), 12);
    }

    #[test]
    fn rejects_plain_presentations() {
        let p = Presentation::plain(1, vec![]).unwrap();
        assert!(matches!(branched_cover_presentation(&p, 2), Err(Error::NotWirtinger(_))));
    }

    #[test]
    fn resultant_examples() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        // Res(t - a, t - b) = b - a up to sign conventions: here (t - 2, t - 5)
        assert_eq!(resultant(&b(&[-2, 1]), &b(&[-5, 1])).abs(), BigInt::from(3));
        // Res(t^2 + 1, t + 1) = 2
        assert_eq!(resultant(&b(&[1, 0, 1]), &b(&[1, 1])).abs(), BigInt::from(2));
        assert_eq!(resultant(&b(&[1, 0, 1]), &b(&[1, 0, 1])), BigInt::zero());
    }

    #[test]
    fn oracle_orders() {
        let orders: Vec<Order> = (1..=6).map(|r| order_oracle(&trefoil(), r).unwrap()).collect();
        assert_eq!(orders, vec![finite(1), finite(3), finite(4), finite(3), finite(1), Order::Infinite]);
        assert_eq!(order_oracle(&figure_eight(), 2).unwrap(), finite(5));
    }

    #[test]
    fn fixed_points_match_abelian_counts() {
        assert_eq!(fixed_point_count(&trefoil(), 2, &family("cyclic:3"), SearchBudget::default()).unwrap(), 3);
        assert_eq!(fixed_point_count(&figure_eight(), 2, &family("cyclic:5"), SearchBudget::default()).unwrap(), 5);
        for r in 1..=4 {
            for m in 2..=4 {
                let c = fixed_point_count(&figure_eight(), r, &family(&format!("cyclic:{}", m)), SearchBudget::default())
                    .unwrap();
                assert_eq!(BigInt::from(c), abelian_hom_count(&figure_eight(), r, m as u64).unwrap());
            }
        }
    }

    #[test]
    fn profiles() {
        let p = entropy_profile("3_1", &trefoil(), &family("cyclic:3"), 5, EntropyOptions::default())
            .unwrap();
        assert_eq!(p.counts, vec![Some(1), Some(3), Some(1), Some(3), Some(1)]);
        assert_eq!(p.verdict, EntropyVerdict::NoGrowthDetected);
        let f = entropy_profile("4_1", &figure_eight(), &family("cyclic:5"), 4, EntropyOptions::default())
            .unwrap();
        assert_eq!(f.counts, vec![Some(1), Some(5), Some(1), Some(5)]);
        let u = entropy_profile("unknot", &braid(&[], 1), &family("symmetric:3"), 6, EntropyOptions::default())
            .unwrap();
        assert!(u.counts.iter().all(|c| *c == Some(1)));
        assert!(u.rates.iter().all(|r| *r == Some(0.0)));
        assert_eq!(u.verdict, EntropyVerdict::NoGrowthDetected);
        assert!(u.to_tsv().starts_with("knot\tgroup\tr\tcount\trate\nunknot\tsymmetric:3\t1\t1\t0.000000\n"));
    }

    #[test]
    fn verdict_rules() {
        let rule = GrowthRule::default();
        let grow = EntropyProfile::from_counts("k", "g", vec![Some(1), Some(4), Some(8), Some(16)], rule);
        assert_eq!(grow.verdict, EntropyVerdict::GrowthDetected);
        let short = EntropyProfile::from_counts("k", "g", vec![Some(1), Some(4)], rule);
        assert_eq!(short.verdict, EntropyVerdict::Inconclusive);
        let cut = EntropyProfile::from_counts("k", "g", vec![Some(1), Some(4), Some(8), None], rule);
        assert_eq!(cut.verdict, EntropyVerdict::Inconclusive);
        assert_eq!(cut.rates[3], None);
    }

    #[test]
    fn overflow_marks_the_tail() {
        let p = entropy_profile("4_1", &figure_eight(), &family("symmetric:3"), 4, EntropyOptions { budget: SearchBudget { max_nodes: 3 }, ..Default::default() })
            .unwrap();
        assert!(p.counts.iter().skip_while(|c| c.is_some()).all(Option::is_none));
        assert!(p.counts.iter().any(Option::is_none));
    }
}
