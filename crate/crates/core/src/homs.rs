//! Homomorphisms from finitely presented groups into permutation groups.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::{orbit_labels, PermGroup, Permutation};
use crate::presentation::Presentation;
use crate::words::Word;

/// Default cap on the number of search nodes per enumeration.
pub const DEFAULT_SEARCH_BUDGET: u64 = 200_000_000;

/// A homomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    images: Vec<Permutation>,
}

impl GroupHom {
    /// Checks that every relator of `pres` is sent to the identity.
    pub fn new(pres: &Presentation, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != pres.generator_count() {
            return Err(Error::Parse(format!(
                "{} images for {} generators",
                images.len(),
                pres.generator_count()
            )));
        }
        let degree = images.first().map_or(1, Permutation::degree);
        if images.iter().any(|p| p.degree() != degree) {
            return Err(Error::Parse("images have different degrees".into()));
        }
        let hom = GroupHom { images };
        for (k, r) in pres.relators().iter().enumerate() {
            if !hom.evaluate(r).is_identity() {
                return Err(Error::NotAHomomorphism { relator: k + 1 });
            }
        }
        Ok(hom)
    }

    /// The homomorphism to the trivial group of degree 1.
    pub fn trivial(pres: &Presentation) -> Self {
        GroupHom { images: vec![Permutation::identity(1); pres.generator_count()] }
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    /// Degree `n` of the permutation representation.
    pub fn degree(&self) -> usize {
        self.images.first().map_or(1, Permutation::degree)
    }

    /// Image of a word; letters compose left to right as `γ(l_1) ∘ γ(l_2) ∘ ..`.
    pub fn evaluate(&self, w: &Word) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for l in w.letters() {
            let p = &self.images[l.generator];
            acc = if l.inverse { acc.compose(&p.inverse()) } else { acc.compose(p) };
        }
        acc
    }

    /// Post-composes with the regular representation of `group`.
    pub fn regular(&self, group: &PermGroup) -> GroupHom {
        GroupHom { images: self.images.iter().map(|p| group.regular_image(p)).collect() }
    }

    /// Transfers the homomorphism along a Tietze simplification by keeping the
    /// images of surviving generators.
    pub fn restrict(&self, kept: &[usize]) -> GroupHom {
        GroupHom { images: kept.iter().map(|&i| self.images[i].clone()).collect() }
    }

    /// The representation restricted to each orbit of `γ(π)`, points
    /// renumbered in increasing order; orbits ordered by least point.
    pub fn transitive_parts(&self) -> Vec<GroupHom> {
        let n = self.degree();
        let labels = orbit_labels(&self.images, n);
        let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            orbits.entry(labels[i]).or_default().push(i);
        }
        let mut parts: Vec<Vec<usize>> = orbits.into_values().collect();
        parts.sort();
        parts
            .iter()
            .map(|points| {
                let mut local = vec![usize::MAX; n];
                for (k, &p) in points.iter().enumerate() {
                    local[p] = k;
                }
                let images = self
                    .images
                    .iter()
                    .map(|g| Permutation::new(points.iter().map(|&p| local[g.apply(p)]).collect()).unwrap())
                    .collect();
                GroupHom { images }
            })
            .collect()
    }

    /// Image group `γ(π)`.
    pub fn image_group(&self) -> PermGroup {
        PermGroup::generate("image", self.degree(), self.images.clone(), usize::MAX)
            .expect("image of a permutation representation is finite")
    }

    /// `O_γ`: orbits of `γ(π')` on the `n` points.
    ///
    /// With a meridian `x_m`, `π'` is the normal closure of the elements
    /// `x_i x_m^{-ε_i}` (for Wirtinger presentations, `x_i x_m^{-1}`), so
    /// `γ(π')` is the normal closure of their images in `γ(π)`.
    pub fn commutator_orbit_count(&self, pres: &Presentation) -> Result<usize> {
        Ok(self.commutator_orbit_blocks(pres)?.iter().sum())
    }

    /// For each orbit of the image, the number of orbits of `γ(π′)` inside it.
    pub fn commutator_orbit_blocks(&self, pres: &Presentation) -> Result<Vec<usize>> {
        let m = pres
            .meridian()
            .ok_or_else(|| Error::NotWirtinger("orbit count needs a meridian generator".into()))?;
        let xm_inv = self.images[m].inverse();
        let xm = &self.images[m];
        let seeds: Vec<Permutation> = self
            .images
            .iter()
            .zip(pres.exponents())
            .map(|(p, &e)| {
                let step = if e >= 0 { &xm_inv } else { xm };
                (0..e.unsigned_abs()).fold(p.clone(), |acc, _| acc.compose(step))
            })
            .collect();
        let closure = self.image_group().normal_closure(&seeds);
        let outer = orbit_labels(&self.images, self.degree());
        let inner = orbit_labels(closure.generators(), self.degree());
        let mut blocks: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for i in 0..self.degree() {
            blocks.entry(outer[i]).or_default().insert(inner[i]);
        }
        Ok(blocks.values().map(BTreeSet::len).collect())
    }

    /// Images in cycle notation.
    pub fn cycle_strings(&self) -> Vec<String> {
        self.images.iter().map(|p| p.to_string()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: DEFAULT_SEARCH_BUDGET }
    }
}

/// Compiled search problem: relators as index sequences, checked at the
/// level where their last generator is assigned.
struct Search<'a> {
    group: &'a PermGroup,
    /// assignment order: position -> generator
    order: Vec<usize>,
    /// relators (as (position, inverse) letters) completed at each level
    checks: Vec<Vec<Vec<(usize, bool)>>>,
    budget: u64,
    nodes: AtomicU64,
    overflow: AtomicBool,
}

impl<'a> Search<'a> {
    fn new(pres: &Presentation, group: &'a PermGroup, budget: SearchBudget) -> Self {
        let g = pres.generator_count();
        let supports: Vec<Vec<usize>> = pres.relators().iter().map(Word::support).collect();
        // greedy order: next generator completes the most relators, then
        // touches the most partially assigned ones
        let mut order = Vec::with_capacity(g);
        let mut assigned = vec![false; g];
        for _ in 0..g {
            let best = (0..g)
                .filter(|&x| !assigned[x])
                .max_by_key(|&x| {
                    let mut complete = 0usize;
                    let mut touch = 0usize;
                    for s in &supports {
                        if s.contains(&x) {
                            touch += 1;
                            if s.iter().all(|&y| y == x || assigned[y]) {
                                complete += 1;
                            }
                        }
                    }
                    (complete, touch, std::cmp::Reverse(x))
                })
                .unwrap();
            assigned[best] = true;
            order.push(best);
        }
        let mut position = vec![0; g];
        for (p, &x) in order.iter().enumerate() {
            position[x] = p;
        }
        let mut checks = vec![Vec::new(); g];
        for (r, s) in pres.relators().iter().zip(&supports) {
            let compiled: Vec<(usize, bool)> =
                r.letters().iter().map(|l| (position[l.generator], l.inverse)).collect();
            if let Some(level) = s.iter().map(|&x| position[x]).max() {
                checks[level].push(compiled);
            }
        }
        Search {
            group,
            order,
            checks,
            budget: budget.max_nodes,
            nodes: AtomicU64::new(0),
            overflow: AtomicBool::new(false),
        }
    }

    fn relator_holds(&self, rel: &[(usize, bool)], assignment: &[usize]) -> bool {
        let mut acc = 0usize;
        for &(pos, inv) in rel {
            let e = assignment[pos];
            acc = self.group.mul(acc, if inv { self.group.inv(e) } else { e });
        }
        acc == 0
    }

    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.overflow.store(true, Ordering::Relaxed);
            return false;
        }
        !self.overflow.load(Ordering::Relaxed)
    }

    /// Depth-first search from `assignment` (already holding `level` values).
    fn dfs(&self, assignment: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let level = assignment.len();
        if level == self.order.len() {
            visit(assignment);
            return;
        }
        for e in 0..self.group.order() {
            if !self.tick() {
                return;
            }
            assignment.push(e);
            if self.checks[level].iter().all(|r| self.relator_holds(r, assignment)) {
                self.dfs(assignment, visit);
            }
            assignment.pop();
        }
    }

    /// Runs the search with the first level split across rayon workers.
    /// Each worker returns its own results; callers merge.
    fn run<T: Send>(&self, per_leaf: impl Fn(&[usize]) -> T + Sync) -> Result<Vec<T>> {
        let out: Vec<Vec<T>> = if self.order.is_empty() {
            vec![vec![per_leaf(&[])]]
        } else {
            (0..self.group.order())
                .into_par_iter()
                .map(|e| {
                    let mut found = Vec::new();
                    if !self.tick() {
                        return found;
                    }
                    let mut assignment = vec![e];
                    if self.checks[0].iter().all(|r| self.relator_holds(r, &assignment)) {
                        self.dfs(&mut assignment, &mut |a| found.push(per_leaf(a)));
                    }
                    found
                })
                .collect()
        };
        if self.overflow.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(out.into_iter().flatten().collect())
    }

    /// Element indices in original generator order.
    fn unpermute(&self, assignment: &[usize]) -> Vec<usize> {
        let mut v = vec![0; assignment.len()];
        for (p, &x) in self.order.iter().enumerate() {
            v[x] = assignment[p];
        }
        v
    }
}

/// All homomorphisms `pres → group`, as element-index tuples in generator
/// order, sorted lexicographically.
pub fn enumerate_hom_indices(
    pres: &Presentation,
    group: &PermGroup,
    budget: SearchBudget,
) -> Result<Vec<Vec<usize>>> {
    let search = Search::new(pres, group, budget);
    let mut found = search.run(|a| search.unpermute(a))?;
    found.sort_unstable();
    Ok(found)
}

/// All homomorphisms `pres → group` in lexicographic order of element indices.
pub fn enumerate_homs(
    pres: &Presentation,
    group: &PermGroup,
    budget: SearchBudget,
) -> Result<Vec<GroupHom>> {
    Ok(enumerate_hom_indices(pres, group, budget)?
        .into_iter()
        .map(|idx| GroupHom { images: idx.iter().map(|&i| group.element(i).clone()).collect() })
        .collect())
}

/// `|Hom(pres, group)|` without materializing the homomorphisms.
pub fn count_homs(pres: &Presentation, group: &PermGroup, budget: SearchBudget) -> Result<u128> {
    let search = Search::new(pres, group, budget);
    Ok(search.run(|_| ())?.len() as u128)
}

/// Canonical key of the `group`-conjugacy class of a homomorphism given by
/// element indices: the lexicographically least conjugate tuple.
pub fn conjugacy_key(group: &PermGroup, images: &[usize]) -> Vec<usize> {
    (0..group.order())
        .map(|g| images.iter().map(|&a| group.conjugate(a, g)).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{group_family, DEFAULT_ORDER_BOUND};

    fn family(s: &str) -> PermGroup {
        group_family(&s.parse().unwrap(), DEFAULT_ORDER_BOUND).unwrap()
    }

    fn trefoil() -> Presentation {
        // ⟨a, b | aba = bab⟩
        Presentation::new(2, vec!["x1 x2 x1 X2 X1 X2".parse().unwrap()], Some(0), vec![1, 1]).unwrap()
    }

    /// brute force over all generator tuples
    fn brute_force(pres: &Presentation, group: &PermGroup) -> Vec<Vec<usize>> {
        let g = pres.generator_count();
        let n = group.order();
        let mut out = Vec::new();
        let total = n.pow(g as u32);
        for code in 0..total {
            let mut idx = Vec::with_capacity(g);
            let mut c = code;
            for _ in 0..g {
                idx.push(c % n);
                c /= n;
            }
            idx.reverse();
            let images: Vec<Permutation> = idx.iter().map(|&i| group.element(i).clone()).collect();
            if GroupHom::new(pres, images).is_ok() {
                out.push(idx);
            }
        }
        out
    }

    #[test]
    fn unknot_group_is_free() {
        let unknot = Presentation::wirtinger_from_braid(&[], 1).unwrap();
        let s3 = family("symmetric:3");
        assert_eq!(enumerate_homs(&unknot, &s3, SearchBudget::default()).unwrap().len(), 6);
    }

    #[test]
    fn trefoil_into_s3() {
        let s3 = family("symmetric:3");
        let homs = enumerate_hom_indices(&trefoil(), &s3, SearchBudget::default()).unwrap();
        assert_eq!(homs, brute_force(&trefoil(), &s3));
        assert_eq!(homs.len(), 12);
        assert_eq!(homs.iter().filter(|h| h[0] == h[1]).count(), 6);
    }

    #[test]
    fn trivial_group_presentation() {
        let p = Presentation::plain(1, vec!["x1".parse().unwrap()]).unwrap();
        for g in ["cyclic:5", "symmetric:4"] {
            assert_eq!(count_homs(&p, &family(g), SearchBudget::default()).unwrap(), 1);
        }
        let empty = Presentation::plain(0, vec![]).unwrap();
        assert_eq!(count_homs(&empty, &family("symmetric:3"), SearchBudget::default()).unwrap(), 1);
    }

    #[test]
    fn matches_brute_force_on_wirtinger() {
        let fig8 = Presentation::wirtinger_from_braid(&[1, -2, 1, -2], 3).unwrap();
        for g in ["symmetric:3", "dihedral:5", "cyclic:4"] {
            let grp = family(g);
            let homs = enumerate_hom_indices(&fig8, &grp, SearchBudget::default()).unwrap();
            assert_eq!(homs, brute_force(&fig8, &grp), "{}", g);
        }
    }

    #[test]
    fn budget_overflow_is_reported() {
        let fig8 = Presentation::wirtinger_from_braid(&[1, -2, 1, -2], 3).unwrap();
        let err = enumerate_homs(&fig8, &family("symmetric:4"), SearchBudget { max_nodes: 50 });
        assert_eq!(err, Err(Error::BudgetExceeded { budget: 50 }));
    }

    #[test]
    fn hom_validation() {
        let s3 = family("symmetric:3");
        let t = s3.element(1).clone();
        let c = s3.elements().iter().find(|p| p.cycle_count() == 1).unwrap().clone();
        assert!(GroupHom::new(&trefoil(), vec![t.clone(), t.clone()]).is_ok());
        assert_eq!(
            GroupHom::new(&trefoil(), vec![t, c]),
            Err(Error::NotAHomomorphism { relator: 1 })
        );
    }

    #[test]
    fn orbit_counts() {
        let s3 = family("symmetric:3");
        let a = crate::groups::Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = crate::groups::Permutation::from_cycles(3, &[vec![0, 2]]).unwrap();
        let gamma = GroupHom::new(&trefoil(), vec![a.clone(), b]).unwrap();
        assert_eq!(gamma.commutator_orbit_count(&trefoil()).unwrap(), 1);
        let abelian = GroupHom::new(&trefoil(), vec![a.clone(), a]).unwrap();
        assert_eq!(abelian.commutator_orbit_count(&trefoil()).unwrap(), 3);
        assert_eq!(GroupHom::trivial(&trefoil()).commutator_orbit_count(&trefoil()).unwrap(), 1);
        // through the regular representation the orbits are the cosets of γ(π')
        let reg = gamma.regular(&s3);
        assert_eq!(reg.commutator_orbit_count(&trefoil()).unwrap(), 2);
    }

    #[test]
    fn conjugacy_keys() {
        let s3 = family("symmetric:3");
        let homs = enumerate_hom_indices(&trefoil(), &s3, SearchBudget::default()).unwrap();
        let mut keys: Vec<Vec<usize>> = homs.iter().map(|h| conjugacy_key(&s3, h)).collect();
        keys.sort();
        keys.dedup();
        // identity, transposition, 3-cycle (pairs of equal images), one surjective class
        assert_eq!(keys.len(), 4);
    }
}
