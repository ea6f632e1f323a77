//! Finite permutation groups.
//!
//! Groups here are small (order at most a few thousand), so every group is
//! stored with its full element list and, when cheap enough, a
//! multiplication table.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default bound on group orders accepted by [`group_family`].
pub const DEFAULT_ORDER_BOUND: usize = 5040;

/// Multiplication tables are built only up to this order.
const TABLE_MAX_ORDER: usize = 2048;

/// A permutation of `{0, .., m-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Parse(format!("{:?} is not a bijection", images)));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(Error::Parse(format!("bad cycle {:?} for degree {}", cyc, degree)));
                }
                touched[a] = true;
                images[a] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Same permutation acting on `degree ≥ self.degree()` points.
    pub fn extend(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.images.len()..degree);
        Permutation { images }
    }

    /// Cycle decomposition including fixed points, each cycle starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                cyc.push(c);
                c = self.images[c];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points; the identity is `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return f.write_str("()");
        }
        for c in nontrivial {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

/// Parses `(0 1 2)(3 4)` into cycles; `()` is the identity.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let bad = || Error::Parse(format!("bad cycle notation `{}`", s));
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = open.find(')').ok_or_else(bad)?;
        let body = &open[..close];
        let cyc: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if !cyc.is_empty() {
            cycles.push(cyc);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// A finite group of permutations, with all elements materialized.
///
/// Elements are sorted lexicographically by image vector, so index 0 is the
/// identity and element indices are reproducible.
#[derive(Clone)]
pub struct PermGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl PermGroup {
    /// The group generated by `generators` on `degree` points; fails if the
    /// order exceeds `bound`.
    pub fn generate(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Permutation>,
        bound: usize,
    ) -> Result<Self> {
        let generators: Vec<Permutation> = generators.iter().map(|g| g.extend(degree)).collect();
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Parse("generator degree exceeds group degree".into()));
        }
        let id = Permutation::identity(degree);
        let mut found: HashMap<Permutation, ()> = HashMap::new();
        found.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q = p.compose(g);
                if !found.contains_key(&q) {
                    if found.len() >= bound {
                        return Err(Error::OrderBoundExceeded { order: found.len() + 1, bound });
                    }
                    found.insert(q.clone(), ());
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<Permutation> = found.into_keys().collect();
        elements.sort();
        Ok(Self::from_elements(name.into(), degree, generators, elements))
    }

    fn from_elements(
        name: String,
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_MAX_ORDER).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        PermGroup { name, degree, generators, elements, index, inverses, table }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Index of `element(a) ∘ element(b)`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Index of `b^{-1} a b`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Subgroup generated by `gens` (elements of this group).
    pub fn subgroup(&self, name: impl Into<String>, gens: Vec<Permutation>) -> PermGroup {
        PermGroup::generate(name, self.degree, gens, usize::MAX)
            .expect("subgroup of a finite group is finite")
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> PermGroup {
        let mut gens: Vec<Permutation> = seeds.iter().filter(|s| !s.is_identity()).cloned().collect();
        let mut sub = self.subgroup("closure", gens.clone());
        loop {
            let mut grew = false;
            'outer: for g in &self.generators {
                let gi = g.inverse();
                for n in gens.clone() {
                    let c = gi.compose(&n).compose(g);
                    if !sub.contains(&c) {
                        gens.push(c);
                        sub = self.subgroup("closure", gens.clone());
                        grew = true;
                        break 'outer;
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    /// Right regular representation: degree `|G|`, element `g` acting by
    /// `e_i ↦ e_i · g^{-1}` (so that composition is preserved).
    pub fn regular_rep(&self) -> Result<PermGroup> {
        let gens = self.generators.iter().map(|g| self.regular_image(g)).collect();
        PermGroup::generate(format!("regular({})", self.name), self.order(), gens, self.order())
    }

    /// Image of an element of this group in [`PermGroup::regular_rep`].
    pub fn regular_image(&self, g: &Permutation) -> Permutation {
        let gi = self.index[&g.inverse()];
        Permutation { images: (0..self.order()).map(|i| self.mul(i, gi)).collect() }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup({}, degree {}, order {})", self.name, self.degree, self.order())
    }
}

/// Number of orbits of the group generated by `gens` on `{0, .., degree-1}`.
pub fn orbit_count(gens: &[Permutation], degree: usize) -> usize {
    let labels = orbit_labels(gens, degree);
    (0..degree).filter(|&i| labels[i] == i).count()
}

/// Labels each point by a representative of its orbit.
pub fn orbit_labels(gens: &[Permutation], degree: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for i in 0..degree {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..degree).map(|i| find(&mut parent, i)).collect()
}

/// Canonical form of a tuple of permutations under simultaneous relabeling of
/// the points: two tuples get the same key iff some `σ` conjugates one into
/// the other.
///
/// Each orbit is relabeled breadth-first from every possible root, following
/// the generators in order, and the least image table is kept; orbit tables
/// are then sorted.
pub fn relabeling_key(perms: &[Permutation]) -> Vec<Vec<usize>> {
    let degree = perms.first().map_or(0, Permutation::degree);
    let labels = orbit_labels(perms, degree);
    let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..degree {
        orbits.entry(labels[i]).or_default().push(i);
    }
    let mut forms: Vec<Vec<usize>> = orbits
        .values()
        .map(|points| {
            points
                .iter()
                .map(|&root| {
                    let mut label = vec![usize::MAX; degree];
                    let mut order = vec![root];
                    label[root] = 0;
                    let mut head = 0;
                    while head < order.len() {
                        let x = order[head];
                        head += 1;
                        for p in perms {
                            let y = p.apply(x);
                            if label[y] == usize::MAX {
                                label[y] = order.len();
                                order.push(y);
                            }
                        }
                    }
                    let mut table = Vec::with_capacity(order.len() * perms.len() + 1);
                    table.push(order.len());
                    for p in perms {
                        table.extend(order.iter().map(|&x| label[p.apply(x)]));
                    }
                    table
                })
                .min()
                .unwrap()
        })
        .collect();
    forms.sort();
    forms
}

/// Named group families accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Explicit(Vec<Vec<Vec<usize>>>),
}

impl GroupSpec {
    /// Group order, computed from the family formula (explicit groups: `None`).
    pub fn order(&self) -> Option<u128> {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        match *self {
            GroupSpec::Cyclic(k) => Some(k as u128),
            GroupSpec::Dihedral(k) => Some(2 * k as u128),
            GroupSpec::Symmetric(k) => Some(fact(k)),
            GroupSpec::Alternating(k) => Some(if k < 2 { 1 } else { fact(k) / 2 }),
            GroupSpec::Explicit(_) => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic:{}", k),
            GroupSpec::Dihedral(k) => write!(f, "dihedral:{}", k),
            GroupSpec::Symmetric(k) => write!(f, "symmetric:{}", k),
            GroupSpec::Alternating(k) => write!(f, "alternating:{}", k),
            GroupSpec::Explicit(gens) => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|cycles| {
                        if cycles.is_empty() {
                            "()".to_string()
                        } else {
                            cycles
                                .iter()
                                .map(|c| {
                                    let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                                    format!("({})", s.join(" "))
                                })
                                .collect()
                        }
                    })
                    .collect();
                write!(f, "perm:{}", parts.join(";"))
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroupSpec(s.to_string());
        let (kind, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = || arg.trim().parse::<usize>().map_err(|_| bad());
        let spec = match kind.trim() {
            "cyclic" => GroupSpec::Cyclic(num()?),
            "dihedral" => GroupSpec::Dihedral(num()?),
            "symmetric" => GroupSpec::Symmetric(num()?),
            "alternating" => GroupSpec::Alternating(num()?),
            "perm" => GroupSpec::Explicit(
                arg.split(';').map(parse_cycles).collect::<Result<_>>().map_err(|_| bad())?,
            ),
            _ => return Err(bad()),
        };
        match spec {
            GroupSpec::Cyclic(0) | GroupSpec::Symmetric(0) | GroupSpec::Alternating(0) => Err(bad()),
            GroupSpec::Dihedral(k) if k < 3 => Err(bad()),
            _ => Ok(spec),
        }
    }
}

/// Natural permutation realization of a group family.
pub fn group_family(spec: &GroupSpec, bound: usize) -> Result<PermGroup> {
    if let Some(order) = spec.order() {
        if order > bound as u128 {
            return Err(Error::OrderBoundExceeded { order: order.min(usize::MAX as u128) as usize, bound });
        }
    }
    let cycle = |k: usize| Permutation::from_cycles(k, &[(0..k).collect()]).unwrap();
    let (degree, gens) = match *spec {
        GroupSpec::Cyclic(k) => (k, vec![cycle(k)]),
        GroupSpec::Dihedral(k) => {
            let reflection = Permutation { images: (0..k).map(|i| (k - i) % k).collect() };
            (k, vec![cycle(k), reflection])
        }
        GroupSpec::Symmetric(k) => {
            let mut g = vec![cycle(k)];
            if k >= 2 {
                g.push(Permutation::from_cycles(k, &[vec![0, 1]]).unwrap());
            }
            (k, g)
        }
        GroupSpec::Alternating(k) => {
            let g = (2..k).map(|i| Permutation::from_cycles(k, &[vec![0, 1, i]]).unwrap()).collect();
            (k, g)
        }
        GroupSpec::Explicit(ref gens) => {
            let degree = gens.iter().flatten().flatten().map(|&x| x + 1).max().unwrap_or(1);
            let perms = gens
                .iter()
                .map(|c| Permutation::from_cycles(degree, c))
                .collect::<Result<Vec<_>>>()
                .map_err(|_| Error::InvalidGroupSpec(spec.to_string()))?;
            (degree, perms)
        }
    };
    PermGroup::generate(spec.to_string(), degree, gens, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, s: &str) -> Permutation {
        Permutation::from_cycles(degree, &parse_cycles(s).unwrap()).unwrap()
    }

    fn family(s: &str) -> PermGroup {
        group_family(&s.parse().unwrap(), DEFAULT_ORDER_BOUND).unwrap()
    }

    #[test]
    fn family_orders() {
        let c3 = family("cyclic:3");
        assert_eq!((c3.degree(), c3.order()), (3, 3));
        let s3 = family("symmetric:3");
        assert_eq!((s3.degree(), s3.order()), (3, 6));
        let d4 = family("dihedral:4");
        assert_eq!((d4.degree(), d4.order()), (4, 8));
        assert_eq!(family("alternating:4").order(), 12);
        assert_eq!(family("symmetric:5").order(), 120);
        assert_eq!(family("cyclic:1").order(), 1);
        assert_eq!(family("perm:(0 1 2)(3 4);(0 3)").degree(), 5);
    }

    #[test]
    fn order_bound_enforced() {
        let err = group_family(&GroupSpec::Symmetric(8), DEFAULT_ORDER_BOUND).unwrap_err();
        assert!(matches!(err, Error::OrderBoundExceeded { bound: 5040, .. }));
        let err = group_family(&"perm:(0 1 2 3 4 5 6 7);(0 1)".parse().unwrap(), 100).unwrap_err();
        assert!(matches!(err, Error::OrderBoundExceeded { .. }));
    }

    #[test]
    fn spec_strings() {
        for s in ["cyclic:3", "dihedral:4", "symmetric:4", "alternating:4", "perm:(0 1 2)(3 4);(0 3)"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        for s in ["cyclic", "cyclic:0", "dihedral:2", "foo:3", "perm:(0 x)"] {
            assert!(s.parse::<GroupSpec>().is_err(), "{}", s);
        }
    }

    #[test]
    fn element_list_is_a_group() {
        let g = family("dihedral:5");
        assert!(g.element(0).is_identity());
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..g.order() {
                assert_eq!(g.element(g.mul(a, b)), &g.element(a).compose(g.element(b)));
            }
        }
    }

    #[test]
    fn composition_order() {
        let a = perm(3, "(0 1)");
        let b = perm(3, "(1 2)");
        // apply b first: 1 -> 2 -> 2, 2 -> 1 -> 0
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.compose(&b).apply(2), 0);
        assert_eq!(a.compose(&b).to_string(), "(0 1 2)");
    }

    #[test]
    fn normal_closures() {
        let s3 = family("symmetric:3");
        assert_eq!(s3.normal_closure(&[Permutation::identity(3)]).order(), 1);
        assert_eq!(s3.normal_closure(&[perm(3, "(0 1 2)")]).order(), 3);
        assert_eq!(s3.normal_closure(&[perm(3, "(0 1)")]).order(), 6);
        let a4 = family("alternating:4");
        // the Klein four-group is normal in A4
        assert_eq!(a4.normal_closure(&[perm(4, "(0 1)(2 3)")]).order(), 4);
    }

    #[test]
    fn orbits() {
        assert_eq!(orbit_count(&[], 3), 3);
        assert_eq!(orbit_count(&[perm(3, "(0 1 2)")], 3), 1);
        assert_eq!(orbit_count(&[perm(5, "(0 1)"), perm(5, "(3 4)")], 5), 3);
    }

    #[test]
    fn regular_representations() {
        let c2 = family("cyclic:2").regular_rep().unwrap();
        assert_eq!((c2.degree(), c2.order()), (2, 2));
        assert_eq!(c2.element(1), &perm(2, "(0 1)"));
        let c3 = family("cyclic:3").regular_rep().unwrap();
        assert_eq!((c3.degree(), c3.order()), (3, 3));
        let s3 = family("symmetric:3");
        let r = s3.regular_rep().unwrap();
        assert_eq!((r.degree(), r.order()), (6, 6));
        for p in r.elements().iter().filter(|p| !p.is_identity()) {
            assert!((0..6).all(|i| p.apply(i) != i), "{} has a fixed point", p);
        }
        assert_eq!(orbit_count(r.generators(), 6), 1);
        // regular_image is a homomorphism
        for a in s3.elements() {
            for b in s3.elements() {
                assert_eq!(
                    s3.regular_image(&a.compose(b)),
                    s3.regular_image(a).compose(&s3.regular_image(b))
                );
            }
        }
    }

    #[test]
    fn relabeling_keys() {
        let a = vec![perm(4, "(0 1)"), perm(4, "(2 3)(0 1)")];
        let sigma = perm(4, "(0 2 1 3)");
        let b: Vec<Permutation> = a.iter().map(|p| sigma.inverse().compose(p).compose(&sigma)).collect();
        assert_eq!(relabeling_key(&a), relabeling_key(&b));
        let c = vec![perm(4, "(0 1)"), perm(4, "(2 3)")];
        assert_ne!(relabeling_key(&a), relabeling_key(&c));
        // powers of a 6-cycle with the same gcd are relabelings of each other
        let r = perm(6, "(0 1 2 3 4 5)");
        let r5 = r.inverse();
        assert_eq!(relabeling_key(std::slice::from_ref(&r)), relabeling_key(&[r5]));
        assert_ne!(relabeling_key(std::slice::from_ref(&r)), relabeling_key(&[r.compose(&r)]));
    }
}
