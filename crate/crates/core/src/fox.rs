//! Fox free differential calculus and its image under `Φ = γ ⊗ t^ε`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::groups::Permutation;
use crate::homs::GroupHom;
use crate::laurent::LaurentPoly;
use crate::matrix::LaurentMatrix;
use crate::presentation::Presentation;
use crate::scalar::Coefficient;
use crate::words::{Letter, Word};

/// Element of the integral group ring of a free group.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coefficient> GroupRingElement<C> {
    pub fn zero() -> Self {
        GroupRingElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty(), C::one())
    }

    pub fn from_word(w: Word, c: C) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        let w = w.free_reduce();
        let entry = self.terms.entry(w.clone()).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Product in the group ring.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul_reduced(v), a.clone() * b.clone());
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, u: &Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (u.mul_reduced(w), c.clone())))
    }

    /// Linear extension of `w ↦ t^{ε(w)} · P(γ(w))`, an `n × n` matrix.
    pub fn evaluate(&self, gamma: &GroupHom, pres: &Presentation) -> LaurentMatrix<C> {
        let n = gamma.degree();
        let mut m = LaurentMatrix::zeros(n, n);
        for (w, c) in &self.terms {
            add_perm_term(&mut m, 0, 0, &gamma.evaluate(w), c, pres.exponent_sum(w));
        }
        m
    }
}

impl<C: Coefficient> fmt::Debug for GroupRingElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{}·[{}]", c, w)).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `∂w/∂x_j` by a single left-to-right scan accumulating the prefix.
pub fn fox_derivative<C: Coefficient>(w: &Word, j: usize) -> GroupRingElement<C> {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::empty();
    for &l in w.letters() {
        if l.generator == j {
            if l.inverse {
                let mut p = prefix.clone();
                p.push_reduced(Letter::neg(j));
                out.add_term(p, -C::one());
            } else {
                out.add_term(prefix.clone(), C::one());
            }
        }
        prefix.push_reduced(l);
    }
    out
}

/// Adds `c · t^e · P(σ)` into the block at `(row, col)`, where `P(σ)` sends
/// basis vector `k` to `σ(k)`.
fn add_perm_term<C: Coefficient>(
    m: &mut LaurentMatrix<C>,
    row: usize,
    col: usize,
    sigma: &Permutation,
    c: &C,
    e: i64,
) {
    let term = LaurentPoly::monomial(c.clone(), e);
    for k in 0..sigma.degree() {
        let slot = &mut m[(row + sigma.apply(k), col + k)];
        *slot = &*slot + &term;
    }
}

/// `Φ(x_j) = t^{ε_j} P(γ(x_j))`.
pub fn generator_matrix<C: Coefficient>(
    pres: &Presentation,
    gamma: &GroupHom,
    j: usize,
) -> LaurentMatrix<C> {
    let n = gamma.degree();
    let mut m = LaurentMatrix::zeros(n, n);
    add_perm_term(&mut m, 0, 0, &gamma.images()[j], &C::one(), pres.exponents()[j]);
    m
}

/// Twisted Fox Jacobian: block `(i, j)` is `Φ(∂r_i/∂x_j)`; size `(m·n) × (g·n)`.
///
/// Requires deficiency one.
pub fn fox_jacobian<C: Coefficient>(pres: &Presentation, gamma: &GroupHom) -> Result<LaurentMatrix<C>> {
    pres.require_deficiency_one()?;
    Ok(fox_jacobian_any(pres, gamma))
}

/// [`fox_jacobian`] without the deficiency requirement.
pub fn fox_jacobian_any<C: Coefficient>(pres: &Presentation, gamma: &GroupHom) -> LaurentMatrix<C> {
    let n = gamma.degree();
    let g = pres.generator_count();
    let mut m = LaurentMatrix::zeros(pres.relators().len() * n, g * n);
    let one = C::one();
    let minus = -C::one();
    for (i, r) in pres.relators().iter().enumerate() {
        // running image of the prefix and its exponent sum
        let mut prefix = Permutation::identity(n);
        let mut exp = 0i64;
        for l in r.letters() {
            let j = l.generator;
            let img = &gamma.images()[j];
            if l.inverse {
                prefix = prefix.compose(&img.inverse());
                exp -= pres.exponents()[j];
                add_perm_term(&mut m, i * n, j * n, &prefix, &minus, exp);
            } else {
                add_perm_term(&mut m, i * n, j * n, &prefix, &one, exp);
                prefix = prefix.compose(img);
                exp += pres.exponents()[j];
            }
        }
    }
    m
}
