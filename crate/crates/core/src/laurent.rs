//! Laurent polynomials in one variable `t` with exact integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Element of `C[t, t^{-1}]`.
///
/// Stored densely: `coeffs[i]` is the coefficient of `t^(low + i)`. The first
/// and last stored coefficients are nonzero, so the zero polynomial is the
/// empty vector and every value has exactly one representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    low: i64,
    coeffs: Vec<C>,
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        Self::from_dense(exp, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `t^k - 1`, the characteristic factor of a `k`-cycle.
    pub fn t_pow_minus_one(k: i64) -> Self {
        Self::monomial(C::one(), k) - Self::one()
    }

    /// Builds from dense coefficients starting at exponent `low`.
    pub fn from_dense(low: i64, coeffs: Vec<C>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let terms: Vec<(i64, C)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|(e, _)| *e).min().unwrap();
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::from_dense(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// `max_exp - min_exp`; `None` for zero.
    pub fn span_degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> C {
        if self.is_zero() || exp < self.low {
            return C::zero();
        }
        self.coeffs.get((exp - self.low) as usize).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the highest power of `t`.
    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Coefficient of the lowest power of `t`.
    pub fn trailing_coeff(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes an integer value for `t`; `None` if `t = 0` meets a negative power.
    pub fn evaluate(&self, t: &C) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        if t.is_zero() && self.low < 0 {
            return None;
        }
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        if t.is_zero() {
            return Some(if self.low == 0 { acc } else { C::zero() });
        }
        let mut scale = C::one();
        for _ in 0..self.low.unsigned_abs() {
            scale = scale * t.clone();
        }
        if self.low >= 0 {
            Some(acc * scale)
        } else if (acc.clone() % scale.clone()).is_zero() {
            Some(acc / scale)
        } else {
            None
        }
    }

    /// Exact quotient `a / b` in `C[t, t^{-1}]`.
    ///
    /// Returns `Ok(None)` when `b` does not divide `a`.
    pub fn divide_exact(&self, b: &Self) -> Result<Option<Self>> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        // Both operands have a nonzero constant term after dropping the low
        // offset, so divisibility in C[t] decides divisibility here.
        let num = &self.coeffs;
        let den = &b.coeffs;
        if num.len() < den.len() {
            return Ok(None);
        }
        let lc = den.last().unwrap();
        let qlen = num.len() - den.len() + 1;
        let mut rem = num.clone();
        let mut quot = vec![C::zero(); qlen];
        for qi in (0..qlen).rev() {
            let top = &rem[qi + den.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Ok(None);
            }
            for (k, d) in den.iter().enumerate() {
                if !d.is_zero() {
                    rem[qi + k] = rem[qi + k].clone() - q.clone() * d.clone();
                }
            }
            quot[qi] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        Ok(Some(Self::from_dense(self.low - b.low, quot)))
    }

    /// Highest-exponent coefficient is a unit (`±1`).
    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.abs().is_one())
    }

    pub fn unit_class(&self) -> UnitClass<C> {
        UnitClass::of(self)
    }

    pub fn classify(&self) -> Classification<C> {
        Classification {
            is_zero: self.is_zero(),
            span_degree: self.span_degree(),
            is_monic: self.is_monic(),
            unit_class: self.unit_class(),
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_dense(self.low, self.coeffs.iter().map(f).collect())
    }

    fn add_scaled(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other.clone() } else { other.clone() };
        }
        let lo = self.low.min(other.low);
        let hi = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - lo) as usize + i] = c.clone();
        }
        let off = (other.low - lo) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[off + i];
            *slot = if negate { slot.clone() - c.clone() } else { slot.clone() + c.clone() };
        }
        Self::from_dense(lo, coeffs)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut coeffs[i + j];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        Self::from_dense(self.low + other.low, coeffs)
    }
}

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.add_scaled(rhs, false)
    }
}

impl<C: Coefficient> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.add_scaled(rhs, true)
    }
}

impl<C: Coefficient> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.mul_impl(rhs)
    }
}

impl<C: Coefficient> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(mut self) -> LaurentPoly<C> {
        for c in self.coeffs.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    /// `c*t^e` terms in increasing exponent order, joined by ` + `; zero is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*t^{}", c, e)?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl<C: Coefficient> FromStr for LaurentPoly<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::Parse(format!("bad polynomial term in `{}`", s));
        let mut terms = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let (c, e) = term.split_once("*t^").ok_or_else(bad)?;
            let c = C::parse_decimal(c.trim()).ok_or_else(bad)?;
            let e: i64 = e.trim().parse().map_err(|_| bad())?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

/// Canonical representative of `p` modulo units `±t^k`.
///
/// The lowest exponent is shifted to 0 and the sign is chosen so the leading
/// coefficient is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitClass<C> {
    representative: LaurentPoly<C>,
}

impl<C: Coefficient> UnitClass<C> {
    pub fn of(p: &LaurentPoly<C>) -> Self {
        if p.is_zero() {
            return UnitClass { representative: LaurentPoly::zero() };
        }
        let mut rep = LaurentPoly { low: 0, coeffs: p.coeffs.clone() };
        if p.leading_coeff().unwrap().is_negative() {
            rep = -rep;
        }
        UnitClass { representative: rep }
    }

    pub fn representative(&self) -> &LaurentPoly<C> {
        &self.representative
    }

    pub fn into_representative(self) -> LaurentPoly<C> {
        self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

impl<C: Coefficient> fmt::Display for UnitClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.representative.fmt(f)
    }
}

impl<C: Coefficient> fmt::Debug for UnitClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitClass({})", self.representative)
    }
}

impl<C: Coefficient> PartialOrd for UnitClass<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Coefficient> Ord for UnitClass<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.representative
            .coeffs
            .len()
            .cmp(&other.representative.coeffs.len())
            .then_with(|| self.representative.coeffs.cmp(&other.representative.coeffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification<C: Coefficient> {
    pub is_zero: bool,
    pub span_degree: Option<i64>,
    pub is_monic: bool,
    pub unit_class: UnitClass<C>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = LaurentPoly<BigInt>;

    fn p(terms: &[(i64, i64)]) -> P {
        P::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn ring_identities() {
        let tm1 = p(&[(1, 1), (0, -1)]);
        let tp1 = p(&[(1, 1), (0, 1)]);
        assert_eq!(&tm1 * &tp1, p(&[(2, 1), (0, -1)]));
        assert_eq!(&tm1 + &P::zero(), tm1);
        let tref = p(&[(2, 1), (1, -1), (0, 1)]);
        assert_eq!(&tref * &tp1, p(&[(3, 1), (0, 1)]));
    }

    #[test]
    fn cancellation_keeps_canonical_form() {
        let a = p(&[(-1, 2), (3, 1)]);
        let b = p(&[(-1, 2), (3, 2)]);
        let d = &a - &b;
        assert_eq!(d, p(&[(3, -1)]));
        assert_eq!(d.min_exp(), Some(3));
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).min_exp(), None);
    }

    #[test]
    fn exact_division() {
        let t2m1 = p(&[(2, 1), (0, -1)]);
        let tm1 = p(&[(1, 1), (0, -1)]);
        assert_eq!(t2m1.divide_exact(&tm1).unwrap(), Some(p(&[(1, 1), (0, 1)])));
        let t2p1 = p(&[(2, 1), (0, 1)]);
        assert_eq!(t2p1.divide_exact(&tm1).unwrap(), None);
        assert_eq!(P::zero().divide_exact(&tm1).unwrap(), Some(P::zero()));
        assert_eq!(tm1.divide_exact(&P::zero()), Err(Error::DivisionByZero));
        // content obstruction: 2t+2 is not divisible by 4 over Z
        assert_eq!(p(&[(1, 2), (0, 2)]).divide_exact(&p(&[(0, 4)])).unwrap(), None);
        // negative exponents
        let a = p(&[(-3, 1), (-1, -1)]);
        let b = p(&[(-2, 1)]);
        assert_eq!(a.divide_exact(&b).unwrap(), Some(p(&[(-1, 1), (1, -1)])));
    }

    #[test]
    fn classify_examples() {
        let tref = p(&[(2, 1), (1, -1), (0, 1)]).classify();
        assert_eq!((tref.span_degree, tref.is_monic, tref.is_zero), (Some(2), true, false));
        let stevedore = p(&[(2, 2), (1, -5), (0, 2)]).classify();
        assert_eq!((stevedore.span_degree, stevedore.is_monic), (Some(2), false));
        let z = P::zero().classify();
        assert!(z.is_zero);
        assert_eq!(z.span_degree, None);
        assert!(!z.is_monic);
        // leading -1 still counts as monic
        assert!(p(&[(4, -1), (0, 7)]).is_monic());
    }

    #[test]
    fn text_format() {
        let q = p(&[(0, -1), (1, -1), (2, 1)]);
        assert_eq!(q.to_string(), "-1*t^0 + -1*t^1 + 1*t^2");
        assert_eq!(q.to_string().parse::<P>().unwrap(), q);
        assert_eq!("0".parse::<P>().unwrap(), P::zero());
        assert_eq!(p(&[(-2, 3)]).to_string(), "3*t^-2");
        assert!("2*x^3".parse::<P>().is_err());
    }

    #[test]
    fn unit_class_normalizes() {
        let q = p(&[(-3, -2), (-2, 5), (-1, -2)]);
        assert_eq!(q.unit_class().representative(), &p(&[(0, 2), (1, -5), (2, 2)]));
        assert!(P::zero().unit_class().is_zero());
    }

    #[test]
    fn evaluate_at_integers() {
        let tref = p(&[(2, 1), (1, -1), (0, 1)]);
        assert_eq!(tref.evaluate(&BigInt::from(-1)), Some(BigInt::from(3)));
        assert_eq!(p(&[(-1, 2)]).evaluate(&BigInt::from(2)), Some(BigInt::from(1)));
        assert_eq!(p(&[(-1, 1)]).evaluate(&BigInt::from(2)), None);
    }

    #[test]
    fn works_over_machine_integers() {
        let a = LaurentPoly::<i64>::from_terms([(0, -1), (1, 1)]);
        let b = LaurentPoly::<i64>::from_terms([(0, 1), (1, 1)]);
        assert_eq!((&a * &b).to_string(), "-1*t^0 + 1*t^2");
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        (-4i64..4, prop::collection::vec(-6i64..7, 0..6))
            .prop_map(|(lo, cs)| P::from_dense(lo, cs.into_iter().map(BigInt::from).collect()))
    }

    proptest! {
        #[test]
        fn divide_product_recovers_factor(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.divide_exact(&b).unwrap(), Some(a));
        }

        #[test]
        fn unit_class_identifies_associates(a in arb_poly(), k in -5i64..5, neg in any::<bool>()) {
            let mut assoc = a.shift(k);
            if neg { assoc = -assoc; }
            let u = a.unit_class();
            prop_assert_eq!(&u, &assoc.unit_class());
            prop_assert_eq!(u.representative().unit_class(), u.clone());
        }

        #[test]
        fn text_roundtrip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<P>().unwrap(), a);
        }
    }
}
