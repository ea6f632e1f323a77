//! Dense matrices over Laurent polynomials and their exact determinants.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::Coefficient;

/// Largest size for which [`LaurentMatrix::determinant`] uses cofactor expansion.
pub const COFACTOR_MAX: usize = 3;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix<C> {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<C>>,
}

impl<C: Coefficient> LaurentMatrix<C> {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly<C>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(LaurentMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly<C>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly<C>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&LaurentPoly<C>, &LaurentPoly<C>) -> LaurentPoly<C>,
    ) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(LaurentMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Copy of the matrix with the columns in `start..end` removed.
    pub fn without_columns(&self, start: usize, end: usize) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|j| *j < start || *j >= end).collect();
        let mut entries = Vec::with_capacity(self.rows * keep.len());
        for i in 0..self.rows {
            for &j in &keep {
                entries.push(self[(i, j)].clone());
            }
        }
        LaurentMatrix { rows: self.rows, cols: keep.len(), entries }
    }

    /// Writes `block` with its top-left corner at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Exact determinant. Cofactor expansion up to [`COFACTOR_MAX`], fraction-free
    /// elimination above.
    pub fn determinant(&self) -> Result<LaurentPoly<C>> {
        self.require_square()?;
        if self.rows <= COFACTOR_MAX {
            self.determinant_cofactor()
        } else {
            self.determinant_bareiss()
        }
    }

    /// Laplace expansion along the first row. Exponential; for small matrices and tests.
    pub fn determinant_cofactor(&self) -> Result<LaurentPoly<C>> {
        self.require_square()?;
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_rec(0, &cols))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> LaurentPoly<C> {
        if cols.is_empty() {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        for (k, &j) in cols.iter().enumerate() {
            let a = &self[(row, j)];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let term = a * &self.cofactor_rec(row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Bareiss fraction-free elimination; every division is exact.
    ///
    /// The pivot in each column is the nonzero candidate with the fewest terms.
    pub fn determinant_bareiss(&self) -> Result<LaurentPoly<C>> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        let mut a: Vec<Vec<LaurentPoly<C>>> =
            (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n {
            let pivot = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| (a[i][k].term_count(), i));
            let Some(p) = pivot else {
                return Ok(LaurentPoly::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let piv = &pivot_row[k];
            for row in bottom.iter_mut() {
                let lead = std::mem::take(&mut row[k]);
                for j in k + 1..n {
                    let mut v = &row[j] * piv;
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        v = &v - &(&lead * &pivot_row[j]);
                    }
                    row[j] = if prev.is_one() {
                        v
                    } else {
                        v.divide_exact(&prev)?.ok_or_else(|| {
                            Error::Internal("inexact division in fraction-free elimination".into())
                        })?
                    };
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}

impl<C: Coefficient> Index<(usize, usize)> for LaurentMatrix<C> {
    type Output = LaurentPoly<C>;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly<C> {
        &self.entries[i * self.cols + j]
    }
}

impl<C: Coefficient> IndexMut<(usize, usize)> for LaurentMatrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly<C> {
        &mut self.entries[i * self.cols + j]
    }
}

impl<C: Coefficient> fmt::Debug for LaurentMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type P = LaurentPoly<BigInt>;
    type M = LaurentMatrix<BigInt>;

    fn p(terms: &[(i64, i64)]) -> P {
        P::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    fn random_poly(rng: &mut ChaCha8Rng) -> P {
        if rng.gen_bool(0.25) {
            return P::zero();
        }
        let lo = rng.gen_range(-2..=2);
        let len = rng.gen_range(1..=3);
        P::from_dense(lo, (0..len).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect())
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> M {
        M::new(n, n, (0..n * n).map(|_| random_poly(rng)).collect()).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(M::zeros(0, 0).determinant().unwrap(), P::one());
        let diag = M::from_rows(vec![
            vec![p(&[(1, 1), (0, -1)]), P::zero()],
            vec![P::zero(), p(&[(1, 1), (0, 2)])],
        ])
        .unwrap();
        assert_eq!(diag.determinant().unwrap(), p(&[(2, 1), (1, 1), (0, -2)]));
        let m = M::from_rows(vec![vec![p(&[(1, 1)]), P::one()], vec![P::one(), p(&[(1, 1)])]])
            .unwrap();
        assert_eq!(m.determinant().unwrap(), p(&[(2, 1), (0, -1)]));
        assert_eq!(m.determinant_bareiss().unwrap(), p(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn non_square_rejected() {
        let m = M::zeros(2, 3);
        assert_eq!(m.determinant(), Err(Error::NotSquare { rows: 2, cols: 3 }));
        assert!(m.determinant_bareiss().is_err());
    }

    #[test]
    fn singular_matrix() {
        let row = vec![p(&[(1, 1)]), p(&[(0, 2), (2, -1)]), P::one(), p(&[(-1, 3)])];
        let m = M::from_rows(vec![row.clone(), row.clone(), row.iter().map(|x| x.shift(1)).collect(), row])
            .unwrap();
        assert!(m.determinant_bareiss().unwrap().is_zero());
    }

    #[test]
    fn elimination_matches_cofactor() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..=5 {
            for _ in 0..12 {
                let m = random_matrix(&mut rng, n);
                assert_eq!(m.determinant_bareiss().unwrap(), m.determinant_cofactor().unwrap());
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            for _ in 0..8 {
                let a = random_matrix(&mut rng, n);
                let b = random_matrix(&mut rng, n);
                let ab = a.mul(&b).unwrap();
                assert_eq!(
                    ab.determinant().unwrap(),
                    &a.determinant().unwrap() * &b.determinant().unwrap()
                );
            }
        }
    }
}
