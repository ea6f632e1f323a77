//! Smith normal form over the integers and finitely generated abelian groups.

use std::fmt;

use crate::scalar::Coefficient;

/// `Z^free_rank ⊕ ⊕ Z/d_i` with `d_1 | d_2 | ..`, all `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup<C> {
    pub torsion: Vec<C>,
    pub free_rank: usize,
}

impl<C: Coefficient> AbelianGroup<C> {
    /// Cokernel of the relation matrix (rows are relations among `cols` generators).
    pub fn from_relations(rows: &[Vec<C>], cols: usize) -> Self {
        let diag = invariant_factors(rows, cols);
        let rank = diag.len();
        AbelianGroup {
            torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
            free_rank: cols - rank,
        }
    }

    /// Order when finite.
    pub fn order(&self) -> Option<C> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(C::one(), |a, d| a * d.clone()))
    }

    /// `|Hom(self, Z/m)| = m^free_rank · ∏ gcd(m, d_i)`.
    pub fn hom_count_to_cyclic(&self, m: &C) -> C {
        let mut acc = C::one();
        for _ in 0..self.free_rank {
            acc = acc * m.clone();
        }
        for d in &self.torsion {
            acc = acc * d.gcd(m);
        }
        acc
    }
}

impl<C: Coefficient> fmt::Display for AbelianGroup<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{}", d)).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Nonzero diagonal entries of the Smith normal form, positive and in
/// divisibility order. Their count is the rank of the matrix.
pub fn invariant_factors<C: Coefficient>(rows: &[Vec<C>], cols: usize) -> Vec<C> {
    let mut a: Vec<Vec<C>> = rows.to_vec();
    debug_assert!(a.iter().all(|r| r.len() == cols));
    let nrows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut piv: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..cols {
                if !a[i][j].is_zero() && piv.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        // clear column t
        for i in t + 1..nrows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in t..cols {
                let v = a[t][j].clone() * q.clone();
                a[i][j] = a[i][j].clone() - v;
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        // clear row t
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in t..nrows {
                let v = a[i][t].clone() * q.clone();
                a[i][j] = a[i][j].clone() - v;
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and retry
        let p = a[t][t].clone();
        let bad = (t + 1..nrows).find(|&i| (t + 1..cols).any(|j| !(a[i][j].clone() % p.clone()).is_zero()));
        if let Some(i) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] = a[t][j].clone() + v;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonalizes() {
        assert_eq!(invariant_factors(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3), b(&[2, 6, 12]));
        assert_eq!(invariant_factors(&m(&[&[2, 0], &[0, 3]]), 2), b(&[1, 6]));
        assert_eq!(invariant_factors(&m(&[&[0, 0], &[0, 0]]), 2), b(&[]));
        assert_eq!(invariant_factors::<BigInt>(&[], 3), b(&[]));
    }

    #[test]
    fn abelian_groups() {
        let g = AbelianGroup::from_relations(&m(&[&[2, 0, 0], &[0, 3, 0]]), 3);
        assert_eq!(g.torsion, b(&[6]));
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.order(), None);
        assert_eq!(g.to_string(), "Z/6 + Z");
        assert_eq!(g.hom_count_to_cyclic(&BigInt::from(4)), BigInt::from(8));
        let k = AbelianGroup::from_relations(&m(&[&[2, 0], &[0, 2]]), 2);
        assert_eq!(k.order(), Some(BigInt::from(4)));
        assert_eq!(k.hom_count_to_cyclic(&BigInt::from(2)), BigInt::from(4));
        let trivial = AbelianGroup::<BigInt>::from_relations(&[], 0);
        assert_eq!(trivial.order(), Some(BigInt::from(1)));
        assert_eq!(trivial.to_string(), "0");
    }

    #[test]
    fn fixed_width_coefficients() {
        assert_eq!(invariant_factors(&[vec![4i64, 6], vec![6, 9]], 2), vec![1]);
    }
}
