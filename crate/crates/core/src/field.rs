//! The field abstraction shared by the generic polynomial and linear-algebra code.
//!
//! Kept apart from `scalar` so that `Field` and `num_traits::Zero` are never both
//! in scope for method calls on `Rational`.

use std::fmt;

use crate::scalar::{rat_int, GaussianRational, Rational};

/// Exact arithmetic needed by the generic polynomial code.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_i64(n: i64) -> Self;
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        GaussianRational::inv(self)
    }
    fn from_i64(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_i64(n: i64) -> Self {
        rat_int(n)
    }
}

/// Rank of a matrix over a field, by Gaussian elimination.
pub fn matrix_rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].mul(&inv);
                for c in col..ncols {
                    let t = factor.mul(&rows[rank][c]);
                    rows[r][c] = rows[r][c].sub(&t);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant over a field, by Gaussian elimination.
pub fn determinant<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let mut det = F::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].inv();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            for c in col..n {
                let t = factor.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_det() {
        let m: Vec<Vec<Rational>> = vec![
            vec![rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(2)],
        ];
        assert_eq!(matrix_rank(m.clone()), 3);
        assert_eq!(determinant(m), rat_int(-2));
    }
}
