//! Polynomial germs with Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::matrix_rank;
use crate::scalar::GaussianRational;

/// Exponent vector `ν ∈ ℕⁿ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(pub Vec<u32>);

impl ExpVec {
    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExpVec(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn dot(&self, u: &[i64]) -> i64 {
        self.0.iter().zip(u).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e as i64).collect()
    }

    /// Coordinate-wise `self ≥ other`.
    pub fn dominates(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Sum of the coordinates off axis `i`; the lattice distance to `OX_i`.
    pub fn off_axis_sum(&self, i: usize) -> u64 {
        self.degree() - self.0[i] as u64
    }

    pub fn is_on_axis(&self, i: usize) -> bool {
        self.off_axis_sum(i) == 0
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A polynomial germ at the origin: a finite sparse map from exponents to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyGerm {
    arity: usize,
    terms: BTreeMap<ExpVec, GaussianRational>,
}

impl PolyGerm {
    pub fn zero(arity: usize) -> Self {
        PolyGerm {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a germ, combining repeated exponents and dropping zero coefficients.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExpVec, GaussianRational)>,
    {
        let mut g = PolyGerm::zero(arity);
        for (e, c) in terms {
            g.add_term(e, &c);
        }
        g
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(arity: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            arity,
            terms
                .iter()
                .map(|(e, c)| (ExpVec(e.to_vec()), GaussianRational::from_int(*c))),
        )
    }

    pub fn add_term(&mut self, e: ExpVec, c: &GaussianRational) {
        assert_eq!(e.arity(), self.arity, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(e.clone())
            .or_insert_with(GaussianRational::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<ExpVec, GaussianRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<ExpVec> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, e: &ExpVec) -> GaussianRational {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn add(&self, o: &PolyGerm) -> PolyGerm {
        let mut g = self.clone();
        for (e, c) in &o.terms {
            g.add_term(e.clone(), c);
        }
        g
    }

    pub fn sub(&self, o: &PolyGerm) -> PolyGerm {
        let mut g = self.clone();
        for (e, c) in &o.terms {
            g.add_term(e.clone(), &-c);
        }
        g
    }

    pub fn mul(&self, o: &PolyGerm) -> PolyGerm {
        assert_eq!(self.arity, o.arity);
        let mut g = PolyGerm::zero(self.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e = ExpVec(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
                g.add_term(e, &(ca * cb));
            }
        }
        g
    }

    /// Formal partial derivative with respect to `z_{i+1}` (0-based axis `i`).
    pub fn partial(&self, i: usize) -> PolyGerm {
        assert!(i < self.arity, "axis out of range");
        let mut g = PolyGerm::zero(self.arity);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut d = e.clone();
            d.0[i] -= 1;
            g.add_term(d, &c.scale(&crate::scalar::rat_int(k as i64)));
        }
        g
    }

    pub fn gradient(&self) -> Vec<PolyGerm> {
        (0..self.arity).map(|i| self.partial(i)).collect()
    }

    /// Keeps the terms whose exponents are supported on the `keep` axes; the result has
    /// arity `keep.len()` with coordinates in the order given.
    pub fn restrict(&self, keep: &[usize]) -> PolyGerm {
        assert!(!keep.is_empty(), "restriction to no axes");
        let mut g = PolyGerm::zero(keep.len());
        for (e, c) in &self.terms {
            let dropped = (0..self.arity).any(|a| !keep.contains(&a) && e.0[a] > 0);
            if !dropped {
                g.add_term(ExpVec(keep.iter().map(|&a| e.0[a]).collect()), c);
            }
        }
        g
    }

    /// Sets the axes outside `keep` to zero but keeps the arity.
    pub fn restrict_in_place(&self, keep: &[usize]) -> PolyGerm {
        PolyGerm::from_terms(
            self.arity,
            self.terms
                .iter()
                .filter(|(e, _)| (0..self.arity).all(|a| keep.contains(&a) || e.0[a] == 0))
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Terms whose exponent is in `points`.
    pub fn filter_terms(&self, points: &[ExpVec]) -> PolyGerm {
        PolyGerm::from_terms(
            self.arity,
            points
                .iter()
                .filter_map(|p| self.terms.get(p).map(|c| (p.clone(), c.clone()))),
        )
    }

    /// Permutes variables: variable `i` of the result is variable `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> PolyGerm {
        PolyGerm::from_terms(
            self.arity,
            self.terms
                .iter()
                .map(|(e, c)| (ExpVec(perm.iter().map(|&a| e.0[a]).collect()), c.clone())),
        )
    }

    pub fn eval(&self, z: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (zi, &k) in z.iter().zip(&e.0) {
                if k > 0 {
                    t = &t * &zi.pow(k as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// `f(0) = 0`, `∇f(0) = 0` and `f ≠ 0`.
    pub fn is_singularity(&self) -> SingularityCheck {
        if self.is_zero() {
            return SingularityCheck::No("zero germ".into());
        }
        if self.terms.contains_key(&ExpVec::zero(self.arity)) {
            return SingularityCheck::No("f(0) ≠ 0".into());
        }
        if self.terms.keys().any(|e| e.degree() == 1) {
            return SingularityCheck::No("∇f(0) ≠ 0".into());
        }
        SingularityCheck::Yes
    }

    pub fn require_singularity(&self) -> Result<()> {
        match self.is_singularity() {
            SingularityCheck::Yes => Ok(()),
            SingularityCheck::No(r) => Err(Error::NotSingularity(r)),
        }
    }

    /// Rank over ℚ(i) of the Hessian matrix at the origin, read off the quadratic terms.
    pub fn hessian_rank_at_zero(&self) -> usize {
        let n = self.arity;
        let mut h = vec![vec![GaussianRational::zero(); n]; n];
        for (e, c) in &self.terms {
            if e.degree() != 2 {
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|&a| e.0[a] > 0).collect();
            match idx.as_slice() {
                [a] => h[*a][*a] = c.scale(&crate::scalar::rat_int(2)),
                [a, b] => {
                    h[*a][*b] = c.clone();
                    h[*b][*a] = c.clone();
                }
                _ => unreachable!(),
            }
        }
        matrix_rank(h)
    }

    /// Largest total degree of a term (0 for the zero germ).
    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(ExpVec::degree).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularityCheck {
    Yes,
    No(String),
}

impl SingularityCheck {
    pub fn is_yes(&self) -> bool {
        matches!(self, SingularityCheck::Yes)
    }
}

impl fmt::Display for PolyGerm {
    /// Canonical rendering (lexicographic order of exponents) accepted by [`crate::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative_real = c.is_real() && c.re.is_negative();
            let shown = if negative_real { -c } else { c.clone() };
            match (k, negative_real) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(a, &p)| {
                        if p == 1 {
                            format!("z{}", a + 1)
                        } else {
                            format!("z{}^{}", a + 1, p)
                        }
                    })
                    .collect();
            if mono.is_empty() {
                write!(f, "{shown}")?;
            } else if shown.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", shown, mono.join("*"))?;
            }
        }
        Ok(())
    }
}
