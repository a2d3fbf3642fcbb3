//! Bivariate polynomials over ℚ(i), resultants, and gcds over ℚ(i)[t]/(m) by dynamic
//! evaluation (splitting the modulus whenever a zero divisor shows up).

use crate::scalar::GaussianRational;
use crate::upoly::{resultant, UPoly};

pub type G = GaussianRational;
pub type P = UPoly<G>;

/// `Σ_k c[k](y1) · y2^k`, trimmed so the last entry is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct Biv {
    pub c: Vec<P>,
}

impl Biv {
    pub fn from_terms(terms: &[((usize, usize), G)]) -> Biv {
        let d2 = terms.iter().map(|((_, b), _)| *b).max().unwrap_or(0);
        let mut rows: Vec<Vec<G>> = vec![Vec::new(); d2 + 1];
        for ((a, b), c) in terms {
            let row = &mut rows[*b];
            if row.len() <= *a {
                row.resize(*a + 1, G::zero());
            }
            row[*a] = &row[*a] + c;
        }
        Biv::new(rows.into_iter().map(UPoly::new).collect())
    }

    pub fn new(mut c: Vec<P>) -> Biv {
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        Biv { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_y2(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg_y1(&self) -> usize {
        self.c.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn d_y1(&self) -> Biv {
        Biv::new(self.c.iter().map(|p| p.derivative()).collect())
    }

    pub fn d_y2(&self) -> Biv {
        Biv::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, p)| p.scale(&G::from_int(k as i64)))
                .collect(),
        )
    }

    /// Specializes `y1 = a`, giving a polynomial in `y2`.
    pub fn at_y1(&self, a: &G) -> P {
        UPoly::new(self.c.iter().map(|p| p.eval(a)).collect())
    }

    /// Exchanges the roles of `y1` and `y2`.
    pub fn swapped(&self) -> Biv {
        let mut terms = Vec::new();
        for (b, p) in self.c.iter().enumerate() {
            for (a, coef) in p.coeffs().iter().enumerate() {
                if !coef.is_zero() {
                    terms.push(((b, a), coef.clone()));
                }
            }
        }
        Biv::from_terms(&terms)
    }

    /// Coefficient list `(a, b, c)` of `c·y1^a·y2^b`.
    pub fn terms(&self) -> Vec<(usize, usize, G)> {
        let mut out = Vec::new();
        for (b, p) in self.c.iter().enumerate() {
            for (a, coef) in p.coeffs().iter().enumerate() {
                if !coef.is_zero() {
                    out.push((a, b, coef.clone()));
                }
            }
        }
        out
    }
}

/// `Res_{y2}(a, b)` as a polynomial in `y1`, using the formal `y2`-degrees of `a` and `b`.
/// Computed by evaluation at integer points and interpolation.
pub fn resultant_y2(a: &Biv, b: &Biv) -> P {
    let (da, db) = (a.deg_y2(), b.deg_y2());
    let bound = a.deg_y1() * db + b.deg_y1() * da;
    let xs: Vec<G> = (0..=bound as i64).map(G::from_int).collect();
    let ys: Vec<G> = xs
        .iter()
        .map(|x| resultant(&a.at_y1(x), da, &b.at_y1(x), db))
        .collect();
    UPoly::interpolate(&xs, &ys)
}

/// A nontrivial monic factor of the current modulus.
#[derive(Debug)]
struct Split(P);

type KPoly = Vec<P>;

fn ktrim(mut a: KPoly) -> KPoly {
    while a.last().is_some_and(|p| p.is_zero()) {
        a.pop();
    }
    a
}

fn kinv(a: &P, m: &P) -> Result<P, Split> {
    let (g, s, _) = a.ext_gcd(m);
    if g.degree() == Some(0) {
        Ok(s.rem(m))
    } else {
        Err(Split(g))
    }
}

fn kreduce(a: &KPoly, m: &P) -> KPoly {
    ktrim(a.iter().map(|c| c.rem(m)).collect())
}

fn kmonic(a: &KPoly, m: &P) -> Result<KPoly, Split> {
    let Some(l) = a.last() else {
        return Ok(Vec::new());
    };
    let li = kinv(l, m)?;
    Ok(ktrim(a.iter().map(|c| c.mul(&li).rem(m)).collect()))
}

fn krem(a: &KPoly, b: &KPoly, m: &P) -> Result<KPoly, Split> {
    let li = kinv(b.last().expect("nonzero divisor"), m)?;
    let mut r = a.clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap().mul(&li).rem(m);
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&c.mul(y)).rem(m);
        }
        r = ktrim(r);
    }
    Ok(r)
}

fn kgcd(a: &KPoly, b: &KPoly, m: &P) -> Result<KPoly, Split> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = krem(&x, &y, m)?;
        x = y;
        y = r;
    }
    kmonic(&x, m)
}

/// Zero test in K; `Err` when the element is a zero divisor.
fn kis_zero(c: &P, m: &P) -> Result<bool, Split> {
    if c.is_zero() {
        return Ok(true);
    }
    let g = c.gcd(m);
    if g.degree() == Some(0) {
        Ok(false)
    } else {
        Err(Split(g))
    }
}

/// gcd of `polys` with the factor `y^k` removed, or `None` when all polys vanish.
fn component_gcd(polys: &[KPoly], m: &P) -> Result<Option<KPoly>, Split> {
    let mut g: KPoly = Vec::new();
    for p in polys {
        let p = kreduce(p, m);
        g = if g.is_empty() {
            kmonic(&p, m)?
        } else {
            kgcd(&g, &p, m)?
        };
    }
    if g.is_empty() {
        return Ok(None);
    }
    let mut k = 0;
    while k < g.len() && kis_zero(&g[k], m)? {
        k += 1;
    }
    Ok(Some(g[k..].to_vec()))
}

/// Outcome of a zero test in ℚ(i)[t]/(m).
#[derive(Clone, Debug, PartialEq)]
pub enum ZeroTest {
    Zero,
    Unit,
    /// The element is a zero divisor; carries a nontrivial monic factor of `m`.
    Split(P),
}

pub fn zero_test(c: &P, m: &P) -> ZeroTest {
    match kis_zero(&c.rem(m), m) {
        Ok(true) => ZeroTest::Zero,
        Ok(false) => ZeroTest::Unit,
        Err(Split(g)) => ZeroTest::Split(g.monic()),
    }
}

/// Inverse in ℚ(i)[t]/(m), if the element is a unit.
pub fn k_inverse(a: &P, m: &P) -> Option<P> {
    let a = a.rem(m);
    if a.is_zero() {
        return None;
    }
    kinv(&a, m).ok()
}

/// `a^e` in ℚ(i)[t]/(m), allowing negative exponents for units.
pub fn k_pow(a: &P, e: i64, m: &P) -> Option<P> {
    let base = if e < 0 { k_inverse(a, m)? } else { a.rem(m) };
    let mut acc = P::one().rem(m);
    let mut b = base;
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&b).rem(m);
        }
        b = b.mul(&b).rem(m);
        k >>= 1;
    }
    Some(acc)
}

/// One piece of the splitting of a squarefree modulus.
#[derive(Clone, Debug)]
pub struct Component {
    /// Monic factor of the original modulus.
    pub modulus: P,
    /// Monic gcd in `K[y]` with powers of `y` removed; `None` if every input vanishes.
    pub gcd: Option<Vec<P>>,
}

impl Component {
    /// Whether `y = t` (a root of the modulus) admits a common root `y ≠ 0`.
    pub fn has_nonzero_common_root(&self) -> bool {
        match &self.gcd {
            None => true,
            Some(g) => g.len() >= 2,
        }
    }
}

/// Common nonzero roots in `y` of `polys ⊂ ℚ(i)[t][y]`, fibred over the roots of the
/// squarefree modulus `m(t)`.
pub fn common_roots_over(polys: &[Vec<P>], m: &P) -> Vec<Component> {
    let mut work = vec![m.monic()];
    let mut out = Vec::new();
    while let Some(mm) = work.pop() {
        match component_gcd(polys, &mm) {
            Ok(gcd) => out.push(Component { modulus: mm, gcd }),
            Err(Split(h)) => {
                let other = mm.div_exact(&h).monic();
                work.push(h.monic());
                work.push(other);
            }
        }
    }
    out.sort_by_key(|c| c.modulus.degree());
    out
}
