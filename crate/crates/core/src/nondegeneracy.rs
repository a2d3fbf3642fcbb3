//! Kouchnirenko nondegeneracy: the partials of `f_S` have no common zero on the torus,
//! for every compact face `S`.
//!
//! On a face of dimension `r`, `f_S = z^A · P(z^{b_1}, …, z^{b_r})` where `b_k` is a basis of
//! the saturated lattice of the face. Since `A` lies off the face's linear span, torus
//! critical points of `f_S` correspond exactly to torus points where `P` and all its
//! partials vanish. `r = 1` is a squarefree test, `r = 2` is decided by elimination.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebraic::{common_roots_over, resultant_y2, Biv, P};
use crate::diagram::{build_diagram, face_part, Face, NewtonDiagram};
use crate::error::Result;
use crate::germ::PolyGerm;
use crate::lattice::saturated_span;
use crate::modp::{default_primes, poly_gcd, poly_roots, splitting_rng, trim, ModPoly, PrimeField};
use crate::scalar::GaussianRational;
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    Nondegenerate,
    Unknown,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    VertexRule,
    SegmentUnivariate,
    ResultantElimination,
    RandomFalsifier,
}

/// A torus point where all partials of `f_S` vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// `"Q(i)"` or `"F_p"`.
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub point: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceVerdict {
    pub face_id: usize,
    pub verdict: Verdict,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondegeneracyReport {
    pub verdict: Verdict,
    pub faces: Vec<FaceVerdict>,
}

impl NondegeneracyReport {
    pub fn is_nondegenerate(&self) -> bool {
        self.verdict == Verdict::Nondegenerate
    }
}

pub fn is_nondegenerate(f: &PolyGerm) -> Result<NondegeneracyReport> {
    let d = build_diagram(f)?;
    nondegeneracy_on_diagram(f, &d)
}

pub fn nondegeneracy_on_diagram(f: &PolyGerm, d: &NewtonDiagram) -> Result<NondegeneracyReport> {
    let faces = d
        .faces()
        .iter()
        .map(|s| nondegenerate_on_face(f, s))
        .collect::<Result<Vec<_>>>()?;
    let verdict = faces
        .iter()
        .map(|v| v.verdict)
        .max()
        .unwrap_or(Verdict::Nondegenerate);
    Ok(NondegeneracyReport { verdict, faces })
}

/// `f_S` in lattice coordinates of the face.
struct FaceChart {
    fs: PolyGerm,
    /// `dual[k]`: exponent row giving `z_i = Π_k y_k^{dual[k][i]}`.
    dual: Vec<Vec<i128>>,
    /// Terms of the shifted polynomial `P` in `y`.
    terms: Vec<(Vec<usize>, GaussianRational)>,
}

fn chart(f: &PolyGerm, s: &Face) -> Result<FaceChart> {
    let fs = face_part(f, s)?;
    let n = f.arity();
    let a: Vec<i128> = s.points[0].0.iter().map(|&x| x as i128).collect();
    let dirs: Vec<Vec<i128>> = s.points[1..]
        .iter()
        .map(|p| p.0.iter().zip(&a).map(|(&x, y)| x as i128 - y).collect())
        .collect();
    let lat = saturated_span(&dirs, n);
    let raw: Vec<(Vec<i128>, GaussianRational)> = fs
        .terms()
        .iter()
        .map(|(e, c)| {
            let v: Vec<i128> = e.0.iter().zip(&a).map(|(&x, y)| x as i128 - y).collect();
            (lat.coords(&v), c.clone())
        })
        .collect();
    let r = lat.rank();
    let mins: Vec<i128> = (0..r)
        .map(|k| raw.iter().map(|(c, _)| c[k]).min().unwrap())
        .collect();
    let terms = raw
        .into_iter()
        .map(|(c, coef)| {
            (
                c.iter().zip(&mins).map(|(x, m)| (x - m) as usize).collect(),
                coef,
            )
        })
        .collect();
    Ok(FaceChart {
        fs,
        dual: lat.dual,
        terms,
    })
}

pub fn nondegenerate_on_face(f: &PolyGerm, s: &Face) -> Result<FaceVerdict> {
    let ch = chart(f, s)?;
    let verdict = |verdict, method, witness| FaceVerdict {
        face_id: s.id,
        verdict,
        method,
        witness,
    };
    Ok(match ch.dual.len() {
        0 => verdict(Verdict::Nondegenerate, Method::VertexRule, None),
        1 => {
            let mut coeffs = vec![
                GaussianRational::zero();
                ch.terms.iter().map(|(e, _)| e[0]).max().unwrap() + 1
            ];
            for (e, c) in &ch.terms {
                coeffs[e[0]] = c.clone();
            }
            let p = UPoly::new(coeffs);
            let g = p.gcd(&p.derivative());
            if g.is_constant() {
                verdict(Verdict::Nondegenerate, Method::SegmentUnivariate, None)
            } else {
                let w = segment_witness(&ch, &g);
                verdict(Verdict::Degenerate, Method::SegmentUnivariate, w)
            }
        }
        2 => {
            let (v, w) = decide_surface(&ch);
            verdict(v, Method::ResultantElimination, w)
        }
        _ => {
            // Faces of dimension ≥ 3 only exist for n ≥ 4: no exact method here.
            let w = crate::oracle::torus_degeneracy_search(&ch.fs, &default_primes(2), 200, 0x5eed);
            verdict(Verdict::Unknown, Method::RandomFalsifier, w)
        }
    })
}

fn decide_surface(ch: &FaceChart) -> (Verdict, Option<Witness>) {
    let mut q = Biv::from_terms(
        &ch.terms
            .iter()
            .map(|(e, c)| ((e[0], e[1]), c.clone()))
            .collect::<Vec<_>>(),
    );
    let mut dual = ch.dual.clone();
    if q.deg_y2() == 0 {
        q = q.swapped();
        dual.swap(0, 1);
    }
    let q1 = q.d_y1();
    let q2 = q.d_y2();
    let r = resultant_y2(&q, &q2);
    if r.is_zero() {
        // Q and Q_{y2} share a factor: Q has a repeated factor, whose zero set meets the torus.
        let w = surface_witness(ch, &q, &dual, None);
        return (Verdict::Degenerate, w);
    }
    let (s, _) = r.squarefree_part().strip_x_power();
    if s.is_constant() {
        return (Verdict::Nondegenerate, None);
    }
    let comps = common_roots_over(&[q.c.clone(), q1.c.clone(), q2.c.clone()], &s);
    match comps.iter().find(|c| c.has_nonzero_common_root()) {
        None => (Verdict::Nondegenerate, None),
        Some(c) => {
            let exact = exact_surface_witness(ch, &dual, &c.modulus, c.gcd.as_deref());
            let w = exact.or_else(|| surface_witness(ch, &q, &dual, Some(&c.modulus)));
            (Verdict::Degenerate, w)
        }
    }
}

/// `z_i = Π_k y_k^{dual[k][i]}` over ℚ(i).
fn lift_exact(y: &[GaussianRational], dual: &[Vec<i128>], n: usize) -> Vec<GaussianRational> {
    (0..n)
        .map(|i| {
            y.iter()
                .zip(dual)
                .fold(GaussianRational::one(), |acc, (yk, row)| {
                    &acc * &yk.powi(row[i] as i64)
                })
        })
        .collect()
}

fn lift_mod(fld: &PrimeField, y: &[u64], dual: &[Vec<i128>], n: usize) -> Vec<u64> {
    (0..n)
        .map(|i| {
            y.iter().zip(dual).fold(1, |acc, (&yk, row)| {
                fld.mul(acc, fld.powi(yk, row[i] as i64))
            })
        })
        .collect()
}

pub fn verify_exact_witness(fs: &PolyGerm, z: &[GaussianRational]) -> bool {
    z.iter().all(|c| !c.is_zero()) && fs.gradient().iter().all(|g| g.eval(z).is_zero())
}

/// Evaluates a germ over 𝔽_p; `None` if a coefficient does not reduce.
pub fn eval_mod(fld: &PrimeField, f: &PolyGerm, z: &[u64]) -> Option<u64> {
    let mut acc = 0;
    for (e, c) in f.terms() {
        let mut t = fld.from_gaussian(c)?;
        for (zi, &k) in z.iter().zip(&e.0) {
            t = fld.mul(t, fld.pow(*zi, k as u64));
        }
        acc = fld.add(acc, t);
    }
    Some(acc)
}

pub fn verify_modular_witness(fld: &PrimeField, fs: &PolyGerm, z: &[u64]) -> bool {
    z.iter().all(|&c| c % fld.p != 0)
        && fs.gradient().iter().all(|g| eval_mod(fld, g, z) == Some(0))
}

fn exact_witness(fs: &PolyGerm, z: Vec<GaussianRational>) -> Option<Witness> {
    verify_exact_witness(fs, &z).then(|| Witness {
        field: "Q(i)".into(),
        prime: None,
        point: z.iter().map(|c| c.to_string()).collect(),
    })
}

fn modular_witness(fld: &PrimeField, fs: &PolyGerm, z: Vec<u64>) -> Option<Witness> {
    verify_modular_witness(fld, fs, &z).then(|| Witness {
        field: "F_p".into(),
        prime: Some(fld.p),
        point: z.iter().map(|c| c.to_string()).collect(),
    })
}

fn reduce_poly(fld: &PrimeField, p: &P) -> Option<ModPoly> {
    Some(trim(
        p.coeffs()
            .iter()
            .map(|c| fld.from_gaussian(c))
            .collect::<Option<Vec<_>>>()?,
    ))
}

fn segment_witness(ch: &FaceChart, g: &P) -> Option<Witness> {
    let n = ch.fs.arity();
    if g.degree() == Some(1) {
        let g = g.monic();
        let root = -g.coeff(0);
        if let Some(w) = exact_witness(&ch.fs, lift_exact(&[root], &ch.dual, n)) {
            return Some(w);
        }
    }
    let mut rng = splitting_rng(1);
    for p in default_primes(40) {
        let fld = PrimeField::new(p);
        let Some(gm) = reduce_poly(&fld, g) else {
            continue;
        };
        for y in poly_roots(&fld, &gm, &mut rng) {
            if y == 0 {
                continue;
            }
            if let Some(w) = modular_witness(&fld, &ch.fs, lift_mod(&fld, &[y], &ch.dual, n)) {
                return Some(w);
            }
        }
    }
    None
}

fn exact_surface_witness(
    ch: &FaceChart,
    dual: &[Vec<i128>],
    m: &P,
    gcd: Option<&[P]>,
) -> Option<Witness> {
    if m.degree() != Some(1) {
        return None;
    }
    let a = -m.monic().coeff(0);
    let b = match gcd {
        None => GaussianRational::one(),
        Some(g) if g.len() == 2 => {
            let c0 = g[0].eval(&a);
            let c1 = g[1].eval(&a);
            -(&c0 * &c1.inv())
        }
        _ => return None,
    };
    exact_witness(&ch.fs, lift_exact(&[a, b], dual, ch.fs.arity()))
}

fn reduce_biv(fld: &PrimeField, q: &Biv) -> Option<Vec<ModPoly>> {
    q.c.iter().map(|p| reduce_poly(fld, p)).collect()
}

fn eval_y1_mod(fld: &PrimeField, q: &[ModPoly], a: u64) -> ModPoly {
    trim(
        q.iter()
            .map(|p| crate::modp::poly_eval(fld, p, a))
            .collect(),
    )
}

/// Searches 𝔽_p-points of `{Q = Q_1 = Q_2 = 0}` on the torus, with `y1` among the roots of
/// `candidates` when given, otherwise random.
fn surface_witness(
    ch: &FaceChart,
    q: &Biv,
    dual: &[Vec<i128>],
    candidates: Option<&P>,
) -> Option<Witness> {
    let n = ch.fs.arity();
    let (q1, q2) = (q.d_y1(), q.d_y2());
    let mut rng = ChaCha8Rng::seed_from_u64(0xface);
    let mut split = splitting_rng(2);
    for p in default_primes(40) {
        let fld = PrimeField::new(p);
        let (Some(m0), Some(m1), Some(m2)) = (
            reduce_biv(&fld, q),
            reduce_biv(&fld, &q1),
            reduce_biv(&fld, &q2),
        ) else {
            continue;
        };
        let ys: Vec<u64> = match candidates {
            Some(c) => match reduce_poly(&fld, c) {
                Some(cm) => poly_roots(&fld, &cm, &mut split),
                None => continue,
            },
            None => (0..16).map(|_| fld.random_nonzero(&mut rng)).collect(),
        };
        for a in ys.into_iter().filter(|&a| a != 0) {
            let g = [&m0, &m1, &m2].iter().fold(Vec::new(), |g, m| {
                poly_gcd(&fld, &g, &eval_y1_mod(&fld, m, a))
            });
            let bs: Vec<u64> = if g.is_empty() {
                vec![1]
            } else {
                poly_roots(&fld, &g, &mut split)
            };
            for b in bs.into_iter().filter(|&b| b != 0) {
                if let Some(w) = modular_witness(&fld, &ch.fs, lift_mod(&fld, &[a, b], dual, n)) {
                    return Some(w);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::face_of_normal;
    use crate::parse::parse_germ;

    fn face_verdict(src: &str, n: usize, u: &[i64]) -> FaceVerdict {
        let f = parse_germ(src, n).unwrap();
        let d = build_diagram(&f).unwrap();
        nondegenerate_on_face(&f, face_of_normal(u, &d).unwrap()).unwrap()
    }

    #[test]
    fn segment_examples() {
        let v = face_verdict("z1*z2+z3^2+z1^3+z2^3", 3, &[1, 1, 1]);
        assert_eq!(
            (v.verdict, v.method),
            (Verdict::Nondegenerate, Method::SegmentUnivariate)
        );
        let v = face_verdict("z1^2+2*z1*z2+z2^2", 2, &[1, 1]);
        assert_eq!(v.verdict, Verdict::Degenerate);
        let w = v.witness.unwrap();
        assert_eq!(w.field, "Q(i)");
        assert!(w.point == vec!["1", "-1"] || w.point == vec!["-1", "1"]);
    }

    #[test]
    fn whole_germ_verdicts() {
        assert!(is_nondegenerate(&parse_germ("z1*z2+z1*z3", 3).unwrap())
            .unwrap()
            .is_nondegenerate());
        assert!(
            is_nondegenerate(&parse_germ("z1^3+z2^3+z3^2+z1*z2", 3).unwrap())
                .unwrap()
                .is_nondegenerate()
        );
        let r = is_nondegenerate(&parse_germ("z1^2+2*z1*z2+z2^2+z3^3", 3).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Degenerate);
    }

    #[test]
    fn surface_facets() {
        // Fermat cubic is nondegenerate on its facet.
        let v = face_verdict("z1^3+z2^3+z3^3", 3, &[1, 1, 1]);
        assert_eq!(
            (v.verdict, v.method),
            (Verdict::Nondegenerate, Method::ResultantElimination)
        );
        // (z1+z2)(z1^2 - z1 z2 + z2^2 + z3^4): smooth factors meet on the torus.
        let v = face_verdict("z1^3+z2^3+z1*z3^4+z2*z3^4", 3, &[2, 2, 1]);
        assert_eq!(v.verdict, Verdict::Degenerate);
        assert!(v.witness.is_some());
        // A square: (z1 + z2 + z3)^2 restricted to its facet.
        let v = face_verdict("z1^2+z2^2+z3^2+2*z1*z2+2*z1*z3+2*z2*z3", 3, &[1, 1, 1]);
        assert_eq!(v.verdict, Verdict::Degenerate);
        assert!(v.witness.is_some());
        // Nondegenerate quadric with mixed signs.
        let v = face_verdict("z1^2+z2^2-z3^2", 3, &[1, 1, 1]);
        assert_eq!(v.verdict, Verdict::Nondegenerate);
    }
}
