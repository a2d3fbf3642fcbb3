//! Lower bounds for £₀ from monomial curves `z_i(t) = c_i t^{w_i}`.
//!
//! Along such a curve `ord z = min w_i`, and `ord ∇f(z(t))` is read off exactly by grouping
//! the terms of each partial by weighted degree. Coefficients live in `ℚ(i)[s]/(m)` so
//! algebraic roots of initial-form equations can be used without approximation; when a
//! zero test meets a zero divisor the modulus is split and both parts are followed.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebraic::{
    common_roots_over, k_inverse, k_pow, resultant_y2, zero_test, Biv, ZeroTest, G, P,
};
use crate::error::{Error, Result};
use crate::germ::PolyGerm;
use crate::lattice::{column_reduce, gcd_all, saturated_span};
use crate::scalar::Rational;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveBound {
    #[serde(serialize_with = "crate::scalar::serialize_rational")]
    pub value: Rational,
    /// Weight per coordinate; 0 marks a coordinate held at zero.
    pub weights: Vec<u32>,
    pub pattern: String,
}

/// Terms of one partial derivative restricted to a coordinate subset.
type Terms = Vec<(Vec<u32>, G)>;

struct Pattern {
    label: &'static str,
    modulus: P,
    c: Vec<P>,
}

/// The best ratio `ord ∇f(z) / ord z` over all coordinate subsets, weights in
/// `[1, weight_bound]` and the coefficient patterns below. Fails with `NotIsolated` if
/// some probed curve is critical.
pub fn monomial_curve_lower_bound(f: &PolyGerm, weight_bound: u32) -> Result<CurveBound> {
    if weight_bound == 0 {
        return Err(Error::InvalidConfig(
            "curve_weight_bound must be positive".into(),
        ));
    }
    f.require_singularity()?;
    let n = f.arity();
    let grad = f.gradient();
    let mut best: Option<CurveBound> = None;
    for mask in 1u32..(1 << n) {
        let ks: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let gk: Vec<Terms> = grad
            .iter()
            .map(|g| {
                g.terms()
                    .iter()
                    .filter(|(e, _)| (0..n).all(|i| mask >> i & 1 == 1 || e.0[i] == 0))
                    .map(|(e, c)| (ks.iter().map(|&i| e.0[i]).collect(), c.clone()))
                    .collect::<Terms>()
            })
            .filter(|t| !t.is_empty())
            .collect();
        if gk.is_empty() {
            return Err(Error::NotIsolated(format!(
                "∇f vanishes on the coordinate subspace spanned by z{}",
                ks.iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(", z")
            )));
        }
        for w in primitive_weights(ks.len(), weight_bound) {
            let ord_z = *w.iter().min().unwrap() as i64;
            for pat in patterns(&gk, &w) {
                for ord in gradient_orders(&gk, &w, &pat) {
                    let full: Vec<u32> = (0..n)
                        .map(|i| ks.iter().position(|&k| k == i).map_or(0, |p| w[p]))
                        .collect();
                    let Some(ord) = ord else {
                        return Err(Error::NotIsolated(format!(
                            "∇f vanishes identically along a curve with weights {full:?} ({} coefficients)",
                            pat.label
                        )));
                    };
                    let value = Rational::new(ord.into(), ord_z.into());
                    if best.as_ref().is_none_or(|b| value > b.value) {
                        best = Some(CurveBound {
                            value,
                            weights: full,
                            pattern: pat.label.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(best.expect("at least one curve is probed"))
}

fn primitive_weights(k: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut w = vec![1u32; k];
    loop {
        if gcd_all(&w.iter().map(|&x| x as i128).collect::<Vec<_>>()) == 1 {
            out.push(w.clone());
        }
        let mut i = 0;
        while i < k && w[i] == bound {
            w[i] = 1;
            i += 1;
        }
        if i == k {
            return out;
        }
        w[i] += 1;
    }
}

fn wdeg(e: &[u32], w: &[u32]) -> u64 {
    e.iter().zip(w).map(|(&a, &b)| a as u64 * b as u64).sum()
}

fn constant(c: G) -> P {
    UPoly::constant(c)
}

/// Unit and sign coefficients, then torus roots of the initial forms of the partials.
fn patterns(gk: &[Terms], w: &[u32]) -> Vec<Pattern> {
    let k = w.len();
    let base = P::x();
    let mut out = vec![Pattern {
        label: "unit",
        modulus: base.clone(),
        c: vec![P::one(); k],
    }];
    for signs in 1u32..(1 << (k - 1)) {
        let c = (0..k)
            .map(|i| {
                if i > 0 && signs >> (i - 1) & 1 == 1 {
                    constant(G::from_int(-1))
                } else {
                    P::one()
                }
            })
            .collect();
        out.push(Pattern {
            label: "sign",
            modulus: base.clone(),
            c,
        });
    }
    let inits: Vec<(u64, Terms)> = gk
        .iter()
        .map(|g| {
            let d = g.iter().map(|(e, _)| wdeg(e, w)).min().unwrap();
            (
                d,
                g.iter().filter(|(e, _)| wdeg(e, w) == d).cloned().collect(),
            )
        })
        .collect();
    let lowest = inits.iter().map(|(d, _)| *d).min().unwrap();
    let leading: Vec<Terms> = inits
        .iter()
        .filter(|(d, _)| *d == lowest)
        .map(|(_, t)| t.clone())
        .collect();
    let all: Vec<Terms> = inits.into_iter().map(|(_, t)| t).collect();
    out.extend(critical_patterns(&leading, w));
    if all.len() > leading.len() {
        out.extend(critical_patterns(&all, w));
    }
    out
}

/// Coefficient vectors `c` on the torus where every given weighted-homogeneous form vanishes.
///
/// Writing `c^ν = c^{ν₀}·y^{coords(ν-ν₀)}` in a basis of `w^⊥ ∩ ℤᵏ` turns each form into a
/// polynomial in `k-1` variables; common roots are lifted back through the dual basis.
fn critical_patterns(eqs: &[Terms], w: &[u32]) -> Vec<Pattern> {
    let k = w.len();
    if k == 1 || k > 3 {
        return Vec::new();
    }
    let wi: Vec<i128> = w.iter().map(|&x| x as i128).collect();
    let red = column_reduce(&[wi], k);
    let kernel: Vec<Vec<i128>> = (1..k)
        .map(|c| (0..k).map(|i| red.u[i][c]).collect())
        .collect();
    let lat = saturated_span(&kernel, k);
    let mut dual = lat.dual.clone();
    let mut charts: Vec<Vec<(Vec<usize>, G)>> = eqs
        .iter()
        .map(|t| {
            let a = &t[0].0;
            let raw: Vec<(Vec<i128>, G)> = t
                .iter()
                .map(|(e, c)| {
                    let v: Vec<i128> = e
                        .iter()
                        .zip(a)
                        .map(|(&x, &y)| x as i128 - y as i128)
                        .collect();
                    (lat.coords(&v), c.clone())
                })
                .collect();
            let mins: Vec<i128> = (0..k - 1)
                .map(|j| raw.iter().map(|(v, _)| v[j]).min().unwrap())
                .collect();
            raw.into_iter()
                .map(|(v, c)| {
                    (
                        v.iter().zip(&mins).map(|(x, m)| (x - m) as usize).collect(),
                        c,
                    )
                })
                .collect()
        })
        .collect();

    let mut sols: Vec<(P, Vec<P>)> = Vec::new();
    if k == 2 {
        let g = charts.iter().fold(P::zero(), |g, t| {
            let mut cs = vec![G::zero(); t.iter().map(|(e, _)| e[0]).max().unwrap() + 1];
            for (e, c) in t {
                cs[e[0]] = &cs[e[0]] + c;
            }
            g.gcd(&UPoly::new(cs))
        });
        let (g, _) = g.strip_x_power();
        if !g.is_constant() {
            sols.push((g.squarefree_part().monic(), vec![P::x()]));
        }
    } else {
        let mut bivs: Vec<Biv> = charts
            .iter_mut()
            .map(|t| {
                Biv::from_terms(
                    &t.iter()
                        .map(|(e, c)| ((e[0], e[1]), c.clone()))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        if bivs.iter().all(|b| b.deg_y2() == 0) {
            bivs = bivs.iter().map(|b| b.swapped()).collect();
            dual.swap(0, 1);
        }
        sols = surface_solutions(&bivs);
    }

    let mut out = Vec::new();
    for (m, y) in sols {
        let c: Option<Vec<P>> = (0..k)
            .map(|i| {
                y.iter().zip(&dual).try_fold(P::one(), |acc, (yk, row)| {
                    Some(acc.mul(&k_pow(yk, row[i] as i64, &m)?).rem(&m))
                })
            })
            .collect();
        if let Some(c) = c {
            out.push(Pattern {
                label: "critical",
                modulus: m,
                c,
            });
        }
    }
    out
}

/// Torus solutions `(y1, y2)` of bivariate equations as (modulus in `y1`, `[y1, y2]` in the
/// quotient ring). `y2` must be determined linearly over each component; other components
/// are dropped, which only loses candidate curves.
fn surface_solutions(bivs: &[Biv]) -> Vec<(P, Vec<P>)> {
    let mut out = Vec::new();
    if bivs.len() == 1 {
        let mut q = bivs[0].clone();
        let swapped = q.deg_y1() == 0;
        if swapped {
            q = q.swapped();
        }
        for y2 in [1, -1, 2] {
            let v = G::from_int(y2);
            let p =
                q.c.iter()
                    .rev()
                    .fold(P::zero(), |acc, ck| acc.scale(&v).add(ck));
            let m = if p.is_zero() {
                UPoly::new(vec![G::from_int(-1), G::one()])
            } else {
                let (s, _) = p.strip_x_power();
                if s.is_constant() {
                    continue;
                }
                s.squarefree_part().monic()
            };
            let mut y = vec![P::x(), constant(v)];
            if swapped {
                y.swap(0, 1);
            }
            out.push((m, y));
        }
        return out;
    }
    let Some(r) = bivs[1..]
        .iter()
        .map(|b| resultant_y2(&bivs[0], b))
        .find(|r| !r.is_zero())
    else {
        return out;
    };
    let (s, _) = r.squarefree_part().strip_x_power();
    if s.is_constant() {
        return out;
    }
    let polys: Vec<Vec<P>> = bivs.iter().map(|b| b.c.clone()).collect();
    for comp in common_roots_over(&polys, &s) {
        let y2 = match &comp.gcd {
            None => P::one(),
            Some(g) if g.len() == 2 => g[0].scale(&G::from_int(-1)).rem(&comp.modulus),
            Some(_) => continue,
        };
        if k_inverse(&y2, &comp.modulus).is_none() {
            continue;
        }
        out.push((comp.modulus, vec![P::x(), y2]));
    }
    out
}

/// `ord_t ∇f(c·t^w)` for each component of the pattern's modulus; `None` when the gradient
/// vanishes identically along the curve.
fn gradient_orders(gk: &[Terms], w: &[u32], pat: &Pattern) -> Vec<Option<u64>> {
    let mut work = vec![pat.modulus.clone()];
    let mut out = Vec::new();
    'next: while let Some(m) = work.pop() {
        let mut ord: Option<u64> = None;
        for g in gk {
            let mut by_deg: BTreeMap<u64, P> = BTreeMap::new();
            for (e, coef) in g {
                let mut t = constant(coef.clone());
                for (ci, &ei) in pat.c.iter().zip(e) {
                    if ei > 0 {
                        t = t
                            .mul(&k_pow(ci, ei as i64, &m).expect("nonnegative power"))
                            .rem(&m);
                    }
                }
                let slot = by_deg.entry(wdeg(e, w)).or_insert_with(P::zero);
                *slot = slot.add(&t);
            }
            for (d, v) in by_deg {
                match zero_test(&v, &m) {
                    ZeroTest::Zero => continue,
                    ZeroTest::Unit => {
                        ord = Some(ord.map_or(d, |o| o.min(d)));
                        break;
                    }
                    ZeroTest::Split(h) => {
                        let other = m.div_exact(&h).monic();
                        work.push(h);
                        work.push(other);
                        continue 'next;
                    }
                }
            }
        }
        out.push(ord);
    }
    out
}

/// `ord ∇f(z(t)) / ord z(t)` for an explicit curve with rational coefficients.
pub fn curve_ratio(f: &PolyGerm, weights: &[u32], coeffs: &[G]) -> Option<Rational> {
    let keep: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > 0).collect();
    let gk: Vec<Terms> = f
        .gradient()
        .iter()
        .map(|g| {
            g.terms()
                .iter()
                .filter(|(e, _)| (0..weights.len()).all(|i| weights[i] > 0 || e.0[i] == 0))
                .map(|(e, c)| (keep.iter().map(|&i| e.0[i]).collect(), c.clone()))
                .collect::<Terms>()
        })
        .filter(|t| !t.is_empty())
        .collect();
    let w: Vec<u32> = keep.iter().map(|&i| weights[i]).collect();
    let pat = Pattern {
        label: "explicit",
        modulus: P::x(),
        c: keep.iter().map(|&i| constant(coeffs[i].clone())).collect(),
    };
    let ord = gradient_orders(&gk, &w, &pat).into_iter().next()??;
    Some(Rational::new(ord.into(), (*w.iter().min()?).into()))
}
