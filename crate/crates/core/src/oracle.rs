//! Brute-force and randomized oracles that check the exact engines from the outside.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{diagram_predicates, m0, NewtonDiagram};
use crate::error::{Error, Result};
use crate::germ::{ExpVec, PolyGerm};
use crate::lattice::{cross, int_rank, primitive};
use crate::modp::{poly_gcd, poly_roots, splitting_rng, ModPoly, PrimeField};
use crate::nondegeneracy::{verify_modular_witness, Witness};
use crate::scalar::rational_to_f64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleConfig {
    pub normal_bound: u32,
    pub mc_samples: u64,
    pub prime_count: usize,
    pub curve_weight_bound: u32,
    pub rng_seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            normal_bound: 8,
            mc_samples: 200_000,
            prime_count: 2,
            curve_weight_bound: 4,
            rng_seed: 0x5eed,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(format!("{what} must be positive")));
        if self.normal_bound == 0 {
            return bad("normal_bound");
        }
        if self.mc_samples == 0 {
            return bad("mc_samples");
        }
        if self.prime_count == 0 {
            return bad("prime_count");
        }
        if self.curve_weight_bound == 0 {
            return bad("curve_weight_bound");
        }
        Ok(())
    }
}

/// A face as seen by the brute-force scan: the support points minimizing `⟨u,·⟩`.
pub type FaceSet = BTreeSet<Vec<ExpVec>>;

/// Faces `argmin ⟨u,·⟩` over the support for every `u ∈ [1, B]ⁿ`.
pub fn brute_force_faces(support: &[ExpVec], bound: u32) -> FaceSet {
    let Some(first) = support.first() else {
        return FaceSet::new();
    };
    let n = first.arity();
    let mut pts: Vec<ExpVec> = support.to_vec();
    pts.sort();
    pts.dedup();
    let coords: Vec<Vec<i64>> = pts.iter().map(ExpVec::as_i64).collect();
    // argmin sets as bitmasks over the sorted points; chunks of 64
    let words = pts.len().div_ceil(64);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut mask = vec![0u64; words];
    let mut last = vec![u64::MAX; words];
    let mut u = vec![1i64; n];
    // a multiple of u has the same argmin set, so every u in the box is scanned
    loop {
        let mut l = i64::MAX;
        for (k, p) in coords.iter().enumerate() {
            let v: i64 = p.iter().zip(&u).map(|(a, b)| a * b).sum();
            if v < l {
                l = v;
                mask.iter_mut().for_each(|w| *w = 0);
            }
            if v == l {
                mask[k / 64] |= 1 << (k % 64);
            }
        }
        if mask != last {
            last.copy_from_slice(&mask);
            if !seen.contains(&mask) {
                seen.insert(mask.clone());
            }
        }
        // odometer over [1, B]ⁿ
        let mut k = 0;
        while k < n && u[k] == bound as i64 {
            u[k] = 1;
            k += 1;
        }
        if k == n {
            break;
        }
        u[k] += 1;
    }
    seen.into_iter()
        .map(|m| {
            (0..pts.len())
                .filter(|&k| m[k / 64] >> (k % 64) & 1 == 1)
                .map(|k| pts[k].clone())
                .collect()
        })
        .collect()
}

/// Largest entry of a facet normal of `support + ℝⁿ₊`, found from the support alone by
/// trying every hyperplane spanned by support differences and axis directions.
pub fn supporting_normal_bound(support: &[ExpVec]) -> u32 {
    let Some(first) = support.first() else {
        return 1;
    };
    let n = first.arity();
    let pts: Vec<Vec<i128>> = support
        .iter()
        .map(|p| p.0.iter().map(|&x| x as i128).collect())
        .collect();
    let dirs: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut best = 1i128;
    // spanning sets: a base point plus n-1 directions, each a difference or an axis
    let mut cands: Vec<Vec<i128>> = dirs.clone();
    for a in &pts {
        for b in &pts {
            if a < b {
                cands.push(b.iter().zip(a).map(|(x, y)| x - y).collect());
            }
        }
    }
    let mut pick = Vec::with_capacity(n - 1);
    choose(&cands, n - 1, 0, &mut pick, &mut |vs| {
        let u = primitive(&cross(vs, n));
        if u.iter().all(|&x| x == 0) {
            return;
        }
        let u: Vec<i128> = if u.iter().any(|&x| x < 0) {
            u.iter().map(|x| -x).collect()
        } else {
            u
        };
        if u.iter().any(|&x| x < 0) {
            return;
        }
        let dot = |p: &Vec<i128>| p.iter().zip(&u).map(|(a, b)| a * b).sum::<i128>();
        let l = pts.iter().map(dot).min().unwrap();
        let tight: Vec<&Vec<i128>> = pts.iter().filter(|p| dot(p) == l).collect();
        let mut span: Vec<Vec<i128>> = tight
            .iter()
            .skip(1)
            .map(|p| p.iter().zip(tight[0]).map(|(x, y)| x - y).collect())
            .collect();
        span.extend((0..n).filter(|&i| u[i] == 0).map(|i| dirs[i].clone()));
        if int_rank(&span) == n - 1 {
            best = best.max(*u.iter().max().unwrap());
        }
    });
    best.min(u32::MAX as i128) as u32
}

fn choose<F: FnMut(&[Vec<i128>])>(
    c: &[Vec<i128>],
    k: usize,
    from: usize,
    cur: &mut Vec<Vec<i128>>,
    visit: &mut F,
) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for i in from..c.len() {
        cur.push(c[i].clone());
        choose(c, k, i + 1, cur, visit);
        cur.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableFaces {
    pub faces: FaceSet,
    /// The bound at which the set was accepted.
    pub bound: u32,
    /// False when `max_bound` was reached before two equal doublings in a row.
    pub stable: bool,
}

/// Doubles `B` until the face set is unchanged over two consecutive doublings. The scan
/// starts at the larger of `start` and [`supporting_normal_bound`], since stability alone
/// can be reached well before a steep facet normal comes into range.
pub fn brute_force_faces_stable(support: &[ExpVec], start: u32, max_bound: u32) -> StableFaces {
    let mut b = start.max(supporting_normal_bound(support)).max(1);
    let mut cur = brute_force_faces(support, b);
    let mut unchanged = 0;
    while unchanged < 2 {
        if b.saturating_mul(2) > max_bound {
            return StableFaces {
                faces: cur,
                bound: b,
                stable: false,
            };
        }
        b *= 2;
        let next = brute_force_faces(support, b);
        unchanged = if next == cur { unchanged + 1 } else { 0 };
        cur = next;
    }
    StableFaces {
        faces: cur,
        bound: b,
        stable: true,
    }
}

/// The compact faces of `d` in the brute-force representation.
pub fn engine_faces(d: &NewtonDiagram) -> FaceSet {
    d.faces().iter().map(|s| s.points.clone()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub v3: f64,
    pub stderr: f64,
}

/// Monte-Carlo volume of `ℝ₊³ ∖ Γ₊` in the box `[0, m₀]³`.
pub fn monte_carlo_newton_volumes(
    d: &NewtonDiagram,
    samples: u64,
    seed: u64,
) -> Result<VolumeEstimate> {
    if samples == 0 {
        return Err(Error::InvalidConfig("mc_samples must be positive".into()));
    }
    if d.arity() != 3 {
        return Err(Error::UnsupportedArity(d.arity()));
    }
    if !diagram_predicates(d).convenient {
        return Err(Error::NotConvenient);
    }
    let side = rational_to_f64(&m0(d)?);
    let facets: Vec<([f64; 3], f64)> = d
        .facets()
        .map(|s| {
            (
                [s.normal[0] as f64, s.normal[1] as f64, s.normal[2] as f64],
                s.level as f64,
            )
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let p: [f64; 3] = [
            rng.gen::<f64>() * side,
            rng.gen::<f64>() * side,
            rng.gen::<f64>() * side,
        ];
        if facets
            .iter()
            .any(|(u, l)| u[0] * p[0] + u[1] * p[1] + u[2] * p[2] < *l)
        {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    let vol = side.powi(3);
    Ok(VolumeEstimate {
        v3: vol * frac,
        stderr: vol * (frac * (1.0 - frac) / samples as f64).sqrt(),
    })
}

/// Random search for a torus point where all partials of `fs` vanish over 𝔽_p.
///
/// Each trial fixes all coordinates but one at random nonzero values and solves the gcd
/// of the restricted partials in the free coordinate. A hit is returned only after
/// re-checking it against the full gradient; a miss proves nothing.
pub fn torus_degeneracy_search(
    fs: &PolyGerm,
    primes: &[u64],
    trials: usize,
    seed: u64,
) -> Option<Witness> {
    let n = fs.arity();
    if n == 0 || fs.is_zero() {
        return None;
    }
    let grad = fs.gradient();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut split = splitting_rng(seed ^ 0x9e37_79b9);
    for &p in primes {
        let fld = PrimeField::new(p);
        for t in 0..trials {
            let free = t % n;
            let mut z: Vec<u64> = (0..n).map(|_| fld.random_nonzero(&mut rng)).collect();
            let mut g: ModPoly = Vec::new();
            let mut reducible = true;
            for d in &grad {
                match restrict_univariate(&fld, d, &z, free) {
                    Some(r) => g = poly_gcd(&fld, &g, &r),
                    None => reducible = false,
                }
            }
            if !reducible {
                break;
            }
            let roots: Vec<u64> = if g.is_empty() {
                // every partial vanishes on the whole line
                vec![z[free]]
            } else {
                poly_roots(&fld, &g, &mut split)
            };
            for r in roots.into_iter().filter(|&r| r != 0) {
                z[free] = r;
                if verify_modular_witness(&fld, fs, &z) {
                    return Some(Witness {
                        field: "F_p".into(),
                        prime: Some(p),
                        point: z.iter().map(|c| c.to_string()).collect(),
                    });
                }
            }
        }
    }
    None
}

/// `g(z_1, …, x, …, z_n)` as a polynomial in the free coordinate `x`.
fn restrict_univariate(fld: &PrimeField, g: &PolyGerm, z: &[u64], free: usize) -> Option<ModPoly> {
    let mut out: ModPoly = Vec::new();
    for (e, c) in g.terms() {
        let mut t = fld.from_gaussian(c)?;
        for (k, (&zk, &ek)) in z.iter().zip(&e.0).enumerate() {
            if k != free {
                t = fld.mul(t, fld.pow(zk, ek as u64));
            }
        }
        let deg = e.0[free] as usize;
        if out.len() <= deg {
            out.resize(deg + 1, 0);
        }
        out[deg] = fld.add(out[deg], t);
    }
    Some(crate::modp::trim(out))
}
