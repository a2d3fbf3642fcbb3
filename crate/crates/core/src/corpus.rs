//! Seeded random germs for property suites and batch runs, and the corpus file format
//! `<arity>;<expression>` with `#` comments.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{build_diagram, diagram_predicates};
use crate::error::{Error, Result};
use crate::exponent::quasihomogeneous_weights;
use crate::germ::{ExpVec, PolyGerm};
use crate::nondegeneracy::{is_nondegenerate, Verdict};
use crate::parse::parse_germ;
use crate::scalar::{rat_int, GaussianRational, Rational};

fn coeff(rng: &mut ChaCha8Rng) -> GaussianRational {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3..=3);
    }
    GaussianRational::from_int(c)
}

fn add(f: &mut PolyGerm, e: Vec<u32>, rng: &mut ChaCha8Rng) {
    f.add_term(ExpVec(e), &coeff(rng));
}

/// One random germ of arity 2 or 3 built to be nearly convenient: every axis gets either a
/// pure power or a term at distance 1 from it, plus a few random terms.
fn random_germ(rng: &mut ChaCha8Rng) -> PolyGerm {
    let n = if rng.gen_bool(0.5) { 2 } else { 3 };
    let mut f = PolyGerm::zero(n);
    for i in 0..n {
        let mut e = vec![0u32; n];
        if rng.gen_bool(0.65) {
            e[i] = rng.gen_range(2..=9);
        } else {
            e[i] = rng.gen_range(1..=6);
            let j = (i + rng.gen_range(1..n)) % n;
            e[j] = 1;
        }
        add(&mut f, e, rng);
    }
    for _ in 0..rng.gen_range(0..=4) {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
        if e.iter().sum::<u32>() >= 2 {
            add(&mut f, e, rng);
        }
    }
    f
}

/// Singularity whose diagram passes the necessary conditions for isolatedness.
pub fn has_isolated_shape(f: &PolyGerm) -> bool {
    if !f.is_singularity().is_yes() {
        return false;
    }
    let Ok(d) = build_diagram(f) else {
        return false;
    };
    diagram_predicates(&d).isolated_shape()
}

/// `count` random germs with the isolated-shape conditions enforced.
pub fn random_corpus(seed: u64, count: usize) -> Vec<PolyGerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let f = random_germ(&mut rng);
        if has_isolated_shape(&f) {
            out.push(f);
        }
    }
    out
}

/// Convenient, nondegenerate surface germs.
pub fn convenient_corpus(seed: u64, count: usize) -> Vec<PolyGerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut f = random_germ(&mut rng);
        if f.arity() != 3 {
            continue;
        }
        for i in 0..3 {
            let mut e = vec![0u32; 3];
            e[i] = rng.gen_range(2..=8);
            add(&mut f, e, &mut rng);
        }
        let Ok(d) = build_diagram(&f) else { continue };
        if f.is_singularity().is_yes()
            && diagram_predicates(&d).convenient
            && is_nondegenerate(&f).is_ok_and(|r| r.verdict == Verdict::Nondegenerate)
        {
            out.push(f);
        }
    }
    out
}

/// Weighted-homogeneous surface germs with all weights ≥ 2 that are nondegenerate.
///
/// Built from Fermat, two-term chain and three-term chain skeletons, with extra random
/// monomials of the same weighted degree and a random permutation of the variables.
pub fn weighted_homogeneous_corpus(seed: u64, count: usize) -> Vec<PolyGerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<PolyGerm> = Vec::with_capacity(count);
    while out.len() < count {
        let (a, b, c) = (
            rng.gen_range(2..=6u32),
            rng.gen_range(2..=6u32),
            rng.gen_range(2..=7u32),
        );
        let skeleton: Vec<Vec<u32>> = match rng.gen_range(0..4) {
            0 => vec![vec![a, 0, 0], vec![0, b, 0], vec![0, 0, c]],
            1 => vec![vec![a, 1, 0], vec![0, b, 0], vec![0, 0, c]],
            2 => vec![vec![a, 1, 0], vec![0, b, 1], vec![0, 0, c]],
            _ => vec![vec![1, 1, 0], vec![0, 0, c]],
        };
        let mut f = PolyGerm::zero(3);
        for e in &skeleton {
            add(&mut f, e.clone(), &mut rng);
        }
        let Ok(w) = quasihomogeneous_weights(&f) else {
            continue;
        };
        if w.iter().any(|x| *x < rat_int(2)) {
            continue;
        }
        // other monomials on the same weighted hyperplane
        let inv: Vec<Rational> = w.iter().map(|x| x.recip()).collect();
        let mut extra = Vec::new();
        for i in 0..=8u32 {
            for j in 0..=8u32 {
                for k in 0..=8u32 {
                    let e = [i, j, k];
                    let s: Rational = e
                        .iter()
                        .zip(&inv)
                        .map(|(&x, y)| rat_int(x as i64) * y)
                        .sum();
                    if s == rat_int(1) && !skeleton.contains(&e.to_vec()) {
                        extra.push(e.to_vec());
                    }
                }
            }
        }
        extra.shuffle(&mut rng);
        for e in extra.into_iter().take(rng.gen_range(0..=2)) {
            add(&mut f, e, &mut rng);
        }
        let mut perm = vec![0usize, 1, 2];
        perm.shuffle(&mut rng);
        let f = f.permute(&perm);
        if out.contains(&f) || !has_isolated_shape(&f) {
            continue;
        }
        if is_nondegenerate(&f).is_ok_and(|r| r.verdict == Verdict::Nondegenerate) {
            out.push(f);
        }
    }
    out
}

pub fn format_corpus_line(f: &PolyGerm) -> String {
    format!("{};{}", f.arity(), f)
}

/// Parses one corpus line; `None` for blank lines and comments.
pub fn parse_corpus_line(line: &str) -> Option<Result<PolyGerm>> {
    let line = line.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        return None;
    }
    let Some((n, expr)) = line.split_once(';') else {
        return Some(Err(Error::Syntax {
            pos: 0,
            msg: "expected `<arity>;<expression>`".into(),
        }));
    };
    Some(match n.trim().parse::<usize>() {
        Ok(n) => parse_germ(expr.trim(), n),
        Err(_) => Err(Error::Syntax {
            pos: 0,
            msg: format!("bad arity `{}`", n.trim()),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(random_corpus(7, 30), random_corpus(7, 30));
        assert!(random_corpus(7, 30).iter().all(has_isolated_shape));
    }

    #[test]
    fn corpus_lines_round_trip() {
        for f in random_corpus(3, 20) {
            let line = format_corpus_line(&f);
            assert_eq!(parse_corpus_line(&line).unwrap().unwrap(), f);
        }
        assert!(parse_corpus_line("  # comment").is_none());
        assert!(parse_corpus_line("").is_none());
        assert!(parse_corpus_line("z1^2").unwrap().is_err());
    }

    #[test]
    fn weighted_homogeneous_germs_have_big_weights() {
        for f in weighted_homogeneous_corpus(11, 10) {
            let w = quasihomogeneous_weights(&f).unwrap();
            assert!(w.iter().all(|x| *x >= rat_int(2)), "{f}");
        }
    }
}
