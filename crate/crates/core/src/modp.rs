//! Arithmetic in prime fields 𝔽_p with p ≡ 1 (mod 4), so that ℚ(i) reduces into 𝔽_p.
//!
//! Used for witness points of degenerate faces and by the randomized falsifier.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::{GaussianRational, Rational};

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero element.
pub fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes `p ≥ start` with `p ≡ 1 (mod 4)`.
pub fn primes_one_mod_four(start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = start + (4 + 1 - start % 4) % 4;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c += 4;
    }
    out
}

/// Default witness primes: just above 2³¹.
pub fn default_primes(count: usize) -> Vec<u64> {
    primes_one_mod_four(1 << 31, count)
}

/// A prime field with a chosen square root of -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
    pub i: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p % 4 == 1 && is_prime(p), "need a prime p ≡ 1 mod 4");
        let e = (p - 1) / 4;
        let i = (2..p)
            .map(|c| powmod(c, e, p))
            .find(|&r| mulmod(r, r, p) == p - 1)
            .expect("a square root of -1 exists");
        PrimeField { p, i }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b % self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        invmod(a, self.p)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        powmod(a, e, self.p)
    }

    /// `a^e` for a signed exponent (`a` nonzero when `e < 0`).
    pub fn powi(&self, a: u64, e: i64) -> u64 {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(self.inv(a), e.unsigned_abs())
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced residue fits")
    }

    /// Reduction of a rational; `None` when `p` divides the denominator.
    pub fn from_rational(&self, q: &Rational) -> Option<u64> {
        let d = self.from_bigint(q.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(q.numer()), self.inv(d)))
    }

    /// Reduction of `a + b·i` with `i ↦ self.i`.
    pub fn from_gaussian(&self, c: &GaussianRational) -> Option<u64> {
        let re = self.from_rational(&c.re)?;
        if c.im.is_zero() {
            return Some(re);
        }
        let im = self.from_rational(&c.im)?;
        Some(self.add(re, self.mul(im, self.i)))
    }

    pub fn random_nonzero(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(1..self.p)
    }
}

/// Dense polynomial over 𝔽_p, low degree first, trimmed.
pub type ModPoly = Vec<u64>;

pub fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn poly_eval(f: &PrimeField, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn poly_sub(f: &PrimeField, a: &[u64], b: &[u64]) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| f.sub(*a.get(k).unwrap_or(&0), *b.get(k).unwrap_or(&0)))
            .collect(),
    )
}

pub fn poly_mul(f: &PrimeField, a: &[u64], b: &[u64]) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn poly_rem(f: &PrimeField, a: &[u64], d: &[u64]) -> ModPoly {
    let d = trim(d.to_vec());
    assert!(!d.is_empty(), "division by zero polynomial");
    let mut r = trim(a.to_vec());
    let li = f.inv(*d.last().unwrap());
    while r.len() >= d.len() {
        let c = f.mul(*r.last().unwrap(), li);
        let shift = r.len() - d.len();
        for (j, &y) in d.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, y));
        }
        r = trim(r);
    }
    r
}

pub fn poly_div(f: &PrimeField, a: &[u64], d: &[u64]) -> ModPoly {
    let d = trim(d.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < d.len() {
        return Vec::new();
    }
    let li = f.inv(*d.last().unwrap());
    let mut q = vec![0u64; r.len() - d.len() + 1];
    while r.len() >= d.len() && !r.is_empty() {
        let c = f.mul(*r.last().unwrap(), li);
        let shift = r.len() - d.len();
        q[shift] = c;
        for (j, &y) in d.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, y));
        }
        r = trim(r);
    }
    trim(q)
}

pub fn poly_monic(f: &PrimeField, a: &[u64]) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = f.inv(l);
            a.iter().map(|&c| f.mul(c, li)).collect()
        }
    }
}

pub fn poly_gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> ModPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    poly_monic(f, &x)
}

pub fn poly_derivative(f: &PrimeField, a: &[u64]) -> ModPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(c, k as u64 % f.p))
            .collect(),
    )
}

fn poly_powmod(f: &PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> ModPoly {
    let mut acc: ModPoly = poly_rem(f, &[1], m);
    let mut b = poly_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(f, &poly_mul(f, &acc, &b), m);
        }
        b = poly_rem(f, &poly_mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// Distinct roots in 𝔽_p of a nonzero polynomial, sorted.
pub fn poly_roots(f: &PrimeField, a: &[u64], rng: &mut ChaCha8Rng) -> Vec<u64> {
    let a = poly_monic(f, &trim(a.to_vec()));
    if a.len() <= 1 {
        return Vec::new();
    }
    // gcd with x^p - x isolates the product of the distinct linear factors.
    let xp = poly_powmod(f, &[0, 1], f.p, &a);
    let g = poly_gcd(f, &a, &poly_sub(f, &xp, &[0, 1]));
    let mut out = Vec::new();
    split_linear(f, g, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(f: &PrimeField, g: ModPoly, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(f.mul(f.sub(0, g[0]), f.inv(g[1]))),
        _ => loop {
            let shift = rng.gen_range(0..f.p);
            let h = poly_powmod(f, &[shift, 1], (f.p - 1) / 2, &g);
            let d = poly_gcd(f, &g, &poly_sub(f, &h, &[1]));
            if d.len() > 1 && d.len() < g.len() {
                let q = poly_div(f, &g, &d);
                split_linear(f, d, rng, out);
                split_linear(f, q, rng, out);
                return;
            }
        },
    }
}

/// Deterministic RNG for root splitting.
pub fn splitting_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn primes_and_sqrt_minus_one() {
        let ps = default_primes(3);
        assert!(ps
            .iter()
            .all(|&p| p >= 1 << 31 && p % 4 == 1 && is_prime(p)));
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        let f = PrimeField::new(ps[0]);
        assert_eq!(f.mul(f.i, f.i), f.p - 1);
        assert!(!is_prime(1 << 31));
        assert!(is_prime(2_147_483_647));
    }

    #[test]
    fn reductions() {
        let f = PrimeField::new(13);
        assert_eq!(f.from_rational(&rat(1, 2)), Some(7));
        assert_eq!(f.from_rational(&rat(1, 13)), None);
        assert_eq!(f.from_rational(&rat(-1, 1)), Some(12));
        let i = f.from_gaussian(&GaussianRational::i()).unwrap();
        assert_eq!(f.mul(i, i), 12);
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = PrimeField::new(default_primes(1)[0]);
        // (x - 3)(x - 5)(x^2 + 1)
        let a = poly_mul(&f, &poly_mul(&f, &[f.p - 3, 1], &[f.p - 5, 1]), &[1, 0, 1]);
        let mut rng = splitting_rng(7);
        let mut expected = vec![3, 5, f.i, f.p - f.i];
        expected.sort_unstable();
        assert_eq!(poly_roots(&f, &a, &mut rng), expected);
        assert!(poly_roots(&f, &[1], &mut rng).is_empty());
        assert_eq!(poly_derivative(&f, &[1, 2, 3]), vec![2, 6]);
    }
}
