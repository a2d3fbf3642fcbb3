//! Parser for polynomial germs.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := factor ('*' factor)*
//! factor:= coeff | monom
//! monom := var ('^' natural)?
//! var   := 'z' natural | 'x' | 'y' | 'z'        (aliases only for n ≤ 3)
//! coeff := rational ['i'] | 'i' | '(' ['+'|'-'] rational ['i'] (('+'|'-') rational ['i'])? ')'
//! rational := integer ('/' positive-integer)?
//! ```
//! Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::germ::{ExpVec, PolyGerm};
use crate::scalar::{GaussianRational, Rational};

pub fn parse_germ(text: &str, arity: usize) -> Result<PolyGerm> {
    if arity == 0 {
        return Err(Error::UnsupportedArity(0));
    }
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        arity,
    };
    let g = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.syntax(format!("unexpected character '{}'", p.chars[p.pos])));
    }
    Ok(g)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    arity: usize,
}

impl Parser {
    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<PolyGerm> {
        let mut g = PolyGerm::zero(self.arity);
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        if self.peek().is_none() {
            return Err(self.syntax("empty expression"));
        }
        loop {
            let (e, mut c) = self.term()?;
            if sign < 0 {
                c = -c;
            }
            g.add_term(e, &c);
            sign = match self.peek() {
                Some('+') => 1,
                Some('-') => -1,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(g)
    }

    fn term(&mut self) -> Result<(ExpVec, GaussianRational)> {
        let mut e = ExpVec::zero(self.arity);
        let mut c = GaussianRational::one();
        loop {
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() || ch == '(' || ch == 'i' => {
                    let k = self.coeff()?;
                    c = &c * &k;
                }
                Some('x' | 'y' | 'z') => {
                    let (axis, power) = self.monom()?;
                    e.0[axis] += power;
                }
                Some(ch) => {
                    return Err(
                        self.syntax(format!("expected coefficient or variable, found '{ch}'"))
                    )
                }
                None => return Err(self.syntax("expected coefficient or variable")),
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok((e, c))
    }

    fn natural(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.natural()?;
        if self.eat('/') {
            let at = self.pos;
            let d = self.natural()?;
            if d.is_zero() {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "zero denominator".into(),
                });
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    /// Rational with optional imaginary-unit suffix, or a bare `i`.
    fn real_or_imag(&mut self) -> Result<GaussianRational> {
        if self.peek() == Some('i') {
            self.pos += 1;
            return Ok(GaussianRational::i());
        }
        let q = self.rational()?;
        // no whitespace skipping: `3i` is one token
        if self.chars.get(self.pos) == Some(&'i') {
            self.pos += 1;
            Ok(GaussianRational::new(Rational::zero(), q))
        } else {
            Ok(GaussianRational::from_rational(q))
        }
    }

    fn coeff(&mut self) -> Result<GaussianRational> {
        if !self.eat('(') {
            return self.real_or_imag();
        }
        let mut acc = GaussianRational::zero();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let mut part = self.real_or_imag()?;
            if sign < 0 {
                part = -part;
            }
            acc = &acc + &part;
            sign = match self.peek() {
                Some('+') => 1,
                Some('-') => -1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(acc);
                }
                _ => return Err(self.syntax("expected '+', '-' or ')' in coefficient")),
            };
            self.pos += 1;
        }
    }

    fn monom(&mut self) -> Result<(usize, u32)> {
        let start = self.pos;
        let ch = self.chars[self.pos];
        self.pos += 1;
        let indexed = ch == 'z' && self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit());
        let index = if indexed {
            let k = self.natural()?;
            let k: usize = k.try_into().map_err(|_| Error::Arity {
                index: usize::MAX,
                arity: self.arity,
            })?;
            if k == 0 {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "variables are numbered from 1".into(),
                });
            }
            k
        } else {
            if self.arity > 3 {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!(
                        "alias '{ch}' is only available for arity ≤ 3; use z1..z{}",
                        self.arity
                    ),
                });
            }
            match ch {
                'x' => 1,
                'y' => 2,
                _ => 3,
            }
        };
        if index > self.arity {
            return Err(Error::Arity {
                index,
                arity: self.arity,
            });
        }
        let mut power = 1u32;
        if self.eat('^') {
            if self.peek() == Some('-') {
                return Err(Error::NegativeExponent { pos: self.pos });
            }
            let p = self.natural()?;
            power = p
                .try_into()
                .map_err(|_| self.syntax("exponent too large"))?;
        }
        Ok((index - 1, power))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn example_germ() {
        let g = parse_germ("z1^3+z2^3+z3^2+z1*z2", 3).unwrap();
        let supp: Vec<Vec<u32>> = g.support().into_iter().map(|e| e.0).collect();
        assert_eq!(
            supp,
            vec![vec![0, 0, 2], vec![0, 3, 0], vec![1, 1, 0], vec![3, 0, 0]]
        );
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_germ("0", 3).unwrap().is_zero());
        let g = parse_germ("z1*z2 - z1*z2 + 2*z1^2", 2).unwrap();
        assert_eq!(g.support(), vec![ExpVec(vec![2, 0])]);
        assert_eq!(g.coeff(&ExpVec(vec![2, 0])), GaussianRational::from_int(2));
    }

    #[test]
    fn aliases_and_coefficients() {
        let g = parse_germ("x*y + (1/2-3i)*z^4 - 2i*x^2 + 3/4*y^5", 3).unwrap();
        assert_eq!(g.coeff(&ExpVec(vec![1, 1, 0])), GaussianRational::one());
        assert_eq!(
            g.coeff(&ExpVec(vec![0, 0, 4])),
            GaussianRational::new(rat(1, 2), rat(-3, 1))
        );
        assert_eq!(
            g.coeff(&ExpVec(vec![2, 0, 0])),
            GaussianRational::new(rat(0, 1), rat(-2, 1))
        );
        assert_eq!(
            g.coeff(&ExpVec(vec![0, 5, 0])),
            GaussianRational::from_rational(rat(3, 4))
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_germ("z1 +", 2), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_germ("z3^2", 2),
            Err(Error::Arity { index: 3, arity: 2 })
        ));
        assert!(matches!(
            parse_germ("z1^-2", 2),
            Err(Error::NegativeExponent { .. })
        ));
        assert!(matches!(parse_germ("x*y", 4), Err(Error::Syntax { .. })));
        assert!(matches!(parse_germ("1/0*z1", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse_germ("", 1), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_reparses() {
        for (src, n) in [
            ("z1^3+z2^3+z1*z3^4+z2*z3^4", 3),
            ("-z1^2 + (2/3+1i)*z1*z2 - 5/7*z2^4 + 3i*z2^2", 2),
            ("7", 1),
        ] {
            let g = parse_germ(src, n).unwrap();
            assert_eq!(parse_germ(&g.to_string(), n).unwrap(), g, "{src}");
        }
    }
}
