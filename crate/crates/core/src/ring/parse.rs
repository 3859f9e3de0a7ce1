use num_bigint::BigInt;
use num_traits::One;

use super::element::RingElement;
use super::monomial::Monomial;
use super::RingError;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> RingError {
        RingError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, RingError> {
        let start = self.pos;
        self.eat(b'-');
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        Ok(self.text[start..self.pos].parse().expect("digits parse"))
    }

    fn gen(&mut self) -> Result<&'static str, RingError> {
        // longest names first
        for name in ["u2a", "uga", "u2g", "a2g", "aa", "ag", "S"] {
            if self.text[self.pos..].starts_with(name) {
                self.pos += name.len();
                return Ok(name);
            }
        }
        Err(self.err("expected an integer or one of u2a, uga, aa, ag, u2g, a2g, S"))
    }

    /// One product of integers and generator powers.
    fn term(&mut self) -> Result<(BigInt, Monomial), RingError> {
        let mut literal = BigInt::one();
        let mut m = Monomial::ONE;
        let mut s: i64 = 0;
        loop {
            if self.peek().is_some_and(|c| c == b'-' || c.is_ascii_digit()) {
                literal *= self.int()?;
            } else {
                let at = self.pos;
                let name = self.gen()?;
                let e = if self.eat(b'^') { self.int()? } else { BigInt::one() };
                let e: i64 = i64::try_from(&e).map_err(|_| self.err("exponent out of range"))?;
                match name {
                    "S" => {
                        if e != -1 {
                            self.pos = at;
                            return Err(self.err("S only occurs as S^-1"));
                        }
                        s += 1;
                    }
                    "u2a" => m.i += e,
                    "uga" => m.j += e,
                    "aa" => m.k += e,
                    "ag" => m.l += e,
                    "u2g" => {
                        m.i += e;
                        m.j += 2 * e;
                    }
                    "a2g" => m.l += 2 * e,
                    _ => unreachable!(),
                }
            }
            if !self.eat(b'*') {
                break;
            }
        }
        if s >= 2 {
            literal = BigInt::from(0);
        }
        m.s = s.min(1) as u8;
        Ok((literal, m))
    }
}

/// Parses `term ("+" term)*`, each term a `*`-product of integers and
/// generator powers. All terms must share one grading.
pub fn parse_element(p: u64, text: &str) -> Result<RingElement, RingError> {
    let mut parser = Parser { text, pos: 0 };
    if text.is_empty() {
        return Err(parser.err("empty element"));
    }
    let mut out = RingElement::zero();
    let mut grading = None;
    loop {
        let start = parser.pos;
        let (literal, m) = parser.term()?;
        let g = m.degree();
        match grading {
            None => grading = Some(g),
            Some(h) if h != g => {
                return Err(RingError::GradingMismatch {
                    pos: start,
                    left: h,
                    right: g,
                })
            }
            _ => {}
        }
        let t = RingElement::from_literal(p, m, literal)?;
        out = out.add(p, &t);
        if parser.peek().is_none() {
            return Ok(out);
        }
        if !parser.eat(b'+') {
            return Err(parser.err("expected '*', '+' or end of input"));
        }
    }
}

pub fn format_element(x: &RingElement) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FamilyTag;

    #[test]
    fn round_trips() {
        let x = parse_element(3, "2*u2a^-1*uga").unwrap();
        assert_eq!(format_element(&x), "2*uga*u2a^-1");
        assert_eq!(parse_element(3, &format_element(&x)).unwrap(), x);
        let y = parse_element(3, "S^-1*uga^-1*ag^-2").unwrap();
        assert_eq!(y.monomials().next().unwrap().family(), FamilyTag::F7);
        assert!(parse_element(3, "u2a^-1*aa").unwrap().is_zero());
        assert_eq!(parse_element(5, "u2g").unwrap(), parse_element(5, "u2a*uga^2").unwrap());
        assert_eq!(parse_element(5, "a2g^2").unwrap(), parse_element(5, "ag^4").unwrap());
        assert_eq!(format_element(&parse_element(3, "1").unwrap()), "1");
        assert_eq!(format_element(&parse_element(3, "7*aa").unwrap()), "aa");
    }

    #[test]
    fn rejects() {
        assert!(matches!(parse_element(3, "u2a^"), Err(RingError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_element(3, "S*uga"), Err(RingError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_element(3, "uga+u2a"), Err(RingError::GradingMismatch { pos: 4, .. })));
        assert!(matches!(parse_element(3, "u2a^-1"), Err(RingError::NotInRing { .. })));
        assert!(matches!(parse_element(3, "xyz"), Err(RingError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_element(3, ""), Err(RingError::Syntax { .. })));
        assert!(matches!(parse_element(3, "uga*"), Err(RingError::Syntax { pos: 4, .. })));
    }

    #[test]
    fn sums_combine() {
        let x = parse_element(3, "uga*aa+uga*aa").unwrap();
        assert!(x.is_zero());
        let y = parse_element(3, "2*u2a^-1+-4*u2a^-1").unwrap();
        assert_eq!(format_element(&y), "-2*u2a^-1");
    }
}
