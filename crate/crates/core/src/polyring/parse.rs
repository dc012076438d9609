//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ['^' nat]
//! base   := ident | nat | '(' expr ')'
//! ```
//!
//! Division is only accepted by a nonzero constant. Whitespace is ignored.

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::poly::{Polynomial, Ring};

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(out)
}

/// Splits `text` on `sep` and parses each part. Parse errors report the
/// offset within the whole text and the 1-based position of the part.
pub fn parse_poly_list(text: &str, sep: char, ring: &Ring) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (k, part) in text.split(sep).enumerate() {
        match parse_poly(part, ring) {
            Ok(p) => out.push(p),
            Err(Error::Parse { offset, message }) => {
                return Err(Error::Parse {
                    offset: start + offset,
                    message: format!("polynomial {}: {message}", k + 1),
                })
            }
            Err(e) => return Err(e),
        }
        start += part.len() + sep.len_utf8();
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let divisor = self.factor()?;
                acc = divide_by_constant(&acc, &divisor).map_err(|e| Error::Parse {
                    offset: at,
                    message: e.to_string(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.natural()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                let d = self.ring.domain();
                Ok(self
                    .ring
                    .term(d.from_bigint(&n), super::Monomial::one(self.ring.nvars())))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.vars().index_of(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::Parse {
                        offset: start,
                        message: format!("unknown identifier '{name}'"),
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits parse"))
    }
}

fn divide_by_constant(p: &Polynomial, divisor: &Polynomial) -> Result<Polynomial> {
    let d = p.domain();
    match divisor.leading_term() {
        Some((m, c)) if m.is_one() && divisor.num_terms() == 1 => {
            let terms = p
                .terms()
                .map(|(m, v)| Ok((m.clone(), d.div(v, c)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Polynomial::from_terms(p.ring(), terms))
        }
        None => Err(Error::usage("division by zero")),
        _ => Err(Error::usage("division is only allowed by a constant")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_errors_carry_global_offsets() {
        let r = Ring::with_vars(&["x0", "x1"], crate::polyring::Domain::Rational);
        assert_eq!(parse_poly_list("x0, x1^2", ',', &r).unwrap().len(), 2);
        match parse_poly_list("x0,x1,x0*(x1", ',', &r) {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 12);
                assert!(message.starts_with("polynomial 3"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }
    use crate::polyring::Domain;

    fn x_ring() -> Ring {
        Ring::with_vars(&["x0", "x1", "x2", "x3"], Domain::Integer)
    }

    #[test]
    fn parses_the_quadric() {
        let r = x_ring();
        let q = parse_poly("x0*x3-x1*x2", &r).unwrap();
        let expected = &(&r.var(0) * &r.var(3)) - &(&r.var(1) * &r.var(2));
        assert_eq!(q, expected);
    }

    #[test]
    fn whitespace_powers_and_unary_minus() {
        let r = x_ring();
        let p = parse_poly(" x0^2 - x1^2 ", &r).unwrap();
        assert_eq!(p.to_string(), "x0^2-x1^2");
        let n = parse_poly("-(x0+x1)^2", &r).unwrap();
        assert_eq!(n.to_string(), "-x0^2-2*x0*x1-x1^2");
    }

    #[test]
    fn unbalanced_parenthesis_reports_offset() {
        let err = parse_poly("x0*(x1", &x_ring()).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                offset: 6,
                message: "expected ')'".into()
            }
        );
    }

    #[test]
    fn unknown_identifier_is_named() {
        let err = parse_poly("x0+y7*x1", &x_ring()).unwrap_err();
        match err {
            Error::Parse { offset, message } => {
                assert_eq!(offset, 3);
                assert!(message.contains("y7"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trailing_garbage_and_empty_input() {
        assert!(matches!(
            parse_poly("x0 x1", &x_ring()),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            parse_poly("", &x_ring()),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(parse_poly("x0+", &x_ring()).is_err());
    }

    #[test]
    fn division_by_constants() {
        let q = x_ring().with_domain(Domain::Rational);
        let p = parse_poly("x0/2 - 3/4*x1", &q).unwrap();
        assert_eq!(p.to_string(), "1/2*x0-3/4*x1");
        assert_eq!(parse_poly(&p.to_string(), &q).unwrap(), p);
        assert!(parse_poly("x0/2", &x_ring()).is_err());
        assert!(parse_poly("x0/x1", &q).is_err());
        assert!(parse_poly("4*x0/2", &x_ring()).is_ok());
    }
}
