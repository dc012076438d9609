use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime used for rank computations unless a caller asks otherwise.
pub const DEFAULT_PRIME: u64 = 32003;

/// Coefficient domain shared by every term of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    Integer,
    Rational,
    /// Residues modulo a prime below `2^31`.
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
}

impl Domain {
    /// Checked constructor for `Prime`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= (1 << 31) {
            return Err(Error::usage(format!("prime {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        Ok(Domain::Prime(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Domain::Integer)
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Domain::Integer => Coeff::Int(BigInt::zero()),
            Domain::Rational => Coeff::Rat(BigRational::zero()),
            Domain::Prime(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Domain::Integer => Coeff::Int(v.clone()),
            Domain::Rational => Coeff::Rat(BigRational::from_integer(v.clone())),
            Domain::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::Mod(r.to_u64().expect("residue fits u64"))
            }
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_zero(),
            Coeff::Rat(v) => v.is_zero(),
            Coeff::Mod(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Int(x), Coeff::Int(y), _) => Coeff::Int(x + y),
            (Coeff::Rat(x), Coeff::Rat(y), _) => Coeff::Rat(x + y),
            (Coeff::Mod(x), Coeff::Mod(y), Domain::Prime(p)) => Coeff::Mod((x + y) % p),
            _ => panic!("coefficient outside domain {self:?}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (a, self) {
            (Coeff::Int(x), _) => Coeff::Int(-x),
            (Coeff::Rat(x), _) => Coeff::Rat(-x),
            (Coeff::Mod(x), Domain::Prime(p)) => Coeff::Mod((p - x) % p),
            _ => panic!("coefficient outside domain {self:?}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Int(x), Coeff::Int(y), _) => Coeff::Int(x * y),
            (Coeff::Rat(x), Coeff::Rat(y), _) => Coeff::Rat(x * y),
            (Coeff::Mod(x), Coeff::Mod(y), Domain::Prime(p)) => Coeff::Mod(x * y % p),
            _ => panic!("coefficient outside domain {self:?}"),
        }
    }

    /// Exact division; over ℤ only when the quotient is integral.
    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        if self.is_zero(b) {
            return Err(Error::usage("division by zero"));
        }
        match (a, b, self) {
            (Coeff::Int(x), Coeff::Int(y), _) => {
                let (q, r) = x.div_rem(y);
                if r.is_zero() {
                    Ok(Coeff::Int(q))
                } else {
                    Err(Error::usage(format!(
                        "{x}/{y} is not an integer; use the rational domain"
                    )))
                }
            }
            (Coeff::Rat(x), Coeff::Rat(y), _) => Ok(Coeff::Rat(x / y)),
            (Coeff::Mod(x), Coeff::Mod(y), Domain::Prime(p)) => {
                Ok(Coeff::Mod(x * mod_inverse(*y, *p) % p))
            }
            _ => panic!("coefficient outside domain {self:?}"),
        }
    }

    /// Moves a coefficient from another domain into this one.
    pub fn convert(&self, c: &Coeff) -> Result<Coeff> {
        match (c, self) {
            (Coeff::Int(v), _) => Ok(self.from_bigint(v)),
            (Coeff::Rat(v), Domain::Rational) => Ok(Coeff::Rat(v.clone())),
            (Coeff::Rat(v), Domain::Integer) => {
                if v.is_integer() {
                    Ok(Coeff::Int(v.to_integer()))
                } else {
                    Err(Error::usage(format!("{v} is not an integer")))
                }
            }
            (Coeff::Rat(v), Domain::Prime(p)) => {
                let den = v.denom().mod_floor(&BigInt::from(*p));
                if den.is_zero() {
                    return Err(Error::usage(format!("denominator of {v} vanishes mod {p}")));
                }
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                self.div(&num, &den)
            }
            (Coeff::Mod(v), Domain::Prime(_)) if self.contains(c) => Ok(Coeff::Mod(*v)),
            (Coeff::Mod(_), _) => Err(Error::usage(format!("cannot lift a residue into {self:?}"))),
        }
    }

    fn contains(&self, c: &Coeff) -> bool {
        match (c, self) {
            (Coeff::Int(_), Domain::Integer) | (Coeff::Rat(_), Domain::Rational) => true,
            (Coeff::Mod(v), Domain::Prime(p)) => v < p,
            _ => false,
        }
    }

    /// True when the coefficient is "negative" for printing purposes.
    /// Residues are always printed as their representative in `[0, p)`.
    pub(crate) fn is_negative(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_negative(),
            Coeff::Rat(v) => v.is_negative(),
            Coeff::Mod(_) => false,
        }
    }

    pub(crate) fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_one(),
            Coeff::Rat(v) => v.is_one(),
            Coeff::Mod(v) => *v == 1,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integer => f.write_str("ZZ"),
            Domain::Rational => f.write_str("QQ"),
            Domain::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(v) => write!(f, "{v}"),
            Coeff::Rat(v) => {
                if v.is_integer() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Coeff::Mod(v) => write!(f, "{v}"),
        }
    }
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p < 2^31 so every product fits in u64.
    mod_pow(a % p, p - 2, p)
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_domain_validation() {
        assert!(Domain::prime(32003).is_ok());
        assert!(Domain::prime(32004).is_err());
        assert!(Domain::prime(1).is_err());
        assert!(Domain::prime(2147483659).is_err());
    }

    #[test]
    fn residues_are_reduced() {
        let d = Domain::Prime(7);
        assert_eq!(d.from_i64(-1), Coeff::Mod(6));
        assert_eq!(d.from_i64(15), Coeff::Mod(1));
        let inv = d.div(&d.one(), &d.from_i64(3)).unwrap();
        assert_eq!(d.mul(&inv, &d.from_i64(3)), d.one());
    }

    #[test]
    fn integer_division_must_be_exact() {
        let d = Domain::Integer;
        assert_eq!(
            d.div(&d.from_i64(6), &d.from_i64(3)).unwrap(),
            d.from_i64(2)
        );
        assert!(d.div(&d.from_i64(1), &d.from_i64(2)).is_err());
    }

    #[test]
    fn rational_into_prime() {
        let half = Coeff::Rat(BigRational::new(1.into(), 2.into()));
        let c = Domain::Prime(7).convert(&half).unwrap();
        assert_eq!(c, Coeff::Mod(4));
        assert!(Domain::Prime(2).convert(&half).is_err());
    }
}
