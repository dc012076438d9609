use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Coeff, Domain, DEFAULT_PRIME};

/// Scalars for elimination. Elements are plain values; the field object only
/// carries parameters such as the modulus.
pub trait Field: Clone + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_coeff(&self, c: &Coeff) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// `acc[j] -= c * v` for every `(j, v)` in `row`.
    fn axpy(&self, acc: &mut [Self::Elem], c: &Self::Elem, row: &[(u32, Self::Elem)]) {
        for (j, v) in row {
            let slot = &mut acc[*j as usize];
            *slot = self.sub(slot, &self.mul(c, v));
        }
    }

    fn label(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        Domain::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> u64 {
        crate::polyring::mod_inverse(*a, self.p)
    }

    fn from_coeff(&self, c: &Coeff) -> Result<u64> {
        match Domain::Prime(self.p).convert(c)? {
            Coeff::Mod(v) => Ok(v),
            _ => unreachable!("prime domain yields residues"),
        }
    }

    fn axpy(&self, acc: &mut [u64], c: &u64, row: &[(u32, u64)]) {
        let p = self.p;
        let m = p - c;
        for (j, v) in row {
            let slot = &mut acc[*j as usize];
            *slot = (*slot + m * v) % p;
        }
    }

    fn label(&self) -> String {
        format!("fp:{}", self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }

    fn from_coeff(&self, c: &Coeff) -> Result<BigRational> {
        match c {
            Coeff::Int(v) => Ok(BigRational::from_integer(v.clone())),
            Coeff::Rat(v) => Ok(v.clone()),
            Coeff::Mod(_) => Err(Error::usage(
                "residues cannot be read as rational numbers; use a prime field",
            )),
        }
    }

    fn axpy(&self, acc: &mut [BigRational], c: &BigRational, row: &[(u32, BigRational)]) {
        for (j, v) in row {
            acc[*j as usize] -= c * v;
        }
    }

    fn label(&self) -> String {
        "q".to_string()
    }
}

/// Field picked at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

impl Default for FieldChoice {
    fn default() -> Self {
        FieldChoice::Prime(DEFAULT_PRIME)
    }
}

impl FieldChoice {
    /// Accepts `q` or `fp:<prime>`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldChoice::Rational);
        }
        let Some(p) = t.strip_prefix("fp:") else {
            return Err(Error::usage(format!(
                "unknown field '{text}'; expected q or fp:<prime>"
            )));
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::usage(format!("'{p}' is not a prime number")))?;
        Domain::prime(p)?;
        Ok(FieldChoice::Prime(p))
    }

    pub fn label(&self) -> String {
        match self {
            FieldChoice::Rational => "q".to_string(),
            FieldChoice::Prime(p) => format!("fp:{p}"),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            FieldChoice::Rational => Domain::Rational,
            FieldChoice::Prime(p) => Domain::Prime(*p),
        }
    }
}

/// Runs `$body` with `$f` bound to the concrete field.
macro_rules! with_field {
    ($choice:expr, $f:ident => $body:expr) => {
        match $choice {
            $crate::gradedla::FieldChoice::Rational => {
                let $f = $crate::gradedla::RationalField;
                $body
            }
            $crate::gradedla::FieldChoice::Prime(p) => {
                let $f = $crate::gradedla::PrimeField::new(p)?;
                $body
            }
        }
    };
}
pub(crate) use with_field;

/// Reduces an integer modulo `p` (used for unlucky-prime diagnostics).
pub fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits u64")
}
