use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::coeff::{Coeff, Domain};
use super::monomial::{Monomial, VarSet};

/// A variable set together with a coefficient domain.
#[derive(Debug, Clone)]
pub struct Ring {
    vars: Arc<VarSet>,
    domain: Domain,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(vars: VarSet, domain: Domain) -> Self {
        Ring {
            vars: Arc::new(vars),
            domain,
        }
    }

    /// Convenience for tests and fixed examples; panics on invalid names.
    pub fn with_vars<S: AsRef<str>>(names: &[S], domain: Domain) -> Self {
        Self::new(VarSet::new(names).expect("valid variable names"), domain)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Same variables, different coefficients.
    pub fn with_domain(&self, domain: Domain) -> Ring {
        Ring {
            vars: Arc::clone(&self.vars),
            domain,
        }
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        self.term(self.domain.from_i64(c), Monomial::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.term(self.domain.one(), Monomial::var(self.nvars(), i))
    }

    pub fn var_named(&self, name: &str) -> Result<Polynomial> {
        let i = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::usage(format!("unknown variable '{name}'")))?;
        Ok(self.var(i))
    }

    pub fn term(&self, c: Coeff, m: Monomial) -> Polynomial {
        let mut p = self.zero();
        if !self.domain.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        self.term(self.domain.one(), m)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        super::parse::parse_poly(text, self)
    }
}

/// Sparse polynomial: monomial → nonzero coefficient, in grevlex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Coeff>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic; mismatched rings are a usage error.
pub fn arith(p: &Polynomial, q: &Polynomial, kind: ArithKind) -> Result<Polynomial> {
    p.check_ring(q)?;
    Ok(match kind {
        ArithKind::Add => p.add_unchecked(q, false),
        ArithKind::Sub => p.add_unchecked(q, true),
        ArithKind::Mul => p.mul_unchecked(q),
    })
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn domain(&self) -> Domain {
        self.ring.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.domain.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one(self.ring.nvars()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// `Some(d)` iff the polynomial is nonzero and every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let (first, _) = self.terms.iter().next()?;
        let (last, _) = self.terms.iter().next_back()?;
        // grevlex is graded, so the extremes bound every degree
        (first.degree() == last.degree()).then_some(first.degree())
    }

    /// Index of the variable when the polynomial is exactly one variable.
    pub fn as_variable(&self) -> Option<usize> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.leading_term()?;
        if m.degree() != 1 || !self.ring.domain.is_one(c) {
            return None;
        }
        m.exponents().iter().position(|&e| e == 1)
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::usage(format!(
                "ring mismatch: {:?} over {} vs {:?} over {}",
                self.ring.vars.names(),
                self.ring.domain,
                other.ring.vars.names(),
                other.ring.domain
            )));
        }
        Ok(())
    }

    fn add_unchecked(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let d = self.ring.domain;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if subtract { d.neg(c) } else { c.clone() };
            accumulate(&mut terms, d, m.clone(), c);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let d = self.ring.domain;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                accumulate(&mut terms, d, m1.mul(m2), d.mul(c1, c2));
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let d = self.ring.domain;
        if d.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), d.mul(v, c)))
                .filter(|(_, v)| !d.is_zero(v))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Ring homomorphism sending each used variable to its image in `target`.
    pub fn substitute(
        &self,
        target: &Ring,
        images: &BTreeMap<String, Polynomial>,
    ) -> Result<Polynomial> {
        for img in images.values() {
            if img.ring != *target {
                return Err(Error::usage("substitution images live in different rings"));
            }
        }
        let mut per_var: Vec<Option<&Polynomial>> = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.vars.names() {
            per_var.push(images.get(name));
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let c = target.domain.convert(c)?;
            let mut t = target.term(c, Monomial::one(target.nvars()));
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = per_var[i].ok_or_else(|| {
                    Error::usage(format!(
                        "no image for variable '{}'",
                        self.ring.vars.name(i)
                    ))
                })?;
                let pw = powers.entry((i, e)).or_insert_with(|| img.pow(e));
                t = t.mul_unchecked(pw);
            }
            out = out.add_unchecked(&t, false);
        }
        Ok(out)
    }

    /// Same polynomial over another coefficient domain (ℤ → ℚ, ℤ → F_p, ...).
    pub fn to_domain(&self, domain: Domain) -> Result<Polynomial> {
        let ring = self.ring.with_domain(domain);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let c = domain.convert(c)?;
            if !domain.is_zero(&c) {
                terms.insert(m.clone(), c);
            }
        }
        Ok(Polynomial { ring, terms })
    }

    /// Builds a polynomial from raw terms; zero coefficients are dropped and
    /// repeated monomials summed.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length differs from ring");
            accumulate(&mut map, ring.domain, m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms: map,
        }
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Coeff>, d: Domain, m: Monomial, c: Coeff) {
    if d.is_zero(&c) {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = d.add(o.get(), &c);
            if d.is_zero(&sum) {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let d = self.ring.domain;
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = d.is_negative(c);
            let abs = if neg { d.neg(c) } else { c.clone() };
            if neg {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !d.is_one(&abs) {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(&self.ring.vars, f)?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics when the operands live in different rings; use
            /// [`arith`] for a checked variant.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.check_ring(rhs).expect("polynomial ring mismatch");
                $body(self, rhs)
            }
        }

        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Polynomial, b| a.add_unchecked(b, false));
binop!(Sub, sub, |a: &Polynomial, b| a.add_unchecked(b, true));
binop!(Mul, mul, |a: &Polynomial, b| a.mul_unchecked(b));

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let d = self.ring.domain;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), d.neg(c)))
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}
