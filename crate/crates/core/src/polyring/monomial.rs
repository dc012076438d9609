use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Ordered list of variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::usage("variable list is empty"));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref().trim();
            if !is_identifier(name) {
                return Err(Error::usage(format!(
                    "'{name}' is not a valid variable name"
                )));
            }
            if out.iter().any(|n| n == name) {
                return Err(Error::usage(format!("variable '{name}' declared twice")));
            }
            out.push(name.to_string());
        }
        Ok(VarSet { names: out })
    }

    /// Parses a comma-separated list such as `"x0,x1,x2,x3"`.
    pub fn parse_list(text: &str) -> Result<Self> {
        let names: Vec<&str> = text.split(',').map(str::trim).collect();
        Self::new(&names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Dense exponent vector with cached total degree.
///
/// `Ord` is graded reverse lexicographic: higher degree first, then the
/// monomial with the smaller exponent in the last differing variable wins.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial {
            exps: exps.into_boxed_slice(),
            degree: 1,
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Box<[u32]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub(crate) fn fmt_with(&self, vars: &VarSet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(vars.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `nvars` variables, largest first.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill(&mut exps, 0, d, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(exps: &mut [u32], pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = left;
        out.push(Monomial::from_exponents(exps.to_vec()));
        return;
    }
    if exps.is_empty() {
        if left == 0 {
            out.push(Monomial::one(0));
        }
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        fill(exps, pos + 1, left - e, out);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_match_binomials() {
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert!(monomials_of_degree(4, 0)[0].is_one());
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        for n in 1..=6usize {
            for d in 0..=6u32 {
                let expected = binom(d as u64 + n as u64 - 1, n as u64 - 1);
                assert_eq!(
                    monomials_of_degree(n, d).len() as u64,
                    expected,
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn degree_one_lists_variables_in_declared_order() {
        let ms = monomials_of_degree(6, 1);
        let expected: Vec<Monomial> = (0..6).map(|i| Monomial::var(6, i)).collect();
        assert_eq!(ms, expected);
    }

    #[test]
    fn grevlex_ordering() {
        // x1*x2 > x0*x3 in grevlex with x0 > x1 > x2 > x3
        let x0x3 = Monomial::from_exponents(vec![1, 0, 0, 1]);
        let x1x2 = Monomial::from_exponents(vec![0, 1, 1, 0]);
        assert!(x1x2 > x0x3);
        let x0sq = Monomial::from_exponents(vec![2, 0, 0, 0]);
        assert!(x0sq > x1x2);
        let cube = Monomial::from_exponents(vec![0, 0, 0, 3]);
        assert!(cube > x0sq);
    }

    #[test]
    fn varset_rejects_duplicates_and_junk() {
        assert!(VarSet::new(&["x", "x"]).is_err());
        assert!(VarSet::new::<&str>(&[]).is_err());
        assert!(VarSet::new(&["1x"]).is_err());
        let v = VarSet::parse_list("x0, x1 ,x2").unwrap();
        assert_eq!(v.index_of("x1"), Some(1));
    }
}
