use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::echelon::{normalize_row, rank_of_rows};
use super::field::RationalField;
use super::piece::to_field_poly;
use crate::constructions::GradedMatrix;
use crate::error::{Error, Result};
use crate::polyring::{monomials_of_degree, Monomial, Polynomial};

/// Upper bound on the number of minors enumerated in one call.
pub const MINOR_CAP: usize = 250_000;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, pick: &mut Vec<usize>, out: &mut Vec<u64>) {
        if pick.len() == k {
            out.push(pick.iter().fold(0u64, |m, i| m | 1 << i));
            return;
        }
        for i in start..n {
            if n - i < k - pick.len() {
                break;
            }
            pick.push(i);
            go(i + 1, n, k, pick, out);
            pick.pop();
        }
    }
    go(0, n, k, &mut pick, &mut out);
    out
}

/// All `size × size` minors, exact. The order is lexicographic in (column
/// set, row set) of whichever orientation has at least as many rows as
/// columns.
pub fn minors(m: &GradedMatrix, size: usize) -> Result<Vec<Polynomial>> {
    let (r, c) = m.shape();
    if size > r.min(c) {
        return Err(Error::usage(format!(
            "minor size {size} exceeds the smaller dimension of a {r}x{c} matrix"
        )));
    }
    let count = binomial(r, size).saturating_mul(binomial(c, size));
    if count > MINOR_CAP || r.max(c) > 63 {
        return Err(Error::usage(format!(
            "{count} minors of size {size} exceed the cap of {MINOR_CAP}; use a smaller parameter"
        )));
    }
    let ring = m.ring();
    if size == 0 {
        return Ok(vec![ring.one()]);
    }
    let tall = if r >= c { m.clone() } else { m.transpose() };
    let nrows = tall.rows();
    let mut out = Vec::new();
    for cols in subsets(tall.cols(), size) {
        let cols: Vec<usize> = (0..64).filter(|j| cols >> j & 1 == 1).collect();
        // det of (row set R) × (first j chosen columns), expanded along the
        // last of those columns.
        let mut level: HashMap<u64, Polynomial> = (0..nrows)
            .map(|i| (1u64 << i, tall.get(i, cols[0]).clone()))
            .collect();
        for (j, &col) in cols.iter().enumerate().skip(1) {
            let mut next = HashMap::new();
            for rows in subsets(nrows, j + 1) {
                let mut det = ring.zero();
                let members = (0..nrows).filter(|i| rows >> i & 1 == 1);
                for (pos, i) in members.enumerate() {
                    let e = tall.get(i, col);
                    if e.is_zero() {
                        continue;
                    }
                    let sub = &level[&(rows & !(1u64 << i))];
                    if sub.is_zero() {
                        continue;
                    }
                    let term = e * sub;
                    det = if (pos + j) % 2 == 0 {
                        det + term
                    } else {
                        det - term
                    };
                }
                next.insert(rows, det);
            }
            level = next;
        }
        for rows in subsets(nrows, size) {
            out.push(level.remove(&rows).expect("every row set is filled"));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MinorSpan {
    /// The minors span every form of their degree.
    FullPower,
    /// The minors span `Q·(forms of degree − 2)` with `Q = v0·v3 − v1·v2`,
    /// i.e. `f1f4 − f2f3` in generic mode.
    PowerTimesQ,
    /// As `PowerTimesQ` with `v0·v2 − v1·v3` (`f1f3 − f2f4`), the 2×2
    /// determinant of a row of `A11` over the matching row of `A21`.
    PowerTimesBlockDeterminant,
    /// Every minor vanishes when the first variable is set to zero, and also
    /// when the third is.
    DivisibleByF1AndF3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanCheck {
    pub holds: bool,
    pub minors: usize,
    /// Common degree of the nonzero minors.
    pub degree: Option<u32>,
    pub span_dim: usize,
    pub expected_dim: usize,
}

fn span_rank(polys: &[Polynomial], nvars: usize, degree: u32) -> Result<usize> {
    let f = RationalField;
    let monos = monomials_of_degree(nvars, degree);
    let index: HashMap<&Monomial, u32> = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i as u32))
        .collect();
    let rows = polys
        .iter()
        .map(|p| {
            let raw = to_field_poly(&f, p)?
                .into_iter()
                .map(|(m, c)| (index[&m], c))
                .collect();
            Ok(normalize_row(&f, raw))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_of_rows(&f, monos.len(), &rows))
}

fn vanishes_at_zero_of(p: &Polynomial, var: usize) -> bool {
    p.terms().all(|(m, _)| m.exponents()[var] > 0)
}

/// Checks one of the determinantal identities on the span of minors, with
/// ranks taken over ℚ.
pub fn minor_span_check(m: &GradedMatrix, size: usize, expected: MinorSpan) -> Result<SpanCheck> {
    let ring = m.ring();
    let nvars = ring.nvars();
    if nvars < 4 {
        return Err(Error::usage("span checks need at least four variables"));
    }
    let all = minors(m, size)?;
    let nonzero: Vec<Polynomial> = all.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut degree = None;
    for p in &nonzero {
        let d = p
            .homogeneous_degree()
            .ok_or_else(|| Error::usage(format!("minor {p} is not homogeneous")))?;
        if degree.is_some_and(|e| e != d) {
            return Err(Error::usage("minors have different degrees"));
        }
        degree = Some(d);
    }
    let count = all.len();
    let Some(deg) = degree else {
        return Ok(SpanCheck {
            holds: false,
            minors: count,
            degree,
            span_dim: 0,
            expected_dim: 0,
        });
    };
    let span_dim = span_rank(&nonzero, nvars, deg)?;
    let (holds, expected_dim) = match expected {
        MinorSpan::FullPower => {
            let full = binomial(deg as usize + nvars - 1, nvars - 1);
            (span_dim == full, full)
        }
        MinorSpan::PowerTimesQ | MinorSpan::PowerTimesBlockDeterminant => {
            if deg < 2 {
                (false, 0)
            } else {
                let v = |i| ring.var(i);
                let q = match expected {
                    MinorSpan::PowerTimesQ => &(&v(0) * &v(3)) - &(&v(1) * &v(2)),
                    _ => &(&v(0) * &v(2)) - &(&v(1) * &v(3)),
                };
                let multiples: Vec<Polynomial> = monomials_of_degree(nvars, deg - 2)
                    .into_iter()
                    .map(|mu| q.mul_monomial(&mu))
                    .collect();
                let target = span_rank(&multiples, nvars, deg)?;
                let union: Vec<Polynomial> = nonzero.iter().chain(&multiples).cloned().collect();
                let joint = span_rank(&union, nvars, deg)?;
                (span_dim == target && joint == target, target)
            }
        }
        MinorSpan::DivisibleByF1AndF3 => {
            let ok = nonzero
                .iter()
                .all(|p| vanishes_at_zero_of(p, 0) && vanishes_at_zero_of(p, 2));
            (ok, span_dim)
        }
    };
    Ok(SpanCheck {
        holds,
        minors: count,
        degree,
        span_dim,
        expected_dim,
    })
}
