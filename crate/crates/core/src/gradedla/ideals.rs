use std::collections::HashMap;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::echelon::rank_of_rows;
use super::field::{with_field, Field, FieldChoice};
use super::piece::{to_field_poly, PieceSpace, QuotientPresentation};
use crate::error::{Error, Result};
use crate::polyring::{monomials_of_degree, Polynomial};

fn nvars_of(gens: &[Polynomial]) -> usize {
    gens.first().map_or(0, |g| g.ring().nvars())
}

/// `dim_k I_t` for the ideal generated by `gens`.
pub fn ideal_piece_dim(gens: &[Polynomial], t: i64, field: FieldChoice) -> Result<usize> {
    if gens.iter().all(Polynomial::is_zero) {
        return Ok(0);
    }
    with_field!(field, f => {
        let space = PieceSpace::new(f, nvars_of(gens), gens)?;
        Ok(space.piece(t).ideal_dim())
    })
}

/// Outcome of the Hilbert-series test for a homogeneous regular sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegSeqReport {
    pub regular: bool,
    /// `HF(R/fR)` for `t = 0, 1, …` up to the last degree examined.
    pub actual: Vec<usize>,
    /// Coefficients of `HS(R)·∏(1 - z^deg f_i)`.
    pub predicted: Vec<i64>,
    /// Whether the prediction reached zero and agreement was seen one degree
    /// past it; otherwise the verdict is bounded by the degree cap.
    pub complete: bool,
    pub reason: Option<String>,
}

/// Compares `HF(R/fR)` with the prediction for a regular sequence, where `R`
/// is `A` or `A/I`. The ambient ring is assumed Cohen–Macaulay.
///
/// Without a vanishing point (sequences shorter than the dimension) the
/// comparison stops at `deg_cap`, by default the sum of the degrees plus two.
pub fn regular_sequence_test(
    f: &[Polynomial],
    q: Option<&QuotientPresentation>,
    field: FieldChoice,
    deg_cap: Option<i64>,
) -> Result<RegSeqReport> {
    let Some(first) = f.first() else {
        return Err(Error::usage("empty sequence"));
    };
    let mut degs = Vec::new();
    for (k, g) in f.iter().enumerate() {
        g.check_ring(first)?;
        match g.homogeneous_degree() {
            Some(d) if d > 0 && !g.is_zero() => degs.push(d as i64),
            _ => {
                return Err(Error::usage(format!(
                    "element {} ({g}) must be homogeneous of positive degree",
                    k + 1
                )))
            }
        }
    }
    let cap = deg_cap.unwrap_or(degs.iter().sum::<i64>() + 2);
    let base_gens: Vec<Polynomial> = q.map_or(Vec::new(), |q| q.gens().to_vec());
    let mut all_gens = base_gens.clone();
    all_gens.extend(f.iter().cloned());
    with_field!(field, fl => {
        let base = PieceSpace::new(fl.clone(), first.ring().nvars(), &base_gens)?;
        let full = PieceSpace::new(fl, first.ring().nvars(), &all_gens)?;
        let subsets: Vec<(i64, i64)> = (0u32..1 << degs.len())
            .map(|s| {
                let shift = (0..degs.len()).filter(|i| s >> i & 1 == 1).map(|i| degs[i]).sum();
                let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
                (shift, sign)
            })
            .collect();
        let mut actual = Vec::new();
        let mut predicted = Vec::new();
        let mut first_zero = None;
        let mut verdict = (true, false, None);
        for t in 0..=cap.max(0) {
            let pred: i64 = subsets
                .iter()
                .map(|(shift, sign)| sign * base.piece(t - shift).dim() as i64)
                .sum();
            let act = full.piece(t).dim();
            actual.push(act);
            predicted.push(pred);
            if pred < 0 {
                verdict = (false, true, Some(format!("not a system of parameters: prediction is {pred} in degree {t}")));
                break;
            }
            if act as i64 != pred {
                verdict = (false, true, Some(format!("HF is {act} but {pred} is predicted in degree {t}")));
                break;
            }
            if pred == 0 {
                match first_zero {
                    None => first_zero = Some(t),
                    Some(_) => {
                        verdict = (true, true, None);
                        break;
                    }
                }
            }
        }
        let (regular, complete, reason) = verdict;
        let reason = reason.or_else(|| (!complete).then(|| format!("agreement checked through degree {cap}")));
        Ok(RegSeqReport { regular, actual, predicted, complete, reason })
    })
}

/// `dim_k {g ∈ A_t : μ·g ∈ I for every monomial μ of degree n}`.
pub fn saturation_piece_dim(
    gens: &[Polynomial],
    t: i64,
    n: u32,
    field: FieldChoice,
) -> Result<usize> {
    if t < 0 {
        return Ok(0);
    }
    let nvars = nvars_of(gens);
    if nvars == 0 {
        return Ok(0);
    }
    with_field!(field, f => {
        let space = PieceSpace::new(f.clone(), nvars, gens)?;
        let top = space.piece(t + n as i64);
        let sources = monomials_of_degree(nvars, t as u32);
        let mus = monomials_of_degree(nvars, n);
        let width = top.dim();
        let mut scratch = top.scratch(&f);
        let mut nf_cache = HashMap::new();
        let mut rows = Vec::with_capacity(sources.len());
        for m in &sources {
            let mut row = Vec::new();
            for (k, mu) in mus.iter().enumerate() {
                let col = top.col(&m.mul(mu));
                let nf = nf_cache
                    .entry(col)
                    .or_insert_with(|| top.normal_form(&f, &mut scratch, vec![(col, f.one())]));
                row.extend(nf.iter().map(|(c, v)| ((k * width) as u32 + c, v.clone())));
            }
            rows.push(row);
        }
        Ok(sources.len() - rank_of_rows(&f, mus.len() * width, &rows))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSearch {
    /// Exponents tried, in order.
    pub tried: Vec<u32>,
    /// Smallest exponent whose power lies in the ideal, if any was found.
    pub found: Option<u32>,
}

/// Looks for the least `N` in `exponents` with `target^N ∈ (gens)`. Each test
/// is a membership question in a single degree, hence linear algebra. A miss
/// says nothing about exponents outside the range.
pub fn power_membership_search(
    target: &Polynomial,
    gens: &[Polynomial],
    exponents: RangeInclusive<u32>,
    field: FieldChoice,
) -> Result<PowerSearch> {
    let Some(d) = target.homogeneous_degree() else {
        return Err(Error::usage(format!("{target} is not homogeneous")));
    };
    with_field!(field, f => {
        let space = PieceSpace::new(f.clone(), target.ring().nvars(), gens)?;
        let mut tried = Vec::new();
        for n in exponents {
            tried.push(n);
            let power = target.pow(n);
            let piece = space.piece((d * n) as i64);
            let raw = to_field_poly(&f, &power)?
                .into_iter()
                .map(|(m, c)| (piece.col(&m), c))
                .collect();
            let mut scratch = piece.scratch(&f);
            if piece.normal_form(&f, &mut scratch, raw).is_empty() {
                return Ok(PowerSearch { tried, found: Some(n) });
            }
        }
        Ok(PowerSearch { tried, found: None })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Domain, Ring};

    fn ring4() -> Ring {
        Ring::with_vars(&["x0", "x1", "x2", "x3"], Domain::Rational)
    }

    fn polys(r: &Ring, text: &str) -> Vec<Polynomial> {
        text.split(',').map(|s| r.parse(s).unwrap()).collect()
    }

    #[test]
    fn ideal_pieces() {
        let r = ring4();
        let vars = polys(&r, "x0,x1,x2,x3");
        assert_eq!(
            ideal_piece_dim(&vars, 1, FieldChoice::default()).unwrap(),
            4
        );
        let q = polys(&r, "x0*x3-x1*x2");
        assert_eq!(ideal_piece_dim(&q, 2, FieldChoice::Rational).unwrap(), 1);
        assert_eq!(ideal_piece_dim(&q, 1, FieldChoice::Rational).unwrap(), 0);
        let r6 = Ring::with_vars(&["x1", "x2", "x3", "y1", "y2", "y3"], Domain::Rational);
        let minors = polys(&r6, "x1*y2-x2*y1,x1*y3-x3*y1,x2*y3-x3*y2");
        assert_eq!(
            ideal_piece_dim(&minors, 2, FieldChoice::Rational).unwrap(),
            3
        );
    }

    #[test]
    fn regular_sequences() {
        let r = ring4();
        let rep = regular_sequence_test(
            &polys(&r, "x0,x1,x2,x3"),
            None,
            FieldChoice::default(),
            None,
        )
        .unwrap();
        assert!(rep.regular && rep.complete);
        assert_eq!(rep.actual[..2], [1, 0]);
        let rep = regular_sequence_test(
            &polys(&r, "x0,x1,x0+x1,x3"),
            None,
            FieldChoice::default(),
            None,
        )
        .unwrap();
        assert!(!rep.regular);
        assert_eq!(rep.actual[..2], [1, 1]);
        let too_many = polys(&r, "x0,x1,x2,x3,x0+x1");
        let rep = regular_sequence_test(&too_many, None, FieldChoice::default(), None).unwrap();
        assert!(!rep.regular);
        assert!(rep.reason.unwrap().contains("not a system of parameters"));
    }

    #[test]
    fn regular_sequence_over_determinantal_ring() {
        let r6 = Ring::with_vars(&["x1", "x2", "x3", "y1", "y2", "y3"], Domain::Rational);
        let q = QuotientPresentation::parse(&r6, "x1*y2-x2*y1;x1*y3-x3*y1;x2*y3-x3*y2").unwrap();
        let f = polys(&r6, "x1,x2-y1,x3-y2,y3");
        let over_b = regular_sequence_test(&f, Some(&q), FieldChoice::Rational, None).unwrap();
        assert!(over_b.regular && over_b.complete);
        assert_eq!(over_b.actual[..3], [1, 2, 0]);
        let over_a = regular_sequence_test(&f, None, FieldChoice::Rational, None).unwrap();
        assert!(over_a.regular);
        assert!(!over_a.complete);
    }

    #[test]
    fn permuting_a_regular_sequence_keeps_the_verdict() {
        let r = ring4();
        let a = regular_sequence_test(
            &polys(&r, "x0^2,x1,x2+x3,x3^3"),
            None,
            FieldChoice::default(),
            None,
        )
        .unwrap();
        let b = regular_sequence_test(
            &polys(&r, "x3^3,x2+x3,x0^2,x1"),
            None,
            FieldChoice::default(),
            None,
        )
        .unwrap();
        assert!(a.regular && b.regular);
        assert_eq!(a.actual, b.actual);
    }

    #[test]
    fn saturation_of_maximal_ideal() {
        let r = ring4();
        let vars = polys(&r, "x0,x1,x2,x3");
        assert_eq!(
            saturation_piece_dim(&vars, 0, 1, FieldChoice::default()).unwrap(),
            1
        );
        let single = polys(&r, "x1");
        for t in 0..4 {
            assert_eq!(
                saturation_piece_dim(&single, t, 2, FieldChoice::default()).unwrap(),
                ideal_piece_dim(&single, t, FieldChoice::default()).unwrap()
            );
        }
    }

    #[test]
    fn power_search() {
        let r = ring4();
        let gens = polys(&r, "x0^3");
        let target = r.parse("x0").unwrap();
        let s = power_membership_search(&target, &gens, 1..=4, FieldChoice::default()).unwrap();
        assert_eq!(s.found, Some(3));
        assert_eq!(s.tried, vec![1, 2, 3]);
        let s = power_membership_search(
            &r.parse("x1").unwrap(),
            &gens,
            1..=3,
            FieldChoice::default(),
        )
        .unwrap();
        assert_eq!(s.found, None);
    }
}
