//! Exact linear algebra on graded pieces.
//!
//! Every question about a graded map of free modules is answered one degree
//! at a time: the degree-`t` piece of `v ↦ v·M` is a scalar matrix whose rows
//! are `(source generator, monomial)` pairs and whose columns are
//! `(target generator, monomial)` pairs. Over a quotient `A/I` the monomials
//! are replaced by standard monomials, i.e. those that are not pivots of an
//! echelon form of `I_t`. Degrees are independent, so scans run on the rayon
//! pool.

mod echelon;
mod field;
mod ideals;
mod minors;
mod piece;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::FreeComplex;
use crate::constructions::GradedMatrix;
use crate::error::{Error, Result};

pub use echelon::{normalize_row, rank_of_rows, Echelon, SparseRow};
pub(crate) use field::with_field;
pub use field::{reduce_mod, Field, FieldChoice, PrimeField, RationalField};
pub use ideals::{
    ideal_piece_dim, power_membership_search, regular_sequence_test, saturation_piece_dim,
    PowerSearch, RegSeqReport,
};
pub use minors::{minor_span_check, minors, MinorSpan, SpanCheck, MINOR_CAP};
pub use piece::{QuotientPresentation, ScalarMatrix};

use piece::{FieldMatrix, PieceSpace};

fn quotient_gens(q: Option<&QuotientPresentation>) -> &[crate::polyring::Polynomial] {
    q.map_or(&[], QuotientPresentation::gens)
}

/// Degree-`t` piece of `M`, over `A` or over `A/I` when `q` is given.
pub fn expand_graded_piece<F: Field>(
    m: &GradedMatrix,
    t: i64,
    field: &F,
    q: Option<&QuotientPresentation>,
) -> Result<ScalarMatrix<F>> {
    let space = PieceSpace::new(field.clone(), m.ring().nvars(), quotient_gens(q))?;
    let fm = FieldMatrix::new(field, m)?;
    Ok(piece::expand(&space, &fm, t))
}

/// Degree-`t` piece of `M` read as a map from a free `A`-module into a free
/// `A/I`-module: rows are monomials, columns standard monomials mod `I`.
pub fn expand_into_quotient<F: Field>(
    m: &GradedMatrix,
    t: i64,
    field: &F,
    q: &QuotientPresentation,
) -> Result<ScalarMatrix<F>> {
    let nvars = m.ring().nvars();
    let src = PieceSpace::new(field.clone(), nvars, &[])?;
    let tgt = PieceSpace::new(field.clone(), nvars, q.gens())?;
    let fm = FieldMatrix::new(field, m)?;
    Ok(piece::expand_between(&src, &tgt, &fm, t))
}

pub fn rank<F: Field>(field: &F, s: &ScalarMatrix<F>) -> usize {
    rank_of_rows(field, s.ncols, &s.rows)
}

pub fn kernel_dim<F: Field>(field: &F, s: &ScalarMatrix<F>) -> usize {
    s.nrows() - rank(field, s)
}

fn check_window(window: &RangeInclusive<i64>) -> Result<()> {
    if window.is_empty() {
        return Err(Error::usage(format!(
            "empty degree window {}..{}",
            window.start(),
            window.end()
        )));
    }
    Ok(())
}

/// `[0, max generator degree + a + 2]`.
pub fn default_window(x: &FreeComplex, a: usize) -> RangeInclusive<i64> {
    let top = x
        .modules()
        .iter()
        .filter_map(|m| m.degrees.as_ref())
        .flatten()
        .copied()
        .max()
        .unwrap_or(0);
    0..=top + a as i64 + 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    /// Homological index (the rightmost module is 0).
    pub position: usize,
    pub degree: i64,
    pub kernel: usize,
    pub incoming: usize,
    pub homology: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub complex: String,
    pub field: String,
    pub quotient: bool,
    pub window: (i64, i64),
    pub length: usize,
    pub rows: Vec<HomologyRow>,
}

impl HomologyReport {
    /// Rows with nonzero homology.
    pub fn failures(&self) -> Vec<HomologyRow> {
        self.rows
            .iter()
            .copied()
            .filter(|r| r.homology != 0)
            .collect()
    }

    pub fn interior_exact(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.position < self.length)
            .all(|r| r.homology == 0)
    }

    pub fn left_injective(&self) -> bool {
        self.rows
            .iter()
            .filter(|r| r.position == self.length)
            .all(|r| r.homology == 0)
    }

    pub fn is_exact(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Homology at every position except the rightmost, degree by degree.
///
/// The leftmost position reports the kernel of the first map. A negative
/// homology dimension means the maps do not compose to zero and is an
/// integrity error.
pub fn homology_dims(
    x: &FreeComplex,
    window: RangeInclusive<i64>,
    field: FieldChoice,
    q: Option<&QuotientPresentation>,
) -> Result<HomologyReport> {
    with_field!(field, f => homology_generic(x, window, f, q))
}

fn homology_generic<F: Field>(
    x: &FreeComplex,
    window: RangeInclusive<i64>,
    field: F,
    q: Option<&QuotientPresentation>,
) -> Result<HomologyReport> {
    check_window(&window)?;
    let degrees = x
        .degrees()
        .ok_or_else(|| Error::usage(format!("{} is not graded", x.name())))?;
    let Some(first) = x.maps().first() else {
        return Err(Error::usage(format!("{} has no maps", x.name())));
    };
    let space = PieceSpace::new(field.clone(), first.ring().nvars(), quotient_gens(q))?;
    let maps = x
        .maps()
        .iter()
        .map(|m| FieldMatrix::new(&field, m))
        .collect::<Result<Vec<_>>>()?;
    let tasks: Vec<(usize, i64)> = (0..maps.len())
        .flat_map(|k| window.clone().map(move |t| (k, t)))
        .collect();
    let ranks: BTreeMap<(usize, i64), usize> = tasks
        .par_iter()
        .map(|&(k, t)| {
            let s = piece::expand(&space, &maps[k], t);
            ((k, t), rank(&field, &s))
        })
        .collect();
    let p = x.length();
    let mut rows = Vec::new();
    for t in window.clone() {
        for k in 0..maps.len() {
            let dim = space.module_dim(&degrees[k], t);
            let kernel = dim - ranks[&(k, t)];
            let incoming = if k == 0 { 0 } else { ranks[&(k - 1, t)] };
            let homology = kernel.checked_sub(incoming).ok_or_else(|| {
                Error::integrity(format!(
                    "{}: incoming rank {incoming} exceeds kernel {kernel} at position {}, degree {t}",
                    x.name(),
                    p - k
                ))
            })?;
            rows.push(HomologyRow {
                position: p - k,
                degree: t,
                kernel,
                incoming,
                homology,
            });
        }
    }
    Ok(HomologyReport {
        complex: x.name().to_string(),
        field: field.label(),
        quotient: q.is_some(),
        window: (*window.start(), *window.end()),
        length: p,
        rows,
    })
}

/// Degreewise dimensions of a graded module.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HilbertFunction {
    values: BTreeMap<i64, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertValue {
    pub degree: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertJson {
    pub values: Vec<HilbertValue>,
    pub total: usize,
}

impl HilbertFunction {
    pub fn from_values(values: impl IntoIterator<Item = (i64, usize)>) -> Self {
        HilbertFunction {
            values: values.into_iter().collect(),
        }
    }

    pub fn get(&self, t: i64) -> usize {
        self.values.get(&t).copied().unwrap_or(0)
    }

    pub fn values(&self) -> &BTreeMap<i64, usize> {
        &self.values
    }

    pub fn total(&self) -> usize {
        self.values.values().sum()
    }

    /// Degrees with nonzero value.
    pub fn support(&self) -> Vec<i64> {
        self.values
            .iter()
            .filter(|(_, v)| **v > 0)
            .map(|(t, _)| *t)
            .collect()
    }

    /// Drops zero values.
    pub fn trimmed(&self) -> HilbertFunction {
        HilbertFunction {
            values: self
                .values
                .iter()
                .filter(|(_, v)| **v > 0)
                .map(|(t, v)| (*t, *v))
                .collect(),
        }
    }

    /// `t ↦ HF(t - s)`, i.e. the function of the twist `M(-s)`.
    pub fn shifted(&self, s: i64) -> HilbertFunction {
        HilbertFunction {
            values: self.values.iter().map(|(t, v)| (t + s, *v)).collect(),
        }
    }

    pub fn to_json(&self) -> HilbertJson {
        HilbertJson {
            values: self
                .values
                .iter()
                .map(|(&degree, &dim)| HilbertValue { degree, dim })
                .collect(),
            total: self.total(),
        }
    }
}

/// Hilbert function of `Coker M` over the window.
pub fn coker_hilbert(
    m: &GradedMatrix,
    window: RangeInclusive<i64>,
    field: FieldChoice,
    q: Option<&QuotientPresentation>,
) -> Result<HilbertFunction> {
    check_window(&window)?;
    with_field!(field, f => {
        let space = PieceSpace::new(f.clone(), m.ring().nvars(), quotient_gens(q))?;
        let fm = FieldMatrix::new(&f, m)?;
        let values: Vec<(i64, usize)> = window
            .clone()
            .into_par_iter()
            .map(|t| {
                let s = piece::expand(&space, &fm, t);
                (t, space.module_dim(&fm.tgt, t) - rank(&f, &s))
            })
            .collect();
        Ok(HilbertFunction::from_values(values))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{build_complex, ComplexKind};
    use crate::constructions::{assemble, Assembled, SequenceF};
    use crate::polyring::{Domain, Ring};

    fn ring() -> Ring {
        Ring::with_vars(&["x0", "x1", "x2", "x3"], Domain::Rational)
    }

    fn seq(text: &str) -> SequenceF {
        SequenceF::parse(&ring(), text).unwrap()
    }

    fn choose(n: i64, k: i64) -> usize {
        if n < k || k < 0 {
            return 0;
        }
        (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
    }

    #[test]
    fn d_piece_in_degree_one() {
        let d = assemble(Assembled::D, 2, &seq("x0,x1,x2,x3")).unwrap();
        let d = d.shifted(-d.tgt_degrees().unwrap()[0]);
        let f = PrimeField::new(32003).unwrap();
        let s = expand_graded_piece(&d, 1, &f, None).unwrap();
        assert_eq!(s.shape(), (4, 4));
        assert_eq!(rank(&f, &s), 4);
        assert_eq!(kernel_dim(&f, &s), 0);
        let below = expand_graded_piece(&d, -1, &f, None).unwrap();
        assert_eq!(below.shape(), (0, 0));
    }

    #[test]
    fn c_piece_is_a_row() {
        let c = assemble(Assembled::C, 2, &seq("x0,x1,x2,x3")).unwrap();
        let c = c.shifted(1 - c.src_degrees().unwrap()[0]);
        let f = RationalField;
        let s = expand_graded_piece(&c, 1, &f, None).unwrap();
        assert_eq!(s.shape(), (1, 16));
        assert_eq!(s.rows[0].len(), 4);
        assert_eq!(rank(&f, &s), 1);
    }

    #[test]
    fn d_cokernel_is_the_residue_field() {
        let d = assemble(Assembled::D, 2, &seq("x0,x1,x2,x3")).unwrap();
        let d = d.shifted(-d.tgt_degrees().unwrap()[0]);
        let hf = coker_hilbert(&d, 0..=8, FieldChoice::default(), None).unwrap();
        assert_eq!(hf.get(0), 1);
        assert!((1..=8).all(|t| hf.get(t) == 0));
    }

    #[test]
    fn zero_map_cokernel_is_free() {
        let r = ring();
        let z = GradedMatrix::zeros(&r, 1, 1)
            .with_grading(vec![1], vec![0])
            .unwrap();
        let hf = coker_hilbert(&z, 0..=6, FieldChoice::Rational, None).unwrap();
        for t in 0..=6 {
            assert_eq!(hf.get(t), choose(t + 3, 3));
        }
    }

    #[test]
    fn d_cokernel_finite_length() {
        for a in 2..=5usize {
            let d = assemble(Assembled::D, a, &seq("x0,x1,x2,x3")).unwrap();
            let d = d.shifted(-d.tgt_degrees().unwrap()[0]);
            let hf = coker_hilbert(&d, 0..=a as i64 + 4, FieldChoice::default(), None).unwrap();
            assert_eq!(hf.total(), choose(a as i64 + 1, 3), "a={a}");
        }
    }

    #[test]
    fn cfull_exact_for_variables() {
        let x = build_complex(ComplexKind::CFull, 2, &seq("x0,x1,x2,x3"), 4).unwrap();
        let r = homology_dims(&x, 0..=8, FieldChoice::default(), None).unwrap();
        assert!(r.is_exact(), "{:?}", r.failures());
        assert_eq!(r.length, 4);
    }

    #[test]
    fn cfull_fails_for_repeated_sequence() {
        let x = build_complex(ComplexKind::CFull, 2, &seq("x0,x1,x0,x1"), 4).unwrap();
        let r = homology_dims(&x, 0..=8, FieldChoice::default(), None).unwrap();
        assert!(!r.interior_exact());
    }

    #[test]
    fn c1_exactness_follows_the_block_determinant() {
        // f1f3 - f2f4 = x0^2 - x1^2 is a nonzerodivisor here
        let x = build_complex(ComplexKind::C1, 2, &seq("x0,x1,x0,x1"), 2).unwrap();
        let r = homology_dims(&x, 0..=8, FieldChoice::Rational, None).unwrap();
        assert!(r.is_exact());
        // and vanishes here, although f1f4 - f2f3 = x0^2 - x1^2
        let x = build_complex(ComplexKind::C1, 2, &seq("x0,x1,x1,x0"), 2).unwrap();
        let r = homology_dims(&x, 0..=8, FieldChoice::Rational, None).unwrap();
        assert!(!r.interior_exact());
    }

    #[test]
    fn empty_window_is_rejected() {
        let x = build_complex(ComplexKind::C1, 2, &seq("x0,x1,x2,x3"), 2).unwrap();
        #[allow(clippy::reversed_empty_ranges)]
        let err = homology_dims(&x, 3..=2, FieldChoice::default(), None).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn prime_and_rational_ranks_agree() {
        let x = build_complex(ComplexKind::CFull, 3, &seq("x0,x1,x2,x3"), 5).unwrap();
        let fp = homology_dims(&x, 0..=7, FieldChoice::default(), None).unwrap();
        let q = homology_dims(&x, 0..=7, FieldChoice::Rational, None).unwrap();
        assert_eq!(fp.rows, q.rows);
    }
}
