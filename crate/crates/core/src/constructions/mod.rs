//! The block matrices built from four ring elements `f1, f2, f3, f4`.
//!
//! Index laws below are 1-based, as in the usual displays; storage is 0-based.
//! For `1 <= i <= a` (rows) and columns `1..=a+1`, with zero elsewhere:
//!
//! | block | entries |
//! |-------|---------|
//! | `A11` | `[i,i] = f1`, `[i,i+1] = -f2` |
//! | `A21` | `[i,a+1-i] = -f4`, `[i,a+2-i] = f3` |
//! | `A12` | `[i,j] = f1^(j-1) f3^(a-i) f4^(i-j)` for `j <= i` |
//! | `A22` | `[i,a+1-k] = f1^(a-i) f2^(i-1-k) f3^k` for `0 <= k <= i-1` |
//! | `B11` | `[i,j] = f1^(j-1) f2^(i-j) f3^(a-i)` for `j <= i` |
//! | `B12` | `[i,i] = -f1`, `[i,i+1] = f4` |
//! | `B21` | `[i,a+1-k] = f1^(a-i) f3^k f4^(i-1-k)` for `0 <= k <= i-1` |
//! | `B22` | `[i,a+1-i] = f2`, `[i,a+2-i] = -f3` |
//!
//! `A = [[A11, A12], [A21, A22]]`, `B = [[B11, B12], [B21, B22]]^T`,
//! `A' = [A11; A21]`, `A'' = [A12; A22]`, `B' = [B12; B22]^T`,
//! `B'' = [B11; B21]^T`. `C` is `(a-1) x 2a` with `[i,i] = f4`,
//! `[i,i+1] = -f3`, `[i,2a-i] = -f2`, `[i,2a-i+1] = f1`; `D` is the transpose
//! of the `(a-1) x 2a` matrix with `[i,i] = -f2`, `[i,i+1] = f3`,
//! `[i,2a-i] = f4`, `[i,2a-i+1] = -f1`.

mod equiv;
mod matrix;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Domain, Polynomial, Ring};

pub use equiv::{signed_perm_equiv, SignedPermWitness};
pub use matrix::{GradedMatrix, Grading, MatrixJson};

pub const GENERIC_NAMES: [&str; 4] = ["f1", "f2", "f3", "f4"];

/// The four elements together with their common degree, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceF {
    f: [Polynomial; 4],
    delta: Option<u32>,
}

impl SequenceF {
    pub fn new(f: [Polynomial; 4]) -> Result<Self> {
        for g in &f[1..] {
            f[0].check_ring(g)?;
        }
        let degrees: Vec<Option<u32>> = f.iter().map(Polynomial::homogeneous_degree).collect();
        let delta = match degrees[0] {
            Some(d) if d > 0 && degrees.iter().all(|x| *x == Some(d)) => Some(d),
            _ => None,
        };
        Ok(SequenceF { f, delta })
    }

    /// The variables of `ℤ[f1, f2, f3, f4]`.
    pub fn generic() -> Self {
        let ring = Ring::with_vars(&GENERIC_NAMES, Domain::Integer);
        Self::new([ring.var(0), ring.var(1), ring.var(2), ring.var(3)]).expect("generic sequence")
    }

    /// Parses `"p1,p2,p3,p4"` in the given ring.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let polys = crate::polyring::parse_poly_list(text, ',', ring)?;
        if polys.len() != 4 {
            return Err(Error::usage(format!(
                "expected four comma-separated polynomials, got {}",
                polys.len()
            )));
        }
        let f: [Polynomial; 4] = polys.try_into().expect("four entries");
        Self::new(f)
    }

    pub fn ring(&self) -> &Ring {
        self.f[0].ring()
    }

    /// `f_{i+1}` for `i` in `0..4`.
    pub fn f(&self, i: usize) -> &Polynomial {
        &self.f[i]
    }

    pub fn elements(&self) -> &[Polynomial; 4] {
        &self.f
    }

    pub fn delta(&self) -> Option<u32> {
        self.delta
    }

    pub fn is_generic(&self) -> bool {
        self.ring().vars().names() == GENERIC_NAMES
            && (0..4).all(|i| self.f[i].as_variable() == Some(i))
    }

    pub fn to_domain(&self, domain: Domain) -> Result<Self> {
        let f = [
            self.f[0].to_domain(domain)?,
            self.f[1].to_domain(domain)?,
            self.f[2].to_domain(domain)?,
            self.f[3].to_domain(domain)?,
        ];
        Self::new(f)
    }

    /// Images of the ring variables under `(f1,f2,f3,f4) ↦ (-f1,-f4,-f3,-f2)`.
    ///
    /// Requires each `f_i` to be plus or minus a variable, all distinct;
    /// every other variable is fixed.
    pub fn sigma_images(&self) -> Result<BTreeMap<String, Polynomial>> {
        let ring = self.ring();
        let mut images = BTreeMap::new();
        for i in 0..ring.nvars() {
            images.insert(ring.vars().name(i).to_string(), ring.var(i));
        }
        // σ(f_i) = -f_{target[i]}
        let target = [0usize, 3, 2, 1];
        let mut seen = Vec::new();
        for (i, &t) in target.iter().enumerate() {
            let (var, sign) = signed_variable(&self.f[i]).ok_or_else(|| {
                Error::usage(format!(
                    "the sign-swap substitution needs each f_i to be ± a variable; f{} = {}",
                    i + 1,
                    self.f[i]
                ))
            })?;
            if seen.contains(&var) {
                return Err(Error::usage("the f_i must be distinct variables"));
            }
            seen.push(var);
            // v = sign·f_i  ⇒  σ(v) = sign·(-f_t)
            let img = -&self.f[t];
            let img = if sign { img } else { -img };
            images.insert(ring.vars().name(var).to_string(), img);
        }
        Ok(images)
    }
}

/// `Some((var, true))` for `x`, `Some((var, false))` for `-x`.
fn signed_variable(p: &Polynomial) -> Option<(usize, bool)> {
    if let Some(v) = p.as_variable() {
        return Some((v, true));
    }
    (-p).as_variable().map(|v| (v, false))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    A11,
    A12,
    A21,
    A22,
    B11,
    B12,
    B21,
    B22,
}

impl BlockKind {
    pub const ALL: [BlockKind; 8] = [
        BlockKind::A11,
        BlockKind::A12,
        BlockKind::A21,
        BlockKind::A22,
        BlockKind::B11,
        BlockKind::B12,
        BlockKind::B21,
        BlockKind::B22,
    ];

    /// Blocks whose nonzero entries are `± f_i` (the others have degree `(a-1)δ`).
    pub fn is_linear(self) -> bool {
        matches!(
            self,
            BlockKind::A11 | BlockKind::A21 | BlockKind::B12 | BlockKind::B22
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Assembled {
    A,
    B,
    APrime,
    ADblPrime,
    BPrime,
    BDblPrime,
    C,
    D,
}

impl Assembled {
    pub const ALL: [Assembled; 8] = [
        Assembled::A,
        Assembled::B,
        Assembled::APrime,
        Assembled::ADblPrime,
        Assembled::BPrime,
        Assembled::BDblPrime,
        Assembled::C,
        Assembled::D,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Assembled::A => "A",
            Assembled::B => "B",
            Assembled::APrime => "A'",
            Assembled::ADblPrime => "A''",
            Assembled::BPrime => "B'",
            Assembled::BDblPrime => "B''",
            Assembled::C => "C",
            Assembled::D => "D",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|w| w.label() == s)
    }

    /// Shape for parameter `a`.
    pub fn shape(self, a: usize) -> (usize, usize) {
        match self {
            Assembled::A => (2 * a, 2 * (a + 1)),
            Assembled::B => (2 * (a + 1), 2 * a),
            Assembled::APrime | Assembled::ADblPrime => (2 * a, a + 1),
            Assembled::BPrime | Assembled::BDblPrime => (a + 1, 2 * a),
            Assembled::C => (a - 1, 2 * a),
            Assembled::D => (2 * a, a - 1),
        }
    }
}

fn check_param(a: usize) -> Result<()> {
    if a < 2 {
        return Err(Error::usage(format!(
            "parameter a = {a} is too small; the constructions need a >= 2"
        )));
    }
    Ok(())
}

struct Powers {
    pows: Vec<Vec<Polynomial>>,
}

impl Powers {
    fn new(seq: &SequenceF, max: usize) -> Self {
        let pows = (0..4)
            .map(|i| {
                let mut v = vec![seq.ring().one()];
                for e in 1..=max {
                    let next = &v[e - 1] * seq.f(i);
                    v.push(next);
                }
                v
            })
            .collect();
        Powers { pows }
    }

    /// `f1^e[0] f2^e[1] f3^e[2] f4^e[3]`.
    fn monomial(&self, e: [usize; 4]) -> Polynomial {
        let mut acc = self.pows[0][e[0]].clone();
        for (i, &k) in e.iter().enumerate().skip(1) {
            if k > 0 {
                acc = &acc * &self.pows[i][k];
            }
        }
        acc
    }
}

fn raw_block(kind: BlockKind, a: usize, seq: &SequenceF, pw: &Powers) -> GradedMatrix {
    let ring = seq.ring();
    let f = |i: usize| seq.f(i).clone();
    let mut m = GradedMatrix::zeros(ring, a, a + 1);
    for i in 0..a {
        let ii = i + 1;
        match kind {
            BlockKind::A11 => {
                m.set(i, i, f(0));
                m.set(i, i + 1, -f(1));
            }
            BlockKind::A21 => {
                m.set(i, a - 1 - i, -f(3));
                m.set(i, a - i, f(2));
            }
            BlockKind::B12 => {
                m.set(i, i, -f(0));
                m.set(i, i + 1, f(3));
            }
            BlockKind::B22 => {
                m.set(i, a - 1 - i, f(1));
                m.set(i, a - i, -f(2));
            }
            BlockKind::A12 => {
                for jj in 1..=ii {
                    m.set(i, jj - 1, pw.monomial([jj - 1, 0, a - ii, ii - jj]));
                }
            }
            BlockKind::B11 => {
                for jj in 1..=ii {
                    m.set(i, jj - 1, pw.monomial([jj - 1, ii - jj, a - ii, 0]));
                }
            }
            BlockKind::A22 => {
                for k in 0..ii {
                    m.set(i, a - k, pw.monomial([a - ii, ii - 1 - k, k, 0]));
                }
            }
            BlockKind::B21 => {
                for k in 0..ii {
                    m.set(i, a - k, pw.monomial([a - ii, 0, k, ii - 1 - k]));
                }
            }
        }
    }
    m
}

fn grade(m: GradedMatrix, seq: &SequenceF, src: Vec<i64>, tgt: Vec<i64>) -> Result<GradedMatrix> {
    match seq.delta() {
        Some(_) => m.with_grading(src, tgt),
        None => Ok(m),
    }
}

/// One of the eight `a × (a+1)` blocks, graded with source degree 0.
pub fn block(kind: BlockKind, a: usize, seq: &SequenceF) -> Result<GradedMatrix> {
    check_param(a)?;
    let pw = Powers::new(seq, a);
    let m = raw_block(kind, a, seq, &pw);
    let d = seq.delta().unwrap_or(0) as i64;
    let entry = if kind.is_linear() {
        d
    } else {
        (a as i64 - 1) * d
    };
    grade(m, seq, vec![0; a], vec![-entry; a + 1])
}

/// An assembled matrix, graded as a piece of the five-term complex whose
/// leftmost module sits in degree 0.
pub fn assemble(which: Assembled, a: usize, seq: &SequenceF) -> Result<GradedMatrix> {
    check_param(a)?;
    let pw = Powers::new(seq, a);
    let b = |k| raw_block(k, a, seq, &pw);
    let d = seq.delta().unwrap_or(0) as i64;
    let ai = a as i64;
    let rep = |v: i64, n: usize| vec![v; n];
    let a_tgt = [rep(-2 * d, a + 1), rep(-ai * d, a + 1)].concat();
    use BlockKind::*;
    let (m, src, tgt) = match which {
        Assembled::A => {
            let top = GradedMatrix::hstack(&b(A11), &b(A12))?;
            let bottom = GradedMatrix::hstack(&b(A21), &b(A22))?;
            let m = GradedMatrix::vstack(&top, &bottom)?;
            (m, rep(-d, 2 * a), a_tgt)
        }
        Assembled::B => {
            let top = GradedMatrix::hstack(&b(B11), &b(B12))?;
            let bottom = GradedMatrix::hstack(&b(B21), &b(B22))?;
            let m = GradedMatrix::vstack(&top, &bottom)?
                .transpose()
                .without_grading();
            (m, a_tgt, rep(-(ai + 1) * d, 2 * a))
        }
        Assembled::APrime => (
            GradedMatrix::vstack(&b(A11), &b(A21))?,
            rep(-d, 2 * a),
            rep(-2 * d, a + 1),
        ),
        Assembled::ADblPrime => (
            GradedMatrix::vstack(&b(A12), &b(A22))?,
            rep(-d, 2 * a),
            rep(-ai * d, a + 1),
        ),
        Assembled::BPrime => (
            GradedMatrix::vstack(&b(B12), &b(B22))?
                .transpose()
                .without_grading(),
            rep(-ai * d, a + 1),
            rep(-(ai + 1) * d, 2 * a),
        ),
        Assembled::BDblPrime => (
            GradedMatrix::vstack(&b(B11), &b(B21))?
                .transpose()
                .without_grading(),
            rep(-2 * d, a + 1),
            rep(-(ai + 1) * d, 2 * a),
        ),
        Assembled::C => (c_like(a, seq, false), rep(0, a - 1), rep(-d, 2 * a)),
        Assembled::D => (
            c_like(a, seq, true).transpose().without_grading(),
            rep(-(ai + 1) * d, 2 * a),
            rep(-(ai + 2) * d, a - 1),
        ),
    };
    grade(m, seq, src, tgt)
}

/// `C`, or `D^T` when `dual` is set.
fn c_like(a: usize, seq: &SequenceF, dual: bool) -> GradedMatrix {
    let f = |i: usize| seq.f(i).clone();
    let mut m = GradedMatrix::zeros(seq.ring(), a - 1, 2 * a);
    for i in 0..a - 1 {
        let (p, q, r, s) = if dual {
            (-f(1), f(2), f(3), -f(0))
        } else {
            (f(3), -f(2), -f(1), f(0))
        };
        m.set(i, i, p);
        m.set(i, i + 1, q);
        m.set(i, 2 * a - i - 2, r);
        m.set(i, 2 * a - i - 1, s);
    }
    m
}

/// Applies `(f1,f2,f3,f4) ↦ (-f1,-f4,-f3,-f2)` to a matrix over `ℤ[f1..f4]`.
pub fn apply_sigma(m: &GradedMatrix) -> Result<GradedMatrix> {
    if m.ring().vars().names() != GENERIC_NAMES {
        return Err(Error::usage(
            "apply_sigma expects entries in the generic ring Z[f1,f2,f3,f4]",
        ));
    }
    let generic = SequenceF::generic().to_domain(m.ring().domain())?;
    apply_sigma_for(m, &generic)
}

/// The same substitution expressed through a specialization whose `f_i`
/// are signed distinct variables.
pub fn apply_sigma_for(m: &GradedMatrix, seq: &SequenceF) -> Result<GradedMatrix> {
    let images = seq.sigma_images()?;
    let ring = seq.ring().clone();
    m.map_entries(|p| p.substitute(&ring, &images))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> SequenceF {
        SequenceF::generic()
    }

    fn mat(seq: &SequenceF, rows: &[&[&str]]) -> GradedMatrix {
        let r = seq.ring();
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|t| r.parse(t).unwrap()).collect())
            .collect();
        GradedMatrix::from_rows(r, rows).unwrap()
    }

    #[test]
    fn a11_at_two() {
        let m = block(BlockKind::A11, 2, &g()).unwrap();
        assert!(m.same_entries(&mat(&g(), &[&["f1", "-f2", "0"], &["0", "f1", "-f2"]])));
    }

    #[test]
    fn a12_at_two() {
        let m = block(BlockKind::A12, 2, &g()).unwrap();
        assert!(m.same_entries(&mat(&g(), &[&["f3", "0", "0"], &["f4", "f1", "0"]])));
    }

    #[test]
    fn a22_at_three() {
        let m = block(BlockKind::A22, 3, &g()).unwrap();
        let want = mat(
            &g(),
            &[
                &["0", "0", "0", "f1^2"],
                &["0", "0", "f1*f3", "f1*f2"],
                &["0", "f3^2", "f2*f3", "f2^2"],
            ],
        );
        assert!(m.same_entries(&want));
    }

    #[test]
    fn c_and_d_at_two() {
        let c = assemble(Assembled::C, 2, &g()).unwrap();
        assert!(c.same_entries(&mat(&g(), &[&["f4", "-f3", "-f2", "f1"]])));
        let d = assemble(Assembled::D, 2, &g()).unwrap();
        assert!(d.same_entries(&mat(&g(), &[&["-f2"], &["f3"], &["f4"], &["-f1"]])));
    }

    #[test]
    fn shapes_for_all_parameters() {
        for a in 2..=8 {
            for which in Assembled::ALL {
                let m = assemble(which, a, &g()).unwrap();
                assert_eq!(m.shape(), which.shape(a), "{} at a={a}", which.label());
                assert!(m.grading().is_some());
            }
            for kind in BlockKind::ALL {
                assert_eq!(block(kind, a, &g()).unwrap().shape(), (a, a + 1));
            }
        }
        assert_eq!(assemble(Assembled::A, 3, &g()).unwrap().shape(), (6, 8));
    }

    #[test]
    fn rejects_small_parameter() {
        assert!(matches!(
            block(BlockKind::A11, 1, &g()),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            assemble(Assembled::C, 1, &g()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn quadrants_of_a_are_the_blocks() {
        for a in 2..=5 {
            let m = assemble(Assembled::A, a, &g()).unwrap();
            let q = |r: std::ops::Range<usize>, c: std::ops::Range<usize>| m.submatrix(r, c);
            let blk = |k| block(k, a, &g()).unwrap();
            assert!(q(0..a, 0..a + 1).same_entries(&blk(BlockKind::A11)));
            assert!(q(0..a, a + 1..2 * a + 2).same_entries(&blk(BlockKind::A12)));
            assert!(q(a..2 * a, 0..a + 1).same_entries(&blk(BlockKind::A21)));
            assert!(q(a..2 * a, a + 1..2 * a + 2).same_entries(&blk(BlockKind::A22)));
            let bt = assemble(Assembled::B, a, &g()).unwrap().transpose();
            let qb = |r: std::ops::Range<usize>, c: std::ops::Range<usize>| bt.submatrix(r, c);
            assert!(qb(0..a, 0..a + 1).same_entries(&blk(BlockKind::B11)));
            assert!(qb(a..2 * a, a + 1..2 * a + 2).same_entries(&blk(BlockKind::B22)));
        }
    }

    #[test]
    fn non_homogeneous_sequence_is_ungraded() {
        let r = Ring::with_vars(&["x", "y"], Domain::Integer);
        let seq = SequenceF::parse(&r, "x,y,x^2,y").unwrap();
        assert_eq!(seq.delta(), None);
        let m = assemble(Assembled::A, 3, &seq).unwrap();
        assert!(m.grading().is_none());
    }

    #[test]
    fn sigma_literal_equalities() {
        let c2 = apply_sigma(&assemble(Assembled::C, 2, &g()).unwrap()).unwrap();
        assert!(c2.same_entries(&mat(&g(), &[&["-f2", "f3", "f4", "-f1"]])));
        let s = apply_sigma(&block(BlockKind::A11, 2, &g()).unwrap()).unwrap();
        assert!(s.same_entries(&mat(&g(), &[&["-f1", "f4", "0"], &["0", "-f1", "f4"]])));
        for a in 2..=8 {
            let c = apply_sigma(&assemble(Assembled::C, a, &g()).unwrap()).unwrap();
            let dt = assemble(Assembled::D, a, &g()).unwrap().transpose();
            assert!(c.same_entries(&dt), "a={a}");
            for (x, y) in [
                (BlockKind::A11, BlockKind::B12),
                (BlockKind::A21, BlockKind::B22),
            ] {
                let sx = apply_sigma(&block(x, a, &g()).unwrap()).unwrap();
                assert!(sx.same_entries(&block(y, a, &g()).unwrap()), "{x:?} a={a}");
            }
        }
    }

    #[test]
    fn sigma_is_an_involution() {
        let m = assemble(Assembled::A, 4, &g()).unwrap();
        let back = apply_sigma(&apply_sigma(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        let r = g().ring().clone();
        let f1 = GradedMatrix::from_rows(&r, vec![vec![r.var(0)]]).unwrap();
        assert_eq!(apply_sigma(&apply_sigma(&f1).unwrap()).unwrap(), f1);
    }

    #[test]
    fn sigma_needs_generic_or_variable_sequence() {
        let r = Ring::with_vars(&["x0", "x1", "x2", "x3"], Domain::Integer);
        let m = GradedMatrix::from_rows(&r, vec![vec![r.var(0)]]).unwrap();
        assert!(apply_sigma(&m).is_err());
        let bad = SequenceF::parse(&r, "x0+x1,x1,x2,x3").unwrap();
        assert!(bad.sigma_images().is_err());
        let curve = SequenceF::parse(&r, "x3,x1,x0,x2").unwrap();
        let img = curve.sigma_images().unwrap();
        assert_eq!(img["x1"], -r.var(2));
        assert_eq!(img["x2"], -r.var(1));
        assert_eq!(img["x0"], -r.var(0));
    }
}
