//! Graded free complexes assembled from the block matrices.
//!
//! Maps follow the row-vector convention: map `k` sends module `k` to module
//! `k + 1` by `v ↦ v·M`. Homological indices count from the right, so the
//! last module is `F_0` and the leftmost is `F_p`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{assemble, Assembled, GradedMatrix, MatrixJson, SequenceF};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeModule {
    pub rank: usize,
    /// Generator degrees (`A(-j)` has its generator in degree `j`).
    pub degrees: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComplex {
    name: String,
    modules: Vec<FreeModule>,
    maps: Vec<GradedMatrix>,
    map_names: Vec<String>,
}

impl FreeComplex {
    /// Builds a complex from its maps, checking that shapes and degrees chain
    /// and that every consecutive composition vanishes.
    pub fn from_maps(name: &str, maps: Vec<(String, GradedMatrix)>) -> Result<Self> {
        let x = Self::from_maps_unchecked(name, maps)?;
        for v in compose_check(&x).products {
            if !v.zero {
                return Err(Error::integrity(format!(
                    "{}: product {}·{} is nonzero at {:?}",
                    x.name, v.left, v.right, v.first_nonzero
                )));
            }
        }
        Ok(x)
    }

    /// Like [`FreeComplex::from_maps`] without the composition check; for
    /// fault injection and for inspecting candidate complexes.
    pub fn from_maps_unchecked(name: &str, maps: Vec<(String, GradedMatrix)>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::usage(
                "a complex built from maps needs at least one map",
            ));
        }
        for w in maps.windows(2) {
            let (ln, l) = &w[0];
            let (rn, r) = &w[1];
            if l.cols() != r.rows() {
                return Err(Error::usage(format!(
                    "{ln} is {}x{} but {rn} is {}x{}",
                    l.rows(),
                    l.cols(),
                    r.rows(),
                    r.cols()
                )));
            }
            if let (Some(t), Some(s)) = (l.tgt_degrees(), r.src_degrees()) {
                if t != s {
                    return Err(Error::integrity(format!(
                        "target degrees of {ln} differ from source degrees of {rn}"
                    )));
                }
            }
        }
        let graded = maps.iter().all(|(_, m)| m.grading().is_some());
        let mut modules: Vec<FreeModule> = maps
            .iter()
            .map(|(_, m)| FreeModule {
                rank: m.rows(),
                degrees: graded.then(|| m.src_degrees().expect("graded").to_vec()),
            })
            .collect();
        let last = &maps.last().expect("nonempty").1;
        modules.push(FreeModule {
            rank: last.cols(),
            degrees: graded.then(|| last.tgt_degrees().expect("graded").to_vec()),
        });
        let (map_names, maps) = maps
            .into_iter()
            .map(|(n, m)| {
                if graded {
                    (n, m)
                } else {
                    (n, m.without_grading())
                }
            })
            .unzip();
        Ok(FreeComplex {
            name: name.to_string(),
            modules,
            maps,
            map_names,
        })
    }

    /// A complex with no maps: zero or one module.
    pub fn from_module(name: &str, module: Option<FreeModule>) -> Self {
        FreeComplex {
            name: name.to_string(),
            modules: module.into_iter().collect(),
            maps: Vec::new(),
            map_names: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    pub fn map_names(&self) -> &[String] {
        &self.map_names
    }

    /// Length `p`: the homological index of the leftmost module.
    pub fn length(&self) -> usize {
        self.modules.len().saturating_sub(1)
    }

    pub fn is_graded(&self) -> bool {
        self.modules.iter().all(|m| m.degrees.is_some())
    }

    /// Homological index of module `k` (counted from the left).
    pub fn homological_index(&self, k: usize) -> usize {
        self.length() - k
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank).collect()
    }

    /// Generator degrees per module, left to right.
    pub fn degrees(&self) -> Option<Vec<Vec<i64>>> {
        self.modules.iter().map(|m| m.degrees.clone()).collect()
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            name: self.name.clone(),
            modules: self
                .modules
                .iter()
                .map(|m| ModuleJson {
                    rank: m.rank,
                    degrees: m.degrees.clone(),
                    twists: m.degrees.as_ref().map(|d| d.iter().map(|x| -x).collect()),
                })
                .collect(),
            map_names: self.map_names.clone(),
            maps: self.maps.iter().map(GradedMatrix::to_json).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub rank: usize,
    pub degrees: Option<Vec<i64>>,
    pub twists: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexJson {
    pub name: String,
    pub modules: Vec<ModuleJson>,
    pub map_names: Vec<String>,
    pub maps: Vec<MatrixJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexKind {
    C1,
    C2,
    D1,
    D2,
    CFull,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 5] = [
        ComplexKind::C1,
        ComplexKind::C2,
        ComplexKind::D1,
        ComplexKind::D2,
        ComplexKind::CFull,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ComplexKind::C1 => "C1",
            ComplexKind::C2 => "C2",
            ComplexKind::D1 => "D1",
            ComplexKind::D2 => "D2",
            ComplexKind::CFull => "CFULL",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.label().eq_ignore_ascii_case(s))
    }

    pub fn matrices(self) -> &'static [Assembled] {
        use Assembled::*;
        match self {
            ComplexKind::C1 => &[C, APrime],
            ComplexKind::D1 => &[C, ADblPrime],
            ComplexKind::C2 => &[BPrime, D],
            ComplexKind::D2 => &[BDblPrime, D],
            ComplexKind::CFull => &[C, A, B, D],
        }
    }
}

/// One of the five complexes, with its leftmost module in degree `base_degree`.
///
/// The sequence must be homogeneous for the result to be graded; otherwise
/// the complex carries no degree data and `base_degree` is ignored.
pub fn build_complex(
    kind: ComplexKind,
    a: usize,
    seq: &SequenceF,
    base_degree: i64,
) -> Result<FreeComplex> {
    let mats = kind
        .matrices()
        .iter()
        .map(|&w| Ok((w.label().to_string(), assemble(w, a, seq)?)))
        .collect::<Result<Vec<_>>>()?;
    let left = mats[0].1.src_degrees().map_or(0, |d| d[0]);
    let shift = base_degree - left;
    let mats = mats
        .into_iter()
        .map(|(n, m)| (n, m.shifted(shift)))
        .collect();
    FreeComplex::from_maps(kind.label(), mats)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductVerdict {
    pub left: String,
    pub right: String,
    pub shape: (usize, usize),
    pub zero: bool,
    /// Position and value of the first nonzero entry, if any.
    pub first_nonzero: Option<(usize, usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub complex: String,
    pub products: Vec<ProductVerdict>,
}

impl CompositionReport {
    pub fn all_zero(&self) -> bool {
        self.products.iter().all(|p| p.zero)
    }
}

/// Exact symbolic product `left · right` with a zero verdict.
pub fn check_product(
    left_name: &str,
    left: &GradedMatrix,
    right_name: &str,
    right: &GradedMatrix,
) -> Result<ProductVerdict> {
    let prod = left.mul(right)?;
    let first_nonzero = prod
        .first_nonzero()
        .map(|(i, j)| (i, j, prod.get(i, j).to_string()));
    Ok(ProductVerdict {
        left: left_name.to_string(),
        right: right_name.to_string(),
        shape: prod.shape(),
        zero: first_nonzero.is_none(),
        first_nonzero,
    })
}

/// Products of all consecutive maps, computed in parallel, in map order.
pub fn compose_check(x: &FreeComplex) -> CompositionReport {
    let products = (0..x.maps.len().saturating_sub(1))
        .into_par_iter()
        .map(|k| {
            check_product(
                &x.map_names[k],
                &x.maps[k],
                &x.map_names[k + 1],
                &x.maps[k + 1],
            )
            .expect("shapes validated at construction")
        })
        .collect();
    CompositionReport {
        complex: x.name.clone(),
        products,
    }
}

/// `Hom(X, A)` twisted by `t`: modules reversed, maps transposed, generator
/// degrees `d ↦ t - d`.
pub fn dualize(x: &FreeComplex, t: i64) -> FreeComplex {
    let name = match x.name.strip_suffix("^dual") {
        Some(base) => base.to_string(),
        None => format!("{}^dual", x.name),
    };
    let modules = x
        .modules
        .iter()
        .rev()
        .map(|m| FreeModule {
            rank: m.rank,
            degrees: m
                .degrees
                .as_ref()
                .map(|d| d.iter().map(|g| t - g).collect()),
        })
        .collect();
    let maps = x
        .maps
        .iter()
        .rev()
        .map(|m| m.transpose().shifted(t))
        .collect();
    let map_names = x
        .map_names
        .iter()
        .rev()
        .map(|n| match n.strip_suffix("^T") {
            Some(base) => base.to_string(),
            None => format!("{n}^T"),
        })
        .collect();
    FreeComplex {
        name,
        modules,
        maps,
        map_names,
    }
}

/// Betti numbers `β_{i,j}`: rank of `A(-j)` in `F_i`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, i64), usize)>) -> Self {
        let mut t = BettiTable::default();
        for ((i, j), b) in entries {
            if b > 0 {
                *t.entries.entry((i, j)).or_default() += b;
            }
        }
        t
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), usize> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological index present.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, b)| b)
            .sum()
    }

    /// Distinct generator degrees at index `i`, ascending.
    pub fn degrees_at(&self, i: usize) -> Vec<i64> {
        self.entries
            .keys()
            .filter(|(k, _)| *k == i)
            .map(|(_, j)| *j)
            .collect()
    }

    /// `β_{i,j} ↦ β_{p-i, t-j}`.
    pub fn reflect(&self, p: usize, t: i64) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &b)| ((p - i, t - j), b))
                .collect(),
        }
    }

    /// Rows `j - i`, columns `i`; dots for zeros.
    pub fn to_grid(&self) -> String {
        let Some(p) = self.length() else {
            return String::from("(empty)\n");
        };
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
            r.sort_unstable();
            r.dedup();
            (r[0]..=r[r.len() - 1]).collect()
        };
        let cell = |i: usize, r: i64| match self.get(i, r + i as i64) {
            0 => ".".to_string(),
            b => b.to_string(),
        };
        let widths: Vec<usize> = (0..=p)
            .map(|i| {
                let mut w = i.to_string().len().max(self.total(i).to_string().len());
                for &r in &rows {
                    w = w.max(cell(i, r).len());
                }
                w
            })
            .collect();
        let label_w = rows
            .iter()
            .map(|r| format!("{r}:").len())
            .chain(std::iter::once("total:".len()))
            .max()
            .unwrap_or(6);
        let mut out = String::new();
        let _ = write!(out, "{:>label_w$}", "");
        for i in 0..=p {
            let _ = write!(out, " {:>w$}", i, w = widths[i]);
        }
        out.push('\n');
        let _ = write!(out, "{:>label_w$}", "total:");
        for i in 0..=p {
            let _ = write!(out, " {:>w$}", self.total(i), w = widths[i]);
        }
        out.push('\n');
        for &r in &rows {
            let _ = write!(out, "{:>label_w$}", format!("{r}:"));
            for i in 0..=p {
                let _ = write!(out, " {:>w$}", cell(i, r), w = widths[i]);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .map(|(&(i, j), &beta)| BettiEntry { i, j, beta })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub beta: usize,
}

pub fn betti_table(x: &FreeComplex) -> Result<BettiTable> {
    let mut entries = Vec::new();
    for (k, m) in x.modules.iter().enumerate() {
        let degrees = m
            .degrees
            .as_ref()
            .ok_or_else(|| Error::usage(format!("{} is not graded", x.name)))?;
        let i = x.homological_index(k);
        entries.extend(degrees.iter().map(|&j| ((i, j), 1)));
    }
    Ok(BettiTable::from_entries(entries))
}

/// No entry of any map has a nonzero constant term.
pub fn minimality_check(x: &FreeComplex) -> bool {
    x.maps.iter().all(|m| {
        m.entries().all(|(_, _, p)| {
            let c = p.constant_term();
            p.domain().is_zero(&c)
        })
    })
}

/// Castelnuovo–Mumford regularity read off a graded complex: `max(j - i)`.
pub fn regularity(b: &BettiTable) -> Option<i64> {
    b.entries.keys().map(|&(i, j)| j - i as i64).max()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalLinearProfile {
    pub d: i64,
    pub e: i64,
    pub s: usize,
    pub gap: i64,
}

/// Detects a locally linear shape: `F_i` generated in degree `d + i` for
/// `i < s`, in degrees `d + s` and `e + s` at `i = s`, and in `e + i` for
/// `i > s`, with `d < e` and `1 < s < p - 1`. Fully linear tables give `None`.
pub fn locally_linear_classify(b: &BettiTable) -> Option<LocalLinearProfile> {
    let p = b.length()?;
    let per_index: Vec<Vec<i64>> = (0..=p).map(|i| b.degrees_at(i)).collect();
    if per_index.iter().any(Vec::is_empty) {
        return None;
    }
    let split: Vec<usize> = (0..=p).filter(|&i| per_index[i].len() != 1).collect();
    let [s] = split[..] else { return None };
    if per_index[s].len() != 2 || !(1 < s && s + 1 < p) {
        return None;
    }
    let d = per_index[s][0] - s as i64;
    let e = per_index[s][1] - s as i64;
    let aligned = (0..s).all(|i| per_index[i] == [d + i as i64])
        && (s + 1..=p).all(|i| per_index[i] == [e + i as i64]);
    (aligned && d < e).then_some(LocalLinearProfile {
        d,
        e,
        s,
        gap: e - d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> SequenceF {
        SequenceF::generic()
    }

    #[test]
    fn cfull_shapes_at_two() {
        let x = build_complex(ComplexKind::CFull, 2, &g(), 0).unwrap();
        let shapes: Vec<_> = x.maps().iter().map(GradedMatrix::shape).collect();
        assert_eq!(shapes, vec![(1, 4), (4, 6), (6, 4), (4, 1)]);
        assert_eq!(x.ranks(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn c1_and_c2_shapes() {
        let c1 = build_complex(ComplexKind::C1, 3, &g(), 0).unwrap();
        let shapes: Vec<_> = c1.maps().iter().map(GradedMatrix::shape).collect();
        assert_eq!(shapes, vec![(2, 6), (6, 4)]);
        let c2 = build_complex(ComplexKind::C2, 2, &g(), 0).unwrap();
        let shapes: Vec<_> = c2.maps().iter().map(GradedMatrix::shape).collect();
        assert_eq!(shapes, vec![(3, 4), (4, 1)]);
    }

    #[test]
    fn cfull_degree_profile() {
        let a = 4;
        let x = build_complex(ComplexKind::CFull, a, &g(), 10).unwrap();
        let degs = x.degrees().unwrap();
        assert_eq!(degs[0], vec![10; a - 1]);
        assert_eq!(degs[1], vec![9; 2 * a]);
        let mid = [vec![8; a + 1], vec![10 - 1 - (a as i64 - 1); a + 1]].concat();
        assert_eq!(degs[2], mid);
        assert_eq!(degs[3], vec![10 - a as i64 - 1; 2 * a]);
        assert_eq!(degs[4], vec![10 - a as i64 - 2; a - 1]);
    }

    #[test]
    fn every_built_complex_composes_to_zero() {
        for a in 2..=6 {
            for kind in ComplexKind::ALL {
                let x = build_complex(kind, a, &g(), 0).unwrap();
                assert!(compose_check(&x).all_zero(), "{} a={a}", kind.label());
            }
        }
    }

    #[test]
    fn injected_fault_is_named() {
        let seq = g();
        let c = assemble(Assembled::C, 2, &seq).unwrap();
        let mut a = assemble(Assembled::A, 2, &seq).unwrap();
        let flipped = -a.get(1, 3);
        a.set(1, 3, flipped);
        let err = FreeComplex::from_maps(
            "bad",
            vec![("C".into(), c.clone()), ("A".into(), a.clone())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Integrity(ref m) if m.contains("C·A")));
        let x = FreeComplex::from_maps_unchecked("bad", vec![("C".into(), c), ("A".into(), a)])
            .unwrap();
        let report = compose_check(&x);
        assert!(!report.all_zero());
        let v = &report.products[0];
        assert_eq!((v.left.as_str(), v.right.as_str()), ("C", "A"));
        assert!(v.first_nonzero.is_some());
    }

    #[test]
    fn dualize_is_an_involution() {
        for kind in ComplexKind::ALL {
            let x = build_complex(kind, 3, &g(), 2).unwrap();
            assert_eq!(dualize(&dualize(&x, 0), 0), x);
            assert_eq!(dualize(&dualize(&x, 5), 5), x);
        }
    }

    #[test]
    fn dual_of_c1_has_c2_shapes() {
        for a in 2..=5 {
            let c1 = build_complex(ComplexKind::C1, a, &g(), 0).unwrap();
            let c2 = build_complex(ComplexKind::C2, a, &g(), 0).unwrap();
            let d = dualize(&c1, 0);
            let shapes =
                |x: &FreeComplex| x.maps().iter().map(GradedMatrix::shape).collect::<Vec<_>>();
            assert_eq!(shapes(&d), shapes(&c2));
            assert_eq!(d.map_names(), ["A'^T", "C^T"]);
            let full = build_complex(ComplexKind::CFull, a, &g(), 0).unwrap();
            assert_eq!(shapes(&dualize(&full, 0)), shapes(&full));
        }
    }

    #[test]
    fn betti_of_dual_is_reflected() {
        let x = build_complex(ComplexKind::CFull, 3, &g(), 7).unwrap();
        let t = 4;
        let b = betti_table(&x).unwrap();
        let bd = betti_table(&dualize(&x, t)).unwrap();
        assert_eq!(bd, b.reflect(x.length(), t));
    }

    #[test]
    fn c1_betti_is_linear() {
        let a = 3;
        let x = build_complex(ComplexKind::C1, a, &g(), 0).unwrap();
        let b = betti_table(&x).unwrap();
        assert_eq!(b.get(2, 0), a - 1);
        assert_eq!(b.get(1, -1), 2 * a);
        assert_eq!(b.get(0, -2), a + 1);
        assert_eq!(b.entries().len(), 3);
        assert!(locally_linear_classify(&b).is_none());
    }

    #[test]
    fn empty_complex_has_empty_table() {
        let x = FreeComplex::from_module("zero", None);
        assert!(betti_table(&x).unwrap().is_empty());
        assert_eq!(betti_table(&x).unwrap().to_grid(), "(empty)\n");
    }

    #[test]
    fn minimality() {
        let x = build_complex(ComplexKind::CFull, 3, &g(), 0).unwrap();
        assert!(minimality_check(&x));
        let r = g().ring().clone();
        let unit = GradedMatrix::from_rows(&r, vec![vec![r.one()]]).unwrap();
        let y = FreeComplex::from_maps("unit", vec![("U".into(), unit)]).unwrap();
        assert!(!minimality_check(&y));
        let zero = GradedMatrix::zeros(&r, 2, 3);
        let z = FreeComplex::from_maps("zero", vec![("Z".into(), zero)]).unwrap();
        assert!(minimality_check(&z));
    }

    fn table(rows: &[(usize, i64, usize)]) -> BettiTable {
        BettiTable::from_entries(rows.iter().map(|&(i, j, b)| ((i, j), b)))
    }

    #[test]
    fn classify_split_tables() {
        let hr41 = table(&[
            (0, 1, 2),
            (1, 2, 6),
            (2, 3, 4),
            (2, 4, 4),
            (3, 5, 6),
            (4, 6, 2),
        ]);
        let p = locally_linear_classify(&hr41).unwrap();
        assert_eq!(
            p,
            LocalLinearProfile {
                d: 1,
                e: 2,
                s: 2,
                gap: 1
            }
        );
        // (a, b) = (9, 2): degrees b, b+1, {b+2, a}, a+1, a+2
        let hr92 = table(&[
            (0, 2, 6),
            (1, 3, 14),
            (2, 4, 8),
            (2, 9, 8),
            (3, 10, 14),
            (4, 11, 6),
        ]);
        let p = locally_linear_classify(&hr92).unwrap();
        assert_eq!((p.d, p.e, p.s, p.gap), (2, 7, 2, 5));
        let linear = table(&[(0, 0, 1), (1, 1, 4), (2, 2, 6), (3, 3, 4), (4, 4, 1)]);
        assert!(locally_linear_classify(&linear).is_none());
        let misaligned = table(&[
            (0, 1, 2),
            (1, 3, 6),
            (2, 3, 4),
            (2, 4, 4),
            (3, 5, 6),
            (4, 6, 2),
        ]);
        assert!(locally_linear_classify(&misaligned).is_none());
    }

    #[test]
    fn regularity_readoff() {
        let m = table(&[(0, 4, 4), (1, 5, 6), (2, 6, 2)]);
        assert_eq!(regularity(&m), Some(4));
        let single = table(&[(0, 3, 1)]);
        assert_eq!(regularity(&single), Some(3));
    }

    #[test]
    fn grid_rendering() {
        let hr41 = table(&[
            (0, 1, 2),
            (1, 2, 6),
            (2, 3, 4),
            (2, 4, 4),
            (3, 5, 6),
            (4, 6, 2),
        ]);
        let expected = "       0 1 2 3 4\ntotal: 2 6 8 6 2\n    1: 2 6 4 . .\n    2: . . 4 6 2\n";
        assert_eq!(hr41.to_grid(), expected);
    }
}
