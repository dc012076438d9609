use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::echelon::{normalize_row, Echelon, SparseRow};
use super::field::Field;
use crate::constructions::GradedMatrix;
use crate::error::{Error, Result};
use crate::polyring::{monomials_of_degree, Monomial, Polynomial, Ring};

/// Homogeneous ideal generators defining a quotient ring `B = A/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation {
    gens: Vec<Polynomial>,
}

impl QuotientPresentation {
    pub fn new(gens: Vec<Polynomial>) -> Result<Self> {
        for (k, g) in gens.iter().enumerate() {
            if let Some(first) = gens.first() {
                g.check_ring(first)?;
            }
            if !g.is_zero() && g.homogeneous_degree().is_none() {
                return Err(Error::usage(format!(
                    "quotient generator {} ({g}) is not homogeneous",
                    k + 1
                )));
            }
        }
        Ok(QuotientPresentation { gens })
    }

    /// Semicolon-separated generators.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let gens = crate::polyring::parse_poly_list(text, ';', ring)?;
        Self::new(gens)
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }
}

/// Polynomial with coefficients already moved into the field.
pub(crate) type FieldPoly<F> = Vec<(Monomial, <F as Field>::Elem)>;

pub(crate) fn to_field_poly<F: Field>(field: &F, p: &Polynomial) -> Result<FieldPoly<F>> {
    let mut out = Vec::with_capacity(p.num_terms());
    for (m, c) in p.terms() {
        let v = field.from_coeff(c)?;
        if !field.is_zero(&v) {
            out.push((m.clone(), v));
        }
    }
    Ok(out)
}

/// One degree of `A` or of `A/I`, with coordinates on the standard
/// monomials (those that are not pivots of `I_d`).
#[derive(Debug)]
pub(crate) struct Piece<F: Field> {
    pub monos: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    ideal: Option<Echelon<F>>,
    /// Standard coordinate of each monomial, or `u32::MAX` for pivots.
    std_coord: Vec<u32>,
    dim: usize,
}

impl<F: Field> Piece<F> {
    pub fn empty() -> Self {
        Piece {
            monos: Vec::new(),
            index: HashMap::new(),
            ideal: None,
            std_coord: Vec::new(),
            dim: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.as_ref().map_or(0, Echelon::rank)
    }

    pub fn col(&self, m: &Monomial) -> u32 {
        self.index[m]
    }

    /// Monomials whose classes form the basis, in coordinate order.
    pub fn standard_monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.monos
            .iter()
            .zip(&self.std_coord)
            .filter(|(_, c)| **c != u32::MAX)
            .map(|(m, _)| m)
    }

    pub fn scratch(&self, field: &F) -> Vec<F::Elem> {
        match &self.ideal {
            Some(_) => vec![field.zero(); self.monos.len()],
            None => Vec::new(),
        }
    }

    /// Normal form of a vector given on monomial columns, in standard
    /// coordinates.
    pub fn normal_form(
        &self,
        field: &F,
        scratch: &mut [F::Elem],
        raw: Vec<(u32, F::Elem)>,
    ) -> SparseRow<F::Elem> {
        match &self.ideal {
            None => normalize_row(field, raw),
            Some(ech) => {
                let raw = normalize_row(field, raw);
                ech.reduce_with(scratch, &raw)
                    .into_iter()
                    .map(|(c, v)| (self.std_coord[c as usize], v))
                    .collect()
            }
        }
    }
}

/// Lazily built pieces of `A` (or `A/I`) shared across workers.
pub(crate) struct PieceSpace<F: Field> {
    pub field: F,
    nvars: usize,
    ideal: Vec<(u32, FieldPoly<F>)>,
    cache: Mutex<HashMap<u32, Arc<Piece<F>>>>,
}

impl<F: Field> PieceSpace<F> {
    pub fn new(field: F, nvars: usize, ideal: &[Polynomial]) -> Result<Self> {
        let mut gens = Vec::new();
        for g in ideal {
            if g.ring().nvars() != nvars {
                return Err(Error::usage("ideal generators live in a different ring"));
            }
            if g.is_zero() {
                continue;
            }
            let d = g
                .homogeneous_degree()
                .ok_or_else(|| Error::usage(format!("{g} is not homogeneous")))?;
            gens.push((d, to_field_poly(&field, g)?));
        }
        Ok(PieceSpace {
            field,
            nvars,
            ideal: gens,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn piece(&self, d: i64) -> Arc<Piece<F>> {
        if d < 0 {
            return Arc::new(Piece::empty());
        }
        let d = d as u32;
        if let Some(p) = self.cache.lock().expect("piece cache").get(&d) {
            return p.clone();
        }
        let built = Arc::new(self.build(d));
        self.cache
            .lock()
            .expect("piece cache")
            .entry(d)
            .or_insert(built)
            .clone()
    }

    fn build(&self, d: u32) -> Piece<F> {
        let monos = monomials_of_degree(self.nvars, d);
        let index: HashMap<Monomial, u32> = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        if self.ideal.is_empty() {
            return Piece {
                std_coord: (0..monos.len() as u32).collect(),
                dim: monos.len(),
                monos,
                index,
                ideal: None,
            };
        }
        let mut ech = Echelon::new(self.field.clone(), monos.len());
        for (e, g) in &self.ideal {
            if *e > d {
                continue;
            }
            for m in monomials_of_degree(self.nvars, d - e) {
                let raw = g
                    .iter()
                    .map(|(mu, c)| (index[&m.mul(mu)], c.clone()))
                    .collect();
                ech.insert(&normalize_row(&self.field, raw));
            }
        }
        let mut next = 0;
        let std_coord = (0..monos.len())
            .map(|c| {
                if ech.is_pivot(c) {
                    u32::MAX
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        Piece {
            monos,
            index,
            ideal: Some(ech),
            std_coord,
            dim: next as usize,
        }
    }

    /// Dimension of a graded free module `⊕ A(-d_i)` (or over `A/I`) at `t`.
    pub fn module_dim(&self, degrees: &[i64], t: i64) -> usize {
        degrees.iter().map(|d| self.piece(t - d).dim()).sum()
    }
}

/// A graded matrix with entries converted into the field.
pub(crate) struct FieldMatrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub src: Vec<i64>,
    pub tgt: Vec<i64>,
    entries: Vec<FieldPoly<F>>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn new(field: &F, m: &GradedMatrix) -> Result<Self> {
        let (Some(src), Some(tgt)) = (m.src_degrees(), m.tgt_degrees()) else {
            return Err(Error::usage("graded pieces need a graded matrix"));
        };
        let mut entries = Vec::with_capacity(m.rows() * m.cols());
        for (i, j, p) in m.entries() {
            if !p.is_zero() && p.homogeneous_degree().map(i64::from) != Some(src[i] - tgt[j]) {
                return Err(Error::integrity(format!(
                    "entry ({i},{j}) = {p} is not homogeneous of degree {}",
                    src[i] - tgt[j]
                )));
            }
            entries.push(to_field_poly(field, p)?);
        }
        Ok(FieldMatrix {
            rows: m.rows(),
            cols: m.cols(),
            src: src.to_vec(),
            tgt: tgt.to_vec(),
            entries,
        })
    }

    fn entry(&self, i: usize, j: usize) -> &FieldPoly<F> {
        &self.entries[i * self.cols + j]
    }
}

/// Degree-`t` piece of `v ↦ v·M` as a scalar matrix.
#[derive(Debug, Clone)]
pub struct ScalarMatrix<F: Field> {
    pub ncols: usize,
    pub rows: Vec<SparseRow<F::Elem>>,
    /// `(source generator, monomial)` for each row.
    pub row_index: Vec<(usize, Monomial)>,
    /// `(target generator, monomial)` for each column.
    pub col_index: Vec<(usize, Monomial)>,
}

impl<F: Field> ScalarMatrix<F> {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.ncols)
    }

    /// Dense copy, mainly for tests and small displays.
    pub fn to_dense(&self, field: &F) -> Vec<Vec<F::Elem>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![field.zero(); self.ncols];
                for (j, v) in r {
                    d[*j as usize] = v.clone();
                }
                d
            })
            .collect()
    }
}

pub(crate) fn expand<F: Field>(
    space: &PieceSpace<F>,
    m: &FieldMatrix<F>,
    t: i64,
) -> ScalarMatrix<F> {
    expand_between(space, space, m, t)
}

/// Source pieces from `src_space`, target pieces from `tgt_space`.
pub(crate) fn expand_between<F: Field>(
    src_space: &PieceSpace<F>,
    tgt_space: &PieceSpace<F>,
    m: &FieldMatrix<F>,
    t: i64,
) -> ScalarMatrix<F> {
    let field = &tgt_space.field;
    let tgt_pieces: Vec<Arc<Piece<F>>> = m.tgt.iter().map(|d| tgt_space.piece(t - d)).collect();
    let mut offsets = Vec::with_capacity(m.cols);
    let mut col_index = Vec::new();
    let mut ncols = 0usize;
    for (j, p) in tgt_pieces.iter().enumerate() {
        offsets.push(ncols as u32);
        ncols += p.dim();
        col_index.extend(p.standard_monomials().map(|mu| (j, mu.clone())));
    }
    let mut scratches: Vec<Vec<F::Elem>> = tgt_pieces.iter().map(|p| p.scratch(field)).collect();
    let mut rows = Vec::new();
    let mut row_index = Vec::new();
    for i in 0..m.rows {
        let src_piece = src_space.piece(t - m.src[i]);
        for mono in src_piece.standard_monomials() {
            let mut row = Vec::new();
            for j in 0..m.cols {
                let entry = m.entry(i, j);
                if entry.is_empty() || tgt_pieces[j].dim() == 0 {
                    continue;
                }
                let tp = &tgt_pieces[j];
                let raw = entry
                    .iter()
                    .map(|(mu, c)| (tp.col(&mono.mul(mu)), c.clone()))
                    .collect();
                let nf = tp.normal_form(field, &mut scratches[j], raw);
                row.extend(nf.into_iter().map(|(c, v)| (c + offsets[j], v)));
            }
            rows.push(row);
            row_index.push((i, mono.clone()));
        }
    }
    ScalarMatrix {
        ncols,
        rows,
        row_index,
        col_index,
    }
}
