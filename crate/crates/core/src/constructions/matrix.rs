use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Ring};

/// Generator degrees of the source (one per row) and target (one per column).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub src: Vec<i64>,
    pub tgt: Vec<i64>,
}

/// Polynomial matrix read as a map of free modules `v ↦ v·M`: the source has
/// one generator per row, the target one per column.
///
/// When graded, entry `(i, j)` is zero or homogeneous of degree
/// `src[i] - tgt[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    grading: Option<Grading>,
}

impl GradedMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        GradedMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
            grading: None,
        }
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(ring, nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::usage("ragged matrix rows"));
            }
            for (j, p) in row.into_iter().enumerate() {
                p.check_ring(&m.entries[0])?;
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    pub fn grading(&self) -> Option<&Grading> {
        self.grading.as_ref()
    }

    pub fn src_degrees(&self) -> Option<&[i64]> {
        self.grading.as_ref().map(|g| g.src.as_slice())
    }

    pub fn tgt_degrees(&self) -> Option<&[i64]> {
        self.grading.as_ref().map(|g| g.tgt.as_slice())
    }

    /// Attaches generator degrees after checking every entry against them.
    pub fn with_grading(mut self, src: Vec<i64>, tgt: Vec<i64>) -> Result<Self> {
        if src.len() != self.rows || tgt.len() != self.cols {
            return Err(Error::usage(format!(
                "grading of length {}x{} for a {}x{} matrix",
                src.len(),
                tgt.len(),
                self.rows,
                self.cols
            )));
        }
        let grading = Grading { src, tgt };
        check_homogeneous(&self, &grading)?;
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn without_grading(mut self) -> Self {
        self.grading = None;
        self
    }

    /// Shifts every generator degree by `shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        let mut out = self.clone();
        if let Some(g) = out.grading.as_mut() {
            g.src.iter_mut().for_each(|d| *d += shift);
            g.tgt.iter_mut().for_each(|d| *d += shift);
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for (i, j, p) in self.entries() {
            t.set(j, i, p.clone());
        }
        // Hom(-, A) negates degrees; the caller picks the shift.
        t.grading = self.grading.as_ref().map(|g| Grading {
            src: g.tgt.iter().map(|d| -d).collect(),
            tgt: g.src.iter().map(|d| -d).collect(),
        });
        t
    }

    pub fn mul(&self, rhs: &GradedMatrix) -> Result<GradedMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.ring != rhs.ring {
            return Err(Error::usage("matrices over different rings"));
        }
        let mut out = Self::zeros(&self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        if let (Some(l), Some(r)) = (&self.grading, &rhs.grading) {
            if l.tgt == r.src {
                out.grading = Some(Grading {
                    src: l.src.clone(),
                    tgt: r.tgt.clone(),
                });
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries()
            .find(|(_, _, p)| !p.is_zero())
            .map(|(i, j, _)| (i, j))
    }

    pub fn map_entries(
        &self,
        mut f: impl FnMut(&Polynomial) -> Result<Polynomial>,
    ) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(&mut f)
            .collect::<Result<Vec<_>>>()?;
        let ring = entries
            .first()
            .map_or_else(|| self.ring.clone(), |p| p.ring().clone());
        Ok(GradedMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries,
            grading: self.grading.clone(),
        })
    }

    /// Rows of `top` followed by rows of `bottom`.
    pub fn vstack(top: &GradedMatrix, bottom: &GradedMatrix) -> Result<GradedMatrix> {
        if top.cols != bottom.cols {
            return Err(Error::usage("vstack: column counts differ"));
        }
        let mut entries = top.entries.clone();
        entries.extend(bottom.entries.iter().cloned());
        Ok(GradedMatrix {
            ring: top.ring.clone(),
            rows: top.rows + bottom.rows,
            cols: top.cols,
            entries,
            grading: None,
        })
    }

    /// Columns of `left` followed by columns of `right`.
    pub fn hstack(left: &GradedMatrix, right: &GradedMatrix) -> Result<GradedMatrix> {
        if left.rows != right.rows {
            return Err(Error::usage("hstack: row counts differ"));
        }
        let mut out = Self::zeros(&left.ring, left.rows, left.cols + right.cols);
        for i in 0..left.rows {
            for j in 0..left.cols {
                out.set(i, j, left.get(i, j).clone());
            }
            for j in 0..right.cols {
                out.set(i, left.cols + j, right.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Submatrix on a row range and a column range.
    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> GradedMatrix {
        let mut out = Self::zeros(&self.ring, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out.grading = self.grading.as_ref().map(|g| Grading {
            src: g.src[rows].to_vec(),
            tgt: g.tgt[cols].to_vec(),
        });
        out
    }

    /// Equality of entries only, ignoring grading metadata.
    pub fn same_entries(&self, other: &GradedMatrix) -> bool {
        self.shape() == other.shape() && self.entries == other.entries
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            src_degrees: self.src_degrees().map(<[i64]>::to_vec),
            tgt_degrees: self.tgt_degrees().map(<[i64]>::to_vec),
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

fn check_homogeneous(m: &GradedMatrix, g: &Grading) -> Result<()> {
    for (i, j, p) in m.entries() {
        if p.is_zero() {
            continue;
        }
        let want = g.src[i] - g.tgt[j];
        match p.homogeneous_degree() {
            Some(d) if d as i64 == want => {}
            Some(d) => {
                return Err(Error::integrity(format!(
                    "entry ({i},{j}) = {p} has degree {d}, grading requires {want}"
                )))
            }
            None => {
                return Err(Error::integrity(format!(
                    "entry ({i},{j}) = {p} is not homogeneous"
                )))
            }
        }
    }
    Ok(())
}

/// Serialized form of a matrix; entries in canonical polynomial text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub src_degrees: Option<Vec<i64>>,
    pub tgt_degrees: Option<Vec<i64>>,
    pub entries: Vec<Vec<String>>,
}
