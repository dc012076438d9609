use super::field::Field;

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<E> = Vec<(u32, E)>;

const NO_PIVOT: u32 = u32::MAX;

/// Row echelon form built one row at a time.
///
/// Stored rows have leading coefficient one and nothing left of their pivot
/// column; they are not reduced against later pivots. Reducing a vector by a
/// left-to-right scan still clears every pivot column, which is all that
/// normal forms need.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    pivot_row: Vec<u32>,
    rows: Vec<SparseRow<F::Elem>>,
    scratch: Vec<F::Elem>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            scratch: vec![field.zero(); ncols],
            field,
            ncols,
            pivot_row: vec![NO_PIVOT; ncols],
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_PIVOT
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, row: &[(u32, F::Elem)]) -> bool {
        let Some(&(start, _)) = row.first() else {
            return false;
        };
        let mut acc = std::mem::take(&mut self.scratch);
        for (j, v) in row {
            acc[*j as usize] = v.clone();
        }
        let mut found = None;
        for c in start as usize..self.ncols {
            if self.field.is_zero(&acc[c]) {
                continue;
            }
            match self.pivot_row[c] {
                NO_PIVOT => {
                    found = Some(c);
                    break;
                }
                r => {
                    let coef = acc[c].clone();
                    self.field.axpy(&mut acc, &coef, &self.rows[r as usize]);
                }
            }
        }
        let independent = if let Some(c) = found {
            let scale = self.field.inv(&acc[c]);
            let mut new_row = Vec::new();
            for (j, slot) in acc.iter_mut().enumerate().skip(c) {
                if !self.field.is_zero(slot) {
                    let v = std::mem::replace(slot, self.field.zero());
                    new_row.push((j as u32, self.field.mul(&v, &scale)));
                }
            }
            self.pivot_row[c] = self.rows.len() as u32;
            self.rows.push(new_row);
            true
        } else {
            false
        };
        self.scratch = acc;
        independent
    }

    /// Remainder of `row` after clearing every pivot column. `scratch` must
    /// be all zeros of length `ncols` and is left that way.
    pub fn reduce_with(
        &self,
        scratch: &mut [F::Elem],
        row: &[(u32, F::Elem)],
    ) -> SparseRow<F::Elem> {
        let Some(&(start, _)) = row.first() else {
            return Vec::new();
        };
        for (j, v) in row {
            let slot = &mut scratch[*j as usize];
            *slot = self.field.add(slot, v);
        }
        let mut out = Vec::new();
        for c in start as usize..self.ncols {
            if self.field.is_zero(&scratch[c]) {
                continue;
            }
            match self.pivot_row[c] {
                NO_PIVOT => {
                    let v = std::mem::replace(&mut scratch[c], self.field.zero());
                    out.push((c as u32, v));
                }
                r => {
                    let coef = scratch[c].clone();
                    self.field.axpy(scratch, &coef, &self.rows[r as usize]);
                }
            }
        }
        out
    }

    pub fn reduce(&self, row: &[(u32, F::Elem)]) -> SparseRow<F::Elem> {
        let mut scratch = vec![self.field.zero(); self.ncols];
        self.reduce_with(&mut scratch, row)
    }

    pub fn contains(&self, row: &[(u32, F::Elem)]) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a list of sparse rows over `ncols` columns.
pub fn rank_of_rows<F: Field>(field: &F, ncols: usize, rows: &[SparseRow<F::Elem>]) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    order.sort_by_key(|&i| (rows[i][0].0, rows[i].len()));
    let mut ech = Echelon::new(field.clone(), ncols);
    let cap = rows.len().min(ncols);
    for i in order {
        ech.insert(&rows[i]);
        if ech.rank() == cap {
            break;
        }
    }
    ech.rank()
}

/// Sorts entries by column, merges duplicates and drops zeros.
pub fn normalize_row<F: Field>(field: &F, mut entries: Vec<(u32, F::Elem)>) -> SparseRow<F::Elem> {
    entries.sort_by_key(|(j, _)| *j);
    let mut out: SparseRow<F::Elem> = Vec::with_capacity(entries.len());
    for (j, v) in entries {
        match out.last_mut() {
            Some((k, w)) if *k == j => *w = field.add(w, &v),
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedla::field::{PrimeField, RationalField};
    use num_rational::BigRational;

    fn dense_rank_mod(rows: &[Vec<u64>], p: u64) -> usize {
        let mut m: Vec<Vec<u64>> = rows.to_vec();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(r) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, r);
            let inv = crate::polyring::mod_inverse(m[rank][c], p);
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c] * inv % p;
                    for k in 0..ncols {
                        m[r][k] = (m[r][k] + (p - f) * m[rank][k]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn sparse(rows: &[Vec<u64>]) -> Vec<SparseRow<u64>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j as u32, *v))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn identity_and_zero() {
        let f = PrimeField::new(32003).unwrap();
        let id: Vec<SparseRow<u64>> = (0..5).map(|i| vec![(i as u32, 1)]).collect();
        assert_eq!(rank_of_rows(&f, 5, &id), 5);
        let zero: Vec<SparseRow<u64>> = vec![Vec::new(); 3];
        assert_eq!(rank_of_rows(&f, 7, &zero), 0);
    }

    #[test]
    fn agrees_with_dense_elimination() {
        let p = 101;
        let f = PrimeField::new(p).unwrap();
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            seed >> 33
        };
        for _ in 0..60 {
            let r = (next() % 9 + 1) as usize;
            let c = (next() % 9 + 1) as usize;
            let rows: Vec<Vec<u64>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| if next() % 3 == 0 { next() % p } else { 0 })
                        .collect()
                })
                .collect();
            assert_eq!(
                rank_of_rows(&f, c, &sparse(&rows)),
                dense_rank_mod(&rows, p)
            );
        }
    }

    #[test]
    fn reduction_gives_normal_forms() {
        let f = RationalField;
        let q = |n: i64| BigRational::from_integer(n.into());
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(&[(0, q(1)), (1, q(1))]));
        assert!(!e.insert(&[(0, q(2)), (1, q(2))]));
        assert!(e.insert(&[(1, q(1)), (2, q(1))]));
        assert_eq!(e.rank(), 2);
        // (1,0,0) ≡ -(0,1,0) ≡ (0,0,1)
        assert_eq!(e.reduce(&[(0, q(1))]), vec![(2, q(1))]);
        assert!(e.contains(&[(0, q(1)), (2, q(-1))]));
    }
}
