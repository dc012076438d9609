use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::GradedMatrix;

/// Witness for `N[i][j] = row_signs[i] * M[row_perm[i]][col_perm[j]] * col_signs[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPermWitness {
    pub row_perm: Vec<usize>,
    pub row_signs: Vec<i8>,
    pub col_perm: Vec<usize>,
    pub col_signs: Vec<i8>,
}

impl SignedPermWitness {
    pub fn is_identity(&self) -> bool {
        self.row_perm.iter().enumerate().all(|(i, &r)| i == r)
            && self.col_perm.iter().enumerate().all(|(i, &c)| i == c)
            && self
                .row_signs
                .iter()
                .chain(&self.col_signs)
                .all(|&s| s == 1)
    }

    /// Checks the defining identity entrywise.
    pub fn verify(&self, m: &GradedMatrix, n: &GradedMatrix) -> bool {
        if m.shape() != n.shape() {
            return false;
        }
        for i in 0..n.rows() {
            for j in 0..n.cols() {
                let src = m.get(self.row_perm[i], self.col_perm[j]);
                let want = if self.row_signs[i] * self.col_signs[j] == 1 {
                    src.clone()
                } else {
                    -src
                };
                if &want != n.get(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

const NODE_LIMIT: usize = 2_000_000;

/// Searches for signed row and column permutations taking `m` to `n`.
///
/// Entries are compared up to sign through interned ids; columns are matched
/// first (candidates share a column signature), pruning whenever the
/// multisets of partial rows (each up to sign) disagree. Row pairing and row
/// signs then follow from the completed column assignment.
pub fn signed_perm_equiv(m: &GradedMatrix, n: &GradedMatrix) -> Option<SignedPermWitness> {
    if m.shape() != n.shape() || m.ring() != n.ring() {
        return None;
    }
    let mut interner = Interner::default();
    let mc = interner.codes(m);
    let nc = interner.codes(n);
    let (rows, cols) = m.shape();

    let signature = |codes: &[Vec<i64>], j: usize| {
        let mut s: Vec<i64> = codes.iter().map(|r| r[j].abs()).collect();
        s.sort_unstable();
        s
    };
    let m_sigs: Vec<Vec<i64>> = (0..cols).map(|j| signature(&mc, j)).collect();
    let candidates: Vec<Vec<usize>> = (0..cols)
        .map(|j| {
            let s = signature(&nc, j);
            (0..cols).filter(|&c| m_sigs[c] == s).collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by_key(|&j| (candidates[j].len(), j));

    let mut search = Search {
        mc: &mc,
        nc: &nc,
        rows,
        order: &order,
        candidates: &candidates,
        assigned: vec![None; cols],
        used: vec![false; cols],
        nodes: 0,
    };
    if !search.extend(0) {
        return None;
    }
    let assigned: Vec<(usize, i8)> = search.assigned.iter().map(|a| a.expect("full")).collect();
    let witness = pair_rows(&mc, &nc, &assigned)?;
    witness.verify(m, n).then_some(witness)
}

#[derive(Default)]
struct Interner {
    ids: HashMap<String, i64>,
}

impl Interner {
    fn codes(&mut self, m: &GradedMatrix) -> Vec<Vec<i64>> {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|p| self.code(p)).collect())
            .collect()
    }

    fn code(&mut self, p: &crate::polyring::Polynomial) -> i64 {
        if p.is_zero() {
            return 0;
        }
        let pos = p.to_string();
        let neg = (-p).to_string();
        let (key, sign) = if pos <= neg { (pos, 1) } else { (neg, -1) };
        let next = self.ids.len() as i64 + 1;
        sign * *self.ids.entry(key).or_insert(next)
    }
}

struct Search<'a> {
    mc: &'a [Vec<i64>],
    nc: &'a [Vec<i64>],
    rows: usize,
    order: &'a [usize],
    candidates: &'a [Vec<usize>],
    assigned: Vec<Option<(usize, i8)>>,
    used: Vec<bool>,
    nodes: usize,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let j = self.order[depth];
        // a global sign flip of rows and columns is free; fix the first column sign
        let signs: &[i8] = if depth == 0 { &[1] } else { &[1, -1] };
        for &c in &self.candidates[j] {
            if self.used[c] {
                continue;
            }
            for &s in signs {
                self.nodes += 1;
                if self.nodes > NODE_LIMIT {
                    return false;
                }
                self.assigned[j] = Some((c, s));
                self.used[c] = true;
                if self.consistent(depth + 1) && self.extend(depth + 1) {
                    return true;
                }
                self.used[c] = false;
                self.assigned[j] = None;
            }
        }
        false
    }

    fn consistent(&self, depth: usize) -> bool {
        let cols = &self.order[..depth];
        let mut left: Vec<Vec<i64>> = (0..self.rows)
            .map(|i| normalize(cols.iter().map(|&j| self.nc[i][j]).collect()))
            .collect();
        let mut right: Vec<Vec<i64>> = (0..self.rows)
            .map(|r| {
                normalize(
                    cols.iter()
                        .map(|&j| {
                            let (c, s) = self.assigned[j].expect("assigned");
                            self.mc[r][c] * s as i64
                        })
                        .collect(),
                )
            })
            .collect();
        left.sort_unstable();
        right.sort_unstable();
        left == right
    }
}

/// Flips a tuple so its first nonzero entry is positive.
fn normalize(mut t: Vec<i64>) -> Vec<i64> {
    if t.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        t.iter_mut().for_each(|x| *x = -*x);
    }
    t
}

fn pair_rows(
    mc: &[Vec<i64>],
    nc: &[Vec<i64>],
    assigned: &[(usize, i8)],
) -> Option<SignedPermWitness> {
    let cols = assigned.len();
    let permuted: Vec<Vec<i64>> = mc
        .iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let (c, s) = assigned[j];
                    row[c] * s as i64
                })
                .collect()
        })
        .collect();
    let mut pool: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (r, t) in permuted.iter().enumerate().rev() {
        pool.entry(normalize(t.clone())).or_default().push(r);
    }
    let mut row_perm = Vec::with_capacity(nc.len());
    let mut row_signs = Vec::with_capacity(nc.len());
    for row in nc {
        let r = pool.get_mut(&normalize(row.clone()))?.pop()?;
        let sign = match row.iter().position(|&x| x != 0) {
            Some(j) if row[j] != permuted[r][j] => -1,
            _ => 1,
        };
        row_perm.push(r);
        row_signs.push(sign);
    }
    Some(SignedPermWitness {
        row_perm,
        row_signs,
        col_perm: assigned.iter().map(|&(c, _)| c).collect(),
        col_signs: assigned.iter().map(|&(_, s)| s).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{apply_sigma, assemble, Assembled, SequenceF};

    #[test]
    fn identity_witness_for_equal_matrices() {
        let c = assemble(Assembled::C, 3, &SequenceF::generic()).unwrap();
        let w = signed_perm_equiv(&c, &c).unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn sigma_c_is_literally_d_transpose() {
        let g = SequenceF::generic();
        for a in 2..=8 {
            let sc = apply_sigma(&assemble(Assembled::C, a, &g).unwrap()).unwrap();
            let dt = assemble(Assembled::D, a, &g).unwrap().transpose();
            let w = signed_perm_equiv(&sc, &dt).unwrap();
            assert!(w.verify(&sc, &dt));
            assert!(sc.same_entries(&dt));
        }
    }

    #[test]
    fn sigma_a_matches_b_transpose_with_swapped_blocks() {
        let g = SequenceF::generic();
        let a = 2;
        let sa = apply_sigma(&assemble(Assembled::A, a, &g).unwrap()).unwrap();
        let bt = assemble(Assembled::B, a, &g).unwrap().transpose();
        let w = signed_perm_equiv(&sa, &bt).expect("witness");
        assert!(w.verify(&sa, &bt));
        // The A11/A21 columns of σ(A) land on the B12/B22 columns of B^T.
        assert!(w.col_perm[..a + 1].iter().all(|&c| c > a));
    }

    #[test]
    fn detects_inequivalent_matrices() {
        let g = SequenceF::generic();
        let a = assemble(Assembled::A, 2, &g).unwrap();
        let mut b = a.clone();
        let r = g.ring();
        b.set(0, 0, r.parse("f1+f2").unwrap());
        assert!(signed_perm_equiv(&a, &b).is_none());
        let c = assemble(Assembled::C, 3, &g).unwrap();
        let d = assemble(Assembled::D, 3, &g).unwrap();
        assert!(signed_perm_equiv(&c, &d).is_none());
    }

    #[test]
    fn recovers_a_random_signed_permutation() {
        let g = SequenceF::generic();
        let m = assemble(Assembled::B, 3, &g).unwrap();
        let (rows, cols) = m.shape();
        let rp: Vec<usize> = (0..rows).map(|i| (i * 5 + 3) % rows).collect();
        let cp: Vec<usize> = (0..cols).map(|j| (j * 5 + 1) % cols).collect();
        let mut n = GradedMatrix::zeros(m.ring(), rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = m.get(rp[i], cp[j]).clone();
                let flip = (i % 3 == 0) != (j % 2 == 1);
                n.set(i, j, if flip { -e } else { e });
            }
        }
        let w = signed_perm_equiv(&m, &n).expect("witness");
        assert!(w.verify(&m, &n));
    }
}
