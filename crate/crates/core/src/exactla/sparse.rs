use std::collections::BTreeMap;

use super::dense::Mat;
use super::field::Fp;
use super::subspace::Subspace;

/// Sparse vector as sorted `(column, value)` pairs with nonzero values.
pub type SparseVec = Vec<(usize, u32)>;

/// Incremental row echelon form over sparse rows. Rows are reduced by their
/// leading column only, which is enough for rank and membership.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    f: Fp,
    cols: usize,
    pivot_of: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
}

impl SparseEchelon {
    pub fn new(f: Fp, cols: usize) -> SparseEchelon {
        SparseEchelon { f, cols, pivot_of: vec![None; cols], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current pivots; the remainder is returned.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let f = self.f;
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for &(c, x) in v {
            let x = x % f.p();
            if x != 0 {
                let e = acc.entry(c).or_insert(0);
                *e = f.add(*e, x);
            }
        }
        acc.retain(|_, x| *x != 0);
        let mut out = SparseVec::new();
        while let Some((c, x)) = acc.pop_first() {
            match self.pivot_of[c] {
                Some(r) => {
                    let neg = f.neg(x);
                    for &(c2, y) in &self.rows[r][1..] {
                        let e = acc.entry(c2).or_insert(0);
                        *e = f.mul_add(*e, neg, y);
                        if *e == 0 {
                            acc.remove(&c2);
                        }
                    }
                }
                None => {
                    out.push((c, x));
                    out.extend(acc.iter().map(|(&c, &x)| (c, x)));
                    break;
                }
            }
        }
        out
    }

    /// Insert a row; returns whether it increased the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some(&(lead, x)) = r.first() else { return false };
        let inv = self.f.inv(x);
        let normalized: SparseVec = r.iter().map(|&(c, y)| (c, self.f.mul(y, inv))).collect();
        self.pivot_of[lead] = Some(self.rows.len());
        self.rows.push(normalized);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, x) in r {
                m.set(i, c, x);
            }
        }
        m
    }

    /// Row space as a dense subspace.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_rows(self.f, &self.to_dense())
    }
}

pub fn sparse_rank(f: Fp, cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = SparseEchelon::new(f, cols);
    for r in rows {
        e.insert(&r);
    }
    e.rank()
}

/// Kernel of the sparse system given by `rows`.
pub fn sparse_nullspace(f: Fp, cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Subspace {
    let mut e = SparseEchelon::new(f, cols);
    for r in rows {
        if e.rank() == cols {
            break;
        }
        e.insert(&r);
    }
    if e.rank() == 0 {
        return Subspace::full(cols);
    }
    super::dense::nullspace(f, &e.to_dense())
}

pub fn to_sparse(v: &[u32]) -> SparseVec {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::dense::nullspace;

    #[test]
    fn matches_dense() {
        let f = Fp::new(7).unwrap();
        let rows = vec![vec![1, 2, 0, 3], vec![2, 4, 0, 6], vec![0, 1, 1, 0], vec![1, 3, 1, 3]];
        let m = Mat::from_rows(4, &rows).unwrap();
        let sparse: Vec<SparseVec> = rows.iter().map(|r| to_sparse(r)).collect();
        assert_eq!(sparse_rank(f, 4, sparse.clone()), m.rank(f));
        assert_eq!(sparse_nullspace(f, 4, sparse), nullspace(f, &m));
    }
}
