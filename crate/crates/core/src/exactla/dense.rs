use std::fmt;

use super::field::Fp;
use crate::error::{check_dim, Error, Result};

/// Row-major matrix of residues. The field is passed to each operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Result<Mat> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_dim(cols, r.len())?;
            data.extend_from_slice(r);
        }
        Ok(Mat { rows: rows.len(), cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<u32>]) -> Result<Mat> {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            check_dim(rows, c.len())?;
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<u32>) -> Result<Mat> {
        check_dim(rows * cols, data.len())?;
        Ok(Mat { rows, cols, data })
    }

    /// Reduce every entry into `0..p`.
    pub fn reduced(mut self, f: Fp) -> Mat {
        for v in &mut self.data {
            *v %= f.p();
        }
        self
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: Fp, other: &Mat) -> Result<Mat> {
        check_dim(self.cols, other.rows)?;
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = out.row_mut(i);
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = f.mul_add(*d, a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, f: Fp, v: &[u32]) -> Result<Vec<u32>> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.mul_add(acc, a, b) })
            })
            .collect())
    }

    pub fn add(&self, f: Fp, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, f: Fp, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Mat, op: impl Fn(u32, u32) -> u32) -> Result<Mat> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, f: Fp, c: u32) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn pow(&self, f: Fp, e: u32) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Input("power of a non-square matrix".into()));
        }
        let mut r = Mat::identity(self.rows);
        for _ in 0..e {
            r = r.mul(f, self)?;
        }
        Ok(r)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        check_dim(self.cols, other.cols)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn push_row(&mut self, r: &[u32]) -> Result<()> {
        check_dim(self.cols, r.len())?;
        self.data.extend_from_slice(r);
        self.rows += 1;
        Ok(())
    }

    pub fn rank(&self, f: Fp) -> usize {
        rref(f, self).rank
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(fm, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(fm, "  {:?}", self.row(i))?;
        }
        write!(fm, "]")
    }
}

/// Reduced row echelon form with its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. The pivot in each column is the first nonzero
/// entry at or below the current row, so the result is deterministic.
pub fn rref(f: Fp, m: &Mat) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else { continue };
        if pr != r {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, c));
        for v in a.row_mut(r) {
            *v = f.mul(*v, inv);
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c);
            if factor == 0 {
                continue;
            }
            let neg = f.neg(factor);
            for (v, &pv) in a.row_mut(i).iter_mut().zip(&pivot_row).skip(c) {
                if pv != 0 {
                    *v = f.mul_add(*v, neg, pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.data.truncate(r * a.cols);
    a.rows = r;
    Rref { mat: a, rank: r, pivots }
}

/// Kernel of `m` acting on column vectors.
pub fn nullspace(f: Fp, m: &Mat) -> super::Subspace {
    let red = rref(f, m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (r, &pc) in red.pivots.iter().enumerate() {
            v[pc] = f.neg(red.mat.get(r, free));
        }
        basis.push(v);
    }
    super::Subspace::from_vectors(f, n, &basis).expect("nullspace vectors have ambient length")
}

/// Solve `m x = b`. Returns the particular solution with all free variables
/// zero together with the kernel, or `None` when inconsistent.
pub fn solve(f: Fp, m: &Mat, b: &[u32]) -> Result<Option<(Vec<u32>, super::Subspace)>> {
    check_dim(m.rows(), b.len())?;
    let n = m.cols();
    let mut aug = Mat::zeros(m.rows(), n + 1);
    for i in 0..m.rows() {
        aug.row_mut(i)[..n].copy_from_slice(m.row(i));
        aug.set(i, n, b[i] % f.p());
    }
    let red = rref(f, &aug);
    if red.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![0; n];
    for (r, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.mat.get(r, n);
    }
    Ok(Some((x, nullspace(f, m))))
}

pub fn dot(f: Fp, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| if x == 0 || y == 0 { acc } else { f.mul_add(acc, x, y) })
}

pub fn vec_add(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_scale(f: Fp, a: &[u32], c: u32) -> Vec<u32> {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// `a += c*b` in place.
pub fn axpy(f: Fp, a: &mut [u32], c: u32, b: &[u32]) {
    if c == 0 {
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        if y != 0 {
            *x = f.mul_add(*x, c, y);
        }
    }
}

pub fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Fp {
        Fp::new(5).unwrap()
    }

    #[test]
    fn rref_small() {
        let f = f5();
        let m = Mat::from_rows(3, &[vec![0, 2, 4], vec![1, 1, 1], vec![1, 3, 0]]).unwrap();
        let r = rref(f, &m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.mat.row(0), &[1, 0, 4]);
        assert_eq!(r.mat.row(1), &[0, 1, 2]);
    }

    #[test]
    fn nullspace_annihilates() {
        let f = f5();
        let m = Mat::from_rows(4, &[vec![1, 2, 3, 4], vec![2, 4, 1, 0]]).unwrap();
        let k = nullspace(f, &m);
        assert_eq!(k.dim(), 2);
        for v in k.vectors() {
            assert!(is_zero_vec(&m.mul_vec(f, &v).unwrap()));
        }
    }

    #[test]
    fn solve_inconsistent_and_particular() {
        let f = f5();
        let m = Mat::from_rows(2, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(solve(f, &m, &[1, 1]).unwrap().is_none());
        let (x, h) = solve(f, &m, &[1, 2]).unwrap().unwrap();
        assert_eq!(x, vec![1, 0]);
        assert_eq!(h.dim(), 1);
        assert!(solve(f, &m, &[1]).is_err());
    }

    #[test]
    fn zero_matrix_rank_zero() {
        let f = Fp::new(3).unwrap();
        assert_eq!(Mat::zeros(3, 4).rank(f), 0);
        assert_eq!(nullspace(f, &Mat::zeros(3, 4)).dim(), 4);
    }
}
