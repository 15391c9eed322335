use super::dense::{rref, Mat};
use super::field::Fp;
use crate::error::{check_dim, Error, Result};
use crate::superalg::invert;

/// Coordinates with respect to an independent list of vectors in a larger
/// ambient space.
#[derive(Clone, Debug)]
pub struct Coordinates {
    f: Fp,
    vectors: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    /// Inverse of the square submatrix on the pivot rows.
    inv: Mat,
}

impl Coordinates {
    pub fn new(f: Fp, ambient: usize, vectors: &[Vec<u32>]) -> Result<Coordinates> {
        for v in vectors {
            check_dim(ambient, v.len())?;
        }
        let vectors: Vec<Vec<u32>> = vectors.iter().map(|v| v.iter().map(|&x| x % f.p()).collect()).collect();
        let k = vectors.len();
        let r = rref(f, &Mat::from_rows(ambient, &vectors)?);
        if r.rank < k {
            return Err(Error::Input(format!("coordinate vectors are dependent (rank {} of {k})", r.rank)));
        }
        let mut sub = Mat::zeros(k, k);
        for (row, &piv) in r.pivots.iter().enumerate() {
            for (col, v) in vectors.iter().enumerate() {
                sub.set(row, col, v[piv]);
            }
        }
        let inv = invert(f, &sub).expect("pivot submatrix is invertible");
        Ok(Coordinates { f, vectors, pivots: r.pivots, inv })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    /// Coefficients `c` with `Σ c_i v_i = w`, or `None` when `w` is outside the span.
    pub fn coords(&self, w: &[u32]) -> Option<Vec<u32>> {
        let f = self.f;
        let picked: Vec<u32> = self.pivots.iter().map(|&i| w[i] % f.p()).collect();
        let c = self.inv.mul_vec(f, &picked).ok()?;
        let mut back = vec![0; w.len()];
        for (ci, v) in c.iter().zip(&self.vectors) {
            if *ci != 0 {
                for (b, &x) in back.iter_mut().zip(v) {
                    *b = f.mul_add(*b, *ci, x);
                }
            }
        }
        (back.iter().zip(w).all(|(&a, &b)| a == b % f.p())).then_some(c)
    }
}
