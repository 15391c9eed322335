use super::dense::{nullspace, rref, Mat};
use super::field::Fp;
use crate::error::{check_dim, Error, Result};

/// A linear subspace of GF(p)^n held by its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::identity(ambient) }
    }

    pub fn from_vectors(f: Fp, ambient: usize, vecs: &[Vec<u32>]) -> Result<Subspace> {
        let m = Mat::from_rows(ambient, vecs)?;
        Ok(Subspace { ambient, basis: rref(f, &m.reduced(f)).mat })
    }

    pub fn from_rows(f: Fp, m: &Mat) -> Subspace {
        Subspace { ambient: m.cols(), basis: rref(f, m).mat }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, f: Fp, v: &[u32]) -> Result<bool> {
        check_dim(self.ambient, v.len())?;
        let mut aug = self.basis.clone();
        aug.push_row(v)?;
        Ok(aug.rank(f) == self.dim())
    }

    pub fn contains_subspace(&self, f: Fp, other: &Subspace) -> Result<bool> {
        check_dim(self.ambient, other.ambient)?;
        Ok(self.sum(f, other)?.dim() == self.dim())
    }

    pub fn sum(&self, f: Fp, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient, other.ambient)?;
        Ok(Subspace::from_rows(f, &self.basis.vstack(&other.basis)?))
    }

    /// Annihilator under the standard dot product.
    pub fn annihilator(&self, f: Fp) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        nullspace(f, &self.basis)
    }

    pub fn intersection(&self, f: Fp, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient, other.ambient)?;
        let both = self.annihilator(f).sum(f, &other.annihilator(f))?;
        Ok(both.annihilator(f))
    }

    /// Vectors of `self` completing a basis of `small` to one of `self`.
    pub fn quotient_basis(&self, f: Fp, small: &Subspace) -> Result<Vec<Vec<u32>>> {
        if !self.contains_subspace(f, small)? {
            return Err(Error::Input("quotient_basis: subspace not contained".into()));
        }
        let mut acc = small.basis.clone();
        let mut rank = small.dim();
        let mut out = Vec::new();
        for v in self.vectors() {
            let mut trial = acc.clone();
            trial.push_row(&v)?;
            let r = trial.rank(f);
            if r > rank {
                rank = r;
                acc = trial;
                out.push(v);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_intersection_quotient() {
        let f = Fp::new(3).unwrap();
        let u = Subspace::from_vectors(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let w = Subspace::from_vectors(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(u.sum(f, &w).unwrap().dim(), 3);
        let i = u.intersection(f, &w).unwrap();
        assert_eq!(i.vectors(), vec![vec![0, 1, 0]]);
        let q = u.quotient_basis(f, &i).unwrap();
        assert_eq!(q, vec![vec![1, 0, 0]]);
        assert!(i.quotient_basis(f, &u).is_err());
        assert!(u.contains(f, &[2, 1, 0]).unwrap());
        assert!(!u.contains(f, &[0, 0, 1]).unwrap());
    }
}
