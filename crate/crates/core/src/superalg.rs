//! Lie superalgebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::exactla::{axpy, is_zero_vec, nullspace, unit, Fp, Mat, Subspace};
use crate::poly::{generic_element, poly_bracket, ParityFilter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn flip(self) -> Parity {
        Parity::from_bit(!self.is_odd())
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.is_odd() ^ rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

/// `(-1)^{|a||b|}` is negative exactly when both are odd.
#[inline]
pub fn both_odd(a: Parity, b: Parity) -> bool {
    a.is_odd() && b.is_odd()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub name: String,
    pub parity: Parity,
}

impl BasisElem {
    pub fn new(name: impl Into<String>, parity: Parity) -> BasisElem {
        BasisElem { name: name.into(), parity }
    }
}

pub type Terms = Vec<(usize, u32)>;

/// A finite-dimensional Lie superalgebra over GF(p).
///
/// Only `[e_i, e_j]` with `i < j`, or `i == j` odd, is stored; the rest
/// follows from `[e_j, e_i] = -(-1)^{|i||j|}[e_i, e_j]`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieSuperAlgebra {
    f: Fp,
    basis: Vec<BasisElem>,
    sc: BTreeMap<(usize, usize), Terms>,
    table: Vec<Terms>,
}

impl fmt::Debug for LieSuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieSuperAlgebra(p={}, dim={}, nonzero brackets={})", self.f.p(), self.dim(), self.sc.len())
    }
}

/// Accumulates structure constants in any orientation.
#[derive(Clone, Debug)]
pub struct AlgebraBuilder {
    f: Fp,
    basis: Vec<BasisElem>,
    sc: BTreeMap<(usize, usize), Vec<u32>>,
}

impl AlgebraBuilder {
    pub fn new(f: Fp, basis: Vec<BasisElem>) -> AlgebraBuilder {
        AlgebraBuilder { f, basis, sc: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Add `c e_k` to `[e_i, e_j]`.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: i64) -> Result<&mut Self> {
        let n = self.basis.len();
        if i >= n || j >= n || k >= n {
            return Err(Error::Input(format!("bracket index out of range: [{i},{j}] -> {k}")));
        }
        let f = self.f;
        let mut c = f.from_i64(c);
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        if i > j && !both_odd(self.basis[i].parity, self.basis[j].parity) {
            c = f.neg(c);
        }
        if a == b && !self.basis[a].parity.is_odd() && c != 0 {
            return Err(Error::Input(format!("[e{a}, e{a}] must vanish for even e{a}")));
        }
        let slot = self.sc.entry((a, b)).or_insert_with(|| vec![0; n]);
        slot[k] = f.add(slot[k], c);
        Ok(self)
    }

    /// Add a whole vector to `[e_i, e_j]`.
    pub fn add_vec(&mut self, i: usize, j: usize, v: &[u32]) -> Result<&mut Self> {
        check_dim(self.basis.len(), v.len())?;
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                self.add(i, j, k, i64::from(c))?;
            }
        }
        Ok(self)
    }

    pub fn build(&self) -> Result<LieSuperAlgebra> {
        let entries = self.sc.iter().map(|(&(i, j), v)| {
            ((i, j), v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect::<Terms>())
        });
        LieSuperAlgebra::new(self.f, self.basis.clone(), entries)
    }
}

impl LieSuperAlgebra {
    /// Build from canonical entries `(i, j) -> terms` with `i < j` or `i == j` odd.
    pub fn new(
        f: Fp,
        basis: Vec<BasisElem>,
        entries: impl IntoIterator<Item = ((usize, usize), Terms)>,
    ) -> Result<LieSuperAlgebra> {
        let n = basis.len();
        let mut sc: BTreeMap<(usize, usize), Terms> = BTreeMap::new();
        for ((i, j), terms) in entries {
            if i >= n || j >= n || i > j || (i == j && !basis[i].parity.is_odd()) {
                return Err(Error::Input(format!("non-canonical bracket entry ({i},{j})")));
            }
            if sc.contains_key(&(i, j)) {
                return Err(Error::Input(format!("duplicate bracket entry ({i},{j})")));
            }
            let mut dense = vec![0u32; n];
            for (k, c) in terms {
                if k >= n {
                    return Err(Error::Input(format!("bracket ({i},{j}) has target index {k} out of range")));
                }
                dense[k] = f.add(dense[k], c % f.p());
            }
            let want = basis[i].parity + basis[j].parity;
            for (k, &c) in dense.iter().enumerate() {
                if c != 0 && basis[k].parity != want {
                    return Err(Error::Input(format!(
                        "bracket [{}, {}] has a term in {} of the wrong parity",
                        basis[i].name, basis[j].name, basis[k].name
                    )));
                }
            }
            let terms: Terms = dense.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect();
            if !terms.is_empty() {
                sc.insert((i, j), terms);
            }
        }
        let mut table = vec![Terms::new(); n * n];
        for (&(i, j), terms) in &sc {
            table[i * n + j] = terms.clone();
            if i != j {
                let flip = !both_odd(basis[i].parity, basis[j].parity);
                table[j * n + i] = terms.iter().map(|&(k, c)| (k, if flip { f.neg(c) } else { c })).collect();
            }
        }
        Ok(LieSuperAlgebra { f, basis, sc, table })
    }

    /// Build from a bracket function on basis pairs; only canonical pairs are queried.
    pub fn from_bracket_fn(
        f: Fp,
        basis: Vec<BasisElem>,
        mut br: impl FnMut(usize, usize) -> Vec<u32>,
    ) -> Result<LieSuperAlgebra> {
        let n = basis.len();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                if i == j && !basis[i].parity.is_odd() {
                    continue;
                }
                let v = br(i, j);
                check_dim(n, v.len())?;
                entries.push(((i, j), v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect()));
            }
        }
        LieSuperAlgebra::new(f, basis, entries)
    }

    pub fn abelian(f: Fp, basis: Vec<BasisElem>) -> LieSuperAlgebra {
        LieSuperAlgebra::new(f, basis, std::iter::empty()).expect("empty structure constants are canonical")
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.f
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.f.p()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    #[inline]
    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.parity(i).is_odd()).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i).is_odd()).collect()
    }

    pub fn is_purely_even(&self) -> bool {
        self.basis.iter().all(|b| !b.parity.is_odd())
    }

    /// Canonical stored entries.
    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), Terms> {
        &self.sc
    }

    /// `[e_i, e_j]` for any pair.
    #[inline]
    pub fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, u32)] {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for &(k, c) in self.bracket_terms(i, j) {
            v[k] = c;
        }
        v
    }

    pub fn bracket(&self, a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
        let n = self.dim();
        check_dim(n, a.len())?;
        check_dim(n, b.len())?;
        let f = self.f;
        let mut out = vec![0; n];
        let nzb: Vec<(usize, u32)> = b.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(j, y) in &nzb {
                let c = f.mul(x, y);
                for &(k, z) in self.bracket_terms(i, j) {
                    out[k] = f.mul_add(out[k], c, z);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `b -> [a, b]`; column `j` is `[a, e_j]`.
    pub fn ad(&self, a: &[u32]) -> Result<Mat> {
        let n = self.dim();
        check_dim(n, a.len())?;
        let f = self.f;
        let mut m = Mat::zeros(n, n);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..n {
                for &(k, z) in self.bracket_terms(i, j) {
                    m.set(k, j, f.mul_add(m.get(k, j), x, z));
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Mat {
        self.ad(&unit(self.dim(), i)).expect("unit vector has the right length")
    }

    /// Parity of a vector, `None` for inhomogeneous vectors; zero counts as even.
    pub fn vector_parity(&self, v: &[u32]) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                let p = self.parity(i);
                if seen.is_some_and(|s| s != p) {
                    return None;
                }
                seen = Some(p);
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    /// Parity of a matrix viewed as an operator, `None` if inhomogeneous.
    pub fn operator_parity(&self, m: &Mat) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for k in 0..m.rows() {
            for i in 0..m.cols() {
                if m.get(k, i) != 0 {
                    let p = self.parity(k) + self.parity(i);
                    if seen.is_some_and(|s| s != p) {
                        return None;
                    }
                    seen = Some(p);
                }
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    /// Split a vector into its even and odd parts.
    pub fn split_parity(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut e = vec![0; v.len()];
        let mut o = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            if self.parity(i).is_odd() {
                o[i] = x;
            } else {
                e[i] = x;
            }
        }
        (e, o)
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let f = self.f;
        let mut anticommutative = true;
        'outer: for i in 0..n {
            for j in 0..n {
                let mut sum = self.bracket_basis(i, j);
                let back = self.bracket_basis(j, i);
                let c = if both_odd(self.parity(i), self.parity(j)) { 1 } else { f.neg(1) };
                // [e_i,e_j] + (-1)^{|i||j|}[e_j,e_i] must vanish
                axpy(f, &mut sum, f.neg(c), &back);
                if !is_zero_vec(&sum) || (i == j && !self.parity(i).is_odd() && !self.bracket_terms(i, i).is_empty()) {
                    anticommutative = false;
                    break 'outer;
                }
            }
        }
        let jacobi_failure = self.jacobi_failure();
        let char3_cubic = if self.p() == 3 && !self.odd_indices().is_empty() {
            let a = generic_element(self, ParityFilter::Odd, 0);
            let aa = poly_bracket(self, &a, &a);
            Some(poly_bracket(self, &a, &aa).is_zero())
        } else {
            None
        };
        let jacobi = jacobi_failure.is_none();
        AxiomReport {
            anticommutative,
            jacobi,
            char3_cubic,
            is_lie: anticommutative && jacobi && char3_cubic != Some(false),
            is_pre_lie_only: anticommutative && jacobi && char3_cubic == Some(false),
            jacobi_failure,
        }
    }

    /// First triple violating `[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]`.
    fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let f = self.f;
        for i in 0..n {
            for j in 0..n {
                let ij = self.bracket_basis(i, j);
                let sgn = f.sign(both_odd(self.parity(i), self.parity(j)));
                for k in 0..n {
                    let lhs = self.bracket(&unit(n, i), &self.bracket_basis(j, k)).expect("dims");
                    let mut rhs = self.bracket(&ij, &unit(n, k)).expect("dims");
                    let bac = self.bracket(&unit(n, j), &self.bracket_basis(i, k)).expect("dims");
                    axpy(f, &mut rhs, sgn, &bac);
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Stacked nullspace of all `v -> [v, e_i]`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut m = Mat::zeros(0, n);
        for i in 0..n {
            // column k of this block is [e_k, e_i]
            let mut block = Mat::zeros(n, n);
            for k in 0..n {
                for &(t, c) in self.bracket_terms(k, i) {
                    block.set(t, k, c);
                }
            }
            m = m.vstack(&block).expect("same width");
        }
        nullspace(self.f, &m)
    }

    pub fn derived_subalgebra(&self) -> Subspace {
        let n = self.dim();
        let vecs: Vec<Vec<u32>> = self.sc.values().map(|t| {
            let mut v = vec![0; n];
            for &(k, c) in t {
                v[k] = c;
            }
            v
        }).collect();
        Subspace::from_vectors(self.f, n, &vecs).expect("vectors of ambient length")
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        check_dim(self.dim(), s.ambient())?;
        for v in s.vectors() {
            for i in 0..self.dim() {
                let w = self.bracket(&unit(self.dim(), i), &v)?;
                if !s.contains(self.f, &w)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the subspace is spanned by homogeneous vectors.
    pub fn is_graded(&self, s: &Subspace) -> Result<bool> {
        for v in s.vectors() {
            let (e, o) = self.split_parity(&v);
            if !s.contains(self.f, &e)? || !s.contains(self.f, &o)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Quotient by a graded ideal; representatives are basis elements.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(ideal)? {
            return Err(Error::Input("quotient: subspace is not an ideal".into()));
        }
        if !self.is_graded(ideal)? {
            return Err(Error::Input("quotient: ideal is not graded".into()));
        }
        let n = self.dim();
        let f = self.f;
        let reps_vec = Subspace::full(n).quotient_basis(f, ideal)?;
        let reps: Vec<usize> = reps_vec.iter().map(|v| v.iter().position(|&x| x != 0).expect("unit vector")).collect();
        // coordinates: solve v = Σ c_r e_{reps[r]} + Σ d_s ideal_s
        let mut cols: Vec<Vec<u32>> = reps.iter().map(|&r| unit(n, r)).collect();
        cols.extend(ideal.vectors());
        let change = Mat::from_cols(n, &cols)?;
        let inv = invert(f, &change).ok_or_else(|| Error::Input("quotient: representatives do not complement".into()))?;
        let m = reps.len();
        let mut proj = Mat::zeros(m, n);
        for r in 0..m {
            for c in 0..n {
                proj.set(r, c, inv.get(r, c));
            }
        }
        let basis: Vec<BasisElem> = reps.iter().map(|&r| self.basis[r].clone()).collect();
        let alg = LieSuperAlgebra::from_bracket_fn(f, basis, |a, b| {
            proj.mul_vec(f, &self.bracket_basis(reps[a], reps[b])).expect("dims")
        })?;
        Ok(Quotient { alg, reps, proj })
    }

    pub fn direct_sum(&self, other: &LieSuperAlgebra) -> Result<LieSuperAlgebra> {
        if self.f != other.f {
            return Err(Error::Input("direct_sum: characteristics differ".into()));
        }
        let n = self.dim();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().cloned());
        let mut entries: Vec<((usize, usize), Terms)> = self.sc.iter().map(|(&k, t)| (k, t.clone())).collect();
        for (&(i, j), t) in &other.sc {
            entries.push(((i + n, j + n), t.iter().map(|&(k, c)| (k + n, c)).collect()));
        }
        LieSuperAlgebra::new(self.f, basis, entries)
    }

    /// Same structure, new basis names.
    pub fn renamed(&self, names: &[String]) -> Result<LieSuperAlgebra> {
        check_dim(self.dim(), names.len())?;
        let mut out = self.clone();
        for (b, n) in out.basis.iter_mut().zip(names) {
            b.name = n.clone();
        }
        Ok(out)
    }

    /// Transport the structure along a change of basis. Column `i` of
    /// `change` expresses the new `i`-th basis vector in the old basis.
    pub fn change_basis(&self, change: &Mat, basis: Vec<BasisElem>) -> Result<LieSuperAlgebra> {
        let f = self.f;
        let inv = invert(f, change).ok_or_else(|| Error::Input("change_basis: singular matrix".into()))?;
        let cols: Vec<Vec<u32>> = (0..change.cols()).map(|j| change.col(j)).collect();
        LieSuperAlgebra::from_bracket_fn(f, basis, |a, b| {
            let w = self.bracket(&cols[a], &cols[b]).expect("dims");
            inv.mul_vec(f, &w).expect("dims")
        })
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub alg: LieSuperAlgebra,
    /// Basis indices of the representatives, in order.
    pub reps: Vec<usize>,
    /// Canonical projection, `dim(quotient) x dim(alg)`.
    pub proj: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub anticommutative: bool,
    pub jacobi: bool,
    /// `None` when not applicable (p != 3 or no odd part).
    pub char3_cubic: Option<bool>,
    pub is_lie: bool,
    pub is_pre_lie_only: bool,
    pub jacobi_failure: Option<(usize, usize, usize)>,
}

pub fn invert(f: Fp, m: &Mat) -> Option<Mat> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut aug = Mat::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, n + i, 1);
    }
    let r = crate::exactla::rref(f, &aug);
    if r.rank < n || r.pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.mat.get(i, n + j));
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hei2(p: u32) -> LieSuperAlgebra {
        let f = Fp::new(p).unwrap();
        let basis = vec![BasisElem::new("p", Parity::Even), BasisElem::new("q", Parity::Even), BasisElem::new("z", Parity::Even)];
        let mut b = AlgebraBuilder::new(f, basis);
        b.add(0, 1, 2, 1).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn heisenberg_basics() {
        let h = hei2(2);
        assert_eq!(h.bracket(&[1, 0, 0], &[0, 1, 0]).unwrap(), vec![0, 0, 1]);
        assert_eq!(h.bracket(&[0, 1, 0], &[1, 0, 0]).unwrap(), vec![0, 0, 1]);
        let r = h.check_axioms();
        assert!(r.is_lie && r.jacobi && r.char3_cubic.is_none());
        assert_eq!(h.center().vectors(), vec![vec![0, 0, 1]]);
        assert!(h.ad(&[0, 0, 1]).unwrap().is_zero());
        let adp = h.ad(&[1, 0, 0]).unwrap();
        assert_eq!(adp.col(1), vec![0, 0, 1]);
        assert_eq!(adp.col(2), vec![0, 0, 0]);
    }

    #[test]
    fn builder_orientation() {
        let h3 = hei2(3);
        let f = h3.field();
        let basis = h3.basis().to_vec();
        let mut b = AlgebraBuilder::new(f, basis);
        b.add(1, 0, 2, -1).unwrap();
        assert_eq!(b.build().unwrap(), h3);
    }

    #[test]
    fn quotient_by_center() {
        let h = hei2(3);
        let q = h.quotient(&h.center()).unwrap();
        assert_eq!(q.alg.dim(), 2);
        assert!(q.alg.structure_constants().is_empty());
        assert_eq!(q.reps, vec![0, 1]);
        let bad = Subspace::from_vectors(h.field(), 3, &[vec![1, 0, 0]]).unwrap();
        assert!(h.quotient(&bad).is_err());
    }

    #[test]
    fn jacobi_violation_detected() {
        let f = Fp::new(5).unwrap();
        let basis = (0..3).map(|i| BasisElem::new(format!("e{i}"), Parity::Even)).collect();
        let mut b = AlgebraBuilder::new(f, basis);
        b.add(0, 1, 0, 1).unwrap();
        b.add(1, 2, 1, 1).unwrap();
        b.add(0, 2, 2, 1).unwrap();
        let alg = b.build().unwrap();
        assert!(!alg.check_axioms().jacobi);
    }

    #[test]
    fn odd_self_bracket_and_parity_check() {
        let f = Fp::new(3).unwrap();
        let basis = vec![BasisElem::new("h", Parity::Even), BasisElem::new("x", Parity::Odd)];
        let mut b = AlgebraBuilder::new(f, basis.clone());
        b.add(1, 1, 0, 1).unwrap();
        let alg = b.build().unwrap();
        assert_eq!(alg.bracket(&[0, 1], &[0, 1]).unwrap(), vec![1, 0]);
        assert!(LieSuperAlgebra::new(f, basis, vec![((0, 1), vec![(0, 1)])]).is_err());
    }
}
