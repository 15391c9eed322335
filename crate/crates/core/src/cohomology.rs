//! Derivations and Chevalley-Eilenberg cohomology in low degrees.
//!
//! Cochains are dual to `Λ(𝔤_ev) ⊗ Γ(𝔤_od)`: monomials are sorted index
//! lists with even indices at most once and odd indices repeated. Working
//! with divided powers keeps the differential free of factorials, so it is
//! valid in every characteristic except 2 for superalgebras.

use std::collections::{BTreeMap, HashMap};

use crate::error::{check_dim, Error, Result};
use crate::exactla::{sparse_nullspace, sparse_rank, Fp, Mat, SparseEchelon, SparseVec, Subspace};
use crate::poly::{generic_element, pair, poly_bracket, ParityFilter};
use crate::restricted::{restricted_defect, PMap};
use crate::superalg::{both_odd, LieSuperAlgebra, Parity};

/// A pair of subspaces of flattened `n x n` matrices, one per parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    pub even: Subspace,
    pub odd: Subspace,
}

impl GradedSpace {
    pub fn get(&self, parity: Parity) -> &Subspace {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even.dim(), self.odd.dim())
    }
}

/// Row-major flattening, entry `k*n + i` = `D[k][i]`.
pub fn mat_to_flat(m: &Mat) -> Vec<u32> {
    m.data().to_vec()
}

pub fn flat_to_mat(n: usize, v: &[u32]) -> Mat {
    Mat::from_data(n, n, v.to_vec()).expect("flattened square matrix")
}

/// Derivations of a fixed parity.
pub fn derivations_of_parity(alg: &LieSuperAlgebra, parity: Parity) -> Subspace {
    let n = alg.dim();
    let f = alg.field();
    let allowed = |k: usize, i: usize| alg.parity(k) == alg.parity(i) + parity;
    let mut rows: Vec<SparseVec> = Vec::new();
    for i in 0..n {
        for j in i..n {
            // D[e_i,e_j] - [D e_i, e_j] - (-1)^{|D||i|}[e_i, D e_j], by component m
            let mut acc: BTreeMap<usize, BTreeMap<usize, u32>> = BTreeMap::new();
            let mut push = |m: usize, col: usize, v: u32| {
                let e = acc.entry(m).or_default().entry(col).or_insert(0);
                *e = f.add(*e, v);
            };
            for &(k, c) in alg.bracket_terms(i, j) {
                for m in 0..n {
                    if allowed(m, k) {
                        push(m, m * n + k, c);
                    }
                }
            }
            for l in 0..n {
                if allowed(l, i) {
                    for &(m, c) in alg.bracket_terms(l, j) {
                        push(m, l * n + i, f.neg(c));
                    }
                }
                if allowed(l, j) {
                    let s = f.neg(f.sign(both_odd(parity, alg.parity(i))));
                    for &(m, c) in alg.bracket_terms(i, l) {
                        push(m, l * n + j, f.mul(s, c));
                    }
                }
            }
            for (_, row) in acc {
                let r: SparseVec = row.into_iter().filter(|(_, v)| *v != 0).collect();
                if !r.is_empty() {
                    rows.push(r);
                }
            }
        }
    }
    // columns outside the parity block are forced to zero
    for k in 0..n {
        for i in 0..n {
            if !allowed(k, i) {
                rows.push(vec![(k * n + i, 1)]);
            }
        }
    }
    sparse_nullspace(f, n * n, rows)
}

pub fn derivations(alg: &LieSuperAlgebra) -> GradedSpace {
    GradedSpace { even: derivations_of_parity(alg, Parity::Even), odd: derivations_of_parity(alg, Parity::Odd) }
}

pub fn inner(alg: &LieSuperAlgebra) -> GradedSpace {
    let n = alg.dim();
    let f = alg.field();
    let of = |par: Parity| {
        let vecs: Vec<Vec<u32>> = (0..n).filter(|&i| alg.parity(i) == par).map(|i| mat_to_flat(&alg.ad_basis(i))).collect();
        Subspace::from_vectors(f, n * n, &vecs).expect("flattened matrices")
    };
    GradedSpace { even: of(Parity::Even), odd: of(Parity::Odd) }
}

/// `(dim out_ev, dim out_od)` with `out = der / inner`.
pub fn out_dim(alg: &LieSuperAlgebra) -> (usize, usize) {
    let d = derivations(alg);
    let i = inner(alg);
    (d.even.dim() - i.even.dim(), d.odd.dim() - i.odd.dim())
}

/// Representatives of the outer derivations of one parity.
pub fn outer_representatives(alg: &LieSuperAlgebra, parity: Parity) -> Vec<Mat> {
    let f = alg.field();
    let n = alg.dim();
    let d = derivations_of_parity(alg, parity);
    let i = inner(alg);
    d.quotient_basis(f, i.get(parity)).expect("inner derivations are derivations").iter().map(|v| flat_to_mat(n, v)).collect()
}

/// Restricted derivations (derivations with vanishing Hochschild defect).
pub fn restricted_derivations(alg: &LieSuperAlgebra, pm: &PMap) -> Result<GradedSpace> {
    let f = alg.field();
    let n = alg.dim();
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let der = derivations_of_parity(alg, parity);
        let basis = der.vectors();
        // the defect is linear in D: collect its coefficients per (monomial, component)
        let mut rows: HashMap<(crate::poly::Monomial, usize), SparseVec> = HashMap::new();
        for (t, v) in basis.iter().enumerate() {
            let phi = restricted_defect(alg, pm, &flat_to_mat(n, v))?;
            for (m, coeffs) in phi.terms() {
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        rows.entry((m.clone(), k)).or_default().push((t, c));
                    }
                }
            }
        }
        let mut keys: Vec<_> = rows.keys().cloned().collect();
        keys.sort();
        let sys: Vec<SparseVec> = keys.into_iter().map(|k| rows.remove(&k).expect("key present")).collect();
        let kernel = sparse_nullspace(f, basis.len(), sys);
        let vecs: Vec<Vec<u32>> = kernel
            .vectors()
            .iter()
            .map(|x| {
                let mut acc = vec![0; n * n];
                for (t, &c) in x.iter().enumerate() {
                    crate::exactla::axpy(f, &mut acc, c, &basis[t]);
                }
                acc
            })
            .collect();
        out.push(Subspace::from_vectors(f, n * n, &vecs)?);
    }
    let odd = out.pop().expect("two parities");
    let even = out.pop().expect("two parities");
    Ok(GradedSpace { even, odd })
}

pub fn restricted_h1_dim(alg: &LieSuperAlgebra, pm: &PMap) -> Result<(usize, usize)> {
    let r = restricted_derivations(alg, pm)?;
    let i = inner(alg);
    let f = alg.field();
    for par in [Parity::Even, Parity::Odd] {
        if !r.get(par).contains_subspace(f, i.get(par))? {
            return Err(Error::Verification("an inner derivation failed the restricted condition".into()));
        }
    }
    Ok((r.even.dim() - i.even.dim(), r.odd.dim() - i.odd.dim()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Trivial,
    Adjoint,
}

/// Monomials of one degree together with the coefficient module.
#[derive(Clone, Debug)]
pub struct CochainBasis {
    pub degree: usize,
    pub monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    pub target_dim: usize,
}

impl CochainBasis {
    pub fn new(alg: &LieSuperAlgebra, degree: usize, coeff: Coefficients) -> CochainBasis {
        let mut monomials = Vec::new();
        let mut cur = Vec::new();
        gen_monomials(alg, degree, 0, &mut cur, &mut monomials);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let target_dim = match coeff {
            Coefficients::Trivial => 1,
            Coefficients::Adjoint => alg.dim(),
        };
        CochainBasis { degree, monomials, index, target_dim }
    }

    pub fn len(&self) -> usize {
        self.monomials.len() * self.target_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn position(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Parity of the cochain coordinate `(monomial, target)`.
    pub fn parity(&self, alg: &LieSuperAlgebra, coeff: Coefficients, col: usize) -> Parity {
        let (mi, t) = (col / self.target_dim, col % self.target_dim);
        let args = self.monomials[mi].iter().fold(Parity::Even, |acc, &i| acc + alg.parity(i));
        match coeff {
            Coefficients::Trivial => args,
            Coefficients::Adjoint => args + alg.parity(t),
        }
    }
}

fn gen_monomials(alg: &LieSuperAlgebra, left: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..alg.dim() {
        cur.push(i);
        let next = if alg.parity(i).is_odd() { i } else { i + 1 };
        gen_monomials(alg, left - 1, next, cur, out);
        cur.pop();
    }
}

/// The number of degree-`k` cochains, without building them.
pub fn cochain_dim(alg: &LieSuperAlgebra, k: usize, coeff: Coefficients) -> usize {
    let ne = alg.even_indices().len();
    let no = alg.odd_indices().len();
    let binom = |n: usize, r: usize| -> usize {
        if r > n {
            return 0;
        }
        (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
    };
    let multiset = |n: usize, r: usize| if n == 0 { usize::from(r == 0) } else { binom(n + r - 1, r) };
    let monos: usize = (0..=k).map(|r| binom(ne, r) * multiset(no, k - r)).sum();
    monos * if coeff == Coefficients::Trivial { 1 } else { alg.dim() }
}

/// Sign bit of moving the first copy of `m[pos]` to the front.
fn front_sign(alg: &LieSuperAlgebra, m: &[usize], pos: usize) -> bool {
    let y = alg.parity(m[pos]);
    let mut odd = false;
    for &z in &m[..pos] {
        // passing z costs -(-1)^{|y||z|}
        odd ^= !both_odd(y, alg.parity(z));
    }
    odd
}

fn remove_at(m: &[usize], pos: usize) -> Vec<usize> {
    let mut r = m.to_vec();
    r.remove(pos);
    r
}

/// Insert `w` into a sorted monomial: returns the new monomial, the sign bit
/// of the move and the divided power factor, or `None` if the product vanishes.
fn insert_sorted(alg: &LieSuperAlgebra, rest: &[usize], w: usize) -> Option<(Vec<usize>, bool, u32)> {
    let pw = alg.parity(w);
    let present = rest.iter().filter(|&&x| x == w).count();
    if present > 0 && !pw.is_odd() {
        return None;
    }
    let pos = rest.iter().position(|&x| x >= w).unwrap_or(rest.len());
    let mut m = rest.to_vec();
    m.insert(pos, w);
    Some((m.clone(), front_sign(alg, &m, pos), present as u32 + 1))
}

/// Sparse matrix of `d_k : C^k -> C^{k+1}`, stored by rows.
#[derive(Clone, Debug)]
pub struct Differential {
    pub rows: Vec<SparseVec>,
    pub row_parity: Vec<Parity>,
    pub ncols: usize,
}

pub fn differential(alg: &LieSuperAlgebra, k: usize, coeff: Coefficients) -> Result<Differential> {
    let f = alg.field();
    if f.p() == 2 && !alg.odd_indices().is_empty() {
        return Err(Error::Unsupported("cohomology of superalgebras at p = 2".into()));
    }
    let src = CochainBasis::new(alg, k, coeff);
    let dst = CochainBasis::new(alg, k + 1, coeff);
    let td = src.target_dim;
    let half = if f.p() == 2 { 0 } else { f.inv(2) };
    let mut rows = Vec::with_capacity(dst.len());
    let mut row_parity = Vec::with_capacity(dst.len());
    for (ri, m) in dst.monomials.iter().enumerate() {
        for t in 0..td {
            let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
            let mut push = |col: usize, v: u32| {
                let e = acc.entry(col).or_insert(0);
                *e = f.add(*e, v);
            };
            let firsts: Vec<usize> = (0..m.len()).filter(|&i| i == 0 || m[i] != m[i - 1]).collect();
            if coeff == Coefficients::Adjoint {
                for &pos in &firsts {
                    let y = m[pos];
                    let rest = remove_at(m, pos);
                    let ci = src.position(&rest).expect("sub-monomial");
                    let s1 = front_sign(alg, m, pos);
                    let args = rest.iter().fold(Parity::Even, |a, &i| a + alg.parity(i));
                    for tp in 0..td {
                        let psi_par = args + alg.parity(tp);
                        let sgn = f.sign(s1 ^ both_odd(alg.parity(y), psi_par));
                        for &(tt, c) in alg.bracket_terms(y, tp) {
                            if tt == t {
                                push(ci * td + tp, f.mul(sgn, c));
                            }
                        }
                    }
                }
            }
            for (a, &pa) in firsts.iter().enumerate() {
                let y = m[pa];
                let s1 = front_sign(alg, m, pa);
                let my = remove_at(m, pa);
                // distinct partners after y
                for &pb in &firsts[a + 1..] {
                    let z = m[pb];
                    let pz = my.iter().position(|&x| x == z).expect("partner present");
                    let s2 = s1 ^ front_sign(alg, &my, pz);
                    let rest = remove_at(&my, pz);
                    for &(w, c) in alg.bracket_terms(y, z) {
                        if let Some((mm, sw, mult)) = insert_sorted(alg, &rest, w) {
                            let ci = src.position(&mm).expect("monomial");
                            let v = f.mul(f.mul(c, mult % f.p()), f.sign(!(s2 ^ sw)));
                            push(ci * td + t, v);
                        }
                    }
                }
                // self pair of an odd element
                if alg.parity(y).is_odd() && pa + 1 < m.len() && m[pa + 1] == y {
                    let rest = remove_at(&my, pa);
                    for &(w, c) in alg.bracket_terms(y, y) {
                        if let Some((mm, sw, mult)) = insert_sorted(alg, &rest, w) {
                            let ci = src.position(&mm).expect("monomial");
                            let v = f.mul(f.mul(c, mult % f.p()), f.mul(half, f.sign(!sw)));
                            push(ci * td + t, v);
                        }
                    }
                }
            }
            rows.push(acc.into_iter().filter(|(_, v)| *v != 0).collect());
            row_parity.push(dst.parity(alg, coeff, ri * td + t));
        }
    }
    Ok(Differential { rows, row_parity, ncols: src.len() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub degree: usize,
    pub dim: usize,
    pub dim_even: usize,
    pub dim_odd: usize,
    /// Cocycles spanning a complement of the coboundaries (empty if skipped
    /// because the cochain space is large).
    pub representatives: Vec<Vec<u32>>,
    pub cochain_dim: usize,
}

/// Cochain spaces above this size are refused.
pub const DEFAULT_SIZE_GUARD: usize = 50_000;

const REPRESENTATIVE_LIMIT: usize = 5_000;

pub fn h_k(alg: &LieSuperAlgebra, k: usize, coeff: Coefficients, size_guard: usize) -> Result<CohomologyResult> {
    let f = alg.field();
    if k > 3 {
        return Err(Error::Unsupported("cohomology above degree 3".into()));
    }
    for deg in [k, k + 1] {
        let d = cochain_dim(alg, deg, coeff);
        if d > size_guard {
            return Err(Error::SizeGuard(format!("C^{deg} has dimension {d} > {size_guard}")));
        }
    }
    let dk = differential(alg, k, coeff)?;
    let basis = CochainBasis::new(alg, k, coeff);
    let par_count = |par: Parity| (0..basis.len()).filter(|&c| basis.parity(alg, coeff, c) == par).count();
    let rank_by = |d: &Differential, par: Parity| {
        sparse_rank(f, d.ncols, d.rows.iter().zip(&d.row_parity).filter(|(_, &p)| p == par).map(|(r, _)| r.clone()))
    };
    let prev = if k == 0 { None } else { Some(differential(alg, k - 1, coeff)?) };
    let mut dims = [0usize; 2];
    for (slot, par) in [Parity::Even, Parity::Odd].into_iter().enumerate() {
        let ker = par_count(par) - rank_by(&dk, par);
        let im = prev.as_ref().map_or(0, |d| rank_by(d, par));
        dims[slot] = ker - im;
    }
    let mut representatives = Vec::new();
    if basis.len() <= REPRESENTATIVE_LIMIT {
        let kernel = sparse_nullspace(f, basis.len(), dk.rows.iter().cloned());
        let image = match &prev {
            Some(d) => {
                let mut cols: Vec<SparseVec> = vec![Vec::new(); d.ncols];
                for (r, row) in d.rows.iter().enumerate() {
                    for &(c, v) in row {
                        cols[c].push((r, v));
                    }
                }
                let mut e = SparseEchelon::new(f, basis.len());
                for c in cols {
                    e.insert(&c);
                }
                e.row_space()
            }
            None => Subspace::zero(basis.len()),
        };
        representatives = kernel.quotient_basis(f, &image)?;
    }
    Ok(CohomologyResult {
        degree: k,
        dim: dims[0] + dims[1],
        dim_even: dims[0],
        dim_odd: dims[1],
        representatives,
        cochain_dim: basis.len(),
    })
}

/// Whether `d_{k+1} ∘ d_k = 0` exactly.
pub fn dd_is_zero(alg: &LieSuperAlgebra, k: usize, coeff: Coefficients) -> Result<bool> {
    let f = alg.field();
    let a = differential(alg, k, coeff)?;
    let b = differential(alg, k + 1, coeff)?;
    check_dim(b.ncols, a.rows.len())?;
    for row in &b.rows {
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for &(mid, x) in row {
            for &(c, y) in &a.rows[mid] {
                let e = acc.entry(c).or_insert(0);
                *e = f.mul_add(*e, x, y);
            }
        }
        if acc.values().any(|&v| v != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    /// Super-antisymmetry and parity.
    pub ext1: bool,
    /// The cocycle identity on basis triples.
    pub ext2: bool,
    /// `ω(a,[a,a]) = 0` on a generic odd element, p = 3 only.
    pub ext3: Option<bool>,
}

impl CocycleReport {
    pub fn ok(&self) -> bool {
        self.ext1 && self.ext2 && self.ext3 != Some(false)
    }
}

/// Conditions for `[a,b] + ω(a,b) z` to define a central extension.
pub fn central_extension_2cocycle_check(alg: &LieSuperAlgebra, omega: &Mat, parity: Parity) -> Result<CocycleReport> {
    let n = alg.dim();
    let f = alg.field();
    check_dim(n, omega.rows())?;
    check_dim(n, omega.cols())?;
    let mut ext1 = true;
    for i in 0..n {
        for j in 0..n {
            let w = omega.get(i, j);
            if w != 0 && alg.parity(i) + alg.parity(j) != parity {
                ext1 = false;
            }
            let expect = if both_odd(alg.parity(i), alg.parity(j)) { w } else { f.neg(w) };
            if omega.get(j, i) != expect {
                ext1 = false;
            }
        }
    }
    let om = |u: &[u32], v: &[u32]| -> u32 { crate::exactla::dot(f, u, &omega.mul_vec(f, v).expect("dims")) };
    let mut ext2 = true;
    'outer: for i in 0..n {
        let ei = crate::exactla::unit(n, i);
        for j in 0..n {
            let ej = crate::exactla::unit(n, j);
            let ij = alg.bracket_basis(i, j);
            let s = f.sign(both_odd(alg.parity(i), alg.parity(j)));
            for k in 0..n {
                let ek = crate::exactla::unit(n, k);
                let lhs = om(&ei, &alg.bracket_basis(j, k));
                let rhs = f.add(om(&ij, &ek), f.mul(s, om(&ej, &alg.bracket_basis(i, k))));
                if lhs != rhs {
                    ext2 = false;
                    break 'outer;
                }
            }
        }
    }
    let ext3 = if f.p() == 3 && !alg.odd_indices().is_empty() {
        let a = generic_element(alg, ParityFilter::Odd, 0);
        let aa = poly_bracket(alg, &a, &a);
        Some(pair(f, omega, &a, &aa).is_zero())
    } else {
        None
    };
    Ok(CocycleReport { ext1, ext2, ext3 })
}

/// The 2-cochain `(a, b) -> B(D a, b)`.
pub fn form_cocycle(f: Fp, gram: &Mat, d: &Mat) -> Mat {
    d.transpose().mul(f, gram).expect("square matrices of equal size")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{AlgebraBuilder, BasisElem};

    fn sl2(p: u32) -> LieSuperAlgebra {
        let f = Fp::new(p).unwrap();
        let basis = ["h", "e", "f"].iter().map(|n| BasisElem::new(*n, Parity::Even)).collect();
        let mut b = AlgebraBuilder::new(f, basis);
        b.add(0, 1, 1, 2).unwrap();
        b.add(0, 2, 2, -2).unwrap();
        b.add(1, 2, 0, 1).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn sl2_p5() {
        let g = sl2(5);
        assert_eq!(out_dim(&g), (0, 0));
        for k in 0..3 {
            assert!(dd_is_zero(&g, k, Coefficients::Trivial).unwrap());
            assert!(dd_is_zero(&g, k, Coefficients::Adjoint).unwrap());
        }
        let h1 = h_k(&g, 1, Coefficients::Adjoint, DEFAULT_SIZE_GUARD).unwrap();
        assert_eq!(h1.dim, 0);
        let h3 = h_k(&g, 3, Coefficients::Trivial, DEFAULT_SIZE_GUARD).unwrap();
        assert_eq!(h3.dim, 1);
    }

    #[test]
    fn abelian_one_dim() {
        let f = Fp::new(2).unwrap();
        let g = LieSuperAlgebra::abelian(f, vec![BasisElem::new("x", Parity::Even)]);
        assert_eq!(h_k(&g, 1, Coefficients::Trivial, 100).unwrap().dim, 1);
        assert_eq!(derivations(&g).dims(), (1, 0));
    }

    #[test]
    fn cochain_dims() {
        let f = Fp::new(3).unwrap();
        let mut basis: Vec<BasisElem> = (0..3).map(|i| BasisElem::new(format!("a{i}"), Parity::Even)).collect();
        basis.extend((0..2).map(|i| BasisElem::new(format!("b{i}"), Parity::Odd)));
        let g = LieSuperAlgebra::abelian(f, basis);
        for k in 0..4 {
            assert_eq!(CochainBasis::new(&g, k, Coefficients::Trivial).len(), cochain_dim(&g, k, Coefficients::Trivial));
        }
        assert_eq!(cochain_dim(&g, 2, Coefficients::Trivial), 3 + 6 + 3);
    }
}
