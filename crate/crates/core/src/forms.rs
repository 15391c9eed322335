//! Parity-graded bilinear forms.

use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::exactla::{dot, nullspace, sparse_nullspace, Fp, Mat, SparseVec, Subspace};
use crate::poly::{generic_element, pair, ParityFilter};
use crate::superalg::{both_odd, LieSuperAlgebra, Parity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilForm {
    pub parity: Parity,
    /// `gram[i][j] = B(e_i, e_j)`.
    pub gram: Mat,
}

impl BilForm {
    pub fn new(parity: Parity, gram: Mat) -> BilForm {
        BilForm { parity, gram }
    }

    pub fn eval(&self, f: Fp, a: &[u32], b: &[u32]) -> u32 {
        let gb = self.gram.mul_vec(f, b).expect("form and vector sizes agree");
        dot(f, a, &gb)
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.gram.get(i, j)
    }

    /// `v -> B(v, .)` as a row vector.
    pub fn covector(&self, f: Fp, v: &[u32]) -> Vec<u32> {
        self.gram.transpose().mul_vec(f, v).expect("form and vector sizes agree")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NisFailure {
    Size,
    ParityIncompatible { i: usize, j: usize },
    NotSupersymmetric { i: usize, j: usize },
    Degenerate { rank: usize },
    NotInvariant { i: usize, j: usize, k: usize },
}

impl fmt::Display for NisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NisFailure::Size => write!(f, "Gram matrix has the wrong size"),
            NisFailure::ParityIncompatible { i, j } => write!(f, "entry ({i},{j}) violates the form parity"),
            NisFailure::NotSupersymmetric { i, j } => write!(f, "entries ({i},{j}) and ({j},{i}) are not supersymmetric"),
            NisFailure::Degenerate { rank } => write!(f, "degenerate: rank {rank}"),
            NisFailure::NotInvariant { i, j, k } => write!(f, "B([e{i},e{j}],e{k}) != B(e{i},[e{j},e{k}])"),
        }
    }
}

/// Full NIS check with the first failing axiom.
pub fn check_nis(alg: &LieSuperAlgebra, b: &BilForm) -> std::result::Result<(), NisFailure> {
    let n = alg.dim();
    let f = alg.field();
    if b.gram.rows() != n || b.gram.cols() != n {
        return Err(NisFailure::Size);
    }
    for i in 0..n {
        for j in 0..n {
            let g = b.entry(i, j);
            if g != 0 && alg.parity(i) + alg.parity(j) != b.parity {
                return Err(NisFailure::ParityIncompatible { i, j });
            }
            let expect = if both_odd(alg.parity(i), alg.parity(j)) { f.neg(g) } else { g };
            if b.entry(j, i) != expect {
                return Err(NisFailure::NotSupersymmetric { i, j });
            }
        }
    }
    let rank = b.gram.rank(f);
    if rank < n {
        return Err(NisFailure::Degenerate { rank });
    }
    if let Some((i, j, k)) = invariance_failure(alg, b) {
        return Err(NisFailure::NotInvariant { i, j, k });
    }
    Ok(())
}

pub fn is_nis(alg: &LieSuperAlgebra, b: &BilForm) -> bool {
    check_nis(alg, b).is_ok()
}

fn invariance_failure(alg: &LieSuperAlgebra, b: &BilForm) -> Option<(usize, usize, usize)> {
    let n = alg.dim();
    let f = alg.field();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = alg.bracket_terms(i, j).iter().fold(0, |acc, &(t, c)| f.mul_add(acc, c, b.entry(t, k)));
                let rhs = alg.bracket_terms(j, k).iter().fold(0, |acc, &(t, c)| f.mul_add(acc, c, b.entry(i, t)));
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// A violated clause of D-invariance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DInvarianceDefect {
    Pair { i: usize, j: usize, value: u32 },
    /// The p = 2 quadratic clause `B(a, Da) = 0`.
    Quadratic,
}

/// All violations of `B(Da,b) + (-1)^{|D||a|} B(a,Db) = 0` on basis pairs,
/// plus the quadratic clause when `p = 2` and `|D| + |B|` is even.
pub fn d_invariance_defects(
    alg: &LieSuperAlgebra,
    b: &BilForm,
    d: &Mat,
    parity_d: Parity,
) -> Result<Vec<DInvarianceDefect>> {
    let n = alg.dim();
    let f = alg.field();
    check_dim(n, d.rows())?;
    check_dim(n, d.cols())?;
    match alg.operator_parity(d) {
        Some(par) if par == parity_d || d.is_zero() => {}
        _ => return Err(Error::Input(format!("derivation is not homogeneous of parity {parity_d}"))),
    }
    let bd = b.gram.transpose().mul(f, d)?.transpose(); // bd[i][j] = B(D e_i, e_j)
    let db = b.gram.mul(f, d)?; // db[i][j] = B(e_i, D e_j)
    let mut out = Vec::new();
    for i in 0..n {
        let s = f.sign(both_odd(parity_d, alg.parity(i)));
        for j in 0..n {
            let v = f.mul_add(bd.get(i, j), s, db.get(i, j));
            if v != 0 {
                out.push(DInvarianceDefect::Pair { i, j, value: v });
            }
        }
    }
    if f.p() == 2 && parity_d == b.parity {
        let a = generic_element(alg, ParityFilter::All, 0);
        let da = a.apply(f, d);
        if !pair(f, &b.gram, &a, &da).is_zero() {
            out.push(DInvarianceDefect::Quadratic);
        }
    }
    Ok(out)
}

pub fn is_d_invariant(alg: &LieSuperAlgebra, b: &BilForm, d: &Mat, parity_d: Parity) -> Result<bool> {
    Ok(d_invariance_defects(alg, b, d, parity_d)?.is_empty())
}

/// `{v : B(v, s) = 0 for all s in S}`.
pub fn orth_complement(alg: &LieSuperAlgebra, b: &BilForm, s: &Subspace) -> Result<Subspace> {
    let n = alg.dim();
    let f = alg.field();
    check_dim(n, s.ambient())?;
    if b.gram.rank(f) < n {
        return Err(Error::Precondition("orth_complement: form is degenerate".into()));
    }
    if s.dim() == 0 {
        return Ok(Subspace::full(n));
    }
    let rows: Vec<Vec<u32>> = s.vectors().iter().map(|v| b.gram.mul_vec(f, v).expect("dims")).collect();
    Ok(nullspace(f, &Mat::from_rows(n, &rows)?))
}

/// The space of invariant supersymmetric forms of the given parity, as
/// flattened row-major Gram matrices in GF(p)^{n*n}.
pub fn invariant_forms(alg: &LieSuperAlgebra, parity: Parity) -> Subspace {
    let n = alg.dim();
    let f = alg.field();
    // unknowns: g_{ij}, i <= j, parity-compatible
    let mut col_of = vec![None; n * n];
    let mut unknowns = Vec::new();
    for i in 0..n {
        for j in i..n {
            if alg.parity(i) + alg.parity(j) != parity {
                continue;
            }
            if i == j && alg.parity(i).is_odd() {
                // B(e,e) = -B(e,e) for odd e; only p = 2 would allow it, and
                // the pair parity is even there anyway
                if f.p() != 2 {
                    continue;
                }
            }
            col_of[i * n + j] = Some(unknowns.len());
            unknowns.push((i, j));
        }
    }
    // g(i,j) as a signed reference to an unknown
    let entry = |i: usize, j: usize| -> Option<(usize, u32)> {
        if i <= j {
            col_of[i * n + j].map(|c| (c, 1))
        } else {
            col_of[j * n + i].map(|c| (c, f.sign(both_odd(alg.parity(i), alg.parity(j)))))
        }
    };
    let mut rows: Vec<SparseVec> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = std::collections::BTreeMap::<usize, u32>::new();
                for &(t, c) in alg.bracket_terms(i, j) {
                    if let Some((col, s)) = entry(t, k) {
                        let e = acc.entry(col).or_insert(0);
                        *e = f.mul_add(*e, c, s);
                    }
                }
                for &(t, c) in alg.bracket_terms(j, k) {
                    if let Some((col, s)) = entry(i, t) {
                        let e = acc.entry(col).or_insert(0);
                        *e = f.mul_add(*e, f.neg(c), s);
                    }
                }
                let row: SparseVec = acc.into_iter().filter(|(_, v)| *v != 0).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let sol = sparse_nullspace(f, unknowns.len(), rows);
    let grams: Vec<Vec<u32>> = sol
        .vectors()
        .iter()
        .map(|x| {
            let mut g = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    if let Some((c, s)) = entry(i, j) {
                        g[i * n + j] = f.mul(x[c], s);
                    }
                }
            }
            g
        })
        .collect();
    Subspace::from_vectors(f, n * n, &grams).expect("flattened Gram matrices")
}

/// Unflatten a row-major Gram vector.
pub fn gram_from_flat(n: usize, flat: &[u32]) -> Result<Mat> {
    Mat::from_data(n, n, flat.to_vec())
}
