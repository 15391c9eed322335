//! Matrix realizations: gl, sl, psl, q, psq, and the hardcoded osp(1|2).

use super::CatalogAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Coordinates, Fp, Mat, Subspace};
use crate::forms::BilForm;
use crate::restricted::{jacobson_extend, quotient_pmap, PMap};
use crate::superalg::{AlgebraBuilder, BasisElem, LieSuperAlgebra, Parity};

/// An algebra spanned by explicit (super)matrices.
#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub alg: LieSuperAlgebra,
    pub mats: Vec<Mat>,
    coords: Coordinates,
}

fn flat(m: &Mat) -> Vec<u32> {
    m.data().to_vec()
}

/// `XY - (-1)^{|X||Y|} YX`.
pub fn supercommutator(f: Fp, x: &Mat, px: Parity, y: &Mat, py: Parity) -> Mat {
    let xy = x.mul(f, y).expect("square");
    let yx = y.mul(f, x).expect("square");
    if px.is_odd() && py.is_odd() {
        xy.add(f, &yx).expect("dims")
    } else {
        xy.sub(f, &yx).expect("dims")
    }
}

impl MatrixRealization {
    pub fn new(f: Fp, basis: Vec<BasisElem>, mats: Vec<Mat>) -> Result<MatrixRealization> {
        let size = mats.first().map_or(0, |m| m.rows());
        let mats: Vec<Mat> = mats.into_iter().map(|m| m.reduced(f)).collect();
        let coords = Coordinates::new(f, size * size, &mats.iter().map(flat).collect::<Vec<_>>())?;
        let par: Vec<Parity> = basis.iter().map(|b| b.parity).collect();
        let mut failure = None;
        let alg = LieSuperAlgebra::from_bracket_fn(f, basis, |i, j| {
            let c = supercommutator(f, &mats[i], par[i], &mats[j], par[j]);
            coords.coords(&flat(&c)).unwrap_or_else(|| {
                failure = Some((i, j));
                vec![0; mats.len()]
            })
        })?;
        if let Some((i, j)) = failure {
            return Err(Error::Input(format!("matrix span is not closed: [{}, {}]", alg.name(i), alg.name(j))));
        }
        Ok(MatrixRealization { alg, mats, coords })
    }

    pub fn coords(&self, m: &Mat) -> Option<Vec<u32>> {
        self.coords.coords(&flat(m))
    }

    /// The p-map sending each even basis matrix to its p-th power.
    pub fn power_pmap(&self) -> Result<PMap> {
        let f = self.alg.field();
        let mut images = Vec::new();
        for j in self.alg.even_indices() {
            let pw = self.mats[j].pow(f, f.p())?;
            let v = self
                .coords(&pw)
                .ok_or_else(|| Error::Input(format!("p-th power of {} leaves the span", self.alg.name(j))))?;
            images.push((j, v));
        }
        jacobson_extend(&self.alg, &images)
    }

    /// Gram matrix of `(X, Y) -> tr(XY)`.
    pub fn trace_gram(&self) -> Mat {
        self.gram_by(|xy| (0..xy.rows()).map(|i| xy.get(i, i)).collect())
    }

    fn gram_by(&self, diag: impl Fn(&Mat) -> Vec<u32>) -> Mat {
        let f = self.alg.field();
        let n = self.mats.len();
        let mut g = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let xy = self.mats[i].mul(f, &self.mats[j]).expect("square");
                g.set(i, j, diag(&xy).into_iter().fold(0, |a, b| f.add(a, b)));
            }
        }
        g
    }
}

fn unit_mat(size: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(size, size);
    m.set(i, j, 1);
    m
}

fn even(name: impl Into<String>) -> BasisElem {
    BasisElem::new(name, Parity::Even)
}

fn odd(name: impl Into<String>) -> BasisElem {
    BasisElem::new(name, Parity::Odd)
}

pub fn realize_gl(n: usize, p: u32) -> Result<MatrixRealization> {
    let f = Fp::new(p)?;
    let mut basis = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            basis.push(even(format!("E{}{}", i + 1, j + 1)));
            mats.push(unit_mat(n, i, j));
        }
    }
    MatrixRealization::new(f, basis, mats)
}

pub fn build_gl(n: usize, p: u32) -> Result<CatalogAlgebra> {
    let r = realize_gl(n, p)?;
    let pmap = r.power_pmap()?;
    Ok(CatalogAlgebra::new(r.alg, pmap, None))
}

/// sl(n) ordered `h1, x.., y.., h2, ..`; positive roots `E_ij` sorted by
/// height then row, negative ones `(-1)^{j-i-1} E_ji`. For n = 3 this gives
/// `x3 = [x1,x2]` and `y3 = [y1,y2]`.
pub fn realize_sl(n: usize, p: u32) -> Result<MatrixRealization> {
    if n < 2 {
        return Err(Error::Input("sl(n) needs n >= 2".into()));
    }
    let f = Fp::new(p)?;
    let h = |k: usize| unit_mat(n, k, k).sub(f, &unit_mat(n, k + 1, k + 1)).expect("dims");
    let mut roots = Vec::new();
    for height in 1..n {
        for i in 0..n - height {
            roots.push((i, i + height));
        }
    }
    let mut basis = vec![even("h1")];
    let mut mats = vec![h(0)];
    for (k, &(i, j)) in roots.iter().enumerate() {
        basis.push(even(format!("x{}", k + 1)));
        mats.push(unit_mat(n, i, j));
    }
    for (k, &(i, j)) in roots.iter().enumerate() {
        basis.push(even(format!("y{}", k + 1)));
        let m = unit_mat(n, j, i);
        mats.push(if (j - i - 1) % 2 == 1 { m.scale(f, f.neg(1)) } else { m });
    }
    for k in 1..n - 1 {
        basis.push(even(format!("h{}", k + 1)));
        mats.push(h(k));
    }
    MatrixRealization::new(f, basis, mats)
}

pub fn build_sl(n: usize, p: u32) -> Result<CatalogAlgebra> {
    let r = realize_sl(n, p)?;
    let pmap = r.power_pmap()?;
    Ok(CatalogAlgebra::new(r.alg, pmap, None))
}

/// psl(n) = sl(n) / scalars for `p | n`, with the trace form. The last Cartan
/// element is the one dropped, so psl(3) has basis `h1, x1, x2, x3, y1, y2, y3`.
pub fn build_psl(n: usize, p: u32) -> Result<CatalogAlgebra> {
    if n % p as usize != 0 {
        return Err(Error::Precondition(format!("psl({n}) needs p | n, got p = {p}")));
    }
    let r = realize_sl(n, p)?;
    let f = r.alg.field();
    let pm = r.power_pmap()?;
    let ident = r.coords(&Mat::identity(n)).expect("identity is traceless when p | n");
    let center = Subspace::from_vectors(f, r.alg.dim(), &[ident])?;
    let (q, qpm) = quotient_pmap(&r.alg, &pm, &center)?;
    let full = r.trace_gram();
    let m = q.reps.len();
    let mut g = Mat::zeros(m, m);
    for (a, &ra) in q.reps.iter().enumerate() {
        for (b, &rb) in q.reps.iter().enumerate() {
            g.set(a, b, full.get(ra, rb));
        }
    }
    Ok(CatalogAlgebra::new(q.alg, qpm, Some(BilForm::new(Parity::Even, g))))
}

/// q(n) as supermatrices `(A B; B A)`: even `A_ij`, then odd `B_ij`.
pub fn realize_q(n: usize, p: u32) -> Result<MatrixRealization> {
    let f = Fp::new(p)?;
    let s = 2 * n;
    let a = |i: usize, j: usize| unit_mat(s, i, j).add(f, &unit_mat(s, n + i, n + j)).expect("dims");
    let b = |i: usize, j: usize| unit_mat(s, i, n + j).add(f, &unit_mat(s, n + i, j)).expect("dims");
    let mut basis = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            basis.push(even(format!("A{}{}", i + 1, j + 1)));
            mats.push(a(i, j));
        }
    }
    for i in 0..n {
        for j in 0..n {
            basis.push(odd(format!("B{}{}", i + 1, j + 1)));
            mats.push(b(i, j));
        }
    }
    MatrixRealization::new(f, basis, mats)
}

fn odd_trace_gram(r: &MatrixRealization, n: usize) -> Mat {
    r.gram_by(|xy| (0..n).map(|i| xy.get(i, n + i)).collect())
}

/// q(n) with the odd form `(X, Y) -> otr(XY)`, where `otr` is the trace of
/// the off-diagonal block.
pub fn build_q(n: usize, p: u32) -> Result<CatalogAlgebra> {
    if p == 2 {
        return Err(Error::Precondition("q(n) is built for p > 2".into()));
    }
    let r = realize_q(n, p)?;
    let pmap = r.power_pmap()?;
    let g = odd_trace_gram(&r, n);
    Ok(CatalogAlgebra::new(r.alg, pmap, Some(BilForm::new(Parity::Odd, g))))
}

/// psq(n): the odd-traceless part of q(n) modulo the identity, with the
/// induced odd-trace form.
pub fn build_psq(n: usize, p: u32) -> Result<CatalogAlgebra> {
    if n <= 2 {
        return Err(Error::Precondition("psq(n) needs n > 2".into()));
    }
    if p == 2 {
        return Err(Error::Precondition("psq(n) is built for p > 2".into()));
    }
    let f = Fp::new(p)?;
    let q = realize_q(n, p)?;
    let mut basis = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            basis.push(even(format!("A{}{}", i + 1, j + 1)));
            mats.push(q.mats[i * n + j].clone());
        }
    }
    let bm = |i: usize, j: usize| q.mats[n * n + i * n + j].clone();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(odd(format!("B{}{}", i + 1, j + 1)));
                mats.push(bm(i, j));
            }
        }
    }
    for i in 0..n - 1 {
        basis.push(odd(format!("C{}", i + 1)));
        mats.push(bm(i, i).sub(f, &bm(n - 1, n - 1))?);
    }
    let sq = MatrixRealization::new(f, basis, mats)?;
    let pm = sq.power_pmap()?;
    let ident = sq.coords(&Mat::identity(2 * n)).expect("identity lies in sq(n)");
    let center = Subspace::from_vectors(f, sq.alg.dim(), &[ident])?;
    let (qt, qpm) = quotient_pmap(&sq.alg, &pm, &center)?;
    let full = odd_trace_gram(&sq, n);
    let m = qt.reps.len();
    let mut g = Mat::zeros(m, m);
    for (a, &ra) in qt.reps.iter().enumerate() {
        for (b, &rb) in qt.reps.iter().enumerate() {
            g.set(a, b, full.get(ra, rb));
        }
    }
    Ok(CatalogAlgebra::new(qt.alg, qpm, Some(BilForm::new(Parity::Odd, g))))
}

/// osp(1|2) in the basis `h = [x1,y1], x1, x2 = [x1,x1], y1, y2 = [y1,y1]`.
pub fn build_osp12(p: u32) -> Result<CatalogAlgebra> {
    if p == 2 {
        return Err(Error::Precondition("osp(1|2) is built for p > 2".into()));
    }
    let f = Fp::new(p)?;
    let basis = vec![even("h"), odd("x1"), even("x2"), odd("y1"), even("y2")];
    let (h, x1, x2, y1, y2) = (0, 1, 2, 3, 4);
    let mut b = AlgebraBuilder::new(f, basis);
    b.add(h, x1, x1, 1)?
        .add(h, y1, y1, -1)?
        .add(h, x2, x2, 2)?
        .add(h, y2, y2, -2)?
        .add(x1, x1, x2, 1)?
        .add(y1, y1, y2, 1)?
        .add(x1, y1, h, 1)?
        .add(x2, y1, x1, -2)?
        .add(x1, y2, y1, -2)?
        .add(x2, y2, h, -4)?;
    let alg = b.build()?;
    let mut g = Mat::zeros(5, 5);
    let c = |v: i64| f.from_i64(v);
    g.set(h, h, c(2));
    g.set(x1, y1, c(2));
    g.set(y1, x1, c(-2));
    g.set(x2, y2, c(-4));
    g.set(y2, x2, c(-4));
    let pmap = jacobson_extend(&alg, &[(h, vec![1, 0, 0, 0, 0]), (x2, vec![0; 5]), (y2, vec![0; 5])])?;
    Ok(CatalogAlgebra::new(alg, pmap, Some(BilForm::new(Parity::Even, g))))
}
