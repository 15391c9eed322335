//! Divided powers, vect(n;1) and svect^(1)(3;1).

use std::collections::BTreeMap;

use super::CatalogAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Coordinates, Fp, Mat};
use crate::forms::{gram_from_flat, invariant_forms, BilForm};
use crate::restricted::{jacobson_extend, PMap};
use crate::superalg::{BasisElem, LieSuperAlgebra, Parity};

/// O(n;1): basis `u^(r)`, `0 <= r_i < p`, in lexicographic order of `r`.
#[derive(Clone, Debug)]
pub struct DividedPowerAlgebra {
    f: Fp,
    n: usize,
    exps: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
}

impl DividedPowerAlgebra {
    pub fn field(&self) -> Fp {
        self.f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponent(&self, k: usize) -> &[u32] {
        &self.exps[k]
    }

    pub fn index_of(&self, r: &[u32]) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// `u^(r) u^(s) = Π binom(r_i + s_i, r_i) u^(r+s)`, or `None` past the truncation.
    pub fn mul(&self, r: &[u32], s: &[u32]) -> Option<(Vec<u32>, u32)> {
        let f = self.f;
        let p = f.p();
        let mut t = Vec::with_capacity(self.n);
        let mut c = 1;
        for (&a, &b) in r.iter().zip(s) {
            if a + b >= p {
                return None;
            }
            t.push(a + b);
            c = f.mul(c, binom_mod(a + b, a, p));
        }
        (c != 0).then_some((t, c))
    }

    /// `∂_i u^(r) = u^(r - ε_i)`.
    pub fn partial(&self, i: usize, r: &[u32]) -> Option<Vec<u32>> {
        (r[i] > 0).then(|| {
            let mut t = r.to_vec();
            t[i] -= 1;
            t
        })
    }
}

fn binom_mod(n: u32, k: u32, p: u32) -> u32 {
    // n < p here, so the ordinary binomial reduced mod p is fine
    let mut c: u64 = 1;
    for i in 0..k {
        c = c * u64::from(n - i) / u64::from(i + 1);
    }
    (c % u64::from(p)) as u32
}

pub fn build_o(n: usize, p: u32) -> Result<DividedPowerAlgebra> {
    let f = Fp::new(p)?;
    let total = (p as usize).checked_pow(n as u32).filter(|&d| d <= 4096);
    if total.is_none() {
        return Err(Error::SizeGuard(format!("O({n};1) at p = {p} is too large")));
    }
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        exps = exps.into_iter().flat_map(|r| (0..p).map(move |a| [r.clone(), vec![a]].concat())).collect();
    }
    let index = exps.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
    Ok(DividedPowerAlgebra { f, n, exps, index })
}

/// A vector field `Σ f_i ∂_i` as a sparse map `(r, i) -> coefficient`.
pub type Field = BTreeMap<(Vec<u32>, usize), u32>;

/// vect(n;1) together with its divided power algebra. Basis `u^(r) ∂_i`,
/// ordered by `r` then `i`.
#[derive(Clone, Debug)]
pub struct Vect {
    pub o: DividedPowerAlgebra,
    pub cat: CatalogAlgebra,
}

impl Vect {
    pub fn index(&self, r: &[u32], i: usize) -> usize {
        self.o.index_of(r).expect("exponent in range") * self.o.n + i
    }

    pub fn to_vec(&self, x: &Field) -> Vec<u32> {
        let mut v = vec![0; self.cat.alg.dim()];
        for ((r, i), &c) in x {
            v[self.index(r, *i)] = c;
        }
        v
    }
}

fn add_to(f: Fp, out: &mut Field, key: (Vec<u32>, usize), c: u32) {
    let e = out.entry(key.clone()).or_insert(0);
    *e = f.add(*e, c);
    if *e == 0 {
        out.remove(&key);
    }
}

/// `[f∂_i, g∂_j] = f∂_i(g)∂_j - g∂_j(f)∂_i`.
pub fn field_bracket(o: &DividedPowerAlgebra, x: &Field, y: &Field) -> Field {
    let f = o.f;
    let mut out = Field::new();
    for ((r, i), &a) in x {
        for ((s, j), &b) in y {
            let ab = f.mul(a, b);
            if let Some(g) = o.partial(*i, s) {
                if let Some((t, c)) = o.mul(r, &g) {
                    add_to(f, &mut out, (t, *j), f.mul(ab, c));
                }
            }
            if let Some(g) = o.partial(*j, r) {
                if let Some((t, c)) = o.mul(s, &g) {
                    add_to(f, &mut out, (t, *i), f.neg(f.mul(ab, c)));
                }
            }
        }
    }
    out
}

/// Apply a vector field to a function given as `exponent -> coefficient`.
fn apply_field(o: &DividedPowerAlgebra, x: &Field, g: &BTreeMap<Vec<u32>, u32>) -> BTreeMap<Vec<u32>, u32> {
    let f = o.f;
    let mut out = BTreeMap::new();
    for ((r, i), &a) in x {
        for (s, &b) in g {
            if let Some(d) = o.partial(*i, s) {
                if let Some((t, c)) = o.mul(r, &d) {
                    let e = out.entry(t).or_insert(0);
                    *e = f.add(*e, f.mul(f.mul(a, b), c));
                }
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// The p-th operator power of a field; for N = 1 the algebra O(n;1) is
/// generated by the `u_i`, so `X^p = Σ X^p(u_i) ∂_i`.
pub fn field_power(o: &DividedPowerAlgebra, x: &Field) -> Field {
    let mut out = Field::new();
    for i in 0..o.n {
        let mut ui = vec![0; o.n];
        ui[i] = 1;
        let mut g = BTreeMap::from([(ui, 1)]);
        for _ in 0..o.f.p() {
            g = apply_field(o, x, &g);
        }
        for (r, c) in g {
            out.insert((r, i), c);
        }
    }
    out
}

pub fn basis_field(r: &[u32], i: usize) -> Field {
    Field::from([((r.to_vec(), i), 1)])
}

fn exp_name(r: &[u32]) -> String {
    r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("")
}

pub fn build_vect(n: usize, p: u32) -> Result<Vect> {
    let o = build_o(n, p)?;
    let f = o.f;
    let mut basis = Vec::new();
    let mut fields = Vec::new();
    for k in 0..o.dim() {
        for i in 0..n {
            basis.push(BasisElem::new(format!("u{}d{}", exp_name(o.exponent(k)), i + 1), Parity::Even));
            fields.push(basis_field(o.exponent(k), i));
        }
    }
    let dim = fields.len();
    let to_vec = |x: &Field| {
        let mut v = vec![0; dim];
        for ((r, i), &c) in x {
            v[o.index_of(r).expect("in range") * n + i] = c;
        }
        v
    };
    let alg = LieSuperAlgebra::from_bracket_fn(f, basis, |a, b| to_vec(&field_bracket(&o, &fields[a], &fields[b])))?;
    let images: Vec<(usize, Vec<u32>)> = (0..dim).map(|j| (j, to_vec(&field_power(&o, &fields[j])))).collect();
    let pmap = jacobson_extend(&alg, &images)?;
    Ok(Vect { o, cat: CatalogAlgebra::new(alg, pmap, None) })
}

/// vect(1;1) at p = 3 with the form `(u^(a)∂, u^(b)∂) -> ∫ u^(a) u^(b)`,
/// i.e. the coefficient of `u^(2)` in the product.
pub fn build_vect11_p3() -> Result<CatalogAlgebra> {
    let v = build_vect(1, 3)?;
    let f = v.o.f;
    let mut g = Mat::zeros(3, 3);
    for a in 0..3u32 {
        for b in 0..3u32 {
            if let Some((t, c)) = v.o.mul(&[a], &[b]) {
                if t == [2] {
                    g.set(a as usize, b as usize, c);
                }
            }
        }
    }
    let _ = f;
    let mut cat = v.cat;
    cat.form = Some(BilForm::new(Parity::Even, g));
    Ok(cat)
}

/// An element description used by the svect tables: `D_{i,j}(u^(r))` or `∂_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elem {
    Field(usize, usize, [u32; 3]),
    Part(usize),
}

/// `D_{i,j}(f) = ∂_j(f)∂_i - ∂_i(f)∂_j`.
pub fn d_ij(o: &DividedPowerAlgebra, i: usize, j: usize, r: &[u32]) -> Field {
    let f = o.f;
    let mut out = Field::new();
    if let Some(a) = o.partial(j, r) {
        add_to(f, &mut out, (a, i), 1);
    }
    if let Some(b) = o.partial(i, r) {
        add_to(f, &mut out, (b, j), f.neg(1));
    }
    out
}

fn elem_field(o: &DividedPowerAlgebra, e: Elem) -> Field {
    match e {
        Elem::Field(i, j, r) => d_ij(o, i, j, &r),
        Elem::Part(k) => basis_field(&[0, 0, 0], k),
    }
}

fn scale_field(f: Fp, x: &Field, c: u32) -> Field {
    x.iter().filter_map(|(k, &v)| {
        let w = f.mul(v, c);
        (w != 0).then(|| (k.clone(), w))
    }).collect()
}

fn field_degree(x: &Field) -> i32 {
    let ((r, _), _) = x.iter().next().expect("nonzero field");
    r.iter().sum::<u32>() as i32 - 1
}

/// svect^(1)(3;1) at p = 3: 52-dimensional, spanned by the `D_{i,j}(u^(r))`.
#[derive(Clone, Debug)]
pub struct Svect {
    pub vect: Vect,
    pub cat: CatalogAlgebra,
    /// Basis vectors in vect(3;1) coordinates.
    pub coords: Coordinates,
    pub degrees: Vec<i32>,
}

impl Svect {
    pub fn coords_of(&self, e: Elem) -> Option<Vec<u32>> {
        self.coords.coords(&self.vect.to_vec(&elem_field(&self.vect.o, e)))
    }
}

const TAU: [u32; 3] = [2, 2, 2];

fn tau_minus(sub: &[(usize, u32)]) -> [u32; 3] {
    let mut t = TAU;
    for &(k, m) in sub {
        t[k] -= m;
    }
    t
}

/// The fixed basis `e1..e52`. Elements named in the cocycle and cubic
/// displays are placed first; the remaining slots of each degree are filled
/// greedily from `D_{i,j}(u^(r))`, `r` lexicographic, `(i,j)` in
/// `(1,2), (1,3), (2,3)` order, after a few preferred vectors that pin down
/// the 2-dimensional weight spaces.
fn svect_basis(o: &DividedPowerAlgebra) -> Vec<Field> {
    let f = o.f;
    let d = |i: usize, j: usize, r: [u32; 3]| d_ij(o, i, j, &r);
    let mut e: Vec<Option<Field>> = vec![None; 53];
    for k in 0..3 {
        e[k + 1] = Some(basis_field(&[0, 0, 0], k));
    }
    e[4] = Some(scale_field(f, &d(0, 1, tau_minus(&[(1, 2), (2, 2)])), 2));
    e[7] = Some(d(1, 2, tau_minus(&[(0, 2), (1, 2)])));
    e[8] = Some(d(0, 2, tau_minus(&[(1, 2), (2, 2)])));
    e[9] = Some(d(1, 2, tau_minus(&[(0, 2), (2, 2)])));
    e[10] = Some(d(0, 1, tau_minus(&[(0, 1), (1, 1), (2, 2)])));
    e[11] = Some(d(0, 2, tau_minus(&[(1, 2), (2, 1), (0, 1)])));
    e[12] = Some(d(1, 2, tau_minus(&[(2, 1), (1, 2)])));
    e[15] = Some(scale_field(f, &d(0, 1, tau_minus(&[(2, 1), (1, 2)])), 2));
    e[17] = Some(d(1, 2, tau_minus(&[(2, 2), (1, 1)])));
    e[20] = Some(d(0, 2, tau_minus(&[(2, 2), (1, 1)])));
    e[21] = Some(d(0, 1, tau_minus(&[(2, 2), (1, 1)])));
    e[22] = Some(d(0, 2, tau_minus(&[(2, 1), (1, 2)])));
    e[28] = Some(d(1, 2, tau_minus(&[(1, 2)])));
    e[32] = Some(d(1, 2, tau_minus(&[(2, 2)])));
    e[37] = Some(d(1, 2, tau_minus(&[(2, 1), (1, 1)])));
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let mut candidates: BTreeMap<i32, Vec<Field>> = BTreeMap::new();
    for k in 0..o.dim() {
        for &(i, j) in &pairs {
            let x = d_ij(o, i, j, o.exponent(k));
            if !x.is_empty() {
                candidates.entry(field_degree(&x)).or_default().push(x);
            }
        }
    }
    let preferred: BTreeMap<i32, Vec<Field>> = BTreeMap::from([
        (2, vec![d(0, 2, [2, 1, 1]), d(1, 2, [1, 2, 1]), d(0, 1, [2, 1, 1]), d(0, 2, [2, 0, 2])]),
        (1, vec![d(1, 2, [0, 2, 1]), d(0, 2, [1, 1, 1])]),
    ]);
    let ranges: [(i32, usize, usize); 6] = [(-1, 1, 3), (0, 4, 11), (1, 12, 26), (2, 27, 41), (3, 42, 49), (4, 50, 52)];
    let dim = o.dim() * o.n;
    let to_vec = |x: &Field| {
        let mut v = vec![0; dim];
        for ((r, i), &c) in x {
            v[o.index_of(r).expect("in range") * o.n + i] = c;
        }
        v
    };
    let mut echelon = crate::exactla::SparseEchelon::new(f, dim);
    for x in e.iter().flatten() {
        echelon.insert(&crate::exactla::to_sparse(&to_vec(x)));
    }
    for (deg, lo, hi) in ranges {
        let mut slots: Vec<usize> = (lo..=hi).filter(|&k| e[k].is_none()).collect();
        slots.reverse();
        let pool = preferred.get(&deg).into_iter().flatten().chain(candidates.get(&deg).into_iter().flatten());
        for x in pool {
            if slots.is_empty() {
                break;
            }
            if echelon.insert(&crate::exactla::to_sparse(&to_vec(x))) {
                e[slots.pop().expect("nonempty")] = Some(x.clone());
            }
        }
        assert!(slots.is_empty(), "svect degree {deg} not filled");
    }
    e.into_iter().skip(1).map(|x| x.expect("filled")).collect()
}

pub fn build_svect1() -> Result<Svect> {
    let vect = build_vect(3, 3)?;
    let o = &vect.o;
    let f = o.f;
    let fields = svect_basis(o);
    let degrees: Vec<i32> = fields.iter().map(field_degree).collect();
    let vecs: Vec<Vec<u32>> = fields.iter().map(|x| vect.to_vec(x)).collect();
    let coords = Coordinates::new(f, vect.cat.alg.dim(), &vecs)?;
    let basis: Vec<BasisElem> = (1..=52).map(|k| BasisElem::new(format!("e{k}"), Parity::Even)).collect();
    let big = &vect.cat.alg;
    let mut closed = true;
    let alg = LieSuperAlgebra::from_bracket_fn(f, basis, |a, b| {
        let w = big.bracket(&vecs[a], &vecs[b]).expect("dims");
        coords.coords(&w).unwrap_or_else(|| {
            closed = false;
            vec![0; 52]
        })
    })?;
    if !closed {
        return Err(Error::Verification("svect span is not closed under the bracket".into()));
    }
    let mut images = Vec::new();
    for (j, v) in vecs.iter().enumerate() {
        let w = crate::restricted::evaluate(big, &vect.cat.pmap, v)?;
        let c = coords.coords(&w).ok_or_else(|| Error::Verification(format!("e{}^[3] leaves svect", j + 1)))?;
        images.push((j, c));
    }
    let pmap: PMap = jacobson_extend(&alg, &images)?;
    let mut sv = Svect { vect, cat: CatalogAlgebra::new(alg, pmap, None), coords, degrees };
    sv.cat.form = Some(svect_form(&sv)?);
    Ok(sv)
}

/// The unique invariant form up to scale, normalized by `B(∂_1, D_{2,3}(u^(τ))) = 1`.
fn svect_form(sv: &Svect) -> Result<BilForm> {
    let alg = &sv.cat.alg;
    let f = alg.field();
    let forms = invariant_forms(alg, Parity::Even);
    if forms.dim() != 1 {
        return Err(Error::Verification(format!("svect has {} invariant forms, expected 1", forms.dim())));
    }
    let g = gram_from_flat(52, &forms.vectors()[0])?;
    let b = BilForm::new(Parity::Even, g);
    let top = sv.coords_of(Elem::Field(1, 2, TAU)).expect("D_23(u^tau) lies in svect");
    let v = b.eval(f, &crate::exactla::unit(52, 0), &top);
    if v == 0 {
        return Err(Error::Verification("svect normalization pairing vanishes".into()));
    }
    Ok(BilForm::new(Parity::Even, b.gram.scale(f, f.inv(v))))
}
