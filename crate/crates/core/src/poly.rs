//! Polynomials over GF(p) with vector-valued coefficients, used to certify
//! identities for all elements at once.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use smallvec::SmallVec;

use crate::exactla::{axpy, Fp, Mat};
use crate::superalg::{LieSuperAlgebra, Parity};

/// Indeterminate index. Block `b` holds variables `b*BLOCK_WIDTH ..`.
pub type Var = u16;

pub const BLOCK_WIDTH: u16 = 4096;

/// Auxiliary indeterminate used for coefficient extraction.
pub const AUX_T: Var = u16::MAX;

/// A second free indeterminate for scalings, disjoint from all blocks in use.
pub const AUX_SCALAR: Var = 14 * BLOCK_WIDTH;

pub fn var(block: u16, i: usize) -> Var {
    assert!(block < 15 && i < BLOCK_WIDTH as usize, "indeterminate out of range");
    block * BLOCK_WIDTH + i as u16
}

/// Sorted multiset of indeterminates.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[Var; 6]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Monomial {
        let mut s = SmallVec::new();
        s.push(v);
        Monomial(s)
    }

    pub fn from_vars(vars: &[Var]) -> Monomial {
        let mut s: SmallVec<[Var; 6]> = vars.iter().copied().collect();
        s.sort_unstable();
        Monomial(s)
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn degree_in(&self, v: Var) -> usize {
        self.0.iter().filter(|&&x| x == v).count()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() {
            return other.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: usize) -> Monomial {
        let mut r = Monomial::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Remove every occurrence of `v`, returning the rest and the exponent.
    pub fn split_off(&self, v: Var) -> (Monomial, usize) {
        let rest: SmallVec<[Var; 6]> = self.0.iter().copied().filter(|&x| x != v).collect();
        let e = self.0.len() - rest.len();
        (Monomial(rest), e)
    }

    /// Exponent map, ascending by indeterminate.
    pub fn exponents(&self) -> Vec<(Var, usize)> {
        let mut out: Vec<(Var, usize)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((w, e)) if *w == v => *e += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|(v, e)| {
                let name = var_name(v);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn var_name(v: Var) -> String {
    if v == AUX_T {
        return "t".into();
    }
    let block = v / BLOCK_WIDTH;
    let i = v % BLOCK_WIDTH;
    let letter = ["l", "m", "n", "k", "u", "v", "w", "s"].get(block as usize).copied().unwrap_or("z");
    format!("{letter}{}", i + 1)
}

/// Scalar polynomial.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(f: Fp, c: u32) -> Poly {
        Poly::monomial(f, Monomial::one(), c)
    }

    pub fn var(v: Var) -> Poly {
        let mut p = Poly::zero();
        p.terms.insert(Monomial::var(v), 1);
        p
    }

    pub fn monomial(f: Fp, m: Monomial, c: u32) -> Poly {
        let mut p = Poly::zero();
        let c = c % f.p();
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, f: Fp, m: Monomial, c: u32) {
        let c = c % f.p();
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let v = f.add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn add(&self, f: Fp, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, &c) in &other.terms {
            r.add_term(f, m.clone(), c);
        }
        r
    }

    pub fn sub(&self, f: Fp, other: &Poly) -> Poly {
        self.add(f, &other.scale(f, f.neg(1)))
    }

    pub fn scale(&self, f: Fp, c: u32) -> Poly {
        let c = c % f.p();
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, &v)| (m.clone(), f.mul(v, c))).collect() }
    }

    pub fn mul(&self, f: Fp, other: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let e = acc.entry(m1.mul(m2)).or_insert(0);
                *e = f.mul_add(*e, c1, c2);
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| *c != 0).collect() }
    }

    pub fn pow(&self, f: Fp, e: u32) -> Poly {
        let mut r = Poly::constant(f, 1);
        for _ in 0..e {
            r = r.mul(f, self);
        }
        r
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Evaluate at a point given by `value(var)`.
    pub fn eval(&self, f: Fp, value: &dyn Fn(Var) -> u32) -> u32 {
        self.terms.iter().fold(0, |acc, (m, &c)| {
            let mv = m.vars().iter().fold(1 % f.p(), |a, &v| f.mul(a, value(v) % f.p()));
            f.mul_add(acc, c, mv)
        })
    }

    /// Replace indeterminates by polynomials; unmapped ones stay.
    pub fn substitute(&self, f: Fp, map: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        let mut cache: HashMap<Var, Poly> = HashMap::new();
        for (m, &c) in &self.terms {
            let mut term = Poly::constant(f, c);
            for &v in m.vars() {
                let image = cache.entry(v).or_insert_with(|| map(v).unwrap_or_else(|| Poly::var(v)));
                term = term.mul(f, image);
            }
            out = out.add(f, &term);
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial with coefficients in GF(p)^n.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyVector {
    dim: usize,
    terms: BTreeMap<Monomial, Vec<u32>>,
}

impl PolyVector {
    pub fn zero(dim: usize) -> PolyVector {
        PolyVector { dim, terms: BTreeMap::new() }
    }

    pub fn constant(v: &[u32]) -> PolyVector {
        let mut r = PolyVector::zero(v.len());
        if v.iter().any(|&x| x != 0) {
            r.terms.insert(Monomial::one(), v.to_vec());
        }
        r
    }

    /// `m * v`.
    pub fn term(m: Monomial, v: Vec<u32>) -> PolyVector {
        let mut r = PolyVector::zero(v.len());
        if v.iter().any(|&x| x != 0) {
            r.terms.insert(m, v);
        }
        r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Vec<u32>> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c * v` at monomial `m`.
    pub fn add_term(&mut self, f: Fp, m: Monomial, c: u32, v: &[u32]) {
        let c = c % f.p();
        if c == 0 || v.iter().all(|&x| x == 0) {
            return;
        }
        let dim = self.dim;
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                axpy(f, o.get_mut(), c, v);
                if o.get().iter().all(|&x| x == 0) {
                    o.remove();
                }
            }
            Entry::Vacant(slot) => {
                let mut w = vec![0; dim];
                axpy(f, &mut w, c, v);
                slot.insert(w);
            }
        }
    }

    pub fn add_assign(&mut self, f: Fp, other: &PolyVector) {
        self.add_scaled(f, 1, other);
    }

    pub fn add_scaled(&mut self, f: Fp, c: u32, other: &PolyVector) {
        assert_eq!(self.dim, other.dim, "PolyVector dimension mismatch");
        for (m, v) in &other.terms {
            self.add_term(f, m.clone(), c, v);
        }
    }

    pub fn add(&self, f: Fp, other: &PolyVector) -> PolyVector {
        let mut r = self.clone();
        r.add_assign(f, other);
        r
    }

    pub fn sub(&self, f: Fp, other: &PolyVector) -> PolyVector {
        let mut r = self.clone();
        r.add_scaled(f, f.neg(1), other);
        r
    }

    pub fn scale(&self, f: Fp, c: u32) -> PolyVector {
        let mut r = PolyVector::zero(self.dim);
        r.add_scaled(f, c, self);
        r
    }

    pub fn mul_poly(&self, f: Fp, q: &Poly) -> PolyVector {
        let mut acc: HashMap<Monomial, Vec<u32>> = HashMap::new();
        for (m1, v) in &self.terms {
            for (m2, &c) in q.terms() {
                let slot = acc.entry(m1.mul(m2)).or_insert_with(|| vec![0; self.dim]);
                axpy(f, slot, c, v);
            }
        }
        PolyVector::from_map(self.dim, acc)
    }

    fn from_map(dim: usize, acc: HashMap<Monomial, Vec<u32>>) -> PolyVector {
        PolyVector { dim, terms: acc.into_iter().filter(|(_, v)| v.iter().any(|&x| x != 0)).collect() }
    }

    pub fn component(&self, i: usize) -> Poly {
        Poly { terms: self.terms.iter().filter(|(_, v)| v[i] != 0).map(|(m, v)| (m.clone(), v[i])).collect() }
    }

    /// Assemble from coordinate polynomials.
    pub fn from_components(f: Fp, comps: &[Poly]) -> PolyVector {
        let mut r = PolyVector::zero(comps.len());
        for (i, c) in comps.iter().enumerate() {
            for (m, &x) in c.terms() {
                let slot = r.terms.entry(m.clone()).or_insert_with(|| vec![0; comps.len()]);
                slot[i] = f.add(slot[i], x);
            }
        }
        r.terms.retain(|_, v| v.iter().any(|&x| x != 0));
        r
    }

    /// Apply a linear map (matrix acting on columns) coefficientwise.
    pub fn apply(&self, f: Fp, m: &Mat) -> PolyVector {
        assert_eq!(m.cols(), self.dim, "matrix does not act on this PolyVector");
        let mut r = PolyVector::zero(m.rows());
        for (mono, v) in &self.terms {
            let w = m.mul_vec(f, v).expect("checked dimension");
            r.add_term(f, mono.clone(), 1, &w);
        }
        r
    }

    pub fn eval(&self, f: Fp, value: &dyn Fn(Var) -> u32) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        for (m, v) in &self.terms {
            let c = m.vars().iter().fold(1 % f.p(), |a, &x| f.mul(a, value(x) % f.p()));
            axpy(f, &mut out, c, v);
        }
        out
    }

    pub fn substitute(&self, f: Fp, map: &dyn Fn(Var) -> Option<Poly>) -> PolyVector {
        let comps: Vec<Poly> = (0..self.dim).map(|i| self.component(i).substitute(f, map)).collect();
        PolyVector::from_components(f, &comps)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).min().unwrap_or(0)
    }

    /// Coefficient vector of the constant monomial.
    pub fn constant_part(&self) -> Vec<u32> {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(|| vec![0; self.dim])
    }

    /// Parities touched by nonzero coefficients.
    pub fn support_parities(&self, alg: &LieSuperAlgebra) -> (bool, bool) {
        let mut even = false;
        let mut odd = false;
        for v in self.terms.values() {
            for (i, &x) in v.iter().enumerate() {
                if x != 0 {
                    match alg.parity(i) {
                        Parity::Even => even = true,
                        Parity::Odd => odd = true,
                    }
                }
            }
        }
        (even, odd)
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, v)| format!("{m:?}*{v:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityFilter {
    All,
    Even,
    Odd,
}

/// `Σ λ_i e_i` over the selected basis elements, `λ_i = var(block, i)`.
pub fn generic_element(alg: &LieSuperAlgebra, filter: ParityFilter, block: u16) -> PolyVector {
    let n = alg.dim();
    let mut r = PolyVector::zero(n);
    for i in 0..n {
        let keep = match filter {
            ParityFilter::All => true,
            ParityFilter::Even => alg.parity(i) == Parity::Even,
            ParityFilter::Odd => alg.parity(i) == Parity::Odd,
        };
        if keep {
            let mut v = vec![0; n];
            v[i] = 1;
            r.terms.insert(Monomial::var(var(block, i)), v);
        }
    }
    r
}

/// Generic element of the span of `vectors`, with indeterminates `var(block, s)`.
pub fn generic_in_span(f: Fp, dim: usize, vectors: &[Vec<u32>], block: u16) -> PolyVector {
    let mut r = PolyVector::zero(dim);
    for (s, v) in vectors.iter().enumerate() {
        r.add_term(f, Monomial::var(var(block, s)), 1, v);
    }
    r
}

/// Bilinear bracket of two PolyVectors.
pub fn poly_bracket(alg: &LieSuperAlgebra, a: &PolyVector, b: &PolyVector) -> PolyVector {
    let f = alg.field();
    let n = alg.dim();
    assert!(a.dim == n && b.dim == n, "poly_bracket: dimension mismatch");
    let sparse_b: Vec<(&Monomial, Vec<(usize, u32)>)> = b
        .terms
        .iter()
        .map(|(m, v)| (m, v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, &x)| (i, x)).collect()))
        .collect();
    let mut acc: HashMap<Monomial, Vec<u32>> = HashMap::new();
    let mut scratch = vec![0u32; n];
    for (m1, v1) in &a.terms {
        let nz1: Vec<(usize, u32)> = v1.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, &x)| (i, x)).collect();
        for (m2, nz2) in &sparse_b {
            let mut touched = false;
            for &(i, x) in &nz1 {
                for &(j, y) in nz2 {
                    let terms = alg.bracket_terms(i, j);
                    if terms.is_empty() {
                        continue;
                    }
                    touched = true;
                    let c = f.mul(x, y);
                    for &(k, z) in terms {
                        scratch[k] = f.mul_add(scratch[k], c, z);
                    }
                }
            }
            if touched {
                let slot = acc.entry(m1.mul(m2)).or_insert_with(|| vec![0; n]);
                for (s, t) in slot.iter_mut().zip(scratch.iter_mut()) {
                    if *t != 0 {
                        *s = f.add(*s, *t);
                        *t = 0;
                    }
                }
            }
        }
    }
    PolyVector::from_map(n, acc)
}

/// Split by the exponent of `aux`: entry `d` is the coefficient of `aux^d`.
pub fn extract_aux_coeffs(f: &PolyVector, aux: Var, max_deg: usize) -> Vec<PolyVector> {
    let mut out = vec![PolyVector::zero(f.dim); max_deg + 1];
    for (m, v) in &f.terms {
        let (rest, e) = m.split_off(aux);
        if e <= max_deg {
            let slot = out[e].terms.entry(rest).or_insert_with(|| vec![0; f.dim]);
            debug_assert!(slot.iter().all(|&x| x == 0));
            slot.copy_from_slice(v);
        }
    }
    out
}

pub fn is_zero(f: &PolyVector) -> bool {
    f.is_zero()
}

/// Scalar polynomial `Σ lhs_i * rhs_i`-style helper: the pairing `u^T G v`.
pub fn pair(f: Fp, gram: &Mat, u: &PolyVector, v: &PolyVector) -> Poly {
    let gv: Vec<(&Monomial, Vec<u32>)> = v.terms.iter().map(|(m, x)| (m, gram.mul_vec(f, x).expect("gram size"))).collect();
    let mut acc: HashMap<Monomial, u32> = HashMap::new();
    for (m1, x) in &u.terms {
        for (m2, y) in &gv {
            let c = crate::exactla::dot(f, x, y);
            if c != 0 {
                let e = acc.entry(m1.mul(m2)).or_insert(0);
                *e = f.add(*e, c);
            }
        }
    }
    Poly { terms: acc.into_iter().filter(|(_, c)| *c != 0).collect() }
}
