//! p-structures (and p|2p-structures on superalgebras).

use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::exactla::{solve, Fp, Mat, Subspace};
use crate::poly::{
    extract_aux_coeffs, generic_element, generic_in_span, poly_bracket, Monomial, ParityFilter, Poly, PolyVector, AUX_SCALAR, AUX_T,
};
use crate::superalg::{LieSuperAlgebra, Quotient};

/// Images `e_j^{[p]}` of the even basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMap {
    dim: usize,
    images: Vec<Option<Vec<u32>>>,
}

impl PMap {
    pub fn image(&self, j: usize) -> Option<&[u32]> {
        self.images[j].as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(j, e_j^{[p]})` for every even `j`, ascending.
    pub fn images(&self) -> Vec<(usize, Vec<u32>)> {
        self.images.iter().enumerate().filter_map(|(j, v)| v.clone().map(|v| (j, v))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().flatten().all(|v| v.iter().all(|&x| x == 0))
    }
}

/// Validate basis images and build the unique p-map they determine.
pub fn jacobson_extend(alg: &LieSuperAlgebra, images: &[(usize, Vec<u32>)]) -> Result<PMap> {
    let n = alg.dim();
    let f = alg.field();
    if f.p() == 2 && !alg.odd_indices().is_empty() {
        return Err(Error::Unsupported("p|2p-structures for p = 2 superalgebras".into()));
    }
    let mut slots: Vec<Option<Vec<u32>>> = vec![None; n];
    for (j, v) in images {
        if *j >= n {
            return Err(Error::Input(format!("p-map image index {j} out of range")));
        }
        check_dim(n, v.len())?;
        if alg.parity(*j).is_odd() {
            return Err(Error::Input(format!("p-map image given for odd element {}", alg.name(*j))));
        }
        if slots[*j].is_some() {
            return Err(Error::Input(format!("p-map image for {} given twice", alg.name(*j))));
        }
        if alg.vector_parity(v) != Some(crate::superalg::Parity::Even) {
            return Err(Error::Input(format!("p-map image of {} is not even", alg.name(*j))));
        }
        slots[*j] = Some(v.iter().map(|&x| x % f.p()).collect());
    }
    for j in alg.even_indices() {
        let Some(v) = &slots[j] else {
            return Err(Error::Input(format!("p-map image missing for {}", alg.name(j))));
        };
        let lhs = alg.ad(v)?;
        let rhs = alg.ad_basis(j).pow(f, f.p())?;
        if lhs != rhs {
            return Err(Error::AdCondition { index: j, defect: Box::new(lhs.sub(f, &rhs)?) });
        }
    }
    Ok(PMap { dim: n, images: slots })
}

/// `s_i(a, b)` for `i = 1..p-1`, from `(ad_{ta+b})^{p-1}(a) = Σ i s_i t^{i-1}`.
pub fn s_coeffs(alg: &LieSuperAlgebra, a: &PolyVector, b: &PolyVector) -> Vec<PolyVector> {
    let f = alg.field();
    let p = f.p() as usize;
    let mut x = a.mul_poly(f, &Poly::var(AUX_T));
    x.add_assign(f, b);
    let mut cur = a.clone();
    for _ in 0..p - 1 {
        cur = poly_bracket(alg, &x, &cur);
    }
    let coeffs = extract_aux_coeffs(&cur, AUX_T, p - 2);
    coeffs.iter().enumerate().map(|(k, c)| c.scale(f, f.inv((k + 1) as u32))).collect()
}

fn check_even_support(alg: &LieSuperAlgebra, a: &PolyVector) -> Result<()> {
    if a.support_parities(alg).1 {
        return Err(Error::Input("p-map evaluation needs an even element (use evaluate_2p for odd ones)".into()));
    }
    Ok(())
}

/// Peel basis terms in `order`: `(c e_j + r)^{[p]} = c^p e_j^{[p]} + r^{[p]} + Σ s_i(c e_j, r)`.
pub fn evaluate_ordered(alg: &LieSuperAlgebra, pm: &PMap, a: &PolyVector, order: &[usize]) -> Result<PolyVector> {
    check_dim(alg.dim(), a.dim())?;
    check_even_support(alg, a)?;
    peel(alg, a, order, alg.dim(), |j| pm.image(j).map(PolyVector::constant), |u, v| s_coeffs(alg, u, v))
}

/// Shared peeling recursion; `base(j)` is the value on `e_j` and `corr` the
/// correction terms for a split `u + v`.
pub(crate) fn peel(
    alg: &LieSuperAlgebra,
    a: &PolyVector,
    order: &[usize],
    out_dim: usize,
    base: impl Fn(usize) -> Option<PolyVector>,
    corr: impl Fn(&PolyVector, &PolyVector) -> Vec<PolyVector>,
) -> Result<PolyVector> {
    let f = alg.field();
    let n = alg.dim();
    let mut seen = vec![false; n];
    for &j in order {
        if j >= n || seen[j] {
            return Err(Error::Input("peeling order is not a permutation".into()));
        }
        seen[j] = true;
    }
    let comps: Vec<Poly> = (0..n).map(|i| a.component(i)).collect();
    for (i, c) in comps.iter().enumerate() {
        if !seen[i] && !c.is_zero() {
            return Err(Error::Input(format!("peeling order omits a supported index {i}")));
        }
    }
    let mut rest = a.clone();
    let mut out: Option<PolyVector> = None;
    for &j in order {
        if comps[j].is_zero() {
            continue;
        }
        let mut ej = vec![0; n];
        ej[j] = 1;
        let term = PolyVector::constant(&ej).mul_poly(f, &comps[j]);
        rest = rest.sub(f, &term);
        let bj = base(j).ok_or_else(|| Error::Input(format!("no base value for index {j}")))?;
        let mut piece = bj.mul_poly(f, &comps[j].pow(f, f.p()));
        for s in corr(&term, &rest) {
            piece.add_assign(f, &s);
        }
        match &mut out {
            Some(o) => o.add_assign(f, &piece),
            None => out = Some(piece),
        }
    }
    Ok(out.unwrap_or_else(|| PolyVector::zero(out_dim)))
}

pub fn evaluate_poly(alg: &LieSuperAlgebra, pm: &PMap, a: &PolyVector) -> Result<PolyVector> {
    let order: Vec<usize> = (0..alg.dim()).collect();
    evaluate_ordered(alg, pm, a, &order)
}

pub fn evaluate(alg: &LieSuperAlgebra, pm: &PMap, a: &[u32]) -> Result<Vec<u32>> {
    check_dim(alg.dim(), a.len())?;
    Ok(evaluate_poly(alg, pm, &PolyVector::constant(a))?.constant_part())
}

/// Generic even element raised to the p-th power.
pub fn evaluate_symbolic(alg: &LieSuperAlgebra, pm: &PMap) -> PolyVector {
    evaluate_poly(alg, pm, &generic_element(alg, ParityFilter::Even, 0)).expect("generic even element is even")
}

/// `a -> (a^2)^{[p]}` on odd elements, with `a^2 = [a,a]/2`.
pub fn evaluate_2p(alg: &LieSuperAlgebra, pm: &PMap, a: &[u32]) -> Result<Vec<u32>> {
    let f = alg.field();
    if f.p() == 2 {
        return Err(Error::Unsupported("[2p] map at p = 2".into()));
    }
    if alg.vector_parity(a) != Some(crate::superalg::Parity::Odd) && a.iter().any(|&x| x != 0) {
        return Err(Error::Input("evaluate_2p needs an odd element".into()));
    }
    let sq: Vec<u32> = alg.bracket(a, a)?.iter().map(|&x| f.mul(x, f.inv(2))).collect();
    evaluate(alg, pm, &sq)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PMapDefect {
    AdBasis { index: usize },
    AdSymbolic { column: usize },
    Additivity(PolyVector),
    OrderDependence(PolyVector),
    Homogeneity(PolyVector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMapReport {
    pub ad_basis: bool,
    pub ad_symbolic: bool,
    pub homogeneous: bool,
    pub additive: bool,
    pub order_independent: bool,
    pub defects: Vec<PMapDefect>,
}

impl PMapReport {
    pub fn ok(&self) -> bool {
        self.ad_basis && self.ad_symbolic && self.homogeneous && self.additive && self.order_independent
    }
}

impl fmt::Display for PMapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ad_basis={} ad_symbolic={} homogeneous={} additive={} order_independent={}",
            self.ad_basis, self.ad_symbolic, self.homogeneous, self.additive, self.order_independent
        )
    }
}

/// `(ad a)^k b` for PolyVectors.
pub fn ad_power(alg: &LieSuperAlgebra, a: &PolyVector, b: &PolyVector, k: u32) -> PolyVector {
    let mut cur = b.clone();
    for _ in 0..k {
        cur = poly_bracket(alg, a, &cur);
    }
    cur
}

/// Check the Jacobson axioms as polynomial identities.
pub fn verify_pmap(alg: &LieSuperAlgebra, pm: &PMap) -> PMapReport {
    let f = alg.field();
    let n = alg.dim();
    let p = f.p();
    let mut defects = Vec::new();
    let mut ad_basis = true;
    for (j, v) in pm.images() {
        let ok = alg.ad(&v).ok() == alg.ad_basis(j).pow(f, p).ok();
        if !ok {
            ad_basis = false;
            defects.push(PMapDefect::AdBasis { index: j });
        }
    }
    let a = generic_element(alg, ParityFilter::Even, 0);
    let ap = evaluate_poly(alg, pm, &a).expect("generic element is even");
    let mut ad_symbolic = true;
    for k in 0..n {
        let mut ek = vec![0; n];
        ek[k] = 1;
        let ekp = PolyVector::constant(&ek);
        let lhs = poly_bracket(alg, &ap, &ekp);
        let rhs = ad_power(alg, &a, &ekp, p);
        if lhs != rhs {
            ad_symbolic = false;
            defects.push(PMapDefect::AdSymbolic { column: k });
            break;
        }
    }
    // (t a)^{[p]} = t^p a^{[p]}
    let ta = a.mul_poly(f, &Poly::var(AUX_SCALAR));
    let tap = evaluate_poly(alg, pm, &ta).expect("even");
    let expected = ap.mul_poly(f, &Poly::monomial(f, Monomial::var(AUX_SCALAR).pow(p as usize), 1));
    let homogeneous = tap == expected;
    if !homogeneous {
        defects.push(PMapDefect::Homogeneity(tap.sub(f, &expected)));
    }
    let b = generic_element(alg, ParityFilter::Even, 1);
    let sum = a.add(f, &b);
    let mut defect = evaluate_poly(alg, pm, &sum).expect("even");
    defect = defect.sub(f, &ap);
    defect = defect.sub(f, &evaluate_poly(alg, pm, &b).expect("even"));
    for s in s_coeffs(alg, &a, &b) {
        defect = defect.sub(f, &s);
    }
    let additive = defect.is_zero();
    if !additive {
        defects.push(PMapDefect::Additivity(defect));
    }
    let rev: Vec<usize> = (0..n).rev().collect();
    let ap_rev = evaluate_ordered(alg, pm, &a, &rev).expect("even");
    let order_independent = ap_rev == ap;
    if !order_independent {
        defects.push(PMapDefect::OrderDependence(ap_rev.sub(f, &ap)));
    }
    PMapReport { ad_basis, ad_symbolic, homogeneous, additive, order_independent, defects }
}

/// `D(a^{[p]}) - (ad a)^{p-1}(D a)` for a generic even `a`.
pub fn restricted_defect(alg: &LieSuperAlgebra, pm: &PMap, d: &Mat) -> Result<PolyVector> {
    check_dim(alg.dim(), d.rows())?;
    check_dim(alg.dim(), d.cols())?;
    let f = alg.field();
    let a = generic_element(alg, ParityFilter::Even, 0);
    let ap = evaluate_poly(alg, pm, &a)?;
    let lhs = ap.apply(f, d);
    let rhs = ad_power(alg, &a, &a.apply(f, d), f.p() - 1);
    Ok(lhs.sub(f, &rhs))
}

pub fn is_restricted_derivation(alg: &LieSuperAlgebra, pm: &PMap, d: &Mat) -> Result<bool> {
    Ok(restricted_defect(alg, pm, d)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPropertyWitness {
    pub gamma: u32,
    pub a0: Vec<u32>,
    /// Other admissible `a0` differ from this one by an element here.
    pub freedom: Subspace,
}

/// Find `γ` (ascending) and even `a0` with `D^p = γD + ad(a0)` and `D a0 = 0`.
pub fn p_property(alg: &LieSuperAlgebra, d: &Mat) -> Result<Option<PPropertyWitness>> {
    let n = alg.dim();
    let f = alg.field();
    check_dim(n, d.rows())?;
    check_dim(n, d.cols())?;
    let evens = alg.even_indices();
    let dp = d.pow(f, f.p())?;
    // unknowns: coordinates of a0 on even basis elements
    let m = evens.len();
    let mut sys = Mat::zeros(n * n + n, m);
    for (c, &i) in evens.iter().enumerate() {
        for k in 0..n {
            for &(t, v) in alg.bracket_terms(i, k) {
                sys.set(k * n + t, c, v);
            }
        }
        for t in 0..n {
            sys.set(n * n + t, c, d.get(t, i));
        }
    }
    for gamma in 0..f.p() {
        let target = dp.sub(f, &d.scale(f, gamma))?;
        let mut rhs = vec![0; n * n + n];
        for k in 0..n {
            for t in 0..n {
                rhs[k * n + t] = target.get(t, k);
            }
        }
        if let Some((x, hom)) = solve(f, &sys, &rhs)? {
            let lift = |coords: &[u32]| {
                let mut v = vec![0; n];
                for (c, &i) in evens.iter().enumerate() {
                    v[i] = coords[c];
                }
                v
            };
            let freedom = Subspace::from_vectors(f, n, &hom.vectors().iter().map(|h| lift(h)).collect::<Vec<_>>())?;
            return Ok(Some(PPropertyWitness { gamma, a0: lift(&x), freedom }));
        }
    }
    Ok(None)
}

/// Closure of `I ∩ 𝔞_ev` under the p-map, checked on a generic element.
pub fn is_p_ideal(alg: &LieSuperAlgebra, pm: &PMap, ideal: &Subspace) -> Result<bool> {
    let f = alg.field();
    if !alg.is_ideal(ideal)? {
        return Err(Error::Input("is_p_ideal: subspace is not an ideal".into()));
    }
    let evens = Subspace::from_vectors(
        f,
        alg.dim(),
        &alg.even_indices().iter().map(|&i| crate::exactla::unit(alg.dim(), i)).collect::<Vec<_>>(),
    )?;
    let even_part = ideal.intersection(f, &evens)?;
    if even_part.dim() == 0 {
        return Ok(true);
    }
    let g = generic_in_span(f, alg.dim(), &even_part.vectors(), 5);
    let gp = evaluate_poly(alg, pm, &g)?;
    for v in gp.terms().values() {
        if !ideal.contains(f, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quotient algebra with its induced p-map.
pub fn quotient_pmap(alg: &LieSuperAlgebra, pm: &PMap, ideal: &Subspace) -> Result<(Quotient, PMap)> {
    if !is_p_ideal(alg, pm, ideal)? {
        return Err(Error::Input("quotient_pmap: not a p-ideal".into()));
    }
    let q = alg.quotient(ideal)?;
    let f = alg.field();
    let images: Vec<(usize, Vec<u32>)> = q
        .alg
        .even_indices()
        .into_iter()
        .map(|r| {
            let v = pm.image(q.reps[r]).expect("representative is even");
            (r, q.proj.mul_vec(f, v).expect("dims"))
        })
        .collect();
    let qpm = jacobson_extend(&q.alg, &images)?;
    Ok((q, qpm))
}

/// Helper for callers working with `Fp` vectors.
pub fn frobenius_twist(f: Fp, v: &[u32]) -> Vec<u32> {
    v.iter().map(|&x| f.pow(x, u64::from(f.p()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{AlgebraBuilder, BasisElem, Parity};

    fn hei2() -> LieSuperAlgebra {
        let f = Fp::new(2).unwrap();
        let basis = ["p", "q", "z"].iter().map(|n| BasisElem::new(*n, Parity::Even)).collect();
        let mut b = AlgebraBuilder::new(f, basis);
        b.add(0, 1, 2, 1).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn heisenberg_pmaps() {
        let h = hei2();
        let ok = jacobson_extend(&h, &[(0, vec![0, 0, 0]), (1, vec![0, 0, 0]), (2, vec![0, 0, 1])]).unwrap();
        let rep = verify_pmap(&h, &ok);
        assert!(rep.ok(), "{rep} {:?}", rep.defects);
        let zero = jacobson_extend(&h, &[(0, vec![0, 0, 0]), (1, vec![0, 0, 0]), (2, vec![0, 0, 0])]).unwrap();
        assert!(verify_pmap(&h, &zero).ok());
        let bad = jacobson_extend(&h, &[(0, vec![0, 0, 0]), (1, vec![0, 0, 0]), (2, vec![1, 0, 0])]);
        assert!(matches!(bad, Err(Error::AdCondition { index: 2, .. })));
        // (p+q)^{[2]} = [q,p] = z at p = 2
        assert_eq!(evaluate(&h, &ok, &[1, 1, 0]).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn s_coeffs_p2_is_bracket() {
        let h = hei2();
        let f = h.field();
        let a = generic_element(&h, ParityFilter::All, 0);
        let b = generic_element(&h, ParityFilter::All, 1);
        let s = s_coeffs(&h, &a, &b);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0], poly_bracket(&h, &b, &a));
        let _ = f;
    }
}
