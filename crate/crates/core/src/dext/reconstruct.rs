//! Recovering the double-extension data from `𝔤` and a central isotropic `x`.

use super::extend::{extend_algebra, pmap_images};
use super::{build_p, DExtensionData, ExtCase};
use crate::error::{check_dim, Error, Result};
use crate::exactla::{axpy, is_zero_vec, nullspace, unit, Mat, Subspace};
use crate::forms::{orth_complement, BilForm};
use crate::restricted::{evaluate, is_p_ideal, jacobson_extend, PMap};
use crate::superalg::{invert, BasisElem, LieSuperAlgebra};

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub data: DExtensionData,
    pub case: ExtCase,
    /// Columns are `x, a_1, .., a_n, x*` in the original coordinates.
    pub change: Mat,
    pub adapted: LieSuperAlgebra,
    pub adapted_form: BilForm,
    pub adapted_pmap: PMap,
}

fn pre(msg: &str) -> Error {
    Error::Precondition(msg.into())
}

/// Split off `x` as `𝔤 = Kx ⊕ 𝔞 ⊕ Kx*` and read off every parameter.
///
/// Irreducibility of `𝔤` is not checked; only the consequences used here
/// (`x` central, isotropic, `x^⊥` a p-ideal) are.
pub fn reconstruct(g: &LieSuperAlgebra, form: &BilForm, pm: &PMap, x: &[u32]) -> Result<Reconstruction> {
    let f = g.field();
    let big = g.dim();
    check_dim(big, x.len())?;
    if is_zero_vec(x) {
        return Err(pre("x is zero"));
    }
    let px = g.vector_parity(x).ok_or_else(|| pre("x is not homogeneous"))?;
    if !g.ad(x)?.is_zero() {
        return Err(pre("x is not central"));
    }
    if form.eval(f, x, x) != 0 {
        return Err(pre("x is not isotropic"));
    }
    let span_x = Subspace::from_vectors(f, big, &[x.to_vec()])?;
    let xperp = orth_complement(g, form, &span_x)?;
    if !is_p_ideal(g, pm, &xperp)? {
        return Err(pre("the orthogonal complement of x is not a p-ideal"));
    }
    let pxs = px + form.parity;
    let cov = form.covector(f, x);
    let k = (0..big)
        .find(|&k| cov[k] != 0 && g.parity(k) == pxs)
        .ok_or_else(|| pre("no partner x* with B(x, x*) = 1"))?;
    let mut xs = unit(big, k);
    xs[k] = f.inv(cov[k]);
    if f.p() != 2 {
        let c = f.mul(form.eval(f, &xs, &xs), f.inv(2));
        axpy(f, &mut xs, f.neg(c), x);
    }
    let rows = vec![cov.clone(), form.covector(f, &xs)];
    let a_space = nullspace(f, &Mat::from_rows(big, &rows)?);
    let n = a_space.dim();
    if n + 2 != big {
        return Err(pre("x and x* do not span a non-degenerate plane"));
    }
    let a_vecs = a_space.vectors();
    let mut a_basis = Vec::with_capacity(n);
    for (i, v) in a_vecs.iter().enumerate() {
        let parity = g.vector_parity(v).ok_or_else(|| pre("complement basis is not homogeneous"))?;
        let support: Vec<usize> = (0..big).filter(|&j| v[j] != 0).collect();
        let name = if support.len() == 1 && v[support[0]] == 1 { g.name(support[0]).to_string() } else { format!("a{}", i + 1) };
        a_basis.push(BasisElem::new(name, parity));
    }
    let mut cols = vec![x.to_vec()];
    cols.extend(a_vecs.iter().cloned());
    cols.push(xs.clone());
    let change = Mat::from_cols(big, &cols)?;
    let inv = invert(f, &change).ok_or_else(|| pre("adapted basis is singular"))?;
    let mut basis = vec![BasisElem::new("x", px)];
    basis.extend(a_basis.iter().cloned());
    basis.push(BasisElem::new("x*", pxs));
    let adapted = g.change_basis(&change, basis)?;
    let adapted_gram = change.transpose().mul(f, &form.gram)?.mul(f, &change)?;
    let adapted_form = BilForm::new(form.parity, adapted_gram.clone());
    let mut images = Vec::new();
    for j in adapted.even_indices() {
        let img = evaluate(g, pm, &cols[j])?;
        images.push((j, inv.mul_vec(f, &img)?));
    }
    let adapted_pmap = jacobson_extend(&adapted, &images)?;

    let xsi = big - 1;
    let proj = |v: &[u32]| v[1..=n].to_vec();
    let base = LieSuperAlgebra::from_bracket_fn(f, a_basis, |i, j| proj(&adapted.bracket_basis(i + 1, j + 1)))?;
    let d_cols: Vec<Vec<u32>> = (0..n).map(|j| proj(&adapted.bracket_basis(xsi, j + 1))).collect();
    let d = Mat::from_cols(n, &d_cols)?;
    let mut a_gram = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a_gram.set(i, j, adapted_gram.get(i + 1, j + 1));
        }
    }
    let a_form = BilForm::new(form.parity, a_gram);
    let case = ExtCase::detect(&base, form.parity, pxs);
    let mut base_images = Vec::new();
    let mut p_values = vec![0; n];
    for j in base.even_indices() {
        let img = adapted_pmap.image(j + 1).expect("even index");
        base_images.push((j, proj(img)));
        if case.has_p_cubic() {
            p_values[j] = img[0];
        }
    }
    let base_pmap = jacobson_extend(&base, &base_images)?;
    let mut data = DExtensionData::new(base, base_pmap, a_form, d, pxs);
    data.p_cubic = build_p(&data.base, Some(&p_values))?;
    if pxs.is_odd() {
        let sq = adapted.bracket_basis(xsi, xsi);
        data.b0 = proj(&sq).iter().map(|&c| f.mul(c, f.inv(2))).collect();
        if case == ExtCase::OddBOddD {
            data.lambda0 = sq[0];
        }
    } else {
        let img = adapted_pmap.image(xsi).expect("x* even");
        data.a0 = proj(img);
        data.l = if px.is_odd() { 0 } else { img[0] };
        data.gamma = img[xsi];
    }
    if !px.is_odd() {
        let img = adapted_pmap.image(0).expect("x even");
        if img[xsi] != 0 {
            return Err(Error::Unsupported("x^[p] has an x* component".into()));
        }
        data.m = img[0];
        data.c0 = proj(img);
    }
    if f.p() == 2 {
        data.bxx = adapted_gram.get(xsi, xsi);
    }

    let (g2, b2) = extend_algebra(&data, case)?;
    let pm2 = jacobson_extend(&g2, &pmap_images(&data, case, &g2))?;
    if g2.structure_constants() != adapted.structure_constants() {
        return Err(Error::Verification("re-extension does not reproduce the brackets".into()));
    }
    if b2.gram != adapted_form.gram {
        return Err(Error::Verification("re-extension does not reproduce the form".into()));
    }
    if pm2 != adapted_pmap {
        return Err(Error::Verification("re-extension does not reproduce the p-map".into()));
    }
    Ok(Reconstruction { data, case, change, adapted, adapted_form, adapted_pmap })
}
