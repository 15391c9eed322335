//! Building `𝔤 = Kx ⊕ 𝔞 ⊕ Kx*` with its form and p-map.

use super::{check_conditions, pcubic::sigma_coeffs, ConditionReport, DExtensionData, ExtCase};
use crate::error::{Error, Result};
use crate::exactla::{unit, Mat};
use crate::forms::{is_nis, BilForm};
use crate::poly::{generic_element, ParityFilter, PolyVector};
use crate::restricted::{jacobson_extend, s_coeffs, verify_pmap, PMap, PMapReport};
use crate::superalg::{AlgebraBuilder, AxiomReport, BasisElem, LieSuperAlgebra, Parity};

/// A constructed double extension with its verification results.
#[derive(Clone, Debug)]
pub struct DoubleExtension {
    pub alg: LieSuperAlgebra,
    pub form: BilForm,
    /// Absent only for a tolerated pre-Lie construction where (StarT) fails.
    pub pmap: Option<PMap>,
    pub case: ExtCase,
    pub conditions: ConditionReport,
    pub axioms: AxiomReport,
    pub nis: bool,
    pub pmap_report: Option<PMapReport>,
}

impl DoubleExtension {
    pub const X: usize = 0;

    /// Dimension of `𝔞`.
    pub fn base_dim(&self) -> usize {
        self.alg.dim() - 2
    }

    pub fn xstar(&self) -> usize {
        self.alg.dim() - 1
    }

    pub fn pmap(&self) -> Result<&PMap> {
        self.pmap.as_ref().ok_or_else(|| Error::Unsupported("this extension carries no p-structure".into()))
    }

    pub fn embed(&self, v: &[u32]) -> Vec<u32> {
        embed(v)
    }

    /// The `𝔞`-coordinates of a vector of `𝔤`.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        v[1..v.len() - 1].to_vec()
    }
}

pub(crate) fn embed(v: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(v.len() + 2);
    out.push(0);
    out.extend_from_slice(v);
    out.push(0);
    out
}

pub(crate) fn embed_poly(f: crate::exactla::Fp, v: &PolyVector) -> PolyVector {
    let n = v.dim();
    let mut out = PolyVector::zero(n + 2);
    for (m, c) in v.terms() {
        out.add_term(f, m.clone(), 1, &embed(c));
    }
    out
}

fn fresh_name(base: &LieSuperAlgebra, want: &str) -> String {
    let mut name = want.to_string();
    while base.index_of(&name).is_some() {
        name.push('\'');
    }
    name
}

/// Brackets and form of the extension, without any p-structure or checks.
pub fn extend_algebra(data: &DExtensionData, case: ExtCase) -> Result<(LieSuperAlgebra, BilForm)> {
    data.check_sizes()?;
    let a = &data.base;
    let f = a.field();
    let n = a.dim();
    let (px, pxs) = case.xy_parities();
    let xs = n + 1;
    let mut basis = vec![BasisElem::new(fresh_name(a, "x"), px)];
    basis.extend(a.basis().iter().cloned());
    basis.push(BasisElem::new(fresh_name(a, "x*"), pxs));
    let mut b = AlgebraBuilder::new(f, basis);
    let omega_sign = match case {
        ExtCase::EvenBOddD => f.neg(1),
        _ => 1,
    };
    let d_cols: Vec<Vec<u32>> = (0..n).map(|j| data.d.col(j)).collect();
    for i in 0..n {
        for j in i..n {
            if i == j && !a.parity(i).is_odd() {
                continue;
            }
            let mut v = embed(&a.bracket_basis(i, j));
            v[0] = f.mul(omega_sign, data.form.eval(f, &d_cols[i], &unit(n, j)));
            b.add_vec(i + 1, j + 1, &v)?;
        }
    }
    for j in 0..n {
        let mut v = embed(&d_cols[j]);
        let bb = data.form.eval(f, &unit(n, j), &data.b0);
        let corr = match case {
            ExtCase::EvenBOddD => f.mul(2, bb),
            ExtCase::OddBOddD => f.mul(f.sign(a.parity(j).is_odd()), f.mul(2, bb)),
            _ => 0,
        };
        v[0] = f.sub(v[0], corr);
        b.add_vec(xs, j + 1, &v)?;
    }
    if pxs.is_odd() {
        let mut v = embed(&data.b0.iter().map(|&c| f.mul(2, c)).collect::<Vec<_>>());
        if case == ExtCase::OddBOddD {
            v[0] = data.lambda0 % f.p();
        }
        b.add_vec(xs, xs, &v)?;
    }
    let g = b.build()?;
    let mut gram = Mat::zeros(n + 2, n + 2);
    for i in 0..n {
        for j in 0..n {
            gram.set(i + 1, j + 1, data.form.entry(i, j));
        }
    }
    gram.set(0, xs, 1);
    gram.set(xs, 0, f.sign(px.is_odd() && pxs.is_odd()));
    if f.p() == 2 {
        gram.set(xs, xs, data.bxx % 2);
    }
    Ok((g, BilForm::new(data.form.parity, gram)))
}

/// The p-map images on the even basis of `𝔤` prescribed for `case`.
pub(crate) fn pmap_images(data: &DExtensionData, case: ExtCase, g: &LieSuperAlgebra) -> Vec<(usize, Vec<u32>)> {
    let a = &data.base;
    let f = a.field();
    let n = a.dim();
    let xs = n + 1;
    let mut out = Vec::new();
    if g.parity(0) == Parity::Even {
        let mut v = embed(&data.c0);
        v[0] = data.m % f.p();
        out.push((0, v));
    }
    for (j, img) in data.pmap.images() {
        let mut v = embed(&img);
        if case.has_p_cubic() {
            v[0] = data.p_cubic.basis_values[j] % f.p();
        }
        out.push((j + 1, v));
    }
    if g.parity(xs) == Parity::Even {
        let mut v = embed(&data.a0);
        if g.parity(0) == Parity::Even {
            v[0] = data.l % f.p();
        }
        v[xs] = data.gamma % f.p();
        out.push((xs, v));
    }
    out.sort_by_key(|(j, _)| *j);
    out
}

/// Check the hypotheses, build `𝔤`, and re-verify it end to end.
///
/// With `allow_pre_lie`, failures of the characteristic-3 cubic conditions
/// are tolerated and the result may be pre-Lie; if (StarT) fails as well,
/// the result carries no p-structure.
pub fn double_extend(data: &DExtensionData, case: ExtCase, allow_pre_lie: bool) -> Result<DoubleExtension> {
    let conditions = check_conditions(data, case)?;
    if !conditions.ok() && !(allow_pre_lie && conditions.ok_except_p3()) {
        let names: Vec<&str> = conditions.failed().iter().map(|c| c.name).collect();
        return Err(Error::Precondition(format!("conditions failed for {case}: {}", names.join(", "))));
    }
    let (alg, form) = extend_algebra(data, case)?;
    let star_ok = conditions.get("StarT").map_or(true, |c| c.passed);
    let pmap = if star_ok { Some(jacobson_extend(&alg, &pmap_images(data, case, &alg))?) } else { None };
    let axioms = alg.check_axioms();
    let nis = is_nis(&alg, &form);
    let pmap_report = pmap.as_ref().map(|pm| verify_pmap(&alg, pm));
    let pmap_ok = pmap_report.as_ref().map_or(true, PMapReport::ok);
    let structure_ok = axioms.is_lie || (allow_pre_lie && axioms.is_pre_lie_only);
    if !nis || !pmap_ok || !structure_ok {
        return Err(Error::Verification(format!(
            "extension fails re-verification: nis={nis} lie={} pre_lie_only={} pmap_ok={pmap_ok}",
            axioms.is_lie, axioms.is_pre_lie_only
        )));
    }
    Ok(DoubleExtension { alg, form, pmap, case, conditions, axioms, nis, pmap_report })
}

/// `s_i^𝔤(a,b) = s_i^𝔞(a,b) + σ_i(a,b) x` for generic even `a, b ∈ 𝔞`.
///
/// The `σ` term is present exactly when `ℬ(𝒟a, b)` can be nonzero on even
/// elements: even `𝒟` for even `ℬ`, odd `𝒟` for odd `ℬ`.
pub fn lemma_s_sigma_holds(ext: &DoubleExtension, data: &DExtensionData) -> bool {
    let a_alg = &data.base;
    let f = a_alg.field();
    let a = generic_element(a_alg, ParityFilter::Even, 0);
    let b = generic_element(a_alg, ParityFilter::Even, 1);
    let s_a = s_coeffs(a_alg, &a, &b);
    let s_g = s_coeffs(&ext.alg, &embed_poly(f, &a), &embed_poly(f, &b));
    let sig = sigma_coeffs(a_alg, &data.form, &data.d, &a, &b);
    let x = PolyVector::constant(&unit(ext.alg.dim(), 0));
    s_a.iter().zip(&s_g).zip(&sig).all(|((sa, sg), si)| {
        let mut rhs = embed_poly(f, sa);
        if ext.case.has_p_cubic() {
            rhs.add_assign(f, &x.mul_poly(f, si));
        }
        *sg == rhs
    })
}
