//! The degree-p form `𝒫` on `𝔞_ev` with `𝒫(a+b) - 𝒫(a) - 𝒫(b) = Σ σ_i(a,b)`.

use crate::error::{check_dim, Error, Result};
use crate::exactla::Mat;
use crate::forms::BilForm;
use crate::poly::{generic_element, pair, poly_bracket, var, Monomial, ParityFilter, Poly, PolyVector, Var, AUX_T};
use crate::restricted::peel;
use crate::superalg::LieSuperAlgebra;

/// `𝒫` by its values on the even basis; an explicit polynomial in the
/// coordinates `var(0, i)` may be attached and is then used for evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCubicMap {
    pub basis_values: Vec<u32>,
    pub explicit: Option<Poly>,
}

impl PCubicMap {
    pub fn zero(n: usize) -> PCubicMap {
        PCubicMap { basis_values: vec![0; n], explicit: None }
    }

    /// Basis values are read off as the coefficients of `λ_i^p`.
    pub fn from_poly(alg: &LieSuperAlgebra, poly: Poly) -> PCubicMap {
        let f = alg.field();
        let basis_values = (0..alg.dim())
            .map(|i| if alg.parity(i).is_odd() { 0 } else { poly.coeff(&Monomial::var(var(0, i)).pow(f.p() as usize)) })
            .collect();
        PCubicMap { basis_values, explicit: Some(poly) }
    }

    pub fn is_zero(&self) -> bool {
        self.basis_values.iter().all(|&v| v == 0) && self.explicit.as_ref().map_or(true, Poly::is_zero)
    }

    /// `𝒫(a)` for an even (symbolic) element.
    pub fn eval_poly(&self, alg: &LieSuperAlgebra, form: &BilForm, d: &Mat, a: &PolyVector) -> Result<Poly> {
        match &self.explicit {
            Some(q) => Ok(substitute_coords(alg, q, a)),
            None => self.peel_ordered(alg, form, d, a, &(0..alg.dim()).collect::<Vec<_>>()),
        }
    }

    pub fn eval(&self, alg: &LieSuperAlgebra, form: &BilForm, d: &Mat, a: &[u32]) -> Result<u32> {
        check_dim(alg.dim(), a.len())?;
        let v = self.eval_poly(alg, form, d, &PolyVector::constant(a))?;
        Ok(v.coeff(&Monomial::one()))
    }

    /// The peeling recursion on the basis values, in the given order.
    pub fn peel_ordered(
        &self,
        alg: &LieSuperAlgebra,
        form: &BilForm,
        d: &Mat,
        a: &PolyVector,
        order: &[usize],
    ) -> Result<Poly> {
        check_dim(alg.dim(), a.dim())?;
        if a.support_parities(alg).1 {
            return Err(Error::Input("𝒫 is defined on even elements only".into()));
        }
        let f = alg.field();
        let out = peel(
            alg,
            a,
            order,
            1,
            |j| Some(PolyVector::constant(&[self.basis_values[j] % f.p()])),
            |u, v| {
                sigma_coeffs(alg, form, d, u, v)
                    .into_iter()
                    .map(|s| PolyVector::from_components(f, &[s]))
                    .collect()
            },
        )?;
        Ok(out.component(0))
    }
}

/// Substitute `var(0, i) -> a_i`.
fn substitute_coords(alg: &LieSuperAlgebra, q: &Poly, a: &PolyVector) -> Poly {
    let f = alg.field();
    let comps: Vec<Poly> = (0..alg.dim()).map(|i| a.component(i)).collect();
    q.substitute(f, &|v: Var| {
        let i = v as usize;
        (i < comps.len()).then(|| comps[i].clone())
    })
}

/// `σ_i(a, b)`, `i = 1..p-1`, from `B(D(ta+b), (ad_{ta+b})^{p-2}(a)) = Σ i σ_i t^{i-1}`.
pub fn sigma_coeffs(alg: &LieSuperAlgebra, form: &BilForm, d: &Mat, a: &PolyVector, b: &PolyVector) -> Vec<Poly> {
    let f = alg.field();
    let p = f.p() as usize;
    let mut x = a.mul_poly(f, &Poly::var(AUX_T));
    x.add_assign(f, b);
    let mut cur = a.clone();
    for _ in 0..p - 2 {
        cur = poly_bracket(alg, &x, &cur);
    }
    let val = pair(f, &form.gram, &x.apply(f, d), &cur);
    let mut out = vec![Poly::zero(); p - 1];
    for (m, &c) in val.terms() {
        let (rest, e) = m.split_off(AUX_T);
        if e < p - 1 {
            out[e].add_term(f, rest, f.mul(c, f.inv((e + 1) as u32)));
        }
    }
    out
}

/// `𝒫` from basis values (zero when absent).
pub fn build_p(alg: &LieSuperAlgebra, basis_values: Option<&[u32]>) -> Result<PCubicMap> {
    match basis_values {
        None => Ok(PCubicMap::zero(alg.dim())),
        Some(v) => {
            check_dim(alg.dim(), v.len())?;
            if v.iter().enumerate().any(|(i, &x)| x != 0 && alg.parity(i).is_odd()) {
                return Err(Error::Input("𝒫 has a value on an odd basis element".into()));
            }
            Ok(PCubicMap { basis_values: v.to_vec(), explicit: None })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PReport {
    pub homogeneous: bool,
    pub even_support: bool,
    /// `𝒫(a+b) - 𝒫(a) - 𝒫(b) - Σ σ_i(a,b)`, zero when additive.
    pub additivity_defect: Poly,
    pub order_independent: bool,
    /// For an explicit polynomial: it agrees with the peeling recursion.
    pub matches_peeling: bool,
}

impl PReport {
    pub fn ok(&self) -> bool {
        self.homogeneous
            && self.even_support
            && self.additivity_defect.is_zero()
            && self.order_independent
            && self.matches_peeling
    }
}

/// Check both defining identities of `𝒫` as formal polynomial identities.
pub fn verify_p(alg: &LieSuperAlgebra, form: &BilForm, d: &Mat, pc: &PCubicMap) -> Result<PReport> {
    let n = alg.dim();
    let f = alg.field();
    check_dim(n, pc.basis_values.len())?;
    let a = generic_element(alg, ParityFilter::Even, 0);
    let b = generic_element(alg, ParityFilter::Even, 1);
    let p = f.p() as usize;
    let (homogeneous, even_support) = match &pc.explicit {
        Some(q) => (
            q.terms().keys().all(|m| m.degree() == p),
            q.terms().keys().all(|m| m.vars().iter().all(|&v| (v as usize) < n && !alg.parity(v as usize).is_odd())),
        ),
        None => (true, pc.basis_values.iter().enumerate().all(|(i, &x)| x == 0 || !alg.parity(i).is_odd())),
    };
    if !even_support {
        return Ok(PReport {
            homogeneous,
            even_support,
            additivity_defect: Poly::zero(),
            order_independent: false,
            matches_peeling: false,
        });
    }
    let ab = a.add(f, &b);
    let mut defect = pc.eval_poly(alg, form, d, &ab)?;
    defect = defect.sub(f, &pc.eval_poly(alg, form, d, &a)?);
    defect = defect.sub(f, &pc.eval_poly(alg, form, d, &b)?);
    for s in sigma_coeffs(alg, form, d, &a, &b) {
        defect = defect.sub(f, &s);
    }
    let forward: Vec<usize> = (0..n).collect();
    let reverse: Vec<usize> = (0..n).rev().collect();
    let mut rotated = forward.clone();
    rotated.rotate_left(n / 2);
    let base = pc.peel_ordered(alg, form, d, &a, &forward)?;
    let mut order_independent = true;
    for order in [&reverse, &rotated] {
        if pc.peel_ordered(alg, form, d, &a, order)? != base {
            order_independent = false;
        }
    }
    let matches_peeling = match &pc.explicit {
        Some(_) => pc.eval_poly(alg, form, d, &a)? == base,
        None => true,
    };
    Ok(PReport { homogeneous, even_support, additivity_defect: defect, order_independent, matches_peeling })
}
