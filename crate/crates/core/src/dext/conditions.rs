//! The hypotheses each construction needs, checked one by one.

use std::fmt;

use super::{pcubic::verify_p, DExtensionData, ExtCase};
use crate::error::Result;
use crate::exactla::{is_zero_vec, unit, Mat};
use crate::forms::{check_nis, d_invariance_defects};
use crate::poly::{generic_element, pair, poly_bracket, ParityFilter, Poly, PolyVector};
use crate::restricted::{ad_power, evaluate_poly, is_restricted_derivation, verify_pmap};
use crate::superalg::{both_odd, LieSuperAlgebra, Parity};

/// A basis element at which a condition fails, with the offending value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub element: String,
    pub value: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<Witness>,
}

impl Condition {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Condition {
        Condition { name, passed, detail: detail.into(), witness: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub case: ExtCase,
    pub conditions: Vec<Condition>,
}

impl ConditionReport {
    pub fn ok(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> Vec<&Condition> {
        self.conditions.iter().filter(|c| !c.passed).collect()
    }

    /// True when everything except the characteristic-3 cubic conditions
    /// and (StarT) holds.
    pub fn ok_except_p3(&self) -> bool {
        self.conditions.iter().all(|c| c.passed || matches!(c.name, "p3con1" | "p3con2" | "StarT"))
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case {}", self.case)?;
        for c in &self.conditions {
            write!(f, "  {:<12} {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if !c.detail.is_empty() {
                write!(f, "  {}", c.detail)?;
            }
            if let Some(w) = &c.witness {
                write!(f, "  (witness {} -> {})", w.element, w.value)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `D[a,b] = [Da,b] + (-1)^{|D||a|}[a,Db]` on all basis pairs.
pub fn is_derivation(alg: &LieSuperAlgebra, d: &Mat, parity: Parity) -> bool {
    let n = alg.dim();
    let f = alg.field();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    if !d.is_zero() && alg.operator_parity(d) != Some(parity) {
        return false;
    }
    let cols: Vec<Vec<u32>> = (0..n).map(|j| d.col(j)).collect();
    for i in 0..n {
        let s = f.sign(both_odd(parity, alg.parity(i)));
        for j in 0..n {
            let lhs = d.mul_vec(f, &alg.bracket_basis(i, j)).expect("dims");
            let mut rhs = alg.bracket(&cols[i], &unit(n, j)).expect("dims");
            let t = alg.bracket(&unit(n, i), &cols[j]).expect("dims");
            crate::exactla::axpy(f, &mut rhs, s, &t);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn is_central(alg: &LieSuperAlgebra, v: &[u32]) -> bool {
    alg.ad(v).map(|m| m.is_zero()).unwrap_or(false)
}

fn even_vec(alg: &LieSuperAlgebra, v: &[u32]) -> bool {
    is_zero_vec(v) || alg.vector_parity(v) == Some(Parity::Even)
}

/// First odd basis element where a cubic in odd coordinates is nonzero.
fn odd_witness(alg: &LieSuperAlgebra, q: &Poly) -> Option<Witness> {
    let f = alg.field();
    for i in alg.odd_indices() {
        let v = q.eval(f, &|x| u32::from(x as usize == i));
        if v != 0 {
            return Some(Witness { element: alg.name(i).to_string(), value: v });
        }
    }
    None
}

/// `B(D a, [a, a])` for a generic odd `a`.
fn p3_cubic(data: &DExtensionData) -> Poly {
    let alg = &data.base;
    let f = alg.field();
    let a = generic_element(alg, ParityFilter::Odd, 0);
    let aa = poly_bracket(alg, &a, &a);
    pair(f, &data.form.gram, &a.apply(f, &data.d), &aa)
}

fn p3_condition(name: &'static str, data: &DExtensionData) -> Condition {
    let q = p3_cubic(data);
    let mut c = Condition::new(name, q.is_zero(), "B(D(a),[a,a]) = 0 for odd a");
    if !q.is_zero() {
        c.witness = odd_witness(&data.base, &q);
    }
    c
}

/// `D^2 = ad(b0)`, `D(b0) = 0`, `b0` even.
fn square_condition(name: &'static str, data: &DExtensionData, isotropic: bool) -> Result<Condition> {
    let alg = &data.base;
    let f = alg.field();
    let d2 = data.d.mul(f, &data.d)?;
    let sq = d2 == alg.ad(&data.b0)?;
    let kill = is_zero_vec(&data.d.mul_vec(f, &data.b0)?);
    let ev = even_vec(alg, &data.b0);
    let iso = !isotropic || data.form.eval(f, &data.b0, &data.b0) == 0;
    let mut detail = Vec::new();
    if !sq {
        detail.push("D^2 != ad(b0)");
    }
    if !kill {
        detail.push("D(b0) != 0");
    }
    if !ev {
        detail.push("b0 not even");
    }
    if !iso {
        detail.push("B(b0,b0) != 0");
    }
    Ok(Condition::new(name, sq && kill && ev && iso, detail.join(", ")))
}

/// `2B(a^{[p]}, b0) - B(Da, (ad a)^{p-2} Da) = 0` for generic even `a`.
fn star_t(data: &DExtensionData) -> Result<Condition> {
    let alg = &data.base;
    let f = alg.field();
    let a = generic_element(alg, ParityFilter::Even, 0);
    let ap = evaluate_poly(alg, &data.pmap, &a)?;
    let da = a.apply(f, &data.d);
    let first = pair(f, &data.form.gram, &ap, &PolyVector::constant(&data.b0)).scale(f, 2);
    let second = pair(f, &data.form.gram, &da, &ad_power(alg, &a, &da, f.p() - 2));
    let q = first.sub(f, &second);
    Ok(Condition::new("StarT", q.is_zero(), if q.is_zero() { "" } else { "nonzero quadratic/cubic defect" }))
}

/// `D^p = γD + ad(a0)`, `D(a0) = 0`, `a0` even.
fn p_property_condition(data: &DExtensionData) -> Result<Condition> {
    let alg = &data.base;
    let f = alg.field();
    let dp = data.d.pow(f, f.p())?;
    let rhs = data.d.scale(f, data.gamma).add(f, &alg.ad(&data.a0)?)?;
    let eq = dp == rhs;
    let kill = is_zero_vec(&data.d.mul_vec(f, &data.a0)?);
    let ev = even_vec(alg, &data.a0);
    let mut detail = Vec::new();
    if !eq {
        detail.push("D^p != γD + ad(a0)".to_string());
    }
    if !kill {
        detail.push("D(a0) != 0".into());
    }
    if !ev {
        detail.push("a0 not even".into());
    }
    Ok(Condition::new("p_property", eq && kill && ev, detail.join(", ")))
}

/// `c0` even, central, `D(c0) = 0`.
fn c0_condition(data: &DExtensionData) -> Result<Condition> {
    let alg = &data.base;
    let f = alg.field();
    let central = is_central(alg, &data.c0);
    let kill = is_zero_vec(&data.d.mul_vec(f, &data.c0)?);
    let ev = even_vec(alg, &data.c0);
    Ok(Condition::new("c0", central && kill && ev, "c0 in z_ev(a), D(c0) = 0"))
}

/// Evaluate every hypothesis of `case` on `data`.
pub fn check_conditions(data: &DExtensionData, case: ExtCase) -> Result<ConditionReport> {
    data.check_sizes()?;
    let alg = &data.base;
    let f = alg.field();
    let p = f.p();
    let mut out = Vec::new();
    let case_ok = data.form.parity == case.form_parity()
        && data.d_parity == case.d_parity()
        && (case != ExtCase::Lie || alg.is_purely_even())
        && (case == ExtCase::Lie || p != 2);
    out.push(Condition::new(
        "case",
        case_ok,
        format!("form {} / derivation {} for {case}", data.form.parity, data.d_parity),
    ));
    let nis = check_nis(alg, &data.form);
    out.push(Condition::new("nis", nis.is_ok(), nis.err().map(|e| e.to_string()).unwrap_or_default()));
    let pm = verify_pmap(alg, &data.pmap);
    out.push(Condition::new("pmap", pm.ok(), pm.to_string()));
    let der = is_derivation(alg, &data.d, data.d_parity);
    out.push(Condition::new("derivation", der, ""));
    if !der || !case_ok {
        return Ok(ConditionReport { case, conditions: out });
    }
    let defects = d_invariance_defects(alg, &data.form, &data.d, data.d_parity)?;
    out.push(Condition::new(
        "d_invariant",
        defects.is_empty(),
        defects.first().map(|d| format!("{d:?}")).unwrap_or_default(),
    ));
    out.push(Condition::new("restricted", is_restricted_derivation(alg, &data.pmap, &data.d)?, ""));
    match case {
        ExtCase::Lie | ExtCase::EvenBEvenD => {
            out.push(p_property_condition(data)?);
            out.push(c0_condition(data)?);
        }
        ExtCase::EvenBOddD => {
            out.push(square_condition("DB0", data, true)?);
            if p == 3 {
                out.push(p3_condition("p3con1", data));
            }
            out.push(star_t(data)?);
        }
        ExtCase::OddBOddD => {
            out.push(square_condition("BoD1", data, false)?);
            out.push(c0_condition(data)?);
        }
        ExtCase::OddBEvenD => {
            out.push(p_property_condition(data)?);
            if p == 3 {
                out.push(p3_condition("p3con2", data));
            }
        }
    }
    if case.has_p_cubic() {
        let r = verify_p(alg, &data.form, &data.d, &data.p_cubic)?;
        let detail = if r.ok() {
            String::new()
        } else {
            format!(
                "homogeneous={} even_support={} additive={} order_independent={} matches_peeling={}",
                r.homogeneous,
                r.even_support,
                r.additivity_defect.is_zero(),
                r.order_independent,
                r.matches_peeling
            )
        };
        out.push(Condition::new("P", r.ok(), detail));
    }
    Ok(ConditionReport { case, conditions: out })
}
