//! One line per acceptance criterion, with the clauses that decide it.
//! Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use nisalg::catalog::{build_q, build_vect, fixture, Fixture, FIXTURE_NAMES};
use nisalg::cohomology::{dd_is_zero, h_k, inner, out_dim, restricted_h1_dim, Coefficients, DEFAULT_SIZE_GUARD};
use nisalg::dext::*;
use nisalg::exactla::{nullspace, unit, Mat, Subspace};
use nisalg::forms::{check_nis, is_d_invariant, is_nis};
use nisalg::poly::{generic_element, var, Monomial, ParityFilter, PolyVector};
use nisalg::restricted::{evaluate, evaluate_ordered, evaluate_symbolic, is_restricted_derivation, jacobson_extend, p_property, verify_pmap};
use nisalg::superalg::invert;
use nisalg::{BasisElem, LieSuperAlgebra, PMap, Parity};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x6e15_a16e;

struct Clause {
    name: String,
    ok: bool,
    detail: String,
}

fn clause(name: &str, ok: bool, detail: impl Into<String>) -> Clause {
    Clause { name: name.into(), ok, detail: detail.into() }
}

fn eq_clause<T: PartialEq + std::fmt::Debug>(name: &str, got: T, want: T) -> Clause {
    let ok = got == want;
    clause(name, ok, format!("got {got:?}, expected {want:?}"))
}

fn data(fx: &Fixture, d: &str) -> DExtensionData {
    let der = fx.derivation(d).unwrap_or_else(|| panic!("derivation {d}"));
    DExtensionData::new(fx.cat.alg.clone(), fx.cat.pmap.clone(), fx.cat.nis().unwrap().clone(), der.matrix.clone(), der.parity)
}

fn cubic(fx: &Fixture, name: &str) -> PCubicMap {
    PCubicMap::from_poly(&fx.cat.alg, fx.cubic(name).unwrap().to_poly(&fx.cat.alg))
}

/// The three extensions of psl(3), with parameters from the p-property.
fn psl3_extensions() -> Vec<(&'static str, DExtensionData)> {
    let fx = fixture("psl3").unwrap();
    [("gl(3)", "D0_3", "P3"), ("gl~(3)", "D0_2", "P2"), ("gl^(3)", "Dm3_1", "P1")]
        .into_iter()
        .map(|(name, d, p)| {
            let mut dd = data(&fx, d);
            let w = p_property(&dd.base, &dd.d).unwrap().expect("p-property holds");
            dd.gamma = w.gamma;
            dd.a0 = w.a0;
            dd.p_cubic = cubic(&fx, p);
            (name, dd)
        })
        .collect()
}

fn criterion_1() -> Vec<Clause> {
    let fx = fixture("psl3").unwrap();
    let a = &fx.cat.alg;
    vec![
        clause("is_nis", is_nis(a, fx.cat.nis().unwrap()), "catalog Gram matrix"),
        eq_clause("out_dim", out_dim(a), (7, 0)),
        eq_clause("restricted_h1_dim", restricted_h1_dim(a, &fx.cat.pmap).unwrap(), (7, 0)),
    ]
}

fn criterion_2() -> Vec<Clause> {
    let fx = fixture("psl3").unwrap();
    let a = &fx.cat.alg;
    let mut out = Vec::new();
    for (d, p, gamma) in [("Dm3_1", "P1", 0), ("D0_2", "P2", 0), ("D0_3", "P3", 1)] {
        let dd = data(&fx, d);
        let r = verify_p(a, &dd.form, &dd.d, &cubic(&fx, p)).unwrap();
        out.push(clause(&format!("verify_P({p}, {d})"), r.ok(), format!("{r:?}")));
        let w = p_property(a, &dd.d).unwrap();
        let got = w.map(|w| (w.gamma, w.a0));
        out.push(eq_clause(&format!("p_property({d})"), got, Some((gamma, vec![0; 7]))));
    }
    out
}

fn criterion_3() -> Vec<Clause> {
    let mut out = Vec::new();
    for ((name, dd), want) in psl3_extensions().into_iter().zip([0usize, 3, 4]) {
        let ext = match double_extend(&dd, ExtCase::Lie, false) {
            Ok(e) => e,
            Err(e) => {
                out.push(clause(&format!("{name} builds"), false, e.to_string()));
                continue;
            }
        };
        let pm_ok = ext.pmap_report.as_ref().is_some_and(|r| r.ok());
        out.push(clause(
            &format!("{name} axioms/nis/pmap"),
            ext.axioms.is_lie && ext.nis && pm_ok,
            format!("lie={} nis={} pmap={pm_ok}", ext.axioms.is_lie, ext.nis),
        ));
        let triv = h_k(&ext.alg, 2, Coefficients::Trivial, DEFAULT_SIZE_GUARD).unwrap().dim;
        let mut detail = format!("trivial coefficients: got {triv}, expected {want}");
        if triv != want {
            let adj = h_k(&ext.alg, 2, Coefficients::Adjoint, DEFAULT_SIZE_GUARD).unwrap().dim;
            detail.push_str(&format!("; MISMATCH, adjoint coefficients give {adj}"));
        }
        out.push(clause(&format!("{name} H^2"), triv == want, detail));
    }
    out
}

fn manin_ix(a: &LieSuperAlgebra, name: &str) -> usize {
    a.index_of(name).unwrap()
}

fn criterion_4() -> Vec<Clause> {
    let fx = fixture("manin_hei2").unwrap();
    let a = &fx.cat.alg;
    let f = a.field();
    let n = a.dim();
    let ix = |s: &str| manin_ix(a, s);
    let mut out = Vec::new();

    // a = rz + sp + wq + up* + vq* + tz*
    let (r, s, w, t) = (var(0, ix("z")), var(0, ix("p")), var(0, ix("q")), var(0, ix("z*")));
    let mut want = PolyVector::zero(n);
    want.add_term(f, Monomial::from_vars(&[r, r]), 1, &unit(n, ix("z")));
    want.add_term(f, Monomial::from_vars(&[s, w]), 1, &unit(n, ix("z")));
    want.add_term(f, Monomial::from_vars(&[s, t]), 1, &unit(n, ix("q*")));
    want.add_term(f, Monomial::from_vars(&[w, t]), 1, &unit(n, ix("p*")));
    let got = evaluate_symbolic(a, &fx.cat.pmap);
    out.push(clause("squaring closed form", got == want, "(r^2+sw)z + st q* + wt p* as a polynomial identity"));

    out.push(eq_clause("restricted_h1_dim", restricted_h1_dim(a, &fx.cat.pmap).unwrap(), (9, 0)));

    // D = Σ μ_i D_i; B-invariance and B(a, Da) = 0 are linear in μ
    let ds: Vec<Mat> = (1..=9).map(|i| fx.derivation(&format!("D{i}")).unwrap().matrix.clone()).collect();
    let g = &fx.cat.nis().unwrap().gram;
    let invariance_rows = |m: &Mat| -> Vec<u32> {
        let lhs = m.transpose().mul(f, g).unwrap().add(f, &g.mul(f, m).unwrap()).unwrap();
        lhs.data().to_vec()
    };
    let quadratic_rows = |m: &Mat| -> Vec<u32> {
        let gd = g.mul(f, m).unwrap();
        let mut v = Vec::new();
        for i in 0..n {
            for j in i..n {
                v.push(if i == j { gd.get(i, i) } else { f.add(gd.get(i, j), gd.get(j, i)) });
            }
        }
        v
    };
    let solve_in = |space: &[Vec<u32>], rows: &dyn Fn(&Mat) -> Vec<u32>| -> Subspace {
        let cols: Vec<Vec<u32>> = space
            .iter()
            .map(|mu| {
                let mut m = Mat::zeros(n, n);
                for (k, &c) in mu.iter().enumerate() {
                    m = m.add(f, &ds[k].scale(f, c)).unwrap();
                }
                rows(&m)
            })
            .collect();
        let sys = Mat::from_cols(cols[0].len(), &cols).unwrap();
        let coeffs = nullspace(f, &sys);
        let vecs: Vec<Vec<u32>> = coeffs
            .vectors()
            .iter()
            .map(|c| {
                let mut mu = vec![0; 9];
                for (k, &ck) in c.iter().enumerate() {
                    for i in 0..9 {
                        mu[i] = f.add(mu[i], f.mul(ck, space[k][i]));
                    }
                }
                mu
            })
            .collect();
        Subspace::from_vectors(f, 9, &vecs).unwrap()
    };
    let mu = |idx: &[usize]| -> Vec<u32> {
        let mut v = vec![0; 9];
        for &i in idx {
            v[i - 1] = 1;
        }
        v
    };
    let same = |s: &Subspace, gens: &[Vec<u32>]| {
        let t = Subspace::from_vectors(f, 9, gens).unwrap();
        s.contains_subspace(f, &t).unwrap() && t.contains_subspace(f, s).unwrap()
    };
    let all: Vec<Vec<u32>> = (1..=9).map(|i| mu(&[i])).collect();
    let s1 = solve_in(&all, &invariance_rows);
    let want1 = [mu(&[2]), mu(&[4]), mu(&[6]), mu(&[7, 9]), mu(&[8, 9])];
    out.push(clause(
        "D-invariance eliminates mu1, mu3, mu5 with mu9 = mu7 + mu8",
        same(&s1, &want1),
        format!("solution space has dimension {}", s1.dim()),
    ));
    let s2 = solve_in(&s1.vectors(), &quadratic_rows);
    let want2 = [mu(&[7, 9]), mu(&[8, 9])];
    out.push(clause(
        "B(a, Da) = 0 then eliminates mu2, mu4, mu6",
        same(&s2, &want2),
        format!("solution space has dimension {}", s2.dim()),
    ));
    out
}

fn manin_data(fx: &Fixture, d: &str) -> DExtensionData {
    let a = &fx.cat.alg;
    let f = a.field();
    let m = fx.derivation(d).unwrap().matrix.add(f, &fx.derivation("D9").unwrap().matrix).unwrap();
    let mut dd = DExtensionData::new(a.clone(), fx.cat.pmap.clone(), fx.cat.nis().unwrap().clone(), m, Parity::Even);
    dd.gamma = 1;
    dd.p_cubic = cubic(fx, if d == "D7" { "P1" } else { "P2" });
    dd
}

fn criterion_5() -> Vec<Clause> {
    let fx = fixture("manin_hei2").unwrap();
    let a = &fx.cat.alg;
    let f = a.field();
    let n = a.dim();
    let ix = |s: &str| manin_ix(a, s);
    let mut out = Vec::new();
    let mut exts = Vec::new();
    for (d, dual) in [("D7", "q*"), ("D8", "p*")] {
        let base = manin_data(&fx, d);
        let mut built = 0;
        let mut failing = Vec::new();
        for bits in 0..16u32 {
            let mut dd = base.clone();
            let (alpha, beta) = (bits & 1, (bits >> 1) & 1);
            dd.a0 = unit(n, ix(dual)).iter().map(|&c| c * beta).collect();
            dd.c0 = unit(n, ix(dual)).iter().map(|&c| c * alpha).collect();
            dd.m = (bits >> 2) & 1;
            dd.l = (bits >> 3) & 1;
            match double_extend(&dd, ExtCase::Lie, false) {
                Ok(_) => built += 1,
                Err(e) => failing.push(e.to_string()),
            }
        }
        failing.dedup();
        out.push(clause(
            &format!("({d}+D9)-extension is a restricted NIS algebra"),
            built > 0,
            format!("{built}/16 choices of (alpha, beta, m, l) verify; {}", failing.first().cloned().unwrap_or_default()),
        ));
        exts.push(extend_algebra(&base, ExtCase::Lie).unwrap());
    }

    let mut pi0 = Mat::zeros(n, n);
    for (s, t) in [("z", "z"), ("z*", "z*"), ("p", "q"), ("q", "p"), ("q*", "p*"), ("p*", "q*")] {
        pi0.set(ix(t), ix(s), 1);
    }
    let iso = AdaptedIso { pi0, lambda: 1, kappa: vec![0; n], rho_or_nu: 0 };
    let (g1, b1) = &exts[0];
    let (g2, b2) = &exts[1];
    let pi = build_adapted_iso(g1, b1, &iso).unwrap();
    let r = verify_iso(g1, b1, g2, b2, &pi, &iso).unwrap();
    out.push(clause("swap map passes verify_iso", r.ok(), format!("{:?}", r.failures)));
    out.push(clause(
        "swap map passes verify_p_iso",
        false,
        "not evaluable: neither extension carries a 2-structure, since the restricted condition fails for every parameter choice",
    ));

    let d79 = fx.derivation("D7").unwrap().matrix.add(f, &fx.derivation("D9").unwrap().matrix).unwrap();
    let restricted = is_restricted_derivation(a, &fx.cat.pmap, &d79).unwrap();
    let inn = inner(a);
    let outer = !inn.even.contains(f, &nisalg::cohomology::mat_to_flat(&d79)).unwrap();
    out.push(clause(
        "D7+D9 is nonzero in restricted H^1",
        restricted && outer,
        format!("restricted derivation: {restricted}; outer: {outer}"),
    ));
    out
}

fn osp_swap_iso(fx: &Fixture) -> IsoReport {
    let (g1, b1) = extend_algebra(&data(fx, "Dm3"), ExtCase::EvenBOddD).unwrap();
    let (g2, b2) = extend_algebra(&data(fx, "D3"), ExtCase::EvenBOddD).unwrap();
    let mut pi0 = Mat::zeros(5, 5);
    // h -> 2h, x1 -> 2y1, y1 -> x1, x2 -> y2, y2 -> x2
    for (t, s, c) in [(0, 0, 2), (3, 1, 2), (1, 3, 1), (4, 2, 1), (2, 4, 1)] {
        pi0.set(t, s, c);
    }
    let iso = AdaptedIso { pi0, lambda: 2, kappa: vec![0; 5], rho_or_nu: 0 };
    let pi = build_adapted_iso(&g1, &b1, &iso).unwrap();
    verify_iso(&g1, &b1, &g2, &b2, &pi, &iso).unwrap()
}

fn criterion_6() -> Vec<Clause> {
    let fx = fixture("osp12").unwrap();
    let a = &fx.cat.alg;
    let f = a.field();
    let form = fx.cat.nis().unwrap();
    let mut out = vec![
        eq_clause("out_dim", out_dim(a), (0, 2)),
        eq_clause("H^2 trivial", h_k(a, 2, Coefficients::Trivial, DEFAULT_SIZE_GUARD).unwrap().dim, 0),
    ];
    let x1 = unit(a.dim(), a.index_of("x1").unwrap());
    let d = &fx.derivation("Dm3").unwrap().matrix;
    let val = form.eval(f, &d.mul_vec(f, &x1).unwrap(), &a.bracket(&x1, &x1).unwrap());
    out.push(eq_clause("B(Dm3(x1), [x1,x1])", val, 1));
    match double_extend(&data(&fx, "Dm3"), ExtCase::EvenBOddD, true) {
        Ok(ext) => {
            let ax = &ext.axioms;
            out.push(clause(
                "allow-pre-lie extension",
                ax.jacobi && ax.char3_cubic == Some(false) && ax.is_pre_lie_only,
                format!("jacobi={} char3_cubic={:?} is_pre_lie_only={} nis={}", ax.jacobi, ax.char3_cubic, ax.is_pre_lie_only, ext.nis),
            ));
        }
        Err(e) => out.push(clause("allow-pre-lie extension", false, e.to_string())),
    }
    let r = osp_swap_iso(&fx);
    out.push(clause("swap map identifies the Dm3- and D3-extensions", r.ok(), format!("{:?}", r.failures)));
    out
}

fn svect_clauses(fx: &Fixture, d0: &str, d3: &str, label: &str) -> Vec<Clause> {
    let a = &fx.cat.alg;
    let f = a.field();
    let form = fx.cat.nis().unwrap();
    let mut out = Vec::new();
    let d0m = &fx.derivation(d0).unwrap().matrix;
    let d3m = &fx.derivation(d3).unwrap().matrix;
    let inv3 = is_d_invariant(a, form, d3m, Parity::Even).unwrap();
    out.push(clause(&format!("{label}{d3} fails is_d_invariant"), !inv3, format!("invariant: {inv3}; derivation: {}", is_derivation(a, d3m, Parity::Even))));
    let inv0 = is_d_invariant(a, form, d0m, Parity::Even).unwrap();
    out.push(clause(&format!("{label}{d0} passes is_d_invariant"), inv0, format!("invariant: {inv0}; derivation: {}", is_derivation(a, d0m, Parity::Even))));
    let cube = d0m.pow(f, 3).unwrap();
    out.push(clause(&format!("{label}{d0}^3 = 0"), cube.is_zero(), ""));
    let mut dd = data(fx, d0);
    dd.p_cubic = cubic(fx, "P");
    match verify_p(a, form, d0m, &dd.p_cubic) {
        Ok(r) => out.push(clause(&format!("{label}cubic passes verify_P against {d0}"), r.ok(), format!("{r:?}").chars().take(160).collect::<String>())),
        Err(e) => out.push(clause(&format!("{label}cubic passes verify_P against {d0}"), false, e.to_string())),
    }
    if let Some(w) = p_property(a, d0m).unwrap() {
        dd.gamma = w.gamma;
        dd.a0 = w.a0;
    }
    match double_extend(&dd, ExtCase::Lie, false) {
        Ok(ext) => out.push(clause(&format!("{label}{d0}-extension verifies"), true, format!("dim {}", ext.alg.dim()))),
        Err(e) => out.push(clause(&format!("{label}{d0}-extension verifies"), false, e.to_string())),
    }
    out
}

fn criterion_7() -> Vec<Clause> {
    let fx = fixture("svect13").unwrap();
    let a = &fx.cat.alg;
    let mut out = vec![
        eq_clause("dim", a.dim(), 52),
        clause("normalized Gram matrix is a NIS", check_nis(a, fx.cat.nis().unwrap()).is_ok(), ""),
    ];
    out.extend(svect_clauses(&fx, "D0", "D3", ""));
    out
}

/// Informational: the same clauses with the corrected degree-3 derivation
/// in the role the cubic requires.
fn criterion_7_corrected() -> Vec<String> {
    let fx = fixture("svect13").unwrap();
    let a = &fx.cat.alg;
    let f = a.field();
    let form = fx.cat.nis().unwrap();
    let d = &fx.derivation("D3c").unwrap().matrix;
    let mut dd = data(&fx, "D3c");
    dd.p_cubic = cubic(&fx, "P");
    let p_ok = verify_p(a, form, d, &dd.p_cubic).map(|r| r.ok()).unwrap_or(false);
    let ext = double_extend(&dd, ExtCase::Lie, false);
    vec![
        format!("corrected D3: derivation {}", is_derivation(a, d, Parity::Even)),
        format!("corrected D3: is_d_invariant {}", is_d_invariant(a, form, d, Parity::Even).unwrap()),
        format!("corrected D3: cube is zero {}", d.pow(f, 3).unwrap().is_zero()),
        format!("corrected D3: cubic passes verify_P {p_ok}"),
        format!(
            "corrected D3: extension verifies {}",
            match &ext {
                Ok(e) => format!("true (dim {})", e.alg.dim()),
                Err(e) => format!("false ({e})"),
            }
        ),
    ]
}

fn criterion_8() -> Vec<Clause> {
    let v1 = fixture("vect11").unwrap();
    let v2 = build_vect(2, 2).unwrap();
    vec![
        clause("vect(1;1) NIS", check_nis(&v1.cat.alg, v1.cat.nis().unwrap()).is_ok(), ""),
        eq_clause("vect(1;1) out_dim", out_dim(&v1.cat.alg), (0, 0)),
        eq_clause("vect(2;1) out_dim", out_dim(&v2.cat.alg), (0, 0)),
    ]
}

fn q3_reconstruction() -> Reconstruction {
    let q = build_q(3, 3).unwrap();
    let mut x = vec![0; q.alg.dim()];
    for i in 1..=3 {
        x[q.alg.index_of(&format!("A{i}{i}")).unwrap()] = 1;
    }
    reconstruct(&q.alg, q.nis().unwrap(), &q.pmap, &x).unwrap()
}

fn criterion_9() -> Vec<Clause> {
    let psq = fixture("psq3").unwrap();
    let mut out = vec![eq_clause("psq(3) out_dim", out_dim(&psq.cat.alg), (0, 1))];
    let rec = q3_reconstruction();
    let base = &rec.data.base;
    out.push(eq_clause("reconstructed case", rec.case, ExtCase::OddBOddD));
    out.push(eq_clause("base dims", (base.even_indices().len(), base.odd_indices().len()), (8, 8)));
    out.push(eq_clause("base out_dim", out_dim(base), (0, 1)));
    let (g2, b2) = extend_algebra(&rec.data, rec.case).unwrap();
    out.push(clause("re-extension reproduces the structure constants", g2.structure_constants() == rec.adapted.structure_constants(), ""));
    out.push(clause("re-extension reproduces the form", b2.gram == rec.adapted_form.gram, ""));
    out
}

/// Every double extension the suite constructs, with its data where available.
fn all_extensions() -> Vec<(String, DoubleExtension, DExtensionData)> {
    let mut v = Vec::new();
    for (name, dd) in psl3_extensions() {
        v.push((name.to_string(), double_extend(&dd, ExtCase::Lie, false).unwrap(), dd));
    }
    let trivial = {
        let fx = fixture("psl3").unwrap();
        let mut dd = data(&fx, "D0_3");
        dd.d = Mat::zeros(7, 7);
        dd
    };
    v.push(("psl3 with D = 0".into(), double_extend(&trivial, ExtCase::Lie, false).unwrap(), trivial));
    let osp = fixture("osp12").unwrap();
    let dd = data(&osp, "Dm3");
    v.push(("osp(1|2) pre-Lie".into(), double_extend(&dd, ExtCase::EvenBOddD, true).unwrap(), dd));
    let rec = q3_reconstruction();
    v.push(("q(3)".into(), double_extend(&rec.data, rec.case, false).unwrap(), rec.data));
    let sv = fixture("svect13").unwrap();
    let mut dd = data(&sv, "D3c");
    dd.p_cubic = cubic(&sv, "P");
    v.push(("svect with corrected D3".into(), double_extend(&dd, ExtCase::Lie, false).unwrap(), dd));
    v
}

fn random_even(rng: &mut ChaCha8Rng, alg: &LieSuperAlgebra) -> Vec<u32> {
    let mut a = vec![0; alg.dim()];
    for j in alg.even_indices() {
        a[j] = rng.gen_range(0..alg.p());
    }
    a
}

/// The p-map rebuilt from its values on a random homogeneous basis.
fn rebased_pmap(rng: &mut ChaCha8Rng, alg: &LieSuperAlgebra, pm: &PMap) -> (Mat, PMap) {
    let f = alg.field();
    let n = alg.dim();
    let change = loop {
        let mut c = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if alg.parity(i) == alg.parity(j) {
                    c.set(i, j, rng.gen_range(0..f.p()));
                }
            }
        }
        if invert(f, &c).is_some() {
            break c;
        }
    };
    let inv = invert(f, &change).unwrap();
    let basis: Vec<BasisElem> = (0..n).map(|j| BasisElem::new(format!("f{j}"), alg.parity(j))).collect();
    let g2 = alg.change_basis(&change, basis).unwrap();
    let images: Vec<(usize, Vec<u32>)> =
        g2.even_indices().into_iter().map(|j| (j, inv.mul_vec(f, &evaluate(alg, pm, &change.col(j)).unwrap()).unwrap())).collect();
    (change, jacobson_extend(&g2, &images).unwrap())
}

fn criterion_10() -> Vec<Clause> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let exts = all_extensions();
    let mut out = Vec::new();

    let bad: Vec<&str> = exts.iter().filter(|(_, e, d)| !lemma_s_sigma_holds(e, d)).map(|(n, _, _)| n.as_str()).collect();
    out.push(clause("(a) s/sigma identity on every extension", bad.is_empty(), format!("{} extensions; failing: {bad:?}", exts.len())));

    let mut algebras: Vec<(String, LieSuperAlgebra, PMap)> = Vec::new();
    for name in FIXTURE_NAMES {
        let fx = fixture(name).unwrap();
        algebras.push((name.to_string(), fx.cat.alg.clone(), fx.cat.pmap.clone()));
    }
    for (name, e, _) in &exts {
        if let Some(pm) = &e.pmap {
            algebras.push((name.clone(), e.alg.clone(), pm.clone()));
        }
    }
    let mut order_bad = Vec::new();
    let mut perms = 0;
    for (name, alg, pm) in &algebras {
        let a = generic_element(alg, ParityFilter::Even, 0);
        let mut order = alg.even_indices();
        let reference = evaluate_ordered(alg, pm, &a, &order).unwrap();
        // symbolic peeling of large algebras is costly; use random elements there
        let symbolic = alg.dim() <= 20;
        let point = random_even(&mut rng, alg);
        let point_ref = evaluate(alg, pm, &point).unwrap();
        for _ in 0..100 {
            order.shuffle(&mut rng);
            perms += 1;
            let same = if symbolic {
                evaluate_ordered(alg, pm, &a, &order).unwrap() == reference
            } else {
                evaluate_ordered(alg, pm, &PolyVector::constant(&point), &order).unwrap().constant_part() == point_ref
            };
            if !same {
                order_bad.push(name.clone());
                break;
            }
        }
    }
    out.push(clause(
        "(b) peeling-order independence",
        order_bad.is_empty(),
        format!("{} algebras, {perms} permutations; failing: {order_bad:?}", algebras.len()),
    ));

    let mut dd_checked = 0;
    let mut dd_bad = Vec::new();
    // CE differentials are only assembled for Lie superalgebras
    for (name, alg, _) in algebras.iter().filter(|(_, a, _)| a.dim() <= 18) {
        for coeff in [Coefficients::Trivial, Coefficients::Adjoint] {
            let top = if coeff == Coefficients::Trivial { 2 } else { 1 };
            for k in 0..=top {
                dd_checked += 1;
                if !dd_is_zero(alg, k, coeff).unwrap() {
                    dd_bad.push(format!("{name} k={k} {coeff:?}"));
                }
            }
        }
    }
    out.push(clause("(c) d o d = 0", dd_bad.is_empty(), format!("{dd_checked} differentials; failing: {dd_bad:?}")));

    let mut idem_bad = Vec::new();
    let mut idem = 0;
    for (name, e, _) in &exts {
        let Some(pm) = &e.pmap else { continue };
        idem += 1;
        let x = unit(e.alg.dim(), DoubleExtension::X);
        let ok = match reconstruct(&e.alg, &e.form, pm, &x) {
            Ok(rec) => match double_extend(&rec.data, rec.case, false) {
                Ok(e2) => {
                    let g2 = e2.alg.change_basis(&invert(e.alg.field(), &rec.change).unwrap(), e.alg.basis().to_vec()).unwrap();
                    e2.alg.structure_constants() == rec.adapted.structure_constants()
                        && g2.structure_constants() == e.alg.structure_constants()
                        && e2.pmap.as_ref() == Some(&rec.adapted_pmap)
                        && e2.form.gram == rec.adapted_form.gram
                }
                Err(_) => false,
            },
            Err(_) => false,
        };
        if !ok {
            idem_bad.push(name.clone());
        }
    }
    out.push(clause("(d) extend -> reconstruct -> extend", idem_bad.is_empty(), format!("{idem} extensions; failing: {idem_bad:?}")));

    let mut jac_bad = Vec::new();
    for (name, alg, pm) in &algebras {
        if alg.dim() > 20 {
            continue;
        }
        let f = alg.field();
        let (change, pm2) = rebased_pmap(&mut rng, alg, pm);
        let inv = invert(f, &change).unwrap();
        let g2 = alg.change_basis(&change, (0..alg.dim()).map(|j| BasisElem::new(format!("f{j}"), alg.parity(j))).collect()).unwrap();
        for _ in 0..20 {
            let a = random_even(&mut rng, alg);
            let direct = evaluate(alg, pm, &a).unwrap();
            let via = change.mul_vec(f, &evaluate(&g2, &pm2, &inv.mul_vec(f, &a).unwrap()).unwrap()).unwrap();
            if direct != via {
                jac_bad.push(name.clone());
                break;
            }
        }
        if !verify_pmap(&g2, &pm2).ok() {
            jac_bad.push(format!("{name} (rebased map)"));
        }
    }
    out.push(clause("(e) Jacobson uniqueness under a random change of basis", jac_bad.is_empty(), format!("failing: {jac_bad:?}")));
    out
}

fn main() {
    let criteria: [(usize, &str, fn() -> Vec<Clause>); 10] = [
        (1, "psl(3): NIS, out_dim, restricted H^1", criterion_1),
        (2, "psl(3) cubic forms and p-property", criterion_2),
        (3, "gl(3) family: verification and H^2", criterion_3),
        (4, "Manin double of hei(2): squaring, restricted H^1, elimination", criterion_4),
        (5, "Manin double extensions and the swap map", criterion_5),
        (6, "osp(1|2): derivations, H^2, pre-Lie extension, swap map", criterion_6),
        (7, "svect(3;1): NIS, D0/D3, cubic, extension", criterion_7),
        (8, "vect(1;1) and vect(2;1)", criterion_8),
        (9, "psq(3) and the reconstruction of q(3)", criterion_9),
        (10, "property suites", criterion_10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut passed = 0;
    for (n, title, run) in criteria {
        let t = Instant::now();
        let clauses = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(c) => c,
            Err(e) => {
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                vec![clause("run", false, format!("panicked: {}", msg.unwrap_or_default()))]
            }
        };
        let ok = clauses.iter().all(|c| c.ok);
        passed += usize::from(ok);
        println!("criterion {n:>2}: {} {title} ({:.1}s)", if ok { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
        for c in &clauses {
            let sep = if c.detail.is_empty() { "" } else { ": " };
            println!("    [{}] {}{sep}{}", if c.ok { "ok" } else { "FAIL" }, c.name, c.detail);
        }
        if n == 7 {
            if let Ok(lines) = catch_unwind(criterion_7_corrected) {
                for l in lines {
                    println!("    [info] {l}");
                }
            }
        }
    }
    println!("acceptance: {passed}/10 criteria pass");
    if passed != 10 {
        std::process::exit(1);
    }
}
