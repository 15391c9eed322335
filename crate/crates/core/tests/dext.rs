use nisalg::catalog::{build_q, fixture, Fixture};
use nisalg::cohomology::inner;
use nisalg::dext::*;
use nisalg::exactla::{unit, Mat, Subspace};
use nisalg::forms::is_nis;
use nisalg::poly::{generic_element, pair, poly_bracket, ParityFilter};
use nisalg::restricted::{jacobson_extend, verify_pmap};
use nisalg::superalg::Parity;

fn data(fx: &Fixture, d: &str) -> DExtensionData {
    let der = fx.derivation(d).unwrap();
    DExtensionData::new(
        fx.cat.alg.clone(),
        fx.cat.pmap.clone(),
        fx.cat.nis().unwrap().clone(),
        der.matrix.clone(),
        der.parity,
    )
}

fn with_cubic(fx: &Fixture, d: &str, cubic: &str) -> DExtensionData {
    let mut dd = data(fx, d);
    dd.p_cubic = PCubicMap::from_poly(&fx.cat.alg, fx.cubic(cubic).unwrap().to_poly(&fx.cat.alg));
    dd
}

#[test]
fn sigma_small_primes() {
    // p = 3: σ1 = B(Db, [b,a]), σ2 = 2 B(Da, [b,a])
    let fx = fixture("psl3").unwrap();
    let dd = data(&fx, "D0_2");
    let alg = &dd.base;
    let f = alg.field();
    let a = generic_element(alg, ParityFilter::Even, 0);
    let b = generic_element(alg, ParityFilter::Even, 1);
    let s = sigma_coeffs(alg, &dd.form, &dd.d, &a, &b);
    let ba = poly_bracket(alg, &b, &a);
    assert_eq!(s[0], pair(f, &dd.form.gram, &b.apply(f, &dd.d), &ba));
    assert_eq!(s[1], pair(f, &dd.form.gram, &a.apply(f, &dd.d), &ba).scale(f, 2));
    let zero = sigma_coeffs(alg, &dd.form, &Mat::zeros(7, 7), &a, &b);
    assert!(zero.iter().all(|p| p.is_zero()));

    // p = 2: σ1 = B(Db, a)
    let fx = fixture("manin_hei2").unwrap();
    let dd = data(&fx, "D9");
    let alg = &dd.base;
    let f = alg.field();
    let a = generic_element(alg, ParityFilter::Even, 0);
    let b = generic_element(alg, ParityFilter::Even, 1);
    let s = sigma_coeffs(alg, &dd.form, &dd.d, &a, &b);
    assert_eq!(s.len(), 1);
    assert_eq!(s[0], pair(f, &dd.form.gram, &b.apply(f, &dd.d), &a));
}

#[test]
fn psl3_cubics() {
    let fx = fixture("psl3").unwrap();
    for (d, c, gamma) in [("Dm3_1", "P1", 0), ("D0_2", "P2", 0), ("D0_3", "P3", 1)] {
        let mut dd = with_cubic(&fx, d, c);
        let r = verify_p(&dd.base, &dd.form, &dd.d, &dd.p_cubic).unwrap();
        assert!(r.ok(), "{d}/{c}: {r:?}");
        dd.gamma = gamma;
        let rep = check_conditions(&dd, ExtCase::Lie).unwrap();
        assert!(rep.ok(), "{rep}");
    }
    // wrong pairing fails
    let dd = with_cubic(&fx, "D0_3", "P1");
    assert!(!verify_p(&dd.base, &dd.form, &dd.d, &dd.p_cubic).unwrap().ok());
}

#[test]
fn gl3_and_reconstruction() {
    let fx = fixture("psl3").unwrap();
    let mut dd = with_cubic(&fx, "D0_3", "P3");
    dd.gamma = 1;
    let ext = double_extend(&dd, ExtCase::Lie, false).unwrap();
    assert_eq!(ext.alg.dim(), 9);
    assert!(ext.axioms.is_lie && ext.nis && ext.pmap_report.as_ref().unwrap().ok());
    assert!(lemma_s_sigma_holds(&ext, &dd));
    let x = unit(9, 0);
    let rec = reconstruct(&ext.alg, &ext.form, ext.pmap().unwrap(), &x).unwrap();
    assert_eq!(rec.case, ExtCase::Lie);
    assert_eq!(rec.data.gamma, 1);
    assert_eq!(rec.data.dim(), 7);
    // the recovered derivation agrees with D0_3 modulo inner ones
    let f = dd.base.field();
    let diff = rec.data.d.sub(f, &dd.d).unwrap();
    let inner_all = inner(&dd.base);
    let inn: &Subspace = inner_all.get(Parity::Even);
    assert!(inn.contains(f, &nisalg::cohomology::mat_to_flat(&diff)).unwrap());
}

#[test]
fn trivial_extension() {
    let fx = fixture("psl3").unwrap();
    let mut dd = data(&fx, "D0_3");
    dd.d = Mat::zeros(7, 7);
    let rep = check_conditions(&dd, ExtCase::Lie).unwrap();
    assert!(rep.ok(), "{rep}");
    let ext = double_extend(&dd, ExtCase::Lie, false).unwrap();
    let c = ext.alg.center();
    assert!(c.contains(ext.alg.field(), &unit(9, 0)).unwrap());
    assert!(c.contains(ext.alg.field(), &unit(9, 8)).unwrap());
    let rec = reconstruct(&ext.alg, &ext.form, ext.pmap().unwrap(), &unit(9, 0)).unwrap();
    assert!(rec.data.d.is_zero());
}

#[test]
fn osp_pre_lie() {
    let fx = fixture("osp12").unwrap();
    let dd = data(&fx, "Dm3");
    let rep = check_conditions(&dd, ExtCase::EvenBOddD).unwrap();
    let c = rep.get("p3con1").unwrap();
    assert!(!c.passed);
    assert_eq!(c.witness, Some(Witness { element: "x1".into(), value: 1 }));
    assert!(rep.get("DB0").unwrap().passed);
    assert!(double_extend(&dd, ExtCase::EvenBOddD, false).is_err());
    let ext = double_extend(&dd, ExtCase::EvenBOddD, true).unwrap();
    assert!(ext.axioms.jacobi);
    assert_eq!(ext.axioms.char3_cubic, Some(false));
    assert!(ext.axioms.is_pre_lie_only);
    assert!(!ext.conditions.get("StarT").unwrap().passed);
    assert!(ext.pmap.is_none());
    assert!(ext.nis);

    // D3 gives the same algebra: h -> 2h, x1 -> 2y1, y1 -> x1, x2 <-> y2, λ = 2
    let (g1, b1) = extend_algebra(&dd, ExtCase::EvenBOddD).unwrap();
    let (g2, b2) = extend_algebra(&data(&fx, "D3"), ExtCase::EvenBOddD).unwrap();
    let mut pi0 = Mat::zeros(5, 5);
    for (t, s, c) in [(0, 0, 2), (3, 1, 2), (1, 3, 1), (4, 2, 1), (2, 4, 1)] {
        pi0.set(t, s, c);
    }
    let iso = AdaptedIso { pi0, lambda: 2, kappa: vec![0; 5], rho_or_nu: 0 };
    let pi = build_adapted_iso(&g1, &b1, &iso).unwrap();
    let r = verify_iso(&g1, &b1, &g2, &b2, &pi, &iso).unwrap();
    assert!(r.ok(), "{r:?}");
}

#[test]
fn q3_reconstructs_psq3() {
    let q = build_q(3, 3).unwrap();
    let form = q.nis().unwrap();
    // the identity matrix: A11 + A22 + A33
    let mut x = vec![0; q.alg.dim()];
    for i in 0..3 {
        x[q.alg.index_of(&format!("A{}{}", i + 1, i + 1)).unwrap()] = 1;
    }
    let rec = reconstruct(&q.alg, form, &q.pmap, &x).unwrap();
    assert_eq!(rec.case, ExtCase::OddBOddD);
    assert_eq!(rec.data.d_parity, Parity::Odd);
    let a = &rec.data.base;
    assert_eq!((a.even_indices().len(), a.odd_indices().len()), (8, 8));
    assert!(is_nis(a, &rec.data.form));
    assert!(verify_pmap(a, &rec.data.pmap).ok());
}

#[test]
fn identity_iso() {
    let fx = fixture("psl3").unwrap();
    let mut dd = with_cubic(&fx, "D0_3", "P3");
    dd.gamma = 1;
    let ext = double_extend(&dd, ExtCase::Lie, false).unwrap();
    let iso = AdaptedIso::identity(7);
    let pi = build_adapted_iso(&ext.alg, &ext.form, &iso).unwrap();
    assert_eq!(pi, Mat::identity(9));
    let r = verify_iso(&ext.alg, &ext.form, &ext.alg, &ext.form, &pi, &iso).unwrap();
    assert!(r.ok(), "{r:?}");
    let pr = verify_p_iso(&ext.alg, ext.pmap().unwrap(), &ext.alg, ext.pmap().unwrap(), &pi, Some((&dd, &dd, &iso))).unwrap();
    assert!(pr.is_p_homomorphism() && pr.relations_hold(), "{pr:?}");
}

#[test]
fn cohomologous_and_scaled() {
    let fx = fixture("psl3").unwrap();
    let mut dd = with_cubic(&fx, "D0_3", "P3");
    dd.gamma = 1;
    let f = dd.base.field();
    let ext = double_extend(&dd, ExtCase::Lie, false).unwrap();
    for (lambda, kappa) in [(1u32, unit(7, 1)), (2, vec![0; 7]), (2, unit(7, 1)), (1, unit(7, 3))] {
        let iso = AdaptedIso { pi0: Mat::identity(7), lambda, kappa: kappa.clone(), rho_or_nu: 0 };
        let dt = dd.d.scale(f, lambda).add(f, &dd.base.ad(&kappa).unwrap()).unwrap();
        let tdata = transport_parameters(&dd, &dt, &iso).unwrap();
        let ext_t = double_extend(&tdata, ExtCase::Lie, false).unwrap();
        let pi = build_adapted_iso(&ext.alg, &ext.form, &iso).unwrap();
        let r = verify_iso(&ext.alg, &ext.form, &ext_t.alg, &ext_t.form, &pi, &iso).unwrap();
        assert!(r.ok(), "λ={lambda} ϰ={kappa:?}: {r:?}");
        let pr = verify_p_iso(&ext.alg, ext.pmap().unwrap(), &ext_t.alg, ext_t.pmap().unwrap(), &pi, Some((&dd, &tdata, &iso))).unwrap();
        assert!(pr.is_p_homomorphism(), "λ={lambda} ϰ={kappa:?}: {pr:?}");
        assert!(pr.relations_hold(), "λ={lambda} ϰ={kappa:?}: {pr:?}");
        assert_eq!(tdata.gamma, 1);
    }
}

#[test]
fn manin_extensions_as_algebras() {
    let fx = fixture("manin_hei2").unwrap();
    let a = &fx.cat.alg;
    let f = a.field();
    let ix = |s: &str| a.index_of(s).unwrap();
    let d79 = fx.derivation("D7").unwrap().matrix.add(f, &fx.derivation("D9").unwrap().matrix).unwrap();
    let d89 = fx.derivation("D8").unwrap().matrix.add(f, &fx.derivation("D9").unwrap().matrix).unwrap();
    let mk = |d: &Mat, cubic: &str, star: &str| {
        let mut dd = data(&fx, "D9");
        dd.d = d.clone();
        dd.gamma = 1;
        dd.a0 = unit(6, ix(star));
        dd.c0 = unit(6, ix(star));
        dd.p_cubic = PCubicMap::from_poly(a, fx.cubic(cubic).unwrap().to_poly(a));
        dd
    };
    let d1 = mk(&d79, "P1", "q*");
    let d2 = mk(&d89, "P2", "p*");
    let rep = check_conditions(&d1, ExtCase::Lie).unwrap();
    assert!(rep.get("d_invariant").unwrap().passed);
    assert!(rep.get("p_property").unwrap().passed, "{rep}");
    assert!(rep.get("P").unwrap().passed, "{rep}");
    assert!(!rep.get("restricted").unwrap().passed);
    let (g1, b1) = extend_algebra(&d1, ExtCase::Lie).unwrap();
    let (g2, b2) = extend_algebra(&d2, ExtCase::Lie).unwrap();
    assert!(g1.check_axioms().is_lie && is_nis(&g1, &b1));
    let mut pi0 = Mat::zeros(6, 6);
    for (s, t) in [("z", "z"), ("z*", "z*"), ("p", "q"), ("q", "p"), ("q*", "p*"), ("p*", "q*")] {
        pi0.set(ix(t), ix(s), 1);
    }
    let iso = AdaptedIso { pi0, lambda: 1, kappa: vec![0; 6], rho_or_nu: 0 };
    let pi = build_adapted_iso(&g1, &b1, &iso).unwrap();
    let r = verify_iso(&g1, &b1, &g2, &b2, &pi, &iso).unwrap();
    assert!(r.ok(), "{r:?}");
    // no 2-structure extends: the ad-condition fails at z
    let images: Vec<(usize, Vec<u32>)> = (0..8).map(|j| (j, vec![0; 8])).collect();
    assert!(jacobson_extend(&g1, &images).is_err());
}

#[test]
fn svect_corrected_extension() {
    let fx = fixture("svect13").unwrap();
    let mut dd = with_cubic(&fx, "D3c", "P");
    let r = verify_p(&dd.base, &dd.form, &dd.d, &dd.p_cubic).unwrap();
    assert!(r.ok(), "{r:?}");
    dd.gamma = 0;
    let ext = double_extend(&dd, ExtCase::Lie, false).unwrap();
    assert_eq!(ext.alg.dim(), 54);
}
