use nisalg::catalog::*;
use nisalg::cohomology::{derivations_of_parity, out_dim, restricted_h1_dim};
use nisalg::forms::{check_nis, is_d_invariant};
use nisalg::exactla::Mat;
use nisalg::restricted::{evaluate, is_restricted_derivation, verify_pmap};
use nisalg::superalg::Parity;

fn is_derivation(alg: &nisalg::LieSuperAlgebra, d: &Mat, parity: Parity) -> bool {
    let f = alg.field();
    let sp = derivations_of_parity(alg, parity);
    sp.contains(f, &nisalg::cohomology::mat_to_flat(d)).unwrap()
}

fn check_catalog(cat: &CatalogAlgebra) {
    let ax = cat.alg.check_axioms();
    assert!(ax.is_lie, "{ax:?}");
    let rep = verify_pmap(&cat.alg, &cat.pmap);
    assert!(rep.ok(), "{rep}");
    if let Some(b) = &cat.form {
        assert_eq!(check_nis(&cat.alg, b), Ok(()));
    }
}

#[test]
fn psl3_gram_and_dims() {
    let fx = fixture("psl3").unwrap();
    check_catalog(&fx.cat);
    let g = &fx.cat.form.as_ref().unwrap().gram;
    let mut want = Mat::zeros(7, 7);
    want.set(0, 0, 2);
    for (i, s) in [(1, 1), (2, 1), (3, 2)] {
        want.set(i, i + 3, s);
        want.set(i + 3, i, s);
    }
    assert_eq!(g, &want);
    assert_eq!(out_dim(&fx.cat.alg), (7, 0));
    for d in &fx.derivations {
        assert!(is_derivation(&fx.cat.alg, &d.matrix, d.parity), "{}", d.name);
        assert!(is_restricted_derivation(&fx.cat.alg, &fx.cat.pmap, &d.matrix).unwrap());
        assert!(is_d_invariant(&fx.cat.alg, fx.cat.form.as_ref().unwrap(), &d.matrix, d.parity).unwrap());
    }
    assert_eq!(evaluate(&fx.cat.alg, &fx.cat.pmap, &[1, 0, 0, 0, 0, 0, 0]).unwrap(), vec![1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(restricted_h1_dim(&fx.cat.alg, &fx.cat.pmap).unwrap(), (7, 0));
}

#[test]
fn small_builders() {
    let sl2 = build_sl(2, 5).unwrap();
    check_catalog(&sl2);
    assert_eq!(sl2.pmap.image(0).unwrap(), &[1, 0, 0]);
    let gl1 = build_gl(1, 7).unwrap();
    assert_eq!(gl1.pmap.image(0).unwrap(), &[1]);
    for cat in [build_gl(2, 3).unwrap(), build_hei(4, 3).unwrap(), build_q(2, 3).unwrap()] {
        check_catalog(&cat);
    }
    assert!(build_psl(3, 2).is_err());
    assert!(build_psq(2, 3).is_err());
}

#[test]
fn manin_double() {
    let fx = fixture("manin_hei2").unwrap();
    check_catalog(&fx.cat);
    let a = &fx.cat.alg;
    let nonzero: Vec<(String, String)> = a
        .structure_constants()
        .keys()
        .map(|&(i, j)| (a.name(i).to_string(), a.name(j).to_string()))
        .collect();
    assert_eq!(nonzero.len(), 3, "{nonzero:?}");
    for d in &fx.derivations {
        assert!(is_derivation(a, &d.matrix, d.parity), "{}", d.name);
    }
    // with z^[2] = z only D7 + D8 of the pair D7, D8 is restricted
    assert_eq!(restricted_h1_dim(a, &fx.cat.pmap).unwrap(), (8, 0));
    let f = a.field();
    let d7 = &fx.derivation("D7").unwrap().matrix;
    let d8 = &fx.derivation("D8").unwrap().matrix;
    let d9 = &fx.derivation("D9").unwrap().matrix;
    assert!(!is_restricted_derivation(a, &fx.cat.pmap, d7).unwrap());
    assert!(is_restricted_derivation(a, &fx.cat.pmap, &d7.add(f, d8).unwrap()).unwrap());
    assert!(!is_restricted_derivation(a, &fx.cat.pmap, &d7.add(f, d9).unwrap()).unwrap());
    let abel = build_manin_double(&build_abelian(2, 2).unwrap()).unwrap();
    assert!(abel.alg.structure_constants().is_empty());
}

#[test]
fn osp_and_psq() {
    let fx = fixture("osp12").unwrap();
    check_catalog(&fx.cat);
    assert_eq!(out_dim(&fx.cat.alg), (0, 2));
    for d in &fx.derivations {
        assert!(is_derivation(&fx.cat.alg, &d.matrix, d.parity), "{}", d.name);
        assert_eq!(d.parity, Parity::Odd);
    }
    let psq = fixture("psq3").unwrap();
    check_catalog(&psq.cat);
    assert_eq!((psq.cat.alg.even_indices().len(), psq.cat.alg.odd_indices().len()), (8, 8));
    let q3 = build_q(3, 3).unwrap();
    check_catalog(&q3);
}

#[test]
fn vect_small() {
    let fx = fixture("vect11").unwrap();
    check_catalog(&fx.cat);
    assert_eq!(out_dim(&fx.cat.alg), (0, 0));
    let v2 = build_vect(2, 2).unwrap();
    assert_eq!(v2.cat.alg.dim(), 8);
    check_catalog(&v2.cat);
    assert_eq!(out_dim(&v2.cat.alg), (0, 0));
}

#[test]
fn svect_builds() {
    let t = std::time::Instant::now();
    let fx = fixture("svect13").unwrap();
    eprintln!("svect built in {:?}", t.elapsed());
    check_catalog(&fx.cat);
    eprintln!("checked in {:?}", t.elapsed());
    assert_eq!(fx.cat.alg.dim(), 52);
    let d = fx.derivation("D3c").unwrap();
    assert!(is_derivation(&fx.cat.alg, &d.matrix, Parity::Even));
    assert!(is_d_invariant(&fx.cat.alg, fx.cat.form.as_ref().unwrap(), &d.matrix, Parity::Even).unwrap());
    eprintln!("done in {:?}", t.elapsed());
}
