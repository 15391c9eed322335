//! Heisenberg algebras and the Manin double `h ⊕ h*`.

use super::CatalogAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Fp, Mat};
use crate::forms::BilForm;
use crate::restricted::jacobson_extend;
use crate::superalg::{AlgebraBuilder, BasisElem, LieSuperAlgebra, Parity};

/// hei(2n): `p_i, q_i, z` with `[p_i, q_i] = z`, `p^{[p]} = q^{[p]} = 0`, `z^{[p]} = z`.
pub fn build_hei(two_n: usize, p: u32) -> Result<CatalogAlgebra> {
    if two_n == 0 || two_n % 2 != 0 {
        return Err(Error::Input(format!("hei(2n) needs a positive even argument, got {two_n}")));
    }
    let f = Fp::new(p)?;
    let n = two_n / 2;
    let label = |s: &str, i: usize| if n == 1 { s.to_string() } else { format!("{s}{}", i + 1) };
    let mut basis: Vec<BasisElem> = (0..n).map(|i| BasisElem::new(label("p", i), Parity::Even)).collect();
    basis.extend((0..n).map(|i| BasisElem::new(label("q", i), Parity::Even)));
    basis.push(BasisElem::new("z", Parity::Even));
    let z = 2 * n;
    let mut b = AlgebraBuilder::new(f, basis);
    for i in 0..n {
        b.add(i, n + i, z, 1)?;
    }
    let alg = b.build()?;
    let images: Vec<(usize, Vec<u32>)> =
        (0..=z).map(|j| (j, if j == z { crate::exactla::unit(z + 1, z) } else { vec![0; z + 1] })).collect();
    let pmap = jacobson_extend(&alg, &images)?;
    Ok(CatalogAlgebra::new(alg, pmap, None))
}

/// `h ⊕ h*` with `h*` abelian, `[π, h] = π∘ad_h` and the pairing as form.
/// The p-map extends `h_i -> h_i^{[p]}`, `h*_i -> 0`.
pub fn build_manin_double(h: &CatalogAlgebra) -> Result<CatalogAlgebra> {
    let alg = &h.alg;
    if !alg.is_purely_even() {
        return Err(Error::Input("Manin double is built for Lie algebras".into()));
    }
    let f = alg.field();
    let n = alg.dim();
    let mut basis: Vec<BasisElem> = alg.basis().to_vec();
    basis.extend(alg.basis().iter().map(|b| BasisElem::new(format!("{}*", b.name), Parity::Even)));
    let mut b = AlgebraBuilder::new(f, basis);
    for i in 0..n {
        for j in i + 1..n {
            b.add_vec(i, j, &{
                let mut v = alg.bracket_basis(i, j);
                v.resize(2 * n, 0);
                v
            })?;
        }
    }
    // [h*_i, h_j] = Σ_k c_{jk}^i h*_k
    for i in 0..n {
        for j in 0..n {
            let mut v = vec![0; 2 * n];
            for k in 0..n {
                v[n + k] = alg.bracket_basis(j, k)[i];
            }
            if v.iter().any(|&x| x != 0) {
                b.add_vec(n + i, j, &v)?;
            }
        }
    }
    let double = b.build()?;
    let mut g = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        g.set(i, n + i, 1);
        g.set(n + i, i, 1);
    }
    let mut images = Vec::new();
    for j in 0..n {
        let mut v = h.pmap.image(j).expect("purely even").to_vec();
        v.resize(2 * n, 0);
        images.push((j, v));
    }
    for j in n..2 * n {
        images.push((j, vec![0; 2 * n]));
    }
    let pmap = jacobson_extend(&double, &images)?;
    Ok(CatalogAlgebra::new(double, pmap, Some(BilForm::new(Parity::Even, g))))
}

/// Abelian Lie algebra with the zero p-map, for tests and trivial cases.
pub fn build_abelian(n: usize, p: u32) -> Result<CatalogAlgebra> {
    let f = Fp::new(p)?;
    let alg = LieSuperAlgebra::abelian(f, (0..n).map(|i| BasisElem::new(format!("a{}", i + 1), Parity::Even)).collect());
    let pmap = jacobson_extend(&alg, &(0..n).map(|j| (j, vec![0; n])).collect::<Vec<_>>())?;
    Ok(CatalogAlgebra::new(alg, pmap, None))
}
