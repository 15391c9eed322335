//! Example algebras with their forms, p-maps, cocycles and cubic forms.

pub mod heisenberg;
pub mod matrix;
mod svect_data;
pub mod vectorial;

pub use heisenberg::{build_abelian, build_hei, build_manin_double};
pub use matrix::{build_gl, build_osp12, build_psl, build_psq, build_q, build_sl, MatrixRealization};
pub use vectorial::{build_o, build_svect1, build_vect, build_vect11_p3, DividedPowerAlgebra, Elem, Svect, Vect};

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::forms::BilForm;
use crate::poly::{var, Monomial, Poly};
use crate::restricted::PMap;
use crate::superalg::{LieSuperAlgebra, Parity};

/// An algebra with its p-map and (optionally) a NIS.
#[derive(Clone, Debug)]
pub struct CatalogAlgebra {
    pub alg: LieSuperAlgebra,
    pub pmap: PMap,
    pub form: Option<BilForm>,
}

impl CatalogAlgebra {
    pub fn new(alg: LieSuperAlgebra, pmap: PMap, form: Option<BilForm>) -> CatalogAlgebra {
        CatalogAlgebra { alg, pmap, form }
    }

    /// The form, or an error naming the algebra's lack of one.
    pub fn nis(&self) -> Result<&BilForm> {
        self.form.as_ref().ok_or_else(|| Error::Input("algebra has no form attached".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedDerivation {
    pub name: String,
    pub parity: Parity,
    pub matrix: Mat,
}

/// A homogeneous degree-p form; each term is sorted basis indices and a coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCubic {
    pub name: String,
    pub terms: Vec<(Vec<usize>, u32)>,
}

impl NamedCubic {
    /// As a polynomial in the coordinate variables `var(0, i)`.
    pub fn to_poly(&self, alg: &LieSuperAlgebra) -> Poly {
        let f = alg.field();
        let mut p = Poly::zero();
        for (idx, c) in &self.terms {
            let vars: Vec<_> = idx.iter().map(|&i| var(0, i)).collect();
            p.add_term(f, Monomial::from_vars(&vars), *c);
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Int(i64),
    Bool(bool),
    Vector(Vec<u32>),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub cat: CatalogAlgebra,
    pub derivations: Vec<NamedDerivation>,
    pub cubics: Vec<NamedCubic>,
    pub expected: Vec<(String, Expected)>,
}

impl Fixture {
    pub fn derivation(&self, name: &str) -> Option<&NamedDerivation> {
        self.derivations.iter().find(|d| d.name == name)
    }

    pub fn cubic(&self, name: &str) -> Option<&NamedCubic> {
        self.cubics.iter().find(|c| c.name == name)
    }

    pub fn expected(&self, key: &str) -> Option<&Expected> {
        self.expected.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

pub const FIXTURE_NAMES: [&str; 6] = ["psl3", "manin_hei2", "osp12", "svect13", "vect11", "psq3"];

/// The map `Σ c · a ⊗ b̂`, where `a ⊗ b̂` sends `b` to `(-1)^{p(b)} a` and
/// kills the other basis elements. Terms are `(c, a, b)` by basis index.
pub fn cochain(alg: &LieSuperAlgebra, terms: &[(i64, usize, usize)]) -> Mat {
    let f = alg.field();
    let n = alg.dim();
    let mut m = Mat::zeros(n, n);
    for &(c, a, b) in terms {
        let c = f.mul(f.from_i64(c), f.sign(alg.parity(b).is_odd()));
        m.set(a, b, f.add(m.get(a, b), c));
    }
    m
}

fn cubic(name: &str, terms: &[(&[usize], u32)]) -> NamedCubic {
    NamedCubic {
        name: name.into(),
        terms: terms
            .iter()
            .map(|(idx, c)| {
                let mut v = idx.to_vec();
                v.sort_unstable();
                (v, *c)
            })
            .collect(),
    }
}

fn derivation(alg: &LieSuperAlgebra, name: &str, terms: &[(i64, usize, usize)]) -> NamedDerivation {
    let matrix = cochain(alg, terms);
    let parity = alg.operator_parity(&matrix).expect("homogeneous cocycle");
    NamedDerivation { name: name.into(), parity, matrix }
}

fn ix(alg: &LieSuperAlgebra, name: &str) -> usize {
    alg.index_of(name).unwrap_or_else(|| panic!("basis element {name}"))
}

pub fn fixture(name: &str) -> Result<Fixture> {
    match name {
        "psl3" => psl3(),
        "manin_hei2" => manin_hei2(),
        "osp12" => osp12(),
        "svect13" => svect13(),
        "vect11" => vect11(),
        "psq3" => psq3(),
        _ => Err(Error::Input(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", ")))),
    }
}

fn psl3() -> Result<Fixture> {
    let cat = build_psl(3, 3)?;
    let a = &cat.alg;
    let (x1, x2, x3, y1, y2, y3) = (ix(a, "x1"), ix(a, "x2"), ix(a, "x3"), ix(a, "y1"), ix(a, "y2"), ix(a, "y3"));
    let derivations = vec![
        derivation(a, "Dm3_1", &[(1, y1, x3), (1, y3, x1)]),
        derivation(a, "D0_2", &[(2, x1, x2), (1, y2, y1)]),
        derivation(a, "D0_3", &[(1, x1, x1), (1, x3, x3), (2, y1, y1), (2, y3, y3)]),
    ];
    // λ_i is the coordinate on e_i = basis index i - 1
    let cubics = vec![
        cubic("P1", &[(&[5, 3, 3], 1), (&[0, 1, 3], 2), (&[2, 1, 1], 2)]),
        cubic("P2", &[(&[6, 2, 2], 1), (&[0, 4, 2], 2), (&[3, 4, 4], 1)]),
        cubic("P3", &[(&[0, 1, 4], 1), (&[3, 5, 4], 1), (&[1, 2, 6], 2), (&[0, 3, 6], 1)]),
    ];
    let zero = Expected::Vector(vec![0; 7]);
    let expected = vec![
        ("dim".into(), Expected::Int(7)),
        ("out_dim".into(), Expected::Pair(7, 0)),
        ("restricted_h1_dim".into(), Expected::Pair(7, 0)),
        ("gamma.Dm3_1".into(), Expected::Int(0)),
        ("a0.Dm3_1".into(), zero.clone()),
        ("gamma.D0_2".into(), Expected::Int(0)),
        ("a0.D0_2".into(), zero.clone()),
        ("gamma.D0_3".into(), Expected::Int(1)),
        ("a0.D0_3".into(), zero),
        ("h2_trivial.D0_3".into(), Expected::Int(0)),
        ("h2_trivial.D0_2".into(), Expected::Int(3)),
        ("h2_trivial.Dm3_1".into(), Expected::Int(4)),
    ];
    Ok(Fixture { name: "psl3".into(), cat, derivations, cubics, expected })
}

fn manin_hei2() -> Result<Fixture> {
    let cat = build_manin_double(&build_hei(2, 2)?)?;
    let a = &cat.alg;
    let (p, q, z, ps, qs, zs) = (ix(a, "p"), ix(a, "q"), ix(a, "z"), ix(a, "p*"), ix(a, "q*"), ix(a, "z*"));
    let derivations = vec![
        derivation(a, "D1", &[(1, qs, p)]),
        derivation(a, "D2", &[(1, qs, q)]),
        derivation(a, "D3", &[(1, qs, zs)]),
        derivation(a, "D4", &[(1, ps, p)]),
        derivation(a, "D5", &[(1, ps, zs)]),
        derivation(a, "D6", &[(1, z, zs)]),
        derivation(a, "D7", &[(1, p, p), (1, qs, qs), (1, z, z)]),
        derivation(a, "D8", &[(1, q, q), (1, ps, ps), (1, z, z)]),
        derivation(a, "D9", &[(1, qs, qs), (1, ps, ps), (1, zs, zs)]),
    ];
    // a = rz + sp + wq + up* + vq* + tz*
    let cubics = vec![cubic("P1", &[(&[z, zs], 1), (&[p, ps], 1)]), cubic("P2", &[(&[z, zs], 1), (&[q, qs], 1)])];
    let expected = vec![
        ("dim".into(), Expected::Int(6)),
        ("restricted_h1_dim".into(), Expected::Pair(9, 0)),
        ("gamma.D7+D9".into(), Expected::Int(1)),
        ("gamma.D8+D9".into(), Expected::Int(1)),
    ];
    Ok(Fixture { name: "manin_hei2".into(), cat, derivations, cubics, expected })
}

fn osp12() -> Result<Fixture> {
    let cat = build_osp12(3)?;
    let a = &cat.alg;
    let (x1, x2, y1, y2) = (ix(a, "x1"), ix(a, "x2"), ix(a, "y1"), ix(a, "y2"));
    let derivations =
        vec![derivation(a, "Dm3", &[(2, y1, x2), (1, y2, x1)]), derivation(a, "D3", &[(1, x1, y2), (1, x2, y1)])];
    let expected = vec![
        ("dim".into(), Expected::Pair(3, 2)),
        ("out_dim".into(), Expected::Pair(0, 2)),
        ("h2_trivial".into(), Expected::Int(0)),
        ("p3con1.Dm3".into(), Expected::Int(1)),
    ];
    Ok(Fixture { name: "osp12".into(), cat, derivations, cubics: Vec::new(), expected })
}

fn decode_display(sv: &Svect, terms: &[(&[(u32, Elem)], Elem)]) -> Result<Mat> {
    let f = sv.cat.alg.field();
    let n = sv.cat.alg.dim();
    let mut m = Mat::zeros(n, n);
    for (imgs, hat) in terms {
        let hc = sv.coords_of(*hat).ok_or_else(|| Error::Input(format!("{hat:?} is not in svect")))?;
        let nz: Vec<usize> = (0..n).filter(|&k| hc[k] != 0).collect();
        let [j] = nz[..] else {
            return Err(Error::Input(format!("hatted element {hat:?} is not a basis vector")));
        };
        let s = f.inv(hc[j]);
        for (c, e) in imgs.iter() {
            let v = sv.coords_of(*e).ok_or_else(|| Error::Input(format!("{e:?} is not in svect")))?;
            let k = f.mul(*c, s);
            for (i, &x) in v.iter().enumerate() {
                m.set(i, j, f.mul_add(m.get(i, j), k, x));
            }
        }
    }
    Ok(m)
}

fn svect13() -> Result<Fixture> {
    let sv = build_svect1()?;
    let a = &sv.cat.alg;
    let d0 = decode_display(&sv, svect_data::D0_LITERAL)?;
    let d3 = decode_display(&sv, svect_data::D3_LITERAL)?;
    let mut dstar = Mat::zeros(52, 52);
    for &(src, dst, c) in svect_data::D3_CORRECTED {
        dstar.set(dst - 1, src - 1, c);
    }
    let derivations = vec![
        NamedDerivation { name: "D0".into(), parity: Parity::Even, matrix: d0 },
        NamedDerivation { name: "D3".into(), parity: Parity::Even, matrix: d3 },
        NamedDerivation { name: "D3c".into(), parity: Parity::Even, matrix: dstar },
    ];
    let terms: Vec<(Vec<usize>, u32)> = svect_data::CUBIC
        .iter()
        .map(|(c, idx)| {
            let mut v: Vec<usize> = idx.iter().map(|i| i - 1).collect();
            v.sort_unstable();
            (v, *c)
        })
        .collect();
    let cubics = vec![NamedCubic { name: "P".into(), terms }];
    let expected = vec![("dim".into(), Expected::Int(52))];
    let _ = a;
    Ok(Fixture { name: "svect13".into(), cat: sv.cat, derivations, cubics, expected })
}

fn vect11() -> Result<Fixture> {
    let cat = build_vect11_p3()?;
    let expected = vec![("dim".into(), Expected::Int(3)), ("out_dim".into(), Expected::Pair(0, 0))];
    Ok(Fixture { name: "vect11".into(), cat, derivations: Vec::new(), cubics: Vec::new(), expected })
}

fn psq3() -> Result<Fixture> {
    let cat = build_psq(3, 3)?;
    let expected = vec![("dim".into(), Expected::Pair(8, 8)), ("out_dim".into(), Expected::Pair(0, 1))];
    Ok(Fixture { name: "psq3".into(), cat, derivations: Vec::new(), cubics: Vec::new(), expected })
}
