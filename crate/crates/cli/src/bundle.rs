//! JSON interchange for algebras and their attached data.
//!
//! Serialization goes through `serde_json::Value`, whose maps are sorted,
//! so key order is canonical. Sparse terms are sorted by index and carry no
//! zero coefficients.

use nisalg::catalog::{Fixture, NamedCubic, NamedDerivation};
use nisalg::dext::{DExtensionData, ExtCase, PCubicMap};
use nisalg::restricted::jacobson_extend;
use nisalg::{BasisElem, BilForm, Error, Fp, LieSuperAlgebra, Mat, PMap, Parity, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub parity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PMapEntry {
    pub i: usize,
    pub terms: Vec<(usize, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub name: String,
    pub parity: String,
    pub gram: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationEntry {
    pub name: String,
    pub parity: String,
    pub matrix: Vec<Vec<u32>>,
}

/// `terms` are `[i_1, .., i_p, c]` with `i_1 <= .. <= i_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicEntry {
    pub name: String,
    pub terms: Vec<Vec<u32>>,
}

/// Double-extension parameters over the bundle's algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionBlock {
    pub case: String,
    pub derivation: String,
    pub form: String,
    pub gamma: u32,
    pub a0: Vec<u32>,
    pub b0: Vec<u32>,
    pub lambda0: u32,
    pub c0: Vec<u32>,
    pub l: u32,
    pub m: u32,
    pub bxx: u32,
    /// `𝒫` on the basis; used when `cubic` is absent.
    pub p_basis: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub schema: u32,
    pub p: u32,
    pub basis: Vec<BasisEntry>,
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Vec<PMapEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forms: Option<Vec<FormEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivations: Option<Vec<DerivationEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubics: Option<Vec<CubicEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionBlock>,
}

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn parity_str(p: Parity) -> String {
    if p.is_odd() { "odd" } else { "even" }.into()
}

fn parse_parity(s: &str) -> Result<Parity> {
    match s {
        "even" | "0" => Ok(Parity::Even),
        "odd" | "1" => Ok(Parity::Odd),
        _ => Err(input(format!("parity must be \"even\" or \"odd\", got {s:?}"))),
    }
}

fn sparse(v: &[u32]) -> Vec<(usize, u32)> {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect()
}

fn rows(m: &Mat) -> Vec<Vec<u32>> {
    m.row_vecs()
}

fn check_coeff(p: u32, c: u32, what: &str) -> Result<u32> {
    if c < p {
        Ok(c)
    } else {
        Err(input(format!("{what}: coefficient {c} is not in 0..{p}")))
    }
}

fn check_vec(p: u32, n: usize, v: &[u32], what: &str) -> Result<Vec<u32>> {
    if v.len() != n {
        return Err(input(format!("{what}: expected length {n}, got {}", v.len())));
    }
    v.iter().map(|&c| check_coeff(p, c, what)).collect()
}

fn dense_terms(p: u32, n: usize, terms: &[(usize, u32)], what: &str) -> Result<Vec<u32>> {
    let mut v = vec![0; n];
    for &(k, c) in terms {
        if k >= n {
            return Err(input(format!("{what}: index {k} out of range")));
        }
        if v[k] != 0 {
            return Err(input(format!("{what}: index {k} repeated")));
        }
        v[k] = check_coeff(p, c, what)?;
    }
    Ok(v)
}

fn square(p: u32, n: usize, m: &[Vec<u32>], what: &str) -> Result<Mat> {
    if m.len() != n {
        return Err(input(format!("{what}: expected {n} rows, got {}", m.len())));
    }
    let rows: Vec<Vec<u32>> = m.iter().map(|r| check_vec(p, n, r, what)).collect::<Result<_>>()?;
    Mat::from_rows(n, &rows)
}

impl Bundle {
    pub fn from_algebra(alg: &LieSuperAlgebra) -> Bundle {
        let basis = alg.basis().iter().map(|b| BasisEntry { name: b.name.clone(), parity: parity_str(b.parity) }).collect();
        let brackets = alg
            .structure_constants()
            .iter()
            .map(|(&(i, j), terms)| BracketEntry { i, j, terms: terms.clone() })
            .collect();
        Bundle {
            schema: SCHEMA,
            p: alg.p(),
            basis,
            brackets,
            pmap: None,
            forms: None,
            derivations: None,
            cubics: None,
            extension: None,
        }
    }

    pub fn with_pmap(mut self, pm: &PMap) -> Bundle {
        self.pmap = Some(pm.images().into_iter().map(|(i, v)| PMapEntry { i, terms: sparse(&v) }).collect());
        self
    }

    pub fn add_form(&mut self, name: &str, form: &BilForm) {
        self.forms.get_or_insert_with(Vec::new).push(FormEntry {
            name: name.into(),
            parity: parity_str(form.parity),
            gram: rows(&form.gram),
        });
    }

    pub fn add_derivation(&mut self, d: &NamedDerivation) {
        self.derivations.get_or_insert_with(Vec::new).push(DerivationEntry {
            name: d.name.clone(),
            parity: parity_str(d.parity),
            matrix: rows(&d.matrix),
        });
    }

    pub fn add_cubic(&mut self, c: &NamedCubic) {
        let terms = c
            .terms
            .iter()
            .map(|(idx, coeff)| {
                let mut t: Vec<u32> = idx.iter().map(|&i| i as u32).collect();
                t.sort_unstable();
                t.push(*coeff);
                t
            })
            .collect();
        self.cubics.get_or_insert_with(Vec::new).push(CubicEntry { name: c.name.clone(), terms });
    }

    /// The fixture's algebra, p-map, form (named `B`), derivations and cubics.
    pub fn from_fixture(fx: &Fixture) -> Bundle {
        let mut b = Bundle::from_algebra(&fx.cat.alg).with_pmap(&fx.cat.pmap);
        if let Some(form) = &fx.cat.form {
            b.add_form("B", form);
        }
        for d in &fx.derivations {
            b.add_derivation(d);
        }
        for c in &fx.cubics {
            b.add_cubic(c);
        }
        b.canonicalize();
        b
    }

    /// The base of a double extension: `𝔞` with its data as derivation `D`,
    /// form `B`, and an extension block.
    pub fn from_extension_data(data: &DExtensionData, case: ExtCase) -> Bundle {
        let mut b = Bundle::from_algebra(&data.base).with_pmap(&data.pmap);
        b.add_form("B", &data.form);
        b.add_derivation(&NamedDerivation { name: "D".into(), parity: data.d_parity, matrix: data.d.clone() });
        let cubic = data.p_cubic.explicit.as_ref().map(|poly| {
            let terms = poly
                .terms()
                .iter()
                .map(|(m, &c)| (m.vars().iter().map(|&v| v as usize).collect(), c))
                .collect();
            b.add_cubic(&NamedCubic { name: "P".into(), terms });
            "P".to_string()
        });
        b.extension = Some(ExtensionBlock {
            case: case.name().into(),
            derivation: "D".into(),
            form: "B".into(),
            gamma: data.gamma,
            a0: data.a0.clone(),
            b0: data.b0.clone(),
            lambda0: data.lambda0,
            c0: data.c0.clone(),
            l: data.l,
            m: data.m,
            bxx: data.bxx,
            p_basis: data.p_cubic.basis_values.clone(),
            cubic,
        });
        b.canonicalize();
        b
    }

    /// Sort every list and sparse term list; drop zero coefficients.
    pub fn canonicalize(&mut self) {
        for br in &mut self.brackets {
            br.terms.retain(|t| t.1 != 0);
            br.terms.sort_unstable();
        }
        self.brackets.retain(|b| !b.terms.is_empty());
        self.brackets.sort_by_key(|b| (b.i, b.j));
        if let Some(pm) = &mut self.pmap {
            for e in pm.iter_mut() {
                e.terms.retain(|t| t.1 != 0);
                e.terms.sort_unstable();
            }
            pm.sort_by_key(|e| e.i);
        }
        if let Some(cs) = &mut self.cubics {
            for c in cs.iter_mut() {
                for t in c.terms.iter_mut() {
                    if let Some((_, idx)) = t.split_last_mut() {
                        idx.sort_unstable();
                    }
                }
                c.terms.retain(|t| t.last().is_some_and(|&c| c != 0));
                c.terms.sort();
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut b = self.clone();
        b.canonicalize();
        let v = serde_json::to_value(&b).expect("bundle serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Bundle> {
        let b: Bundle = serde_json::from_str(s).map_err(|e| input(format!("bundle JSON: {e}")))?;
        if b.schema != SCHEMA {
            return Err(input(format!("unsupported bundle schema {} (expected {SCHEMA})", b.schema)));
        }
        b.validate()?;
        Ok(b)
    }

    pub fn field(&self) -> Result<Fp> {
        Fp::new(self.p)
    }

    /// Full schema and parity validation, by building everything once.
    pub fn validate(&self) -> Result<()> {
        let alg = self.algebra()?;
        self.pmap(&alg)?;
        self.forms(&alg)?;
        self.derivations(&alg)?;
        self.cubics(&alg)?;
        if self.extension.is_some() {
            self.extension_data(&alg, None)?;
        }
        Ok(())
    }

    pub fn algebra(&self) -> Result<LieSuperAlgebra> {
        let f = self.field()?;
        let basis: Vec<BasisElem> =
            self.basis.iter().map(|b| Ok(BasisElem::new(b.name.clone(), parse_parity(&b.parity)?))).collect::<Result<_>>()?;
        let mut names: Vec<&str> = basis.iter().map(|b| b.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(input("basis names are not distinct"));
        }
        let n = basis.len();
        let mut entries = Vec::with_capacity(self.brackets.len());
        for br in &self.brackets {
            let what = format!("bracket ({},{})", br.i, br.j);
            let dense = dense_terms(self.p, n, &br.terms, &what)?;
            entries.push(((br.i, br.j), sparse(&dense)));
        }
        LieSuperAlgebra::new(f, basis, entries)
    }

    pub fn pmap(&self, alg: &LieSuperAlgebra) -> Result<Option<PMap>> {
        let Some(entries) = &self.pmap else { return Ok(None) };
        let n = alg.dim();
        let mut images = Vec::with_capacity(entries.len());
        for e in entries {
            if e.i >= n {
                return Err(input(format!("pmap index {} out of range", e.i)));
            }
            images.push((e.i, dense_terms(self.p, n, &e.terms, &format!("pmap image of {}", e.i))?));
        }
        let mut given: Vec<usize> = images.iter().map(|(i, _)| *i).collect();
        given.sort_unstable();
        given.dedup();
        if given != alg.even_indices() {
            return Err(input("pmap must list exactly the even basis elements"));
        }
        jacobson_extend(alg, &images).map(Some)
    }

    pub fn forms(&self, alg: &LieSuperAlgebra) -> Result<Vec<(String, BilForm)>> {
        let n = alg.dim();
        let mut out = Vec::new();
        for fe in self.forms.iter().flatten() {
            let parity = parse_parity(&fe.parity)?;
            let gram = square(self.p, n, &fe.gram, &format!("form {}", fe.name))?;
            for i in 0..n {
                for j in 0..n {
                    if gram.get(i, j) != 0 && alg.parity(i) + alg.parity(j) != parity {
                        return Err(input(format!("form {}: entry ({i},{j}) violates the form parity", fe.name)));
                    }
                }
            }
            out.push((fe.name.clone(), BilForm::new(parity, gram)));
        }
        Ok(out)
    }

    pub fn form(&self, alg: &LieSuperAlgebra, name: Option<&str>) -> Result<BilForm> {
        let forms = self.forms(alg)?;
        let found = match name {
            Some(n) => forms.into_iter().find(|(k, _)| k == n),
            None => forms.into_iter().next(),
        };
        found.map(|(_, f)| f).ok_or_else(|| input(format!("no form {}", name.unwrap_or("in bundle"))))
    }

    pub fn derivations(&self, alg: &LieSuperAlgebra) -> Result<Vec<NamedDerivation>> {
        let n = alg.dim();
        let mut out = Vec::new();
        for de in self.derivations.iter().flatten() {
            let parity = parse_parity(&de.parity)?;
            let matrix = square(self.p, n, &de.matrix, &format!("derivation {}", de.name))?;
            if !matrix.is_zero() && alg.operator_parity(&matrix) != Some(parity) {
                return Err(input(format!("derivation {} is not homogeneous of parity {}", de.name, de.parity)));
            }
            out.push(NamedDerivation { name: de.name.clone(), parity, matrix });
        }
        Ok(out)
    }

    /// By name, or by position when `key` is a number.
    pub fn derivation(&self, alg: &LieSuperAlgebra, key: &str) -> Result<NamedDerivation> {
        let ds = self.derivations(alg)?;
        if let Some(d) = ds.iter().find(|d| d.name == key) {
            return Ok(d.clone());
        }
        key.parse::<usize>()
            .ok()
            .and_then(|i| ds.get(i).cloned())
            .ok_or_else(|| input(format!("no derivation {key:?}")))
    }

    pub fn cubics(&self, alg: &LieSuperAlgebra) -> Result<Vec<NamedCubic>> {
        let n = alg.dim();
        let deg = self.p as usize;
        let mut out = Vec::new();
        for ce in self.cubics.iter().flatten() {
            let mut terms = Vec::with_capacity(ce.terms.len());
            for t in &ce.terms {
                let Some((&c, idx)) = t.split_last() else { return Err(input(format!("cubic {}: empty term", ce.name))) };
                if idx.len() != deg {
                    return Err(input(format!("cubic {}: terms need {deg} indices", ce.name)));
                }
                if idx.iter().any(|&i| i as usize >= n) || idx.windows(2).any(|w| w[0] > w[1]) {
                    return Err(input(format!("cubic {}: indices must be sorted and in range", ce.name)));
                }
                let c = check_coeff(self.p, c, &format!("cubic {}", ce.name))?;
                terms.push((idx.iter().map(|&i| i as usize).collect(), c));
            }
            out.push(NamedCubic { name: ce.name.clone(), terms });
        }
        Ok(out)
    }

    pub fn cubic(&self, alg: &LieSuperAlgebra, name: &str) -> Result<NamedCubic> {
        self.cubics(alg)?.into_iter().find(|c| c.name == name).ok_or_else(|| input(format!("no cubic {name:?}")))
    }

    /// The extension block as `DExtensionData`, optionally with another derivation.
    pub fn extension_data(&self, alg: &LieSuperAlgebra, derivation: Option<&NamedDerivation>) -> Result<(DExtensionData, ExtCase)> {
        let e = self.extension.as_ref().ok_or_else(|| input("bundle has no extension block"))?;
        let n = alg.dim();
        let pmap = self.pmap(alg)?.ok_or_else(|| input("extension bundle needs a pmap"))?;
        let form = self.form(alg, Some(&e.form))?;
        let d = match derivation {
            Some(d) => d.clone(),
            None => self.derivation(alg, &e.derivation)?,
        };
        let case: ExtCase = e.case.parse()?;
        let mut data = DExtensionData::new(alg.clone(), pmap, form, d.matrix, d.parity);
        let p = self.p;
        data.gamma = check_coeff(p, e.gamma, "gamma")?;
        data.a0 = check_vec(p, n, &e.a0, "a0")?;
        data.b0 = check_vec(p, n, &e.b0, "b0")?;
        data.lambda0 = check_coeff(p, e.lambda0, "lambda0")?;
        data.c0 = check_vec(p, n, &e.c0, "c0")?;
        data.l = check_coeff(p, e.l, "l")?;
        data.m = check_coeff(p, e.m, "m")?;
        data.bxx = check_coeff(p, e.bxx, "bxx")?;
        data.p_cubic = match &e.cubic {
            Some(name) => PCubicMap::from_poly(alg, self.cubic(alg, name)?.to_poly(alg)),
            None => nisalg::dext::build_p(alg, Some(&check_vec(p, n, &e.p_basis, "p_basis")?))?,
        };
        Ok((data, case))
    }
}
