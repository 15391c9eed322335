//! Double extensions `𝔤 = Kx ⊕ 𝔞 ⊕ Kx*` of NIS algebras by a derivation.
//!
//! Basis layout of every constructed `𝔤`: index 0 is `x`, indices `1..=n`
//! carry the basis of `𝔞` in order, index `n + 1` is `x*`.

mod conditions;
mod extend;
mod iso;
mod pcubic;
mod reconstruct;

use std::fmt;
use std::str::FromStr;

pub use conditions::{check_conditions, is_derivation, Condition, ConditionReport, Witness};
pub use extend::{double_extend, extend_algebra, lemma_s_sigma_holds, DoubleExtension};
pub use iso::{build_adapted_iso, verify_iso, verify_p_iso, transport_parameters, AdaptedIso, IsoReport, PIsoReport, Relation};
pub use pcubic::{build_p, sigma_coeffs, verify_p, PCubicMap, PReport};
pub use reconstruct::{reconstruct, Reconstruction};

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::forms::BilForm;
use crate::restricted::PMap;
use crate::superalg::{LieSuperAlgebra, Parity};

/// Which construction applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtCase {
    Lie,
    EvenBOddD,
    EvenBEvenD,
    OddBOddD,
    OddBEvenD,
}

impl ExtCase {
    pub const ALL: [ExtCase; 5] =
        [ExtCase::Lie, ExtCase::EvenBOddD, ExtCase::EvenBEvenD, ExtCase::OddBOddD, ExtCase::OddBEvenD];

    /// The case fixed by the parities; `Lie` for purely even input.
    pub fn detect(alg: &LieSuperAlgebra, form: Parity, d: Parity) -> ExtCase {
        ExtCase::from_parities(alg.is_purely_even(), form, d)
    }

    pub fn from_parities(purely_even: bool, form: Parity, d: Parity) -> ExtCase {
        match (form, d) {
            (Parity::Even, Parity::Even) if purely_even => ExtCase::Lie,
            (Parity::Even, Parity::Even) => ExtCase::EvenBEvenD,
            (Parity::Even, Parity::Odd) => ExtCase::EvenBOddD,
            (Parity::Odd, Parity::Even) => ExtCase::OddBEvenD,
            (Parity::Odd, Parity::Odd) => ExtCase::OddBOddD,
        }
    }

    pub fn form_parity(self) -> Parity {
        match self {
            ExtCase::Lie | ExtCase::EvenBOddD | ExtCase::EvenBEvenD => Parity::Even,
            ExtCase::OddBOddD | ExtCase::OddBEvenD => Parity::Odd,
        }
    }

    pub fn d_parity(self) -> Parity {
        match self {
            ExtCase::Lie | ExtCase::EvenBEvenD | ExtCase::OddBEvenD => Parity::Even,
            ExtCase::EvenBOddD | ExtCase::OddBOddD => Parity::Odd,
        }
    }

    /// `(p(x), p(x*))`.
    pub fn xy_parities(self) -> (Parity, Parity) {
        let d = self.d_parity();
        match self.form_parity() {
            Parity::Even => (d, d),
            Parity::Odd => (d.flip(), d),
        }
    }

    /// Cases whose p-map carries an `x`-component `𝒫(a)` on `𝔞_ev`.
    pub fn has_p_cubic(self) -> bool {
        matches!(self, ExtCase::Lie | ExtCase::EvenBEvenD | ExtCase::OddBOddD)
    }

    /// Cases where `x*` is even and gets a p-th power `a0 + l x + γ x*`.
    pub fn has_xstar_power(self) -> bool {
        matches!(self, ExtCase::Lie | ExtCase::EvenBEvenD | ExtCase::OddBEvenD)
    }

    /// Cases where `x` is even and gets `x^{[p]} = m x + c0`.
    pub fn has_x_power(self) -> bool {
        matches!(self, ExtCase::Lie | ExtCase::EvenBEvenD | ExtCase::OddBOddD)
    }

    pub fn name(self) -> &'static str {
        match self {
            ExtCase::Lie => "lie",
            ExtCase::EvenBOddD => "super_evenB_oddD",
            ExtCase::EvenBEvenD => "super_evenB_evenD",
            ExtCase::OddBOddD => "super_oddB_oddD",
            ExtCase::OddBEvenD => "super_oddB_evenD",
        }
    }
}

impl fmt::Display for ExtCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExtCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExtCase> {
        ExtCase::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Input(format!("unknown extension case {s:?}")))
    }
}

/// Ingredients of a double extension. Unused parameters stay zero.
#[derive(Clone, Debug)]
pub struct DExtensionData {
    pub base: LieSuperAlgebra,
    pub pmap: PMap,
    pub form: BilForm,
    pub d: Mat,
    pub d_parity: Parity,
    pub gamma: u32,
    pub a0: Vec<u32>,
    /// `[x*, x*] = 2 b0 (+ λ0 x)` in the odd-`𝒟` cases.
    pub b0: Vec<u32>,
    pub lambda0: u32,
    /// `x^{[p]} = m x + c0`.
    pub c0: Vec<u32>,
    pub l: u32,
    pub m: u32,
    pub p_cubic: PCubicMap,
    /// `B(x*, x*)`, only meaningful for p = 2.
    pub bxx: u32,
}

impl DExtensionData {
    /// All parameters zero and `𝒫` zero on the basis.
    pub fn new(base: LieSuperAlgebra, pmap: PMap, form: BilForm, d: Mat, d_parity: Parity) -> DExtensionData {
        let n = base.dim();
        DExtensionData {
            base,
            pmap,
            form,
            d,
            d_parity,
            gamma: 0,
            a0: vec![0; n],
            b0: vec![0; n],
            lambda0: 0,
            c0: vec![0; n],
            l: 0,
            m: 0,
            p_cubic: PCubicMap::zero(n),
            bxx: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn case(&self) -> ExtCase {
        ExtCase::detect(&self.base, self.form.parity, self.d_parity)
    }

    pub(crate) fn check_sizes(&self) -> Result<()> {
        let n = self.dim();
        let ok = self.d.rows() == n
            && self.d.cols() == n
            && self.form.gram.rows() == n
            && self.form.gram.cols() == n
            && self.pmap.dim() == n
            && [&self.a0, &self.b0, &self.c0].iter().all(|v| v.len() == n)
            && self.p_cubic.basis_values.len() == n;
        if ok {
            Ok(())
        } else {
            Err(Error::Input("double-extension data has inconsistent sizes".into()))
        }
    }
}
