//! Exact computations with restricted Lie (super)algebras carrying a
//! non-degenerate invariant supersymmetric form (NIS), and their double
//! extensions, over GF(p).

pub mod catalog;
pub mod cohomology;
pub mod dext;
pub mod error;
pub mod exactla;
pub mod forms;
pub mod poly;
pub mod restricted;
pub mod superalg;

pub use error::{Error, Result};
pub use exactla::{Fp, Mat, Subspace};
pub use forms::BilForm;
pub use poly::{Monomial, Poly, PolyVector};
pub use restricted::PMap;
pub use superalg::{BasisElem, LieSuperAlgebra, Parity};
