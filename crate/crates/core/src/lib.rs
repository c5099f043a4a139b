//! Exact noncommutative geometry over finitely presented *-algebras.

pub mod algebra;
pub mod check;
pub mod connection;
pub mod error;
pub mod fuzzy;
pub mod localization;
pub mod minimal;
pub mod module;
pub mod numeric;
pub mod parser;
pub mod ring;
pub mod scalar;
pub mod suites;

pub use algebra::{AlgebraElement, Derivation, Presentation, Word};
pub use check::{CheckResult, Report, Verdict, VerdictReport};
pub use error::{Error, Result};
pub use localization::{InverseRegistry, RationalExpr};
pub use numeric::{CMat, MatrixRep, PolyRep};
pub use ring::{DerivationOp, StarElement};
pub use scalar::{GaussRat, Poly, Scalar};
