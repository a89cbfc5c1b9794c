//! Exact symbolic engine for a q-deformed toric 4-sphere: coordinate algebras
//! presented by q-swap and polynomial rewrite rules, their differential
//! calculi, the SU(2) coordinate Hopf algebra, the twisted tensor
//! factorization of the chart intersection, the principal bundle sheaf with
//! its strong connection, and the anti-selfdual instanton curvature.
//!
//! Everything is exact: coefficients are Laurent polynomials in the
//! deformation parameter `q` over the rationals, and every verification
//! reduces a difference of elements to the zero normal form.

pub mod coeff;
pub mod ncalg;
pub mod dga;
pub mod hopf;
pub mod twist;
pub mod tensor;
pub mod sheaf;
pub mod bundle;
pub mod instanton;
pub mod parse;
pub mod report;
pub mod suites;

pub use coeff::{LaurentScalar, RationalFunctionScalar};
pub use ncalg::{AlgebraElement, MorphismTable, Presentation, Word};
pub use report::{Check, VerificationReport};
