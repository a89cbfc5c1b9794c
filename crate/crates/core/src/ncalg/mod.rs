//! The rewriting kernel: finitely presented noncommutative *-algebras with
//! q-swap and polynomial rewrite rules, canonical normal forms, morphism
//! application and verification, and empirical local-confluence testing.
//!
//! Ships the catalog of presentations used throughout the crate: the
//! quadric (Plucker) algebra and its two Ore localizations, the north and
//! south charts, their radius-extended intersections, the commutative
//! SU(2) algebra and the determinant-one chart variant.

mod rewrite;
mod morphism;
pub mod catalog;

pub use morphism::{MorphismTable, RelationCheck};
pub use rewrite::{
    AlgError, AlgebraElement, ConfluenceFailure, GenSym, Presentation, Word,
};

/// True together with a zero residual exactly when the two sides reduce to
/// the same normal form.
pub fn verify_identity(
    p: &Presentation,
    lhs: &AlgebraElement,
    rhs: &AlgebraElement,
) -> Result<(bool, AlgebraElement), AlgError> {
    let residual = p.normal_form(&lhs.sub(rhs))?;
    Ok((residual.is_zero(), residual))
}
