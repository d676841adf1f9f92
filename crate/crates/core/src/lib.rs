//! Exact term rewriting and derivation checking for tenzan jutsu
//! calculations.

pub mod canon;
pub mod derivation;
pub mod expr;
#[cfg(feature = "fuzz")]
pub mod fuzz;
pub mod label;
pub mod notation;
pub mod rules;
pub mod surd;

pub use canon::{
    canonical_form, equation_equivalent, evaluate, semantically_equal, Bindings, CanonicalPoly, ExprError,
};
pub use expr::{Atom, Equation, Expr, Factor, Sign, Term};
pub use label::Label;
pub use surd::SurdNumber;
