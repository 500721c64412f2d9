//! A small graded intersection calculus for surfaces attached to curves: the
//! symmetric square of one curve, the product of two, and their blow-ups at
//! finitely many points.
//!
//! Expressions are parsed from a tiny grammar, normalized by rewriting to a
//! basis of grade-2 classes, and evaluated to integer degrees.

#![allow(clippy::should_implement_trait, clippy::type_complexity)]

pub mod coef;
pub mod derive;
pub mod error;
pub mod eval;
pub mod expr;
pub mod normal;
pub mod relations;
pub mod residue;
pub mod symbol;

pub use coef::{Bindings, Coef};
pub use derive::{derive_pair_count, derive_secant_count, Derivation};
pub use error::{ChowError, Result};
pub use eval::{degree_polynomial, evaluate};
pub use expr::{parse, Expr};
pub use normal::{normalize, normalize_in, normalize_with, Class, Model, Normalized};
pub use relations::{relation_degree_check, Relation, RelationRow};
pub use residue::{residue_surface_classes, ResidueClasses};
