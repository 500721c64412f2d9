//! Exact algebra over finite fields, their extension towers, and the rationals.

#![allow(clippy::needless_range_loop, clippy::wrong_self_convention, clippy::type_complexity)]

pub mod error;
pub mod factor;
pub mod field;
pub mod gf;
pub mod linalg;
pub mod local;
pub mod multipoly;
pub mod poly;
pub mod qroots;
pub mod resultant;
pub mod tower;

pub use error::{AlgError, Result};
pub use field::{Field, Rationals};
pub use gf::Gf;
pub use multipoly::MultiPoly;
pub use poly::UniPoly;
pub use resultant::eliminate;
pub use tower::{roots_in_tower, FieldTower, Ground, RationalGround, Root, RootMultiset};
