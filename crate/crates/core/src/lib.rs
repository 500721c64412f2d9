//! Lines and secant lines on cubic hypersurfaces.

#![allow(clippy::type_complexity, clippy::too_many_arguments)]

pub mod cubic;
pub mod curves;
pub mod error;
pub mod fano;
pub mod fixtures;
pub mod oracle;
pub mod secant;
pub mod solve;
pub mod space;

pub use error::{GeomError, Result};
