//! Exact Gaussian-integer Apollonian circle packings.
//!
//! Lax lattices of ℤ[i]², oriented Gaussian circles, Descartes quadruples and
//! the integer Lorentz group are tied together here with integer arithmetic
//! throughout; floating point appears only in the SVG emitter.

#![allow(clippy::needless_range_loop)]

pub mod circle;
pub mod error;
pub mod explorer;
pub mod gaussian;
pub mod lax;
pub mod minkowski;
pub mod render;
pub mod verify;

pub use error::{Error, Result};
