//! Exact numerics for Gaeta resolutions and strange duality on ℙ², Hirzebruch
//! surfaces, and their two-step blowups.

pub mod arith;
pub mod cohomology;
pub mod error;
pub mod exceptional;
pub mod gaeta;
pub mod json;
pub mod sd;
pub mod stability;
pub mod surface;

pub use error::{Error, Result};
