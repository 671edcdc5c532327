//! Exact and numerical tools for hyperbolic and partially hyperbolic
//! automorphisms of tori given by integer matrices.

pub mod conjugacy;
pub mod dynamics;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod foliation;
pub mod forms;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod modp;
pub mod numeric;
pub mod poly;
pub mod reciprocal;
pub mod roots;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use poly::IntPoly;
