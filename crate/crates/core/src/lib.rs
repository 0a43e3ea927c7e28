//! Points far from the zero sets of real and complex polynomials on spheres
//! and in the unit ball, and covering refuters built on them.

pub mod ball;
pub mod cheb;
pub mod complex;
pub mod covering;
pub mod error;
pub mod optimize;
pub mod poly;
pub mod roots;
pub mod sphere;
pub mod trig;

pub use error::{Error, Result};
