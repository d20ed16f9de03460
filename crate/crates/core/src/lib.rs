//! Newton's method on rational functions: construction and analysis of
//! Newton maps, the classification of polynomial Newton maps with an
//! exceptional fixed point, and numerical basin dynamics.

pub mod classifier;
pub mod conjugacy;
pub mod dynamics;
mod error;
pub mod mcmullen;
pub mod mobius;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod render;
pub mod report;
pub mod roots;
pub mod sphere;
pub mod verify;

pub use error::Error;
