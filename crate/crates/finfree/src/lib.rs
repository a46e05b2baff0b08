//! Finite free probability for real-rooted polynomials.

pub mod conv;
pub mod cumulants;
pub mod error;
pub mod families;
pub mod laws;
pub mod poly;
pub mod real;
pub mod rootfind;
pub mod transforms;

pub use error::{Error, Result};
pub use poly::{interlaces, leq_order, Poly, RootSet, SymPoly};
pub use real::{Float, Prec, DEFAULT_PREC};
