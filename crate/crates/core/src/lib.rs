//! Exact Kazhdan-Lusztig and twisted Kazhdan-Lusztig computations for finite
//! Coxeter systems with a diagram involution.

pub mod coxeter;
pub mod hecke;
pub mod kl;
pub mod laurent;
pub mod twisted;
pub mod verify;

pub use coxeter::{CoxeterError, CoxeterGroup, CoxeterSystem, ElementId, TwistSpec};
pub use laurent::{LaurentPoly, PolyId, PolyPool};
