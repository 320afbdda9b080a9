//! Generalized Ramanujan sums c_q^(β)(n), their summatory functions and
//! Dirichlet series, truncated explicit formulas over the nontrivial zeros
//! of the Riemann zeta function, and Bartz-type zero sums.

pub mod arith;
pub mod bartz;
pub mod config;
pub mod dd;
pub mod error;
pub mod explicit;
pub mod quad;
pub mod series;
pub mod special;
pub mod sum;
pub mod zeta;

pub use error::{Error, Result};
