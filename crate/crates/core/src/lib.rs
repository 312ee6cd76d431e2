//! Finite-field toolkit for studying the permutation behaviour of the trinomial
//! f(X) = X^{q(p-1)+1} + a X^{pq} + X^{q+p-1} over F_{q^2}.

// Elements carry a reference to a context with lazily built tables; ordering never looks at it.
#![allow(clippy::mutable_key_type)]

pub mod charsum;
pub mod cli;
pub mod conjecture;
pub mod cubic;
pub mod curvelab;
pub mod error;
pub mod ff;
pub mod lintri;
pub mod permlab;

pub use error::{Error, Result};
