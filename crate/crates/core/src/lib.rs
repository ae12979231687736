//! Finite categories and 2-categories, their nerves, and computable
//! homotopy invariants (homology, π₀, π₁ presentations).

pub mod catcore;
pub mod cli;
mod error;
pub mod fibers;
pub mod report;
pub mod simplexloop;
pub mod simplicial;
pub mod subdivision;
pub mod tilde;
pub mod twocat;

pub use error::{Error, Result};
