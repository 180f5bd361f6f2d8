//! Exact computer algebra for Freudenthal triple systems, gifts, and the real
//! forms of E7.

pub mod albert;
pub mod cli;
pub mod composition;
pub mod descent;
pub mod error;
pub mod forms;
pub mod fts;
pub mod gift;
pub mod matrix;
pub mod modular;
pub mod poly;
pub mod quadext;
pub mod report;
pub mod sampling;
pub mod scalar;

pub use error::{AlgebraError, Result};
pub use quadext::QuadExtScalar;
pub use scalar::{Field, Ring, Scalar};
