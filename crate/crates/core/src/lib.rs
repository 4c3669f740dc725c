//! Certified computations around the quartic points of the Fermat quintic
//! x^5 + y^5 + z^5 = 0.

pub mod arith;
pub mod curves;
pub mod error;
pub mod galois;
pub mod height;
pub mod line;
pub mod pipeline;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
