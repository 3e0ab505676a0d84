//! Exact-arithmetic toolkit for standard Young tableaux: counting (three
//! independent methods), uniform hook-walk sampling, exact occupancy and
//! sorting-probability distributions, and reconstruction of closed-form
//! answers as rational functions of the rectangle width.

pub mod counting;
pub mod distributions;
pub mod error;
pub mod poly;
pub mod ratfunc;
pub mod sampler;
pub mod shapes;
pub mod symbolic;

pub use error::{Error, Result};
pub use shapes::{Cell, Partition, SkewShape};
