//! Harmonic analysis on SL(2,ℝ): unitary representations, matrix elements, the
//! Losert basis of L²(SL(2,ℝ)), the Plancherel transform, and the centrally extended
//! Kac-Moody algebra built on functions over the group.

pub mod algebra;
pub mod error;
pub mod half;
pub mod kac_moody;
pub mod losert;
pub mod plancherel;
pub mod matrix;
pub mod reps;
pub mod specfun;
pub mod suite;
pub mod table;

pub use error::{Error, Result};
pub use half::HalfInt;
pub use table::CoefficientTable;
