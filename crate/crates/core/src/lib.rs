//! Exact link Floer homology of L-space cable links.

pub mod algebra;
pub mod cables;
pub mod error;
pub mod graded;
pub mod half;
pub mod homology;
pub mod knots;
pub mod laurent;
pub mod oracle;
pub mod presets;
pub mod surgery;

pub use error::{Error, Result};
pub use graded::GradedDim;
pub use half::HalfInt;
