//! F₂ linear algebra, exterior algebras and chain complexes.

pub mod complex;
pub mod exterior;
pub mod f2;
pub mod ideal;

pub use complex::{homology_f2, ChainComplexF2, ComplexBuilder, SlotHomology};
pub use exterior::{cube_diff, truncated_diff, ExtElement};
pub use ideal::{ideal_graded_piece, IdealPiece};
