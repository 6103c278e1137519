//! Exact integer and rational linear algebra.

pub mod descriptor;
pub mod echelon;
pub mod hermite;
pub mod int;
pub mod matrix;
pub mod rat;
pub mod smith;
pub mod solve;

pub use descriptor::{GroupDescriptor, MixedGroupDescriptor};
pub use echelon::RowEchelon;
pub use hermite::ColumnHermite;
pub use int::Int;
pub use matrix::{IntegerMatrix, Matrix, RationalMatrix, Scalar};
pub use rat::Rat;
pub use smith::{determinant, smith_normal_form, Smith};
pub use solve::{
    quotient_descriptor, solve_integer, solve_mixed, solve_rational, IntegerSolution, MixedSolver, RationalSolution,
};
