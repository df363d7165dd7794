//! Exact linear algebra over ℚ(i).

mod antilinear;
mod filtration;
mod matrix;
mod scalar;
mod subspace;

pub use antilinear::{complex_span, complexify_vector, realify, AntiLinearMap};
pub use filtration::{AscFiltration, DescFiltration, FiltrationReport};
pub use matrix::{CMatrix, Matrix, QMatrix};
pub use scalar::{Field, Rational, Scalar};
pub use subspace::{quotient_map, rref, CSubspace, QSubspace, Quotient, Subspace};
