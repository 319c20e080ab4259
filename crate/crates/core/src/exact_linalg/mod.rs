//! Exact linear algebra over ℤ and 𝔽₂.
//!
//! Everything here is a pure function of immutable values. Integer
//! matrices carry arbitrary-precision entries so that Smith normal form
//! never overflows, and empty shapes are accepted everywhere.

mod f2;
mod matrix;
mod smith;

use thiserror::Error;

pub use f2::{f2_in_column_space, f2_kernel_basis, f2_rank, F2Matrix};
pub use matrix::IntMatrix;
pub use smith::{
    complete_to_unimodular, cokernel_presentation, hermite_rows, kernel_basis, smith_normal_form,
    solve_linear, unimodular_inverse, Cokernel, SmithDecomposition,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    BadShape { rows: usize, cols: usize, len: usize },
    #[error("cannot {op} a {left:?} matrix with a {right:?} matrix")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("{0} is not a bit")]
    NotABit(u8),
}
