//! Exact linear algebra over `Z` and over cyclotomic fields.

mod cyclotomic;
mod int_matrix;

pub use cyclotomic::{CycField, CycMatrix, CycNumber};
pub use int_matrix::{
    cokernel, companion_tau, poly_at_matrix, smith_normal_form, AbelianGroup, IntMatrix, SmithForm,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("rank parameter N = {0} is below 2")]
    BadRank(usize),
    #[error("matrix is not unimodular, negative powers are not integral")]
    NotUnimodular,
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,
    #[error("cyclotomic fields of order {0} and {1} mixed")]
    FieldMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
}
