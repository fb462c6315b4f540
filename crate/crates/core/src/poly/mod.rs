//! Exact polynomial arithmetic over Q and exact linear algebra.

mod matrix;
mod multipoly;
mod reduce;

pub use matrix::{column_space_complement, nullspace, RationalMatrix};
pub(crate) use multipoly::hyperplane_substitution;
pub use multipoly::{
    binomial, divides_linear, monomial_basis, sym_dim, variable_names, Monomial, MultiPoly,
};
pub use reduce::RowReducer;
pub(crate) use reduce::{integer_row, SparseRow};
