//! Exact sparse polynomial arithmetic over the matrix coordinate ring.
//!
//! Variables are the entries `x_{i,j}` of a generic `n × n` matrix plus a
//! single localization variable `t`.  Monomials are ordered in graded
//! lexicographic order with `x_{1,1} < x_{1,2} < ... < x_{n,n} < t`; all
//! printing and serialization lists terms with the leading monomial first,
//! so equal polynomials always have identical renderings.

mod coeffs;
mod matrix;
mod monomial;
mod poly;
mod ratmat;

pub use coeffs::CoefficientSet;
pub use matrix::SymbolicMatrix;
pub use monomial::{Monomial, Var};
pub use poly::{omega_g, Poly};
pub use ratmat::RatMatrix;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial involves t but no value for t was supplied")]
    UnboundT,
    #[error("variable x_{row}_{col} lies outside a {n} x {n} point")]
    PointTooSmall { row: usize, col: usize, n: usize },
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index sets must be strictly increasing")]
    IndexSetUnsorted,
    #[error("row set has {rows} indices but column set has {cols}")]
    IndexSetSizeMismatch { rows: usize, cols: usize },
    #[error("degree undefined")]
    DegreeUndefined,
}
