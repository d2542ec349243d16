//! Exact sparse multivariate polynomials over the rationals.

mod monomial;
mod order;
mod parse;
mod polynomial;

pub use monomial::{Monomial, MonomialDisplay, VarSet};
pub use order::{TermOrder, TieBreak};
pub use polynomial::{normal_form, Polynomial};

pub(crate) use polynomial::same_ambient;

/// Coefficient field.
pub type Coeff = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("operands live over different variable sets")]
    AmbientMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),
    #[error("invalid term order: {0}")]
    InvalidOrder(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
