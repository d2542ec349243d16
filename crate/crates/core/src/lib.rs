//! Computational toolkit for the weighted rational curves of type `(d, e)`:
//! the image of `P^1` in `P(1^d, e^e)` under
//! `[s:t] -> [s^d : s^(d-1)t : ... : st^(d-1) : s^(e-1)t^(de-e+1) : ... : t^(de)]`.
//!
//! The crate builds each curve's defining ideal, Gröbner bases, Hilbert and
//! Poincaré series, Betti tables and a degree-truncated resolution of the
//! residue field, and cross-checks the closed forms against independent
//! computations.

pub mod curve;
pub mod grobner;
pub mod invariants;
pub mod poly;
pub mod resolution;
pub mod verify;

pub use curve::{CurveData, CurveError, MatrixVariant, TwoRowMatrix};
pub use grobner::{GrobnerError, IdealBasis, MonomialIdeal};
pub use invariants::{BettiTable, RationalSeries};
pub use poly::{Coeff, Monomial, PolyError, Polynomial, TermOrder, VarSet};
