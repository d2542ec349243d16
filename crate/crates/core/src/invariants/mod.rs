//! Closed-form invariants of the curves (Hilbert series, Eagon-Northcott
//! Betti numbers, associated graded and Poincaré series) and the exact
//! truncated series arithmetic used to check identities between them.

mod betti;
mod formulas;
mod series;

pub use betti::{BettiEntry, BettiTable};
pub use formulas::{
    alternating_numerator, betti_table_en, binomial, cm_check, en_numerator, golod_check,
    gr_z_coefficient, hilbert_function_r, hilbert_series_en, hilbert_series_gr, hilbert_series_r,
    poincare_betti, poincare_s_of_i, poincare_series, pole_order_at_one, strand_bettis, CmReport,
    GolodReport,
};
pub use series::{Expansion, IntPoly, RationalSeries, SeriesError, SeriesTerm};

/// Default truncation order for series comparisons.
pub const DEFAULT_ORDER: u32 = 25;
