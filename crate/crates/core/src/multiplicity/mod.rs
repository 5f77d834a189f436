//! Hilbert–Kunz and Hilbert–Samuel functions of ideals in `K[x]/J`, their
//! limit estimates, and F-rational signature searches.

mod hilbert_kunz;
mod hilbert_samuel;
mod ring;
mod signature;

use num_rational::Ratio;

pub use hilbert_kunz::{hk_estimate, hk_function, HKEstimate, HKSample};
pub use hilbert_samuel::{
    hs_function, hs_multiplicity, hs_multiplicity_with_run, HSEstimate, HSSample, DEFAULT_STABLE_RUN,
};
pub use ring::{krull_dimension, QuotientRingSpec};
pub use signature::{
    csig_search, default_grid, rsig_search, socle_basis, CSigResult, CSigRow, RSigResult, RSigRow,
};

/// Exact rational used for normalized lengths and estimates.
pub type Rational = Ratio<i128>;

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) fn abs(r: Rational) -> Rational {
    if r < Rational::from_integer(0) {
        -r
    } else {
        r
    }
}
