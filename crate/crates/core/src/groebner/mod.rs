//! Buchberger's algorithm and computations in zero-dimensional quotients.

mod buchberger;
mod quotient;

pub use buchberger::{buchberger, groebner_basis, GroebnerBasis};
pub use quotient::{ideal_colon_m, Colength, StandardMonomialBasis};
