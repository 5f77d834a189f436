//! Exact Hilbert–Kunz and Hilbert–Samuel computations for ideals in quotients
//! of polynomial rings over fields of positive characteristic.
//!
//! The crate is layered bottom-up:
//!
//! - [`coeff`]: `F_p`, `GF(p^m)` and `F_p(t)` arithmetic;
//! - [`polyring`]: sparse polynomials, term orders, bracket and ordinary powers;
//! - [`groebner`]: Buchberger's algorithm, colengths, colon ideals, trace form;
//! - [`multiplicity`]: Hilbert–Kunz and Hilbert–Samuel functions, estimates,
//!   and F-rational signature searches;
//! - [`family`]: parametric families, fiber specialization and sweep checks.

pub mod coeff;
pub mod error;
pub mod family;
pub mod groebner;
pub mod linalg;
pub mod multiplicity;
pub mod polyring;

pub use coeff::{
    AnyField, ExtensionField, Field, FieldDescriptor, FieldElement, PrimeField, RationalFunctionField,
};
pub use error::{Error, Result};
pub use groebner::{buchberger, groebner_basis, Colength, GroebnerBasis, StandardMonomialBasis};
pub use linalg::Matrix;
pub use polyring::{IdealPresentation, Monomial, OrderKind, PolyRing, Polynomial, TermOrder};
pub use multiplicity::{
    hk_estimate, hk_function, hs_function, hs_multiplicity, krull_dimension, HKEstimate, HKSample,
    HSEstimate, HSSample, QuotientRingSpec, Rational,
};
pub use family::{specialize_fiber, FamilyBase, FamilySpec, Fiber, FiberSpec, SweepResult, Verdict};
