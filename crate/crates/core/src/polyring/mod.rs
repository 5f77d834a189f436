//! Sparse multivariate polynomials, term orders and ideal presentations.

mod ideal;
mod monomial;
mod order;
mod parse;
mod polynomial;

pub use ideal::{frobenius_exponent, IdealPresentation};
pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};
pub use parse::{parse_polynomial, Algebra, Expr, RingAlgebra};
pub use polynomial::{PolyRing, Polynomial, Term};

pub(crate) use polynomial::{merge_add, same_ring, sub_mul_term};
