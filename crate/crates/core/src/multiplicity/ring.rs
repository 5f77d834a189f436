use std::sync::Arc;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::polyring::{same_ring, IdealPresentation, PolyRing, Polynomial};

/// The quotient `K[x_1..x_n]/J` with the Gröbner basis and dimension of `J`
/// computed once.
#[derive(Clone, Debug)]
pub struct QuotientRingSpec<F: Field> {
    ring: Arc<PolyRing<F>>,
    defining: Vec<Polynomial<F>>,
    gb: GroebnerBasis<F>,
    dim: usize,
}

impl<F: Field> QuotientRingSpec<F> {
    /// `defining` may be empty (the polynomial ring itself). Zero generators
    /// are ignored.
    pub fn new(ring: &Arc<PolyRing<F>>, defining: Vec<Polynomial<F>>) -> Result<Self> {
        let defining: Vec<_> = defining.into_iter().filter(|g| !g.is_zero()).collect();
        let gb = groebner_basis(ring, &defining)?;
        if gb.is_unit() {
            return Err(Error::validation("the defining ideal is the unit ideal; the quotient is zero"));
        }
        let dim = gb.dimension();
        Ok(QuotientRingSpec { ring: ring.clone(), defining, gb, dim })
    }

    /// The polynomial ring with no relations.
    pub fn polynomial_ring(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(ring, Vec::new()).expect("the zero ideal is proper")
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn defining(&self) -> &[Polynomial<F>] {
        &self.defining
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Reduced basis of `J + I`.
    pub(crate) fn basis_with(&self, ideal: &IdealPresentation<F>) -> Result<GroebnerBasis<F>> {
        self.check_ring(ideal)?;
        let mut gens = self.gb.elements().to_vec();
        gens.extend(ideal.generators().iter().cloned());
        groebner_basis(&self.ring, &gens)
    }

    pub(crate) fn check_ring(&self, ideal: &IdealPresentation<F>) -> Result<()> {
        if !same_ring(ideal.ring(), &self.ring) {
            return Err(Error::structural("ideal and quotient ring live in different polynomial rings"));
        }
        Ok(())
    }

    /// Validation that `J + I` has finite colength and is primary to the
    /// origin. The unit ideal passes.
    pub(crate) fn require_primary(&self, gb: &GroebnerBasis<F>, what: &str) -> Result<()> {
        if gb.is_unit() {
            return Ok(());
        }
        if !gb.is_zero_dimensional() {
            return Err(Error::validation(format!(
                "{what} is not zero-dimensional modulo the defining ideal"
            )));
        }
        if let Some(i) = gb.non_nilpotent_variable()? {
            return Err(Error::validation(format!(
                "{what} is not primary to the origin: no power of {} lies in it",
                self.ring.vars()[i]
            )));
        }
        Ok(())
    }
}

/// Krull dimension of the quotient ring.
pub fn krull_dimension<F: Field>(r: &QuotientRingSpec<F>) -> usize {
    r.dimension()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::PrimeField;
    use crate::polyring::parse_polynomial;

    #[test]
    fn dimensions() {
        let r = PolyRing::with_vars(PrimeField::new(2).unwrap(), &["x", "y", "z"]).unwrap();
        assert_eq!(krull_dimension(&QuotientRingSpec::polynomial_ring(&r)), 3);
        let f = parse_polynomial(&r, "z^4 + x*y*z^2 + (x^3+y^3)*z").unwrap();
        assert_eq!(krull_dimension(&QuotientRingSpec::new(&r, vec![f]).unwrap()), 2);
        let r2 = PolyRing::with_vars(PrimeField::new(2).unwrap(), &["x", "y"]).unwrap();
        let j = vec![Polynomial::var(&r2, 0), Polynomial::var(&r2, 1)];
        assert_eq!(krull_dimension(&QuotientRingSpec::new(&r2, j).unwrap()), 0);
    }

    #[test]
    fn unit_defining_ideal_is_rejected() {
        let r = PolyRing::with_vars(PrimeField::new(3).unwrap(), &["x"]).unwrap();
        let j = vec![parse_polynomial(&r, "x").unwrap(), parse_polynomial(&r, "x - 1").unwrap()];
        assert!(matches!(QuotientRingSpec::new(&r, j), Err(Error::Validation(_))));
    }
}
