use std::sync::Arc;

use super::polynomial::same_ring;
use super::{PolyRing, Polynomial};
use crate::coeff::Field;
use crate::error::{Error, Result};

/// A finite, nonempty list of nonzero generators.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealPresentation<F: Field> {
    ring: Arc<PolyRing<F>>,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> IdealPresentation<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::validation("an ideal presentation needs at least one generator"));
        }
        for (i, g) in generators.iter().enumerate() {
            if !same_ring(g.ring(), ring) {
                return Err(Error::structural(format!("generator {i} lives in another ring")));
            }
            if g.is_zero() {
                return Err(Error::validation(format!("generator {i} is the zero polynomial")));
            }
        }
        Ok(IdealPresentation { ring: ring.clone(), generators })
    }

    /// Parses each string as a generator.
    pub fn parse(ring: &Arc<PolyRing<F>>, texts: &[&str]) -> Result<Self> {
        let gens = texts
            .iter()
            .map(|t| super::parse_polynomial(ring, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    /// The maximal ideal at the origin, `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Arc<PolyRing<F>>) -> Result<Self> {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Self::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Appends generators (zeros are dropped).
    pub fn extended(&self, more: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(more.into_iter().filter(|g| !g.is_zero()));
        Self::new(&self.ring, gens)
    }

    /// Bracket power `I^[q]`, generated by the `q`-th powers of the generators.
    pub fn frobenius_power(&self, q: u64) -> Result<Self> {
        let e = frobenius_exponent(self.ring.field().characteristic(), q)?;
        let gens = self.generators.iter().map(|g| g.frobenius(e)).collect();
        Self::new(&self.ring, gens)
    }

    /// `I^n`, generated by all products of `n` generators with repetition.
    pub fn ordinary_power(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("ordinary power exponent must be at least 1"));
        }
        let mut out: Vec<Polynomial<F>> = Vec::new();
        let one = Polynomial::one(&self.ring);
        self.multisets(0, n, &one, &mut out);
        Self::new(&self.ring, out)
    }

    fn multisets(&self, start: usize, left: u32, acc: &Polynomial<F>, out: &mut Vec<Polynomial<F>>) {
        if left == 0 {
            if !acc.is_zero() && !out.contains(acc) {
                out.push(acc.clone());
            }
            return;
        }
        for i in start..self.generators.len() {
            let next = acc * &self.generators[i];
            self.multisets(i, left - 1, &next, out);
        }
    }
}

/// `e` with `q = p^e`, or a validation error.
pub fn frobenius_exponent(p: u32, q: u64) -> Result<u32> {
    let p = p as u64;
    let mut e = 0u32;
    let mut power = 1u64;
    while power < q {
        power = match power.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
        e += 1;
    }
    if power != q {
        return Err(Error::validation(format!("{q} is not a power of the characteristic {p}")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::PrimeField;
    use crate::polyring::Monomial;

    fn ring(p: u32, vars: &[&str]) -> Arc<PolyRing<PrimeField>> {
        PolyRing::with_vars(PrimeField::new(p).unwrap(), vars).unwrap()
    }

    fn formatted(i: &IdealPresentation<PrimeField>) -> Vec<String> {
        i.generators().iter().map(|g| g.format()).collect()
    }

    #[test]
    fn bracket_powers() {
        let r = ring(2, &["x", "y"]);
        let i = IdealPresentation::parse(&r, &["x", "y"]).unwrap();
        assert_eq!(formatted(&i.frobenius_power(4).unwrap()), ["x^4", "y^4"]);
        let i = IdealPresentation::parse(&r, &["x + y"]).unwrap();
        assert_eq!(formatted(&i.frobenius_power(2).unwrap()), ["x^2 + y^2"]);
        let r3 = ring(3, &["x", "y"]);
        let i = IdealPresentation::parse(&r3, &["x^2", "x*y"]).unwrap();
        assert_eq!(formatted(&i.frobenius_power(3).unwrap()), ["x^6", "x^3*y^3"]);
        assert!(matches!(i.frobenius_power(6), Err(Error::Validation(_))));
        assert_eq!(formatted(&i.frobenius_power(1).unwrap()), ["x^2", "x*y"]);
    }

    #[test]
    fn ordinary_powers() {
        let r = ring(5, &["x", "y", "z"]);
        let i = IdealPresentation::parse(&r, &["x", "y"]).unwrap();
        assert_eq!(formatted(&i.ordinary_power(2).unwrap()), ["x^2", "x*y", "y^2"]);
        let m = IdealPresentation::maximal(&r).unwrap();
        let cube = m.ordinary_power(3).unwrap();
        assert_eq!(cube.len(), 10);
        assert!(cube.generators().iter().all(|g| g.len() == 1 && g.total_degree() == Some(3)));
        let f = IdealPresentation::parse(&r, &["x + 2*y*z"]).unwrap();
        let f3 = f.ordinary_power(3).unwrap();
        assert_eq!(f3.generators(), &[f.generators()[0].pow(3)]);
        assert!(m.ordinary_power(0).is_err());
    }

    #[test]
    fn monomial_ideal_powers_have_predictable_exponents() {
        let r = ring(3, &["x", "y"]);
        for a in 1..4u32 {
            for b in 1..4u32 {
                let i = IdealPresentation::new(
                    &r,
                    vec![
                        Polynomial::monomial(&r, 1, Monomial::new(&[a, 0])),
                        Polynomial::monomial(&r, 1, Monomial::new(&[0, b])),
                    ],
                )
                .unwrap();
                for n in 1..4u32 {
                    let pw = i.ordinary_power(n).unwrap();
                    let mut got: Vec<Vec<u32>> = pw
                        .generators()
                        .iter()
                        .map(|g| g.leading_monomial().unwrap().exponents().to_vec())
                        .collect();
                    got.sort();
                    let mut want: Vec<Vec<u32>> = (0..=n).map(|k| vec![a * k, b * (n - k)]).collect();
                    want.sort();
                    assert_eq!(got, want);
                }
                for q in [3u64, 9] {
                    let fp = i.frobenius_power(q).unwrap();
                    let q = q as u32;
                    assert_eq!(fp.generators()[0].leading_monomial().unwrap().exponents(), [a * q, 0]);
                    assert_eq!(fp.generators()[1].leading_monomial().unwrap().exponents(), [0, b * q]);
                }
            }
        }
    }

    #[test]
    fn presentation_invariants() {
        let r = ring(2, &["x"]);
        assert!(IdealPresentation::new(&r, vec![]).is_err());
        assert!(IdealPresentation::new(&r, vec![Polynomial::zero(&r)]).is_err());
        let other = ring(3, &["x"]);
        assert!(matches!(
            IdealPresentation::new(&r, vec![Polynomial::var(&other, 0)]),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn frobenius_exponents() {
        assert_eq!(frobenius_exponent(2, 1).unwrap(), 0);
        assert_eq!(frobenius_exponent(2, 32).unwrap(), 5);
        assert_eq!(frobenius_exponent(3, 27).unwrap(), 3);
        assert!(frobenius_exponent(3, 0).is_err());
        assert!(frobenius_exponent(2, 12).is_err());
    }
}
