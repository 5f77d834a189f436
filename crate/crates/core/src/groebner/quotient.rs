//! The finite-dimensional quotient `K[x]/J` seen through a Gröbner basis of
//! `J`: standard monomials, colength, multiplication matrices, trace form and
//! colon ideals.

use std::collections::HashMap;
use std::fmt;

use super::{groebner_basis, GroebnerBasis};
use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyring::{IdealPresentation, Monomial, Polynomial};

/// Vector-space dimension of a quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

/// Monomials outside the leading-term ideal, sorted ascending in the term
/// order; a basis of the quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardMonomialBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl StandardMonomialBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

impl<F: Field> GroebnerBasis<F> {
    /// For each variable, the smallest `a` with `x_i^a` a leading monomial.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let n = self.ring().nvars();
        if self.is_unit() {
            return Some(vec![0; n]);
        }
        let mut bounds: Vec<Option<u32>> = vec![None; n];
        for m in self.leading_monomials() {
            if let Some((i, e)) = m.pure_power() {
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    /// Depth-first staircase walk below the pure-power bounds. Each branch
    /// stops at the first non-standard prefix since the standard set is
    /// closed under division.
    fn walk(&self, bounds: &[u32], mut visit: impl FnMut(&[u32])) {
        let leads: Vec<&Monomial> = self.leading_monomials().collect();
        let n = bounds.len();
        let mut current = vec![0u32; n];
        fn rec(
            var: usize,
            current: &mut Vec<u32>,
            bounds: &[u32],
            leads: &[&Monomial],
            visit: &mut dyn FnMut(&[u32]),
        ) {
            if var == current.len() {
                visit(current);
                return;
            }
            for e in 0..bounds[var] {
                current[var] = e;
                let blocked = leads.iter().any(|l| {
                    l.exponents().iter().zip(current.iter()).all(|(a, b)| a <= b)
                });
                if blocked {
                    break;
                }
                rec(var + 1, current, bounds, leads, visit);
            }
            current[var] = 0;
        }
        if n == 0 {
            if !self.is_unit() {
                visit(&[]);
            }
            return;
        }
        rec(0, &mut current, bounds, &leads, &mut visit);
    }

    /// `dim_K K[x]/J`.
    pub fn colength(&self) -> Colength {
        match self.pure_power_bounds() {
            None => Colength::Infinite,
            Some(bounds) => {
                let mut count = 0u64;
                self.walk(&bounds, |_| count += 1);
                Colength::Finite(count)
            }
        }
    }

    fn finite_colength(&self, what: &str) -> Result<u64> {
        self.colength().finite().ok_or_else(|| {
            Error::validation(format!("{what} requires a zero-dimensional ideal (infinite colength)"))
        })
    }

    pub fn standard_monomials(&self) -> Result<StandardMonomialBasis> {
        let bounds = self.pure_power_bounds().ok_or_else(|| {
            Error::validation("standard monomials of a positive-dimensional ideal are infinite")
        })?;
        let mut monomials = Vec::new();
        self.walk(&bounds, |e| monomials.push(Monomial::new(e)));
        let ord = self.ring().order();
        monomials.sort_by(|a, b| ord.cmp(a, b));
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(StandardMonomialBasis { monomials, index })
    }

    /// First variable that is not nilpotent modulo the ideal, if any.
    /// `None` means the ideal is primary to the origin.
    pub fn non_nilpotent_variable(&self) -> Result<Option<usize>> {
        let n = self.finite_colength("the primary-to-origin test")?;
        let ring = self.ring();
        for i in 0..ring.nvars() {
            let x = Polynomial::var(ring, i);
            let mut v = Polynomial::one(ring);
            let mut nilpotent = n == 0;
            for _ in 0..n {
                v = self.normal_form(&(&x * &v))?;
                if v.is_zero() {
                    nilpotent = true;
                    break;
                }
            }
            if !nilpotent {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Whether every variable is nilpotent modulo the ideal, i.e. the ideal is
    /// primary to `(x_1, ..., x_n)`.
    pub fn is_primary_to_origin(&self) -> Result<bool> {
        Ok(self.non_nilpotent_variable()?.is_none())
    }

    /// Coordinates of a normal form in the standard-monomial basis.
    pub fn coordinates(&self, basis: &StandardMonomialBasis, nf: &Polynomial<F>) -> Vec<F::Elem> {
        let f = self.ring().field();
        let mut v = vec![f.zero(); basis.len()];
        for t in nf.terms() {
            let k = basis.position(&t.mono).expect("normal form lies in the standard span");
            v[k] = t.coeff.clone();
        }
        v
    }

    /// Polynomial with the given coordinates in the standard-monomial basis.
    pub fn from_coordinates(&self, basis: &StandardMonomialBasis, v: &[F::Elem]) -> Polynomial<F> {
        let f = self.ring().field();
        let terms = basis
            .monomials()
            .iter()
            .zip(v)
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(m, c)| (c.clone(), m.clone()))
            .collect();
        Polynomial::from_terms(self.ring(), terms)
    }

    /// Matrix of multiplication by `g` on the standard-monomial basis; column
    /// `j` holds the coordinates of `NF(g·e_j)`.
    pub fn multiplication_matrix(&self, g: &Polynomial<F>) -> Result<Matrix<F>> {
        self.finite_colength("a multiplication matrix")?;
        let basis = self.standard_monomials()?;
        self.multiplication_matrix_in(&basis, g)
    }

    pub(crate) fn multiplication_matrix_in(
        &self,
        basis: &StandardMonomialBasis,
        g: &Polynomial<F>,
    ) -> Result<Matrix<F>> {
        let f = self.ring().field();
        let g = self.normal_form(g)?;
        let mut m = Matrix::zeros(f, basis.len(), basis.len());
        for (j, e) in basis.monomials().iter().enumerate() {
            let prod = self.normal_form(&g.mul_monomial(&f.one(), e))?;
            for t in prod.terms() {
                let i = basis.position(&t.mono).expect("normal form lies in the standard span");
                m.set(i, j, t.coeff.clone());
            }
        }
        Ok(m)
    }

    /// Gram matrix of the trace form on the standard-monomial basis.
    pub fn trace_gram_matrix(&self) -> Result<Matrix<F>> {
        self.finite_colength("the trace form")?;
        let basis = self.standard_monomials()?;
        let f = self.ring().field();
        let ring = self.ring();
        let n = basis.len();
        // Trace(e_k): sum over j of the e_j-coordinate of NF(e_k e_j)
        let mut traces = Vec::with_capacity(n);
        for ek in basis.monomials() {
            let mut tr = f.zero();
            for (j, ej) in basis.monomials().iter().enumerate() {
                let nf = self.normal_form(&Polynomial::monomial(ring, f.one(), ek.mul(ej)))?;
                let c = nf.coefficient(&basis.monomials()[j]);
                tr = f.add(&tr, &c);
            }
            traces.push(tr);
        }
        let mut gram = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in i..n {
                let prod = basis.monomials()[i].mul(&basis.monomials()[j]);
                let nf = self.normal_form(&Polynomial::monomial(ring, f.one(), prod))?;
                let mut v = f.zero();
                for t in nf.terms() {
                    let k = basis.position(&t.mono).expect("standard");
                    v = f.add(&v, &f.mul(&t.coeff, &traces[k]));
                }
                gram.set(i, j, v.clone());
                gram.set(j, i, v);
            }
        }
        Ok(gram)
    }

    /// Determinant of the trace-form Gram matrix on the canonical
    /// standard-monomial basis.
    pub fn trace_discriminant(&self) -> Result<F::Elem> {
        self.trace_gram_matrix()?.determinant()
    }

    /// Basis of the socle `(J : m)/J`, as polynomials in standard monomials.
    pub fn socle(&self) -> Result<Vec<Polynomial<F>>> {
        self.require_primary("socle computation")?;
        let basis = self.standard_monomials()?;
        let ring = self.ring();
        let f = ring.field();
        let mut stacked = Matrix::zeros(f, 0, basis.len());
        for i in 0..ring.nvars() {
            let m = self.multiplication_matrix_in(&basis, &Polynomial::var(ring, i))?;
            stacked = stacked.vstack(&m)?;
        }
        Ok(stacked.kernel().iter().map(|v| self.from_coordinates(&basis, v)).collect())
    }

    fn require_primary(&self, what: &str) -> Result<()> {
        self.finite_colength(what)?;
        if let Some(i) = self.non_nilpotent_variable()? {
            return Err(Error::validation(format!(
                "{what} requires an ideal primary to the origin; {} is not nilpotent",
                self.ring().vars()[i]
            )));
        }
        Ok(())
    }

    /// `(J : x_i)` via the kernel of multiplication by `x_i` on the quotient.
    pub fn colon_variable(&self, i: usize) -> Result<GroebnerBasis<F>> {
        self.finite_colength("a colon ideal")?;
        let basis = self.standard_monomials()?;
        let ring = self.ring();
        let m = self.multiplication_matrix_in(&basis, &Polynomial::var(ring, i))?;
        let mut gens = self.elements().to_vec();
        gens.extend(m.kernel().iter().map(|v| self.from_coordinates(&basis, v)));
        groebner_basis(ring, &gens)
    }

    /// `(J : m) = ∩_i (J : x_i)`, computed as `J` plus the common kernel of
    /// all variable multiplication maps.
    pub fn colon_maximal(&self) -> Result<GroebnerBasis<F>> {
        let mut gens = self.elements().to_vec();
        gens.extend(self.socle()?);
        groebner_basis(self.ring(), &gens)
    }

    /// Combinatorial dimension: the largest set of variables none of whose
    /// subsets carries a leading monomial. Equals the Krull dimension of the
    /// quotient.
    pub fn dimension(&self) -> usize {
        let n = self.ring().nvars();
        if self.is_unit() {
            return 0;
        }
        let supports: Vec<u64> = self
            .leading_monomials()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        assert!(n < 64, "dimension computation supports fewer than 64 variables");
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as usize;
            if size <= best {
                continue;
            }
            if supports.iter().all(|s| s & !set != 0) {
                best = size;
            }
        }
        best
    }
}

/// `(J : m)` for a presented ideal, returned as its reduced basis elements.
pub fn ideal_colon_m<F: Field>(j: &IdealPresentation<F>) -> Result<IdealPresentation<F>> {
    let gb = groebner_basis(j.ring(), j.generators())?;
    let colon = gb.colon_maximal()?;
    IdealPresentation::new(j.ring(), colon.elements().to_vec())
}
