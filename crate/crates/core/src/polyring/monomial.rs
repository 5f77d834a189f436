use std::fmt;

use smallvec::SmallVec;

/// Exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 6]>,
    deg: u32,
}

fn checked_sum(exps: &[u32]) -> u32 {
    exps.iter()
        .try_fold(0u32, |acc, &e| acc.checked_add(e))
        .expect("monomial degree overflows u32")
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), deg: 0 }
    }

    pub fn new(exps: &[u32]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps), deg: checked_sum(exps) }
    }

    /// `x_var^e` in `nvars` variables.
    pub fn var_power(nvars: usize, var: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[var] = e;
        m.deg = e;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Product; exponent overflow is a fatal error.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: SmallVec<[u32; 6]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflows u32"))
            .collect();
        let deg = self.deg.checked_add(other.deg).expect("monomial degree overflows u32");
        Monomial { exps, deg }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let exps: SmallVec<[u32; 6]> = self
            .exps
            .iter()
            .map(|a| a.checked_mul(k).expect("monomial exponent overflows u32"))
            .collect();
        let deg = self.deg.checked_mul(k).expect("monomial degree overflows u32");
        Monomial { exps, deg }
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, deg: self.deg - other.deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 6]> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = checked_sum(&exps);
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some((i, e))` when the monomial is `x_i^e` with `e > 0`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn format(&self, vars: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .zip(vars)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::new(&[2, 0, 1]);
        let b = Monomial::new(&[3, 1, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a).unwrap(), Monomial::new(&[1, 1, 0]));
        assert_eq!(a.lcm(&Monomial::new(&[0, 4, 0])), Monomial::new(&[2, 4, 1]));
        assert!(a.is_coprime(&Monomial::new(&[0, 4, 0])));
        assert_eq!(Monomial::new(&[0, 5, 0]).pure_power(), Some((1, 5)));
        assert_eq!(a.pure_power(), None);
        assert_eq!(a.degree(), 3);
    }

    #[test]
    #[should_panic(expected = "overflows")]
    fn exponent_overflow_is_fatal() {
        let a = Monomial::new(&[u32::MAX - 1, 0]);
        let _ = a.mul(&Monomial::new(&[5, 0]));
    }
}
