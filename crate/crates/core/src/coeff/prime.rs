use std::fmt;

use super::{Field, FieldDescriptor};
use crate::error::{Error, Result};

/// Largest characteristic accepted; residues fit a `u32` and products a `u64`.
pub const MAX_CHARACTERISTIC: u32 = (1 << 31) - 1;

/// Trial-division primality test for `n < 2^32`.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let n = n as u64;
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_characteristic(p: u32) -> Result<()> {
    if p > MAX_CHARACTERISTIC {
        return Err(Error::validation(format!(
            "characteristic {p} exceeds the supported bound 2^31"
        )));
    }
    if !is_prime(p) {
        return Err(Error::validation(format!("characteristic {p} is not prime")));
    }
    Ok(())
}

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        check_characteristic(p)?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn order(&self) -> Option<u128> {
        Some(self.p as u128)
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }

    fn inv(&self, a: &u32) -> Result<u32> {
        if *a == 0 {
            return Err(Error::Arithmetic(format!("inverse of zero in F_{}", self.p)));
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }

    fn from_u64(&self, n: u64) -> u32 {
        self.reduce(n)
    }

    fn frobenius(&self, a: &u32, _e: u32) -> u32 {
        *a
    }

    fn named_elements(&self) -> Vec<(String, u32)> {
        Vec::new()
    }

    fn elements(&self, limit: usize) -> Option<Vec<u32>> {
        if self.p as usize > limit {
            return None;
        }
        Some((0..self.p).collect())
    }

    fn format(&self, a: &u32) -> String {
        a.to_string()
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime { p: self.p }
    }
}
