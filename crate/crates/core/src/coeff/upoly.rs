//! Dense univariate polynomial helpers over a [`Field`].
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector.

use super::Field;

pub(crate) fn trim<F: Field>(f: &F, a: &mut Vec<F::Elem>) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

pub(crate) fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = f.add(o, s);
    }
    trim(f, &mut out);
    out
}

pub(crate) fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(f.sub(x, y));
    }
    trim(f, &mut out);
    out
}

pub(crate) fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub(crate) fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    trim(f, &mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("trimmed polynomial has nonzero lead");
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = f.mul(&rem[k + db], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(&c, y);
            rem[k + j] = f.sub(&rem[k + j], &t);
        }
        quot[k] = c;
    }
    rem.truncate(db);
    trim(f, &mut rem);
    trim(f, &mut quot);
    (quot, rem)
}

pub(crate) fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).1
}

pub(crate) fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero lead");
            scale(f, a, &inv)
        }
    }
}

/// Monic gcd.
pub(crate) fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
pub(crate) fn ext_gcd_inverse<F: Field>(
    f: &F,
    a: &[F::Elem],
    m: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<F::Elem>, Vec<F::Elem>) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    match r0.last() {
        None => (Vec::new(), Vec::new()),
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero lead");
            (scale(f, &r0, &inv), rem(f, &scale(f, &s0, &inv), m))
        }
    }
}

/// `a^n mod m` by square-and-multiply.
pub(crate) fn pow_mod<F: Field>(
    f: &F,
    a: &[F::Elem],
    mut n: u128,
    m: &[F::Elem],
) -> Vec<F::Elem> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[f.one()], m);
    while n > 0 {
        if n & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        n >>= 1;
        if n > 0 {
            base = rem(f, &mul(f, &base, &base), m);
        }
    }
    acc
}

/// Apply the coefficient Frobenius and spread exponents: `a(t) ↦ a(t)^{p^e}`.
pub(crate) fn frobenius<F: Field>(f: &F, a: &[F::Elem], e: u32) -> Vec<F::Elem> {
    if a.is_empty() || e == 0 {
        return a.to_vec();
    }
    let q = (f.characteristic() as usize).pow(e);
    let mut out = vec![f.zero(); (a.len() - 1) * q + 1];
    for (i, c) in a.iter().enumerate() {
        out[i * q] = f.frobenius(c, e);
    }
    out
}

pub(crate) fn format<F: Field>(f: &F, a: &[F::Elem], var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if f.is_zero(c) {
            continue;
        }
        let cs = f.format(c);
        let cs = if cs.contains(['+', '-', '/']) { format!("({cs})") } else { cs };
        let s = match (i, cs.as_str()) {
            (0, _) => cs,
            (1, "1") => var.to_string(),
            (1, _) => format!("{cs}*{var}"),
            (_, "1") => format!("{var}^{i}"),
            _ => format!("{cs}*{var}^{i}"),
        };
        parts.push(s);
    }
    parts.join("+")
}
