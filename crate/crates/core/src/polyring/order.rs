use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    #[serde(alias = "grevlex")]
    DegRevLex,
}

/// A monomial order given by a kind and a variable priority, most
/// significant variable first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    identity: bool,
}

impl TermOrder {
    pub fn degrevlex(nvars: usize) -> Self {
        TermOrder { kind: OrderKind::DegRevLex, priority: (0..nvars).collect(), identity: true }
    }

    pub fn lex(nvars: usize) -> Self {
        TermOrder { kind: OrderKind::Lex, priority: (0..nvars).collect(), identity: true }
    }

    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            if v >= priority.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::validation(format!(
                    "variable priority {priority:?} is not a permutation"
                )));
            }
        }
        let identity = priority.iter().enumerate().all(|(i, &v)| i == v);
        Ok(TermOrder { kind, priority, identity })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                if self.identity {
                    ea.cmp(eb)
                } else {
                    for &v in &self.priority {
                        match ea[v].cmp(&eb[v]) {
                            Ordering::Equal => continue,
                            o => return o,
                        }
                    }
                    Ordering::Equal
                }
            }
            OrderKind::DegRevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                if self.identity {
                    for v in (0..ea.len()).rev() {
                        match ea[v].cmp(&eb[v]) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                } else {
                    for &v in self.priority.iter().rev() {
                        match ea[v].cmp(&eb[v]) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 3).prop_map(|v| Monomial::new(&v))
    }

    fn orders() -> Vec<TermOrder> {
        vec![
            TermOrder::lex(3),
            TermOrder::degrevlex(3),
            TermOrder::new(OrderKind::Lex, vec![2, 0, 1]).unwrap(),
            TermOrder::new(OrderKind::DegRevLex, vec![1, 2, 0]).unwrap(),
        ]
    }

    #[test]
    fn degrevlex_small_cases() {
        let o = TermOrder::degrevlex(3);
        let m = |v: &[u32]| Monomial::new(v);
        // x^2 y^2 > x^3 z > y^3 z > x y z^2 > z^4
        let chain = [m(&[2, 2, 0]), m(&[3, 0, 1]), m(&[0, 3, 1]), m(&[1, 1, 2]), m(&[0, 0, 4])];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater, "{:?} {:?}", w[0], w[1]);
        }
        assert_eq!(TermOrder::lex(2).cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(TermOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
        assert!(TermOrder::new(OrderKind::Lex, vec![0, 2]).is_err());
    }

    proptest! {
        #[test]
        fn total_multiplicative_one_minimal(a in mono3(), b in mono3(), c in mono3()) {
            for o in orders() {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp(&b, &a), ab.reverse());
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
                if ab == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                    prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
                }
            }
        }
    }
}
