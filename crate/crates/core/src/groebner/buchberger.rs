use std::sync::Arc;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::polyring::{
    merge_add, same_ring, sub_mul_term, IdealPresentation, Monomial, PolyRing, Polynomial, Term,
    TermOrder,
};

/// Reduced Gröbner basis: monic, auto-reduced, sorted by ascending leading
/// monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    elements: Vec<Polynomial<F>>,
}

struct Reducer<'a, E> {
    lead: &'a Monomial,
    terms: &'a [Term<E>],
}

/// Full reduction of `terms` by monic reducers. Returns the remainder.
fn reduce_terms<F: Field>(
    f: &F,
    ord: &TermOrder,
    mut p: Vec<Term<F::Elem>>,
    reducers: &[Reducer<'_, F::Elem>],
) -> Vec<Term<F::Elem>> {
    let mut rem = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let lead = &p[start];
        match reducers.iter().find(|r| r.lead.divides(&lead.mono)) {
            Some(r) => {
                let m = lead.mono.div(r.lead).expect("divisor");
                let c = lead.coeff.clone();
                p = sub_mul_term(f, ord, &p[start..], &c, &m, r.terms);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn make_monic<F: Field>(f: &F, terms: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
    match terms.first() {
        Some(t) if !f.is_one(&t.coeff) => {
            let inv = f.inv(&t.coeff).expect("nonzero lead");
            terms.into_iter().map(|t| Term { coeff: f.mul(&t.coeff, &inv), mono: t.mono }).collect()
        }
        _ => terms,
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a, F: Field> {
    field: &'a F,
    order: &'a TermOrder,
    basis: Vec<Vec<Term<F::Elem>>>,
    leads: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<F: Field> Engine<'_, F> {
    fn reduce(&self, p: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
        let reducers: Vec<Reducer<'_, F::Elem>> = (0..self.basis.len())
            .filter(|&k| self.active[k])
            .map(|k| Reducer { lead: &self.leads[k], terms: &self.basis[k] })
            .collect();
        reduce_terms(self.field, self.order, p, &reducers)
    }

    /// Inserts a reduced monic element and runs the Gebauer–Möller update
    /// (product criterion plus chain criterion on old and new pairs).
    fn insert(&mut self, h: Vec<Term<F::Elem>>) {
        let h_lead = h[0].mono.clone();
        let h_idx = self.basis.len();

        let candidates: Vec<(usize, Monomial)> = (0..self.basis.len())
            .filter(|&g| self.active[g])
            .map(|g| (g, h_lead.lcm(&self.leads[g])))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, l)) in candidates.iter().enumerate() {
            let coprime = h_lead.is_coprime(&self.leads[*g]);
            let dominated = candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let leads = &self.leads;
        self.pairs.retain(|p| {
            !(h_lead.divides(&p.lcm)
                && leads[p.i].lcm(&h_lead) != p.lcm
                && h_lead.lcm(&leads[p.j]) != p.lcm)
        });
        for (g, l) in kept {
            if !h_lead.is_coprime(&self.leads[g]) {
                self.pairs.push(Pair { i: g, j: h_idx, lcm: l });
            }
        }
        for g in 0..self.basis.len() {
            if self.active[g] && h_lead.divides(&self.leads[g]) {
                self.active[g] = false;
            }
        }
        self.basis.push(h);
        self.leads.push(h_lead);
        self.active.push(true);
    }

    /// Normal selection strategy: smallest lcm, ties by generator indices.
    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                ord.cmp(&a.lcm, &b.lcm).then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, pair: &Pair) -> Vec<Term<F::Elem>> {
        let f = self.field;
        let (a, b) = (&self.basis[pair.i], &self.basis[pair.j]);
        let ma = pair.lcm.div(&self.leads[pair.i]).expect("lcm");
        let mb = pair.lcm.div(&self.leads[pair.j]).expect("lcm");
        // both monic; the leading terms cancel
        let sa: Vec<Term<F::Elem>> =
            a[1..].iter().map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.mul(&ma) }).collect();
        sub_mul_term(f, self.order, &sa, &f.one(), &mb, &b[1..])
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators` in `ring`.
/// The zero ideal (no nonzero generators) gives the empty basis.
pub fn groebner_basis<F: Field>(
    ring: &Arc<PolyRing<F>>,
    generators: &[Polynomial<F>],
) -> Result<GroebnerBasis<F>> {
    for g in generators {
        if !same_ring(g.ring(), ring) {
            return Err(Error::structural("generator from a different ring"));
        }
    }
    let field = ring.field();
    let order = ring.order();
    let mut engine = Engine {
        field,
        order,
        basis: Vec::new(),
        leads: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };

    let mut inputs: Vec<&Polynomial<F>> = generators.iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by(|a, b| {
        order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    let unit = |ring: &Arc<PolyRing<F>>| GroebnerBasis {
        ring: ring.clone(),
        elements: vec![Polynomial::one(ring)],
    };
    for g in inputs {
        let r = engine.reduce(g.terms().to_vec());
        if r.is_empty() {
            continue;
        }
        if r[0].mono.is_one() {
            return Ok(unit(ring));
        }
        engine.insert(make_monic(field, r));
    }
    while let Some(pair) = engine.next_pair() {
        let s = engine.s_polynomial(&pair);
        let r = engine.reduce(s);
        if r.is_empty() {
            continue;
        }
        if r[0].mono.is_one() {
            return Ok(unit(ring));
        }
        engine.insert(make_monic(field, r));
    }

    // the active elements form a minimal basis; interreduce their tails
    let minimal: Vec<usize> = (0..engine.basis.len()).filter(|&k| engine.active[k]).collect();
    let mut elements = Vec::with_capacity(minimal.len());
    for &k in &minimal {
        let others: Vec<Reducer<'_, F::Elem>> = minimal
            .iter()
            .filter(|&&o| o != k)
            .map(|&o| Reducer { lead: &engine.leads[o], terms: &engine.basis[o] })
            .collect();
        let head = vec![engine.basis[k][0].clone()];
        let tail = reduce_terms(field, order, engine.basis[k][1..].to_vec(), &others);
        elements.push(Polynomial::from_sorted(ring, merge_add(field, order, &head, &tail)));
    }
    elements.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(GroebnerBasis { ring: ring.clone(), elements })
}

/// Reduced Gröbner basis of `ideal` under `order`. When `order` differs from
/// the ring's own order the basis lives in a re-ordered copy of the ring.
pub fn buchberger<F: Field>(
    ideal: &IdealPresentation<F>,
    order: &TermOrder,
) -> Result<GroebnerBasis<F>> {
    let ring = ideal.ring();
    if order == ring.order() {
        return groebner_basis(ring, ideal.generators());
    }
    let target = ring.with_order(order.clone())?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.to_ring(&target))
        .collect::<Result<Vec<_>>>()?;
    groebner_basis(&target, &gens)
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().expect("nonzero basis element"))
    }

    fn reducers(&self) -> Vec<Reducer<'_, F::Elem>> {
        self.elements
            .iter()
            .map(|g| Reducer { lead: g.leading_monomial().unwrap(), terms: g.terms() })
            .collect()
    }

    /// Remainder of `f` on division by the basis; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::structural("polynomial and basis live in different rings or orders"));
        }
        let field = self.ring.field();
        let rem = reduce_terms(field, self.ring.order(), f.terms().to_vec(), &self.reducers());
        Ok(Polynomial::from_sorted(&self.ring, rem))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether `m` is divisible by some leading monomial.
    pub fn in_leading_ideal(&self, m: &Monomial) -> bool {
        self.leading_monomials().any(|l| l.divides(m))
    }

    /// Verifies the defining property directly: every S-polynomial reduces to 0.
    pub fn is_groebner(&self) -> bool {
        let f = self.ring.field();
        let ord = self.ring.order();
        let reducers = self.reducers();
        for (i, a) in self.elements.iter().enumerate() {
            for b in &self.elements[i + 1..] {
                let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
                let l = la.lcm(lb);
                let ca = f.inv(a.leading_coefficient().unwrap()).unwrap();
                let cb = f.inv(b.leading_coefficient().unwrap()).unwrap();
                let sa = a.mul_monomial(&ca, &l.div(la).unwrap());
                let s = sub_mul_term(f, ord, sa.terms(), &cb, &l.div(lb).unwrap(), b.terms());
                if !reduce_terms(f, ord, s, &reducers).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced-basis shape: monic, no lead divides another element's lead.
    pub fn is_reduced(&self) -> bool {
        let f = self.ring.field();
        let leads: Vec<&Monomial> = self.leading_monomials().collect();
        self.elements.iter().enumerate().all(|(i, g)| {
            f.is_one(g.leading_coefficient().unwrap())
                && g.terms().iter().all(|t| {
                    leads.iter().enumerate().all(|(j, l)| {
                        if i == j {
                            true
                        } else {
                            !l.divides(&t.mono)
                        }
                    })
                })
        })
    }
}
