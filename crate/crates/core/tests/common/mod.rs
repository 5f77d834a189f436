//! Seeded random zero-dimensional ideals and a Macaulay-matrix colength
//! oracle that shares no code with the Gröbner engine.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exponent vector to coefficient in `0..p`.
pub type Sparse = BTreeMap<Vec<u32>, u32>;

#[derive(Clone, Debug)]
pub struct RandomIdeal {
    pub p: u32,
    pub nvars: usize,
    /// `x_i^{box_[i]}` is among the generators.
    pub box_: Vec<u32>,
    pub generators: Vec<Sparse>,
}

fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|m: Vec<u32>| {
                let used: u32 = m.iter().sum();
                (0..=deg - used).map(move |k| {
                    let mut n = m.clone();
                    n.push(k);
                    n
                })
            })
            .collect();
    }
    out
}

/// Ideals with 1 to 3 variables over `F_2` or `F_3`, generator degrees at
/// most 4, always containing a pure power of every variable.
pub fn random_ideals(seed: u64, count: usize) -> Vec<RandomIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = if rng.gen_bool(0.5) { 2 } else { 3 };
            let nvars = rng.gen_range(1..=3);
            let box_: Vec<u32> = (0..nvars).map(|_| rng.gen_range(1..=4)).collect();
            let mut generators = Vec::new();
            for (i, &a) in box_.iter().enumerate() {
                let mut e = vec![0; nvars];
                e[i] = a;
                generators.push(Sparse::from([(e, 1)]));
            }
            // no constant terms, so most ideals stay proper
            let pool: Vec<Vec<u32>> =
                monomials_up_to(nvars, 4).into_iter().filter(|m| m.iter().any(|&e| e > 0)).collect();
            for _ in 0..rng.gen_range(1..=3) {
                let mut g = Sparse::new();
                for _ in 0..rng.gen_range(1..=4) {
                    let m = pool[rng.gen_range(0..pool.len())].clone();
                    let c = rng.gen_range(1..p);
                    let slot = g.entry(m).or_insert(0);
                    *slot = (*slot + c) % p;
                }
                g.retain(|_, c| *c != 0);
                if !g.is_empty() {
                    generators.push(g);
                }
            }
            RandomIdeal { p, nvars, box_, generators }
        })
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank over `F_p` by dense Gaussian elimination.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                let pivot = rows[rank].clone();
                for (a, b) in rows[r].iter_mut().zip(&pivot) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim k[x]/I` where `I` contains the pure powers `x_i^{a_i}`: the box of
/// exponents below `a` spans `k[x]/(x^a)`, and `I` maps onto the span of all
/// `m·g` truncated to the box.
pub fn box_colength(ideal: &RandomIdeal) -> usize {
    let p = ideal.p as u64;
    let cells: Vec<Vec<u32>> = {
        let mut out = vec![vec![]];
        for &a in &ideal.box_ {
            out = out
                .into_iter()
                .flat_map(|m: Vec<u32>| {
                    (0..a).map(move |k| {
                        let mut n = m.clone();
                        n.push(k);
                        n
                    })
                })
                .collect();
        }
        out
    };
    let index: BTreeMap<&Vec<u32>, usize> = cells.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in &ideal.generators {
        for m in &cells {
            let mut row = vec![0u64; cells.len()];
            for (e, c) in g {
                let prod: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(&i) = index.get(&prod) {
                    row[i] = (row[i] + *c as u64) % p;
                }
            }
            if row.iter().any(|&v| v != 0) {
                rows.push(row);
            }
        }
    }
    cells.len() - rank_mod(rows, p)
}

/// Hand-checked cases; panics if the oracle is wrong.
pub fn oracle_self_check() {
    // (x^2, y^3, x*y) has standard monomials 1, x, y, y^2
    let ideal = RandomIdeal {
        p: 2,
        nvars: 2,
        box_: vec![2, 3],
        generators: vec![
            Sparse::from([(vec![2, 0], 1)]),
            Sparse::from([(vec![0, 3], 1)]),
            Sparse::from([(vec![1, 1], 1)]),
        ],
    };
    assert_eq!(box_colength(&ideal), 4);
    // x + 1 is a unit modulo x^3
    let unit = RandomIdeal {
        p: 3,
        nvars: 1,
        box_: vec![3],
        generators: vec![Sparse::from([(vec![3], 1)]), Sparse::from([(vec![1], 1), (vec![0], 1)])],
    };
    assert_eq!(box_colength(&unit), 0);
    assert_eq!(random_ideals(7, 5).len(), 5);
}
