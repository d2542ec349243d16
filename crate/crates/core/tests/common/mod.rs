#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
use wrc_core::resolution::Resolution;
use wrc_core::{BettiTable, Coeff, Monomial, Polynomial, VarSet};

/// Parses a table typed in Macaulay2 layout (header row of column indices,
/// then `row: entries`, `.` for zero). Column `i`, row `r` is
/// `beta_(i, i+r)`.
pub fn parse_table(text: &str) -> BettiTable {
    let mut t = BettiTable::new();
    for line in text.lines().skip(1) {
        let Some((row, rest)) = line.trim().split_once(':') else {
            continue;
        };
        let r: u32 = row.trim().parse().expect("row index");
        for (i, cell) in rest.split_whitespace().enumerate() {
            if cell != "." {
                t.set(i as u32, i as u32 + r, cell.parse().expect("entry"));
            }
        }
    }
    t
}

pub const EN_6_2: &str = "
       0  1  2   3  4  5 6
    0: 1  .  .   .  .  . .
    1: . 10 20  15  4  . .
    2: . 10 40  60 40 10 .
    3: .  1 10  30 40 25 6";

pub const EN_3_2: &str = "
       0 1 2 3
    0: 1 . . .
    1: . 1 . .
    2: . 4 4 .
    3: . 1 4 3";

pub const K_1_2: &str = "
       0 1 2 3 4
    0: 1 1 . . .
    1: . 2 2 . .
    2: . . 2 2 .
    3: . . . 2 2
    4: . . . . 2";

pub const K_2_2: &str = "
       0 1 2  3  4
    0: 1 2 1  .  .
    1: . 2 6  6  2
    2: . . 2 10 18
    3: . . .  2 14
    4: . . .  .  2";

pub const K_3_2: &str = "
       0 1  2  3  4
    0: 1 3  4  4  4
    1: . 2 10 24 40
    2: . .  2 18 72
    3: . .  .  2 26
    4: . .  .  .  2";

pub const K_3_3: &str = "
       0 1  2  3   4
    0: 1 3  4  4   4
    1: . .  .  .   .
    2: . 3 15 36  60
    3: . .  .  .   .
    4: . .  6 48 180";

/// Every lattice point reachable as a sum of generators, by breadth-first
/// closure inside the box.
pub fn semigroup_closure(gens: &[(u32, u32)], max_i: u32, max_j: u32) -> HashSet<(u32, u32)> {
    let mut seen = HashSet::from([(0, 0)]);
    let mut frontier = vec![(0u32, 0u32)];
    while let Some((i, j)) = frontier.pop() {
        for &(a, b) in gens {
            let p = (i + a, j + b);
            if p.0 <= max_i && p.1 <= max_j && seen.insert(p) {
                frontier.push(p);
            }
        }
    }
    seen
}

pub fn random_monomial(rng: &mut impl Rng, nvars: usize, max_exp: u32) -> Monomial {
    Monomial::new((0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect())
}

pub fn random_coeff(rng: &mut impl Rng) -> Coeff {
    let num: i64 = rng.gen_range(-9..=9);
    let den: i64 = rng.gen_range(1..=4);
    Coeff::new(num.into(), den.into())
}

pub fn random_poly(
    rng: &mut impl Rng,
    vars: &Arc<VarSet>,
    terms: usize,
    max_exp: u32,
) -> Polynomial {
    let n = vars.len();
    Polynomial::from_terms(
        vars.clone(),
        (0..terms).map(|_| (random_monomial(rng, n, max_exp), random_coeff(rng))),
    )
}

/// A random element of a free module over `R`: each coordinate is a small
/// integer multiple of a standard monomial of low degree.
pub fn random_r_vector(rng: &mut impl Rng, res: &Resolution, rank: usize) -> Vec<Polynomial> {
    let basis = res.basis();
    (0..rank)
        .map(|_| {
            if rng.gen_bool(0.25) {
                return Polynomial::zero(res.ambient().clone());
            }
            let a = rng.gen_range(0..=basis.max_degree().min(3));
            let mons = basis.degree(a);
            let m = mons[rng.gen_range(0..mons.len())].clone();
            let c = Coeff::from_integer(rng.gen_range(-5i64..=5).into());
            Polynomial::monomial(res.ambient().clone(), m, c)
        })
        .collect()
}
