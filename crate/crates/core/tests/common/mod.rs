#![allow(dead_code)]

pub mod naive;

use std::collections::BTreeMap;

use pbprop::model::{generate_random, GeneratorParams, Instance, ProjectSet};
use pbprop::rational::Rational;
use pbprop::satisfaction::SatisfactionFunction as Sf;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `n ≤ 6` voters, `m ≤ 8` projects, half-integer costs in `[1, 5]`,
/// budget in `[m/2, 2m]`.
pub fn random_instance(seed: u64) -> Instance {
    random_instance_within(seed, 6, 8)
}

pub fn random_instance_within(seed: u64, max_n: usize, max_m: usize) -> Instance {
    let mut r = rng(seed, 1);
    let mut params = GeneratorParams::small(r.gen_range(1..=max_n), r.gen_range(1..=max_m));
    params.approval_density = [0.3, 0.5, 0.7][r.gen_range(0..3)];
    generate_random(&params, seed).expect("valid parameters")
}

pub fn random_unit_cost_instance(seed: u64) -> Instance {
    let mut r = rng(seed, 2);
    let (n, m) = (r.gen_range(1..=6), r.gen_range(1..=8));
    let mut params = GeneratorParams::unit_cost(n, m, r.gen_range(1..=m as i64));
    params.approval_density = [0.3, 0.5, 0.7][r.gen_range(0..3)];
    generate_random(&params, seed).expect("valid parameters")
}

pub fn dns_builtins(inst: &Instance) -> Vec<Sf> {
    vec![Sf::cost(inst), Sf::cardinality(inst), Sf::sqrt_cost(inst), Sf::log_cost(inst)]
}

/// Per-project values on the grid `k/4`, `1 ≤ k ≤ 20`.
pub fn random_table(inst: &Instance, seed: u64) -> Sf {
    let mut r = rng(seed, 3);
    let entries: BTreeMap<String, Rational> =
        inst.projects().iter().map(|p| (p.id.clone(), Rational::new(r.gen_range(1..=20), 4))).collect();
    Sf::table(inst, &entries).expect("positive entries")
}

/// A uniformly random feasible outcome (rejection sampling, then greedy trim).
pub fn random_outcome(inst: &Instance, seed: u64) -> ProjectSet {
    let mut r = rng(seed, 4);
    let mut w: ProjectSet = (0..inst.num_projects()).filter(|_| r.gen_bool(0.5)).collect();
    while !inst.is_outcome(&w).unwrap() {
        let drop = *w.iter().nth(r.gen_range(0..w.len())).unwrap();
        w.remove(&drop);
    }
    w
}
