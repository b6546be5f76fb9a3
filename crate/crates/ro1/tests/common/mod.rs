#![allow(dead_code)] // each test target uses a subset

//! Shared helpers for the integration suites: a seeded random-spec
//! generator matching the test distribution (q <= 5, spacers <= 3,
//! prefix <= 3, period <= 4).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use ro1::params::{ParamSpec, StageSpec};

pub fn random_stage(rng: &mut impl Rng) -> StageSpec {
    let q = rng.random_range(2..=5u64);
    let spacers = (0..q - 1).map(|_| rng.random_range(0..=3u64)).collect();
    StageSpec::new(q, spacers).unwrap()
}

pub fn random_spec(rng: &mut impl Rng) -> ParamSpec {
    let prefix_len = rng.random_range(0..=3usize);
    let period = rng.random_range(1..=4usize);
    let prefix = (0..prefix_len).map(|_| random_stage(rng)).collect();
    let tail = (0..period).map(|_| random_stage(rng)).collect();
    ParamSpec::new(prefix, Some(tail), None).unwrap()
}

pub fn tail_is_constant(spec: &ParamSpec) -> bool {
    let values = spec
        .tail_spacer_values()
        .expect("generated specs have tails");
    values.iter().all(|&v| v == values[0])
}

/// `count` random eventually-periodic specs (constant tails allowed).
pub fn random_specs(seed: u64, count: usize) -> Vec<ParamSpec> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..count).map(|_| random_spec(&mut rng)).collect()
}

/// `count` random specs whose tail spacer multiset holds two distinct
/// values, so the induced rank-one word is aperiodic.
pub fn random_aperiodic_specs(seed: u64, count: usize) -> Vec<ParamSpec> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut specs = Vec::with_capacity(count);
    while specs.len() < count {
        let spec = random_spec(&mut rng);
        if !tail_is_constant(&spec) {
            specs.push(spec);
        }
    }
    specs
}

/// `count` random specs with a constant-value tail (nontrivial centralizer).
pub fn random_constant_tail_specs(seed: u64, count: usize) -> Vec<ParamSpec> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let prefix_len = rng.random_range(0..=3usize);
            let prefix = (0..prefix_len).map(|_| random_stage(&mut rng)).collect();
            let value = rng.random_range(0..=3u64);
            let period = rng.random_range(1..=4usize);
            let tail = (0..period)
                .map(|_| {
                    let q = rng.random_range(2..=5u64);
                    StageSpec::new(q, vec![value; (q - 1) as usize]).unwrap()
                })
                .collect();
            ParamSpec::new(prefix, Some(tail), None).unwrap()
        })
        .collect()
}
