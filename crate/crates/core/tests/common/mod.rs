#![allow(dead_code)]

use onetwo::instance::block_of;
use onetwo::satfront::Cnf;
use onetwo::OitmInstance;
use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` clauses of `k` distinct variables out of `n`, random signs.
pub fn random_cnf(rng: &mut impl Rng, n: usize, m: usize, k: usize) -> Cnf {
    let clauses = (0..m)
        .map(|_| {
            sample(rng, n, k)
                .into_iter()
                .map(|v| {
                    let v = v as i32 + 1;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    Cnf::new(n, clauses)
}

/// Off-block entries kept with probability `density`; weights in
/// `0..=max_weight` when `max_weight` is set.
pub fn random_instance(
    rng: &mut impl Rng,
    blocks: usize,
    density: f64,
    max_weight: Option<i64>,
) -> OitmInstance {
    let mut inst = match max_weight {
        Some(_) => OitmInstance::weighted(blocks, rng.gen_range(0..=20)).unwrap(),
        None => OitmInstance::new(blocks).unwrap(),
    };
    let dim = 2 * blocks;
    for i in 1..=dim {
        for j in 1..=dim {
            if block_of(i) == block_of(j) || !rng.gen_bool(density) {
                continue;
            }
            match max_weight {
                Some(w) => inst.insert_weighted(i, j, rng.gen_range(0..=w)).unwrap(),
                None => inst.insert(i, j).unwrap(),
            }
        }
    }
    inst
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}
