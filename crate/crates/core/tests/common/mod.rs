#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use seqrcc::fragments::Pattern;
use seqrcc::network::Network;
use seqrcc::projection::Semantics;
use seqrcc::rcc8::{Fragment, Rcc8Relation};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub const VAR_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn random_semantics(rng: &mut TestRng, max_len: usize) -> Semantics {
    if rng.gen_bool(0.5) {
        Semantics::neighbour(rng.gen_range(1..=max_len)).unwrap()
    } else {
        Semantics::partition(2 * rng.gen_range(1..=max_len / 2)).unwrap()
    }
}

/// Mostly small unions, some universal, a few arbitrary.
pub fn random_relation(rng: &mut TestRng) -> Rcc8Relation {
    match rng.gen_range(0..10) {
        0..=2 => Rcc8Relation::UNIVERSAL,
        3..=7 => {
            let k = rng.gen_range(1..=3);
            (0..k).fold(Rcc8Relation::EMPTY, |acc, _| {
                acc | Rcc8Relation::from_bits(1 << rng.gen_range(0..8))
            })
        }
        _ => Rcc8Relation::from_bits(rng.gen_range(1..=255)),
    }
}

pub fn random_network(rng: &mut TestRng, max_vars: usize, sem: Semantics) -> Network {
    let n = rng.gen_range(2..=max_vars);
    let mut net = Network::new(VAR_NAMES[..n].iter().copied(), sem).unwrap();
    let pairs: Vec<_> = net.pairs().collect();
    for (x, y) in pairs {
        let rel: Vec<_> = (0..sem.len()).map(|_| random_relation(rng)).collect();
        net.set(x, y, &rel).unwrap();
    }
    net
}

/// A member of `f`, biased towards small relations.
pub fn random_member(rng: &mut TestRng, f: Fragment) -> Rcc8Relation {
    let members: Vec<_> = f.members().filter(|r| !r.is_empty()).collect();
    if rng.gen_bool(0.2) {
        return Rcc8Relation::UNIVERSAL;
    }
    let small: Vec<_> = members.iter().copied().filter(|r| r.len() <= 3).collect();
    let pool = if rng.gen_bool(0.7) && !small.is_empty() {
        &small
    } else {
        &members
    };
    *pool.choose(rng).unwrap()
}

/// A network whose slices follow one of the closure-decided patterns.
pub fn random_pattern_network(
    rng: &mut TestRng,
    max_vars: usize,
    max_len: usize,
) -> (Network, Pattern) {
    let sem = random_semantics(rng, max_len);
    let m = sem.len();
    let (pattern, per_index): (Pattern, Vec<Fragment>) = match sem.kind() {
        seqrcc::projection::SemanticsKind::NeighbourInstants => {
            let even = rng.gen_bool(0.5);
            let pattern = if even {
                Pattern::HntppOnEven
            } else {
                Pattern::HntppOnOdd
            };
            let frags = (1..=m)
                .map(|i| {
                    if (i % 2 == 0) == even {
                        Fragment::Hntpp
                    } else {
                        Fragment::Q8
                    }
                })
                .collect();
            (pattern, frags)
        }
        seqrcc::projection::SemanticsKind::TimePartition => {
            let frags = (1..=m)
                .map(|i| {
                    if sem.is_instant(i) {
                        Fragment::H8
                    } else {
                        *[Fragment::H8, Fragment::Q8, Fragment::C8]
                            .choose(rng)
                            .unwrap()
                    }
                })
                .collect();
            (Pattern::PartitionH8Instants, frags)
        }
    };
    let n = rng.gen_range(2..=max_vars);
    let mut net = Network::new(VAR_NAMES[..n].iter().copied(), sem).unwrap();
    let pairs: Vec<_> = net.pairs().collect();
    for (x, y) in pairs {
        let rel: Vec<_> = per_index.iter().map(|&f| random_member(rng, f)).collect();
        net.set(x, y, &rel).unwrap();
    }
    (net, pattern)
}
