//! Fixtures shared by the criterion benchmarks.

pub use metzler_core::graph::{build_torus, petersen, random_digraph, RandomDigraphSpec};
pub use metzler_core::{Complex64, Digraph, MetzlerAssembly, Result};

use metzler_core::zeta::{random_unitary_coin, CoinWalk};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random weakly connected digraph with random rates.
pub fn random_graph(n: usize, seed: u64) -> Digraph {
    random_digraph(RandomDigraphSpec::new(n), &mut ChaCha8Rng::seed_from_u64(seed)).expect("n >= 2")
}

pub fn assembly(g: &Digraph) -> MetzlerAssembly {
    MetzlerAssembly::from_digraph(g).expect("valid digraph")
}

/// Torus walk with a seeded random unitary coin.
pub fn unitary_walk(d: usize, side: usize, seed: u64) -> CoinWalk {
    let coin = random_unitary_coin(d, &mut ChaCha8Rng::seed_from_u64(seed));
    CoinWalk::new(d, side, coin).expect("valid torus")
}
