//! Fixtures shared by the benchmarks.

use convergecast::generate::{gen_grid, gen_random_connected};
use convergecast::Instance;

pub fn grid(side: usize) -> Instance {
    gen_grid(side, side, 4).expect("valid grid")
}

pub fn random(n: usize, seed: u64) -> Instance {
    gen_random_connected(n, 0.3, 4, seed).expect("valid parameters")
}
