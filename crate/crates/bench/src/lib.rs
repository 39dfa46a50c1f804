//! Shared fixtures for the benchmarks.

use gentle_core::walks::{enumerate_gst, GenWalk};
use gentle_core::{corpus, Algebra};

/// The A0 algebra with every generalized string up to ten arrows.
pub fn a0_strings() -> (Algebra, Vec<GenWalk>) {
    let a = corpus::a0();
    let walks = enumerate_gst(&a, 10).walks;
    (a, walks)
}

/// A fixed random gentle algebra with its strings up to `max_arrows` arrows.
pub fn random_strings(seed: u64, max_arrows: usize) -> (Algebra, Vec<GenWalk>) {
    let a = corpus::random_gentle(seed, 8);
    let walks = enumerate_gst(&a, max_arrows).walks;
    (a, walks)
}
