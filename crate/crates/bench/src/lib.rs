//! Shared fixtures for the benchmarks.

use jordanable::oracle::{random_instance, Instance, Profile};

/// A reproducible instance of exactly `dim` rows, or the first seed that gets there.
pub fn instance(dim: usize) -> Instance {
    let profile = Profile { max_dim: dim, ..Profile::default() };
    (0u64..)
        .map(|seed| random_instance(seed, &profile).unwrap())
        .find(|inst| inst.t.rows() == dim)
        .unwrap()
}
