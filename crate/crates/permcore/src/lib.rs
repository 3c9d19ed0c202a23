//! Permutation group engine: stabiliser chains, coset actions, regular-orbit
//! and base-size search, and exhaustive conjugacy classes.

pub mod base;
pub mod chain;
pub mod classes;
pub mod coset;
pub mod group;
pub mod perm;
pub mod random;

use num_bigint::BigUint;

pub use base::{base_size_exact, intersection_orders, regular_orbit_search, subdegrees, BaseSize, KnownGroup};
pub use classes::{classes_locating, exhaustive_classes, ClassInfo};
pub use coset::{coset_action, coset_orbit_length, CosetAction, CosetKeyer};
pub use group::PermGroup;
pub use perm::Perm;
pub use random::ProductReplacement;

/// Size limits and the master seed; configuration values, not constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    pub max_index: u64,
    pub exhaustive_limit: u64,
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_degree: 1_000_000,
            max_index: 5_000_000,
            exhaustive_limit: 20_000_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image array is not a bijection")]
    NotBijective,
    #[error("generators have differing degrees")]
    DegreeMismatch,
    #[error("degree {degree} exceeds the limit {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("index {index} exceeds the limit {max}")]
    IndexLimit { index: BigUint, max: u64 },
    #[error("{what}: size {size} exceeds the limit {max}")]
    LimitExceeded {
        what: &'static str,
        size: BigUint,
        max: u64,
    },
    #[error("subgroup is not contained in the group")]
    NotSubgroup,
    #[error("random Schreier-Sims did not reach order {expected}")]
    OrderNotReached { expected: BigUint },
    #[error("internal inconsistency: {0}")]
    Inconsistent(&'static str),
}
