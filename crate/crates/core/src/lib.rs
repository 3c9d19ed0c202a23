//! Maximal tori of finite groups of Lie type: torus taxonomy, conjugacy-class
//! catalogues, base-size bounds, explicit matrix constructions and the
//! reproduction harness that ties them together.

pub mod arith;
pub mod bounds;
pub mod cert;
pub mod classcat;
pub mod field;
pub mod matgrp;
pub mod taxonomy;
pub mod verifier;

pub use taxonomy::{Family, GroupSpec, Partition, SplitTag, TorusClass, TorusData};

use permcore::PermError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("invalid torus class for {spec}: {reason}")]
    InvalidClass { spec: String, reason: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{what}: size {size} exceeds the limit {max}")]
    LimitExceeded { what: String, size: String, max: u64 },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

pub type Result<T> = std::result::Result<T, LieError>;
