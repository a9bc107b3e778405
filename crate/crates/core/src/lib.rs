//! Exact arithmetic, certificate-producing generators and finite
//! censuses for atomic and non-atomic domains.

pub mod atoms;
pub mod divgroup;
pub mod domain;
pub mod error;
pub mod euclid;
pub mod field;
pub mod radical;
pub mod report;
pub mod rings;
mod serde_dec;
pub mod topo;

pub use domain::{BezoutCertificate, ConditionEWitness, Factorization, RingElement};
pub use error::{Error, Result};
pub use rings::RingDescriptor;
