//! The four concrete ring families and their descriptors.

pub mod gaussian;
pub mod integer;
pub mod poly;
pub mod truncated;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::gf;
pub use truncated::{enumerate_elements, Budget, ElementFilter, TruncatedElement, TruncatedSpec};

/// Identifies one supported ring. Textual form: `z`, `gauss`,
/// `poly-fq:<q>` or `trunc:<q>:<d>:<e>:<N>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    GaussianIntegers,
    PolyOverFq { q: u16 },
    Truncated(TruncatedSpec),
}

impl RingDescriptor {
    pub fn poly(q: u16) -> Result<Self> {
        if !truncated::SUPPORTED_Q.contains(&q) {
            return Err(Error::InvalidDescriptor(format!(
                "q = {q} is not in {{2,3,4,5,7,8,9}}"
            )));
        }
        Ok(RingDescriptor::PolyOverFq { q })
    }

    pub fn truncated(q: u16, d: u8, e: u8, n: u8) -> Result<Self> {
        TruncatedSpec::new(q, d, e, n).map(RingDescriptor::Truncated)
    }

    /// Identifier of the coefficient field's modulus table entry, if any.
    pub fn modulus_id(&self) -> Option<String> {
        match self {
            RingDescriptor::PolyOverFq { q } => Some(gf(*q).modulus_id()),
            RingDescriptor::Truncated(s) => Some(s.field().modulus_id()),
            _ => None,
        }
    }

    /// Integers, Gaussian integers and `F_q[t]` admit Euclidean division.
    pub fn is_euclidean(&self) -> bool {
        !matches!(self, RingDescriptor::Truncated(_))
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "z"),
            RingDescriptor::GaussianIntegers => write!(f, "gauss"),
            RingDescriptor::PolyOverFq { q } => write!(f, "poly-fq:{q}"),
            RingDescriptor::Truncated(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDescriptor(s.to_string());
        let s = s.trim();
        match s {
            "z" | "Z" => return Ok(RingDescriptor::Integers),
            "gauss" => return Ok(RingDescriptor::GaussianIntegers),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("poly-fq:") {
            let q = rest.parse().map_err(|_| bad())?;
            return RingDescriptor::poly(q);
        }
        if let Some(rest) = s.strip_prefix("trunc:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 4 {
                return Err(bad());
            }
            let q = parts[0].parse().map_err(|_| bad())?;
            let d = parts[1].parse().map_err(|_| bad())?;
            let e = parts[2].parse().map_err(|_| bad())?;
            let n = parts[3].parse().map_err(|_| bad())?;
            return RingDescriptor::truncated(q, d, e, n);
        }
        Err(bad())
    }
}

impl Serialize for RingDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RingDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
