//! Finite-window checks over the integers: periodicity of the indicator of
//! "coprime to every listed prime", and Golomb basic neighborhoods.
//!
//! Every statement here is about the window that was scanned and nothing
//! more.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{factor, RingElement};
use crate::error::{Error, Result};
use crate::rings::integer::is_prime;

/// A point `x = 1 (mod period)` of the window and a prime factor of `x`
/// that is not in the input list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub x: i64,
    pub prime: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityReport {
    pub primes: Vec<u64>,
    pub period: u64,
    /// Inclusive bounds.
    pub window: (i64, i64),
    pub verified: bool,
    pub coset_check: bool,
    pub extractions: Vec<Extraction>,
}

fn validate_primes(primes: &[u64]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::InvalidPrimeList("empty prime list".into()));
    }
    for (i, &p) in primes.iter().enumerate() {
        if !is_prime(&BigUint::from(p))? {
            return Err(Error::InvalidPrimeList(format!("{p} is not prime")));
        }
        if primes[..i].contains(&p) {
            return Err(Error::InvalidPrimeList(format!("{p} listed twice")));
        }
    }
    Ok(())
}

/// `chi(x) = prod (1 - [p | x])`, as a 0/1 value.
fn chi(primes: &[u64], x: i64) -> u8 {
    primes
        .iter()
        .map(|&p| u8::from(x.rem_euclid(p as i64) != 0))
        .product()
}

pub fn periodic_char_check(primes: &[u64], radius: u64) -> Result<PeriodicityReport> {
    validate_primes(primes)?;
    let period = primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .filter(|&p| p <= i64::MAX as u64 / 4)
        .ok_or_else(|| Error::InvalidPrimeList("period overflows".into()))?;
    let r = i64::try_from(radius).map_err(|_| Error::InvalidParameters("radius too large".into()))?;
    let (lo, hi) = (-r, r);
    let p = period as i64;

    let verified = (lo..=hi)
        .into_par_iter()
        .filter(|x| x + p <= hi)
        .all(|x| chi(primes, x) == chi(primes, x + p));

    let coset: Vec<i64> = (lo..=hi).filter(|x| x.rem_euclid(p) == 1 % p).collect();
    let coset_check = coset.par_iter().all(|&x| chi(primes, x) == 1);
    let mut extractions = Vec::new();
    for &x in &coset {
        if x.abs() == 1 {
            continue;
        }
        let fac = factor(&RingElement::int(x))?;
        let prime = fac
            .factors
            .iter()
            .filter_map(|(f, _)| f.as_integer()?.to_u64())
            .find(|q| !primes.contains(q))
            .ok_or_else(|| {
                Error::InvariantViolation(format!("{x} has no prime factor outside the list"))
            })?;
        extractions.push(Extraction { x, prime });
    }
    Ok(PeriodicityReport {
        primes: primes.to_vec(),
        period,
        window: (lo, hi),
        verified,
        coset_check,
        extractions,
    })
}

/// Whether `x` lies in the basic set `b + aZ`, which needs `gcd(a, b) = 1`.
pub fn golomb_membership(x: &BigInt, b: &BigInt, a: &BigInt) -> Result<bool> {
    if !a.is_positive() {
        return Err(Error::InvalidParameters(format!("modulus {a} must be positive")));
    }
    if !b.gcd(a).is_one() {
        return Err(Error::NotCoprime {
            modulus: a.to_string(),
            base: b.to_string(),
        });
    }
    Ok((x - b).mod_floor(a).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighborhood {
    pub x: i64,
    pub modulus: u64,
    /// No window point of `x + modulus Z` is a multiple of the prime.
    pub misses_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedIdealReport {
    pub prime: u64,
    /// Inclusive bounds; the window is `[1, radius]`.
    pub window: (i64, i64),
    pub neighborhoods: Vec<Neighborhood>,
    /// Window points inside `pZ`, which need no neighborhood.
    pub skipped: Vec<i64>,
    pub verified: bool,
}

/// For every `x` in `[1, radius]` outside `pZ`, the neighborhood `x + pZ`
/// and a scan showing it misses `pZ` inside the window.
pub fn maximal_ideal_closed_check(p: u64, radius: u64) -> Result<ClosedIdealReport> {
    if !is_prime(&BigUint::from(p))? {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    let hi = i64::try_from(radius).map_err(|_| Error::InvalidParameters("radius too large".into()))?;
    let pi = p as i64;
    let (inside, outside): (Vec<i64>, Vec<i64>) = (1..=hi).partition(|x| x % pi == 0);
    let neighborhoods: Vec<Neighborhood> = outside
        .par_iter()
        .map(|&x| {
            let basic = x.gcd(&pi) == 1;
            let misses = (1..=hi)
                .filter(|y| (y - x).rem_euclid(pi) == 0)
                .all(|y| y % pi != 0);
            Neighborhood {
                x,
                modulus: p,
                misses_ideal: basic && misses,
            }
        })
        .collect();
    let verified = neighborhoods.iter().all(|n| n.misses_ideal);
    Ok(ClosedIdealReport {
        prime: p,
        window: (1, hi),
        neighborhoods,
        skipped: inside,
        verified,
    })
}
