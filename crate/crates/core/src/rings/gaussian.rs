//! The Gaussian integers `Z[i]`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rings::integer::{factor_natural, FactorConfig};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gaussian {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Gaussian {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    /// `[1, i, -1, -i]`.
    pub fn units() -> [Gaussian; 4] {
        [
            Self::new(1, 0),
            Self::new(0, 1),
            Self::new(-1, 0),
            Self::new(0, -1),
        ]
    }

    pub fn from_integer(n: BigInt) -> Self {
        Gaussian {
            re: n,
            im: BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn neg(&self) -> Self {
        Gaussian {
            re: -&self.re,
            im: -&self.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Unit inverse (`None` for nonunits).
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.conj())
    }

    /// Nearest-integer quotient and the corresponding remainder, with
    /// `N(r) <= N(d) / 2`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "Gaussian division by zero");
        let n = d.norm();
        let num = self.mul(&d.conj());
        let q = Gaussian {
            re: round_div(&num.re, &n),
            im: round_div(&num.im, &n),
        };
        let r = self.sub(&q.mul(d));
        (q, r)
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// The associate in the first quadrant (`re > 0`, `im >= 0`) and the
    /// unit `u` with `self = u * canonical`.
    pub fn canonical(&self) -> (Gaussian, Gaussian) {
        debug_assert!(!self.is_zero());
        for u in Self::units() {
            // candidate = self * u^{-1}
            let c = self.mul(&u.conj());
            if c.re.is_positive() && !c.im.is_negative() {
                return (u, c);
            }
        }
        unreachable!("every nonzero Gaussian integer has a first-quadrant associate")
    }

    /// Euclid's algorithm in `Z[i]`; the result is not normalized.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a
    }
}

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    // floor((2a + n) / 2n) for n > 0
    let two = BigInt::from(2);
    (a * &two + n).div_floor(&(n * &two))
}

impl Ord for Gaussian {
    /// Norm first, then `(re, im)` lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.norm()
            .cmp(&other.norm())
            .then_with(|| self.re.cmp(&other.re))
            .then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for Gaussian {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.sign()) {
            (_, Sign::NoSign) => write!(f, "{}", self.re),
            (true, _) => write!(f, "{}i", self.im),
            (false, Sign::Plus) => write!(f, "{}+{}i", self.re, self.im),
            (false, Sign::Minus) => write!(f, "{}{}i", self.re, self.im),
        }
    }
}

/// A square root of `-1` modulo the prime `p = 1 (mod 4)`.
fn sqrt_minus_one(p: &BigUint) -> BigUint {
    let one = BigUint::one();
    let pm1 = p - &one;
    let e = &pm1 >> 2;
    let mut c = BigUint::from(2u32);
    loop {
        let s = c.modpow(&e, p);
        if (&s * &s) % p == pm1 {
            return s;
        }
        c += &one;
    }
}

/// The canonical Gaussian prime lying over the rational prime `p`, for
/// `p = 2` or `p = 1 (mod 4)`. Inert primes are their own Gaussian prime.
pub fn prime_over(p: &BigUint) -> Gaussian {
    let four = BigUint::from(4u32);
    let pi = BigInt::from(p.clone());
    if *p == BigUint::from(2u32) {
        return Gaussian::new(1, 1);
    }
    if p % &four == BigUint::from(3u32) {
        return Gaussian::from_integer(pi);
    }
    let s = BigInt::from(sqrt_minus_one(p));
    let g = Gaussian::from_integer(pi).gcd(&Gaussian::new(s, 1));
    g.canonical().1
}

/// Unit part and canonical prime factors of a nonzero Gaussian integer,
/// sorted by norm then `(re, im)`.
pub fn factor_gaussian(x: &Gaussian, cfg: &FactorConfig) -> Result<(Gaussian, Vec<(Gaussian, u32)>)> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let norm = x.norm().to_biguint().expect("norm is nonnegative");
    let mut rest = x.clone();
    let mut out: Vec<(Gaussian, u32)> = Vec::new();
    for (p, _) in factor_natural(&norm, cfg)? {
        let pi = prime_over(&p);
        let mut candidates = vec![pi.clone()];
        let conj = pi.conj().canonical().1;
        if conj != pi {
            candidates.push(conj);
        }
        for g in candidates {
            let mut m = 0;
            while let Some(q) = rest.exact_div(&g) {
                rest = q;
                m += 1;
            }
            if m > 0 {
                out.push((g, m));
            }
        }
    }
    if !rest.is_unit() {
        return Err(Error::InvariantViolation(format!(
            "Gaussian factorization left nonunit cofactor {rest}"
        )));
    }
    out.sort();
    Ok((rest, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_associates() {
        let (u, c) = Gaussian::new(-3, 0).canonical();
        assert_eq!((u, c), (Gaussian::new(-1, 0), Gaussian::new(3, 0)));
        let (u, c) = Gaussian::i().canonical();
        assert_eq!((u, c), (Gaussian::i(), Gaussian::one()));
        let (_, c) = Gaussian::new(0, -5).canonical();
        assert_eq!(c, Gaussian::new(5, 0));
        let (_, c) = Gaussian::new(-2, 3).canonical();
        assert_eq!(c, Gaussian::new(3, 2));
    }

    #[test]
    fn two_ramifies() {
        let (u, f) = factor_gaussian(&Gaussian::new(2, 0), &FactorConfig::default()).unwrap();
        assert_eq!(u, Gaussian::new(0, -1));
        assert_eq!(f, vec![(Gaussian::new(1, 1), 2)]);
    }

    #[test]
    fn split_primes() {
        let pi = prime_over(&BigUint::from(13u32));
        assert_eq!(pi.norm(), BigInt::from(13));
        assert!(pi.re.is_positive() && !pi.im.is_negative());
        let (u, f) = factor_gaussian(&Gaussian::new(5, 0), &FactorConfig::default()).unwrap();
        let replay = f
            .iter()
            .fold(u.clone(), |acc, (g, m)| acc.mul(&g.pow(*m)));
        assert_eq!(replay, Gaussian::new(5, 0));
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn nearest_remainder_is_small() {
        let a = Gaussian::new(27, -14);
        let b = Gaussian::new(4, 3);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.norm() * 2 <= b.norm());
    }
}
