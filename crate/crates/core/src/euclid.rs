//! Certificate-producing generators of pairwise comaximal irreducibles.
//!
//! * [`EuclidState`]: `x = y f_1 ... f_n + 1` with `y` a Condition (E)
//!   witness for the product, then the least irreducible factor of `x`.
//! * [`PollackState`]: irreducibles over `Z` whose class modulo `N` avoids
//!   a proper subgroup `H` of `(Z/N)^x`.
//! * [`polyvalue_prime_generator`]: new prime divisors of the values of an
//!   integer polynomial.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::domain::{
    bezout, condition_e_witness, factor, is_unit, least_irreducible, least_nonzero_nonunit,
    unit_inverse, BezoutCertificate, Factorization, RingElement,
};
use crate::error::{Error, Result};
use crate::rings::integer::is_prime;
use crate::rings::RingDescriptor;

/// One recorded step. The seed step has no `y`, `x` or factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclidStep {
    pub y: Option<RingElement>,
    pub x: Option<RingElement>,
    #[serde(flatten)]
    pub factorization: Option<Factorization>,
    pub selected: RingElement,
    /// Certificates pairing `selected` with every earlier irreducible.
    pub certificates: Vec<BezoutCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclidState {
    pub ring: RingDescriptor,
    pub chosen: Vec<RingElement>,
    #[serde(rename = "steps")]
    pub transcript: Vec<EuclidStep>,
}

impl EuclidState {
    pub fn new(ring: RingDescriptor) -> Result<Self> {
        if !ring.is_euclidean() {
            return Err(Error::UnsupportedRing {
                ring: ring.to_string(),
            });
        }
        Ok(EuclidState {
            ring,
            chosen: Vec::new(),
            transcript: Vec::new(),
        })
    }

    /// Runs `count` steps from the empty state.
    pub fn run(ring: RingDescriptor, count: usize) -> Result<Self> {
        let mut st = Self::new(ring)?;
        for _ in 0..count {
            st = st.step()?;
        }
        Ok(st)
    }

    /// All pairwise certificates, in emission order.
    pub fn certificates(&self) -> impl Iterator<Item = &BezoutCertificate> {
        self.transcript.iter().flat_map(|s| s.certificates.iter())
    }

    /// Appends one irreducible. On error `self` is untouched, so every
    /// certificate gathered so far is still available to the caller.
    pub fn step(&self) -> Result<Self> {
        let (y, x, fac, selected) = if self.chosen.is_empty() {
            (None, None, None, least_irreducible(self.ring))
        } else {
            let prod = RingElement::product(self.ring, &self.chosen)?;
            let w = condition_e_witness(&prod)?;
            let fac = factor(&w.value)?;
            let selected = fac
                .least_factor()
                .cloned()
                .ok_or_else(|| Error::InvariantViolation(format!("{} is a unit", w.value)))?;
            (Some(w.y), Some(w.value), Some(fac), selected)
        };
        let certificates = pair_certificates(&self.chosen, &selected)?;
        let mut next = self.clone();
        next.chosen.push(selected.clone());
        next.transcript.push(EuclidStep {
            y,
            x,
            factorization: fac,
            selected,
            certificates,
        });
        Ok(next)
    }
}

fn pair_certificates(chosen: &[RingElement], g: &RingElement) -> Result<Vec<BezoutCertificate>> {
    chosen.iter().map(|f| bezout(f, g)).collect()
}

/// `x` with `a x + b` a nonzero nonunit, by the three-way case split on `b`.
pub fn nonunit_specialization(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring().to_string(),
            right: b.ring().to_string(),
        });
    }
    if a.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let ring = a.ring();
    if !ring.is_euclidean() {
        return Err(Error::UnsupportedRing {
            ring: ring.to_string(),
        });
    }
    if b.is_zero() {
        return Ok(least_nonzero_nonunit(ring));
    }
    if is_unit(b) {
        let b_inv = unit_inverse(b).expect("b is a unit");
        return Ok(condition_e_witness(&b_inv.mul(a)?)?.y);
    }
    Ok(RingElement::zero(ring))
}

/// One emission of the residue-class generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PollackStep {
    /// `P(t) = lead * t + constant`.
    #[serde(with = "crate::serde_dec::int")]
    pub lead: BigInt,
    #[serde(with = "crate::serde_dec::int")]
    pub constant: BigInt,
    #[serde(with = "crate::serde_dec::int")]
    pub x: BigInt,
    #[serde(with = "crate::serde_dec::int")]
    pub y: BigInt,
    #[serde(flatten)]
    pub factorization: Factorization,
    #[serde(with = "crate::serde_dec::int")]
    pub selected: BigInt,
    /// `selected mod N`.
    pub class: u64,
    /// Comaximality of `selected` with `N`, with `alpha`, then with every
    /// earlier emission.
    pub certificates: Vec<BezoutCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PollackState {
    pub modulus: u64,
    pub subgroup: Vec<u64>,
    pub alpha: u64,
    pub beta: u64,
    #[serde(with = "crate::serde_dec::int_vec")]
    pub chosen: Vec<BigInt>,
    #[serde(rename = "steps")]
    pub transcript: Vec<PollackStep>,
}

/// Checks that `h` is a proper subgroup of `(Z/N)^x`; returns it sorted.
pub fn validate_subgroup(modulus: u64, h: &[u64]) -> Result<Vec<u64>> {
    if modulus < 3 {
        return Err(Error::InvalidParameters(format!("modulus {modulus} < 3")));
    }
    let mut h: Vec<u64> = h.to_vec();
    h.sort_unstable();
    h.dedup();
    let bad = |msg: String| Err(Error::InvalidParameters(msg));
    if let Some(&x) = h.iter().find(|&&x| x >= modulus) {
        return bad(format!("{x} is not a residue modulo {modulus}"));
    }
    if let Some(&x) = h.iter().find(|&&x| x.gcd(&modulus) != 1) {
        return bad(format!("{x} is not a unit modulo {modulus}"));
    }
    if h.first() != Some(&1) {
        return bad("subgroup must contain 1".into());
    }
    for &a in &h {
        for &b in &h {
            let c = ((a as u128 * b as u128) % modulus as u128) as u64;
            if h.binary_search(&c).is_err() {
                return bad(format!("{a} * {b} = {c} leaves the subgroup"));
            }
        }
    }
    // a finite subset closed under multiplication is closed under inverses
    let units = (1..modulus).filter(|x| x.gcd(&modulus) == 1).count();
    if h.len() == units {
        return bad("subgroup must be proper".into());
    }
    Ok(h)
}

fn class_of(g: &BigInt, modulus: u64) -> u64 {
    g.mod_floor(&BigInt::from(modulus))
        .to_u64()
        .expect("residue fits")
}

/// The search order `0, 1, -1, 2, -2, ...`.
fn search_order() -> impl Iterator<Item = BigInt> {
    std::iter::once(BigInt::zero()).chain((1i64..).flat_map(|k| [BigInt::from(k), BigInt::from(-k)]))
}

impl PollackState {
    pub fn new(modulus: u64, subgroup: &[u64]) -> Result<Self> {
        let subgroup = validate_subgroup(modulus, subgroup)?;
        let alpha = (2..modulus)
            .find(|a| a.gcd(&modulus) == 1 && subgroup.binary_search(a).is_err())
            .expect("a proper subgroup misses some unit other than 1");
        let beta = (1..modulus)
            .find(|b| (alpha as u128 * *b as u128) % modulus as u128 == 1)
            .expect("alpha is a unit");
        Ok(PollackState {
            modulus,
            subgroup,
            alpha,
            beta,
            chosen: Vec::new(),
            transcript: Vec::new(),
        })
    }

    pub fn run(modulus: u64, subgroup: &[u64], count: usize) -> Result<Self> {
        let mut st = Self::new(modulus, subgroup)?;
        for _ in 0..count {
            st = st.step()?;
        }
        Ok(st)
    }

    pub fn in_subgroup(&self, class: u64) -> bool {
        self.subgroup.binary_search(&class).is_ok()
    }

    pub fn step(&self) -> Result<Self> {
        let alpha = BigInt::from(self.alpha);
        let beta = BigInt::from(self.beta);
        let prod: BigInt = self.chosen.iter().product();
        // P(t) = (alpha t + 1)(alpha beta - 1) prod + alpha
        let k = (&alpha * &beta - 1u32) * prod;
        let lead = &alpha * &k;
        let constant = &k + &alpha;
        let (x, y) = search_order()
            .map(|x| {
                let y = &lead * &x + &constant;
                (x, y)
            })
            .find(|(_, y)| !y.is_zero() && y.abs() != BigInt::one())
            .expect("a linear polynomial with nonzero slope takes nonunit values");
        let factorization = factor(&RingElement::Integer(y.clone()))?;
        let selected = factorization
            .factors
            .iter()
            .filter_map(|(f, _)| f.as_integer())
            .find(|g| !self.in_subgroup(class_of(g, self.modulus)))
            .cloned()
            .ok_or_else(|| {
                Error::InvariantViolation(format!("every prime factor of {y} lies in H"))
            })?;
        let class = class_of(&selected, self.modulus);
        let g = RingElement::Integer(selected.clone());
        let mut certificates = vec![
            bezout(&g, &RingElement::int(self.modulus))?,
            bezout(&g, &RingElement::Integer(alpha))?,
        ];
        let earlier: Vec<RingElement> = self
            .chosen
            .iter()
            .cloned()
            .map(RingElement::Integer)
            .collect();
        certificates.extend(pair_certificates(&earlier, &g)?);

        let mut next = self.clone();
        next.chosen.push(selected.clone());
        next.transcript.push(PollackStep {
            lead,
            constant,
            x,
            y,
            factorization,
            selected,
            class,
            certificates,
        });
        Ok(next)
    }
}

/// A prime produced by [`polyvalue_prime_generator`] with its provenance:
/// `p` divides `value = f(n)` where `n = m * base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyValuePrime {
    #[serde(with = "crate::serde_dec::int")]
    pub p: BigUint,
    #[serde(with = "crate::serde_dec::int")]
    pub n: BigInt,
    #[serde(with = "crate::serde_dec::int")]
    pub value: BigInt,
    pub m: u64,
}

/// Horner evaluation; coefficients constant term first.
pub fn eval_poly(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

const POLYVALUE_MAX_M: u64 = 10_000;

/// A prime outside `known` dividing some value of `f`.
pub fn polyvalue_prime_generator(f: &[BigInt], known: &[BigUint]) -> Result<PolyValuePrime> {
    let mut f = f.to_vec();
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    if f.len() < 2 {
        return Err(Error::InvalidParameters("polynomial must be nonconstant".into()));
    }
    for (i, p) in known.iter().enumerate() {
        if !is_prime(p)? {
            return Err(Error::InvalidPrimeList(format!("{p} is not prime")));
        }
        if known[..i].contains(p) {
            return Err(Error::InvalidPrimeList(format!("{p} listed twice")));
        }
    }
    let f0 = f[0].clone();
    if f0.is_zero() {
        // every prime divides f(0) = 0
        let mut p = BigUint::from(2u32);
        while known.contains(&p) || !is_prime(&p)? {
            p += 1u32;
        }
        return Ok(PolyValuePrime {
            p,
            n: BigInt::zero(),
            value: BigInt::zero(),
            m: 0,
        });
    }
    let f0_fac = factor(&RingElement::Integer(f0.clone()))?;
    let mut base = BigInt::one();
    let mut excluded: Vec<BigUint> = Vec::new();
    for (p, a) in &f0_fac.factors {
        let p = p.as_integer().expect("integer factor");
        base *= p.pow(a + 1);
        excluded.push(p.to_biguint().expect("positive"));
    }
    for q in known {
        if !(&f0 % BigInt::from(q.clone())).is_zero() {
            base *= BigInt::from(q.clone());
            excluded.push(q.clone());
        }
    }
    for m in 1..=POLYVALUE_MAX_M {
        let n = &base * m;
        let value = eval_poly(&f, &n);
        if value.is_zero() || value.abs().is_one() {
            continue;
        }
        let fac = factor(&RingElement::Integer(value.clone()))?;
        let found = fac
            .factors
            .iter()
            .filter_map(|(p, _)| p.as_integer()?.to_biguint())
            .find(|p| !excluded.contains(p));
        if let Some(p) = found {
            return Ok(PolyValuePrime { p, n, value, m });
        }
    }
    Err(Error::InvariantViolation(format!(
        "no new prime divisor of f(M * {base}) for M <= {POLYVALUE_MAX_M}"
    )))
}

/// Feeds each emitted prime back into the known list.
pub fn polyvalue_primes(f: &[BigInt], count: usize) -> Result<Vec<PolyValuePrime>> {
    let mut known: Vec<BigUint> = Vec::new();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let r = polyvalue_prime_generator(f, &known)?;
        known.push(r.p.clone());
        out.push(r);
    }
    Ok(out)
}
