//! The domain contract shared by every module: exact elements of the
//! supported rings, unit tests, canonical associates, Bézout certificates,
//! factorizations and Condition (E) witnesses.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{gf, Fe};
use crate::rings::gaussian::{factor_gaussian, Gaussian};
use crate::rings::integer::{factor_natural, FactorConfig};
use crate::rings::poly::{factor_monic, FqPoly};
use crate::rings::{RingDescriptor, TruncatedElement};

/// An exact element of one of the supported rings.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RingElement {
    Integer(BigInt),
    Gaussian(Gaussian),
    Poly(FqPoly),
    Truncated(TruncatedElement),
}

impl RingElement {
    pub fn int(n: impl Into<BigInt>) -> Self {
        RingElement::Integer(n.into())
    }

    pub fn gaussian(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        RingElement::Gaussian(Gaussian::new(re, im))
    }

    /// A polynomial over `F_q` from field codes, constant term first.
    pub fn poly(q: u16, coeffs: &[Fe]) -> Self {
        RingElement::Poly(FqPoly::new(q, coeffs.to_vec()))
    }

    pub fn ring(&self) -> RingDescriptor {
        match self {
            RingElement::Integer(_) => RingDescriptor::Integers,
            RingElement::Gaussian(_) => RingDescriptor::GaussianIntegers,
            RingElement::Poly(p) => RingDescriptor::PolyOverFq { q: p.q() },
            RingElement::Truncated(t) => RingDescriptor::Truncated(t.spec()),
        }
    }

    pub fn zero(ring: RingDescriptor) -> Self {
        match ring {
            RingDescriptor::Integers => Self::int(0),
            RingDescriptor::GaussianIntegers => RingElement::Gaussian(Gaussian::zero()),
            RingDescriptor::PolyOverFq { q } => RingElement::Poly(FqPoly::zero(q)),
            RingDescriptor::Truncated(s) => RingElement::Truncated(TruncatedElement::zero(s)),
        }
    }

    pub fn one(ring: RingDescriptor) -> Self {
        match ring {
            RingDescriptor::Integers => Self::int(1),
            RingDescriptor::GaussianIntegers => RingElement::Gaussian(Gaussian::one()),
            RingDescriptor::PolyOverFq { q } => RingElement::Poly(FqPoly::one(q)),
            RingDescriptor::Truncated(s) => RingElement::Truncated(TruncatedElement::one(s)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Integer(n) => n.is_zero(),
            RingElement::Gaussian(g) => g.is_zero(),
            RingElement::Poly(p) => p.is_zero(),
            RingElement::Truncated(t) => t.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.ring())
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::RingMismatch {
            left: self.ring().to_string(),
            right: other.ring().to_string(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        use RingElement::*;
        Ok(match (self, other) {
            (Integer(a), Integer(b)) => Integer(a + b),
            (Gaussian(a), Gaussian(b)) => Gaussian(a.add(b)),
            (Poly(a), Poly(b)) if a.q() == b.q() => Poly(a.add(b)),
            (Truncated(a), Truncated(b)) if a.spec() == b.spec() => Truncated(a.add(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        use RingElement::*;
        match self {
            Integer(a) => Integer(-a),
            Gaussian(a) => Gaussian(a.neg()),
            Poly(a) => Poly(a.neg()),
            Truncated(a) => Truncated(a.neg()),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        use RingElement::*;
        Ok(match (self, other) {
            (Integer(a), Integer(b)) => Integer(a * b),
            (Gaussian(a), Gaussian(b)) => Gaussian(a.mul(b)),
            (Poly(a), Poly(b)) if a.q() == b.q() => Poly(a.mul(b)),
            (Truncated(a), Truncated(b)) if a.spec() == b.spec() => Truncated(a.mul(b)),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ring());
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Product of a list of elements of `ring` (one for the empty list).
    pub fn product<'a>(
        ring: RingDescriptor,
        items: impl IntoIterator<Item = &'a RingElement>,
    ) -> Result<Self> {
        items
            .into_iter()
            .try_fold(Self::one(ring), |acc, x| acc.mul(x))
    }

    /// Exact quotient `self / d` in the Euclidean rings.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>> {
        use RingElement::*;
        if d.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(match (self, d) {
            (Integer(a), Integer(b)) => {
                let (q, r) = num_integer::Integer::div_rem(a, b);
                r.is_zero().then_some(Integer(q))
            }
            (Gaussian(a), Gaussian(b)) => a.exact_div(b).map(Gaussian),
            (Poly(a), Poly(b)) if a.q() == b.q() => a.exact_div(b).map(Poly),
            (Truncated(a), Truncated(b)) if a.spec() == b.spec() => {
                a.divided_by(b)?.map(Truncated)
            }
            _ => return Err(self.mismatch(d)),
        })
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            RingElement::Integer(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_truncated(&self) -> Option<&TruncatedElement> {
        match self {
            RingElement::Truncated(t) => Some(t),
            _ => None,
        }
    }
}

impl From<BigInt> for RingElement {
    fn from(n: BigInt) -> Self {
        RingElement::Integer(n)
    }
}

impl From<Gaussian> for RingElement {
    fn from(g: Gaussian) -> Self {
        RingElement::Gaussian(g)
    }
}

impl From<FqPoly> for RingElement {
    fn from(p: FqPoly) -> Self {
        RingElement::Poly(p)
    }
}

impl From<TruncatedElement> for RingElement {
    fn from(t: TruncatedElement) -> Self {
        RingElement::Truncated(t)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Integer(n) => write!(f, "{n}"),
            RingElement::Gaussian(g) => write!(f, "{g}"),
            RingElement::Poly(p) => write!(f, "{p}"),
            RingElement::Truncated(t) => write!(f, "{t}"),
        }
    }
}

fn variant_rank(x: &RingElement) -> u8 {
    match x {
        RingElement::Integer(_) => 0,
        RingElement::Gaussian(_) => 1,
        RingElement::Poly(_) => 2,
        RingElement::Truncated(_) => 3,
    }
}

impl Ord for RingElement {
    /// The canonical order: integers by magnitude (then sign), Gaussian
    /// integers by norm then `(re, im)`, polynomials by degree then
    /// coefficients from the top, truncated elements by enumeration index.
    fn cmp(&self, other: &Self) -> Ordering {
        use RingElement::*;
        match (self, other) {
            (Integer(a), Integer(b)) => a.abs().cmp(&b.abs()).then_with(|| a.cmp(b)),
            (Gaussian(a), Gaussian(b)) => a.cmp(b),
            (Poly(a), Poly(b)) => a.cmp(b),
            (Truncated(a), Truncated(b)) => a
                .spec()
                .n
                .cmp(&b.spec().n)
                .then_with(|| a.index().cmp(&b.index())),
            _ => variant_rank(self).cmp(&variant_rank(other)),
        }
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Serialize, Deserialize)]
struct WireElement {
    ring: RingDescriptor,
    payload: Value,
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let payload = match self {
            RingElement::Integer(n) => Value::String(n.to_string()),
            RingElement::Gaussian(g) => Value::Array(vec![
                Value::String(g.re.to_string()),
                Value::String(g.im.to_string()),
            ]),
            RingElement::Poly(p) => p.coeffs().iter().map(|&c| Value::from(c)).collect(),
            RingElement::Truncated(t) => t.coeffs().iter().map(|&c| Value::from(c)).collect(),
        };
        WireElement {
            ring: self.ring(),
            payload,
        }
        .serialize(s)
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::InvalidElement(format!("not an integer: {s:?}"))),
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::InvalidElement(format!("not an integer: {n}"))),
        other => Err(Error::InvalidElement(format!("not an integer: {other}"))),
    }
}

fn parse_codes(v: &Value, order: u16) -> Result<Vec<Fe>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidElement("expected a coefficient array".into()))?;
    arr.iter()
        .map(|c| {
            c.as_u64()
                .filter(|&c| c < order as u64)
                .map(|c| c as Fe)
                .ok_or_else(|| Error::InvalidElement(format!("bad field code {c} for F_{order}")))
        })
        .collect()
}

impl RingElement {
    /// Decodes the `{"ring": ..., "payload": ...}` wire form.
    pub fn from_json(v: &Value) -> Result<Self> {
        let wire: WireElement = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidElement(e.to_string()))?;
        Self::from_wire(wire)
    }

    fn from_wire(wire: WireElement) -> Result<Self> {
        Ok(match wire.ring {
            RingDescriptor::Integers => RingElement::Integer(parse_int(&wire.payload)?),
            RingDescriptor::GaussianIntegers => {
                let arr = wire
                    .payload
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::InvalidElement("expected [re, im]".into()))?;
                RingElement::Gaussian(Gaussian::new(parse_int(&arr[0])?, parse_int(&arr[1])?))
            }
            RingDescriptor::PolyOverFq { q } => {
                let codes = parse_codes(&wire.payload, q)?;
                if codes.last() == Some(&0) {
                    return Err(Error::InvalidElement("polynomial has trailing zeros".into()));
                }
                RingElement::Poly(FqPoly::new(q, codes))
            }
            RingDescriptor::Truncated(spec) => {
                let codes = parse_codes(&wire.payload, spec.big_order())?;
                RingElement::Truncated(TruncatedElement::new(spec, codes)?)
            }
        })
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = WireElement::deserialize(d)?;
        Self::from_wire(wire).map_err(serde::de::Error::custom)
    }
}

impl Serialize for TruncatedElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingElement::Truncated(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RingElement::deserialize(d)? {
            RingElement::Truncated(t) => Ok(t),
            other => Err(serde::de::Error::custom(format!(
                "expected a truncated element, found ring {}",
                other.ring()
            ))),
        }
    }
}

/// Whether `x` has a multiplicative inverse in its ring.
pub fn is_unit(x: &RingElement) -> bool {
    match x {
        RingElement::Integer(n) => n.abs().is_one(),
        RingElement::Gaussian(g) => g.is_unit(),
        RingElement::Poly(p) => p.degree() == Some(0),
        RingElement::Truncated(t) => t.is_unit(),
    }
}

/// Inverse of a unit, `None` for nonunits.
pub fn unit_inverse(x: &RingElement) -> Option<RingElement> {
    if !is_unit(x) {
        return None;
    }
    Some(match x {
        RingElement::Integer(n) => RingElement::Integer(n.clone()),
        RingElement::Gaussian(g) => RingElement::Gaussian(g.unit_inverse()?),
        RingElement::Poly(p) => {
            RingElement::Poly(FqPoly::constant(p.q(), p.field().inv(p.lead())?))
        }
        RingElement::Truncated(t) => RingElement::Truncated(t.inverse()?),
    })
}

/// All units of a Euclidean ring with finitely many units.
pub fn unit_group(ring: RingDescriptor) -> Result<Vec<RingElement>> {
    Ok(match ring {
        RingDescriptor::Integers => vec![RingElement::int(1), RingElement::int(-1)],
        RingDescriptor::GaussianIntegers => Gaussian::units()
            .into_iter()
            .map(RingElement::Gaussian)
            .collect(),
        RingDescriptor::PolyOverFq { q } => (1..q)
            .map(|c| RingElement::Poly(FqPoly::constant(q, c)))
            .collect(),
        RingDescriptor::Truncated(_) => {
            return Err(Error::UnsupportedRing {
                ring: ring.to_string(),
            })
        }
    })
}

/// `x = u * canonical` with `u` a unit and `canonical` the fixed
/// representative of the associate class.
pub fn canonical_associate(x: &RingElement) -> Result<(RingElement, RingElement)> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(match x {
        RingElement::Integer(n) => {
            let u = if n.sign() == Sign::Minus { -1 } else { 1 };
            (RingElement::int(u), RingElement::Integer(n.abs()))
        }
        RingElement::Gaussian(g) => {
            let (u, c) = g.canonical();
            (RingElement::Gaussian(u), RingElement::Gaussian(c))
        }
        RingElement::Poly(p) => {
            let (lead, monic) = p.monic_parts();
            (
                RingElement::Poly(FqPoly::constant(p.q(), lead)),
                RingElement::Poly(monic),
            )
        }
        RingElement::Truncated(t) => {
            let (u, c) = t.canonical_associate()?;
            (RingElement::Truncated(u), RingElement::Truncated(c))
        }
    })
}

/// Witness `u a + v b = 1` that `a` and `b` are comaximal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutCertificate {
    pub a: RingElement,
    pub b: RingElement,
    pub u: RingElement,
    pub v: RingElement,
}

impl BezoutCertificate {
    /// Evaluates `u a + v b` and compares it with one.
    pub fn verify(&self) -> bool {
        let lhs = self
            .u
            .mul(&self.a)
            .and_then(|ua| self.v.mul(&self.b).and_then(|vb| ua.add(&vb)));
        matches!(lhs, Ok(one) if one.is_one())
    }
}

/// Extended Euclidean algorithm; fails unless the gcd is a unit.
pub fn bezout(a: &RingElement, b: &RingElement) -> Result<BezoutCertificate> {
    if a.ring() != b.ring() {
        return Err(a.mismatch(b));
    }
    let ring = a.ring();
    if !ring.is_euclidean() {
        return Err(Error::UnsupportedRing {
            ring: ring.to_string(),
        });
    }
    let (g, u, v) = match (a, b) {
        (RingElement::Integer(x), RingElement::Integer(y)) => {
            let (g, u, v) = ext_gcd_int(x, y);
            (RingElement::Integer(g), RingElement::Integer(u), RingElement::Integer(v))
        }
        (RingElement::Gaussian(x), RingElement::Gaussian(y)) => {
            let (g, u, v) = ext_gcd_gaussian(x, y);
            (RingElement::Gaussian(g), RingElement::Gaussian(u), RingElement::Gaussian(v))
        }
        (RingElement::Poly(x), RingElement::Poly(y)) => {
            let (g, u, v) = x.ext_gcd(y);
            (RingElement::Poly(g), RingElement::Poly(u), RingElement::Poly(v))
        }
        _ => unreachable!("rings checked above"),
    };
    let g_inv = unit_inverse(&g).ok_or_else(|| Error::NotComaximal { gcd: g.to_string() })?;
    let cert = BezoutCertificate {
        a: a.clone(),
        b: b.clone(),
        u: u.mul(&g_inv)?,
        v: v.mul(&g_inv)?,
    };
    debug_assert!(cert.verify());
    Ok(cert)
}

fn ext_gcd_int(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        let s = &s0 - &q * &s1;
        let t = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

fn ext_gcd_gaussian(a: &Gaussian, b: &Gaussian) -> (Gaussian, Gaussian, Gaussian) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Gaussian::one(), Gaussian::zero());
    let (mut t0, mut t1) = (Gaussian::zero(), Gaussian::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

/// A unit times a multiset of canonical irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: RingElement,
    pub factors: Vec<(RingElement, u32)>,
}

impl Factorization {
    /// `unit * prod factor^multiplicity`.
    pub fn replay(&self) -> Result<RingElement> {
        self.factors
            .iter()
            .try_fold(self.unit.clone(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    /// Structural checks that need no factoring: the unit is a unit, every
    /// factor is a canonical nonunit, multiplicities are positive, and the
    /// product replays to `x`.
    pub fn verify_against(&self, x: &RingElement) -> bool {
        is_unit(&self.unit)
            && self.factors.iter().all(|(f, m)| {
                *m > 0
                    && !is_unit(f)
                    && !f.is_zero()
                    && canonical_associate(f).map(|(_, c)| c == *f).unwrap_or(false)
            })
            && matches!(self.replay(), Ok(ref y) if y == x)
    }

    pub fn least_factor(&self) -> Option<&RingElement> {
        self.factors.first().map(|(f, _)| f)
    }
}

/// Factors with the default trial-division bound.
pub fn factor(x: &RingElement) -> Result<Factorization> {
    factor_with(x, &FactorConfig::default())
}

pub fn factor_with(x: &RingElement, cfg: &FactorConfig) -> Result<Factorization> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let fac = match x {
        RingElement::Integer(n) => {
            let unit = RingElement::int(if n.is_negative() { -1 } else { 1 });
            let mag = n.abs().to_biguint().expect("nonnegative");
            let factors = factor_natural(&mag, cfg)?
                .into_iter()
                .map(|(p, m)| (RingElement::Integer(BigInt::from(p)), m))
                .collect();
            Factorization { unit, factors }
        }
        RingElement::Gaussian(g) => {
            let (u, fs) = factor_gaussian(g, cfg)?;
            Factorization {
                unit: RingElement::Gaussian(u),
                factors: fs.into_iter().map(|(f, m)| (RingElement::Gaussian(f), m)).collect(),
            }
        }
        RingElement::Poly(p) => {
            let (lead, monic) = p.monic_parts();
            let factors = if monic.is_one() {
                vec![]
            } else {
                factor_monic(&monic)
                    .into_iter()
                    .map(|(f, m)| (RingElement::Poly(f), m))
                    .collect()
            };
            Factorization {
                unit: RingElement::Poly(FqPoly::constant(p.q(), lead)),
                factors,
            }
        }
        RingElement::Truncated(_) => {
            return Err(Error::UnsupportedRing {
                ring: x.ring().to_string(),
            })
        }
    };
    debug_assert_eq!(fac.replay().as_ref(), Ok(x));
    Ok(fac)
}

/// The canonically least irreducible divisor of a nonzero nonunit.
pub fn irreducible_divisor(x: &RingElement) -> Result<RingElement> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if is_unit(x) {
        return Err(Error::IsUnit);
    }
    match x {
        RingElement::Truncated(t) => {
            let spec = t.spec();
            let v = t.valuation()?;
            if v < 2 * spec.e as usize {
                Ok(RingElement::Truncated(t.canonical_associate()?.1))
            } else {
                Ok(RingElement::Truncated(TruncatedElement::t_pow(spec, spec.e as usize)?))
            }
        }
        _ => factor(x)?
            .factors
            .into_iter()
            .next()
            .map(|(f, _)| f)
            .ok_or_else(|| Error::InvariantViolation(format!("nonunit {x} has no factors"))),
    }
}

/// Witness `y` with `y x + 1` a nonunit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionEWitness {
    pub x: RingElement,
    pub y: RingElement,
    pub value: RingElement,
}

impl ConditionEWitness {
    pub fn verify(&self) -> bool {
        let recomputed = self
            .y
            .mul(&self.x)
            .and_then(|yx| yx.add(&RingElement::one(self.x.ring())));
        !self.x.is_zero()
            && matches!(recomputed, Ok(ref v) if *v == self.value)
            && !is_unit(&self.value)
    }
}

/// `y = sign(x)` over `Z`, `y = conj(x)` over `Z[i]`, `y = t` over `F_q[t]`.
pub fn condition_e_witness(x: &RingElement) -> Result<ConditionEWitness> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let y = match x {
        RingElement::Integer(n) => RingElement::int(if n.is_positive() { 1 } else { -1 }),
        RingElement::Gaussian(g) => RingElement::Gaussian(g.conj()),
        RingElement::Poly(p) => RingElement::Poly(FqPoly::t(p.q())),
        RingElement::Truncated(_) => {
            return Err(Error::UnsupportedRing {
                ring: x.ring().to_string(),
            })
        }
    };
    let value = y.mul(x)?.add(&RingElement::one(x.ring()))?;
    let w = ConditionEWitness {
        x: x.clone(),
        y,
        value,
    };
    if !w.verify() {
        return Err(Error::InvariantViolation(format!(
            "Condition (E) witness for {x} produced unit {}",
            w.value
        )));
    }
    Ok(w)
}

/// The canonically least irreducible: `2`, `1+i`, `t`, or `t^e`.
pub fn least_irreducible(ring: RingDescriptor) -> RingElement {
    match ring {
        RingDescriptor::Integers => RingElement::int(2),
        RingDescriptor::GaussianIntegers => RingElement::gaussian(1, 1),
        RingDescriptor::PolyOverFq { q } => RingElement::Poly(FqPoly::t(q)),
        RingDescriptor::Truncated(s) => RingElement::Truncated(
            TruncatedElement::t_pow(s, s.e as usize).expect("t^e lies in the ring"),
        ),
    }
}

/// The canonically least nonzero nonunit, which is also the least
/// irreducible in every supported ring.
pub fn least_nonzero_nonunit(ring: RingDescriptor) -> RingElement {
    least_irreducible(ring)
}

/// The variable `t` of `F_q[t]` as a field element code vector helper.
pub fn field_element_count(ring: RingDescriptor) -> Option<u16> {
    match ring {
        RingDescriptor::PolyOverFq { q } => Some(gf(q).order()),
        RingDescriptor::Truncated(s) => Some(s.big_order()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::TruncatedSpec;

    fn trunc(q: u16, d: u8, e: u8, n: u8, terms: &[(usize, Fe)]) -> RingElement {
        let s = TruncatedSpec::new(q, d, e, n).unwrap();
        RingElement::Truncated(TruncatedElement::from_terms(s, terms).unwrap())
    }

    #[test]
    fn unit_examples() {
        assert!(is_unit(&RingElement::int(-1)));
        assert!(!is_unit(&RingElement::int(2)));
        assert!(is_unit(&RingElement::gaussian(0, 1)));
        assert!(is_unit(&trunc(2, 1, 2, 6, &[(0, 1), (2, 1)])));
        assert!(!is_unit(&trunc(2, 1, 2, 6, &[(2, 1)])));
        assert!(is_unit(&RingElement::poly(3, &[2])));
        assert!(!is_unit(&RingElement::poly(3, &[0, 1])));
    }

    #[test]
    fn canonical_associate_examples() {
        let (u, c) = canonical_associate(&RingElement::int(-6)).unwrap();
        assert_eq!((u, c), (RingElement::int(-1), RingElement::int(6)));
        let (u, c) = canonical_associate(&RingElement::gaussian(-3, 0)).unwrap();
        assert_eq!((u, c), (RingElement::gaussian(-1, 0), RingElement::gaussian(3, 0)));
        let x = RingElement::poly(2, &[1, 0, 1]);
        let (u, c) = canonical_associate(&x).unwrap();
        assert_eq!((u, c), (RingElement::poly(2, &[1]), x));
        assert_eq!(
            canonical_associate(&RingElement::int(0)),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn bezout_examples() {
        let c = bezout(&RingElement::int(2), &RingElement::int(3)).unwrap();
        assert_eq!((c.u.clone(), c.v.clone()), (RingElement::int(-1), RingElement::int(1)));
        assert!(c.verify());
        assert!(matches!(
            bezout(&RingElement::int(4), &RingElement::int(6)),
            Err(Error::NotComaximal { .. })
        ));
        let c = bezout(&RingElement::poly(2, &[0, 1]), &RingElement::poly(2, &[1, 1])).unwrap();
        assert_eq!((c.u.clone(), c.v.clone()), (RingElement::poly(2, &[1]), RingElement::poly(2, &[1])));
        let t = trunc(2, 1, 2, 6, &[(2, 1)]);
        assert!(matches!(bezout(&t, &t), Err(Error::UnsupportedRing { .. })));
        let c = bezout(&RingElement::gaussian(1, 1), &RingElement::gaussian(3, 0)).unwrap();
        assert!(c.verify());
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut c = bezout(&RingElement::int(7), &RingElement::int(37)).unwrap();
        assert!(c.verify());
        c.u = c.u.add(&RingElement::int(1)).unwrap();
        assert!(!c.verify());
    }

    #[test]
    fn factor_examples() {
        let f = factor(&RingElement::int(1807)).unwrap();
        assert_eq!(f.unit, RingElement::int(1));
        assert_eq!(
            f.factors,
            vec![(RingElement::int(13), 1), (RingElement::int(139), 1)]
        );
        let f = factor(&RingElement::gaussian(2, 0)).unwrap();
        assert_eq!(f.unit, RingElement::gaussian(0, -1));
        assert_eq!(f.factors, vec![(RingElement::gaussian(1, 1), 2)]);
        let f = factor(&RingElement::poly(2, &[1, 0, 1])).unwrap();
        assert_eq!(f.unit, RingElement::poly(2, &[1]));
        assert_eq!(f.factors, vec![(RingElement::poly(2, &[1, 1]), 2)]);
        let f = factor(&RingElement::int(-12)).unwrap();
        assert!(f.verify_against(&RingElement::int(-12)));
        assert_eq!(factor(&RingElement::int(0)), Err(Error::ZeroElement));
    }

    #[test]
    fn irreducible_divisor_examples() {
        assert_eq!(irreducible_divisor(&RingElement::int(1807)).unwrap(), RingElement::int(13));
        assert_eq!(irreducible_divisor(&RingElement::int(-4)).unwrap(), RingElement::int(2));
        assert_eq!(
            irreducible_divisor(&trunc(2, 1, 2, 6, &[(4, 1)])).unwrap(),
            trunc(2, 1, 2, 6, &[(2, 1)])
        );
        assert_eq!(irreducible_divisor(&RingElement::int(-1)), Err(Error::IsUnit));
        assert_eq!(irreducible_divisor(&RingElement::int(0)), Err(Error::ZeroElement));
    }

    #[test]
    fn condition_e_examples() {
        let w = condition_e_witness(&RingElement::int(-2)).unwrap();
        assert_eq!((w.y.clone(), w.value.clone()), (RingElement::int(-1), RingElement::int(3)));
        let w = condition_e_witness(&RingElement::gaussian(0, 1)).unwrap();
        assert_eq!((w.y.clone(), w.value.clone()), (RingElement::gaussian(0, -1), RingElement::gaussian(2, 0)));
        let w = condition_e_witness(&RingElement::poly(3, &[2])).unwrap();
        assert_eq!(w.y, RingElement::poly(3, &[0, 1]));
        assert_eq!(w.value, RingElement::poly(3, &[1, 2]));
        assert!(matches!(
            condition_e_witness(&trunc(2, 1, 2, 6, &[(2, 1)])),
            Err(Error::UnsupportedRing { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let xs = vec![
            RingElement::int(-123456789),
            RingElement::gaussian(3, -4),
            RingElement::poly(4, &[1, 2, 3]),
            trunc(2, 2, 2, 6, &[(0, 1), (2, 3)]),
        ];
        for x in xs {
            let s = serde_json::to_string(&x).unwrap();
            let y: RingElement = serde_json::from_str(&s).unwrap();
            assert_eq!(x, y);
        }
        let s = serde_json::to_string(&RingElement::int(5)).unwrap();
        assert_eq!(s, r#"{"ring":"z","payload":"5"}"#);
        assert!(serde_json::from_str::<RingElement>(
            r#"{"ring":"trunc:2:1:2:6","payload":[1,1,0,0,0,0]}"#
        )
        .is_err());
    }
}
