//! Truncated models of the local rings `F_q + t^e F_{q^d}[[t]]`.
//!
//! Elements are coefficient vectors of length `N` (arithmetic modulo `t^N`).
//! Every slot holds a code of `F_{q^d}`; slot 0 must lie in the subfield
//! `F_q`, and slots `1..e` are identically zero.
//!
//! Elements are enumerated in increasing order of their mixed-radix index,
//! where slot 0 is the least significant digit and slot `N-1` the most
//! significant. Equivalently: lexicographic order on the coefficient vector
//! read from the highest slot down. The least nonzero element of the maximal
//! ideal is therefore `t^e`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gf, Fe, FiniteField};

/// Largest number of elements any enumeration may visit unless overridden.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Enumeration budget; `ATOMFORGE_BUDGET` overrides the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn from_env() -> Self {
        std::env::var("ATOMFORGE_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }
}

/// Parameters `(q, d, e, N)` of a truncated subring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSpec {
    pub q: u16,
    pub d: u8,
    pub e: u8,
    pub n: u8,
}

pub const SUPPORTED_Q: [u16; 7] = [2, 3, 4, 5, 7, 8, 9];

impl TruncatedSpec {
    pub fn new(q: u16, d: u8, e: u8, n: u8) -> Result<Self> {
        let spec = TruncatedSpec { q, d, e, n };
        spec.validate()?;
        Ok(spec)
    }

    /// Default truncation order `N = 3e`.
    pub fn with_default_order(q: u16, d: u8, e: u8) -> Result<Self> {
        Self::new(q, d, e, 3 * e)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDescriptor(m));
        if !SUPPORTED_Q.contains(&self.q) {
            return bad(format!("q = {} is not in {{2,3,4,5,7,8,9}}", self.q));
        }
        if !(1..=3).contains(&self.d) {
            return bad(format!("d = {} must be in 1..=3", self.d));
        }
        if !(1..=4).contains(&self.e) {
            return bad(format!("e = {} must be in 1..=4", self.e));
        }
        if (self.n as u32) < 3 * self.e as u32 {
            return bad(format!("N = {} must be at least 3e = {}", self.n, 3 * self.e));
        }
        if self.n > 64 {
            return bad(format!("N = {} exceeds 64", self.n));
        }
        Ok(())
    }

    /// The same ring truncated at a different order.
    pub fn with_order(&self, n: u8) -> Result<Self> {
        Self::new(self.q, self.d, self.e, n)
    }

    /// Order of the coefficient field `F_{q^d}` used above slot `e`.
    pub fn big_order(&self) -> u16 {
        self.q.pow(self.d as u32)
    }

    pub fn field(&self) -> &'static FiniteField {
        gf(self.big_order())
    }

    /// Codes of the subfield `F_q` inside `F_{q^d}`, ascending.
    pub fn base_field(&self) -> Vec<Fe> {
        self.field().subfield(self.q)
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `q * (q^d)^(N-e)`.
    pub fn cardinality(&self) -> u128 {
        (self.q as u128) * (self.big_order() as u128).pow((self.n - self.e) as u32)
    }

    pub fn unit_count(&self) -> u128 {
        (self.q as u128 - 1) * (self.big_order() as u128).pow((self.n - self.e) as u32)
    }

    pub fn check_budget(&self, budget: Budget) -> Result<()> {
        let required = self.cardinality();
        if required > budget.0 as u128 {
            return Err(Error::BudgetExceeded {
                required,
                budget: budget.0,
            });
        }
        Ok(())
    }

    /// Closed-form irreducible-orbit count `e (q^d - 1)/(q - 1) q^(d(e-1))`.
    pub fn predicted_atoms(&self) -> u128 {
        let qd = self.big_order() as u128;
        let q = self.q as u128;
        self.e as u128 * ((qd - 1) / (q - 1)) * qd.pow(self.e as u32 - 1)
    }
}

impl fmt::Display for TruncatedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trunc:{}:{}:{}:{}", self.q, self.d, self.e, self.n)
    }
}

/// An element of a truncated subring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncatedElement {
    spec: TruncatedSpec,
    coeffs: Vec<Fe>,
}

impl TruncatedElement {
    /// Validates the coefficient constraints.
    pub fn new(spec: TruncatedSpec, coeffs: Vec<Fe>) -> Result<Self> {
        if coeffs.len() != spec.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coefficients, got {}",
                spec.len(),
                coeffs.len()
            )));
        }
        let field = spec.field();
        if let Some(&c) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::InvalidElement(format!(
                "coefficient code {c} is outside F_{}",
                field.order()
            )));
        }
        if !field.in_subfield(coeffs[0], spec.q) {
            return Err(Error::InvalidElement(format!(
                "constant coefficient {} is not in F_{}",
                coeffs[0], spec.q
            )));
        }
        if let Some(i) = (1..spec.e as usize).find(|&i| coeffs[i] != 0) {
            return Err(Error::InvalidElement(format!(
                "slot {i} must vanish below t^{}",
                spec.e
            )));
        }
        Ok(TruncatedElement { spec, coeffs })
    }

    /// Builds `sum c t^k` from `(k, c)` terms.
    pub fn from_terms(spec: TruncatedSpec, terms: &[(usize, Fe)]) -> Result<Self> {
        let mut coeffs = vec![0; spec.len()];
        let field = spec.field();
        for &(k, c) in terms {
            if k < coeffs.len() {
                coeffs[k] = field.add(coeffs[k], c);
            }
        }
        Self::new(spec, coeffs)
    }

    fn raw(spec: TruncatedSpec, coeffs: Vec<Fe>) -> Self {
        debug_assert!(Self::new(spec, coeffs.clone()).is_ok());
        TruncatedElement { spec, coeffs }
    }

    pub fn zero(spec: TruncatedSpec) -> Self {
        Self::raw(spec, vec![0; spec.len()])
    }

    pub fn one(spec: TruncatedSpec) -> Self {
        let mut v = vec![0; spec.len()];
        v[0] = 1;
        Self::raw(spec, v)
    }

    /// `t^k`, which lies in the ring iff `k = 0` or `k >= e`.
    pub fn t_pow(spec: TruncatedSpec, k: usize) -> Result<Self> {
        Self::from_terms(spec, &[(k, 1)])
    }

    pub fn spec(&self) -> TruncatedSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Least index with a nonzero coefficient.
    pub fn valuation(&self) -> Result<usize> {
        self.coeffs
            .iter()
            .position(|&c| c != 0)
            .ok_or(Error::ZeroElement)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.spec, other.spec, "truncated ring mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let f = self.spec.field();
        let v = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Self::raw(self.spec, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        let f = self.spec.field();
        let v = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Self::raw(self.spec, v)
    }

    pub fn neg(&self) -> Self {
        let f = self.spec.field();
        Self::raw(self.spec, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    /// Product modulo `t^N`.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let f = self.spec.field();
        let n = self.spec.len();
        let mut v = vec![0; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                if b != 0 {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        Self::raw(self.spec, v)
    }

    /// Multiplies every coefficient by a scalar of `F_q`.
    pub fn scale(&self, c: Fe) -> Self {
        debug_assert!(self.spec.field().in_subfield(c, self.spec.q));
        let f = self.spec.field();
        Self::raw(self.spec, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Inverse by coefficient recursion; `None` for nonunits.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let f = self.spec.field();
        let n = self.spec.len();
        let a0_inv = f.inv(self.coeffs[0])?;
        let mut inv = vec![0; n];
        inv[0] = a0_inv;
        for k in 1..n {
            let mut s = 0;
            for j in 1..=k {
                s = f.add(s, f.mul(self.coeffs[j], inv[k - j]));
            }
            inv[k] = f.neg(f.mul(s, a0_inv));
        }
        // the inverse's low-order support mirrors the input's, so it is valid
        Some(Self::raw(self.spec, inv))
    }

    /// Shifts down by `k` slots (division by `t^k`), padding the top with
    /// zeros; `None` if the result leaves the ring or `t^k` does not divide.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs[..k.min(self.spec.len())].iter().any(|&c| c != 0) {
            return None;
        }
        let n = self.spec.len();
        let mut v = vec![0; n];
        if k < n {
            v[..n - k].copy_from_slice(&self.coeffs[k..]);
        }
        Self::new(self.spec, v).ok()
    }

    /// Position of this element in the enumeration order.
    pub fn index(&self) -> u64 {
        let spec = self.spec;
        let qd = spec.big_order() as u64;
        let mut idx = 0u64;
        for i in (spec.e as usize..spec.len()).rev() {
            idx = idx * qd + self.coeffs[i] as u64;
        }
        let base = spec.base_field();
        let digit0 = base
            .iter()
            .position(|&c| c == self.coeffs[0])
            .expect("validated constant term") as u64;
        idx * spec.q as u64 + digit0
    }

    /// Inverse of [`TruncatedElement::index`].
    pub fn from_index(spec: TruncatedSpec, mut idx: u64) -> Self {
        Self::from_index_with_base(spec, &spec.base_field(), &mut idx)
    }

    fn from_index_with_base(spec: TruncatedSpec, base: &[Fe], idx: &mut u64) -> Self {
        let qd = spec.big_order() as u64;
        let mut v = vec![0; spec.len()];
        v[0] = base[(*idx % spec.q as u64) as usize];
        *idx /= spec.q as u64;
        for slot in v.iter_mut().skip(spec.e as usize) {
            *slot = (*idx % qd) as Fe;
            *idx /= qd;
        }
        Self::raw(spec, v)
    }

    /// Canonical associate: `(u, c)` with `self = u * c`, where `c` has its
    /// leading coefficient scaled to the least member of its `F_q^*`-orbit
    /// and every coefficient from slot `v + e` upward cleared by a unit of
    /// the form `1 + O(t^e)`. Two nonzero elements are associate iff their
    /// canonical forms are equal.
    pub fn canonical_associate(&self) -> Result<(Self, Self)> {
        let v = self.valuation()?;
        let spec = self.spec;
        let f = spec.field();
        let n = spec.len();
        let e = spec.e as usize;
        let lead = self.coeffs[v];
        let scalar = spec
            .base_field()
            .into_iter()
            .filter(|&c| c != 0)
            .min_by_key(|&c| f.mul(c, lead))
            .expect("F_q has nonzero elements");

        // w = scalar * (1 + w_e t^e + ...), chosen slot by slot so that
        // (w * self) vanishes at v+e, v+e+1, ...
        let mut w = vec![0; n];
        w[0] = scalar;
        let lead_inv = f.inv(lead).expect("nonzero lead");
        for j in e..n.saturating_sub(v) {
            let mut acc = 0;
            for (i, &wi) in w.iter().enumerate().take(j + 1) {
                if wi != 0 {
                    acc = f.add(acc, f.mul(wi, self.coeffs[v + j - i]));
                }
            }
            // coefficient at v + j is acc; cancel it with w_j * lead
            w[j] = f.sub(w[j], f.mul(acc, lead_inv));
        }
        let w = Self::new(spec, w)?;
        let canon = w.mul(self);
        let u = w.inverse().expect("w is a unit");
        Ok((u, canon))
    }

    /// Exact quotient `c` with `divisor * c = self`, decided in the complete
    /// ring from the truncated data.
    ///
    /// Errors with [`Error::OutsideSoundnessWindow`] when the truncation
    /// cannot determine the answer: `self` is zero modulo `t^N`, or the two
    /// valuations coincide and exceed `N - e`, so the coefficients of the
    /// quotient that decide membership were cut off.
    pub fn divided_by(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check_same(divisor);
        let spec = self.spec;
        let (n, e) = (spec.len(), spec.e as usize);
        let va = self
            .valuation()
            .map_err(|_| Error::OutsideSoundnessWindow("dividend is zero modulo t^N".into()))?;
        let vb = divisor.valuation()?;
        if vb > va {
            return Ok(None);
        }
        let s = va - vb;
        if s > 0 && s < e {
            return Ok(None);
        }
        if s == 0 && va + e > n {
            return Err(Error::OutsideSoundnessWindow(format!(
                "v(a) = v(b) = {va} exceeds N - e = {}",
                n - e
            )));
        }
        let f = spec.field();
        // c = t^s * (a' / b') with a' = a / t^va, b' = b / t^vb
        let len = n - s;
        let b0_inv = f.inv(divisor.coeffs[vb]).expect("nonzero");
        let a_at = |k: usize| if va + k < n { self.coeffs[va + k] } else { 0 };
        let b_at = |k: usize| if vb + k < n { divisor.coeffs[vb + k] } else { 0 };
        let mut quot = vec![0; len];
        for k in 0..len {
            let mut acc = a_at(k);
            for j in 1..=k {
                acc = f.sub(acc, f.mul(b_at(j), quot[k - j]));
            }
            quot[k] = f.mul(acc, b0_inv);
        }
        let mut c = vec![0; n];
        c[s..].copy_from_slice(&quot);
        match Self::new(spec, c) {
            Ok(c) => {
                debug_assert_eq!(divisor.mul(&c), *self);
                Ok(Some(c))
            }
            Err(_) => Ok(None),
        }
    }
}

impl fmt::Display for TruncatedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = if c == 1 && i > 0 {
                String::new()
            } else if i > 0 {
                format!("{c}*")
            } else {
                c.to_string()
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Which elements [`enumerate_elements`] yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementFilter {
    All,
    Units,
    NonunitsNonzero,
}

/// Every element of the ring passing `filter`, in enumeration order.
pub fn enumerate_elements(
    spec: TruncatedSpec,
    filter: ElementFilter,
    budget: Budget,
) -> Result<impl Iterator<Item = TruncatedElement>> {
    spec.check_budget(budget)?;
    let total = spec.cardinality() as u64;
    let base = spec.base_field();
    Ok((0..total)
        .filter(move |idx| {
            let digit0 = idx % spec.q as u64;
            match filter {
                ElementFilter::All => true,
                ElementFilter::Units => digit0 != 0,
                ElementFilter::NonunitsNonzero => digit0 == 0 && *idx != 0,
            }
        })
        .map(move |mut idx| TruncatedElement::from_index_with_base(spec, &base, &mut idx)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(q: u16, d: u8, e: u8, n: u8) -> TruncatedSpec {
        TruncatedSpec::new(q, d, e, n).unwrap()
    }

    #[test]
    fn validation() {
        assert!(TruncatedSpec::new(6, 1, 2, 6).is_err());
        assert!(TruncatedSpec::new(2, 1, 2, 5).is_err());
        assert!(TruncatedSpec::new(2, 4, 2, 6).is_err());
        let s = spec(2, 1, 2, 6);
        assert!(TruncatedElement::new(s, vec![1, 1, 0, 0, 0, 0]).is_err());
        let s4 = spec(2, 2, 2, 6);
        // constant term must be in F_2
        assert!(TruncatedElement::new(s4, vec![2, 0, 0, 0, 0, 0]).is_err());
        assert!(TruncatedElement::new(s4, vec![1, 0, 2, 3, 0, 0]).is_ok());
    }

    #[test]
    fn unit_inverse_by_recursion() {
        let s = spec(2, 1, 2, 6);
        let x = TruncatedElement::from_terms(s, &[(0, 1), (2, 1)]).unwrap();
        let inv = x.inverse().unwrap();
        assert_eq!(
            inv,
            TruncatedElement::from_terms(s, &[(0, 1), (2, 1), (4, 1)]).unwrap()
        );
        assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn valuations() {
        let s = spec(2, 1, 2, 8);
        let a = TruncatedElement::from_terms(s, &[(2, 1), (3, 1)]).unwrap();
        assert_eq!(a.valuation().unwrap(), 2);
        assert_eq!(TruncatedElement::one(s).valuation().unwrap(), 0);
        let t2 = TruncatedElement::t_pow(s, 2).unwrap();
        let t3 = TruncatedElement::t_pow(s, 3).unwrap();
        assert_eq!(t2.mul(&t3).valuation().unwrap(), 5);
        assert_eq!(TruncatedElement::zero(s).valuation(), Err(Error::ZeroElement));
    }

    #[test]
    fn enumeration_counts() {
        let b = Budget::default();
        let s = spec(2, 1, 2, 6);
        assert_eq!(enumerate_elements(s, ElementFilter::All, b).unwrap().count(), 32);
        assert_eq!(enumerate_elements(s, ElementFilter::Units, b).unwrap().count(), 16);
        let s = spec(2, 2, 2, 6);
        assert_eq!(enumerate_elements(s, ElementFilter::All, b).unwrap().count(), 512);
        assert!(matches!(
            enumerate_elements(s, ElementFilter::All, Budget(100)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_is_ordered_and_indexed() {
        let s = spec(3, 1, 2, 6);
        let all: Vec<_> = enumerate_elements(s, ElementFilter::All, Budget::default())
            .unwrap()
            .collect();
        for (i, x) in all.iter().enumerate() {
            assert_eq!(x.index(), i as u64);
            assert_eq!(TruncatedElement::from_index(s, i as u64), *x);
        }
        let first_nonunit = enumerate_elements(s, ElementFilter::NonunitsNonzero, Budget::default())
            .unwrap()
            .next()
            .unwrap();
        assert_eq!(first_nonunit, TruncatedElement::t_pow(s, 2).unwrap());
    }

    #[test]
    fn division_examples() {
        let s = spec(2, 1, 2, 8);
        let t = |k| TruncatedElement::t_pow(s, k).unwrap();
        assert_eq!(t(6).divided_by(&t(2)).unwrap(), Some(t(4)));
        assert_eq!(t(3).divided_by(&t(2)).unwrap(), None);
        assert_eq!(t(3).divided_by(&t(3)).unwrap(), Some(TruncatedElement::one(s)));
        assert!(matches!(
            t(7).divided_by(&t(7)),
            Err(Error::OutsideSoundnessWindow(_))
        ));
    }

    #[test]
    fn canonical_associate_example_values() {
        let s = spec(2, 1, 2, 6);
        let x = TruncatedElement::from_terms(s, &[(2, 1), (4, 1)]).unwrap();
        let (u, c) = x.canonical_associate().unwrap();
        assert_eq!(c, TruncatedElement::t_pow(s, 2).unwrap());
        assert_eq!(u.mul(&c), x);
        let s3 = spec(3, 1, 2, 6);
        let x = TruncatedElement::from_terms(s3, &[(3, 2), (4, 1)]).unwrap();
        let (_, c) = x.canonical_associate().unwrap();
        assert_eq!(c, TruncatedElement::from_terms(s3, &[(3, 1), (4, 2)]).unwrap());
    }
}
