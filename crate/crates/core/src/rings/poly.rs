//! Univariate polynomials over a small finite field `F_q`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{gf, Fe, FiniteField};

/// A polynomial with coefficients in `F_q`, constant term first, with no
/// trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqPoly {
    q: u16,
    coeffs: Vec<Fe>,
}

impl FqPoly {
    pub fn new(q: u16, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { q, coeffs }
    }

    pub fn zero(q: u16) -> Self {
        FqPoly { q, coeffs: vec![] }
    }

    pub fn one(q: u16) -> Self {
        Self::constant(q, 1)
    }

    pub fn constant(q: u16, c: Fe) -> Self {
        Self::new(q, vec![c])
    }

    /// The monomial `c t^k`.
    pub fn monomial(q: u16, c: Fe, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(q, v)
    }

    /// The variable `t`.
    pub fn t(q: u16) -> Self {
        Self::monomial(q, 1, 1)
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn field(&self) -> &'static FiniteField {
        gf(self.q)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field();
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::new(self.q, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field();
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::new(self.q, v)
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Self::new(self.q, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Fe) -> Self {
        let f = self.field();
        Self::new(self.q, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.q);
        }
        let f = self.field();
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Self::new(self.q, v)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let f = self.field();
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(self.q), self.clone());
        }
        let lead_inv = f.inv(divisor.lead()).expect("nonzero lead");
        let mut r = self.coeffs.clone();
        let mut quot = vec![0; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &m) in divisor.coeffs.iter().enumerate() {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, m));
            }
        }
        r.truncate(dd);
        (Self::new(self.q, quot), Self::new(self.q, r))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Exact quotient, if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    /// Splits off the leading coefficient: `self = lead * monic`.
    pub fn monic_parts(&self) -> (Fe, Self) {
        let lead = self.lead();
        let inv = self.field().inv(lead).expect("nonzero polynomial");
        (lead, self.scale(inv))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic_parts().1
        }
    }

    /// Extended Euclid: returns `(g, u, v)` with `u*self + v*other = g`,
    /// where `g` is the last nonzero remainder (not normalized).
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let q = self.q;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(q), Self::zero(q));
        let (mut t0, mut t1) = (Self::zero(q), Self::one(q));
        while !r1.is_zero() {
            let (quot, r) = r0.divrem(&r1);
            let s = s0.sub(&quot.mul(&s1));
            let t = t0.sub(&quot.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn derivative(&self) -> Self {
        let f = self.field();
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Self::new(self.q, v)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.q).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = self.field();
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Irreducibility test (degree at least one and no nontrivial factor).
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let fac = factor_monic(&self.monic_parts().1);
                fac.len() == 1 && fac[0].1 == 1
            }
        }
    }
}

impl Ord for FqPoly {
    /// Degree first, then coefficients compared from the highest power down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.q
            .cmp(&other.q)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
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
        Ok(())
    }
}

/// Complete factorization of a monic polynomial of positive degree into
/// monic irreducibles with multiplicities, sorted in canonical order.
///
/// Square-free decomposition, then distinct-degree splitting, then
/// equal-degree splitting with a fixed-seed random source. The factor set
/// is unique, so the output does not depend on the random choices.
pub fn factor_monic(f: &FqPoly) -> Vec<(FqPoly, u32)> {
    debug_assert!(f.is_monic());
    let mut out: Vec<(FqPoly, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    for (part, mult) in squarefree_decomposition(f) {
        for (g, d) in distinct_degree(&part) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    // merge equal factors coming from different square-free layers
    let mut merged: Vec<(FqPoly, u32)> = Vec::with_capacity(out.len());
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

fn squarefree_decomposition(f: &FqPoly) -> Vec<(FqPoly, u32)> {
    let q = f.q;
    let p = f.field().characteristic() as u32;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
    }
    if !c.is_one() {
        let root = pth_root(&c);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    debug_assert!(out.iter().all(|(g, _)| g.q == q));
    out
}

/// `c` is a polynomial in `t^p`; returns its `p`-th root.
fn pth_root(c: &FqPoly) -> FqPoly {
    let f = c.field();
    let p = f.characteristic() as usize;
    // Frobenius has order `degree` on F_q, so a^(1/p) = a^(p^(degree-1)).
    let root_exp = (p as u64).pow(f.degree() - 1);
    let v = c
        .coeffs
        .iter()
        .step_by(p)
        .map(|&a| f.pow(a, root_exp))
        .collect();
    FqPoly::new(c.q, v)
}

fn distinct_degree(f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let q = f.q;
    let qq = BigUint::from(q);
    let x = FqPoly::t(q);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push((rest.clone(), deg));
            break;
        }
        h = h.powmod(&qq, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    out
}

fn equal_degree(g: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = g.degree().expect("nonzero");
    if n == d {
        return vec![g.clone()];
    }
    let q = g.q;
    let field = g.field();
    let qd = BigUint::from(q).pow(d as u32);
    loop {
        let a = FqPoly::new(q, (0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if field.characteristic() == 2 {
            // absolute trace map to F_2
            let k = field.degree() as usize * d;
            let mut term = a.rem(g);
            let mut acc = term.clone();
            for _ in 1..k {
                term = term.mul(&term).rem(g);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e: BigUint = (&qd - BigUint::one()) >> 1;
            a.powmod(&e, g).sub(&FqPoly::one(q))
        };
        let h = b.gcd(g);
        if let Some(hd) = h.degree() {
            if hd > 0 && hd < n {
                let other = g.exact_div(&h).expect("gcd divides");
                let mut out = equal_degree(&h, d, rng);
                out.extend(equal_degree(&other, d, rng));
                return out;
            }
        }
    }
}

/// All monic irreducible polynomials of degree exactly `d` over `F_q`, in
/// canonical order.
pub fn monic_irreducibles(q: u16, d: usize) -> Vec<FqPoly> {
    all_monic(q, d).filter(FqPoly::is_irreducible).collect()
}

/// Every monic polynomial of degree `d`, in canonical order.
pub fn all_monic(q: u16, d: usize) -> impl Iterator<Item = FqPoly> {
    let count = (q as u64).pow(d as u32);
    (0..count).map(move |mut code| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push((code % q as u64) as Fe);
            code /= q as u64;
        }
        v.push(1);
        FqPoly::new(q, v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(c: &[u16]) -> FqPoly {
        FqPoly::new(2, c.to_vec())
    }

    /// Factorization by exhaustive trial division: the independent oracle.
    fn trial_division(f: &FqPoly) -> Vec<(FqPoly, u32)> {
        let mut rest = f.monic_parts().1;
        let mut out = Vec::new();
        let mut d = 1;
        while rest.degree().unwrap() >= 2 * d {
            for g in all_monic(f.q(), d) {
                let mut m = 0;
                while let Some(r) = rest.exact_div(&g) {
                    rest = r;
                    m += 1;
                }
                if m > 0 {
                    out.push((g, m));
                }
            }
            d += 1;
        }
        if rest.degree().unwrap() > 0 {
            match out.iter_mut().find(|(g, _)| *g == rest) {
                Some((_, m)) => *m += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort();
        out
    }

    #[test]
    fn t_squared_plus_one_over_f2() {
        let f = p2(&[1, 0, 1]);
        assert_eq!(factor_monic(&f), vec![(p2(&[1, 1]), 2)]);
    }

    #[test]
    fn agrees_with_trial_division_small_degrees() {
        for q in [2u16, 3, 4, 5] {
            let max_deg = if q <= 3 { 7 } else { 4 };
            for d in 1..=max_deg {
                for f in all_monic(q, d).take(400) {
                    assert_eq!(factor_monic(&f), trial_division(&f), "q={q} f={f}");
                }
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over F_q
        assert_eq!(monic_irreducibles(2, 1).len(), 2);
        assert_eq!(monic_irreducibles(2, 4).len(), 3);
        assert_eq!(monic_irreducibles(3, 2).len(), 3);
        assert_eq!(monic_irreducibles(4, 2).len(), 6);
        assert_eq!(monic_irreducibles(2, 6).len(), 9);
    }

    #[test]
    fn perfect_powers_in_char_p() {
        // (t^2+t+1)^4 over F_2 and (t+1)^3 over F_3 exercise the p-th root path
        let g = p2(&[1, 1, 1]);
        assert_eq!(factor_monic(&g.pow(4)), vec![(g.clone(), 4)]);
        let h = FqPoly::new(3, vec![1, 1]);
        let f = h.pow(3).mul(&FqPoly::t(3));
        assert_eq!(
            factor_monic(&f),
            vec![(FqPoly::t(3), 1), (h, 3)]
        );
    }

    #[test]
    fn ext_gcd_identity() {
        let a = p2(&[0, 1]);
        let b = p2(&[1, 1]);
        let (g, u, v) = a.ext_gcd(&b);
        assert!(g.is_one());
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }

    #[test]
    fn canonical_order() {
        let a = p2(&[0, 1]); // t
        let b = p2(&[1, 1]); // t+1
        let c = p2(&[1, 0, 1]);
        assert!(a < b && b < c);
    }
}
