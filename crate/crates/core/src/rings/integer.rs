//! Exact factorization of rational integers.
//!
//! Trial division up to a configurable bound, then for each remaining
//! cofactor either a primality proof or a split found by Brent's variant of
//! Pollard rho. Primality is always proven, never guessed: strong-probable-
//! prime tests to the first thirteen prime bases are a proof below
//! 3.317e24, and above that a Pocklington certificate is built from a full
//! factorization of `n - 1`. Anything that cannot be resolved surfaces as
//! [`Error::FactorizationOverflow`].

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Below this bound, strong probable primality to bases 2..=41 is a proof.
const MR13_BOUND: &str = "3317044064679887385961981";
const MR13_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Primes up to this bound are removed by trial division.
    pub trial_bound: u32,
    /// Total rho iterations allowed per composite cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 28,
        }
    }
}

/// Primes up to `bound`, inclusive.
pub fn primes_up_to(bound: u32) -> Vec<u32> {
    let n = bound as usize;
    if n < 2 {
        return vec![];
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn default_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(FactorConfig::default().trial_bound))
}

fn rem_u32(n: &BigUint, p: u32) -> u32 {
    let mut r: u64 = 0;
    for d in n.iter_u32_digits().rev() {
        r = ((r << 32) | d as u64) % p as u64;
    }
    r as u32
}

fn overflow(n: &BigUint) -> Error {
    Error::FactorizationOverflow {
        cofactor: n.to_string(),
    }
}

/// Factors `n >= 1` into primes with multiplicities, ascending.
pub fn factor_natural(n: &BigUint, cfg: &FactorConfig) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let owned;
    let primes: &[u32] = if cfg.trial_bound == FactorConfig::default().trial_bound {
        default_primes()
    } else {
        owned = primes_up_to(cfg.trial_bound);
        &owned
    };

    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    for &p in primes {
        if let Some(small) = rest.to_u64() {
            if (p as u64) * (p as u64) > small {
                break;
            }
        }
        let mut m = 0;
        while rem_u32(&rest, p) == 0 {
            rest /= p;
            m += 1;
        }
        if m > 0 {
            out.push((BigUint::from(p), m));
        }
    }
    if rest.is_one() {
        return Ok(out);
    }
    let bound = BigUint::from(cfg.trial_bound);
    if rest <= &bound * &bound {
        out.push((rest, 1));
        return Ok(out);
    }

    let mut found: Vec<BigUint> = Vec::new();
    let mut work = vec![rest];
    while let Some(c) = work.pop() {
        if is_proven_prime(&c, cfg)? {
            found.push(c);
        } else if let Some((root, k)) = perfect_power(&c, cfg.trial_bound) {
            work.extend(std::iter::repeat_n(root, k as usize));
        } else {
            let d = rho_split(&c, cfg.rho_iterations).ok_or_else(|| overflow(&c))?;
            let e = &c / &d;
            work.push(d);
            work.push(e);
        }
    }
    found.sort();
    for p in found {
        match out.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// `n = root^k` with `k >= 2` maximal among exponents that can occur once
/// every prime below `trial_bound` has been removed.
fn perfect_power(n: &BigUint, trial_bound: u32) -> Option<(BigUint, u32)> {
    let min_bits = (32 - trial_bound.max(2).leading_zeros()) as u64;
    let max_k = (n.bits() / min_bits.max(1)).max(2) as u32;
    (2..=max_k).rev().find_map(|k| {
        let r = n.nth_root(k);
        (r.pow(k) == *n).then_some((r, k))
    })
}

/// Proven primality for `n` with no prime factor up to the trial bound.
fn is_proven_prime(n: &BigUint, cfg: &FactorConfig) -> Result<bool> {
    if !MR13_BASES.iter().all(|&b| strong_probable_prime(n, b)) {
        return Ok(false);
    }
    let bound: BigUint = MR13_BOUND.parse().expect("constant");
    if *n < bound {
        return Ok(true);
    }
    pocklington(n, cfg)
}

/// Deterministic primality test for arbitrary `n`; errors when `n` is too
/// large for a proof to be completed.
pub fn is_prime(n: &BigUint) -> Result<bool> {
    if *n < BigUint::from(2u32) {
        return Ok(false);
    }
    if let Some(small) = n.to_u64() {
        if small < 1_000_000 * 1_000_000 {
            return Ok(trial_is_prime(small));
        }
    }
    for &p in default_primes().iter().take(1000) {
        if rem_u32(n, p) == 0 {
            return Ok(*n == BigUint::from(p));
        }
    }
    is_proven_prime(n, &FactorConfig::default())
}

fn trial_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in default_primes() {
        let p = p as u64;
        if p * p > n {
            return true;
        }
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    true
}

/// Strong probable-prime test to base `b` for odd `n > b`.
fn strong_probable_prime(n: &BigUint, b: u32) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let base = BigUint::from(b) % n;
    if base.is_zero() {
        return true;
    }
    let mut x = base.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Pocklington certificate: `n - 1` is factored completely and for every
/// prime `r | n - 1` a base `a` satisfies `a^(n-1) = 1` and
/// `gcd(a^((n-1)/r) - 1, n) = 1`.
fn pocklington(n: &BigUint, cfg: &FactorConfig) -> Result<bool> {
    let one = BigUint::one();
    let n1 = n - &one;
    let factors = factor_natural(&n1, cfg)?;
    for (r, _) in &factors {
        let e = &n1 / r;
        let mut certified = false;
        for a in 2u32..200 {
            let a = BigUint::from(a);
            if a.modpow(&n1, n) != one {
                return Ok(false);
            }
            let y = a.modpow(&e, n);
            if y.is_zero() {
                continue;
            }
            let g = (y + n - &one) % n;
            if g.gcd(n).is_one() {
                certified = true;
                break;
            }
        }
        if !certified {
            return Err(overflow(n));
        }
    }
    Ok(true)
}

/// Finds a nontrivial factor of the odd composite `n`.
fn rho_split(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.bits() < 127 {
        let m = n.to_u128()?;
        return rho_u128(m, budget).map(BigUint::from);
    }
    if n.bits() <= 256 {
        return rho_wide(n, budget);
    }
    rho_big(n, budget)
}

fn rho_big(n: &BigUint, budget: u64) -> Option<BigUint> {
    let mut spent = 0u64;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut ys = y.clone();
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            spent += r;
            r *= 2;
            if spent > budget {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

const LIMBS: usize = 4;
type Wide = [u64; LIMBS];

/// Montgomery arithmetic modulo an odd `n < 2^256`, four 64-bit limbs,
/// `R = 2^256`.
struct WideMontgomery {
    n: Wide,
    ninv: u64,
}

fn to_wide(x: &BigUint) -> Wide {
    let mut w = [0u64; LIMBS];
    for (slot, d) in w.iter_mut().zip(x.iter_u64_digits()) {
        *slot = d;
    }
    w
}

fn from_wide(w: &Wide) -> BigUint {
    let digits: Vec<u32> = w
        .iter()
        .flat_map(|&d| [d as u32, (d >> 32) as u32])
        .collect();
    BigUint::new(digits)
}

fn wide_ge(a: &Wide, b: &Wide) -> bool {
    for i in (0..LIMBS).rev() {
        if a[i] != b[i] {
            return a[i] > b[i];
        }
    }
    true
}

fn wide_sub(a: &Wide, b: &Wide) -> Wide {
    let mut out = [0u64; LIMBS];
    let mut borrow = false;
    for i in 0..LIMBS {
        let (d, b1) = a[i].overflowing_sub(b[i]);
        let (d, b2) = d.overflowing_sub(borrow as u64);
        out[i] = d;
        borrow = b1 || b2;
    }
    out
}

impl WideMontgomery {
    fn new(n: &BigUint) -> Self {
        let n = to_wide(n);
        let mut inv: u64 = n[0];
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n[0].wrapping_mul(inv)));
        }
        WideMontgomery {
            n,
            ninv: inv.wrapping_neg(),
        }
    }

    /// Coarsely integrated operand scanning.
    #[inline]
    fn mul(&self, a: &Wide, b: &Wide) -> Wide {
        let mut t = [0u64; LIMBS + 2];
        for &bi in b.iter() {
            let mut c: u128 = 0;
            for j in 0..LIMBS {
                let s = t[j] as u128 + a[j] as u128 * bi as u128 + c;
                t[j] = s as u64;
                c = s >> 64;
            }
            let s = t[LIMBS] as u128 + c;
            t[LIMBS] = s as u64;
            t[LIMBS + 1] = (s >> 64) as u64;
            let m = t[0].wrapping_mul(self.ninv);
            let s = t[0] as u128 + m as u128 * self.n[0] as u128;
            let mut c = s >> 64;
            for j in 1..LIMBS {
                let s = t[j] as u128 + m as u128 * self.n[j] as u128 + c;
                t[j - 1] = s as u64;
                c = s >> 64;
            }
            let s = t[LIMBS] as u128 + c;
            t[LIMBS - 1] = s as u64;
            t[LIMBS] = t[LIMBS + 1] + (s >> 64) as u64;
        }
        let mut out = [0u64; LIMBS];
        out.copy_from_slice(&t[..LIMBS]);
        if t[LIMBS] != 0 || wide_ge(&out, &self.n) {
            out = wide_sub(&out, &self.n);
        }
        out
    }

    fn add(&self, a: &Wide, b: &Wide) -> Wide {
        let mut out = [0u64; LIMBS];
        let mut carry = false;
        for i in 0..LIMBS {
            let (s, c1) = a[i].overflowing_add(b[i]);
            let (s, c2) = s.overflowing_add(carry as u64);
            out[i] = s;
            carry = c1 || c2;
        }
        if carry || wide_ge(&out, &self.n) {
            out = wide_sub(&out, &self.n);
        }
        out
    }
}

fn rho_wide(n: &BigUint, budget: u64) -> Option<BigUint> {
    let mont = WideMontgomery::new(n);
    let r_mod_n = (BigUint::one() << 256) % n;
    let enter = |x: u32| to_wide(&((BigUint::from(x) * &r_mod_n) % n));
    let mut spent = 0u64;
    for c in 1u32.. {
        let c = enter(c);
        let f = |x: &Wide| mont.add(&mont.mul(x, x), &c);
        let absdiff = |a: &Wide, b: &Wide| {
            if wide_ge(a, b) {
                wide_sub(a, b)
            } else {
                wide_sub(b, a)
            }
        };
        let mut y = enter(2);
        let mut x = y;
        let mut ys = y;
        let mut q = enter(1);
        let mut g = BigUint::one();
        let mut r = 1u64;
        const BATCH: u64 = 256;
        while g.is_one() {
            x = y;
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    q = mont.mul(&q, &absdiff(&x, &y));
                }
                g = from_wide(&q).gcd(n);
                k += BATCH;
            }
            spent += r;
            r *= 2;
            if spent > budget {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = from_wide(&absdiff(&x, &ys)).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Montgomery arithmetic modulo an odd `n < 2^127`.
struct Montgomery {
    n: u128,
    ninv: u128,
    r2: u128,
}

#[inline]
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a0, a1) = (a as u64 as u128, a >> 64);
    let (b0, b1) = (b as u64 as u128, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 as u64 as u128) + (p10 as u64 as u128);
    let lo = (p00 as u64 as u128) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (lo, hi)
}

impl Montgomery {
    fn new(n: u128) -> Self {
        debug_assert!(n & 1 == 1 && n < 1 << 127);
        let mut inv: u128 = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r1 = (u128::MAX % n + 1) % n;
        let mut r2 = r1;
        for _ in 0..128 {
            r2 <<= 1;
            if r2 >= n {
                r2 -= n;
            }
        }
        Montgomery {
            n,
            ninv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (lo, hi) = mul_wide(a, b);
        let m = lo.wrapping_mul(self.ninv);
        let (mlo, mhi) = mul_wide(m, self.n);
        let (_, carry) = lo.overflowing_add(mlo);
        let t = hi + mhi + carry as u128;
        if t >= self.n {
            t - self.n
        } else {
            t
        }
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn rho_u128(n: u128, budget: u64) -> Option<u128> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mont = Montgomery::new(n);
    let mut spent = 0u64;
    for c in 1u128.. {
        let c = mont.to_mont(c);
        let add = |x: u128| {
            let s = x + c;
            if s >= n {
                s - n
            } else {
                s
            }
        };
        let f = |x: u128| add(mont.mul(x, x));
        let mut y = mont.to_mont(2);
        let mut x = y;
        let mut ys = y;
        let mut q = mont.to_mont(1);
        let mut g = 1u128;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    let diff = x.abs_diff(y);
                    q = mont.mul(q, diff);
                }
                g = gcd_u128(q, n);
                k += BATCH;
            }
            spent += r;
            r *= 2;
            if spent > budget {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                let diff = x.abs_diff(ys);
                g = gcd_u128(diff, n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    fn replay(f: &[(BigUint, u32)]) -> BigUint {
        f.iter().fold(BigUint::one(), |acc, (p, m)| acc * p.pow(*m))
    }

    #[test]
    fn small_factorizations() {
        let cfg = FactorConfig::default();
        let f = factor_natural(&BigUint::from(1807u32), &cfg).unwrap();
        assert_eq!(f, vec![(BigUint::from(13u32), 1), (BigUint::from(139u32), 1)]);
        assert!(factor_natural(&BigUint::one(), &cfg).unwrap().is_empty());
        let f = factor_natural(&BigUint::from(360u32), &cfg).unwrap();
        assert_eq!(replay(&f), BigUint::from(360u32));
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn cofactor_beyond_64_bits_is_proven_prime() {
        // 139 * 25621 * 420743244646304724409
        let n = big("1498400911280533294827535471");
        let f = factor_natural(&n, &FactorConfig::default()).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[2].0, big("420743244646304724409"));
        assert_eq!(replay(&f), n);
    }

    #[test]
    fn semiprime_with_large_factors_is_split() {
        let p = big("26164562119");
        let q = big("105708023149");
        let f = factor_natural(&(&p * &q), &FactorConfig::default()).unwrap();
        assert_eq!(f, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn pocklington_beyond_mr_range() {
        let p = big("66660815819717847925418677");
        assert!(is_prime(&p).unwrap());
        let f = factor_natural(&(&p * &p), &FactorConfig::default()).unwrap();
        assert_eq!(f, vec![(p, 2)]);
    }

    #[test]
    fn carmichael_and_strong_pseudoprimes_rejected() {
        // 3215031751 is a strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(&BigUint::from(3215031751u64)).unwrap());
        assert!(!is_prime(&BigUint::from(561u32)).unwrap());
        // 3825123056546413051 is a strong pseudoprime to bases 2..=23
        assert!(!is_prime(&big("3825123056546413051")).unwrap());
        assert!(is_prime(&big("18446744073709551557")).unwrap());
    }

    #[test]
    fn small_trial_bound_forces_rho() {
        let cfg = FactorConfig {
            trial_bound: 10,
            ..FactorConfig::default()
        };
        let n = BigUint::from(1_000_003u64 * 999_983u64 * 11 * 11);
        let f = factor_natural(&n, &cfg).unwrap();
        assert_eq!(replay(&f), n);
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn wide_montgomery_matches_bigint() {
        let n = big("370412124868407225213476549707727163633263471399");
        let m = WideMontgomery::new(&n);
        let r = (BigUint::one() << 256) % &n;
        let a = big("123456789012345678901234567890123456789");
        let b = big("98765432109876543210987654321987654321");
        let am = to_wide(&((&a * &r) % &n));
        let bm = to_wide(&((&b * &r) % &n));
        let prod = m.mul(&m.mul(&am, &bm), &to_wide(&BigUint::one()));
        assert_eq!(from_wide(&prod), (&a * &b) % &n);
        let sum = m.add(&am, &bm);
        assert_eq!(from_wide(&sum), ((&a + &b) * &r) % &n);
    }

    #[test]
    fn wide_rho_splits_cofactor_above_2_127() {
        let p = big("5543496392347");
        let q = big("66660815819717847925418677");
        let n = &p * &q;
        assert!(n.bits() > 127);
        let d = rho_wide(&n, 1 << 28).unwrap();
        assert!(d == p || d == q);
    }

    #[test]
    fn montgomery_matches_bigint() {
        let n: u128 = 170141183460469231731687303715884105727; // 2^127 - 1
        let m = Montgomery::new(n);
        let a = 123456789012345678901234567890u128;
        let b = 98765432109876543210987654321u128;
        let am = m.to_mont(a);
        let bm = m.to_mont(b);
        let prod = m.mul(m.mul(am, bm), 1); // out of Montgomery form
        let expect = (BigUint::from(a) * BigUint::from(b)) % BigUint::from(n);
        assert_eq!(BigUint::from(prod), expect);
    }
}
