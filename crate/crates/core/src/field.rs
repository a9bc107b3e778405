//! Small finite fields `F_{p^k}` of order at most 729.
//!
//! An element is stored as a `u16` code: the integer whose base-`p` digits
//! (least significant first) are its coefficients in the power basis of a
//! fixed monic irreducible modulus. Codes double as the field ordering, so
//! "least element" always means least code, which is lexicographic order on
//! the coefficient vector read from the highest power down.

use std::sync::OnceLock;

/// A field element code.
pub type Fe = u16;

pub const MAX_ORDER: u16 = 729;

/// Fixed moduli for the small extension fields, low coefficient first.
const FIXED_MODULI: &[(u16, &[u16])] = &[
    (4, &[1, 1, 1]),    // x^2 + x + 1
    (8, &[1, 1, 0, 1]), // x^3 + x + 1
    (9, &[1, 0, 1]),    // x^2 + 1
];

#[derive(Debug)]
pub struct FiniteField {
    p: u16,
    degree: u32,
    order: u16,
    modulus: Vec<u16>,
    add: Vec<Fe>,
    neg: Vec<Fe>,
    exp: Vec<Fe>,
    log: Vec<u16>,
}

static FIELDS: [OnceLock<FiniteField>; MAX_ORDER as usize + 1] =
    [const { OnceLock::new() }; MAX_ORDER as usize + 1];

/// Decomposes `order` as `p^k`, if it is a prime power.
pub fn prime_power(order: u16) -> Option<(u16, u32)> {
    if order < 2 {
        return None;
    }
    let p = (2..=order).find(|d| order.is_multiple_of(*d))?;
    let mut m = order;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn is_supported_order(order: u16) -> bool {
    order <= MAX_ORDER && prime_power(order).is_some()
}

/// The shared field of the given order.
///
/// Panics if `order` is not a prime power `<= 729`; descriptors validate
/// their orders before reaching here.
pub fn gf(order: u16) -> &'static FiniteField {
    assert!(is_supported_order(order), "unsupported field order {order}");
    FIELDS[order as usize].get_or_init(|| FiniteField::build(order))
}

impl FiniteField {
    fn build(order: u16) -> Self {
        let (p, degree) = prime_power(order).expect("prime power");
        let modulus = match FIXED_MODULI.iter().find(|(o, _)| *o == order) {
            Some((_, m)) => m.to_vec(),
            None if degree == 1 => vec![0, 1],
            None => least_irreducible(p, degree as usize),
        };
        let n = order as usize;
        let digits = |a: u16| -> Vec<u16> {
            let mut v = Vec::with_capacity(degree as usize);
            let mut a = a;
            for _ in 0..degree {
                v.push(a % p);
                a /= p;
            }
            v
        };
        let code = |v: &[u16]| -> u16 { v.iter().rev().fold(0u16, |acc, &c| acc * p + c) };

        let mut add = vec![0; n * n];
        let mut neg = vec![0; n];
        for a in 0..order {
            let da = digits(a);
            neg[a as usize] = code(&da.iter().map(|&c| (p - c) % p).collect::<Vec<_>>());
            for b in 0..order {
                let db = digits(b);
                let s: Vec<u16> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * n + b as usize] = code(&s);
            }
        }

        let slow_mul = |a: u16, b: u16| -> u16 {
            let (da, db) = (digits(a), digits(b));
            let k = degree as usize;
            let mut prod = vec![0u32; 2 * k];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p as u32;
                }
            }
            for i in (k..2 * k).rev() {
                let c = prod[i];
                if c == 0 {
                    continue;
                }
                for (j, &m) in modulus.iter().enumerate().take(k) {
                    let idx = i - k + j;
                    prod[idx] = (prod[idx] + (p as u32 - c) * m as u32) % p as u32;
                }
                prod[i] = 0;
            }
            code(&prod[..k].iter().map(|&c| c as u16).collect::<Vec<_>>())
        };

        let group = n - 1;
        let generator = (1..order)
            .find(|&g| {
                let mut x = g;
                for i in 1..group {
                    if x == 1 {
                        return i == group;
                    }
                    x = slow_mul(x, g);
                }
                x == 1
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0; group];
        let mut log = vec![0; n];
        let mut x = 1u16;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u16;
            x = slow_mul(x, generator);
        }

        FiniteField {
            p,
            degree,
            order,
            modulus,
            add,
            neg,
            exp,
            log,
        }
    }

    pub fn order(&self) -> u16 {
        self.order
    }

    pub fn characteristic(&self) -> u16 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The fixed modulus over `F_p`, low coefficient first.
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// Human-readable identifier of the modulus table entry, e.g. `F4:x^2+x+1`.
    pub fn modulus_id(&self) -> String {
        if self.degree == 1 {
            return format!("F{}", self.order);
        }
        let terms: Vec<String> = self
            .modulus
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{i}"),
                };
                match (c, i) {
                    (1, 0) => "1".to_string(),
                    (1, _) => mono,
                    (_, 0) => c.to_string(),
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        format!("F{}:{}", self.order, terms.join("+"))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.order as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let group = self.order as usize - 1;
        let l = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[l % group]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        let group = self.order as usize - 1;
        let l = self.log[a as usize] as usize;
        Some(self.exp[(group - l) % group])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let group = (self.order - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % group)) % group;
        self.exp[l as usize]
    }

    /// Whether `a` lies in the subfield of order `sub_order` (`a^sub = a`).
    pub fn in_subfield(&self, a: Fe, sub_order: u16) -> bool {
        self.pow(a, sub_order as u64) == a
    }

    /// The subfield of order `sub_order`, in code order.
    pub fn subfield(&self, sub_order: u16) -> Vec<Fe> {
        self.elements().filter(|&a| self.in_subfield(a, sub_order)).collect()
    }

    /// The integer `n` mapped into the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.p as i64) as Fe
    }
}

fn least_irreducible(p: u16, degree: usize) -> Vec<u16> {
    let total = (p as u32).pow(degree as u32);
    (0..total)
        .map(|low| {
            let mut coeffs = Vec::with_capacity(degree + 1);
            let mut r = low;
            for _ in 0..degree {
                coeffs.push((r % p as u32) as u16);
                r /= p as u32;
            }
            coeffs.push(1);
            coeffs
        })
        .find(|m| is_irreducible_over_prime(m, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Brute-force irreducibility over `F_p` by trial division with every monic
/// polynomial of degree `1..=deg/2`.
fn is_irreducible_over_prime(m: &[u16], p: u16) -> bool {
    let deg = m.len() - 1;
    for dd in 1..=deg / 2 {
        let count = (p as u32).pow(dd as u32);
        for low in 0..count {
            let mut div = Vec::with_capacity(dd + 1);
            let mut r = low;
            for _ in 0..dd {
                div.push((r % p as u32) as u16);
                r /= p as u32;
            }
            div.push(1);
            if rem_over_prime(m, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn rem_over_prime(a: &[u16], monic: &[u16], p: u16) -> Vec<u16> {
    let mut r: Vec<u32> = a.iter().map(|&c| c as u32).collect();
    let dd = monic.len() - 1;
    let p = p as u32;
    for i in (dd..r.len()).rev() {
        let c = r[i] % p;
        if c == 0 {
            continue;
        }
        for (j, &m) in monic.iter().enumerate() {
            let idx = i - dd + j;
            r[idx] = (r[idx] + (p - c) * m as u32) % p;
        }
    }
    r.truncate(dd);
    r.into_iter().map(|c| (c % p) as u16).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_moduli_are_used() {
        assert_eq!(gf(4).modulus(), &[1, 1, 1]);
        assert_eq!(gf(8).modulus(), &[1, 1, 0, 1]);
        assert_eq!(gf(9).modulus(), &[1, 0, 1]);
        assert_eq!(gf(4).modulus_id(), "F4:x^2+x+1");
        assert_eq!(gf(16).modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for order in [2u16, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = gf(order);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, order - 1] {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn f4_multiplication_table() {
        // x = code 2, x^2 = x + 1 = code 3.
        let f = gf(4);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(3, 3), 2);
    }

    #[test]
    fn f9_has_i() {
        // x^2 = -1 in F_9 = F_3[x]/(x^2+1); x has code 3.
        let f = gf(9);
        assert_eq!(f.mul(3, 3), 2);
    }

    #[test]
    fn subfields() {
        assert_eq!(gf(4).subfield(2), vec![0, 1]);
        assert_eq!(gf(16).subfield(4).len(), 4);
        assert_eq!(gf(9).subfield(3), vec![0, 1, 2]);
        assert_eq!(gf(8).subfield(2), vec![0, 1]);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(!is_supported_order(6));
        assert!(!is_supported_order(1));
        assert!(is_supported_order(729));
        assert!(!is_supported_order(1024));
    }
}
