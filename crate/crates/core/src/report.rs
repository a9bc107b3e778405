//! JSON reports and their replay.
//!
//! Every command result is wrapped in a [`Report`]. [`verify_body`] checks
//! a report from the recorded data alone: products are recomputed,
//! Bézout identities evaluated, residue classes reduced. Nothing is
//! factored again.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::atoms::{is_irreducible_truncated, AtomCensus};
use crate::divgroup::{theorem419_census, Theorem419Report};
use crate::domain::{canonical_associate, least_irreducible, BezoutCertificate, RingElement};
use crate::error::{Error, Result};
use crate::euclid::{eval_poly, validate_subgroup, EuclidState, PollackState, PolyValuePrime};
use crate::radical::{ConditionEStatus, RadicalReport};
use crate::rings::{enumerate_elements, Budget, ElementFilter, RingDescriptor, TruncatedElement};
use crate::topo::{ClosedIdealReport, PeriodicityReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyPrimesResult {
    /// Integer coefficients, constant term first.
    #[serde(with = "crate::serde_dec::int_vec")]
    pub poly: Vec<BigInt>,
    pub primes: Vec<PolyValuePrime>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "results", rename_all = "kebab-case")]
pub enum ReportBody {
    Euclid(EuclidState),
    Pollack(PollackState),
    Polyprimes(PolyPrimesResult),
    Atoms(AtomCensus),
    Radical(RadicalReport),
    Periodicity(PeriodicityReport),
    Golomb(ClosedIdealReport),
    Divgroup(Vec<Theorem419Report>),
}

impl ReportBody {
    /// Ring or group the results are about.
    pub fn subject(&self) -> String {
        match self {
            ReportBody::Euclid(s) => s.ring.to_string(),
            ReportBody::Pollack(s) => format!("z mod {}", s.modulus),
            ReportBody::Polyprimes(_) | ReportBody::Periodicity(_) | ReportBody::Golomb(_) => {
                RingDescriptor::Integers.to_string()
            }
            ReportBody::Atoms(c) => c.ring.to_string(),
            ReportBody::Radical(r) => r.ring.to_string(),
            ReportBody::Divgroup(rs) => match rs.as_slice() {
                [one] => one.spec.to_string(),
                _ => format!("divisibility-group grid of {} triples", rs.len()),
            },
        }
    }

    /// Certificates carried by the results, in emission order.
    pub fn certificates(&self) -> Vec<BezoutCertificate> {
        match self {
            ReportBody::Euclid(s) => s.certificates().cloned().collect(),
            ReportBody::Pollack(s) => s
                .transcript
                .iter()
                .flat_map(|st| st.certificates.iter().cloned())
                .collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub checked: u64,
    pub failed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl VerificationSummary {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub subject: String,
    #[serde(flatten)]
    pub body: ReportBody,
    pub certificates: Vec<BezoutCertificate>,
    pub verification: VerificationSummary,
    pub wall_time_ms: u64,
}

impl Report {
    /// Wraps a body and verifies it once.
    pub fn new(command: Vec<String>, body: ReportBody, budget: Budget, wall_time_ms: u64) -> Self {
        let certificates = body.certificates();
        let mut report = Report {
            command,
            subject: body.subject(),
            body,
            certificates,
            verification: VerificationSummary::default(),
            wall_time_ms,
        };
        report.verification = report.verify(budget);
        report
    }

    /// Replays the body and every top-level certificate.
    pub fn verify(&self, budget: Budget) -> VerificationSummary {
        let mut v = verify_body(&self.body, budget);
        let expected = self.body.certificates();
        v.check(expected == self.certificates, || {
            "top-level certificate list differs from the transcript".into()
        });
        for (i, c) in self.certificates.iter().enumerate() {
            v.check(c.verify(), || format!("certificate {i}: u*a + v*b != 1 for a = {}, b = {}", c.a, c.b));
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidElement(format!("malformed report: {e}")))
    }
}

pub fn verify_body(body: &ReportBody, budget: Budget) -> VerificationSummary {
    let mut v = VerificationSummary::default();
    match body {
        ReportBody::Euclid(s) => verify_euclid(s, &mut v),
        ReportBody::Pollack(s) => verify_pollack(s, &mut v),
        ReportBody::Polyprimes(r) => verify_polyprimes(r, &mut v),
        ReportBody::Atoms(c) => verify_atoms(c, &mut v),
        ReportBody::Radical(r) => verify_radical(r, budget, &mut v),
        ReportBody::Periodicity(r) => verify_periodicity(r, &mut v),
        ReportBody::Golomb(r) => verify_golomb(r, &mut v),
        ReportBody::Divgroup(rs) => verify_divgroup(rs, &mut v),
    }
    v
}

fn verify_pairs(
    v: &mut VerificationSummary,
    step: usize,
    certs: &[BezoutCertificate],
    earlier: &[RingElement],
    selected: &RingElement,
) {
    v.check(certs.len() == earlier.len(), || {
        format!("step {step}: {} certificates for {} earlier elements", certs.len(), earlier.len())
    });
    for (j, (c, f)) in certs.iter().zip(earlier).enumerate() {
        v.check(c.a == *f && c.b == *selected, || {
            format!("step {step}: certificate {j} pairs the wrong elements")
        });
        v.check(c.verify(), || format!("step {step}: certificate {j} does not evaluate to 1"));
    }
}

fn verify_euclid(s: &EuclidState, v: &mut VerificationSummary) {
    v.check(s.chosen.len() == s.transcript.len(), || "chosen and steps differ in length".into());
    for (i, step) in s.transcript.iter().enumerate() {
        let earlier = &s.chosen[..i.min(s.chosen.len())];
        v.check(s.chosen.get(i) == Some(&step.selected), || format!("step {i}: selected is not chosen[{i}]"));
        v.check(step.selected.ring() == s.ring, || format!("step {i}: element from another ring"));
        if i == 0 {
            v.check(
                step.selected == least_irreducible(s.ring) && step.x.is_none(),
                || "seed is not the least irreducible".into(),
            );
        } else {
            match (&step.y, &step.x, &step.factorization) {
                (Some(y), Some(x), Some(fac)) => {
                    let replay = RingElement::product(s.ring, earlier)
                        .and_then(|p| y.mul(&p))
                        .and_then(|yp| yp.add(&RingElement::one(s.ring)));
                    v.check(replay.as_ref() == Ok(x), || format!("step {i}: x != y * prod + 1"));
                    v.check(fac.verify_against(x), || format!("step {i}: factorization does not replay x"));
                    v.check(fac.least_factor() == Some(&step.selected), || {
                        format!("step {i}: selected is not the least listed factor")
                    });
                }
                _ => v.check(false, || format!("step {i}: missing y, x or factorization")),
            }
        }
        verify_pairs(v, i, &step.certificates, earlier, &step.selected);
    }
    let canon: HashSet<String> = s
        .chosen
        .iter()
        .filter_map(|f| canonical_associate(f).ok().map(|(_, c)| c.to_string()))
        .collect();
    v.check(canon.len() == s.chosen.len(), || "chosen irreducibles are not pairwise distinct atoms".into());
}

fn verify_pollack(s: &PollackState, v: &mut VerificationSummary) {
    let n = BigInt::from(s.modulus);
    let subgroup_ok = validate_subgroup(s.modulus, &s.subgroup).is_ok_and(|h| h == s.subgroup);
    v.check(subgroup_ok, || "H is not a proper subgroup".into());
    let in_h = |c: u64| s.subgroup.binary_search(&c).is_ok();
    v.check(
        (s.alpha as u128 * s.beta as u128) % s.modulus as u128 == 1 && !in_h(s.alpha % s.modulus),
        || "alpha, beta are not inverse classes outside H".into(),
    );
    v.check(s.chosen.len() == s.transcript.len(), || "chosen and steps differ in length".into());
    let alpha = BigInt::from(s.alpha);
    let k0: BigInt = &alpha * BigInt::from(s.beta) - 1;
    for (i, step) in s.transcript.iter().enumerate() {
        let earlier = &s.chosen[..i.min(s.chosen.len())];
        let prod: BigInt = earlier.iter().product();
        let k = &k0 * prod;
        v.check(step.lead == &alpha * &k && step.constant == &k + &alpha, || {
            format!("step {i}: P(t) does not match alpha, beta and earlier emissions")
        });
        v.check(step.y == &step.lead * &step.x + &step.constant, || format!("step {i}: y != P(x)"));
        v.check(!step.y.is_zero() && step.y.abs() != BigInt::from(1), || format!("step {i}: y is zero or a unit"));
        let y = RingElement::Integer(step.y.clone());
        v.check(step.factorization.verify_against(&y), || format!("step {i}: factorization does not replay y"));
        let g = RingElement::Integer(step.selected.clone());
        v.check(step.factorization.factors.iter().any(|(f, _)| *f == g), || {
            format!("step {i}: selected is not a listed factor")
        });
        v.check(s.chosen.get(i) == Some(&step.selected), || format!("step {i}: selected is not chosen[{i}]"));
        let class = step.selected.mod_floor(&n);
        v.check(class == BigInt::from(step.class) && !in_h(step.class), || {
            format!("step {i}: class of {} lies in H", step.selected)
        });
        // y = alpha (mod N), the product identity for the residue classes
        v.check(step.y.mod_floor(&n) == alpha.mod_floor(&n), || format!("step {i}: y is not alpha mod N"));
        let fixed = [RingElement::Integer(n.clone()), RingElement::Integer(alpha.clone())];
        let certs = &step.certificates;
        v.check(certs.len() == 2 + earlier.len(), || format!("step {i}: wrong number of certificates"));
        for (j, f) in fixed.iter().enumerate() {
            if let Some(c) = certs.get(j) {
                v.check(c.a == g && c.b == *f && c.verify(), || {
                    format!("step {i}: gcd certificate with {f} fails")
                });
            }
        }
        let earlier_el: Vec<RingElement> = earlier.iter().cloned().map(RingElement::Integer).collect();
        verify_pairs(v, i, certs.get(2..).unwrap_or(&[]), &earlier_el, &g);
    }
}

fn verify_polyprimes(r: &PolyPrimesResult, v: &mut VerificationSummary) {
    let mut seen = Vec::new();
    for (i, p) in r.primes.iter().enumerate() {
        v.check(eval_poly(&r.poly, &p.n) == p.value, || format!("prime {i}: value != f(n)"));
        let pi = BigInt::from(p.p.clone());
        v.check(pi > BigInt::from(1) && p.value.mod_floor(&pi).is_zero(), || {
            format!("prime {i}: {} does not divide f({})", p.p, p.n)
        });
        v.check(!seen.contains(&p.p), || format!("prime {i}: {} repeats an earlier prime", p.p));
        seen.push(p.p.clone());
    }
}

fn verify_atoms(c: &AtomCensus, v: &mut VerificationSummary) {
    let total: u64 = c.orbits.iter().map(|o| o.size).sum();
    v.check(total == c.irreducibles_total, || "orbit sizes do not sum to the irreducible count".into());
    v.check(c.predicted == c.ring.predicted_atoms(), || "predicted count does not match the formula".into());
    v.check(c.observed() as u128 == c.predicted, || {
        format!("observed {} atoms, predicted {}", c.observed(), c.predicted)
    });
    if let Some(stable) = c.truncation_stable {
        v.check(stable, || "census changes at N + 1".into());
    }
    let mut forms = HashSet::new();
    for o in &c.orbits {
        let r = &o.representative;
        v.check(r.spec() == c.ring && is_irreducible_truncated(r) == Ok(true), || {
            format!("representative {r} is not irreducible")
        });
        let form = r.canonical_associate().map(|(_, f)| f.index());
        v.check(form.is_ok_and(|f| forms.insert(f)), || format!("representative {r} repeats an orbit"));
    }
}

fn verify_radical(r: &RadicalReport, budget: Budget, v: &mut VerificationSummary) {
    for (i, w) in r.panel.iter().enumerate() {
        v.check(w.verify(), || format!("panel entry {i}: y*x + 1 is a unit or miscomputed"));
    }
    let Some(members) = &r.radical_members else {
        v.check(r.condition_e == ConditionEStatus::HoldsOnPanel, || "infinite ring claims more than its panel".into());
        return;
    };
    let RingDescriptor::Truncated(spec) = r.ring else {
        v.check(false, || "radical members reported for an infinite ring".into());
        return;
    };
    let all: Vec<TruncatedElement> = match enumerate_elements(spec, ElementFilter::All, budget) {
        Ok(it) => it.collect(),
        Err(e) => {
            v.check(false, || format!("cannot enumerate {spec}: {e}"));
            return;
        }
    };
    let one = TruncatedElement::one(spec);
    for m in members {
        let ok = m
            .as_truncated()
            .is_some_and(|x| x.spec() == spec && all.iter().all(|y| y.mul(x).add(&one).is_unit()));
        v.check(ok, || format!("{m} is not in the radical"));
    }
    if let Some(w) = &r.witness {
        v.check(!w.is_zero() && members.contains(w), || format!("witness {w} is not a nonzero radical member"));
    }
    v.check(
        (r.condition_e == ConditionEStatus::FailsWithWitness) == r.witness.is_some(),
        || "status and witness disagree".into(),
    );
}

fn verify_periodicity(r: &PeriodicityReport, v: &mut VerificationSummary) {
    let period: u64 = r.primes.iter().product();
    v.check(period == r.period, || "period is not the product of the primes".into());
    let chi = |x: i64| r.primes.iter().all(|&p| x.rem_euclid(p as i64) != 0);
    let (lo, hi) = r.window;
    let p = r.period as i64;
    let periodic = (lo..=hi).filter(|x| x + p <= hi).all(|x| chi(x) == chi(x + p));
    v.check(periodic == r.verified, || "periodicity flag does not match the window".into());
    let coset = (lo..=hi).filter(|x| x.rem_euclid(p) == 1 % p).all(chi);
    v.check(coset == r.coset_check, || "coset flag does not match the window".into());
    for e in &r.extractions {
        v.check(
            e.x.rem_euclid(p) == 1 % p && e.prime > 1 && e.x.rem_euclid(e.prime as i64) == 0 && !r.primes.contains(&e.prime),
            || format!("extraction {} -> {} is not an outside prime divisor", e.x, e.prime),
        );
    }
}

fn verify_golomb(r: &ClosedIdealReport, v: &mut VerificationSummary) {
    let p = r.prime as i64;
    let (lo, hi) = r.window;
    for nb in &r.neighborhoods {
        let ok = nb.modulus == r.prime
            && nb.x.gcd(&p) == 1
            && (lo..=hi).filter(|y| (y - nb.x).rem_euclid(p) == 0).all(|y| y % p != 0);
        v.check(ok == nb.misses_ideal, || format!("neighborhood of {} misreported", nb.x));
    }
    let expected = (lo..=hi).filter(|x| x % p != 0).count();
    v.check(expected == r.neighborhoods.len(), || "some point outside pZ lacks a neighborhood".into());
    v.check(r.verified == r.neighborhoods.iter().all(|n| n.misses_ideal), || "summary flag disagrees".into());
}

fn verify_divgroup(rs: &[Theorem419Report], v: &mut VerificationSummary) {
    for r in rs {
        let recomputed = theorem419_census(r.alpha, r.beta, r.gamma);
        v.check(recomputed.as_ref() == Ok(r), || {
            format!("({}, {}, {}) does not recompute", r.alpha, r.beta, r.gamma)
        });
        v.check(r.all_checkable_hold(), || format!("({}, {}, {}) has a failing claim", r.alpha, r.beta, r.gamma));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclid_report_round_trip_and_tamper() {
        let st = EuclidState::run(RingDescriptor::Integers, 5).unwrap();
        let r = Report::new(vec!["euclid".into()], ReportBody::Euclid(st), Budget::default(), 0);
        assert!(r.verification.passed(), "{:?}", r.verification);
        assert_eq!(r.certificates.len(), 10);
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(back.verify(Budget::default()).passed());

        let mut bad = back.clone();
        bad.certificates[3].u = RingElement::int(12345);
        assert!(!bad.verify(Budget::default()).passed());

        let mut bad = back;
        if let ReportBody::Euclid(s) = &mut bad.body {
            s.transcript[4].x = Some(RingElement::int(1809));
        }
        assert!(!bad.verify(Budget::default()).passed());
    }

    #[test]
    fn pollack_report_verifies() {
        let st = PollackState::run(8, &[1], 4).unwrap();
        let r = Report::new(vec![], ReportBody::Pollack(st), Budget::default(), 0);
        assert!(r.verification.passed(), "{:?}", r.verification);
        let mut bad = r.clone();
        if let ReportBody::Pollack(s) = &mut bad.body {
            s.transcript[1].class = 1;
        }
        assert!(!bad.verify(Budget::default()).passed());
    }

    #[test]
    fn every_kind_round_trips() {
        use crate::atoms::atom_census;
        use crate::divgroup::theorem419_grid;
        use crate::radical::jacobson_radical;
        use crate::rings::TruncatedSpec;
        use crate::topo::{maximal_ideal_closed_check, periodic_char_check};

        let spec = TruncatedSpec::new(2, 1, 2, 6).unwrap();
        let b = Budget::default();
        let bodies = vec![
            ReportBody::Polyprimes(PolyPrimesResult {
                poly: vec![1.into(), 0.into(), 1.into()],
                primes: crate::euclid::polyvalue_primes(&[1.into(), 0.into(), 1.into()], 3).unwrap(),
            }),
            ReportBody::Atoms(atom_census(spec, b).unwrap()),
            ReportBody::Radical(jacobson_radical(spec, b).unwrap()),
            ReportBody::Periodicity(periodic_char_check(&[2, 3], 60).unwrap()),
            ReportBody::Golomb(maximal_ideal_closed_check(5, 25).unwrap()),
            ReportBody::Divgroup(theorem419_grid(3).unwrap()),
        ];
        for body in bodies {
            let r = Report::new(vec![], body, b, 0);
            assert!(r.verification.passed(), "{:?}", r.verification);
            assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        }
    }
}
