//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use atomforge_core::atoms::{atom_census, atom_orbits, canonical_form_partition, valuation_criterion_agreement};
use atomforge_core::divgroup::theorem419_grid;
use atomforge_core::domain::RingElement;
use atomforge_core::euclid::{eval_poly, polyvalue_primes, EuclidState, PollackState};
use atomforge_core::radical::jacobson_radical;
use atomforge_core::rings::{Budget, RingDescriptor, TruncatedSpec};
use atomforge_core::topo::periodic_char_check;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn spec(q: u16, d: u8, e: u8, n: u8) -> TruncatedSpec {
    TruncatedSpec::new(q, d, e, n).unwrap()
}

fn census_counts() -> Outcome {
    let start = Instant::now();
    let mut seen = Vec::new();
    for ((q, d, e), want) in [((2, 1, 2), 4), ((3, 1, 2), 6), ((2, 2, 1), 3), ((2, 1, 3), 12), ((2, 2, 2), 24)] {
        let c = atom_census(spec(q, d, e, 3 * e), Budget::default()).map_err(|err| err.to_string())?;
        ensure(
            c.observed() == want && c.predicted == want as u128,
            format!("({q},{d},{e}) observed {} predicted {}", c.observed(), c.predicted),
        )?;
        ensure(c.truncation_stable == Some(true), format!("({q},{d},{e}) not stable at N+1"))?;
        seen.push(want.to_string());
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), format!("took {t:?}"))?;
    Ok(format!("orbit counts {} in {:.2?}", seen.join(", "), t))
}

fn canonical_partition() -> Outcome {
    for q in [2, 3, 4] {
        let s = spec(q, 1, 2, 6);
        let b = Budget::default();
        let orbits: BTreeSet<Vec<u64>> = atom_orbits(s, b)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|o| o.iter().map(|x| x.index()).collect())
            .collect();
        let forms: BTreeSet<Vec<u64>> = canonical_form_partition(s, b)
            .map_err(|e| e.to_string())?
            .values()
            .map(|(_, m)| m.iter().map(|x| x.index()).collect())
            .collect();
        ensure(orbits == forms, format!("q = {q}: partitions differ"))?;
        ensure(orbits.len() == 2 * q as usize, format!("q = {q}: {} classes", orbits.len()))?;
    }
    Ok("F_2, F_3, F_4: orbit partition equals canonical-form partition, 2q classes".into())
}

fn euclid_chains() -> Outcome {
    for ring in ["z", "gauss", "poly-fq:2"] {
        let r: RingDescriptor = ring.parse().unwrap();
        let st = EuclidState::run(r, 10).map_err(|e| e.to_string())?;
        let certs: Vec<_> = st.certificates().collect();
        ensure(st.chosen.len() == 10, format!("{ring}: {} elements", st.chosen.len()))?;
        ensure(certs.len() == 45, format!("{ring}: {} certificates", certs.len()))?;
        ensure(certs.iter().all(|c| c.verify()), format!("{ring}: a certificate fails"))?;
        if ring == "z" {
            let prefix: Vec<RingElement> = [2, 3, 7, 43, 13].into_iter().map(RingElement::int).collect();
            ensure(st.chosen[..5] == prefix[..], "z prefix differs from 2, 3, 7, 43, 13")?;
        }
    }
    Ok("z, gauss, poly-fq:2: 10 elements and 45 verified certificates each".into())
}

fn pollack() -> Outcome {
    for (n, h) in [(5u64, vec![1u64, 4]), (8, vec![1])] {
        let st = PollackState::run(n, &h, 8).map_err(|e| e.to_string())?;
        ensure(st.transcript.len() == 8, format!("N = {n}: {} emissions", st.transcript.len()))?;
        for (i, s) in st.transcript.iter().enumerate() {
            ensure(!st.in_subgroup(s.class), format!("N = {n}: class {} lies in H", s.class))?;
            ensure(s.certificates.len() == 2 + i, format!("N = {n}: step {i} certificate count"))?;
            ensure(s.certificates.iter().all(|c| c.verify()), format!("N = {n}: step {i} certificate fails"))?;
            ensure(
                s.selected.gcd(&BigInt::from(n)) == BigInt::from(1),
                format!("N = {n}: step {i} not coprime to N"),
            )?;
        }
        if n == 5 {
            let first: Vec<BigInt> = st.chosen[..3].to_vec();
            ensure(
                first == [7, 37, 1297].map(BigInt::from),
                format!("N = 5: first three {first:?}"),
            )?;
        }
    }
    Ok("(5,{1,4}) and (8,{1}): 8 emissions each outside H, all certificates verify".into())
}

fn radical() -> Outcome {
    let r = jacobson_radical(spec(2, 1, 2, 6), Budget::default()).map_err(|e| e.to_string())?;
    let members = r.radical_members.as_ref().map_or(0, Vec::len);
    ensure(members == 16, format!("{members} radical members"))?;
    ensure(r.one_plus_radical_in_units == Some(true), "1 + J(R) not inside the units")?;
    let t2 = RingElement::from(atomforge_core::rings::TruncatedElement::from_terms(spec(2, 1, 2, 6), &[(2, 1)]).unwrap());
    ensure(r.witness.as_ref() == Some(&t2), format!("witness {:?}", r.witness.map(|w| w.to_string())))?;
    Ok("trunc:2:1:2:6: 16 radical members, 1 + J in units, witness t^2".into())
}

fn valuation_criterion() -> Outcome {
    let mut checked = 0;
    for s in [spec(2, 1, 2, 8), spec(2, 2, 2, 6)] {
        let a = valuation_criterion_agreement(s, Budget::default()).map_err(|e| e.to_string())?;
        ensure(a.disagreements.is_empty(), format!("{s}: {} disagreements", a.disagreements.len()))?;
        checked += a.checked;
    }
    Ok(format!("trunc:2:1:2:8 and trunc:2:2:2:6: {checked} elements, no disagreements"))
}

fn divgroup_grid() -> Outcome {
    let start = Instant::now();
    let grid = theorem419_grid(6).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    ensure(grid.len() == 56, format!("{} triples", grid.len()))?;
    for r in &grid {
        ensure(
            r.all_checkable_hold(),
            format!("({}, {}, {}) has a failing claim", r.alpha, r.beta, r.gamma),
        )?;
    }
    ensure(t < Duration::from_secs(1), format!("took {t:?}"))?;
    Ok(format!("56 triples, every checkable claim holds, {t:.2?}"))
}

fn periodicity() -> Outcome {
    for ps in [&[2u64][..], &[2, 3], &[2, 3, 5], &[2, 3, 5, 7]] {
        let period: u64 = ps.iter().product();
        let r = periodic_char_check(ps, 10 * period).map_err(|e| e.to_string())?;
        ensure(r.verified && r.coset_check, format!("{ps:?}: check failed"))?;
        ensure(
            r.extractions.iter().all(|x| !ps.contains(&x.prime) && x.x % x.prime as i64 == 0),
            format!("{ps:?}: bad extraction"),
        )?;
    }
    Ok("{2}, {2,3}, {2,3,5}, {2,3,5,7}: periodic with period the product".into())
}

fn polyvalue() -> Outcome {
    let f: Vec<BigInt> = [1, 0, 1].map(BigInt::from).to_vec();
    let primes = polyvalue_primes(&f, 3).map_err(|e| e.to_string())?;
    let ps: Vec<BigUint> = primes.iter().map(|p| p.p.clone()).collect();
    ensure(ps == [2u32, 5, 101].map(BigUint::from), format!("primes {ps:?}"))?;
    for p in &primes {
        let v = eval_poly(&f, &p.n);
        ensure(v == p.value, format!("value at {} recorded wrongly", p.n))?;
        ensure(v.is_multiple_of(&BigInt::from(p.p.clone())), format!("{} does not divide f({})", p.p, p.n))?;
    }
    Ok("t^2 + 1: 2, 5, 101, each dividing the recorded value".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("truncated atom census", census_counts),
        ("canonical-form partition", canonical_partition),
        ("comaximal irreducible chains", euclid_chains),
        ("residue-class generator", pollack),
        ("Jacobson radical", radical),
        ("valuation criterion", valuation_criterion),
        ("divisibility-group grid", divgroup_grid),
        ("coprime indicator periodicity", periodicity),
        ("polynomial-value primes", polyvalue),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
