//! Atom censuses of the truncated local rings `F_q + t^e F_{q^d}[[t]]`.
//!
//! Irreducibility is decided by valuation: a nonzero nonunit is irreducible
//! iff `e <= v <= 2e - 1`. Products of two nonunits have valuation at least
//! `2e`, and anything of valuation `>= 2e` splits off `t^e`. The census then
//! partitions irreducibles into association orbits by multiplying against
//! every unit.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{enumerate_elements, Budget, ElementFilter, TruncatedElement, TruncatedSpec};

/// Valuation criterion for irreducibility.
pub fn is_irreducible_truncated(x: &TruncatedElement) -> Result<bool> {
    let v = x.valuation()?;
    if v == 0 {
        return Err(Error::IsUnit);
    }
    let e = x.spec().e as usize;
    Ok((e..2 * e).contains(&v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub representative: TruncatedElement,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomCensus {
    pub ring: TruncatedSpec,
    pub irreducibles_total: u64,
    pub orbits: Vec<Orbit>,
    #[serde(with = "crate::serde_dec::int")]
    pub predicted: u128,
    /// Orbit count unchanged at `N + 1`; `None` when not computed.
    pub truncation_stable: Option<bool>,
}

impl AtomCensus {
    pub fn observed(&self) -> usize {
        self.orbits.len()
    }

    pub fn matches_prediction(&self) -> bool {
        self.observed() as u128 == self.predicted
    }
}

/// Association orbits of all irreducibles, each sorted in enumeration
/// order, the orbits themselves ordered by their least member.
pub fn atom_orbits(spec: TruncatedSpec, budget: Budget) -> Result<Vec<Vec<TruncatedElement>>> {
    let units: Vec<TruncatedElement> = enumerate_elements(spec, ElementFilter::Units, budget)?.collect();
    let e = spec.e as usize;
    let mut by_valuation: Vec<Vec<TruncatedElement>> = vec![Vec::new(); e];
    for x in enumerate_elements(spec, ElementFilter::NonunitsNonzero, budget)? {
        let v = x.valuation()?;
        if is_irreducible_truncated(&x)? {
            by_valuation[v - e].push(x);
        }
    }
    // orbits never mix valuations, so classes are independent
    let mut orbits: Vec<Vec<TruncatedElement>> = by_valuation
        .into_par_iter()
        .flat_map_iter(|class| {
            let mut seen: HashSet<u64> = HashSet::with_capacity(class.len());
            let mut out = Vec::new();
            for x in class {
                if seen.contains(&x.index()) {
                    continue;
                }
                let mut members: Vec<TruncatedElement> = Vec::new();
                for u in &units {
                    let y = u.mul(&x);
                    if seen.insert(y.index()) {
                        members.push(y);
                    }
                }
                members.sort_by_key(TruncatedElement::index);
                out.push(members);
            }
            out
        })
        .collect();
    orbits.sort_by_key(|o| o[0].index());
    Ok(orbits)
}

/// Exhaustive census at `N`, optionally repeated at `N + 1`.
pub fn atom_census_with(spec: TruncatedSpec, budget: Budget, stability: bool) -> Result<AtomCensus> {
    let orbits = atom_orbits(spec, budget)?;
    let irreducibles_total = orbits.iter().map(|o| o.len() as u64).sum();
    let truncation_stable = if stability {
        let next = spec.with_order(spec.n + 1)?;
        Some(atom_orbits(next, budget)?.len() == orbits.len())
    } else {
        None
    };
    Ok(AtomCensus {
        ring: spec,
        irreducibles_total,
        orbits: orbits
            .into_iter()
            .map(|o| Orbit {
                size: o.len() as u64,
                representative: o.into_iter().next().expect("orbits are nonempty"),
            })
            .collect(),
        predicted: spec.predicted_atoms(),
        truncation_stable,
    })
}

pub fn atom_census(spec: TruncatedSpec, budget: Budget) -> Result<AtomCensus> {
    atom_census_with(spec, budget, true)
}

fn require_shape_q12(spec: TruncatedSpec) -> Result<()> {
    if spec.d != 1 || spec.e != 2 {
        return Err(Error::WrongRingShape(format!(
            "{spec}: canonical forms need d = 1 and e = 2"
        )));
    }
    Ok(())
}

/// `t^2 + a_3 t^3` or `t^3 + a_4 t^4` for an irreducible of a `(q, 1, 2, N)`
/// ring, read off after scaling the leading coefficient to one.
pub fn association_canonical_form(x: &TruncatedElement) -> Result<TruncatedElement> {
    let spec = x.spec();
    require_shape_q12(spec)?;
    if !is_irreducible_truncated(x)? {
        return Err(Error::InvalidElement(format!("{x} is not irreducible")));
    }
    let v = x.valuation()?;
    let f = spec.field();
    let lead_inv = f.inv(x.coeffs()[v]).expect("nonzero lead");
    let next = f.mul(lead_inv, x.coeffs()[v + 1]);
    TruncatedElement::from_terms(spec, &[(v, 1), (v + 1, next)])
}

/// Irreducibles grouped by [`association_canonical_form`], keyed by the form.
pub fn canonical_form_partition(
    spec: TruncatedSpec,
    budget: Budget,
) -> Result<BTreeMap<u64, (TruncatedElement, Vec<TruncatedElement>)>> {
    require_shape_q12(spec)?;
    let mut out: BTreeMap<u64, (TruncatedElement, Vec<TruncatedElement>)> = BTreeMap::new();
    for x in enumerate_elements(spec, ElementFilter::NonunitsNonzero, budget)? {
        if !is_irreducible_truncated(&x)? {
            continue;
        }
        let c = association_canonical_form(&x)?;
        out.entry(c.index())
            .or_insert_with(|| (c, Vec::new()))
            .1
            .push(x);
    }
    Ok(out)
}

/// Outcome of [`prime_element_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub element: TruncatedElement,
    pub is_prime: bool,
    /// Least `(a, b)` with `p | ab`, `p` dividing neither.
    pub witness: Option<(TruncatedElement, TruncatedElement)>,
    pub pairs_checked: u64,
    /// Pairs whose divisibility the truncation cannot decide.
    pub pairs_unverifiable: u64,
}

/// Exhaustive search for a witness that `p` is not prime, over pairs of
/// nonzero nonunits of valuation at most `N - e - 1`.
pub fn prime_element_check(p: &TruncatedElement, budget: Budget) -> Result<PrimeCheck> {
    let spec = p.spec();
    if !is_irreducible_truncated(p)? {
        return Err(Error::InvalidElement(format!("{p} is not irreducible")));
    }
    let window = spec.len() - spec.e as usize - 1;
    let mut candidates: Vec<TruncatedElement> = Vec::new();
    for a in enumerate_elements(spec, ElementFilter::NonunitsNonzero, budget)? {
        if a.valuation()? <= window {
            match a.divided_by(p)? {
                Some(_) => {}
                None => candidates.push(a),
            }
        }
    }
    let mut checked = 0u64;
    let mut unverifiable = 0u64;
    for (i, a) in candidates.iter().enumerate() {
        for b in &candidates[i..] {
            checked += 1;
            match a.mul(b).divided_by(p) {
                Ok(Some(_)) => {
                    return Ok(PrimeCheck {
                        element: p.clone(),
                        is_prime: false,
                        witness: Some((a.clone(), b.clone())),
                        pairs_checked: checked,
                        pairs_unverifiable: unverifiable,
                    })
                }
                Ok(None) => {}
                Err(Error::OutsideSoundnessWindow(_)) => unverifiable += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(PrimeCheck {
        element: p.clone(),
        is_prime: true,
        witness: None,
        pairs_checked: checked,
        pairs_unverifiable: unverifiable,
    })
}

/// At least three atoms whenever some atom is not prime. `None` when every
/// orbit representative is prime, which puts the ring outside the claim.
pub fn ck_min_atoms_check(census: &AtomCensus, budget: Budget) -> Result<Option<bool>> {
    for orbit in &census.orbits {
        if !prime_element_check(&orbit.representative, budget)?.is_prime {
            return Ok(Some(census.observed() >= 3));
        }
    }
    Ok(None)
}

/// Comparison of the valuation criterion against exhaustive search for
/// two-nonunit factorizations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionAgreement {
    pub ring: TruncatedSpec,
    pub checked: u64,
    pub disagreements: Vec<TruncatedElement>,
}

/// Runs over every nonzero nonunit with `v <= N - e - 1`.
pub fn valuation_criterion_agreement(spec: TruncatedSpec, budget: Budget) -> Result<CriterionAgreement> {
    let nonunits: Vec<TruncatedElement> =
        enumerate_elements(spec, ElementFilter::NonunitsNonzero, budget)?.collect();
    let products: HashSet<u64> = nonunits
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, a)| nonunits[i..].iter().map(move |b| a.mul(b).index()))
        .collect();
    let window = spec.len() - spec.e as usize - 1;
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for x in &nonunits {
        if x.valuation()? > window {
            continue;
        }
        checked += 1;
        let brute = !products.contains(&x.index());
        if brute != is_irreducible_truncated(x)? {
            disagreements.push(x.clone());
        }
    }
    Ok(CriterionAgreement {
        ring: spec,
        checked,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fe;

    fn spec(q: u16, d: u8, e: u8, n: u8) -> TruncatedSpec {
        TruncatedSpec::new(q, d, e, n).unwrap()
    }

    fn el(s: TruncatedSpec, terms: &[(usize, Fe)]) -> TruncatedElement {
        TruncatedElement::from_terms(s, terms).unwrap()
    }

    #[test]
    fn valuation_criterion_examples() {
        let s = spec(2, 1, 2, 6);
        assert!(is_irreducible_truncated(&el(s, &[(2, 1), (3, 1)])).unwrap());
        assert!(!is_irreducible_truncated(&el(s, &[(4, 1)])).unwrap());
        assert!(is_irreducible_truncated(&el(spec(2, 2, 2, 6), &[(3, 1)])).unwrap());
        assert_eq!(is_irreducible_truncated(&el(s, &[(0, 1)])), Err(Error::IsUnit));
        assert_eq!(
            is_irreducible_truncated(&TruncatedElement::zero(s)),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn census_small_rings() {
        let c = atom_census(spec(2, 1, 2, 6), Budget::default()).unwrap();
        assert_eq!((c.observed(), c.predicted), (4, 4));
        assert_eq!(c.truncation_stable, Some(true));
        assert_eq!(c.orbits.iter().map(|o| o.size).sum::<u64>(), c.irreducibles_total);
        let reps: Vec<String> = c.orbits.iter().map(|o| o.representative.to_string()).collect();
        assert_eq!(reps, vec!["t^2", "t^3", "t^2+t^3", "t^3+t^4"]);
        let c = atom_census(spec(3, 1, 2, 6), Budget::default()).unwrap();
        assert_eq!(c.observed(), 6);
        let c = atom_census(spec(2, 2, 2, 6), Budget::default()).unwrap();
        assert_eq!(c.observed(), 24);
    }

    #[test]
    fn census_is_worker_count_independent() {
        let s = spec(3, 1, 2, 6);
        let a = atom_census(s, Budget::default()).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| atom_census(s, Budget::default()).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn census_respects_budget() {
        assert!(matches!(
            atom_census(spec(2, 1, 2, 6), Budget(16)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn canonical_form_examples() {
        let s = spec(2, 1, 2, 6);
        assert_eq!(
            association_canonical_form(&el(s, &[(2, 1), (4, 1)])).unwrap(),
            el(s, &[(2, 1)])
        );
        assert_eq!(
            association_canonical_form(&el(s, &[(2, 1), (3, 1)])).unwrap(),
            el(s, &[(2, 1), (3, 1)])
        );
        let s3 = spec(3, 1, 2, 6);
        assert_eq!(
            association_canonical_form(&el(s3, &[(3, 2), (4, 1)])).unwrap(),
            el(s3, &[(3, 1), (4, 2)])
        );
        assert!(matches!(
            association_canonical_form(&el(spec(2, 2, 2, 6), &[(2, 1)])),
            Err(Error::WrongRingShape(_))
        ));
    }

    #[test]
    fn prime_check_examples() {
        let s = spec(2, 1, 2, 8);
        let r = prime_element_check(&el(s, &[(2, 1)]), Budget::default()).unwrap();
        assert!(!r.is_prime);
        assert_eq!(r.witness, Some((el(s, &[(3, 1)]), el(s, &[(3, 1)]))));
        let r = prime_element_check(&el(s, &[(3, 1)]), Budget::default()).unwrap();
        assert!(!r.is_prime);
        assert_eq!(r.witness, Some((el(s, &[(2, 1)]), el(s, &[(4, 1)]))));
        let s1 = spec(2, 1, 1, 6);
        let r = prime_element_check(&el(s1, &[(1, 1)]), Budget::default()).unwrap();
        assert!(r.is_prime);
    }

    #[test]
    fn min_atoms_examples() {
        let b = Budget::default();
        let c = atom_census(spec(2, 1, 2, 6), b).unwrap();
        assert_eq!(ck_min_atoms_check(&c, b).unwrap(), Some(true));
        let c = atom_census(spec(2, 2, 1, 3), b).unwrap();
        assert_eq!(c.observed(), 3);
        assert_eq!(ck_min_atoms_check(&c, b).unwrap(), Some(true));
        let c = atom_census(spec(2, 1, 1, 6), b).unwrap();
        assert_eq!(c.observed(), 1);
        assert_eq!(ck_min_atoms_check(&c, b).unwrap(), None);
    }

    #[test]
    fn canonical_partition_matches_orbits() {
        for q in [2, 3, 4] {
            let s = spec(q, 1, 2, 6);
            let orbits = atom_orbits(s, Budget::default()).unwrap();
            let mut by_form: Vec<Vec<TruncatedElement>> = canonical_form_partition(s, Budget::default())
                .unwrap()
                .into_values()
                .map(|(_, members)| members)
                .collect();
            by_form.sort_by_key(|o| o[0].index());
            assert_eq!(orbits, by_form);
            assert_eq!(orbits.len(), 2 * q as usize);
        }
    }

    #[test]
    fn brute_force_agreement() {
        let r = valuation_criterion_agreement(spec(2, 1, 2, 8), Budget::default()).unwrap();
        assert!(r.disagreements.is_empty());
        assert!(r.checked > 0);
    }
}
