//! Jacobson radical and Condition (E) diagnostics.
//!
//! Truncated rings are finite, so membership `x in J(R)` is decided by the
//! element-wise test "`y x + 1` is a unit for every `y`", run over the whole
//! ring. The infinite Euclidean rings only get panel reports.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{condition_e_witness, ConditionEWitness, RingElement};
use crate::error::{Error, Result};
use crate::rings::{enumerate_elements, Budget, ElementFilter, RingDescriptor, TruncatedElement, TruncatedSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionEStatus {
    /// Every element of a finite panel has a witness; nothing is claimed
    /// beyond the panel.
    HoldsOnPanel,
    /// A nonzero `x` with `1 + (x)` inside the units, checked over the
    /// whole ring.
    FailsWithWitness,
    /// The radical is zero, checked over the whole ring.
    ExhaustivelyHolds,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalReport {
    pub ring: RingDescriptor,
    /// Finite rings only.
    pub radical_members: Option<Vec<RingElement>>,
    pub condition_e: ConditionEStatus,
    pub witness: Option<RingElement>,
    /// Radical equals the set of elements with zero constant term.
    pub equals_nonunit_set: Option<bool>,
    /// `1 + x` is a unit for every radical member `x`.
    pub one_plus_radical_in_units: Option<bool>,
    pub panel: Vec<ConditionEWitness>,
}

fn check_square_budget(spec: TruncatedSpec, budget: Budget) -> Result<()> {
    spec.check_budget(budget)?;
    let pairs = spec.cardinality().saturating_mul(spec.cardinality());
    if pairs > budget.0 as u128 {
        return Err(Error::BudgetExceeded {
            required: pairs,
            budget: budget.0,
        });
    }
    Ok(())
}

/// The least `y` in enumeration order with `y x + 1` a nonunit.
pub fn radical_counterexample(x: &TruncatedElement, budget: Budget) -> Result<Option<TruncatedElement>> {
    let spec = x.spec();
    let one = TruncatedElement::one(spec);
    Ok(enumerate_elements(spec, ElementFilter::All, budget)?.find(|y| !y.mul(x).add(&one).is_unit()))
}

pub fn in_jacobson_radical(x: &TruncatedElement, budget: Budget) -> Result<bool> {
    Ok(radical_counterexample(x, budget)?.is_none())
}

/// Exhaustive radical of a truncated ring.
pub fn jacobson_radical(spec: TruncatedSpec, budget: Budget) -> Result<RadicalReport> {
    check_square_budget(spec, budget)?;
    let all: Vec<TruncatedElement> = enumerate_elements(spec, ElementFilter::All, budget)?.collect();
    let one = TruncatedElement::one(spec);
    let members: Vec<TruncatedElement> = all
        .par_iter()
        .filter(|x| all.iter().all(|y| y.mul(x).add(&one).is_unit()))
        .cloned()
        .collect();
    let equals_nonunit_set = members.len() == all.iter().filter(|x| !x.is_unit()).count()
        && members.iter().all(|x| !x.is_unit());
    let one_plus = members.iter().all(|x| x.add(&one).is_unit());
    let witness = members.iter().find(|x| !x.is_zero()).cloned();
    let condition_e = if witness.is_some() {
        ConditionEStatus::FailsWithWitness
    } else {
        ConditionEStatus::ExhaustivelyHolds
    };
    Ok(RadicalReport {
        ring: RingDescriptor::Truncated(spec),
        radical_members: Some(members.into_iter().map(RingElement::Truncated).collect()),
        condition_e,
        witness: witness.map(RingElement::Truncated),
        equals_nonunit_set: Some(equals_nonunit_set),
        one_plus_radical_in_units: Some(one_plus),
        panel: Vec::new(),
    })
}

/// Witnesses for a finite panel of nonzero elements of a Euclidean ring.
pub fn condition_e_panel(ring: RingDescriptor, panel: &[RingElement]) -> Result<RadicalReport> {
    if !ring.is_euclidean() {
        return Err(Error::UnsupportedRing {
            ring: ring.to_string(),
        });
    }
    let mut witnesses = Vec::with_capacity(panel.len());
    for x in panel {
        if x.ring() != ring {
            return Err(Error::RingMismatch {
                left: ring.to_string(),
                right: x.ring().to_string(),
            });
        }
        witnesses.push(condition_e_witness(x)?);
    }
    Ok(RadicalReport {
        ring,
        radical_members: None,
        condition_e: ConditionEStatus::HoldsOnPanel,
        witness: None,
        equals_nonunit_set: None,
        one_plus_radical_in_units: None,
        panel: witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(q: u16, d: u8, e: u8, n: u8) -> TruncatedSpec {
        TruncatedSpec::new(q, d, e, n).unwrap()
    }

    #[test]
    fn membership_examples() {
        let s = spec(2, 1, 2, 6);
        let b = Budget::default();
        assert!(in_jacobson_radical(&TruncatedElement::t_pow(s, 2).unwrap(), b).unwrap());
        let one = TruncatedElement::one(s);
        assert_eq!(radical_counterexample(&one, b).unwrap(), Some(one.clone()));
        assert!(in_jacobson_radical(&TruncatedElement::zero(s), b).unwrap());
    }

    #[test]
    fn radical_sizes() {
        for (s, size) in [(spec(2, 1, 2, 6), 16), (spec(3, 1, 2, 6), 81), (spec(2, 1, 1, 4), 8)] {
            let r = jacobson_radical(s, Budget::default()).unwrap();
            assert_eq!(r.radical_members.as_ref().unwrap().len(), size);
            assert_eq!(r.equals_nonunit_set, Some(true));
            assert_eq!(r.one_plus_radical_in_units, Some(true));
            assert_eq!(r.condition_e, ConditionEStatus::FailsWithWitness);
        }
        let r = jacobson_radical(spec(2, 1, 2, 6), Budget::default()).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "t^2");
    }

    #[test]
    fn panels() {
        let xs: Vec<RingElement> = [1, -1, 2, -2, 1_000_000].into_iter().map(RingElement::int).collect();
        let r = condition_e_panel(RingDescriptor::Integers, &xs).unwrap();
        assert_eq!(r.condition_e, ConditionEStatus::HoldsOnPanel);
        assert!(r.panel.iter().all(ConditionEWitness::verify));
        let xs = vec![
            RingElement::gaussian(1, 0),
            RingElement::gaussian(0, 1),
            RingElement::gaussian(3, 4),
        ];
        let r = condition_e_panel(RingDescriptor::GaussianIntegers, &xs).unwrap();
        let values: Vec<RingElement> = r.panel.iter().map(|w| w.value.clone()).collect();
        assert_eq!(values, [2, 2, 26].map(|v| RingElement::gaussian(v, 0)));
        let t = RingDescriptor::Truncated(spec(2, 1, 2, 6));
        assert!(condition_e_panel(t, &[]).is_err());
        assert!(matches!(
            condition_e_panel(RingDescriptor::Integers, &[RingElement::int(0)]),
            Err(Error::ZeroElement)
        ));
    }
}
