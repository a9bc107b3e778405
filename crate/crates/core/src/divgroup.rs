//! Finite models of groups of divisibility of Bézout domains: direct sums
//! of totally ordered components `Z`, `Q` and lexicographic `Z^eta`, with
//! the pointwise partial order.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
    Z,
    /// Dense stand-in for a real component.
    Q,
    /// `Z^eta`, most significant coordinate first.
    Lex(u32),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Z => write!(f, "Z"),
            Component::Q => write!(f, "Q"),
            Component::Lex(eta) => write!(f, "Lex({eta})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub components: Vec<Component>,
}

impl GroupSpec {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.contains(&Component::Lex(0)) {
            return Err(Error::InvalidParameters("Lex(eta) needs eta >= 1".into()));
        }
        Ok(GroupSpec { components })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentValue {
    Int(i64),
    Rat(Rational64),
    Vector(Vec<i64>),
}

impl ComponentValue {
    fn is_zero(&self) -> bool {
        match self {
            ComponentValue::Int(n) => *n == 0,
            ComponentValue::Rat(r) => r.is_zero(),
            ComponentValue::Vector(v) => v.iter().all(|&x| x == 0),
        }
    }

    /// Sign in the component's total order.
    fn signum(&self) -> i8 {
        match self {
            ComponentValue::Int(n) => n.signum() as i8,
            ComponentValue::Rat(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
            ComponentValue::Vector(v) => v.iter().find(|&&x| x != 0).map_or(0, |x| x.signum() as i8),
        }
    }

    fn fits(&self, c: Component) -> bool {
        match (self, c) {
            (ComponentValue::Int(_), Component::Z) => true,
            (ComponentValue::Rat(_), Component::Q) => true,
            (ComponentValue::Vector(v), Component::Lex(eta)) => v.len() == eta as usize,
            _ => false,
        }
    }

    fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (ComponentValue::Int(a), ComponentValue::Int(b)) => ComponentValue::Int(a - b),
            (ComponentValue::Rat(a), ComponentValue::Rat(b)) => ComponentValue::Rat(a - b),
            (ComponentValue::Vector(a), ComponentValue::Vector(b)) => {
                ComponentValue::Vector(a.iter().zip(b).map(|(x, y)| x - y).collect())
            }
            _ => panic!("component kinds differ"),
        }
    }
}

/// Finite-support element of the direct sum.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OrderedGroupElement {
    /// Written as `[index, value]` pairs so the keys stay integers.
    #[serde(with = "entry_pairs")]
    pub entries: BTreeMap<usize, ComponentValue>,
}

mod entry_pairs {
    use super::ComponentValue;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, ComponentValue>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, ComponentValue>, D::Error> {
        Ok(Vec::<(usize, ComponentValue)>::deserialize(d)?.into_iter().collect())
    }
}

impl OrderedGroupElement {
    pub fn single(index: usize, value: ComponentValue) -> Self {
        let mut entries = BTreeMap::new();
        if !value.is_zero() {
            entries.insert(index, value);
        }
        OrderedGroupElement { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(ComponentValue::is_zero)
    }

    pub fn validate(&self, spec: &GroupSpec) -> Result<()> {
        for (&i, v) in &self.entries {
            match spec.components.get(i) {
                Some(&c) if v.fits(c) => {}
                _ => {
                    return Err(Error::InvalidParameters(format!(
                        "entry {i} does not fit {spec}"
                    )))
                }
            }
        }
        Ok(())
    }

    /// `g >= 0` iff every component is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|v| v.signum() >= 0)
    }

    pub fn is_positive(&self) -> bool {
        self.is_nonnegative() && !self.is_zero()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        for (&i, v) in &other.entries {
            let d = match entries.get(&i) {
                Some(a) => a.sub(v),
                None => zero_like(v).sub(v),
            };
            entries.insert(i, d);
        }
        entries.retain(|_, v| !v.is_zero());
        OrderedGroupElement { entries }
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        other.sub(self).is_nonnegative()
    }
}

fn zero_like(v: &ComponentValue) -> ComponentValue {
    match v {
        ComponentValue::Int(_) => ComponentValue::Int(0),
        ComponentValue::Rat(_) => ComponentValue::Rat(Rational64::zero()),
        ComponentValue::Vector(x) => ComponentValue::Vector(vec![0; x.len()]),
    }
}

/// Least positive element of a component, if there is one.
pub fn component_atom(c: Component) -> Option<ComponentValue> {
    match c {
        Component::Z => Some(ComponentValue::Int(1)),
        Component::Q => None,
        Component::Lex(eta) => {
            let mut v = vec![0; eta as usize];
            v[eta as usize - 1] = 1;
            Some(ComponentValue::Vector(v))
        }
    }
}

/// One atom per component with a least positive element.
pub fn atoms_of(spec: &GroupSpec) -> Vec<(usize, OrderedGroupElement)> {
    spec.components
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| component_atom(c).map(|a| (i, OrderedGroupElement::single(i, a))))
        .collect()
}

/// Whether `g > 0` is a finite sum of atoms.
pub fn is_sum_of_atoms(g: &OrderedGroupElement, spec: &GroupSpec) -> Result<bool> {
    g.validate(spec)?;
    if !g.is_positive() {
        return Err(Error::NotPositive);
    }
    Ok(g.entries.iter().all(|(&i, v)| match (spec.components[i], v) {
        (Component::Z, ComponentValue::Int(n)) => *n > 0,
        (Component::Lex(_), ComponentValue::Vector(x)) => {
            let (last, rest) = x.split_last().expect("eta >= 1");
            rest.iter().all(|&c| c == 0) && *last > 0
        }
        _ => false,
    }))
}

/// Number of proper convex subgroups of one component.
pub fn proper_convex_subgroup_count(c: Component) -> u32 {
    match c {
        Component::Z | Component::Q => 1,
        Component::Lex(eta) => eta,
    }
}

/// Every `g` in a coordinate box of component `i` with `0 < g < atom`;
/// empty when the atom really is least positive within the box.
pub fn atoms_below(spec: &GroupSpec, i: usize, radius: i64) -> Vec<OrderedGroupElement> {
    let c = spec.components[i];
    let Some(atom) = component_atom(c) else {
        return Vec::new();
    };
    let atom = OrderedGroupElement::single(i, atom);
    box_values(c, radius)
        .into_iter()
        .map(|v| OrderedGroupElement::single(i, v))
        .filter(|g| g.is_positive() && g.le(&atom) && *g != atom)
        .collect()
}

fn box_values(c: Component, radius: i64) -> Vec<ComponentValue> {
    match c {
        Component::Z => (-radius..=radius).map(ComponentValue::Int).collect(),
        Component::Q => (1..=radius)
            .flat_map(|den| (-radius..=radius).map(move |num| Rational64::new(num, den)))
            .map(ComponentValue::Rat)
            .collect(),
        Component::Lex(eta) => {
            let mut out = vec![Vec::new()];
            for _ in 0..eta {
                out = out
                    .into_iter()
                    .flat_map(|v: Vec<i64>| {
                        (-radius..=radius).map(move |x| {
                            let mut w = v.clone();
                            w.push(x);
                            w
                        })
                    })
                    .collect();
            }
            out.into_iter().map(ComponentValue::Vector).collect()
        }
    }
}

/// One numbered claim of the census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: String,
    /// `None` when the claim has no finite model.
    pub holds: Option<bool>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem419Report {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub eta: u32,
    pub spec: GroupSpec,
    pub atoms: u32,
    pub maximal_ideals: u32,
    pub nonzero_primes: u32,
    pub atomic: bool,
    pub furstenberg: bool,
    /// Positive element that is not a sum of atoms, when one exists.
    pub non_atomic_witness: Option<OrderedGroupElement>,
    /// Positive element with no atom below it, when one exists.
    pub non_furstenberg_witness: Option<OrderedGroupElement>,
    pub atom_minimality_verified: bool,
    pub claims: Vec<ClaimCheck>,
}

impl Theorem419Report {
    /// Every checkable claim holds.
    pub fn all_checkable_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds != Some(false))
    }
}

/// The component list for parameters `alpha <= beta <= gamma`.
pub fn theorem419_spec(alpha: u32, beta: u32, gamma: u32) -> Result<(GroupSpec, u32)> {
    if alpha == 0 || alpha > beta || beta > gamma {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= alpha <= beta <= gamma, got ({alpha}, {beta}, {gamma})"
        )));
    }
    let eta = gamma - beta + 1;
    let components = if alpha == beta && beta == gamma {
        vec![Component::Z; beta as usize]
    } else {
        let mut v = vec![Component::Lex(eta)];
        v.extend(std::iter::repeat_n(Component::Z, alpha as usize - 1));
        v.extend(std::iter::repeat_n(Component::Q, (beta - alpha) as usize));
        v
    };
    Ok((GroupSpec::new(components)?, eta))
}

/// A positive element of component `i` that is not a sum of atoms.
fn non_atomic_element(i: usize, c: Component) -> Option<OrderedGroupElement> {
    match c {
        Component::Z | Component::Lex(1) => None,
        Component::Q => Some(OrderedGroupElement::single(i, ComponentValue::Rat(Rational64::new(1, 2)))),
        Component::Lex(eta) => {
            let mut v = vec![0; eta as usize];
            v[0] = 1;
            Some(OrderedGroupElement::single(i, ComponentValue::Vector(v)))
        }
    }
}

const MINIMALITY_BOX: i64 = 2;

pub fn theorem419_census(alpha: u32, beta: u32, gamma: u32) -> Result<Theorem419Report> {
    let (spec, eta) = theorem419_spec(alpha, beta, gamma)?;
    let atoms = atoms_of(&spec);
    let maximal_ideals = spec.components.len() as u32;
    let nonzero_primes: u32 = spec.components.iter().map(|&c| proper_convex_subgroup_count(c)).sum();

    let mut non_atomic_witness = None;
    for (i, &c) in spec.components.iter().enumerate() {
        if let Some(g) = non_atomic_element(i, c) {
            if !is_sum_of_atoms(&g, &spec)? {
                non_atomic_witness = Some(g);
                break;
            }
        }
    }
    let atomic = non_atomic_witness.is_none()
        && atoms
            .iter()
            .all(|(_, a)| is_sum_of_atoms(a, &spec).unwrap_or(false));

    let non_furstenberg_witness = spec
        .components
        .iter()
        .enumerate()
        .filter(|(_, &c)| component_atom(c).is_none())
        .map(|(i, _)| OrderedGroupElement::single(i, ComponentValue::Rat(Rational64::new(1, 2))))
        .find(|g| !atoms.iter().any(|(_, a)| a.le(g)));
    let furstenberg = non_furstenberg_witness.is_none();

    let atom_minimality_verified = atoms
        .iter()
        .all(|(i, _)| atoms_below(&spec, *i, MINIMALITY_BOX).is_empty());

    let na = "not checkable at desk scale".to_string();
    let claims = vec![
        ClaimCheck {
            claim: "i".into(),
            holds: None,
            note: format!("{na}: Bezout property of the realizing domain"),
        },
        ClaimCheck {
            claim: "ii".into(),
            holds: Some(atoms.len() as u32 == alpha && atom_minimality_verified),
            note: format!("{} atoms, expected {alpha}", atoms.len()),
        },
        ClaimCheck {
            claim: "iii".into(),
            holds: Some(maximal_ideals == beta),
            note: format!("{maximal_ideals} maximal ideals, expected {beta}"),
        },
        ClaimCheck {
            claim: "iv".into(),
            holds: Some(nonzero_primes == gamma),
            note: format!("{nonzero_primes} nonzero primes, expected {gamma}"),
        },
        ClaimCheck {
            claim: "v".into(),
            holds: Some(atomic == (alpha == beta && beta == gamma)),
            note: format!("atomic = {atomic}"),
        },
        ClaimCheck {
            claim: "vi".into(),
            holds: Some(furstenberg == (alpha == beta)),
            note: format!("furstenberg = {furstenberg}"),
        },
        ClaimCheck {
            claim: "vii".into(),
            holds: None,
            note: format!("{na}: needs infinitely many maximal ideals"),
        },
    ];
    Ok(Theorem419Report {
        alpha,
        beta,
        gamma,
        eta,
        spec,
        atoms: atoms.len() as u32,
        maximal_ideals,
        nonzero_primes,
        atomic,
        furstenberg,
        non_atomic_witness,
        non_furstenberg_witness,
        atom_minimality_verified,
        claims,
    })
}

/// All triples `1 <= alpha <= beta <= gamma <= max`, in lexicographic order.
pub fn theorem419_grid(max: u32) -> Result<Vec<Theorem419Report>> {
    let triples: Vec<(u32, u32, u32)> = (1..=max)
        .flat_map(|a| (a..=max).flat_map(move |b| (b..=max).map(move |c| (a, b, c))))
        .collect();
    triples
        .into_par_iter()
        .map(|(a, b, c)| theorem419_census(a, b, c))
        .collect()
}
