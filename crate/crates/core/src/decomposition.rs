//! Nonclassical components, direct unions, and the explicit isomorphism
//! between a system and the direct union of its components.

use std::collections::HashSet;

use crate::classical::ClassicalData;
use crate::closure::{PropertyIndex, Sps, StateIndex, StateRoster};
use crate::error::{Error, Result};
use crate::ortho::{validate_ortho, OrthoSps};
use crate::report::{Finding, Report};
use crate::stateset::{StateSet, MAX_STATES};

/// Default cap on the number of properties a direct union may materialize.
pub const DEFAULT_PRODUCT_CAP: u128 = 100_000;

/// Environment variable overriding [`DEFAULT_PRODUCT_CAP`].
pub const PRODUCT_CAP_ENV: &str = "ORTHOSPS_MAX_PROPERTIES";

pub fn product_cap() -> u128 {
    std::env::var(PRODUCT_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_PRODUCT_CAP)
}

fn internal(context: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::InternalTheoremViolation(format!("{context}: {e}"))
}

/// The part of a system below one classical state `ω`, with relative
/// orthocomplement `a ↦ a^⊥ ∧ ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub osps: OrthoSps,
    /// Ambient property index of `ω`.
    pub omega: PropertyIndex,
    /// Component property → ambient property.
    pub prop_embedding: Vec<PropertyIndex>,
    /// Component state → ambient state.
    pub state_embedding: Vec<StateIndex>,
}

pub fn component(osps: &OrthoSps, omega: PropertyIndex) -> Result<Component> {
    osps.sps().check_property(omega)?;
    let data = ClassicalData::new(osps)?;
    component_with(osps, &data, omega)
}

pub fn component_with(osps: &OrthoSps, data: &ClassicalData, omega: PropertyIndex) -> Result<Component> {
    if data.omega_position(omega).is_none() {
        return Err(Error::NotAClassicalState { property: omega });
    }
    let sps = osps.sps();
    let block = sps.kappa(omega);
    let state_embedding: Vec<StateIndex> = block.iter().collect();
    let mut local = vec![usize::MAX; sps.state_count()];
    for (i, &s) in state_embedding.iter().enumerate() {
        local[s] = i;
    }
    let roster = StateRoster::new(state_embedding.iter().map(|&s| sps.roster().name(s).to_string()))
        .map_err(internal("component roster"))?;

    let members = sps.below_set(block);
    let local_sets: Vec<StateSet> = members.iter().map(|&a| sps.kappa(a).map_states(&local)).collect();
    let csps = Sps::with_names(
        roster,
        local_sets.iter().zip(&members).map(|(&s, &a)| (s, sps.name(a).map(str::to_string))),
    )
    .map_err(internal("component family"))?;

    let mut prop_embedding = vec![0; csps.len()];
    let mut partner = vec![0; csps.len()];
    for (&a, &set) in members.iter().zip(&local_sets) {
        let i = csps.index_of(set).expect("member was inserted");
        prop_embedding[i] = a;
        let relative = sps.meet2(osps.perp(a), omega);
        partner[i] = csps
            .index_of(sps.kappa(relative).map_states(&local))
            .expect("a^⊥ ∧ ω lies below ω");
    }
    let osps_c = validate_ortho(csps, partner).map_err(internal("component orthocomplement"))?;
    Ok(Component { osps: osps_c, omega, prop_embedding, state_embedding })
}

/// One component per classical state, in `Ω` order.
pub fn components(osps: &OrthoSps) -> Result<Vec<Component>> {
    let data = ClassicalData::new(osps)?;
    components_with(osps, &data)
}

pub fn components_with(osps: &OrthoSps, data: &ClassicalData) -> Result<Vec<Component>> {
    data.omega().iter().map(|&w| component_with(osps, data, w)).collect()
}

/// The direct union of ortho state property systems: states are the tagged
/// disjoint union, properties are all tuples of component properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectUnion {
    pub osps: OrthoSps,
    pub component_count: usize,
    /// State → (part, state within the part).
    pub state_origin: Vec<(usize, StateIndex)>,
    /// Property → one property index per part.
    pub prop_tuple: Vec<Vec<PropertyIndex>>,
    /// First union state of each part.
    pub state_offsets: Vec<usize>,
}

impl DirectUnion {
    /// Union property whose tuple is `tuple`.
    pub fn property_of(&self, tuple: &[PropertyIndex]) -> Option<PropertyIndex> {
        self.prop_tuple.iter().position(|t| t == tuple)
    }
}

pub fn direct_union(parts: &[OrthoSps]) -> Result<DirectUnion> {
    direct_union_with_cap(parts, product_cap())
}

/// Materializes the direct union of `parts`. State labels become
/// `{part}:{label}` with zero-based part positions.
pub fn direct_union_with_cap(parts: &[OrthoSps], cap: u128) -> Result<DirectUnion> {
    if parts.is_empty() {
        return Err(Error::EmptyPartsList);
    }
    let size = parts.iter().map(|p| p.len() as u128).fold(1u128, u128::saturating_mul);
    if size > cap {
        return Err(Error::ProductTooLarge { size, cap });
    }
    let states: usize = parts.iter().map(OrthoSps::state_count).sum();
    if states > MAX_STATES {
        return Err(Error::CapExceeded {
            what: "direct union roster",
            size: states as u128,
            max: MAX_STATES as u128,
        });
    }

    let mut labels = Vec::with_capacity(states);
    let mut state_origin = Vec::with_capacity(states);
    let mut state_offsets = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        state_offsets.push(labels.len());
        for (s, name) in part.sps().roster().names().iter().enumerate() {
            labels.push(format!("{i}:{name}"));
            state_origin.push((i, s));
        }
    }
    let roster = StateRoster::new(labels)?;

    let kappa_of = |tuple: &[PropertyIndex]| {
        tuple
            .iter()
            .enumerate()
            .fold(StateSet::empty(), |acc, (i, &a)| acc | parts[i].kappa(a).shifted(state_offsets[i]))
    };

    let size = size as usize;
    let mut tuples = Vec::with_capacity(size);
    let mut tuple = vec![0; parts.len()];
    for _ in 0..size {
        tuples.push(tuple.clone());
        for i in (0..parts.len()).rev() {
            tuple[i] += 1;
            if tuple[i] < parts[i].len() {
                break;
            }
            tuple[i] = 0;
        }
    }

    let sps = Sps::new(roster, tuples.iter().map(|t| kappa_of(t))).map_err(internal("direct union family"))?;
    let mut prop_tuple = vec![Vec::new(); sps.len()];
    let mut partner = vec![0; sps.len()];
    for t in tuples {
        let u = sps.index_of(kappa_of(&t)).expect("tuple was inserted");
        let perp: Vec<PropertyIndex> = t.iter().enumerate().map(|(i, &a)| parts[i].perp(a)).collect();
        partner[u] = sps.index_of(kappa_of(&perp)).expect("every tuple is present");
        prop_tuple[u] = t;
    }
    let osps = validate_ortho(sps, partner).map_err(internal("direct union orthocomplement"))?;
    Ok(DirectUnion { osps, component_count: parts.len(), state_origin, prop_tuple, state_offsets })
}

/// A pair of maps between two systems: `m` sends source states to target
/// states, `n` sends target properties back to source properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismPair {
    pub m: Vec<StateIndex>,
    pub n: Vec<PropertyIndex>,
}

impl MorphismPair {
    pub fn identity(osps: &OrthoSps) -> Self {
        MorphismPair { m: (0..osps.state_count()).collect(), n: (0..osps.len()).collect() }
    }
}

/// Everything produced by decomposing a system.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub classical: ClassicalData,
    pub components: Vec<Component>,
    pub union: DirectUnion,
    /// From the input system (source) to the direct union (target).
    pub pair: MorphismPair,
}

/// Builds the direct union of the nonclassical components together with
/// `m: p ↦ p` (each state to its tagged copy in its block) and
/// `n: (a_ω) ↦ ⋁ a_ω`, the latter computed as the property whose κ-set is
/// the union of the component κ-sets.
pub fn decomposition_morphism(osps: &OrthoSps) -> Result<Decomposition> {
    let classical = ClassicalData::new(osps)?;
    let components = components_with(osps, &classical)?;
    let parts: Vec<OrthoSps> = components.iter().map(|c| c.osps.clone()).collect();
    let union = direct_union(&parts)?;

    let mut m = vec![0; osps.state_count()];
    for (b, comp) in components.iter().enumerate() {
        for (local, &s) in comp.state_embedding.iter().enumerate() {
            m[s] = union.state_offsets[b] + local;
        }
    }

    let sps = osps.sps();
    let n = union
        .prop_tuple
        .iter()
        .map(|tuple| {
            let set = tuple
                .iter()
                .zip(&components)
                .fold(StateSet::empty(), |acc, (&a, comp)| acc | sps.kappa(comp.prop_embedding[a]));
            sps.index_of(set).ok_or_else(|| {
                Error::InternalTheoremViolation(format!(
                    "union {} of a component tuple is not a property",
                    sps.roster().render(set)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Decomposition { classical, components, union, pair: MorphismPair { m, n } })
}

fn is_bijection(map: &[usize], domain: usize, codomain: usize) -> std::result::Result<(), String> {
    if map.len() != domain {
        return Err(format!("defined on {} of {domain} elements", map.len()));
    }
    if domain != codomain {
        return Err(format!("domain has {domain} elements, codomain {codomain}"));
    }
    let mut seen = HashSet::with_capacity(domain);
    for (x, &y) in map.iter().enumerate() {
        if y >= codomain {
            return Err(format!("{x} ↦ {y} is out of range"));
        }
        if !seen.insert(y) {
            return Err(format!("{y} is hit twice (again by {x})"));
        }
    }
    Ok(())
}

/// Checks that `pair` is an isomorphism from `source` to `target` that also
/// preserves orthocomplements:
/// `m(p) ∈ κ'(a) ⇔ p ∈ κ(n(a))` for every state `p` and target property `a`,
/// and `n(a^⊥) = n(a)^⊥`.
pub fn verify_morphism(pair: &MorphismPair, source: &OrthoSps, target: &OrthoSps) -> Report {
    let mut m_bij = Finding::new("m is a bijection");
    let m_result = is_bijection(&pair.m, source.state_count(), target.state_count());
    m_bij.record(m_result.is_ok(), || m_result.clone().unwrap_err());

    let mut n_bij = Finding::new("n is a bijection");
    let n_result = is_bijection(&pair.n, target.len(), source.len());
    n_bij.record(n_result.is_ok(), || n_result.clone().unwrap_err());

    let src = source.sps();
    let tgt = target.sps();
    let mut membership = Finding::new("m(p) ∈ κ'(a) ⇔ p ∈ κ(n(a))");
    let mut perp = Finding::new("n(a^⊥) = n(a)^⊥");
    let maps_total = pair.m.len() == source.state_count()
        && pair.n.len() == target.len()
        && pair.m.iter().all(|&s| s < target.state_count())
        && pair.n.iter().all(|&a| a < source.len());
    if maps_total {
        for p in 0..source.state_count() {
            for a in 0..target.len() {
                let lhs = target.kappa(a).contains(pair.m[p]);
                let rhs = source.kappa(pair.n[a]).contains(p);
                membership.record(lhs == rhs, || {
                    format!(
                        "state {} and property {}: m(p) {} κ'(a) but p {} κ(n(a)) = {}",
                        src.roster().name(p),
                        tgt.describe(a),
                        if lhs { "∈" } else { "∉" },
                        if rhs { "∈" } else { "∉" },
                        src.describe(pair.n[a]),
                    )
                });
            }
        }
        for a in 0..target.len() {
            let lhs = pair.n[target.perp(a)];
            let rhs = source.perp(pair.n[a]);
            perp.record(lhs == rhs, || {
                format!(
                    "a = {}: n(a^⊥) = {} but n(a)^⊥ = {}",
                    tgt.describe(a),
                    src.describe(lhs),
                    src.describe(rhs)
                )
            });
        }
    } else {
        membership.record(false, || "maps are not total on the given systems".into());
        perp.record(false, || "maps are not total on the given systems".into());
    }
    Report::new("decomposition morphism", vec![m_bij, n_bij, membership, perp])
}
