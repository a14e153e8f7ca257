//! Deterministic builders for known-valid systems, seeded shuffles of direct
//! unions, and mutations that break exactly one axiom.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closure::{PropertyIndex, Sps, StateIndex, StateRoster};
use crate::decomposition::{direct_union, product_cap};
use crate::error::{Error, Result};
use crate::instance::{RawInstance, RawProperty};
use crate::ortho::{check_antitone, check_complement, check_involution, check_ortho_cartan, validate_ortho, OrthoSps};
use crate::rng::{Seed, SplitMix64};
use crate::stateset::{StateSet, MAX_STATES};

/// The power set of `n` states with set complement: the fully classical
/// system. States are labelled `s1..sn`.
pub fn gen_boolean(n: usize) -> Result<OrthoSps> {
    if n == 0 {
        return Err(Error::EmptyRoster);
    }
    if n > MAX_STATES {
        return Err(Error::CapExceeded { what: "state roster", size: n as u128, max: MAX_STATES as u128 });
    }
    let cap = product_cap();
    if n >= 127 || 1u128 << n > cap {
        return Err(Error::CapExceeded { what: "property family", size: 1u128 << n.min(127), max: cap });
    }
    let roster = StateRoster::numbered("s", 1, n)?;
    let full = roster.full();
    let sps = Sps::new(roster, (0..1u64 << n).map(StateSet::from_bits))?;
    let partner = (0..sps.len())
        .map(|a| sps.index_of(sps.kappa(a).complement_in(full)).expect("power set"))
        .collect();
    validate_ortho(sps, partner)
}

/// The horizontal sum of `k` four-element Boolean blocks: states
/// `p1, q1, .., pk, qk`, properties ∅, Σ and every singleton, with
/// `{pi} ↔ {qi}`. Its only classical properties are ∅ and Σ.
pub fn gen_mo(k: usize) -> Result<OrthoSps> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("MO_k needs k ≥ 2, got {k}")));
    }
    if 2 * k > MAX_STATES {
        return Err(Error::CapExceeded { what: "state roster", size: 2 * k as u128, max: MAX_STATES as u128 });
    }
    let roster = StateRoster::new((1..=k).flat_map(|i| [format!("p{i}"), format!("q{i}")]))?;
    let full = roster.full();
    let sets = std::iter::once(StateSet::empty())
        .chain((0..2 * k).map(StateSet::singleton))
        .chain(std::iter::once(full));
    let sps = Sps::new(roster, sets)?;
    let partner = (0..sps.len())
        .map(|a| {
            let set = sps.kappa(a);
            let image = match set.len() {
                1 => StateSet::singleton(set.first().unwrap() ^ 1),
                _ => set.complement_in(full),
            };
            sps.index_of(image).expect("MO_k family")
        })
        .collect();
    validate_ortho(sps, partner)
}

/// [`compose_shuffled`] together with the origin `(part, state)` of every
/// state of the result.
pub fn compose_shuffled_traced(parts: &[OrthoSps], seed: Seed) -> Result<(OrthoSps, Vec<(usize, StateIndex)>)> {
    let union = direct_union(parts)?;
    let sps = union.osps.sps();
    let n = sps.state_count();
    let mut rng = SplitMix64::new(seed);

    // new position k holds old state order[k]
    let mut order: Vec<StateIndex> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut position = vec![0; n];
    for (k, &old) in order.iter().enumerate() {
        position[old] = k;
    }

    let mut props: Vec<PropertyIndex> = (0..sps.len()).collect();
    rng.shuffle(&mut props);
    let mut slot = vec![0; sps.len()];
    for (i, &a) in props.iter().enumerate() {
        slot[a] = i;
    }
    let raw = RawInstance {
        states: (0..n).map(|k| format!("x{k}")).collect(),
        properties: props
            .iter()
            .map(|&a| RawProperty {
                name: None,
                kappa: sps.kappa(a).map_states(&position),
                perp: slot[union.osps.perp(a)],
            })
            .collect(),
    };
    let osps = raw.validate()?;
    let trace = order.iter().map(|&old| union.state_origin[old]).collect();
    Ok((osps, trace))
}

/// Direct union of `parts` with states and properties permuted by `seed`
/// and every label replaced, so the component structure is not visible.
pub fn compose_shuffled(parts: &[OrthoSps], seed: Seed) -> Result<OrthoSps> {
    compose_shuffled_traced(parts, seed).map(|(osps, _)| osps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationKind {
    /// Remove a property that is the intersection of two others.
    DropSet,
    /// Redirect one orthocomplement so `⊥` is no longer an involution.
    BreakInvolution,
    /// Remove one state from the top property.
    ShrinkTop,
    /// Rewire the orthocomplement so it stays involutive and antitone but
    /// breaks the complement law or the ortho-Cartan condition.
    UnpairOrtho,
}

impl MutationKind {
    pub const ALL: [MutationKind; 4] =
        [MutationKind::DropSet, MutationKind::BreakInvolution, MutationKind::ShrinkTop, MutationKind::UnpairOrtho];

    pub fn as_str(self) -> &'static str {
        match self {
            MutationKind::DropSet => "drop_set",
            MutationKind::BreakInvolution => "break_involution",
            MutationKind::ShrinkTop => "shrink_top",
            MutationKind::UnpairOrtho => "unpair_ortho",
        }
    }

    /// Validation error kinds a mutation of this kind may produce.
    pub fn expected_errors(self) -> &'static [&'static str] {
        match self {
            MutationKind::DropSet => &["NotIntersectionClosed"],
            MutationKind::BreakInvolution => &["NotInvolutive"],
            MutationKind::ShrinkTop => &["MissingTop"],
            MutationKind::UnpairOrtho => &["ComplementLawFailed", "OrthoComFailed"],
        }
    }
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MutationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MutationKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown mutation kind `{s}`")))
    }
}

/// Produces an unvalidated instance that violates the axiom targeted by
/// `kind`. Choices among several possible mutations are made by `seed`.
pub fn mutate(osps: &OrthoSps, kind: MutationKind, seed: Seed) -> Result<RawInstance> {
    let mut rng = SplitMix64::new(seed);
    let mut raw = RawInstance::from_osps(osps);
    let sps = osps.sps();
    let n = sps.len();
    let inapplicable = |reason: &str| Error::MutationInapplicable { kind: kind.as_str(), reason: reason.into() };

    match kind {
        MutationKind::DropSet => {
            let droppable: Vec<PropertyIndex> = (1..n.saturating_sub(1))
                .filter(|&x| {
                    (1..n).any(|y| {
                        y != x && (y + 1..n).any(|z| z != x && sps.kappa(y) & sps.kappa(z) == sps.kappa(x))
                    })
                })
                .collect();
            if droppable.is_empty() {
                return Err(inapplicable("no property is the intersection of two others"));
            }
            let victim = droppable[rng.below(droppable.len())];
            raw.properties.remove(victim);
            for (i, p) in raw.properties.iter_mut().enumerate() {
                if p.perp == victim {
                    p.perp = i;
                } else if p.perp > victim {
                    p.perp -= 1;
                }
            }
        }
        MutationKind::BreakInvolution => {
            let a = rng.below(n);
            let b = (a + 1 + rng.below(n - 1)) % n;
            raw.properties[a].perp = osps.perp(b);
        }
        MutationKind::ShrinkTop => {
            let top = sps.top();
            let members: Vec<StateIndex> = sps.kappa(top).iter().collect();
            let state = members[rng.below(members.len())];
            raw.properties[top].kappa = sps.kappa(top) - StateSet::singleton(state);
        }
        MutationKind::UnpairOrtho => {
            let mut candidates = unpair_candidates(osps);
            rng.shuffle(&mut candidates);
            let chosen = candidates.into_iter().find(|partner| {
                check_involution(sps, partner).is_ok()
                    && check_antitone(sps, partner).is_ok()
                    && (check_complement(sps, partner).is_err() || check_ortho_cartan(sps, partner).is_err())
            });
            let partner = chosen.ok_or_else(|| {
                inapplicable("no involutive antitone rewiring of the orthocomplement breaks the complement law")
            })?;
            for (p, q) in raw.properties.iter_mut().zip(partner) {
                p.perp = q;
            }
        }
    }
    Ok(raw)
}

/// Candidate orthocomplement tables: a complementary pair turned into two
/// fixed points, or the complement conjugated by a transposition of states.
fn unpair_candidates(osps: &OrthoSps) -> Vec<Vec<PropertyIndex>> {
    let sps = osps.sps();
    let base = osps.partner_table();
    let mut out = Vec::new();
    for a in 1..sps.top() {
        let pa = base[a];
        if a < pa {
            let mut t = base.to_vec();
            t[a] = a;
            t[pa] = pa;
            out.push(t);
        }
    }
    let states = sps.state_count();
    for i in 0..states {
        for j in i + 1..states {
            let mut swap: Vec<usize> = (0..states).collect();
            swap.swap(i, j);
            let table: Option<Vec<PropertyIndex>> =
                (0..sps.len()).map(|a| sps.index_of(sps.kappa(base[a]).map_states(&swap))).collect();
            if let Some(t) = table.filter(|t| t.as_slice() != base) {
                out.push(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::ClassicalData;

    #[test]
    fn boolean_sizes() {
        let b1 = gen_boolean(1).unwrap();
        assert_eq!((b1.state_count(), b1.len()), (1, 2));
        let b2 = gen_boolean(2).unwrap();
        assert_eq!((b2.state_count(), b2.len()), (2, 4));
        assert_eq!(gen_boolean(0), Err(Error::EmptyRoster));
        assert!(matches!(gen_boolean(40), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn mo_sizes() {
        for k in 2..6 {
            let mo = gen_mo(k).unwrap();
            assert_eq!((mo.state_count(), mo.len()), (2 * k, 2 * k + 2));
            assert_eq!(ClassicalData::new(&mo).unwrap().omega().len(), 1);
        }
        assert!(matches!(gen_mo(1), Err(Error::InvalidParameter(_))));
        assert!(matches!(gen_mo(33), Err(Error::CapExceeded { .. })));
        assert_eq!(gen_mo(2).unwrap().sps().roster().names(), ["p1", "q1", "p2", "q2"]);
    }

    #[test]
    fn mo2_atoms_orthogonal_only_to_partner() {
        let mo = gen_mo(2).unwrap();
        for p in 0..4 {
            for q in 0..4 {
                assert_eq!(mo.orthogonal(p, q).unwrap(), p ^ 1 == q, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn shuffle_is_reproducible() {
        let parts = [gen_mo(2).unwrap(), gen_mo(2).unwrap()];
        let a = compose_shuffled(&parts, Seed(42)).unwrap();
        let b = compose_shuffled(&parts, Seed(42)).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.state_count(), a.len()), (8, 36));
        assert!(a.sps().roster().names().iter().all(|n| n.starts_with('x')));
    }

    #[test]
    fn mutation_kind_names_round_trip() {
        for kind in MutationKind::ALL {
            assert_eq!(kind.as_str().parse::<MutationKind>().unwrap(), kind);
        }
        assert!("nope".parse::<MutationKind>().is_err());
    }

    #[test]
    fn inapplicable_mutations() {
        let b1 = gen_boolean(1).unwrap();
        for kind in [MutationKind::DropSet, MutationKind::UnpairOrtho] {
            assert!(matches!(mutate(&b1, kind, Seed(1)), Err(Error::MutationInapplicable { .. })));
        }
        // atoms of MO_k are never intersections of two other properties
        assert!(matches!(
            mutate(&gen_mo(2).unwrap(), MutationKind::DropSet, Seed(1)),
            Err(Error::MutationInapplicable { .. })
        ));
    }
}
