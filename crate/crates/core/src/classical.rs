//! Classical properties, classical states and the classical state property
//! system they form.

use std::collections::HashSet;

use crate::closure::{PropertyIndex, Sps, StateIndex, StateRoster};
use crate::error::{Error, Result};
use crate::ortho::{validate_ortho, OrthoSps};
use crate::report::{Finding, Report, SamplingConfig};
use crate::rng::{Seed, SplitMix64};
use crate::stateset::StateSet;

/// `κ(a) ∪ κ(a^⊥) = Σ`.
pub fn is_classical(osps: &OrthoSps, a: PropertyIndex) -> Result<bool> {
    osps.sps().check_property(a)?;
    Ok(classical_at(osps, a))
}

fn classical_at(osps: &OrthoSps, a: PropertyIndex) -> bool {
    (osps.kappa(a) | osps.kappa(osps.perp(a))) == osps.sps().full()
}

/// The set `C` of classical properties, in canonical order.
pub fn classical_properties(osps: &OrthoSps) -> Vec<PropertyIndex> {
    (0..osps.len()).filter(|&a| classical_at(osps, a)).collect()
}

/// `ω(p)`: the meet of every classical property actual in state `p`.
pub fn classical_state(osps: &OrthoSps, p: StateIndex) -> Result<PropertyIndex> {
    osps.sps().check_state(p)?;
    let set = classical_properties(osps)
        .into_iter()
        .map(|a| osps.kappa(a))
        .filter(|k| k.contains(p))
        .fold(osps.sps().full(), |acc, k| acc & k);
    osps.sps()
        .index_of(set)
        .ok_or_else(|| Error::InternalTheoremViolation(format!("ω of state {p} is not a property")))
}

/// Classification of an ortho state property system into its classical part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalData {
    classical: Vec<PropertyIndex>,
    is_classical: Vec<bool>,
    omega_of: Vec<PropertyIndex>,
    omega_roster: Vec<PropertyIndex>,
    block_of: Vec<usize>,
}

impl ClassicalData {
    pub fn new(osps: &OrthoSps) -> Result<Self> {
        let classical = classical_properties(osps);
        let mut is_classical = vec![false; osps.len()];
        for &a in &classical {
            is_classical[a] = true;
        }
        let omega_of = (0..osps.state_count())
            .map(|p| classical_state(osps, p))
            .collect::<Result<Vec<_>>>()?;
        let mut omega_roster = omega_of.clone();
        omega_roster.sort_unstable();
        omega_roster.dedup();
        let block_of = omega_of
            .iter()
            .map(|w| omega_roster.binary_search(w).expect("ω is in Ω"))
            .collect();
        Ok(ClassicalData { classical, is_classical, omega_of, omega_roster, block_of })
    }

    /// The classical properties `C`.
    pub fn classical(&self) -> &[PropertyIndex] {
        &self.classical
    }

    pub fn is_classical(&self, a: PropertyIndex) -> bool {
        self.is_classical.get(a).copied().unwrap_or(false)
    }

    /// `ω(p)` for every state.
    pub fn omega_of(&self) -> &[PropertyIndex] {
        &self.omega_of
    }

    /// The classical states `Ω` as ambient properties, ordered by κ-set.
    pub fn omega(&self) -> &[PropertyIndex] {
        &self.omega_roster
    }

    /// Position in `Ω` of the classical state of `p`.
    pub fn block_of(&self, p: StateIndex) -> usize {
        self.block_of[p]
    }

    /// Position of `property` in `Ω`, if it is a classical state.
    pub fn omega_position(&self, property: PropertyIndex) -> Option<usize> {
        self.omega_roster.binary_search(&property).ok()
    }

    /// The classical Cartan map `κ_c(a) = {ω(p) | p ∈ κ(a)}` as a set of
    /// positions in `Ω`. Only defined on classical properties.
    pub fn kappa_c(&self, osps: &OrthoSps, a: PropertyIndex) -> Result<StateSet> {
        osps.sps().check_property(a)?;
        if !self.is_classical[a] {
            return Err(Error::NotClassical { property: a });
        }
        Ok(osps.kappa(a).iter().map(|p| self.block_of[p]).collect())
    }
}

/// The classical system `(Ω, C, κ_c)` with provenance back to the ambient
/// system. Roster labels are `w0`, `w1`, ... in `Ω` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalSps {
    pub osps: OrthoSps,
    /// `omega[i]` is the ambient property behind state `w{i}`.
    pub omega: Vec<PropertyIndex>,
    /// `provenance[j]` is the ambient classical property behind property `j`.
    pub provenance: Vec<PropertyIndex>,
}

pub fn classical_sps(osps: &OrthoSps) -> Result<ClassicalSps> {
    let data = ClassicalData::new(osps)?;
    classical_sps_from(osps, &data)
}

pub fn classical_sps_from(osps: &OrthoSps, data: &ClassicalData) -> Result<ClassicalSps> {
    let internal = |e: Error| Error::InternalTheoremViolation(format!("classical system: {e}"));
    let roster = StateRoster::numbered("w", 0, data.omega().len()).map_err(internal)?;
    let images = data
        .classical()
        .iter()
        .map(|&a| data.kappa_c(osps, a))
        .collect::<Result<Vec<_>>>()?;
    let props = data
        .classical()
        .iter()
        .zip(&images)
        .map(|(&a, &img)| (img, osps.sps().name(a).map(str::to_string)));
    let sps = Sps::with_names(roster, props).map_err(internal)?;

    let mut provenance = vec![0; sps.len()];
    let mut partner = vec![0; sps.len()];
    for (&a, &img) in data.classical().iter().zip(&images) {
        let local = sps.index_of(img).expect("image was inserted");
        provenance[local] = a;
        let perp_img = data.kappa_c(osps, osps.perp(a)).map_err(internal)?;
        partner[local] = sps.index_of(perp_img).ok_or_else(|| {
            Error::InternalTheoremViolation(format!(
                "κ_c of the orthocomplement of property {a} is not a classical image"
            ))
        })?;
    }
    let osps_c = validate_ortho(sps, partner).map_err(internal)?;
    Ok(ClassicalSps { osps: osps_c, omega: data.omega().to_vec(), provenance })
}

/// Subsets of `items` used to test arbitrary meets and joins: all of them up
/// to `exhaustive_limit` elements, otherwise all pairs and triples plus
/// seeded random subsets.
pub(crate) fn closure_subsets(items: &[PropertyIndex], cfg: &SamplingConfig) -> Vec<Vec<PropertyIndex>> {
    let n = items.len();
    if n <= cfg.exhaustive_limit {
        return (0u64..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect())
            .collect();
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(vec![items[i], items[j]]);
            for k in j + 1..n {
                out.push(vec![items[i], items[j], items[k]]);
            }
        }
    }
    let mut rng = SplitMix64::new(Seed(cfg.seed));
    out.extend((0..cfg.random_subsets).map(|_| rng.subset(items)));
    out
}

fn subset_positions(len: usize, cfg: &SamplingConfig) -> Vec<StateSet> {
    if len <= 16 {
        return (0u64..1 << len).map(StateSet::from_bits).collect();
    }
    let mut rng = SplitMix64::new(Seed(cfg.seed ^ 0xA5A5));
    let full = StateSet::full(len);
    let mut out = vec![StateSet::empty(), full];
    out.extend((0..cfg.random_subsets).map(|_| StateSet::from_bits(rng.next_u64()) & full));
    out
}

/// Evaluates the structural claims about `C` and `Ω`: closure of `C`,
/// atomicity of classical states, atomisticity, pairwise orthogonality of
/// distinct classical states, and `κ_c: C → P(Ω)` being a bijection with the
/// explicit preimage `⋀ {ω^⊥ | ω ∉ A}` for each `A ⊆ Ω`.
pub fn verify_classical_theorems(osps: &OrthoSps, cfg: &SamplingConfig) -> Result<Report> {
    let sps = osps.sps();
    let data = ClassicalData::new(osps)?;
    let c = data.classical();
    let omega = data.omega();
    let describe = |a: PropertyIndex| sps.describe(a);

    let mut closed = Finding::new("C is closed under meets and joins");
    for subset in closure_subsets(c, cfg) {
        let m = sps.meet(&subset)?;
        let j = sps.join(&subset)?;
        closed.record(data.is_classical(m), || format!("meet of {subset:?} = {} is not classical", describe(m)));
        closed.record(data.is_classical(j), || format!("join of {subset:?} = {} is not classical", describe(j)));
    }

    let mut perp_closed = Finding::new("C is closed under orthocomplement");
    for &a in c {
        perp_closed.record(data.is_classical(osps.perp(a)), || {
            format!("{}^⊥ is not classical", describe(a))
        });
    }

    let nonzero: Vec<PropertyIndex> = c.iter().copied().filter(|&a| a != sps.bottom()).collect();
    let mut atoms_f = Finding::new("every classical state is an atom of C");
    for &w in omega {
        let below = nonzero.iter().find(|&&x| x != w && sps.le(x, w));
        atoms_f.record(w != sps.bottom() && below.is_none(), || match below {
            Some(&x) => format!("{} lies strictly between 0 and ω = {}", describe(x), describe(w)),
            None => format!("ω = {} is the bottom property", describe(w)),
        });
    }

    let c_atoms: Vec<PropertyIndex> = nonzero
        .iter()
        .copied()
        .filter(|&a| !nonzero.iter().any(|&x| x != a && sps.le(x, a)))
        .collect();
    let mut atomistic = Finding::new("C is atomistic");
    for &a in &nonzero {
        let below: Vec<PropertyIndex> = c_atoms.iter().copied().filter(|&x| sps.le(x, a)).collect();
        let j = sps.join(&below)?;
        atomistic.record(j == a, || format!("join of atoms below {} is {}", describe(a), describe(j)));
    }

    let classical_system = classical_sps_from(osps, &data);
    let mut valid = Finding::new("classical system satisfies the ortho axioms");
    valid.record(classical_system.is_ok(), || match &classical_system {
        Err(e) => e.to_string(),
        Ok(_) => String::new(),
    });

    let mut orth = Finding::new("distinct classical states are orthogonal");
    for (i, &w) in omega.iter().enumerate() {
        for (j, &v) in omega.iter().enumerate() {
            if i == j {
                continue;
            }
            orth.record(osps.properties_orthogonal(w, v), || {
                format!("{} ≰ {}^⊥", describe(w), describe(v))
            });
            if let Ok(cs) = &classical_system {
                orth.record(cs.osps.orthogonal(i, j)?, || format!("w{i} not orthogonal to w{j}"));
            }
        }
    }

    let mut bijection = Finding::new("κ_c is a bijection from C onto P(Ω)");
    let expected = 1u128 << omega.len();
    bijection.record(c.len() as u128 == expected, || {
        format!("|C| = {} but 2^|Ω| = {expected}", c.len())
    });
    let mut seen = HashSet::new();
    for &a in c {
        let img = data.kappa_c(osps, a)?;
        bijection.record(seen.insert(img), || format!("κ_c({}) = {img:?} repeats", describe(a)));
    }

    let mut witness = Finding::new("⋀{ω^⊥ | ω ∉ A} has κ_c-image A for every A ⊆ Ω");
    let all = StateSet::full(omega.len());
    for target in subset_positions(omega.len(), cfg) {
        let outside: Vec<PropertyIndex> =
            target.complement_in(all).iter().map(|i| osps.perp(omega[i])).collect();
        let a = sps.meet(&outside)?;
        let img = data.kappa_c(osps, a);
        witness.record(img.as_ref() == Ok(&target), || {
            format!("A = {target:?} gives {} with image {img:?}", describe(a))
        });
    }

    Ok(Report::new(
        "classical structure",
        vec![closed, perp_closed, atoms_f, atomistic, valid, orth, bijection, witness],
    ))
}
