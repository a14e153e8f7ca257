//! Orthocomplementation on a state property system and the ortho-Cartan
//! compatibility condition between property complements and state
//! orthogonality.

use std::sync::OnceLock;

use serde::Serialize;

use crate::closure::{PropertyIndex, Sps, StateIndex};
use crate::error::{ComplementFailure, Error, Result};
use crate::stateset::StateSet;

/// A state property system together with an orthocomplementation `a ↦ a^⊥`
/// that passed every ortho law.
///
/// Equality compares the system and the complement table; the cached
/// orthogonality relation is not part of the identity.
#[derive(Debug, Clone)]
pub struct OrthoSps {
    sps: Sps,
    partner: Vec<PropertyIndex>,
    orthogonality: OnceLock<Vec<StateSet>>,
}

impl PartialEq for OrthoSps {
    fn eq(&self, other: &Self) -> bool {
        self.sps == other.sps && self.partner == other.partner
    }
}

impl Eq for OrthoSps {}

/// Row `p` holds every `q` with `p ⊥ q`: some property `a` has `p ∈ κ(a)`
/// and `q ∈ κ(a^⊥)`.
fn orthogonality_rows(sps: &Sps, partner: &[PropertyIndex]) -> Vec<StateSet> {
    let mut rows = vec![StateSet::empty(); sps.state_count()];
    for (a, &pa) in partner.iter().enumerate() {
        let opposite = sps.kappa(pa);
        if opposite.is_empty() {
            continue;
        }
        for p in sps.kappa(a).iter() {
            rows[p] = rows[p] | opposite;
        }
    }
    rows
}

fn ortho_set_from_rows(rows: &[StateSet], full: StateSet, states: StateSet) -> StateSet {
    states.iter().fold(full, |acc, p| acc & rows[p])
}

/// Validates `partner` as an orthocomplementation of `sps`.
///
/// The laws are checked in a fixed order and the first failure is returned
/// with the smallest witness in canonical order: involution, antitone,
/// complement (`a ∧ a^⊥ = 0`, `a ∨ a^⊥ = 1`), and finally that every state
/// orthogonal to all of `κ(a)` lies in `κ(a^⊥)`.
pub fn validate_ortho(sps: Sps, partner: Vec<PropertyIndex>) -> Result<OrthoSps> {
    check_table(&sps, &partner)?;
    check_involution(&sps, &partner)?;
    check_antitone(&sps, &partner)?;
    check_complement(&sps, &partner)?;
    let rows = check_ortho_cartan(&sps, &partner)?;
    let orthogonality = OnceLock::new();
    let _ = orthogonality.set(rows);
    Ok(OrthoSps { sps, partner, orthogonality })
}

fn check_table(sps: &Sps, partner: &[PropertyIndex]) -> Result<()> {
    let n = sps.len();
    if partner.len() != n {
        return Err(Error::PartnerTableLength { expected: n, found: partner.len() });
    }
    match partner.iter().find(|&&b| b >= n) {
        Some(&bad) => Err(Error::IndexOutOfRange { what: "property", index: bad, len: n }),
        None => Ok(()),
    }
}

/// `(a^⊥)^⊥ = a` for every property.
pub fn check_involution(sps: &Sps, partner: &[PropertyIndex]) -> Result<()> {
    check_table(sps, partner)?;
    for a in 0..sps.len() {
        let back = partner[partner[a]];
        if back != a {
            return Err(Error::NotInvolutive { property: a, partner: partner[a], back });
        }
    }
    Ok(())
}

/// `a ≤ b ⇒ b^⊥ ≤ a^⊥` for every pair.
pub fn check_antitone(sps: &Sps, partner: &[PropertyIndex]) -> Result<()> {
    check_table(sps, partner)?;
    let n = sps.len();
    for lower in 0..n {
        for upper in 0..n {
            if lower != upper && sps.le(lower, upper) && !sps.le(partner[upper], partner[lower]) {
                return Err(Error::NotAntitone { lower, upper });
            }
        }
    }
    Ok(())
}

/// `a ∧ a^⊥ = 0` and `a ∨ a^⊥ = 1` for every property.
pub fn check_complement(sps: &Sps, partner: &[PropertyIndex]) -> Result<()> {
    check_table(sps, partner)?;
    for (a, &pa) in partner.iter().enumerate() {
        let detail = if sps.meet2(a, pa) != sps.bottom() {
            ComplementFailure::MeetNotBottom
        } else if sps.join2(a, pa) != sps.top() {
            ComplementFailure::JoinNotTop
        } else {
            continue;
        };
        return Err(Error::ComplementLawFailed { property: a, partner: pa, detail });
    }
    Ok(())
}

/// Every state orthogonal to all of `κ(a)` lies in `κ(a^⊥)`.
///
/// The reverse inclusion holds for any table; a failure there is reported as
/// an internal violation. Returns the orthogonality rows on success.
pub fn check_ortho_cartan(sps: &Sps, partner: &[PropertyIndex]) -> Result<Vec<StateSet>> {
    check_table(sps, partner)?;
    let rows = orthogonality_rows(sps, partner);
    let full = sps.full();
    for (a, &pa) in partner.iter().enumerate() {
        let orthogonal = ortho_set_from_rows(&rows, full, sps.kappa(a));
        let complement = sps.kappa(pa);
        if let Some(state) = (orthogonal - complement).first() {
            return Err(Error::OrthoComFailed { property: a, state });
        }
        if let Some(state) = (complement - orthogonal).first() {
            return Err(Error::InternalTheoremViolation(format!(
                "state {state} lies in the orthocomplement of property {a} \
                 but is not orthogonal to all of its states"
            )));
        }
    }
    Ok(rows)
}

impl OrthoSps {
    pub fn sps(&self) -> &Sps {
        &self.sps
    }

    pub fn into_parts(self) -> (Sps, Vec<PropertyIndex>) {
        (self.sps, self.partner)
    }

    /// `a^⊥`. Panics on an out-of-range index.
    pub fn perp(&self, a: PropertyIndex) -> PropertyIndex {
        self.partner[a]
    }

    pub fn partner_table(&self) -> &[PropertyIndex] {
        &self.partner
    }

    pub fn len(&self) -> usize {
        self.sps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sps.is_empty()
    }

    pub fn state_count(&self) -> usize {
        self.sps.state_count()
    }

    pub fn kappa(&self, a: PropertyIndex) -> StateSet {
        self.sps.kappa(a)
    }

    fn rows(&self) -> &[StateSet] {
        self.orthogonality.get_or_init(|| orthogonality_rows(&self.sps, &self.partner))
    }

    /// States orthogonal to `p`.
    pub fn orthogonal_to(&self, p: StateIndex) -> Result<StateSet> {
        self.sps.check_state(p)?;
        Ok(self.rows()[p])
    }

    pub fn orthogonal(&self, p: StateIndex, q: StateIndex) -> Result<bool> {
        self.sps.check_state(q)?;
        Ok(self.orthogonal_to(p)?.contains(q))
    }

    /// States orthogonal to every member of `states`; the full roster for ∅.
    pub fn ortho_set(&self, states: StateSet) -> Result<StateSet> {
        if !states.is_subset(self.sps.full()) {
            return Err(Error::IndexOutOfRange {
                what: "state",
                index: states.span() - 1,
                len: self.state_count(),
            });
        }
        Ok(ortho_set_from_rows(self.rows(), self.sps.full(), states))
    }

    /// Orthogonality of two properties: `a ≤ b^⊥`.
    pub fn properties_orthogonal(&self, a: PropertyIndex, b: PropertyIndex) -> bool {
        self.sps.le(a, self.partner[b])
    }

    /// Checks symmetry and irreflexivity of the orthogonality relation.
    pub fn symmetry_report(&self) -> SymmetryReport {
        let n = self.state_count();
        let rows = self.rows();
        let mut report = SymmetryReport::default();
        for p in 0..n {
            if rows[p].contains(p) {
                report.self_orthogonal.push(p);
            }
            for q in p + 1..n {
                if rows[p].contains(q) != rows[q].contains(p) {
                    report.asymmetric_pairs.push((p, q));
                }
            }
        }
        report
    }
}

/// Internal-consistency findings about the state orthogonality relation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub asymmetric_pairs: Vec<(StateIndex, StateIndex)>,
    pub self_orthogonal: Vec<StateIndex>,
}

impl SymmetryReport {
    pub fn is_clean(&self) -> bool {
        self.asymmetric_pairs.is_empty() && self.self_orthogonal.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::StateRoster;

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    fn mo2_sps() -> Sps {
        let r = StateRoster::new(["p1", "q1", "p2", "q2"]).unwrap();
        Sps::new(r, [set(&[]), set(&[0]), set(&[1]), set(&[2]), set(&[3]), set(&[0, 1, 2, 3])])
            .unwrap()
    }

    fn powerset2_sps() -> Sps {
        let r = StateRoster::new(["s1", "s2"]).unwrap();
        Sps::new(r, [set(&[]), set(&[0]), set(&[1]), set(&[0, 1])]).unwrap()
    }

    #[test]
    fn boolean_complement_is_valid() {
        let o = validate_ortho(powerset2_sps(), vec![3, 2, 1, 0]).unwrap();
        assert!(!o.orthogonal(0, 0).unwrap());
        assert!(o.orthogonal(0, 1).unwrap());
        assert_eq!(o.ortho_set(set(&[0])).unwrap(), set(&[1]));
        assert!(o.symmetry_report().is_clean());
    }

    #[test]
    fn mo2_partner_pairs() {
        // canonical order: ∅, {p1}, {q1}, {p2}, {q2}, Σ
        let o = validate_ortho(mo2_sps(), vec![5, 2, 1, 4, 3, 0]).unwrap();
        assert!(o.orthogonal(0, 1).unwrap());
        assert!(!o.orthogonal(0, 2).unwrap());
        assert_eq!(o.ortho_set(set(&[0])).unwrap(), set(&[1]));
        assert_eq!(o.ortho_set(StateSet::empty()).unwrap(), set(&[0, 1, 2, 3]));
        assert!(o.orthogonal(0, 9).is_err());
    }

    #[test]
    fn wrong_table_shape() {
        assert_eq!(
            validate_ortho(mo2_sps(), vec![5, 2, 1]),
            Err(Error::PartnerTableLength { expected: 6, found: 3 })
        );
        assert!(matches!(
            validate_ortho(mo2_sps(), vec![5, 2, 1, 4, 3, 6]),
            Err(Error::IndexOutOfRange { index: 6, .. })
        ));
    }

    #[test]
    fn involution_checked_first() {
        // ∅ ↦ Σ, Σ ↦ Σ: not involutive at ∅
        let err = validate_ortho(powerset2_sps(), vec![3, 2, 1, 3]).unwrap_err();
        assert_eq!(err, Error::NotInvolutive { property: 0, partner: 3, back: 3 });
    }

    #[test]
    fn identity_fails_antitone() {
        let err = validate_ortho(powerset2_sps(), vec![0, 1, 2, 3]).unwrap_err();
        assert_eq!(err, Error::NotAntitone { lower: 0, upper: 1 });
    }

    #[test]
    fn ortho_cartan_checked_in_isolation() {
        // Σ ↦ Σ makes every pair of states orthogonal, while ∅ ↦ ∅
        let err = check_ortho_cartan(&powerset2_sps(), &[0, 1, 2, 3]).unwrap_err();
        assert_eq!(err, Error::OrthoComFailed { property: 0, state: 0 });
        assert!(check_ortho_cartan(&powerset2_sps(), &[3, 2, 1, 0]).is_ok());
    }

    #[test]
    fn fixed_atoms_fail_complement() {
        let err = validate_ortho(powerset2_sps(), vec![3, 1, 2, 0]).unwrap_err();
        assert_eq!(
            err,
            Error::ComplementLawFailed {
                property: 1,
                partner: 1,
                detail: ComplementFailure::MeetNotBottom
            }
        );
    }
}
