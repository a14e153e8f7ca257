//! Unvalidated instances: what files parse into and mutations produce.

use crate::closure::{Sps, StateRoster};
use crate::error::{Error, Result};
use crate::ortho::{validate_ortho, OrthoSps};
use crate::stateset::StateSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawProperty {
    pub name: Option<String>,
    pub kappa: StateSet,
    /// Position of the orthocomplement within [`RawInstance::properties`].
    pub perp: usize,
}

/// A candidate ortho state property system in arbitrary property order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub states: Vec<String>,
    pub properties: Vec<RawProperty>,
}

impl RawInstance {
    pub fn from_osps(osps: &OrthoSps) -> Self {
        let sps = osps.sps();
        RawInstance {
            states: sps.roster().names().to_vec(),
            properties: (0..sps.len())
                .map(|a| RawProperty {
                    name: sps.name(a).map(str::to_string),
                    kappa: sps.kappa(a),
                    perp: osps.perp(a),
                })
                .collect(),
        }
    }

    /// Validates the state property system axioms, then the ortho laws.
    pub fn validate(&self) -> Result<OrthoSps> {
        self.validate_ortho_on(self.sps()?)
    }

    /// The validated family, without looking at orthocomplements.
    pub fn sps(&self) -> Result<Sps> {
        let roster = StateRoster::new(self.states.iter().cloned())?;
        Sps::with_names(roster, self.properties.iter().map(|p| (p.kappa, p.name.clone())))
    }

    /// Checks the orthocomplement table against `sps`, which must be the
    /// validated family of this instance.
    pub fn validate_ortho_on(&self, sps: Sps) -> Result<OrthoSps> {
        let mut canonical = vec![0; sps.len()];
        for (i, p) in self.properties.iter().enumerate() {
            let target = self.properties.get(p.perp).ok_or(Error::DanglingPerpReference {
                property: i,
                reference: p.perp.to_string(),
            })?;
            let at = |set| {
                sps.index_of(set)
                    .ok_or_else(|| Error::InvalidParameter("instance does not match the family".into()))
            };
            canonical[at(p.kappa)?] = at(target.kappa)?;
        }
        validate_ortho(sps, canonical)
    }
}
