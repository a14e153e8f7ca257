//! JSON instance documents.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "states": ["p1", "q1"],
//!   "properties": [
//!     { "name": "bottom", "kappa": [], "perp": "top" },
//!     { "name": "top", "kappa": ["p1", "q1"], "perp": "bottom" }
//!   ]
//! }
//! ```
//!
//! `perp` is either a property name or a zero-based position in
//! `properties`. Order relations, meets and joins are never stored; they are
//! always derived from the `kappa` sets.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{RawInstance, RawProperty};
use crate::ortho::OrthoSps;
use crate::stateset::{StateSet, MAX_STATES};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerpRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kappa: Vec<String>,
    pub perp: PerpRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub format_version: String,
    pub states: Vec<String>,
    pub properties: Vec<PropertyRecord>,
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Parses a document into an unvalidated instance. Label and reference
/// resolution happen here; the axioms are checked by
/// [`RawInstance::validate`].
pub fn parse(text: &str) -> Result<RawInstance> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(syntax)?;
    match value.get("format_version") {
        Some(serde_json::Value::String(v)) if v == FORMAT_VERSION => {}
        Some(serde_json::Value::String(v)) => {
            return Err(Error::VersionMismatch { found: v.clone(), expected: FORMAT_VERSION })
        }
        Some(other) => return Err(Error::VersionMismatch { found: other.to_string(), expected: FORMAT_VERSION }),
        None => {
            return Err(Error::Syntax { line: 1, column: 1, message: "missing field `format_version`".into() })
        }
    }
    let doc: InstanceDocument = serde_json::from_str(text).map_err(syntax)?;
    from_document(&doc)
}

pub fn from_document(doc: &InstanceDocument) -> Result<RawInstance> {
    if doc.states.len() > MAX_STATES {
        return Err(Error::CapExceeded {
            what: "state roster",
            size: doc.states.len() as u128,
            max: MAX_STATES as u128,
        });
    }
    let mut labels = HashMap::with_capacity(doc.states.len());
    for (i, s) in doc.states.iter().enumerate() {
        labels.entry(s.as_str()).or_insert(i);
    }
    let mut names = HashMap::new();
    for (i, p) in doc.properties.iter().enumerate() {
        if let Some(n) = &p.name {
            names.entry(n.as_str()).or_insert(i);
        }
    }
    let properties = doc
        .properties
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let kappa = p
                .kappa
                .iter()
                .map(|l| labels.get(l.as_str()).copied().ok_or_else(|| Error::UnknownStateLabel(l.clone())))
                .collect::<Result<StateSet>>()?;
            let perp = match &p.perp {
                PerpRef::Index(j) if *j < doc.properties.len() => *j,
                PerpRef::Name(n) if names.contains_key(n.as_str()) => names[n.as_str()],
                PerpRef::Index(j) => {
                    return Err(Error::DanglingPerpReference { property: i, reference: j.to_string() })
                }
                PerpRef::Name(n) => return Err(Error::DanglingPerpReference { property: i, reference: n.clone() }),
            };
            Ok(RawProperty { name: p.name.clone(), kappa, perp })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RawInstance { states: doc.states.clone(), properties })
}

/// Canonical document for a validated system: states in roster order,
/// properties in canonical family order, `perp` by name when every property
/// has a distinct name and by position otherwise.
pub fn to_document(osps: &OrthoSps) -> InstanceDocument {
    let sps = osps.sps();
    let roster = sps.roster();
    let by_name = sps.has_all_names() && {
        let mut seen = HashSet::new();
        sps.names().iter().all(|n| seen.insert(n.as_deref()))
    };
    let properties = (0..sps.len())
        .map(|a| PropertyRecord {
            name: sps.name(a).map(str::to_string),
            kappa: sps.kappa(a).iter().map(|s| roster.name(s).to_string()).collect(),
            perp: match sps.name(osps.perp(a)) {
                Some(n) if by_name => PerpRef::Name(n.to_string()),
                _ => PerpRef::Index(osps.perp(a)),
            },
        })
        .collect();
    InstanceDocument { format_version: FORMAT_VERSION.into(), states: roster.names().to_vec(), properties }
}

pub fn serialize(osps: &OrthoSps) -> String {
    let mut text = serde_json::to_string_pretty(&to_document(osps)).expect("documents always serialize");
    text.push('\n');
    text
}

/// Parses and validates in one step.
pub fn load(text: &str) -> Result<OrthoSps> {
    parse(text)?.validate()
}
