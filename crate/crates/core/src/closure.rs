//! State property systems stored as intersection-closed families of state
//! sets. The Cartan map is an order embedding, so the family is the lattice:
//! order is inclusion, meets are intersections and joins are the least
//! member containing the union.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::stateset::{StateSet, MAX_STATES};

pub type StateIndex = usize;
pub type PropertyIndex = usize;

/// Ordered list of distinct state labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateRoster {
    names: Vec<String>,
}

impl StateRoster {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyRoster);
        }
        if names.len() > MAX_STATES {
            return Err(Error::CapExceeded {
                what: "state roster",
                size: names.len() as u128,
                max: MAX_STATES as u128,
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(names.len());
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateStateLabel(name.clone()));
            }
        }
        Ok(StateRoster { names })
    }

    /// Roster labelled `{prefix}{first}`, `{prefix}{first+1}`, ...
    pub fn numbered(prefix: &str, first: usize, len: usize) -> Result<Self> {
        StateRoster::new((first..first + len).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, state: StateIndex) -> &str {
        &self.names[state]
    }

    pub fn position(&self, label: &str) -> Option<StateIndex> {
        self.names.iter().position(|n| n == label)
    }

    pub fn full(&self) -> StateSet {
        StateSet::full(self.names.len())
    }

    /// Renders a state set with labels, e.g. `{p1,q1}`.
    pub fn render(&self, set: StateSet) -> String {
        let labels: Vec<&str> = set
            .iter()
            .map(|i| self.names.get(i).map_or("?", String::as_str))
            .collect();
        format!("{{{}}}", labels.join(","))
    }
}

/// A validated state property system `(Σ, L, κ)`.
///
/// Properties are kept in canonical [`StateSet`] order, so index 0 is always
/// the bottom property (∅) and the last index is the top property (Σ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sps {
    roster: StateRoster,
    sets: Vec<StateSet>,
    names: Vec<Option<String>>,
    index: HashMap<StateSet, PropertyIndex>,
    /// `by_size[c]` is the first index whose set has at least `c` states.
    by_size: Vec<usize>,
}

impl Sps {
    /// Validates an unnamed family. See [`Sps::with_names`].
    pub fn new(roster: StateRoster, sets: impl IntoIterator<Item = StateSet>) -> Result<Self> {
        Sps::with_names(roster, sets.into_iter().map(|s| (s, None)))
    }

    /// Validates a family of state sets as a state property system.
    ///
    /// Checks run in a fixed order: state indices in range, bottom present,
    /// top present, no duplicates, closure under pairwise intersection. The
    /// intersection witness is the first offending pair in canonical order.
    pub fn with_names(
        roster: StateRoster,
        properties: impl IntoIterator<Item = (StateSet, Option<String>)>,
    ) -> Result<Self> {
        if roster.is_empty() {
            return Err(Error::EmptyRoster);
        }
        let full = roster.full();
        let mut props: Vec<(StateSet, Option<String>)> = properties.into_iter().collect();
        for (set, _) in &props {
            if !set.is_subset(full) {
                return Err(Error::IndexOutOfRange {
                    what: "state",
                    index: set.span() - 1,
                    len: roster.len(),
                });
            }
        }
        if !props.iter().any(|(s, _)| s.is_empty()) {
            return Err(Error::MissingBottom);
        }
        if !props.iter().any(|(s, _)| *s == full) {
            return Err(Error::MissingTop);
        }
        props.sort_by_key(|a| a.0);
        if let Some(w) = props.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateProperty { set: w[0].0 });
        }

        let (sets, names): (Vec<StateSet>, Vec<Option<String>>) = props.into_iter().unzip();
        let index: HashMap<StateSet, PropertyIndex> =
            sets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        for (i, &left) in sets.iter().enumerate() {
            for &right in &sets[i + 1..] {
                let intersection = left & right;
                if !index.contains_key(&intersection) {
                    return Err(Error::NotIntersectionClosed { left, right, intersection });
                }
            }
        }

        let mut by_size = vec![sets.len(); roster.len() + 2];
        for (i, s) in sets.iter().enumerate().rev() {
            by_size[s.len()] = i;
        }
        for c in (0..=roster.len()).rev() {
            by_size[c] = by_size[c].min(by_size[c + 1]);
        }

        Ok(Sps { roster, sets, names, index, by_size })
    }

    pub fn roster(&self) -> &StateRoster {
        &self.roster
    }

    pub fn state_count(&self) -> usize {
        self.roster.len()
    }

    /// Number of properties `|L|`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn bottom(&self) -> PropertyIndex {
        0
    }

    pub fn top(&self) -> PropertyIndex {
        self.sets.len() - 1
    }

    pub fn full(&self) -> StateSet {
        self.roster.full()
    }

    /// The Cartan image `κ(a)`. Panics on an out-of-range index.
    pub fn kappa(&self, a: PropertyIndex) -> StateSet {
        self.sets[a]
    }

    pub fn sets(&self) -> &[StateSet] {
        &self.sets
    }

    pub fn name(&self, a: PropertyIndex) -> Option<&str> {
        self.names[a].as_deref()
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    pub fn has_all_names(&self) -> bool {
        self.names.iter().all(Option::is_some)
    }

    /// Property whose κ-set is exactly `set`.
    pub fn index_of(&self, set: StateSet) -> Option<PropertyIndex> {
        self.index.get(&set).copied()
    }

    /// Human-readable handle for a property: its name, else its state set.
    pub fn describe(&self, a: PropertyIndex) -> String {
        match self.names.get(a).and_then(Option::as_deref) {
            Some(name) => name.to_string(),
            None => self.roster.render(self.sets[a]),
        }
    }

    pub(crate) fn check_property(&self, a: PropertyIndex) -> Result<()> {
        if a < self.sets.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { what: "property", index: a, len: self.sets.len() })
        }
    }

    pub(crate) fn check_state(&self, p: StateIndex) -> Result<()> {
        if p < self.roster.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { what: "state", index: p, len: self.roster.len() })
        }
    }

    pub fn leq(&self, a: PropertyIndex, b: PropertyIndex) -> Result<bool> {
        self.check_property(a)?;
        self.check_property(b)?;
        Ok(self.le(a, b))
    }

    /// Unchecked `κ(a) ⊆ κ(b)`.
    pub fn le(&self, a: PropertyIndex, b: PropertyIndex) -> bool {
        self.sets[a].is_subset(self.sets[b])
    }

    /// Greatest lower bound. The empty collection yields the top property.
    pub fn meet(&self, indices: &[PropertyIndex]) -> Result<PropertyIndex> {
        let mut acc = self.full();
        for &a in indices {
            self.check_property(a)?;
            acc = acc & self.sets[a];
        }
        Ok(self.member(acc))
    }

    /// Least upper bound. The empty collection yields the bottom property.
    pub fn join(&self, indices: &[PropertyIndex]) -> Result<PropertyIndex> {
        let mut acc = StateSet::empty();
        for &a in indices {
            self.check_property(a)?;
            acc = acc | self.sets[a];
        }
        Ok(self.closure_of(acc))
    }

    pub fn meet2(&self, a: PropertyIndex, b: PropertyIndex) -> PropertyIndex {
        self.member(self.sets[a] & self.sets[b])
    }

    pub fn join2(&self, a: PropertyIndex, b: PropertyIndex) -> PropertyIndex {
        self.closure_of(self.sets[a] | self.sets[b])
    }

    /// Inclusion-least property whose κ-set contains `set`.
    ///
    /// The family is intersection-closed, so the first superset met in
    /// canonical (cardinality-first) order is contained in all the others.
    pub fn closure_of(&self, set: StateSet) -> PropertyIndex {
        if let Some(&i) = self.index.get(&set) {
            return i;
        }
        let start = self.by_size[set.len().min(self.roster.len())];
        (start..self.sets.len())
            .find(|&i| set.is_subset(self.sets[i]))
            .expect("top property contains every state set")
    }

    fn member(&self, set: StateSet) -> PropertyIndex {
        *self
            .index
            .get(&set)
            .expect("intersection of properties is a property in a validated family")
    }

    /// Minimal non-bottom properties.
    pub fn atoms(&self) -> Vec<PropertyIndex> {
        (1..self.sets.len())
            .filter(|&a| (1..self.sets.len()).all(|b| b == a || !self.sets[b].is_subset(self.sets[a])))
            .collect()
    }

    /// Every non-bottom property is the join of the atoms below it.
    pub fn is_atomistic(&self) -> bool {
        let atoms = self.atoms();
        (1..self.sets.len()).all(|a| {
            let below: Vec<PropertyIndex> =
                atoms.iter().copied().filter(|&x| self.le(x, a)).collect();
            self.join(&below).expect("atoms are valid indices") == a
        })
    }

    /// Properties whose κ-set lies inside `set`.
    pub fn below_set(&self, set: StateSet) -> Vec<PropertyIndex> {
        (0..self.sets.len()).filter(|&i| self.sets[i].is_subset(set)).collect()
    }
}
