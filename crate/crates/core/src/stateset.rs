//! Fixed-width bit sets over state roster indices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Largest roster a [`StateSet`] can address: one machine word per set.
pub const MAX_STATES: usize = 64;

/// A subset of the state roster, stored as a single 64-bit word.
///
/// The `Ord` implementation is the canonical family order: cardinality
/// first, then lexicographic order of the sorted member indices, so that
/// `{0} < {1} < {0,1} < {0,2} < {1,2}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct StateSet(u64);

impl StateSet {
    pub const fn empty() -> Self {
        StateSet(0)
    }

    /// The full set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_STATES, "roster of {n} states exceeds {MAX_STATES}");
        if n == MAX_STATES {
            StateSet(u64::MAX)
        } else {
            StateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_STATES, "state index {i} exceeds {MAX_STATES}");
        StateSet(1u64 << i)
    }

    pub const fn from_bits(bits: u64) -> Self {
        StateSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_STATES && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        *self = *self | StateSet::singleton(i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: StateSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement relative to `universe`.
    pub fn complement_in(self, universe: StateSet) -> StateSet {
        StateSet(universe.0 & !self.0)
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member plus one (0 for the empty set).
    pub fn span(self) -> usize {
        MAX_STATES - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Applies `map` to each member. `map[i]` is the image of state `i`.
    pub fn map_states(self, map: &[usize]) -> StateSet {
        self.iter().fold(StateSet::empty(), |acc, i| acc | StateSet::singleton(map[i]))
    }

    /// Shifts every member up by `offset` positions.
    pub fn shifted(self, offset: usize) -> StateSet {
        assert!(self.span() + offset <= MAX_STATES, "shift overflows the state word");
        if self.0 == 0 {
            self
        } else {
            StateSet(self.0 << offset)
        }
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(StateSet::empty(), |acc, i| acc | StateSet::singleton(i))
    }
}

impl BitAnd for StateSet {
    type Output = StateSet;
    fn bitand(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 & rhs.0)
    }
}

impl BitOr for StateSet {
    type Output = StateSet;
    fn bitor(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 | rhs.0)
    }
}

impl Sub for StateSet {
    type Output = StateSet;
    fn sub(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 & !rhs.0)
    }
}

impl Ord for StateSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // the lowest differing index belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for StateSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}
