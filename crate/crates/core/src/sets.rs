//! Ground sets, subsets over a shared index space, and duplicate-free set
//! families.
//!
//! A [`Subset`] is a bitset over the indices `0..n` of a [`GroundSet`]. It does
//! not carry the names; equality is extensional on the indices, so two subsets
//! of the same ground set compare equal exactly when they have the same points.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexSet;
use smallvec::SmallVec;

use crate::error::{IslandError, Result};

const WORD: usize = 64;

/// The finite universe `U`, with point names indexed `0..size`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(IslandError::EmptyGround);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(IslandError::DuplicateName(name.clone()));
            }
        }
        Ok(GroundSet { names, index })
    }

    /// Points named `{prefix}0`, `{prefix}1`, ...
    pub fn numbered(size: usize, prefix: &str) -> Result<Self> {
        Self::new((0..size).map(|i| format!("{prefix}{i}")))
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| IslandError::UnknownName(name.to_string()))
    }

    pub fn universe(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn empty_set(&self) -> Subset {
        Subset::empty(self.size())
    }

    /// Builds a subset from point names.
    pub fn subset<I, S>(&self, names: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = Subset::empty(self.size());
        for name in names {
            s.insert(self.index_of(name.as_ref())?);
        }
        Ok(s)
    }

    /// Member names of `s` in ground-set order.
    pub fn names_of(&self, s: &Subset) -> Vec<&str> {
        s.iter().map(|i| self.name(i)).collect()
    }

    /// `{a,b,c}` rendering used in diagnostics.
    pub fn format(&self, s: &Subset) -> String {
        format!("{{{}}}", self.names_of(s).join(","))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

/// A subset of a ground set of fixed size, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    universe: usize,
    words: SmallVec<[u64; 2]>,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset {
            universe,
            words: SmallVec::from_elem(0, universe.div_ceil(WORD)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for (w, word) in s.words.iter_mut().enumerate() {
            let lo = w * WORD;
            let bits = (universe - lo).min(WORD);
            *word = if bits == WORD { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    pub fn singleton(universe: usize, point: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(point);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, points: I) -> Self {
        let mut s = Self::empty(universe);
        for p in points {
            s.insert(p);
        }
        s
    }

    /// Size of the ground set this subset lives in.
    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, point: usize) {
        assert!(point < self.universe, "point {point} out of range {}", self.universe);
        self.words[point / WORD] |= 1 << (point % WORD);
    }

    pub fn remove(&mut self, point: usize) {
        assert!(point < self.universe, "point {point} out of range {}", self.universe);
        self.words[point / WORD] &= !(1 << (point % WORD));
    }

    pub fn contains(&self, point: usize) -> bool {
        point < self.universe && self.words[point / WORD] & (1 << (point % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * WORD + tz)
            })
        })
    }

    fn zip_with(&self, other: &Subset, op: impl Fn(u64, u64) -> u64) -> Subset {
        debug_assert_eq!(self.universe, other.universe);
        Subset {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Subset) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Neither contains the other.
    pub fn is_incomparable(&self, other: &Subset) -> bool {
        !self.is_subset(other) && !other.is_subset(self)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Canonical, order-free form of a family, for set-of-families comparisons.
pub type FamilyKey = BTreeSet<Subset>;

/// A finite family of distinct subsets of one ground set, in insertion order.
#[derive(Clone)]
pub struct SetFamily {
    universe: usize,
    members: IndexSet<Subset>,
}

impl SetFamily {
    pub fn new(universe: usize) -> Self {
        SetFamily {
            universe,
            members: IndexSet::new(),
        }
    }

    /// Collects `members`, dropping duplicates. Every member must live in a
    /// ground set of size `universe`.
    pub fn from_members<I: IntoIterator<Item = Subset>>(universe: usize, members: I) -> Result<Self> {
        let mut family = SetFamily::new(universe);
        for m in members {
            family.try_insert(m)?;
        }
        Ok(family)
    }

    pub fn try_insert(&mut self, s: Subset) -> Result<bool> {
        if s.universe_size() != self.universe {
            return Err(IslandError::GroundMismatch {
                expected: self.universe,
                found: s.universe_size(),
            });
        }
        Ok(self.members.insert(s))
    }

    /// Inserts a member; panics on a ground-size mismatch.
    pub fn insert(&mut self, s: Subset) -> bool {
        self.try_insert(s).expect("subset from a different ground set")
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.members.contains(s)
    }

    pub fn index_of(&self, s: &Subset) -> Option<usize> {
        self.members.get_index_of(s)
    }

    pub fn get(&self, index: usize) -> &Subset {
        &self.members[index]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Subset> + '_ {
        self.members.iter()
    }

    pub fn members(&self) -> Vec<Subset> {
        self.members.iter().cloned().collect()
    }

    pub fn contains_universe(&self) -> bool {
        self.members.iter().any(Subset::is_full)
    }

    /// Union of all members; empty for the empty family.
    pub fn union(&self) -> Subset {
        let mut u = Subset::empty(self.universe);
        for m in &self.members {
            u.union_with(m);
        }
        u
    }

    pub fn key(&self) -> FamilyKey {
        self.members.iter().cloned().collect()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// The members that satisfy `keep`, in order.
    pub fn filtered(&self, mut keep: impl FnMut(&Subset) -> bool) -> SetFamily {
        SetFamily {
            universe: self.universe,
            members: self.members.iter().filter(|m| keep(m)).cloned().collect(),
        }
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe
            && self.len() == other.len()
            && self.members.iter().all(|m| other.contains(m))
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a Subset;
    type IntoIter = indexmap::set::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
