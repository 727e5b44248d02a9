//! Island domains `(C, K)` and the cover relation of `(K, ⊆)`.
//!
//! `K` is either listed explicitly or described implicitly by a membership
//! predicate plus a cover generator. Generated domains (grids, graphs, boxes)
//! use the implicit form since their `K` grows exponentially with the board.

use std::borrow::Cow;
use std::fmt;
use std::sync::Arc;

use crate::error::{IslandError, Result};
use crate::sets::{GroundSet, SetFamily, Subset};

/// An implicitly described family `K`.
pub trait Surroundings: fmt::Debug + Send + Sync {
    fn universe_size(&self) -> usize;

    fn contains(&self, s: &Subset) -> bool;

    /// Every `K` with `s ≺ K`. Only called with `s ∈ K`.
    fn covers(&self, s: &Subset) -> Vec<Subset>;

    /// Whether overlapping members always have their union in `K`, if known.
    fn union_closed(&self) -> Option<bool> {
        None
    }

    /// Whether every cover adds exactly one point, if known.
    fn unit_covers(&self) -> Option<bool> {
        None
    }

    /// Full listing of `K`, when the generator can afford one.
    fn enumerate(&self) -> Option<Vec<Subset>> {
        None
    }
}

#[derive(Clone, Debug)]
pub enum KBackend {
    Explicit(SetFamily),
    Implicit(Arc<dyn Surroundings>),
}

impl KBackend {
    pub fn implicit<S: Surroundings + 'static>(surroundings: S) -> Self {
        KBackend::Implicit(Arc::new(surroundings))
    }

    pub fn contains(&self, s: &Subset) -> bool {
        match self {
            KBackend::Explicit(family) => family.contains(s),
            KBackend::Implicit(gen) => gen.contains(s),
        }
    }

    /// Covers of `s`, which must already be known to lie in `K`.
    fn covers_unchecked(&self, s: &Subset) -> Vec<Subset> {
        match self {
            KBackend::Explicit(family) => explicit_covers(family, s),
            KBackend::Implicit(gen) => gen.covers(s),
        }
    }

    /// The members of `K`, if they can be listed.
    pub fn members(&self) -> Option<Vec<Subset>> {
        match self {
            KBackend::Explicit(family) => Some(family.members()),
            KBackend::Implicit(gen) => gen.enumerate(),
        }
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self, KBackend::Explicit(_))
    }
}

/// Minimal proper supersets of `s` within `family`.
pub fn explicit_covers(family: &SetFamily, s: &Subset) -> Vec<Subset> {
    let above: Vec<&Subset> = family.iter().filter(|k| s.is_proper_subset(k)).collect();
    above
        .iter()
        .filter(|k| !above.iter().any(|mid| mid.is_proper_subset(k)))
        .map(|k| (*k).clone())
        .collect()
}

/// A validated island domain: `U ∈ C ⊆ K ⊆ P(U)`.
#[derive(Clone, Debug)]
pub struct IslandDomain {
    ground: GroundSet,
    candidates: SetFamily,
    surroundings: KBackend,
    // covers of each member of C, aligned with `candidates`
    cover_table: Vec<Vec<Subset>>,
}

/// Checks `U ∈ C` and `C ⊆ K` and assembles the domain.
pub fn validate_domain(candidates: SetFamily, surroundings: KBackend, ground: GroundSet) -> Result<IslandDomain> {
    IslandDomain::new(ground, candidates, surroundings)
}

impl IslandDomain {
    pub fn new(ground: GroundSet, candidates: SetFamily, surroundings: KBackend) -> Result<Self> {
        let n = ground.size();
        if candidates.universe_size() != n {
            return Err(IslandError::GroundMismatch {
                expected: n,
                found: candidates.universe_size(),
            });
        }
        let k_size = match &surroundings {
            KBackend::Explicit(f) => f.universe_size(),
            KBackend::Implicit(gen) => gen.universe_size(),
        };
        if k_size != n {
            return Err(IslandError::GroundMismatch { expected: n, found: k_size });
        }
        if !candidates.contains(&ground.universe()) {
            return Err(IslandError::MissingUniverse);
        }
        if let Some(missing) = candidates.iter().find(|c| !surroundings.contains(c)) {
            return Err(IslandError::NotSubfamily(ground.format(missing)));
        }
        let cover_table = candidates
            .iter()
            .map(|c| surroundings.covers_unchecked(c))
            .collect();
        Ok(IslandDomain {
            ground,
            candidates,
            surroundings,
            cover_table,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.size()
    }

    pub fn universe(&self) -> Subset {
        self.ground.universe()
    }

    /// The candidate family `C`.
    pub fn candidates(&self) -> &SetFamily {
        &self.candidates
    }

    /// The surroundings family `K`.
    pub fn surroundings(&self) -> &KBackend {
        &self.surroundings
    }

    pub fn candidate_index(&self, s: &Subset) -> Result<usize> {
        self.candidates
            .index_of(s)
            .ok_or_else(|| IslandError::NotInC(self.ground.format(s)))
    }

    /// Covers of the `index`-th member of `C`.
    pub fn candidate_covers(&self, index: usize) -> &[Subset] {
        &self.cover_table[index]
    }

    pub(crate) fn cover_slice(&self, s: &Subset) -> Result<Cow<'_, [Subset]>> {
        if let Some(i) = self.candidates.index_of(s) {
            return Ok(Cow::Borrowed(&self.cover_table[i]));
        }
        if !self.surroundings.contains(s) {
            return Err(IslandError::NotInK(self.ground.format(s)));
        }
        Ok(Cow::Owned(self.surroundings.covers_unchecked(s)))
    }

    /// All `K ∈ K` with `s ≺ K`.
    pub fn covers(&self, s: &Subset) -> Result<SetFamily> {
        let covers = self.cover_slice(s)?;
        SetFamily::from_members(self.size(), covers.iter().cloned())
    }

    /// Same candidates over a different `K` (revalidated).
    pub fn with_surroundings(&self, surroundings: KBackend) -> Result<Self> {
        IslandDomain::new(self.ground.clone(), self.candidates.clone(), surroundings)
    }

    /// The domain with `K` listed explicitly, when the backend can enumerate it.
    pub fn materialized(&self) -> Option<Self> {
        if self.surroundings.is_explicit() {
            return Some(self.clone());
        }
        let members = self.surroundings.members()?;
        let family = SetFamily::from_members(self.size(), members).ok()?;
        self.with_surroundings(KBackend::Explicit(family)).ok()
    }

    /// Parses a family of name lists against this domain's ground set.
    pub fn family<I, J, S>(&self, members: I) -> Result<SetFamily>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut family = SetFamily::new(self.size());
        for m in members {
            family.insert(self.ground.subset(m)?);
        }
        Ok(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn missing_universe() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let a = g.subset(["a"]).unwrap();
        let c = SetFamily::from_members(2, [a.clone()]).unwrap();
        let k = SetFamily::from_members(2, [a, g.universe()]).unwrap();
        assert_eq!(
            validate_domain(c, KBackend::Explicit(k), g).unwrap_err(),
            IslandError::MissingUniverse
        );
    }

    #[test]
    fn candidates_outside_k() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let c = SetFamily::from_members(2, [g.universe(), g.subset(["a"]).unwrap()]).unwrap();
        let k = SetFamily::from_members(2, [g.universe()]).unwrap();
        assert!(matches!(
            validate_domain(c, KBackend::Explicit(k), g),
            Err(IslandError::NotSubfamily(_))
        ));
    }

    #[test]
    fn covers_in_not_standard_fixture() {
        let d = fixtures::not_standard();
        let g = d.ground();
        let covers_of = |names: &[&str]| d.covers(&g.subset(names).unwrap()).unwrap();
        assert_eq!(covers_of(&["a"]), d.family([["a", "c"]]).unwrap());
        assert_eq!(covers_of(&["b", "c"]), d.family([["a", "b", "c", "d"]]).unwrap());
        assert!(covers_of(&["a", "b", "c", "d"]).is_empty());
        assert!(matches!(
            d.covers(&g.subset(["b"]).unwrap()),
            Err(IslandError::NotInK(_))
        ));
    }

    #[test]
    fn every_fixture_validates() {
        for (_, d) in fixtures::all() {
            assert!(d.candidates().contains(&d.universe()));
        }
    }

    #[test]
    fn empty_set_covers_are_minimal_nonempty_members() {
        let d = fixtures::fano();
        let covers = d.covers(&Subset::empty(7)).unwrap();
        assert_eq!(covers.len(), 7);
        assert!(covers.iter().all(|c| c.len() == 1));
    }

    fn random_family() -> impl Strategy<Value = (usize, Vec<u64>)> {
        (1usize..=6).prop_flat_map(|n| (Just(n), proptest::collection::vec(0u64..(1 << n), 0..12)))
    }

    fn subset_of(n: usize, bits: u64) -> Subset {
        Subset::from_indices(n, (0..n).filter(|i| bits >> i & 1 == 1))
    }

    proptest! {
        // covers are the minimal strict supersets, and every strict superset sits above one
        #[test]
        fn explicit_covers_match_interval_argument((n, raw) in random_family()) {
            let family = SetFamily::from_members(n, raw.iter().map(|&b| subset_of(n, b))).unwrap();
            for s in family.iter() {
                let covers = explicit_covers(&family, s);
                let above: Vec<&Subset> = family.iter().filter(|k| s.is_proper_subset(k)).collect();
                for c in &covers {
                    prop_assert!(s.is_proper_subset(c));
                    prop_assert!(!above.iter().any(|k| k.is_proper_subset(c)));
                }
                for k in &above {
                    prop_assert!(covers.iter().any(|c| c.is_subset(k)));
                    let minimal = !above.iter().any(|m| m.is_proper_subset(k));
                    prop_assert_eq!(minimal, covers.contains(k));
                }
            }
        }
    }
}
