//! Admissible families and the height functions built from them.
//!
//! A family `H ⊆ C∖{∅}` with `U ∈ H` is admissible when every nonempty
//! antichain `A ⊆ H` has a member `H` none of whose proper `K`-supersets fits
//! inside `⋃A`. Every proper `K`-superset of `H` contains a cover of `H`, so it
//! is enough to test the covers.

use crate::domain::IslandDomain;
use crate::error::{IslandError, Result};
use crate::height::HeightFunction;
use crate::sets::{SetFamily, Subset};

/// The layers `H⁽⁰⁾ = {U}, H⁽¹⁾, …, H⁽ʳ⁾` peeled off an admissible family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPartition {
    layers: Vec<SetFamily>,
}

impl LayerPartition {
    pub fn layers(&self) -> &[SetFamily] {
        &self.layers
    }

    /// Index `r` of the last layer.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer_of(&self, s: &Subset) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(s))
    }
}

/// Checks the shared preconditions and returns the `C`-indices of `family`.
fn candidate_indices(domain: &IslandDomain, family: &SetFamily) -> Result<Vec<usize>> {
    if family.iter().any(Subset::is_empty) {
        return Err(IslandError::EmptySetMember);
    }
    if !family.contains(&domain.universe()) {
        return Err(IslandError::MissingUniverse);
    }
    family.iter().map(|s| domain.candidate_index(s)).collect()
}

/// Calls `visit` with every nonempty antichain of `members` (as positions) and
/// its union. Stops early and returns `false` once `visit` returns `false`.
pub(crate) fn for_each_antichain(
    members: &[&Subset],
    mut visit: impl FnMut(&[usize], &Subset) -> bool,
) -> bool {
    fn extend(
        members: &[&Subset],
        start: usize,
        chosen: &mut Vec<usize>,
        union: &Subset,
        visit: &mut dyn FnMut(&[usize], &Subset) -> bool,
    ) -> bool {
        for next in start..members.len() {
            let cand = members[next];
            if chosen.iter().any(|&c| !members[c].is_incomparable(cand)) {
                continue;
            }
            chosen.push(next);
            let grown = union.union(cand);
            if !visit(chosen, &grown) || !extend(members, next + 1, chosen, &grown, visit) {
                return false;
            }
            chosen.pop();
        }
        true
    }
    let Some(first) = members.first() else {
        return true;
    };
    let empty = Subset::empty(first.universe_size());
    extend(members, 0, &mut Vec::new(), &empty, &mut visit)
}

/// No cover of the member escapes into `union`.
fn covers_escape(covers: &[Subset], union: &Subset) -> bool {
    covers.iter().all(|k| !k.is_subset(union))
}

fn check_antichains(domain: &IslandDomain, family: &SetFamily, every_member: bool) -> Result<bool> {
    let indices = candidate_indices(domain, family)?;
    let members: Vec<&Subset> = family.iter().collect();
    Ok(for_each_antichain(&members, |chain, union| {
        let mut escaping = chain
            .iter()
            .map(|&p| covers_escape(domain.candidate_covers(indices[p]), union));
        if every_member {
            escaping.all(|ok| ok)
        } else {
            escaping.any(|ok| ok)
        }
    }))
}

/// The admissibility test, via covers.
pub fn is_admissible(domain: &IslandDomain, family: &SetFamily) -> Result<bool> {
    check_antichains(domain, family, false)
}

/// Admissibility with the existential quantifier replaced by a universal one.
pub fn is_strongly_admissible(domain: &IslandDomain, family: &SetFamily) -> Result<bool> {
    check_antichains(domain, family, true)
}

/// Admissibility quantifying over every proper `K`-superset rather than just
/// covers. Needs an enumerable `K`.
pub fn is_admissible_by_supersets(domain: &IslandDomain, family: &SetFamily) -> Result<bool> {
    candidate_indices(domain, family)?;
    let k = domain
        .surroundings()
        .members()
        .ok_or(IslandError::Undecidable("superset admissibility"))?;
    let members: Vec<&Subset> = family.iter().collect();
    Ok(for_each_antichain(&members, |chain, union| {
        chain.iter().any(|&p| {
            k.iter()
                .filter(|big| members[p].is_proper_subset(big))
                .all(|big| !big.is_subset(union))
        })
    }))
}

/// Peels the layers of `family` and returns them with the canonical height
/// function `x ↦ max{i ≥ 1 : x ∈ ⋃H⁽ⁱ⁾}` (0 when `x` lies only in `U`).
///
/// The peeling stalls exactly when the family is not admissible, which is
/// reported as [`IslandError::NotAdmissible`].
pub fn canonical_height(domain: &IslandDomain, family: &SetFamily) -> Result<(LayerPartition, HeightFunction)> {
    let indices = candidate_indices(domain, family)?;
    let universe = domain.universe();
    let mut residue: Vec<(usize, &Subset)> = family
        .iter()
        .enumerate()
        .filter(|(_, s)| **s != universe)
        .map(|(p, s)| (indices[p], s))
        .collect();

    let mut layers = vec![SetFamily::from_members(domain.size(), [universe])?];
    let mut heights = vec![0u64; domain.size()];
    while !residue.is_empty() {
        let mut union = Subset::empty(domain.size());
        for (_, s) in &residue {
            union.union_with(s);
        }
        let (layer, rest): (Vec<_>, Vec<_>) = residue
            .into_iter()
            .partition(|(ci, _)| covers_escape(domain.candidate_covers(*ci), &union));
        if layer.is_empty() {
            return Err(IslandError::NotAdmissible { remaining: rest.len() });
        }
        let depth = layers.len() as u64;
        let mut family = SetFamily::new(domain.size());
        for (_, s) in layer {
            for x in s.iter() {
                heights[x] = depth;
            }
            family.insert(s.clone());
        }
        layers.push(family);
        residue = rest;
    }
    Ok((LayerPartition { layers }, HeightFunction::new(heights)))
}

/// `u ↦ |{H ∈ H : u ∈ H}| − 1`.
pub fn standard_height(family: &SetFamily) -> Result<HeightFunction> {
    if !family.contains_universe() {
        return Err(IslandError::MissingUniverse);
    }
    let n = family.universe_size();
    let mut counts = vec![0u64; n];
    for s in family.iter() {
        for x in s.iter() {
            counts[x] += 1;
        }
    }
    Ok(HeightFunction::new(counts.into_iter().map(|c| c - 1).collect()))
}
