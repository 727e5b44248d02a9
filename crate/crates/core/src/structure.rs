//! Independence notions, the set-to-set proximity `δ`, distant families, and
//! domain classification.

use crate::domain::{IslandDomain, KBackend};
use crate::error::{IslandError, Result};
use crate::sets::{SetFamily, Subset};

/// Every pair of members is comparable or disjoint (a laminar family).
pub fn is_cd_independent(family: &SetFamily) -> bool {
    let members: Vec<&Subset> = family.iter().collect();
    members.iter().enumerate().all(|(i, a)| {
        members[i + 1..]
            .iter()
            .all(|b| a.is_subset(b) || b.is_subset(a) || !a.intersects(b))
    })
}

/// `H ⊆ ⋃Hᵢ` forces `H ⊆ Hᵢ` for some `i`.
///
/// For laminar families this reduces to: the maximal proper members of every
/// nonempty `H` leave part of `H` uncovered.
pub fn is_weakly_independent(family: &SetFamily) -> bool {
    if is_cd_independent(family) {
        weakly_independent_laminar(family)
    } else {
        weakly_independent_general(family)
    }
}

fn weakly_independent_laminar(family: &SetFamily) -> bool {
    family.iter().filter(|h| !h.is_empty()).all(|h| {
        let inside: Vec<&Subset> = family.iter().filter(|m| m.is_proper_subset(h)).collect();
        let mut covered = Subset::empty(h.universe_size());
        for m in inside.iter().filter(|m| !inside.iter().any(|o| m.is_proper_subset(o))) {
            covered.union_with(m);
        }
        covered != *h
    })
}

// The members not containing H give the largest union that could cover H
// without any single member doing so.
fn weakly_independent_general(family: &SetFamily) -> bool {
    family.iter().filter(|h| !h.is_empty()).all(|h| {
        let mut union = Subset::empty(h.universe_size());
        for m in family.iter().filter(|m| !h.is_subset(m)) {
            union.union_with(m);
        }
        !h.is_subset(&union)
    })
}

pub fn is_cdw_independent(family: &SetFamily) -> bool {
    is_cd_independent(family) && is_weakly_independent(family)
}

/// `AδB`: some `K` with `A ≼ K` meets `B`.
pub fn delta(domain: &IslandDomain, a: &Subset, b: &Subset) -> Result<bool> {
    let ai = domain.candidate_index(a)?;
    domain.candidate_index(b)?;
    Ok(delta_at(domain, ai, b))
}

fn delta_at(domain: &IslandDomain, a_index: usize, b: &Subset) -> bool {
    domain.candidates().get(a_index).intersects(b)
        || domain.candidate_covers(a_index).iter().any(|k| k.intersects(b))
}

/// Every incomparable pair of members is distant: neither `AδB` nor `BδA`.
pub fn is_distant_family(domain: &IslandDomain, family: &SetFamily) -> Result<bool> {
    let indexed: Vec<(usize, &Subset)> = family
        .iter()
        .map(|s| domain.candidate_index(s).map(|i| (i, s)))
        .collect::<Result<_>>()?;
    Ok(indexed.iter().enumerate().all(|(p, &(ai, a))| {
        indexed[p + 1..].iter().all(|&(bi, b)| {
            !a.is_incomparable(b) || (!delta_at(domain, ai, b) && !delta_at(domain, bi, a))
        })
    }))
}

/// A pair `(A, B)` of candidates with `A∩B ≠ ∅`, `B ⊄ A`, and no `K` with
/// `A ⊂ K ⊆ A∪B`, if the domain has one.
pub fn connectivity_witness(domain: &IslandDomain) -> Option<(Subset, Subset)> {
    let c = domain.candidates();
    for (ai, a) in c.iter().enumerate() {
        for b in c.iter() {
            if !a.intersects(b) || b.is_subset(a) {
                continue;
            }
            let joined = a.union(b);
            // a minimal K strictly between A and A∪B is a cover of A
            if !domain.candidate_covers(ai).iter().any(|k| k.is_subset(&joined)) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

pub fn is_connective(domain: &IslandDomain) -> bool {
    connectivity_witness(domain).is_none()
}

/// `δ` is symmetric on the nonempty candidates.
pub fn is_delta_symmetric(domain: &IslandDomain) -> bool {
    let c = domain.candidates();
    let nonempty: Vec<usize> = (0..c.len()).filter(|&i| !c.get(i).is_empty()).collect();
    nonempty.iter().all(|&ai| {
        nonempty
            .iter()
            .all(|&bi| delta_at(domain, ai, c.get(bi)) == delta_at(domain, bi, c.get(ai)))
    })
}

/// Connective, with `δ` symmetric on nonempty candidates.
pub fn is_proximity_domain(domain: &IslandDomain) -> bool {
    is_connective(domain) && is_delta_symmetric(domain)
}

/// Overlapping members of `K` have their union in `K`. Implicit backends
/// answer from their certificate and refuse without one.
pub fn is_union_closed(domain: &IslandDomain) -> Result<bool> {
    match domain.surroundings() {
        KBackend::Explicit(k) => {
            let members: Vec<&Subset> = k.iter().collect();
            Ok(members.iter().enumerate().all(|(i, a)| {
                members[i + 1..]
                    .iter()
                    .all(|b| !a.intersects(b) || k.contains(&a.union(b)))
            }))
        }
        KBackend::Implicit(gen) => gen.union_closed().ok_or(IslandError::Undecidable("union closure")),
    }
}

/// Every cover of a nonempty candidate adds exactly one point.
pub fn has_unit_covers(domain: &IslandDomain) -> bool {
    domain.candidates().iter().enumerate().all(|(i, c)| {
        c.is_empty()
            || domain
                .candidate_covers(i)
                .iter()
                .all(|k| k.difference(c).len() == 1)
    })
}
