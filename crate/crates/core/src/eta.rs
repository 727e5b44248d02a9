//! Islands over a point-to-set proximity `η` instead of a surroundings family.
//!
//! `uηC` says the point `u` is close to the candidate `C`; the only axiom is
//! `u ∈ C ⟹ uηC`. The points close to `C` but outside it form its boundary
//! `∂C`, and `S` is an island of `h` when all of `∂S` lies strictly below `S`.

use crate::admissibility::for_each_antichain;
use crate::domain::IslandDomain;
use crate::error::{IslandError, Result};
use crate::height::HeightFunction;
use crate::library::Graph;
use crate::oracle::hereditary_families;
use crate::sets::{GroundSet, SetFamily, Subset};

/// How `η` was specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eta {
    /// `η(C)` listed per member of `C`, aligned with the candidates.
    Table(Vec<Subset>),
    /// `uηC` iff `u ∈ C` or `u` is adjacent to a member of `C`.
    Neighborhood(Graph),
}

#[derive(Clone, Debug)]
pub struct EtaDomain {
    ground: GroundSet,
    candidates: SetFamily,
    eta: Eta,
    // {u : uηC} per candidate
    reach: Vec<Subset>,
}

impl EtaDomain {
    fn assemble(ground: GroundSet, candidates: SetFamily, eta: Eta, reach: Vec<Subset>) -> Result<Self> {
        let n = ground.size();
        if candidates.universe_size() != n {
            return Err(IslandError::GroundMismatch {
                expected: n,
                found: candidates.universe_size(),
            });
        }
        if !candidates.contains(&ground.universe()) {
            return Err(IslandError::MissingUniverse);
        }
        if reach.len() != candidates.len() {
            return Err(IslandError::InvalidSpec(format!(
                "proximity table has {} rows for {} candidates",
                reach.len(),
                candidates.len()
            )));
        }
        if let Some(r) = reach.iter().find(|r| r.universe_size() != n) {
            return Err(IslandError::GroundMismatch {
                expected: n,
                found: r.universe_size(),
            });
        }
        if let Some((c, _)) = candidates.iter().zip(&reach).find(|(c, r)| !c.is_subset(r)) {
            return Err(IslandError::EtaAxiom(ground.format(c)));
        }
        Ok(EtaDomain {
            ground,
            candidates,
            eta,
            reach,
        })
    }

    /// `table[i]` lists the points close to the `i`-th candidate.
    pub fn new(ground: GroundSet, candidates: SetFamily, table: Vec<Subset>) -> Result<Self> {
        let reach = table.clone();
        EtaDomain::assemble(ground, candidates, Eta::Table(table), reach)
    }

    /// Builds the table from `(candidate index, point)` pairs. Missing
    /// members of a candidate are an axiom violation, not filled in.
    pub fn from_pairs(ground: GroundSet, candidates: SetFamily, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = ground.size();
        let mut table = vec![Subset::empty(n); candidates.len()];
        for &(i, u) in pairs {
            if i >= table.len() || u >= n {
                return Err(IslandError::InvalidSpec(format!("proximity pair ({i}, {u}) out of range")));
            }
            table[i].insert(u);
        }
        EtaDomain::new(ground, candidates, table)
    }

    /// The closed neighbourhood rule of a graph.
    pub fn graph_neighborhood(ground: GroundSet, candidates: SetFamily, graph: Graph) -> Result<Self> {
        if graph.order() != ground.size() {
            return Err(IslandError::GroundMismatch {
                expected: ground.size(),
                found: graph.order(),
            });
        }
        let reach = candidates.iter().map(|c| c.union(&graph.outer_boundary(c))).collect();
        EtaDomain::assemble(ground, candidates, Eta::Neighborhood(graph), reach)
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

    pub fn candidates(&self) -> &SetFamily {
        &self.candidates
    }

    pub fn eta(&self) -> &Eta {
        &self.eta
    }

    /// `{u : uηC}` for the `index`-th candidate.
    pub fn reach(&self, index: usize) -> &Subset {
        &self.reach[index]
    }

    pub fn is_close(&self, u: usize, index: usize) -> bool {
        self.reach[index].contains(u)
    }

    pub fn candidate_index(&self, s: &Subset) -> Result<usize> {
        self.candidates
            .index_of(s)
            .ok_or_else(|| IslandError::NotInC(self.ground.format(s)))
    }

    fn boundary_at(&self, index: usize) -> Subset {
        self.reach[index].difference(self.candidates.get(index))
    }
}

/// `∂C`: points close to `C` but outside it.
pub fn boundary(ed: &EtaDomain, c: &Subset) -> Result<Subset> {
    Ok(ed.boundary_at(ed.candidate_index(c)?))
}

/// `uηC` iff `u` lies in `C` or in a cover of `C`.
pub fn eta_from_k(domain: &IslandDomain) -> EtaDomain {
    let reach = domain
        .candidates()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut r = c.clone();
            for k in domain.candidate_covers(i) {
                r.union_with(k);
            }
            r
        })
        .collect::<Vec<_>>();
    EtaDomain::new(domain.ground().clone(), domain.candidates().clone(), reach)
        .expect("a valid island domain yields a valid proximity")
}

fn holds_at(ed: &EtaDomain, h: &HeightFunction, index: usize) -> bool {
    let Some(floor) = h.min_over(ed.candidates.get(index)) else {
        return false;
    };
    ed.boundary_at(index).iter().all(|u| h.get(u) < floor)
}

/// `h(u) < min h(S)` for every `u ∈ ∂S`.
pub fn is_island_eta(ed: &EtaDomain, h: &HeightFunction, s: &Subset) -> Result<bool> {
    if h.len() != ed.size() {
        return Err(IslandError::GroundMismatch {
            expected: ed.size(),
            found: h.len(),
        });
    }
    let index = ed.candidate_index(s)?;
    if s.is_empty() {
        return Err(IslandError::EmptyCandidate);
    }
    Ok(holds_at(ed, h, index))
}

/// Every nonempty candidate that is an island of `h`.
///
/// Panics if `h` is defined on a ground set of a different size.
pub fn island_system_eta(ed: &EtaDomain, h: &HeightFunction) -> SetFamily {
    assert_eq!(h.len(), ed.size(), "height function over the wrong ground set");
    let mut out = SetFamily::new(ed.size());
    for (i, s) in ed.candidates.iter().enumerate() {
        if holds_at(ed, h, i) {
            out.insert(s.clone());
        }
    }
    out
}

fn family_indices(ed: &EtaDomain, family: &SetFamily) -> Result<Vec<usize>> {
    if family.iter().any(Subset::is_empty) {
        return Err(IslandError::EmptySetMember);
    }
    if !family.contains(&ed.universe()) {
        return Err(IslandError::MissingUniverse);
    }
    family.iter().map(|s| ed.candidate_index(s)).collect()
}

/// Every nonempty antichain `A ⊆ H` has a member whose boundary misses `⋃A`.
pub fn eta_is_admissible(ed: &EtaDomain, family: &SetFamily) -> Result<bool> {
    let indices = family_indices(ed, family)?;
    let members: Vec<&Subset> = family.iter().collect();
    Ok(for_each_antichain(&members, |chain, union| {
        chain.iter().any(|&p| !ed.boundary_at(indices[p]).intersects(union))
    }))
}

/// A pair `(A, B)` with `A∩B ≠ ∅`, `B ⊄ A`, and no point of `B∖A` close to `A`.
pub fn eta_connectivity_witness(ed: &EtaDomain) -> Option<(Subset, Subset)> {
    let c = &ed.candidates;
    for (ai, a) in c.iter().enumerate() {
        for b in c.iter() {
            if a.intersects(b) && !b.is_subset(a) && !ed.reach[ai].intersects(&b.difference(a)) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

pub fn eta_is_connective(ed: &EtaDomain) -> bool {
    eta_connectivity_witness(ed).is_none()
}

fn delta_at(ed: &EtaDomain, a_index: usize, b: &Subset) -> bool {
    ed.reach[a_index].intersects(b)
}

/// `AδB`: some point of `B` is close to `A`.
pub fn eta_delta(ed: &EtaDomain, a: &Subset, b: &Subset) -> Result<bool> {
    let ai = ed.candidate_index(a)?;
    ed.candidate_index(b)?;
    Ok(delta_at(ed, ai, b))
}

/// `δ` is symmetric on the nonempty candidates.
pub fn eta_is_delta_symmetric(ed: &EtaDomain) -> bool {
    let c = &ed.candidates;
    let nonempty: Vec<usize> = (0..c.len()).filter(|&i| !c.get(i).is_empty()).collect();
    nonempty.iter().all(|&ai| {
        nonempty
            .iter()
            .all(|&bi| delta_at(ed, ai, c.get(bi)) == delta_at(ed, bi, c.get(ai)))
    })
}

/// Every incomparable pair of members is distant: neither `AδB` nor `BδA`.
pub fn eta_is_distant_family(ed: &EtaDomain, family: &SetFamily) -> Result<bool> {
    let indexed: Vec<(usize, &Subset)> = family
        .iter()
        .map(|s| ed.candidate_index(s).map(|i| (i, s)))
        .collect::<Result<_>>()?;
    Ok(indexed.iter().enumerate().all(|(p, &(ai, a))| {
        indexed[p + 1..].iter().all(|&(bi, b)| {
            !a.is_incomparable(b) || (!delta_at(ed, ai, b) && !delta_at(ed, bi, a))
        })
    }))
}

/// Every admissible family.
pub fn eta_admissible_families(ed: &EtaDomain) -> Result<Vec<SetFamily>> {
    hereditary_families(&ed.candidates, |f| eta_is_admissible(ed, f))
}

/// Every distant family containing `U`.
pub fn eta_distant_families(ed: &EtaDomain) -> Result<Vec<SetFamily>> {
    hereditary_families(&ed.candidates, |f| eta_is_distant_family(ed, f))
}
