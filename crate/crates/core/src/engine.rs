//! Pre-islands and islands of a height function.

use num_rational::Ratio;

use crate::domain::IslandDomain;
use crate::error::{IslandError, Result};
use crate::height::{normalize_heights, HeightFunction};
use crate::sets::{SetFamily, Subset};

/// Which of the two island notions to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IslandKind {
    /// Every cover has a strictly lower minimum.
    PreIsland,
    /// Every point a cover adds is strictly lower.
    Island,
}

fn check_heights(domain: &IslandDomain, h: &HeightFunction) -> Result<()> {
    if h.len() != domain.size() {
        return Err(IslandError::GroundMismatch {
            expected: domain.size(),
            found: h.len(),
        });
    }
    Ok(())
}

pub(crate) fn satisfies(kind: IslandKind, h: &HeightFunction, s: &Subset, covers: &[Subset]) -> bool {
    let Some(floor) = h.min_over(s) else {
        return false;
    };
    match kind {
        IslandKind::PreIsland => covers
            .iter()
            .all(|k| h.min_over(k).is_some_and(|m| m < floor)),
        IslandKind::Island => covers
            .iter()
            .all(|k| k.iter().filter(|&u| !s.contains(u)).all(|u| h.get(u) < floor)),
    }
}

/// Evaluates `kind` for the `index`-th member of `C`.
pub(crate) fn holds_at(domain: &IslandDomain, h: &HeightFunction, kind: IslandKind, index: usize) -> bool {
    satisfies(kind, h, domain.candidates().get(index), domain.candidate_covers(index))
}

pub fn is_kind(domain: &IslandDomain, h: &HeightFunction, s: &Subset, kind: IslandKind) -> Result<bool> {
    check_heights(domain, h)?;
    let index = domain.candidate_index(s)?;
    if s.is_empty() {
        return Err(IslandError::EmptyCandidate);
    }
    Ok(holds_at(domain, h, kind, index))
}

/// `S` is a pre-island: `min h(K) < min h(S)` for every cover `K` of `S`.
pub fn is_pre_island(domain: &IslandDomain, h: &HeightFunction, s: &Subset) -> Result<bool> {
    is_kind(domain, h, s, IslandKind::PreIsland)
}

/// `S` is an island: `h(u) < min h(S)` for every `u ∈ K∖S` of every cover `K`.
pub fn is_island(domain: &IslandDomain, h: &HeightFunction, s: &Subset) -> Result<bool> {
    is_kind(domain, h, s, IslandKind::Island)
}

/// All nonempty members of `C` that are islands of the given kind.
///
/// Panics if `h` is defined on a ground set of a different size.
pub fn system(domain: &IslandDomain, h: &HeightFunction, kind: IslandKind) -> SetFamily {
    assert_eq!(h.len(), domain.size(), "height function over the wrong ground set");
    let mut out = SetFamily::new(domain.size());
    for (i, s) in domain.candidates().iter().enumerate() {
        if holds_at(domain, h, kind, i) {
            out.insert(s.clone());
        }
    }
    out
}

pub fn pre_island_system(domain: &IslandDomain, h: &HeightFunction) -> SetFamily {
    system(domain, h, IslandKind::PreIsland)
}

pub fn island_system(domain: &IslandDomain, h: &HeightFunction) -> SetFamily {
    system(domain, h, IslandKind::Island)
}

/// Splits level sets until the height function is injective.
///
/// Each pass takes the lowest repeated value `z` with level set
/// `s₁ < … < sₘ` (ground-set order), the neighbouring values `y < z < w`
/// (or `z∓1` at the ends), and spreads the level set evenly over `(y, w)`.
/// Every (pre-)island of `h` survives, for any domain.
pub fn refine_to_injective(h: &HeightFunction) -> HeightFunction {
    let mut current = normalize_heights(h);
    loop {
        let values: Vec<i64> = current.as_slice().iter().map(|&v| v as i64).collect();
        let mut distinct = values.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let Some(pos) = distinct
            .iter()
            .position(|z| values.iter().filter(|v| *v == z).count() >= 2)
        else {
            return current;
        };
        let z = distinct[pos];
        let y = if pos == 0 { z - 1 } else { distinct[pos - 1] };
        let w = distinct.get(pos + 1).copied().unwrap_or(z + 1);
        let level: Vec<usize> = (0..values.len()).filter(|&u| values[u] == z).collect();
        let m = level.len() as i64;

        let mut refined: Vec<Ratio<i64>> = values.iter().map(|&v| Ratio::from_integer(v)).collect();
        for (i, &u) in level.iter().enumerate() {
            let step = Ratio::new(w - y, m + 1);
            refined[u] = Ratio::from_integer(y) + step * (i as i64 + 1);
        }
        // rank-compress so the next pass works on small integers again
        let mut order: Vec<Ratio<i64>> = refined.clone();
        order.sort();
        order.dedup();
        current = HeightFunction::new(
            refined
                .iter()
                .map(|r| order.binary_search(r).expect("value present") as u64)
                .collect(),
        );
    }
}
