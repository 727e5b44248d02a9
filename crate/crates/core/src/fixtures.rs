//! Small named domains used throughout the tests and the acceptance suite.

use crate::domain::{IslandDomain, KBackend};
use crate::height::HeightFunction;
use crate::library::{projective_plane_domain, source_set_domain};
use crate::sets::{GroundSet, SetFamily};

fn explicit(names: &[&str], c: &[&[&str]], extra_k: &[&[&str]]) -> IslandDomain {
    let ground = GroundSet::new(names.iter().copied()).expect("distinct names");
    let family = |sets: &[&[&str]]| {
        let mut f = SetFamily::new(ground.size());
        for s in sets {
            f.insert(ground.subset(s.iter().copied()).expect("known names"));
        }
        f
    };
    let candidates = family(c);
    let mut k = candidates.clone();
    for s in family(extra_k).iter() {
        k.insert(s.clone());
    }
    IslandDomain::new(ground, candidates, KBackend::Explicit(k)).expect("valid fixture")
}

/// Four overlapping pairs on five points; every pair is a pre-island of
/// [`not_cd_heights`] even though the family is not laminar.
pub fn not_cd() -> IslandDomain {
    explicit(
        &["a", "b", "c", "d", "e"],
        &[&["a", "b"], &["a", "c"], &["b", "d"], &["c", "d"], &["a", "b", "c", "d", "e"]],
        &[],
    )
}

/// `a, b, c, d ↦ 1`, `e ↦ 0`.
pub fn not_cd_heights() -> HeightFunction {
    HeightFunction::new(vec![1, 1, 1, 1, 0])
}

/// `C = {{a}, {b,c}, U}`, `K = C ∪ {{a,c}}`: the standard height function
/// fails to realise `C` as a pre-island system.
pub fn not_standard() -> IslandDomain {
    explicit(&["a", "b", "c", "d"], &[&["a"], &["b", "c"], &["a", "b", "c", "d"]], &[&["a", "c"]])
}

/// [`not_standard`] with `{a,b,c}` added to `K`: connective and CDW but `C`
/// is not admissible.
pub fn cdnt() -> IslandDomain {
    explicit(
        &["a", "b", "c", "d"],
        &[&["a"], &["b", "c"], &["a", "b", "c", "d"]],
        &[&["a", "c"], &["a", "b", "c"]],
    )
}

/// The Fano plane with its lines, points and `∅`.
pub fn fano() -> IslandDomain {
    projective_plane_domain(2).expect("2 is prime")
}

/// The 1×3 board: all intervals of `c1, c2, c3`.
pub fn seg3() -> IslandDomain {
    explicit(
        &["c1", "c2", "c3"],
        &[&["c1"], &["c2"], &["c3"], &["c1", "c2"], &["c2", "c3"], &["c1", "c2", "c3"]],
        &[],
    )
}

/// Source sets of `a → b → c ← d ← e`; its δ is not symmetric.
pub fn digraph() -> IslandDomain {
    let ground = GroundSet::new(["a", "b", "c", "d", "e"]).expect("distinct names");
    source_set_domain(ground, &[(0, 1), (1, 2), (3, 2), (4, 3)]).expect("small digraph")
}

pub fn all() -> Vec<(&'static str, IslandDomain)> {
    vec![
        ("not-cd", not_cd()),
        ("not-standard", not_standard()),
        ("cdnt", cdnt()),
        ("fano", fano()),
        ("seg3", seg3()),
        ("digraph", digraph()),
    ]
}
