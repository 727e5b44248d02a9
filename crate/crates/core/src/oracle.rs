//! Brute-force ground truth: exhaustive height enumeration, realizability and
//! maximum-system search, prime implicants, formal concepts, and random
//! domains for property suites.
//!
//! Everything here is deliberately naive and exponential.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::admissibility::is_admissible;
use crate::domain::{IslandDomain, KBackend};
use crate::engine::{system, IslandKind};
use crate::error::{IslandError, Result};
use crate::eta::EtaDomain;
use crate::height::HeightFunction;
use crate::library::ContextSpec;
use crate::sets::{FamilyKey, GroundSet, SetFamily, Subset};
use crate::structure::is_distant_family;

/// Default bound on the ground-set size for height enumeration.
pub const DEFAULT_CAP: usize = 8;

/// Largest candidate family the hereditary family search accepts.
pub const FAMILY_SEARCH_CAP: usize = 32;

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(IslandError::TooLarge { what, size, cap });
    }
    Ok(())
}

/// Set partitions of `0..n` as restricted growth strings.
struct SetPartitions {
    blocks: Vec<usize>,
    done: bool,
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.blocks.clone();
        // advance: bump the rightmost position still below 1 + max of its prefix
        let n = self.blocks.len();
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.blocks[i - 1]);
        }
        match (1..n).rev().find(|&i| self.blocks[i] <= prefix_max[i]) {
            Some(i) => {
                self.blocks[i] += 1;
                self.blocks[i + 1..].iter_mut().for_each(|b| *b = 0);
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Every normalised height function on `n` points: one per ordered set
/// partition, so the count is the Fubini number of `n`.
pub fn weak_orders_of_size(n: usize, cap: usize) -> Result<impl Iterator<Item = HeightFunction>> {
    check_cap("ground set for weak orders", n, cap)?;
    let partitions = SetPartitions {
        blocks: vec![0; n],
        done: false,
    };
    Ok(partitions.flat_map(|blocks| {
        let k = blocks.iter().max().map_or(0, |m| m + 1);
        (0..k).permutations(k).map(move |rank| {
            HeightFunction::new(blocks.iter().map(|&b| rank[b] as u64).collect())
        })
    }))
}

pub fn weak_orders(ground: &GroundSet) -> Result<impl Iterator<Item = HeightFunction>> {
    weak_orders_of_size(ground.size(), DEFAULT_CAP)
}

/// Every injective normalised height function on `n` points.
pub fn injective_orders_of_size(n: usize, cap: usize) -> Result<impl Iterator<Item = HeightFunction>> {
    check_cap("ground set for injective orders", n, cap)?;
    Ok((0..n as u64).permutations(n).map(HeightFunction::new))
}

pub fn injective_orders(ground: &GroundSet) -> Result<impl Iterator<Item = HeightFunction>> {
    injective_orders_of_size(ground.size(), DEFAULT_CAP)
}

/// The first weak order whose system of the given kind is exactly `family`.
pub fn find_realizing_height(
    domain: &IslandDomain,
    family: &SetFamily,
    kind: IslandKind,
) -> Result<Option<HeightFunction>> {
    Ok(weak_orders(domain.ground())?.find(|h| system(domain, h, kind) == *family))
}

/// Every distinct system of the given kind over all weak orders.
pub fn realizable_systems(domain: &IslandDomain, kind: IslandKind) -> Result<BTreeSet<FamilyKey>> {
    Ok(weak_orders(domain.ground())?
        .map(|h| system(domain, &h, kind).key())
        .collect())
}

/// Largest system of the given kind over injective orders, with the first
/// order attaining it.
pub fn max_system(domain: &IslandDomain, kind: IslandKind) -> Result<(usize, HeightFunction)> {
    let mut best: Option<(usize, HeightFunction)> = None;
    for h in injective_orders(domain.ground())? {
        let count = system(domain, &h, kind).len();
        if best.as_ref().is_none_or(|(b, _)| count > *b) {
            best = Some((count, h));
        }
    }
    Ok(best.expect("at least one order"))
}

/// All subfamilies of `candidates∖{∅}` containing `U` that satisfy a
/// hereditary predicate, found by depth-first extension.
pub fn hereditary_families(
    candidates: &SetFamily,
    mut keep: impl FnMut(&SetFamily) -> Result<bool>,
) -> Result<Vec<SetFamily>> {
    let universe = Subset::full(candidates.universe_size());
    let optional: Vec<&Subset> = candidates
        .iter()
        .filter(|s| !s.is_empty() && **s != universe)
        .collect();
    check_cap("candidate family", optional.len(), FAMILY_SEARCH_CAP)?;
    let root = SetFamily::from_members(candidates.universe_size(), [universe])?;
    let mut out = Vec::new();
    let mut stack = vec![(root, 0usize)];
    while let Some((family, next)) = stack.pop() {
        for (i, s) in optional.iter().enumerate().skip(next) {
            let mut grown = family.clone();
            grown.insert((*s).clone());
            if keep(&grown)? {
                stack.push((grown, i + 1));
            }
        }
        out.push(family);
    }
    Ok(out)
}

/// Every admissible family; admissibility passes to subfamilies containing `U`.
pub fn admissible_families(domain: &IslandDomain) -> Result<Vec<SetFamily>> {
    hereditary_families(domain.candidates(), |f| is_admissible(domain, f))
}

/// Every distant family containing `U`.
pub fn distant_families(domain: &IslandDomain) -> Result<Vec<SetFamily>> {
    hereditary_families(domain.candidates(), |f| is_distant_family(domain, f))
}

/// The inclusion-maximal members of a collection of families.
pub fn maximal_families<'a>(families: impl IntoIterator<Item = &'a SetFamily>) -> BTreeSet<FamilyKey> {
    let keys: Vec<FamilyKey> = families.into_iter().map(SetFamily::key).collect();
    keys.iter()
        .filter(|k| !keys.iter().any(|big| big.len() > k.len() && k.is_subset(big)))
        .cloned()
        .collect()
}

fn table_vars(truth_table: &[bool]) -> Result<usize> {
    let len = truth_table.len();
    if len == 0 || !len.is_power_of_two() {
        return Err(IslandError::InvalidSpec(format!("truth table of length {len}")));
    }
    let n = len.trailing_zeros() as usize;
    check_cap("variable count", n, 6)?;
    Ok(n)
}

/// Maximal subcubes of `{0,1}ⁿ` inside the true set, as point sets. Point `t`
/// is the assignment whose binary expansion (first variable most significant)
/// is `t`.
pub fn prime_implicants_bruteforce(truth_table: &[bool]) -> Result<SetFamily> {
    let n = table_vars(truth_table)?;
    let points = truth_table.len();
    let cubes: Vec<Subset> = (0..3usize.pow(n as u32))
        .map(|code| {
            // digit i: 0, 1, or 2 = free; digit for variable i sits at 3^(n-1-i)
            let digits: Vec<usize> = (0..n).map(|i| code / 3usize.pow((n - 1 - i) as u32) % 3).collect();
            Subset::from_indices(
                points,
                (0..points).filter(|&t| {
                    digits
                        .iter()
                        .enumerate()
                        .all(|(i, &d)| d == 2 || (t >> (n - 1 - i)) & 1 == d)
                }),
            )
        })
        .filter(|cube| cube.iter().all(|t| truth_table[t]))
        .collect();
    let maximal = cubes
        .iter()
        .filter(|c| !cubes.iter().any(|big| c.is_proper_subset(big)))
        .cloned();
    SetFamily::from_members(points, maximal)
}

/// Formal concepts `(extent, intent)` of a two-factor context, by closing
/// every subset of objects.
pub fn formal_concepts_bruteforce(spec: &ContextSpec) -> Result<Vec<(Subset, Subset)>> {
    let [objects, attributes] = spec.sizes()[..] else {
        return Err(IslandError::InvalidSpec("formal concepts need exactly two factors".into()));
    };
    check_cap("object count", objects, 8)?;
    check_cap("attribute count", attributes, 8)?;
    let incident = |g: usize, m: usize| spec.relation().contains(&vec![g, m]);
    let intent_of = |x: &Subset| Subset::from_indices(attributes, (0..attributes).filter(|&m| x.iter().all(|g| incident(g, m))));
    let extent_of = |y: &Subset| Subset::from_indices(objects, (0..objects).filter(|&g| y.iter().all(|m| incident(g, m))));
    let mut concepts = BTreeSet::new();
    for mask in 0u64..(1 << objects) {
        let x = Subset::from_indices(objects, (0..objects).filter(|g| mask >> g & 1 == 1));
        let y = intent_of(&x);
        concepts.insert((extent_of(&y), y));
    }
    Ok(concepts.into_iter().collect())
}

/// Concepts with nonempty extent and intent, as boxes of the product
/// `objects × attributes` in row-major order.
pub fn concept_boxes(spec: &ContextSpec) -> Result<SetFamily> {
    let attributes = spec.sizes().get(1).copied().unwrap_or(0);
    let objects = spec.sizes()[0];
    let boxes = formal_concepts_bruteforce(spec)?
        .into_iter()
        .filter(|(x, y)| !x.is_empty() && !y.is_empty())
        .map(|(x, y)| {
            Subset::from_indices(
                objects * attributes,
                x.iter().flat_map(|g| y.iter().map(move |m| g * attributes + m)),
            )
        });
    SetFamily::from_members(objects * attributes, boxes)
}

/// A seeded explicit domain on `n ≤ 8` points: `K` holds `k_count` distinct
/// nonempty proper subsets plus `U`, and `C` holds `c_count` of those plus `U`.
/// Counts are clamped to what is available.
pub fn random_domain(n: usize, c_count: usize, k_count: usize, seed: u64) -> IslandDomain {
    assert!((1..=DEFAULT_CAP).contains(&n), "random domains need 1..=8 points");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ground = GroundSet::numbered(n, "p").expect("numbered names are distinct");
    let full: u64 = (1 << n) - 1;
    let mut masks: Vec<u64> = (1..full).collect();
    masks.shuffle(&mut rng);
    masks.truncate(k_count);
    let subset = |mask: u64| Subset::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));

    let mut k = SetFamily::from_members(n, masks.iter().map(|&m| subset(m))).expect("same universe");
    k.insert(ground.universe());
    let mut chosen = masks.clone();
    chosen.shuffle(&mut rng);
    chosen.truncate(c_count);
    let mut c = SetFamily::from_members(n, chosen.iter().map(|&m| subset(m))).expect("same universe");
    c.insert(ground.universe());
    IslandDomain::new(ground, c, KBackend::Explicit(k)).expect("construction keeps U ∈ C ⊆ K")
}

/// A seeded proximity domain on `n ≤ 8` points: `c_count` random nonempty
/// proper subsets plus `U`, each close to its own points and to every other
/// point with probability 0.3.
pub fn random_eta_domain(n: usize, c_count: usize, seed: u64) -> EtaDomain {
    let d = random_domain(n, c_count, c_count, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let table = d
        .candidates()
        .iter()
        .map(|c| {
            let mut r = c.clone();
            for u in 0..n {
                if rng.gen_bool(0.3) {
                    r.insert(u);
                }
            }
            r
        })
        .collect();
    EtaDomain::new(d.ground().clone(), d.candidates().clone(), table).expect("table contains every member")
}

/// A seeded height function with values in `0..levels`, normalised.
pub fn random_heights(n: usize, levels: u64, seed: u64) -> HeightFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    HeightFunction::new((0..n).map(|_| rng.gen_range(0..levels.max(1))).collect()).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::pre_island_system;
    use crate::fixtures;
    use crate::library::{grid_domain, GridSpec};
    use crate::structure::is_connective;
    use std::collections::HashSet;

    #[test]
    fn weak_order_counts_are_fubini_numbers() {
        for (n, fubini) in [(1, 1), (2, 3), (3, 13), (4, 75), (5, 541)] {
            let all: Vec<HeightFunction> = weak_orders_of_size(n, DEFAULT_CAP).unwrap().collect();
            assert_eq!(all.len(), fubini);
            assert!(all.iter().all(HeightFunction::is_normalized));
            let distinct: HashSet<Vec<u64>> = all.iter().map(|h| h.as_slice().to_vec()).collect();
            assert_eq!(distinct.len(), fubini);
        }
        let pair: BTreeSet<Vec<u64>> = weak_orders_of_size(2, 8).unwrap().map(|h| h.as_slice().to_vec()).collect();
        assert_eq!(pair, BTreeSet::from([vec![0, 0], vec![0, 1], vec![1, 0]]));
        assert!(matches!(weak_orders_of_size(9, 8), Err(IslandError::TooLarge { .. })));
        assert_eq!(injective_orders_of_size(4, 8).unwrap().count(), 24);
    }

    #[test]
    fn realizability_examples() {
        let d = fixtures::not_cd();
        let h = find_realizing_height(&d, d.candidates(), IslandKind::PreIsland).unwrap().unwrap();
        assert_eq!(pre_island_system(&d, &h), *d.candidates());
        let pairs = d.family(vec![vec!["a", "b"], vec!["c", "d"], vec!["a", "b", "c", "d", "e"]]).unwrap();
        assert_eq!(find_realizing_height(&d, &pairs, IslandKind::PreIsland).unwrap(), None);

        let nostd = fixtures::not_standard();
        let witness = find_realizing_height(&nostd, nostd.candidates(), IslandKind::PreIsland).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn realizing_heights_reproduce_their_systems() {
        for seed in 0..30 {
            let d = random_domain(4, 4, 8, seed);
            for kind in [IslandKind::PreIsland, IslandKind::Island] {
                for key in realizable_systems(&d, kind).unwrap() {
                    let family = SetFamily::from_members(d.size(), key).unwrap();
                    let h = find_realizing_height(&d, &family, kind).unwrap().unwrap();
                    assert_eq!(system(&d, &h, kind), family);
                }
            }
        }
    }

    #[test]
    fn board_maxima() {
        for n in 1..=5 {
            let d = grid_domain(&GridSpec::rectangular(1, n)).unwrap();
            assert_eq!(max_system(&d, IslandKind::PreIsland).unwrap().0, n);
        }
        for (m, n) in [(2, 2), (2, 3)] {
            let d = grid_domain(&GridSpec::rectangular(m, n)).unwrap();
            assert_eq!(max_system(&d, IslandKind::PreIsland).unwrap().0, (m * n + m + n - 1) / 2);
        }
    }

    /// Pre-islands straight from the definition, quantifying over all proper
    /// supersets in `K`.
    fn naive_pre_islands(c: &[Subset], k: &[Subset], h: &[u64]) -> usize {
        let min = |s: &Subset| s.iter().map(|u| h[u]).min();
        c.iter()
            .filter(|s| {
                let Some(floor) = min(s) else { return false };
                k.iter()
                    .filter(|big| s.is_proper_subset(big))
                    .all(|big| min(big).unwrap() < floor)
            })
            .count()
    }

    #[test]
    fn fano_maximum_matches_direct_enumeration() {
        let d = fixtures::fano();
        let members = d.candidates().members();
        let direct = (0..7u64)
            .permutations(7)
            .map(|h| naive_pre_islands(&members, &members, &h))
            .max()
            .unwrap();
        assert_eq!(direct, 9);
        let (count, witness) = max_system(&d, IslandKind::PreIsland).unwrap();
        assert_eq!(count, direct);
        assert_eq!(pre_island_system(&d, &witness).len(), count);
    }

    #[test]
    fn connective_maxima_are_bounded_by_the_ground_set() {
        let mut seen = 0;
        for seed in 0..80 {
            let d = random_domain(5, 6, 10, seed);
            if !is_connective(&d) {
                continue;
            }
            seen += 1;
            for kind in [IslandKind::PreIsland, IslandKind::Island] {
                assert!(max_system(&d, kind).unwrap().0 <= d.size());
            }
        }
        assert!(seen > 5);
    }

    #[test]
    fn prime_implicant_examples() {
        let majority: Vec<bool> = (0..8u32).map(|t| t.count_ones() >= 2).collect();
        let cubes = prime_implicants_bruteforce(&majority).unwrap();
        let expected = SetFamily::from_members(
            8,
            [[3, 7], [5, 7], [6, 7]].map(|p| Subset::from_indices(8, p)),
        )
        .unwrap();
        assert_eq!(cubes, expected);
        assert!(prime_implicants_bruteforce(&[false; 8]).unwrap().is_empty());
        assert_eq!(prime_implicants_bruteforce(&[true; 4]).unwrap().members(), vec![Subset::full(4)]);
        assert!(prime_implicants_bruteforce(&[true; 6]).is_err());
        assert!(matches!(prime_implicants_bruteforce(&[true; 128]), Err(IslandError::TooLarge { .. })));
    }

    fn two_by_two(relation: &[[&str; 2]]) -> ContextSpec {
        let factors = vec![vec!["g1".into(), "g2".into()], vec!["m1".into(), "m2".into()]];
        let rel: Vec<Vec<&str>> = relation.iter().map(|t| t.to_vec()).collect();
        ContextSpec::new(factors, &rel).unwrap()
    }

    #[test]
    fn formal_concept_examples() {
        let spec = two_by_two(&[["g1", "m1"], ["g1", "m2"], ["g2", "m1"]]);
        let proper: Vec<(Vec<usize>, Vec<usize>)> = formal_concepts_bruteforce(&spec)
            .unwrap()
            .into_iter()
            .filter(|(x, y)| !x.is_empty() && !y.is_empty())
            .map(|(x, y)| (x.iter().collect(), y.iter().collect()))
            .collect();
        assert_eq!(proper.len(), 2);
        assert!(proper.contains(&(vec![0], vec![0, 1])));
        assert!(proper.contains(&(vec![0, 1], vec![0])));

        let empty = formal_concepts_bruteforce(&two_by_two(&[])).unwrap();
        assert!(empty.iter().all(|(x, y)| x.is_empty() || y.is_empty()));
        assert!(concept_boxes(&two_by_two(&[])).unwrap().is_empty());

        let full = two_by_two(&[["g1", "m1"], ["g1", "m2"], ["g2", "m1"], ["g2", "m2"]]);
        let concepts = formal_concepts_bruteforce(&full).unwrap();
        assert_eq!(concepts, vec![(Subset::full(2), Subset::full(2))]);
    }

    #[test]
    fn random_domains_are_deterministic() {
        let a = random_domain(5, 4, 8, 1);
        let b = random_domain(5, 4, 8, 1);
        assert_eq!(a.candidates(), b.candidates());
        assert_eq!(a.surroundings().members().unwrap().len(), 9);
        assert_eq!(a.candidates().len(), 5);
        let tiny = random_domain(1, 0, 0, 7);
        assert_eq!(tiny.candidates().len(), 1);
        assert_eq!(tiny.surroundings().members().unwrap(), vec![Subset::full(1)]);
        assert_eq!(random_heights(6, 3, 4), random_heights(6, 3, 4));
    }

    #[test]
    fn maximal_admissible_families_are_maximal_systems() {
        for seed in 0..25 {
            let d = random_domain(4, 5, 8, seed);
            let admissible = admissible_families(&d).unwrap();
            let systems: Vec<SetFamily> = realizable_systems(&d, IslandKind::PreIsland)
                .unwrap()
                .into_iter()
                .map(|k| SetFamily::from_members(d.size(), k).unwrap())
                .collect();
            assert_eq!(maximal_families(&admissible), maximal_families(&systems));
        }
    }
}
