//! End-to-end acceptance checks. Each test prints one `criterion N: PASS|FAIL`
//! line (sub-items of the theorem suite get their own lines) and then asserts.
//!
//! Run with `cargo test -p islands --test acceptance -- --nocapture`.

use std::collections::BTreeSet;

use islands::admissibility::{
    canonical_height, is_admissible, is_admissible_by_supersets, standard_height,
};
use islands::domain::IslandDomain;
use islands::engine::{island_system, is_pre_island, pre_island_system, IslandKind};
use islands::eta::{eta_admissible_families, eta_distant_families, eta_from_k, island_system_eta, EtaDomain};
use islands::fixtures;
use islands::library::{box_domain, graph_domain, grid_domain, CandidateRule, ContextSpec, Graph, GridSpec};
use islands::oracle::{
    admissible_families, concept_boxes, distant_families, find_realizing_height, max_system, maximal_families,
    prime_implicants_bruteforce, random_domain, random_heights, weak_orders,
};
use islands::sets::{FamilyKey, GroundSet, SetFamily, Subset};
use islands::structure::{
    connectivity_witness, has_unit_covers, is_cd_independent, is_cdw_independent, is_connective,
    is_distant_family, is_proximity_domain, is_union_closed,
};
use islands::HeightFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(label: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {label}: PASS");
    } else {
        println!("criterion {label}: FAIL");
        for f in failures.iter().take(10) {
            println!("    {f}");
        }
    }
}

fn finish(label: &str, failures: Vec<String>) {
    report(label, &failures);
    assert!(failures.is_empty(), "criterion {label} failed: {failures:?}");
}

fn grid(rows: usize, cols: usize) -> IslandDomain {
    grid_domain(&GridSpec::rectangular(rows, cols)).unwrap()
}

fn as_family(n: usize, key: &FamilyKey) -> SetFamily {
    SetFamily::from_members(n, key.iter().cloned()).unwrap()
}

#[test]
fn criterion_1_segment_maxima() {
    let mut failures = Vec::new();
    for n in 1..=5 {
        let (count, _) = max_system(&grid(1, n), IslandKind::PreIsland).unwrap();
        if count != n {
            failures.push(format!("1x{n}: maximum {count}, expected {n}"));
        }
    }
    finish("1", failures);
}

#[test]
fn criterion_2_rectangular_maxima() {
    let mut failures = Vec::new();
    for (m, n, expected) in [(2, 2, 3), (2, 3, 5)] {
        let (count, _) = max_system(&grid(m, n), IslandKind::PreIsland).unwrap();
        if count != expected {
            failures.push(format!("{m}x{n}: maximum {count}, expected {expected}"));
        }
    }
    finish("2", failures);
}

#[test]
fn criterion_3_projective_plane_maximum() {
    let (count, witness) = max_system(&fixtures::fano(), IslandKind::PreIsland).unwrap();
    let mut failures = Vec::new();
    if count != 6 {
        failures.push(format!("Fano plane: maximum {count} (witness {witness:?}), expected 6"));
    }
    finish("3", failures);
}

#[test]
fn criterion_4_counterexamples() {
    let mut failures = Vec::new();

    let nc = fixtures::not_cd();
    if pre_island_system(&nc, &fixtures::not_cd_heights()) != *nc.candidates() {
        failures.push("(a) h1 does not make every candidate a pre-island".into());
    }
    let pairs = nc.family(vec![vec!["a", "b"], vec!["c", "d"], vec!["a", "b", "c", "d", "e"]]).unwrap();
    if find_realizing_height(&nc, &pairs, IslandKind::PreIsland).unwrap().is_some() {
        failures.push("(a) {{a,b},{c,d},U} was realized".into());
    }

    let ns = fixtures::not_standard();
    let (layers, h) = canonical_height(&ns, ns.candidates()).unwrap();
    if h != HeightFunction::new(vec![2, 1, 1, 0]) {
        failures.push(format!("(b) canonical height {h:?}"));
    }
    let expected_layers = vec![
        ns.family([["a", "b", "c", "d"]]).unwrap(),
        ns.family([["b", "c"]]).unwrap(),
        ns.family([["a"]]).unwrap(),
    ];
    if layers.layers() != expected_layers.as_slice() {
        failures.push(format!("(b) layers {:?}", layers.layers()));
    }
    if pre_island_system(&ns, &h) != *ns.candidates() {
        failures.push("(b) canonical height does not realize {A,B,U}".into());
    }
    let standard = standard_height(ns.candidates()).unwrap();
    let a = ns.ground().subset(["a"]).unwrap();
    if is_pre_island(&ns, &standard, &a).unwrap() {
        failures.push("(b) standard height makes A a pre-island".into());
    }

    let cdnt = fixtures::cdnt();
    if !is_connective(&cdnt) {
        failures.push("(c) not connective".into());
    }
    if !is_cdw_independent(cdnt.candidates()) {
        failures.push("(c) not CDW-independent".into());
    }
    if is_admissible(&cdnt, cdnt.candidates()).unwrap() {
        failures.push("(c) admissible".into());
    }
    finish("4", failures);
}

/// Seeded explicit domains on at most five points.
fn random_suite() -> Vec<(String, IslandDomain)> {
    (0..240u64)
        .map(|seed| {
            let n = 2 + (seed % 4) as usize;
            let c = 2 + (seed % 6) as usize;
            let k = c + (seed / 6 % 5) as usize;
            (format!("random#{seed}"), random_domain(n, c, k, seed))
        })
        .collect()
}

/// Materialized boards and graphs: these carry the proximity cases.
fn proximity_suite() -> Vec<(String, IslandDomain)> {
    let mut out = Vec::new();
    for (r, c) in [(1, 2), (1, 3), (1, 4), (2, 2), (1, 5), (2, 3)] {
        out.push((format!("board {r}x{c}"), grid(r, c).materialized().unwrap()));
    }
    let graphs = [
        ("c4 convex", Graph::cycle(4), CandidateRule::ConnectedConvex),
        ("c5 convex", Graph::cycle(5), CandidateRule::ConnectedConvex),
        ("p4 connected", Graph::path(4), CandidateRule::Connected),
        ("star connected", Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]), CandidateRule::Connected),
    ];
    for (name, graph, rule) in graphs {
        let ground = GroundSet::numbered(graph.order(), "v").unwrap();
        let d = graph_domain(ground, graph, rule).unwrap();
        out.push((name.to_string(), d.materialized().unwrap()));
    }
    out
}

fn theorem_suite() -> Vec<(String, IslandDomain)> {
    let mut all: Vec<(String, IslandDomain)> =
        fixtures::all().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    all.extend(random_suite());
    all.extend(proximity_suite());
    all
}

/// Height 2 on `B`, 1 on `A∖B`, 0 elsewhere.
fn two_one_zero(n: usize, a: &Subset, b: &Subset) -> HeightFunction {
    HeightFunction::new(
        (0..n)
            .map(|x| if b.contains(x) { 2 } else if a.contains(x) { 1 } else { 0 })
            .collect(),
    )
}

#[test]
fn criterion_5_theorem_suite() {
    let suite = theorem_suite();
    assert!(suite.len() >= 200 + fixtures::all().len());
    let mut fails: [Vec<String>; 8] = Default::default();
    let mut proximity_seen = 0;
    let mut connective_seen = 0;
    let mut non_connective_seen = 0;
    let mut kk_seen = 0;
    let mut small_seen = 0;

    for (name, d) in &suite {
        let n = d.size();
        let heights: Vec<HeightFunction> = weak_orders(d.ground()).unwrap().collect();
        let pre: Vec<SetFamily> = heights.iter().map(|h| pre_island_system(d, h)).collect();
        let strict: Vec<SetFamily> = heights.iter().map(|h| island_system(d, h)).collect();
        let admissible = admissible_families(d).unwrap();

        // (a)
        if let Some(s) = pre.iter().find(|s| !is_admissible(d, s).unwrap()) {
            fails[0].push(format!("{name}: system {s:?} not admissible"));
        }
        // (b)
        for family in &admissible {
            let (_, hh) = canonical_height(d, family).unwrap();
            if !family.is_subfamily_of(&pre_island_system(d, &hh)) {
                fails[1].push(format!("{name}: {family:?} escapes its canonical height"));
            }
        }
        // (c)
        let connective = is_connective(d);
        let all_cd = pre.iter().all(is_cd_independent);
        let all_cdw = pre.iter().all(is_cdw_independent);
        if connective != all_cd || all_cd != all_cdw {
            fails[2].push(format!("{name}: connective {connective}, CD {all_cd}, CDW {all_cdw}"));
        }
        if let Some((a, b)) = connectivity_witness(d) {
            non_connective_seen += 1;
            let s = pre_island_system(d, &two_one_zero(n, &a, &b));
            if !(s.contains(&a) && s.contains(&b) && !is_cd_independent(&s)) {
                fails[2].push(format!("{name}: 2/1/0 height on {a:?}, {b:?} gives {s:?}"));
            }
        }
        // (d)
        if connective {
            connective_seen += 1;
            let realizable: BTreeSet<FamilyKey> = pre.iter().map(SetFamily::key).collect();
            let adm: BTreeSet<FamilyKey> = admissible.iter().map(SetFamily::key).collect();
            if realizable != adm {
                fails[3].push(format!("{name}: {} systems vs {} admissible families", realizable.len(), adm.len()));
            }
            if let Some(s) = pre.iter().find(|s| s.len() > n) {
                fails[3].push(format!("{name}: system of size {} > {n}", s.len()));
            }
        }
        // (e)
        if is_proximity_domain(d) {
            proximity_seen += 1;
            if let Some(s) = strict.iter().find(|s| !is_distant_family(d, s).unwrap()) {
                fails[4].push(format!("{name}: island system {s:?} not distant"));
            }
            for family in distant_families(d).unwrap() {
                let h = standard_height(&family).unwrap();
                if island_system(d, &h) != family {
                    fails[4].push(format!("{name}: distant {family:?} not realized by its standard height"));
                }
            }
        }
        // (f)
        if is_union_closed(d).unwrap() && has_unit_covers(d) {
            kk_seen += 1;
            if !is_proximity_domain(d) {
                fails[5].push(format!("{name}: union-closed with unit covers but not a proximity domain"));
            }
            if pre.iter().zip(&strict).any(|(p, s)| p != s) {
                fails[5].push(format!("{name}: islands differ from pre-islands"));
            }
        }
        // (g)
        if d.surroundings().is_explicit() {
            for family in admissible_and_rejected(d, &admissible) {
                if is_admissible(d, &family).unwrap() != is_admissible_by_supersets(d, &family).unwrap() {
                    fails[6].push(format!("{name}: cover and superset tests disagree on {family:?}"));
                }
            }
        }
        // (h)
        if d.candidates().len() <= 10 {
            small_seen += 1;
            if maximal_families(&admissible) != maximal_families(&pre) {
                fails[7].push(format!("{name}: maximal admissible families differ from maximal systems"));
            }
        }
    }

    println!(
        "    {} domains: {connective_seen} connective, {non_connective_seen} not, {proximity_seen} proximity, {kk_seen} union-closed with unit covers, {small_seen} with |C| <= 10",
        suite.len()
    );
    for (what, seen) in [
        ("connective", connective_seen),
        ("non-connective", non_connective_seen),
        ("proximity", proximity_seen),
        ("union-closed", kk_seen),
    ] {
        if seen == 0 {
            fails[0].push(format!("no {what} domain in the suite"));
        }
    }
    for (i, f) in fails.iter().enumerate() {
        report(&format!("5({})", (b'a' + i as u8) as char), f);
    }
    let total: Vec<String> = fails.concat();
    report("5", &total);
    assert!(total.is_empty(), "criterion 5 failed: {total:?}");
}

/// Every subfamily of `C∖{∅}` containing `U` when `C` is small, otherwise the
/// admissible families plus one rejected extension of each.
fn admissible_and_rejected(d: &IslandDomain, admissible: &[SetFamily]) -> Vec<SetFamily> {
    let u = d.universe();
    let optional: Vec<&Subset> = d.candidates().iter().filter(|s| !s.is_empty() && **s != u).collect();
    if optional.len() <= 10 {
        return (0u32..1 << optional.len())
            .map(|mask| {
                let mut f = SetFamily::from_members(d.size(), [u.clone()]).unwrap();
                for (i, s) in optional.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        f.insert((*s).clone());
                    }
                }
                f
            })
            .collect();
    }
    let mut out = admissible.to_vec();
    for f in admissible {
        if let Some(s) = optional.iter().find(|s| !f.contains(s)) {
            let mut g = f.clone();
            g.insert((*s).clone());
            out.push(g);
        }
    }
    out
}

#[test]
fn criterion_6_boolean_sweep() {
    let mut failures = Vec::new();
    for code in 0u32..256 {
        let table: Vec<bool> = (0..8).map(|t| code >> t & 1 == 1).collect();
        let (d, h) = box_domain(&ContextSpec::boolean(3, &table).unwrap()).unwrap();
        let mut expected = prime_implicants_bruteforce(&table).unwrap();
        expected.insert(d.universe());
        let got = pre_island_system(&d, &h);
        if got != expected {
            failures.push(format!("function {code:#04x}: {got:?} vs {expected:?}"));
        }
    }
    finish("6", failures);
}

fn context(objects: usize, attributes: usize, relation: impl Fn(usize, usize) -> bool) -> ContextSpec {
    let factors = vec![
        (1..=objects).map(|i| format!("g{i}")).collect(),
        (1..=attributes).map(|i| format!("m{i}")).collect(),
    ];
    let tuples = (0..objects).flat_map(|g| (0..attributes).map(move |m| vec![g, m]));
    ContextSpec::from_coordinates(factors, tuples.filter(|t| relation(t[0], t[1])).collect::<Vec<_>>()).unwrap()
}

#[test]
fn criterion_7_formal_concept_sweep() {
    let mut specs = Vec::new();
    for code in 0u32..16 {
        specs.push((format!("2x2 #{code}"), context(2, 2, |g, m| code >> (2 * g + m) & 1 == 1)));
    }
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits: Vec<bool> = (0..9).map(|_| rng.gen_bool(0.5)).collect();
        specs.push((format!("3x3 seed {seed}"), context(3, 3, |g, m| bits[3 * g + m])));
    }
    let mut failures = Vec::new();
    for (name, spec) in specs {
        let (d, h) = box_domain(&spec).unwrap();
        let mut expected = concept_boxes(&spec).unwrap();
        expected.insert(d.universe());
        let got = pre_island_system(&d, &h);
        if got != expected {
            failures.push(format!("{name}: {got:?} vs {expected:?}"));
        }
    }
    finish("7", failures);
}

#[test]
fn criterion_8_proximity_equivalence() {
    let mut failures = Vec::new();
    let mut domains: Vec<(String, IslandDomain)> =
        fixtures::all().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    for seed in 0..100u64 {
        let n = 1 + (seed % 6) as usize;
        domains.push((format!("random#{seed}"), random_domain(n, 3 + (seed % 5) as usize, 9, seed)));
    }
    for (name, d) in &domains {
        let ed = eta_from_k(d);
        for i in 0..20u64 {
            let h = random_heights(d.size(), d.size() as u64, i * 1000 + d.size() as u64);
            if island_system_eta(&ed, &h) != island_system(d, &h) {
                failures.push(format!("{name}: heights {h:?}"));
            }
        }
    }

    let mut graphs = Vec::new();
    for n in 1..=6 {
        graphs.push((format!("path {n}"), Graph::path(n)));
    }
    for n in 3..=6 {
        graphs.push((format!("cycle {n}"), Graph::cycle(n)));
    }
    for (name, graph) in graphs {
        let n = graph.order();
        let c = SetFamily::from_members(n, graph.connected_sets()).unwrap();
        let ed = EtaDomain::graph_neighborhood(GroundSet::numbered(n, "v").unwrap(), c, graph).unwrap();
        let systems: BTreeSet<FamilyKey> = weak_orders(ed.ground())
            .unwrap()
            .map(|h| island_system_eta(&ed, &h).key())
            .collect();
        let admissible: BTreeSet<FamilyKey> = eta_admissible_families(&ed).unwrap().iter().map(SetFamily::key).collect();
        let distant: BTreeSet<FamilyKey> = eta_distant_families(&ed).unwrap().iter().map(SetFamily::key).collect();
        if systems != admissible || admissible != distant {
            failures.push(format!(
                "{name}: {} systems, {} admissible, {} distant",
                systems.len(),
                admissible.len(),
                distant.len()
            ));
        }
        for key in &systems {
            let family = as_family(n, key);
            if island_system_eta(&ed, &standard_height(&family).unwrap()) != family {
                failures.push(format!("{name}: {family:?} not realized by its standard height"));
            }
        }
    }
    finish("8", failures);
}
