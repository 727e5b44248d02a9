//! Generators for the standard island domains: boards, graphs, boxes
//! (formal contexts and Boolean functions), projective planes, and source sets
//! of directed graphs.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::domain::{IslandDomain, KBackend, Surroundings};
use crate::error::{IslandError, Result};
use crate::height::HeightFunction;
use crate::sets::{GroundSet, SetFamily, Subset};

/// Largest ground set for which generators enumerate all subsets.
pub const SUBSET_SCAN_CAP: usize = 20;

/// Largest listing an implicit backend will produce on request.
const ENUMERATION_CAP: usize = 1 << 20;

/// A simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Subset>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Subset::empty(n); n];
        for &(u, v) in edges {
            if u != v {
                adjacency[u].insert(v);
                adjacency[v].insert(u);
            }
        }
        Graph { adjacency }
    }

    /// Resolves edges given by vertex names.
    pub fn from_named_edges<S: AsRef<str>>(ground: &GroundSet, edges: &[(S, S)]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|(u, v)| Ok((ground.index_of(u.as_ref())?, ground.index_of(v.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Graph::from_edges(ground.size(), &edges))
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &Subset {
        &self.adjacency[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|u| self.adjacency[u].iter().filter(move |&v| u < v).map(move |v| (u, v)))
            .collect()
    }

    /// Vertices adjacent to some member of `s`, excluding `s` itself.
    pub fn outer_boundary(&self, s: &Subset) -> Subset {
        let mut out = Subset::empty(self.order());
        for v in s.iter() {
            out.union_with(&self.adjacency[v]);
        }
        out.difference(s)
    }

    /// Nonempty and connected as an induced subgraph.
    pub fn is_connected_set(&self, s: &Subset) -> bool {
        let Some(start) = s.iter().next() else {
            return false;
        };
        let mut seen = Subset::singleton(self.order(), start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.adjacency[v].intersection(s).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen == *s
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_set(&Subset::full(self.order()))
    }

    /// All connected vertex sets, grown one neighbour at a time.
    pub fn connected_sets(&self) -> Vec<Subset> {
        let n = self.order();
        let mut seen: HashSet<Subset> = HashSet::new();
        let mut queue: VecDeque<Subset> = (0..n).map(|v| Subset::singleton(n, v)).collect();
        let mut out = Vec::new();
        while let Some(s) = queue.pop_front() {
            if !seen.insert(s.clone()) {
                continue;
            }
            for v in self.outer_boundary(&s).iter() {
                let mut grown = s.clone();
                grown.insert(v);
                if !seen.contains(&grown) {
                    queue.push_back(grown);
                }
            }
            out.push(s);
        }
        out
    }

    /// BFS distances; `usize::MAX` for unreachable pairs.
    pub fn distances(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n)
            .map(|src| {
                let mut dist = vec![usize::MAX; n];
                dist[src] = 0;
                let mut queue = VecDeque::from([src]);
                while let Some(v) = queue.pop_front() {
                    for w in self.adjacency[v].iter() {
                        if dist[w] == usize::MAX {
                            dist[w] = dist[v] + 1;
                            queue.push_back(w);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    /// Contains every vertex on every shortest path between two of its members.
    pub fn is_convex(&self, s: &Subset, dist: &[Vec<usize>]) -> bool {
        let members: Vec<usize> = s.iter().collect();
        members.iter().all(|&u| {
            members.iter().all(|&v| {
                (0..self.order()).all(|w| {
                    s.contains(w)
                        || dist[u][w] == usize::MAX
                        || dist[w][v] == usize::MAX
                        || dist[u][w] + dist[w][v] != dist[u][v]
                })
            })
        })
    }
}

/// `K` = the connected vertex sets of a graph. Covers add one adjacent vertex.
#[derive(Clone, Debug)]
pub struct ConnectedSets {
    graph: Graph,
}

impl ConnectedSets {
    pub fn new(graph: Graph) -> Self {
        ConnectedSets { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

impl Surroundings for ConnectedSets {
    fn universe_size(&self) -> usize {
        self.graph.order()
    }

    fn contains(&self, s: &Subset) -> bool {
        self.graph.is_connected_set(s)
    }

    fn covers(&self, s: &Subset) -> Vec<Subset> {
        let n = self.graph.order();
        if s.is_empty() {
            return (0..n).map(|v| Subset::singleton(n, v)).collect();
        }
        self.graph
            .outer_boundary(s)
            .iter()
            .map(|v| {
                let mut k = s.clone();
                k.insert(v);
                k
            })
            .collect()
    }

    fn union_closed(&self) -> Option<bool> {
        Some(true)
    }

    fn unit_covers(&self) -> Option<bool> {
        Some(true)
    }

    fn enumerate(&self) -> Option<Vec<Subset>> {
        (self.graph.order() <= SUBSET_SCAN_CAP).then(|| self.graph.connected_sets())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Rectangular,
    /// Columns wrap around.
    Cylindrical,
    /// Rows and columns wrap around.
    Toroidal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CandidateShape {
    Rectangles,
    Squares,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    pub topology: Topology,
    pub shape: CandidateShape,
}

impl GridSpec {
    pub fn rectangular(rows: usize, cols: usize) -> Self {
        GridSpec {
            rows,
            cols,
            topology: Topology::Rectangular,
            shape: CandidateShape::Rectangles,
        }
    }

    pub fn with_topology(self, topology: Topology) -> Self {
        GridSpec { topology, ..self }
    }

    pub fn with_shape(self, shape: CandidateShape) -> Self {
        GridSpec { shape, ..self }
    }

    fn rows_wrap(&self) -> bool {
        self.topology == Topology::Toroidal
    }

    fn cols_wrap(&self) -> bool {
        self.topology != Topology::Rectangular
    }

    pub fn cell(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    pub fn cell_name(row: usize, col: usize) -> String {
        format!("r{}c{}", row + 1, col + 1)
    }

    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c + 1 < self.cols {
                    edges.push((self.cell(r, c), self.cell(r, c + 1)));
                } else if self.cols_wrap() {
                    edges.push((self.cell(r, c), self.cell(r, 0)));
                }
                if r + 1 < self.rows {
                    edges.push((self.cell(r, c), self.cell(r + 1, c)));
                } else if self.rows_wrap() {
                    edges.push((self.cell(r, c), self.cell(0, c)));
                }
            }
        }
        Graph::from_edges(self.rows * self.cols, &edges)
    }
}

/// Intervals of a line of `len` cells; on a cycle, the proper arcs plus the
/// whole cycle once.
fn extents(len: usize, periodic: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if periodic {
        for width in 1..len {
            for start in 0..len {
                out.push((0..width).map(|i| (start + i) % len).collect());
            }
        }
        out.push((0..len).collect());
    } else {
        for lo in 0..len {
            for hi in lo..len {
                out.push((lo..=hi).collect());
            }
        }
    }
    out
}

/// A board: cells are points, `C` holds the rectangles (or squares) plus `U`,
/// and `K` is the family of connected cell sets of the board graph.
pub fn grid_domain(spec: &GridSpec) -> Result<IslandDomain> {
    if spec.rows == 0 || spec.cols == 0 {
        return Err(IslandError::InvalidSpec("board needs at least one row and one column".into()));
    }
    let n = spec.rows * spec.cols;
    let ground = GroundSet::new(
        (0..spec.rows).flat_map(|r| (0..spec.cols).map(move |c| GridSpec::cell_name(r, c))),
    )?;
    let mut candidates = SetFamily::new(n);
    for rows in extents(spec.rows, spec.rows_wrap()) {
        for cols in extents(spec.cols, spec.cols_wrap()) {
            if spec.shape == CandidateShape::Squares && rows.len() != cols.len() {
                continue;
            }
            candidates.insert(Subset::from_indices(
                n,
                rows.iter().flat_map(|&r| cols.iter().map(move |&c| spec.cell(r, c))),
            ));
        }
    }
    candidates.insert(ground.universe());
    IslandDomain::new(ground, candidates, KBackend::implicit(ConnectedSets::new(spec.graph())))
}

/// How a graph domain picks its candidates.
#[derive(Clone, Debug)]
pub enum CandidateRule {
    Explicit(SetFamily),
    /// Every connected vertex set.
    Connected,
    /// Connected sets containing all shortest paths between their members.
    ConnectedConvex,
}

/// A connected graph with `K` = connected vertex sets.
pub fn graph_domain(ground: GroundSet, graph: Graph, rule: CandidateRule) -> Result<IslandDomain> {
    if graph.order() != ground.size() {
        return Err(IslandError::GroundMismatch {
            expected: ground.size(),
            found: graph.order(),
        });
    }
    if !graph.is_connected() {
        return Err(IslandError::DisconnectedGraph);
    }
    let n = ground.size();
    let candidates = match rule {
        CandidateRule::Explicit(family) => {
            if let Some(bad) = family.iter().find(|s| !graph.is_connected_set(s)) {
                return Err(IslandError::DisconnectedCandidate(ground.format(bad)));
            }
            family
        }
        CandidateRule::Connected => SetFamily::from_members(n, graph.connected_sets())?,
        CandidateRule::ConnectedConvex => {
            let dist = graph.distances();
            let convex = graph.connected_sets().into_iter().filter(|s| graph.is_convex(s, &dist));
            SetFamily::from_members(n, convex)?
        }
    };
    IslandDomain::new(ground, candidates, KBackend::implicit(ConnectedSets::new(graph)))
}

/// A formal context generalised to `n` factors: `A₁ × ⋯ × Aₙ` with a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextSpec {
    factors: Vec<Vec<String>>,
    relation: BTreeSet<Vec<usize>>,
}

impl ContextSpec {
    /// `relation` tuples are given by factor labels.
    pub fn new<S: AsRef<str>>(factors: Vec<Vec<String>>, relation: &[Vec<S>]) -> Result<Self> {
        if factors.is_empty() {
            return Err(IslandError::InvalidSpec("at least one factor is required".into()));
        }
        for (i, f) in factors.iter().enumerate() {
            if f.is_empty() {
                return Err(IslandError::InvalidSpec(format!("factor {i} is empty")));
            }
            let distinct: HashSet<&String> = f.iter().collect();
            if distinct.len() != f.len() {
                return Err(IslandError::InvalidSpec(format!("factor {i} repeats a label")));
            }
        }
        let mut tuples = BTreeSet::new();
        for t in relation {
            if t.len() != factors.len() {
                return Err(IslandError::InvalidSpec(format!(
                    "tuple of arity {} in a {}-factor context",
                    t.len(),
                    factors.len()
                )));
            }
            let coords = t
                .iter()
                .zip(&factors)
                .map(|(label, f)| {
                    f.iter()
                        .position(|l| l == label.as_ref())
                        .ok_or_else(|| IslandError::UnknownName(label.as_ref().to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            tuples.insert(coords);
        }
        Ok(ContextSpec { factors, relation: tuples })
    }

    /// Context from coordinate tuples.
    pub fn from_coordinates(factors: Vec<Vec<String>>, relation: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut spec = ContextSpec::new::<&str>(factors, &[])?;
        for t in relation {
            if t.len() != spec.factors.len() || t.iter().zip(&spec.factors).any(|(&x, f)| x >= f.len()) {
                return Err(IslandError::InvalidSpec(format!("tuple {t:?} out of range")));
            }
            spec.relation.insert(t);
        }
        Ok(spec)
    }

    /// `{0,1}ⁿ` with the true points of a truth table. Entry `t` belongs to the
    /// assignment whose binary expansion (first variable most significant) is `t`.
    pub fn boolean(vars: usize, truth_table: &[bool]) -> Result<Self> {
        if vars == 0 || truth_table.len() != 1 << vars {
            return Err(IslandError::InvalidSpec(format!(
                "truth table of length {} for {vars} variable(s)",
                truth_table.len()
            )));
        }
        let factors = vec![vec!["0".to_string(), "1".to_string()]; vars];
        let relation = (0..truth_table.len())
            .filter(|&t| truth_table[t])
            .map(|t| (0..vars).map(|i| (t >> (vars - 1 - i)) & 1).collect());
        ContextSpec::from_coordinates(factors, relation)
    }

    pub fn factors(&self) -> &[Vec<String>] {
        &self.factors
    }

    pub fn relation(&self) -> &BTreeSet<Vec<usize>> {
        &self.relation
    }

    /// Relation tuples spelled with factor labels.
    pub fn relation_labels(&self) -> Vec<Vec<String>> {
        self.relation
            .iter()
            .map(|t| t.iter().zip(&self.factors).map(|(&x, f)| f[x].clone()).collect())
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.factors.iter().map(Vec::len).collect()
    }

    pub fn point_name(&self, coords: &[usize]) -> String {
        let labels: Vec<&str> = coords.iter().zip(&self.factors).map(|(&x, f)| f[x].as_str()).collect();
        format!("({})", labels.join(","))
    }
}

/// `K` = nonempty boxes `B₁ × ⋯ × Bₙ` of a product, points in mixed radix with
/// the first factor most significant.
#[derive(Clone, Debug)]
pub struct Boxes {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    points: usize,
}

impl Boxes {
    pub fn new(sizes: Vec<usize>) -> Self {
        let mut strides = vec![1; sizes.len()];
        for i in (0..sizes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        let points = sizes.iter().product();
        Boxes { sizes, strides, points }
    }

    pub fn point(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coords(&self, point: usize) -> Vec<usize> {
        self.strides
            .iter()
            .zip(&self.sizes)
            .map(|(s, n)| point / s % n)
            .collect()
    }

    /// Projection of `s` onto each factor.
    pub fn projections(&self, s: &Subset) -> Vec<Subset> {
        let mut proj: Vec<Subset> = self.sizes.iter().map(|&n| Subset::empty(n)).collect();
        for p in s.iter() {
            for (i, c) in self.coords(p).into_iter().enumerate() {
                proj[i].insert(c);
            }
        }
        proj
    }

    pub fn product(&self, sides: &[Subset]) -> Subset {
        let mut out = Subset::empty(self.points);
        let mut coords = Vec::with_capacity(sides.len());
        self.fill(sides, &mut coords, &mut out);
        out
    }

    fn fill(&self, sides: &[Subset], coords: &mut Vec<usize>, out: &mut Subset) {
        if coords.len() == sides.len() {
            out.insert(self.point(coords));
            return;
        }
        for x in sides[coords.len()].iter() {
            coords.push(x);
            self.fill(sides, coords, out);
            coords.pop();
        }
    }

    fn box_count(&self) -> Option<usize> {
        self.sizes.iter().try_fold(1usize, |acc, &n| {
            if n >= usize::BITS as usize - 1 {
                return None;
            }
            acc.checked_mul((1 << n) - 1)
        })
    }

    /// Every nonempty box.
    pub fn all_boxes(&self) -> Vec<Subset> {
        let mut out = Vec::new();
        let mut sides = Vec::with_capacity(self.sizes.len());
        self.boxes_from(&mut sides, &mut out);
        out
    }

    fn boxes_from(&self, sides: &mut Vec<Subset>, out: &mut Vec<Subset>) {
        let i = sides.len();
        if i == self.sizes.len() {
            out.push(self.product(sides));
            return;
        }
        let n = self.sizes[i];
        for mask in 1u64..(1 << n) {
            sides.push(Subset::from_indices(n, (0..n).filter(|b| mask >> b & 1 == 1)));
            self.boxes_from(sides, out);
            sides.pop();
        }
    }

    fn nontrivial_factors(&self) -> usize {
        self.sizes.iter().filter(|&&n| n >= 2).count()
    }
}

impl Surroundings for Boxes {
    fn universe_size(&self) -> usize {
        self.points
    }

    fn contains(&self, s: &Subset) -> bool {
        !s.is_empty() && self.projections(s).iter().map(Subset::len).product::<usize>() == s.len()
    }

    fn covers(&self, s: &Subset) -> Vec<Subset> {
        if s.is_empty() {
            return (0..self.points).map(|p| Subset::singleton(self.points, p)).collect();
        }
        let sides = self.projections(s);
        let mut out = Vec::new();
        for i in 0..sides.len() {
            for x in (0..self.sizes[i]).filter(|&x| !sides[i].contains(x)) {
                let mut grown = sides.clone();
                grown[i].insert(x);
                out.push(self.product(&grown));
            }
        }
        out
    }

    fn union_closed(&self) -> Option<bool> {
        Some(self.nontrivial_factors() <= 1)
    }

    fn unit_covers(&self) -> Option<bool> {
        Some(self.nontrivial_factors() <= 1)
    }

    fn enumerate(&self) -> Option<Vec<Subset>> {
        self.box_count()
            .filter(|&c| c <= ENUMERATION_CAP)
            .map(|_| self.all_boxes())
    }
}

/// The box domain of a context and the indicator height of its relation.
///
/// Its pre-islands are `U` together with the maximal boxes inside the
/// relation: formal concepts for two factors, prime implicants over `{0,1}ⁿ`.
pub fn box_domain(spec: &ContextSpec) -> Result<(IslandDomain, HeightFunction)> {
    let boxes = Boxes::new(spec.sizes());
    if boxes.box_count().is_none_or(|c| c > ENUMERATION_CAP) {
        return Err(IslandError::TooLarge {
            what: "box count",
            size: boxes.box_count().unwrap_or(usize::MAX),
            cap: ENUMERATION_CAP,
        });
    }
    let n = boxes.points;
    let ground = GroundSet::new((0..n).map(|p| spec.point_name(&boxes.coords(p))))?;
    let relation = Subset::from_indices(n, spec.relation.iter().map(|t| boxes.point(t)));
    let mut candidates = SetFamily::new(n);
    for b in boxes.all_boxes().into_iter().filter(|b| b.is_subset(&relation)) {
        candidates.insert(b);
    }
    candidates.insert(ground.universe());
    let heights = HeightFunction::indicator(&relation);
    let domain = IslandDomain::new(ground, candidates, KBackend::implicit(boxes))?;
    Ok((domain, heights))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Normalised homogeneous coordinates of PG(2, p): first nonzero entry 1.
fn projective_points(p: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let v = [x, y, z];
                if v.iter().find(|&&c| c != 0) == Some(&1) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// PG(2, p) over the prime field: `C = K` = the plane, its lines, its points
/// and `∅`.
pub fn projective_plane_domain(p: u64) -> Result<IslandDomain> {
    if !is_prime(p) {
        return Err(IslandError::NotPrime(p));
    }
    let points = projective_points(p);
    let n = points.len();
    let ground = GroundSet::new(points.iter().map(|v| format!("({}:{}:{})", v[0], v[1], v[2])))?;
    let mut family = SetFamily::new(n);
    family.insert(ground.universe());
    for line in &points {
        family.insert(Subset::from_indices(
            n,
            (0..n).filter(|&i| points[i].iter().zip(line).map(|(a, b)| a * b).sum::<u64>() % p == 0),
        ));
    }
    for i in 0..n {
        family.insert(Subset::singleton(n, i));
    }
    family.insert(Subset::empty(n));
    IslandDomain::new(ground, family.clone(), KBackend::Explicit(family))
}

/// `C = K` = `U` plus every vertex set with a source: a member from which all
/// others are reachable along arcs inside the set.
pub fn source_set_domain(ground: GroundSet, arcs: &[(usize, usize)]) -> Result<IslandDomain> {
    let n = ground.size();
    if n > SUBSET_SCAN_CAP {
        return Err(IslandError::TooLarge {
            what: "vertex count",
            size: n,
            cap: SUBSET_SCAN_CAP,
        });
    }
    let mut out_arcs = vec![Subset::empty(n); n];
    for &(u, v) in arcs {
        out_arcs[u].insert(v);
    }
    let reaches_all = |s: &Subset, src: usize| {
        let mut seen = Subset::singleton(n, src);
        let mut stack = vec![src];
        while let Some(v) = stack.pop() {
            for w in out_arcs[v].intersection(s).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen == *s
    };
    let mut family = SetFamily::new(n);
    for mask in 1u64..(1 << n) {
        let s = Subset::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if s.iter().any(|src| reaches_all(&s, src)) {
            family.insert(s);
        }
    }
    family.insert(ground.universe());
    IslandDomain::new(ground, family.clone(), KBackend::Explicit(family))
}
