//! JSON domain, heights and family files.

use std::collections::HashMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use islands::domain::{IslandDomain, KBackend};
use islands::eta::EtaDomain;
use islands::library::{
    box_domain, graph_domain, grid_domain, Boxes, CandidateRule, CandidateShape, ConnectedSets, ContextSpec,
    Graph, GridSpec, Topology,
};
use islands::{GroundSet, HeightFunction, IslandError, SetFamily, Subset};
use serde::{Deserialize, Serialize};

/// Failure while loading input: exit code 2 for unreadable or malformed
/// input, 1 when the input parses but violates the domain invariants.
#[derive(Debug)]
pub enum LoadError {
    Input(anyhow::Error),
    Invalid(anyhow::Error),
}

impl LoadError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Input(_) => 2,
            LoadError::Invalid(_) => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            LoadError::Input(e) | LoadError::Invalid(e) => format!("{e:#}"),
        }
    }
}

impl From<anyhow::Error> for LoadError {
    fn from(e: anyhow::Error) -> Self {
        LoadError::Input(e)
    }
}

/// Invariant violations are reported as invalid domains; everything else is
/// an input error.
pub fn classify(e: IslandError) -> LoadError {
    match e {
        IslandError::MissingUniverse
        | IslandError::NotSubfamily(_)
        | IslandError::EtaAxiom(_)
        | IslandError::DisconnectedGraph
        | IslandError::DisconnectedCandidate(_) => LoadError::Invalid(e.into()),
        other => LoadError::Input(other.into()),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DomainFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<Vec<String>>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<CandidatesSpec>,
    #[serde(rename = "K")]
    pub surroundings: KSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CandidatesSpec {
    Rule(RuleName),
    Sets(Vec<Vec<String>>),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum RuleName {
    Connected,
    ConnectedConvex,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KSpec {
    Explicit(Vec<Vec<String>>),
    Grid(GridFile),
    Graph(GraphFile),
    Boxes(BoxesFile),
    Eta(EtaFile),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum TopologyName {
    #[default]
    Rect,
    Cyl,
    Torus,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum ShapeName {
    #[default]
    Rect,
    Square,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridFile {
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub topology: TopologyName,
    #[serde(default)]
    pub shape: ShapeName,
}

impl GridFile {
    pub fn spec(&self) -> GridSpec {
        GridSpec {
            rows: self.rows,
            cols: self.cols,
            topology: match self.topology {
                TopologyName::Rect => Topology::Rectangular,
                TopologyName::Cyl => Topology::Cylindrical,
                TopologyName::Torus => Topology::Toroidal,
            },
            shape: match self.shape {
                ShapeName::Rect => CandidateShape::Rectangles,
                ShapeName::Square => CandidateShape::Squares,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoxesFile {
    pub factors: Vec<Vec<String>>,
    pub relation: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EtaFile {
    /// `(index into the listed C, point name)` pairs.
    pub table: Vec<(usize, String)>,
}

/// A loaded domain.
pub enum Loaded {
    Island {
        domain: IslandDomain,
        /// Board shape, for rendering.
        grid: Option<GridSpec>,
    },
    Eta(EtaDomain),
}

impl Loaded {
    pub fn ground(&self) -> &GroundSet {
        match self {
            Loaded::Island { domain, .. } => domain.ground(),
            Loaded::Eta(ed) => ed.ground(),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, LoadError> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(value)
}

fn sets(ground: &GroundSet, lists: &[Vec<String>]) -> Result<SetFamily, LoadError> {
    let mut family = SetFamily::new(ground.size());
    for list in lists {
        family.insert(ground.subset(list).map_err(classify)?);
    }
    Ok(family)
}

fn declared_ground(file: &DomainFile) -> Result<GroundSet, LoadError> {
    let names = file
        .universe
        .as_ref()
        .ok_or_else(|| anyhow!("this kind of K needs an explicit \"universe\""))?;
    GroundSet::new(names.iter().map(String::as_str)).map_err(classify)
}

/// A declared universe must match the generated one exactly.
fn check_universe(file: &DomainFile, ground: &GroundSet) -> Result<(), LoadError> {
    if let Some(names) = &file.universe {
        if names.as_slice() != ground.names() {
            return Err(LoadError::Input(anyhow!(
                "declared universe does not match the generated points {:?}",
                ground.names()
            )));
        }
    }
    Ok(())
}

fn explicit_candidates(file: &DomainFile) -> Result<Option<&Vec<Vec<String>>>, LoadError> {
    match &file.candidates {
        None => Ok(None),
        Some(CandidatesSpec::Sets(lists)) => Ok(Some(lists)),
        Some(CandidatesSpec::Rule(_)) => Err(LoadError::Input(anyhow!(
            "candidate rules are only available for graph domains"
        ))),
    }
}

pub fn parse_domain(file: &DomainFile) -> Result<Loaded, LoadError> {
    match &file.surroundings {
        KSpec::Explicit(k) => {
            let ground = declared_ground(file)?;
            let lists = explicit_candidates(file)?.ok_or_else(|| anyhow!("explicit domains need \"C\""))?;
            let c = sets(&ground, lists)?;
            let k = sets(&ground, k)?;
            let domain = IslandDomain::new(ground, c, KBackend::Explicit(k)).map_err(classify)?;
            Ok(Loaded::Island { domain, grid: None })
        }
        KSpec::Grid(g) => {
            let spec = g.spec();
            let generated = grid_domain(&spec).map_err(classify)?;
            check_universe(file, generated.ground())?;
            let domain = match explicit_candidates(file)? {
                None => generated,
                Some(lists) => {
                    let c = sets(generated.ground(), lists)?;
                    let k = KBackend::implicit(ConnectedSets::new(spec.graph()));
                    IslandDomain::new(generated.ground().clone(), c, k).map_err(classify)?
                }
            };
            Ok(Loaded::Island { domain, grid: Some(spec) })
        }
        KSpec::Graph(g) => {
            let ground = declared_ground(file)?;
            let graph = Graph::from_named_edges(&ground, &g.edges).map_err(classify)?;
            let rule = match &file.candidates {
                None | Some(CandidatesSpec::Rule(RuleName::Connected)) => CandidateRule::Connected,
                Some(CandidatesSpec::Rule(RuleName::ConnectedConvex)) => CandidateRule::ConnectedConvex,
                Some(CandidatesSpec::Sets(lists)) => CandidateRule::Explicit(sets(&ground, lists)?),
            };
            let domain = graph_domain(ground, graph, rule).map_err(classify)?;
            Ok(Loaded::Island { domain, grid: None })
        }
        KSpec::Boxes(b) => {
            let spec = ContextSpec::new(b.factors.clone(), &b.relation).map_err(classify)?;
            let (generated, _) = box_domain(&spec).map_err(classify)?;
            check_universe(file, generated.ground())?;
            let domain = match explicit_candidates(file)? {
                None => generated,
                Some(lists) => {
                    let c = sets(generated.ground(), lists)?;
                    let k = KBackend::implicit(Boxes::new(spec.sizes()));
                    IslandDomain::new(generated.ground().clone(), c, k).map_err(classify)?
                }
            };
            Ok(Loaded::Island { domain, grid: None })
        }
        KSpec::Eta(e) => {
            let ground = declared_ground(file)?;
            let lists = explicit_candidates(file)?.ok_or_else(|| anyhow!("proximity domains need \"C\""))?;
            let listed: Vec<Subset> = lists
                .iter()
                .map(|l| ground.subset(l).map_err(classify))
                .collect::<Result<_, _>>()?;
            let c = SetFamily::from_members(ground.size(), listed.iter().cloned()).map_err(classify)?;
            let mut pairs = Vec::with_capacity(e.table.len());
            for (i, name) in &e.table {
                let member = listed
                    .get(*i)
                    .ok_or_else(|| anyhow!("proximity table refers to member {i} of {}", listed.len()))?;
                let index = c.index_of(member).expect("listed members are in C");
                pairs.push((index, ground.index_of(name).map_err(classify)?));
            }
            let ed = EtaDomain::from_pairs(ground, c, &pairs).map_err(classify)?;
            Ok(Loaded::Eta(ed))
        }
    }
}

pub fn load_domain(path: &Path) -> Result<Loaded, LoadError> {
    parse_domain(&read_json(path)?)
}

/// Reads `{"name": integer}` covering every point; values are rank-normalised.
pub fn load_heights(path: &Path, ground: &GroundSet) -> Result<(HeightFunction, Vec<i64>), LoadError> {
    let raw: HashMap<String, i64> = read_json(path)?;
    let mut values = vec![None; ground.size()];
    for (name, v) in &raw {
        values[ground.index_of(name).map_err(classify)?] = Some(*v);
    }
    let values: Vec<i64> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| anyhow!("no height for {}", ground.name(i))))
        .collect::<anyhow::Result<_>>()?;
    let mut distinct = values.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let ranks = values
        .iter()
        .map(|v| distinct.binary_search(v).expect("present") as u64)
        .collect();
    Ok((HeightFunction::new(ranks), values))
}

pub fn load_family(path: &Path, ground: &GroundSet) -> Result<SetFamily, LoadError> {
    let lists: Vec<Vec<String>> = read_json(path)?;
    sets(ground, &lists)
}

fn name_lists(ground: &GroundSet, family: &SetFamily) -> Vec<Vec<String>> {
    let mut lists: Vec<Vec<String>> = family
        .iter()
        .map(|s| ground.names_of(s).into_iter().map(str::to_string).collect())
        .collect();
    lists.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    lists
}

/// `[[names]...]`, sorted by size and then by names.
pub fn format_family(ground: &GroundSet, family: &SetFamily) -> String {
    serde_json::to_string(&name_lists(ground, family)).expect("strings serialise")
}

/// `{"name": value, ...}` in ground-set order.
pub fn format_heights(ground: &GroundSet, h: &HeightFunction) -> String {
    let entries: Vec<String> = (0..ground.size())
        .map(|i| format!("{}: {}", serde_json::to_string(ground.name(i)).expect("strings serialise"), h.get(i)))
        .collect();
    format!("{{{}}}", entries.join(", "))
}

/// File form of a domain with explicit `C` and the given `K`.
pub fn domain_file(domain: &IslandDomain, surroundings: KSpec) -> DomainFile {
    DomainFile {
        universe: Some(domain.ground().names().to_vec()),
        candidates: Some(CandidatesSpec::Sets(name_lists(domain.ground(), domain.candidates()))),
        surroundings,
    }
}

pub fn explicit_file(domain: &IslandDomain) -> anyhow::Result<DomainFile> {
    let k = domain
        .surroundings()
        .members()
        .ok_or_else(|| anyhow!("K cannot be listed"))?;
    let k = SetFamily::from_members(domain.size(), k)?;
    Ok(domain_file(domain, KSpec::Explicit(name_lists(domain.ground(), &k))))
}

pub fn boxes_file(spec: &ContextSpec) -> KSpec {
    KSpec::Boxes(BoxesFile {
        factors: spec.factors().to_vec(),
        relation: spec.relation_labels(),
    })
}

pub fn eta_file(ed: &EtaDomain) -> DomainFile {
    let ground = ed.ground();
    let listed: Vec<Vec<String>> = ed
        .candidates()
        .iter()
        .map(|s| ground.names_of(s).into_iter().map(str::to_string).collect())
        .collect();
    let table = (0..listed.len())
        .flat_map(|i| ed.reach(i).iter().map(move |u| (i, ground.name(u).to_string())))
        .collect();
    DomainFile {
        universe: Some(ground.names().to_vec()),
        candidates: Some(CandidatesSpec::Sets(listed)),
        surroundings: KSpec::Eta(EtaFile { table }),
    }
}

pub fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn parse_hex_table(hex: &str, vars: Option<usize>) -> anyhow::Result<Vec<bool>> {
    let digits = hex.trim_start_matches("0x");
    if digits.is_empty() || digits.len() > 16 {
        bail!("truth table must be 1 to 16 hex digits");
    }
    let value = u64::from_str_radix(digits, 16).with_context(|| format!("invalid hex truth table {hex:?}"))?;
    let vars = match vars {
        Some(v) => v,
        None => (4 * digits.len()).next_power_of_two().trailing_zeros() as usize,
    };
    if !(1..=6).contains(&vars) {
        bail!("between 1 and 6 variables are supported");
    }
    let len = 1usize << vars;
    if len < 64 && value >> len != 0 {
        bail!("truth table {hex} does not fit in {len} bits");
    }
    Ok((0..len).map(|t| value >> t & 1 == 1).collect())
}

/// Cross table: header `,m1,m2,...`, then one row `g,0|1,...` per object.
pub fn parse_context_csv(path: &Path) -> anyhow::Result<ContextSpec> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let attributes: Vec<String> = reader.headers()?.iter().skip(1).map(str::to_string).collect();
    let mut objects = Vec::new();
    let mut relation = Vec::new();
    for row in reader.records() {
        let row = row?;
        let object = row.get(0).ok_or_else(|| anyhow!("empty row"))?.to_string();
        if row.len() != attributes.len() + 1 {
            bail!("row {object:?} has {} cells, expected {}", row.len(), attributes.len() + 1);
        }
        for (m, cell) in row.iter().skip(1).enumerate() {
            match cell {
                "1" | "x" | "X" => relation.push(vec![object.clone(), attributes[m].clone()]),
                "0" | "" => {}
                other => bail!("cell {other:?} is not 0/1"),
            }
        }
        objects.push(object);
    }
    Ok(ContextSpec::new(vec![objects, attributes], &relation)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use islands::fixtures;
    use islands::oracle::{random_domain, random_eta_domain};

    fn reparse(file: &DomainFile) -> Loaded {
        let text = serde_json::to_string(file).unwrap();
        parse_domain(&serde_json::from_str(&text).unwrap()).unwrap()
    }

    fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
        (0u32..1 << n).map(move |m| Subset::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
    }

    /// Same points, same candidates and the same K, member by member.
    fn assert_same(a: &IslandDomain, b: &Loaded) {
        let Loaded::Island { domain: b, .. } = b else { panic!("expected an island domain") };
        assert_eq!(a.ground().names(), b.ground().names());
        assert_eq!(a.candidates().key(), b.candidates().key());
        for s in all_subsets(a.size()) {
            assert_eq!(a.surroundings().contains(&s), b.surroundings().contains(&s), "{}", a.ground().format(&s));
        }
    }

    #[test]
    fn generated_domains_reparse_extensionally_equal() {
        for spec in [
            GridFile { rows: 2, cols: 3, topology: TopologyName::Rect, shape: ShapeName::Rect },
            GridFile { rows: 3, cols: 3, topology: TopologyName::Torus, shape: ShapeName::Square },
            GridFile { rows: 2, cols: 4, topology: TopologyName::Cyl, shape: ShapeName::Rect },
        ] {
            let domain = grid_domain(&spec.spec()).unwrap();
            assert_same(&domain, &reparse(&domain_file(&domain, KSpec::Grid(spec))));
        }
        for (_, domain) in fixtures::all() {
            assert_same(&domain, &reparse(&explicit_file(&domain).unwrap()));
        }
        for seed in 0..20 {
            let domain = random_domain(5, 5, 9, seed);
            assert_same(&domain, &reparse(&explicit_file(&domain).unwrap()));
        }
        let table = parse_hex_table("e8", None).unwrap();
        let context = ContextSpec::boolean(3, &table).unwrap();
        let (domain, _) = box_domain(&context).unwrap();
        assert_same(&domain, &reparse(&domain_file(&domain, boxes_file(&context))));
    }

    #[test]
    fn eta_domains_reparse_extensionally_equal() {
        for seed in 0..20 {
            let ed = random_eta_domain(4, 4, seed);
            let Loaded::Eta(back) = reparse(&eta_file(&ed)) else { panic!("expected a proximity domain") };
            assert_eq!(ed.ground().names(), back.ground().names());
            assert_eq!(ed.candidates().key(), back.candidates().key());
            for (i, c) in ed.candidates().iter().enumerate() {
                let j = back.candidates().index_of(c).unwrap();
                assert_eq!(ed.reach(i), back.reach(j));
            }
        }
    }

    #[test]
    fn hex_tables_put_assignment_zero_in_bit_zero() {
        assert_eq!(parse_hex_table("e8", None).unwrap(), [false, false, false, true, false, true, true, true]);
        assert_eq!(parse_hex_table("8", None).unwrap(), [false, false, false, true]);
        assert_eq!(parse_hex_table("1", Some(1)).unwrap(), [true, false]);
        assert!(parse_hex_table("1ff", Some(3)).is_err());
        assert!(parse_hex_table("zz", None).is_err());
    }

    #[test]
    fn heights_are_rank_normalised() {
        let file = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(file.path(), r#"{"c1": -4, "c2": 10, "c3": -4}"#).unwrap();
        let ground = fixtures::seg3().ground().clone();
        let (h, raw) = load_heights(file.path(), &ground).unwrap();
        assert_eq!(h.as_slice(), [0, 1, 0]);
        assert_eq!(raw, [-4, 10, -4]);
    }
}
