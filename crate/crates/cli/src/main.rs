//! `islandctl`: islands, admissibility and domain analysis from the command line.
//!
//! Exit codes: 0 success or property holds, 1 property fails or nothing
//! found, 2 input error.

mod format;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use islands::admissibility::{canonical_height, is_admissible, is_strongly_admissible, standard_height};
use islands::domain::IslandDomain;
use islands::engine::{system, IslandKind};
use islands::eta::{
    eta_is_admissible, eta_is_connective, eta_is_delta_symmetric, eta_is_distant_family, island_system_eta,
    EtaDomain,
};
use islands::library::{box_domain, grid_domain, projective_plane_domain, ContextSpec, GridSpec};
use islands::oracle::{find_realizing_height, injective_orders, max_system, random_domain, random_eta_domain, weak_orders};
use islands::structure::{
    has_unit_covers, is_cd_independent, is_cdw_independent, is_connective, is_delta_symmetric,
    is_distant_family, is_proximity_domain, is_union_closed,
};
use islands::{HeightFunction, IslandError, SetFamily};

use format::{
    boxes_file, classify, domain_file, eta_file, explicit_file, format_family, format_heights, load_domain,
    load_family, load_heights, parse_context_csv, parse_hex_table, write_file, GridFile, KSpec, LoadError,
    Loaded, ShapeName, TopologyName,
};

#[derive(Parser)]
#[command(name = "islandctl", version, about = "Islands and pre-islands over finite set systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a domain file describes a valid domain.
    Validate {
        #[arg(long)]
        domain: PathBuf,
    },
    /// Print the island (or, with --pre, pre-island) system of a height function.
    Islands {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        heights: PathBuf,
        #[arg(long)]
        pre: bool,
    },
    /// Decide whether a family is admissible.
    Admissible {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        family: PathBuf,
        /// Require every member of each antichain to escape.
        #[arg(long)]
        strong: bool,
    },
    /// Layers and canonical height function of an admissible family.
    CanonicalHeight {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Standard height function of a family.
    StandardHeight {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Structural report; exits 0 iff the domain is connective.
    Analyze {
        #[arg(long)]
        domain: PathBuf,
        /// Family to test for independence and distantness instead of C.
        #[arg(long)]
        family: Option<PathBuf>,
    },
    /// Brute-force searches over height functions.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Print a generated domain as JSON.
    Gen {
        #[command(subcommand)]
        what: Generator,
    },
    /// Draw a board's heights, one row per board row, as base-36 digits.
    Render {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        heights: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Find a height function whose system is exactly the family.
    System {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        family: PathBuf,
        /// Islands instead of pre-islands.
        #[arg(long)]
        strict: bool,
    },
    /// Largest system over all height functions, with a witness.
    Max {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    Rect,
    Cyl,
    Torus,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Rect,
    Square,
}

#[derive(Subcommand)]
enum Generator {
    /// A board of cells with rectangular (or square) candidates.
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, value_enum, default_value = "rect")]
        topology: TopologyArg,
        #[arg(long, value_enum, default_value = "rect")]
        shape: ShapeArg,
    },
    /// The Fano plane.
    Fano,
    /// The projective plane over the field with p elements.
    Plane { p: u64 },
    /// Boxes of {0,1}^n; bit t of the table is the value at assignment t
    /// (first variable most significant).
    Boolean {
        table: String,
        #[arg(long)]
        vars: Option<usize>,
        /// Also write the indicator height function here.
        #[arg(long)]
        heights: Option<PathBuf>,
    },
    /// Boxes of a formal context given as a CSV cross table.
    Context {
        csv: PathBuf,
        #[arg(long)]
        heights: Option<PathBuf>,
    },
    /// A seeded random explicit domain.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long, default_value_t = 5)]
        candidates: usize,
        #[arg(long, default_value_t = 9)]
        surroundings: usize,
        /// Emit a proximity-table domain instead of an explicit K.
        #[arg(long)]
        eta: bool,
    },
}

/// A command outcome: printed output plus exit code, or a load failure.
type Outcome = Result<(String, u8), LoadError>;

fn ok(text: String) -> Outcome {
    Ok((text, 0))
}

fn verdict(holds: bool, text: String) -> Outcome {
    Ok((text, if holds { 0 } else { 1 }))
}

fn input(e: IslandError) -> LoadError {
    classify(e)
}

fn needs_surroundings(what: &str) -> LoadError {
    LoadError::Input(anyhow!("{what} needs a surroundings family; proximity domains are not supported"))
}

fn island_domain(loaded: Loaded, what: &str) -> Result<IslandDomain, LoadError> {
    match loaded {
        Loaded::Island { domain, .. } => Ok(domain),
        Loaded::Eta(_) => Err(needs_surroundings(what)),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn validate(path: &Path) -> Outcome {
    let loaded = load_domain(path)?;
    let text = match &loaded {
        Loaded::Island { domain, .. } => {
            let k = match domain.surroundings().members() {
                Some(m) if domain.surroundings().is_explicit() => format!("explicit, {} members", m.len()),
                _ => "implicit".to_string(),
            };
            format!("valid: {} points, {} candidates, K {k}", domain.size(), domain.candidates().len())
        }
        Loaded::Eta(ed) => format!("valid: {} points, {} candidates, proximity table", ed.size(), ed.candidates().len()),
    };
    ok(text)
}

fn islands_cmd(domain: &Path, heights: &Path, pre: bool) -> Outcome {
    let loaded = load_domain(domain)?;
    let (h, _) = load_heights(heights, loaded.ground())?;
    let family = match &loaded {
        Loaded::Island { domain, .. } => {
            system(domain, &h, if pre { IslandKind::PreIsland } else { IslandKind::Island })
        }
        Loaded::Eta(ed) if !pre => island_system_eta(ed, &h),
        Loaded::Eta(_) => return Err(needs_surroundings("--pre")),
    };
    ok(format_family(loaded.ground(), &family))
}

fn admissible_cmd(domain: &Path, family: &Path, strong: bool) -> Outcome {
    let loaded = load_domain(domain)?;
    let fam = load_family(family, loaded.ground())?;
    let holds = match &loaded {
        Loaded::Island { domain, .. } if strong => is_strongly_admissible(domain, &fam),
        Loaded::Island { domain, .. } => is_admissible(domain, &fam),
        Loaded::Eta(ed) if !strong => eta_is_admissible(ed, &fam),
        Loaded::Eta(_) => return Err(needs_surroundings("--strong")),
    }
    .map_err(input)?;
    verdict(holds, format!("admissible: {}", yes_no(holds)))
}

fn canonical_cmd(domain: &Path, family: &Path) -> Outcome {
    let domain = island_domain(load_domain(domain)?, "canonical-height")?;
    let fam = load_family(family, domain.ground())?;
    match canonical_height(&domain, &fam) {
        Ok((layers, h)) => {
            let mut lines: Vec<String> = layers
                .layers()
                .iter()
                .enumerate()
                .map(|(i, l)| format!("layer {i}: {}", format_family(domain.ground(), l)))
                .collect();
            lines.push(format!("heights: {}", format_heights(domain.ground(), &h)));
            ok(lines.join("\n"))
        }
        Err(IslandError::NotAdmissible { remaining }) => Ok((
            format!("not admissible: peeling stalls with {remaining} member(s) left"),
            1,
        )),
        Err(e) => Err(input(e)),
    }
}

fn standard_cmd(domain: &Path, family: &Path) -> Outcome {
    let loaded = load_domain(domain)?;
    let fam = load_family(family, loaded.ground())?;
    let h = standard_height(&fam).map_err(input)?;
    ok(format_heights(loaded.ground(), &h))
}

fn analyze_island(domain: &IslandDomain, family: Option<&SetFamily>) -> Result<(Vec<String>, bool), LoadError> {
    let connective = is_connective(domain);
    let union_closed = match is_union_closed(domain) {
        Ok(b) => yes_no(b).to_string(),
        Err(_) => "unknown".to_string(),
    };
    let target = family.unwrap_or(domain.candidates());
    let distant = is_distant_family(domain, target).map_err(input)?;
    let lines = vec![
        format!("connective: {}", yes_no(connective)),
        format!("delta-symmetric: {}", yes_no(is_delta_symmetric(domain))),
        format!("proximity: {}", yes_no(is_proximity_domain(domain))),
        format!("union-closed: {union_closed}"),
        format!("unit-covers: {}", yes_no(has_unit_covers(domain))),
        format!("cd-independent: {}", yes_no(is_cd_independent(target))),
        format!("cdw-independent: {}", yes_no(is_cdw_independent(target))),
        format!("distant: {}", yes_no(distant)),
    ];
    Ok((lines, connective))
}

fn analyze_eta(ed: &EtaDomain, family: Option<&SetFamily>) -> Result<(Vec<String>, bool), LoadError> {
    let connective = eta_is_connective(ed);
    let symmetric = eta_is_delta_symmetric(ed);
    let target = family.unwrap_or(ed.candidates());
    let distant = eta_is_distant_family(ed, target).map_err(input)?;
    let lines = vec![
        format!("connective: {}", yes_no(connective)),
        format!("delta-symmetric: {}", yes_no(symmetric)),
        format!("proximity: {}", yes_no(connective && symmetric)),
        format!("cd-independent: {}", yes_no(is_cd_independent(target))),
        format!("cdw-independent: {}", yes_no(is_cdw_independent(target))),
        format!("distant: {}", yes_no(distant)),
    ];
    Ok((lines, connective))
}

fn analyze_cmd(domain: &Path, family: Option<&Path>) -> Outcome {
    let loaded = load_domain(domain)?;
    let fam = family.map(|p| load_family(p, loaded.ground())).transpose()?;
    let (lines, connective) = match &loaded {
        Loaded::Island { domain, .. } => analyze_island(domain, fam.as_ref())?,
        Loaded::Eta(ed) => analyze_eta(ed, fam.as_ref())?,
    };
    verdict(connective, lines.join("\n"))
}

fn kind(strict: bool) -> IslandKind {
    if strict {
        IslandKind::Island
    } else {
        IslandKind::PreIsland
    }
}

fn oracle_system(domain: &Path, family: &Path, strict: bool) -> Outcome {
    let loaded = load_domain(domain)?;
    let fam = load_family(family, loaded.ground())?;
    let found = match &loaded {
        Loaded::Island { domain, .. } => find_realizing_height(domain, &fam, kind(strict)).map_err(input)?,
        Loaded::Eta(ed) if strict => weak_orders(ed.ground())
            .map_err(input)?
            .find(|h| island_system_eta(ed, h) == fam),
        Loaded::Eta(_) => return Err(needs_surroundings("pre-island search")),
    };
    match found {
        Some(h) => ok(format_heights(loaded.ground(), &h)),
        None => Ok(("none".to_string(), 1)),
    }
}

fn oracle_max(domain: &Path, strict: bool) -> Outcome {
    let loaded = load_domain(domain)?;
    let (count, witness) = match &loaded {
        Loaded::Island { domain, .. } => max_system(domain, kind(strict)).map_err(input)?,
        Loaded::Eta(ed) if strict => {
            let mut best: Option<(usize, HeightFunction)> = None;
            for h in injective_orders(ed.ground()).map_err(input)? {
                let count = island_system_eta(ed, &h).len();
                if best.as_ref().is_none_or(|(b, _)| count > *b) {
                    best = Some((count, h));
                }
            }
            best.expect("at least one order")
        }
        Loaded::Eta(_) => return Err(needs_surroundings("pre-island search")),
    };
    ok(format!("{count}\n{}", format_heights(loaded.ground(), &witness)))
}

fn to_json(file: &format::DomainFile) -> String {
    serde_json::to_string_pretty(file).expect("domain files serialise")
}

fn write_heights(path: Option<&PathBuf>, domain: &IslandDomain, h: &HeightFunction) -> Result<(), LoadError> {
    if let Some(path) = path {
        write_file(path, &format!("{}\n", format_heights(domain.ground(), h)))?;
    }
    Ok(())
}

fn generate(what: &Generator) -> Outcome {
    match what {
        Generator::Grid { rows, cols, topology, shape } => {
            let grid = GridFile {
                rows: *rows,
                cols: *cols,
                topology: match topology {
                    TopologyArg::Rect => TopologyName::Rect,
                    TopologyArg::Cyl => TopologyName::Cyl,
                    TopologyArg::Torus => TopologyName::Torus,
                },
                shape: match shape {
                    ShapeArg::Rect => ShapeName::Rect,
                    ShapeArg::Square => ShapeName::Square,
                },
            };
            let spec: GridSpec = grid.spec();
            let domain = grid_domain(&spec).map_err(input)?;
            ok(to_json(&domain_file(&domain, KSpec::Grid(grid))))
        }
        Generator::Fano => plane(2),
        Generator::Plane { p } => plane(*p),
        Generator::Boolean { table, vars, heights } => {
            let table = parse_hex_table(table, *vars)?;
            let n = table.len().trailing_zeros() as usize;
            boxes(&ContextSpec::boolean(n, &table).map_err(input)?, heights.as_ref())
        }
        Generator::Context { csv, heights } => boxes(&parse_context_csv(csv)?, heights.as_ref()),
        Generator::Random { seed, size, candidates, surroundings, eta } => {
            if !(1..=8).contains(size) {
                return Err(LoadError::Input(anyhow!("random domains need 1 to 8 points")));
            }
            if *eta {
                return ok(to_json(&eta_file(&random_eta_domain(*size, *candidates, *seed))));
            }
            let domain = random_domain(*size, *candidates, *surroundings, *seed);
            ok(to_json(&explicit_file(&domain)?))
        }
    }
}

fn plane(p: u64) -> Outcome {
    let domain = projective_plane_domain(p).map_err(input)?;
    ok(to_json(&explicit_file(&domain)?))
}

fn boxes(spec: &ContextSpec, heights: Option<&PathBuf>) -> Outcome {
    let (domain, h) = box_domain(spec).map_err(input)?;
    write_heights(heights, &domain, &h)?;
    ok(to_json(&domain_file(&domain, boxes_file(spec))))
}

fn render(domain: &Path, heights: &Path) -> Outcome {
    let loaded = load_domain(domain)?;
    let Loaded::Island { grid: Some(spec), .. } = &loaded else {
        return Err(LoadError::Input(anyhow!("render needs a grid domain")));
    };
    let (_, raw) = load_heights(heights, loaded.ground())?;
    let mut rows = Vec::with_capacity(spec.rows);
    for r in 0..spec.rows {
        let mut line = String::with_capacity(spec.cols);
        for c in 0..spec.cols {
            let v = raw[spec.cell(r, c)];
            let digit = u32::try_from(v)
                .ok()
                .and_then(|v| char::from_digit(v, 36))
                .ok_or_else(|| anyhow!("height {v} at {} is not a base-36 digit", GridSpec::cell_name(r, c)))?;
            line.push(digit);
        }
        rows.push(line);
    }
    ok(rows.join("\n"))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { domain } => validate(domain),
        Command::Islands { domain, heights, pre } => islands_cmd(domain, heights, *pre),
        Command::Admissible { domain, family, strong } => admissible_cmd(domain, family, *strong),
        Command::CanonicalHeight { domain, family } => canonical_cmd(domain, family),
        Command::StandardHeight { domain, family } => standard_cmd(domain, family),
        Command::Analyze { domain, family } => analyze_cmd(domain, family.as_deref()),
        Command::Oracle { query } => match query {
            OracleQuery::System { domain, family, strict } => oracle_system(domain, family, *strict),
            OracleQuery::Max { domain, strict } => oracle_max(domain, *strict),
        },
        Command::Gen { what } => generate(what),
        Command::Render { domain, heights } => render(domain, heights),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("islandctl: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
