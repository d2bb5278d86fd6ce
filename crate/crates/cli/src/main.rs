//! `ksforge` command-line tool.
//!
//! Exit codes: 0 success (including negative verdicts), 1 bad input,
//! 2 ray/basis/gamma derivation disagrees with the fixtures, 3 SameColumn,
//! 4 CrossedPairConflict, 5 Stalled or AmbiguousFinalBasis, 6 enumeration
//! counts differ from the frozen fixture.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ksforge::construct::{self, trace_render, PickOrder};
use ksforge::enumerate::{
    enumerate_parity_proofs, kernel_parity_proofs, IncidenceMatrix, ProofCatalog,
};
use ksforge::error::{ConstructionError, Error, GeometryError};
use ksforge::geometry::{derive_gamma_table, enumerate_bases, GammaRef, GammaTable, Geometry};
use ksforge::io::{self, CatalogDocument, KsSetDocument};
use ksforge::parity::{find_coloring, signature, Coloring};
use ksforge::rays::{build_ray_table_with, RayId};
use ksforge::Fixtures;

const FIXTURE_ENV: &str = "KSFORGE_FIXTURES";

#[derive(Parser)]
#[command(
    name = "ksforge",
    version,
    about = "Three-qubit Kochen-Specker sets from the Mermin pentagram"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Orthogonality,
    Bases,
}

#[derive(Subcommand)]
enum Command {
    /// Derive and print the 40 rays.
    Rays {
        /// Only compare the derivation with the fixture.
        #[arg(long)]
        check: bool,
        /// Write -1 as a barred one.
        #[arg(long)]
        bar: bool,
    },
    /// Print the 25 bases, partners and lines.
    Bases,
    /// Print the gamma table.
    Gamma,
    /// Run one of the tick/cross construction procedures.
    Construct {
        /// Number of bases in the target proof: 11, 13 or 15.
        #[arg(long = "type", value_parser = ["11", "13", "15"])]
        kind: String,
        /// Gamma cell as COLUMN,ROW; repeat for 13 and 15.
        #[arg(long = "gamma", value_parser = parse_gamma)]
        gammas: Vec<GammaRef>,
        /// Ray examination order for type 11, e.g. 13,23,32.
        #[arg(long, value_delimiter = ',')]
        picks: Option<Vec<usize>>,
        /// Include the ray listing of every basis in the document.
        #[arg(long)]
        expand: bool,
    },
    /// Check whether a KS-set document is a parity proof.
    Verify { file: PathBuf },
    /// Search for a noncontextual coloring of a KS-set document.
    ColorCheck { file: PathBuf },
    /// Enumerate every parity proof over the 25 bases.
    Enumerate {
        /// List every proof, not only the counts.
        #[arg(long)]
        classify: bool,
        /// Restrict to subset-minimal proofs.
        #[arg(long)]
        minimal: bool,
        /// Compare counts with the frozen fixture and the kernel route.
        #[arg(long)]
        fixture_check: bool,
    },
    /// Emit a Graphviz DOT graph.
    Graph {
        #[arg(value_enum)]
        kind: GraphKind,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_gamma(s: &str) -> Result<GammaRef, String> {
    let (c, r) = s
        .split_once(',')
        .ok_or_else(|| format!("expected COLUMN,ROW, got {s:?}"))?;
    let c: usize = c
        .trim()
        .parse()
        .map_err(|_| format!("bad column in {s:?}"))?;
    let r: usize = r.trim().parse().map_err(|_| format!("bad row in {s:?}"))?;
    Ok(GammaRef::new(c, r))
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Construction(c) => c.into(),
            Error::Geometry(GeometryError::UnknownBasis(_)) => Failure::new(1, e.to_string()),
            Error::Ray(_) | Error::Geometry(_) => Failure::new(2, e.to_string()),
            other => Failure::new(1, other.to_string()),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let code = match e {
            ConstructionError::SameColumn => 3,
            ConstructionError::CrossedPairConflict(_) => 4,
            ConstructionError::Stalled(_) | ConstructionError::AmbiguousFinalBasis(_) => 5,
            ConstructionError::InvalidResult => 2,
            _ => 1,
        };
        Failure::new(code, format!("{}: {e}", construct::error_name(&e)))
    }
}

struct World {
    fixtures: Fixtures,
    geom: Geometry,
    gamma: GammaTable,
}

fn load_fixtures() -> Result<Fixtures, Failure> {
    match std::env::var_os(FIXTURE_ENV) {
        Some(dir) => {
            Fixtures::from_dir(&PathBuf::from(dir)).map_err(|e| Failure::new(1, e.to_string()))
        }
        None => Ok(Fixtures::embedded()),
    }
}

fn load_world() -> Result<World, Failure> {
    let fixtures = load_fixtures()?;
    let rays = build_ray_table_with(&fixtures.rays).map_err(Error::from)?;
    let geom = enumerate_bases(&rays).map_err(Error::from)?;
    let gamma = derive_gamma_table(&geom, &fixtures.gamma).map_err(Error::from)?;
    Ok(World {
        fixtures,
        geom,
        gamma,
    })
}

fn read_document(path: &PathBuf, geom: &Geometry) -> Result<ksforge::BasisSet, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", path.display())))?;
    let doc = KsSetDocument::from_json(&text)?;
    Ok(doc.resolve(geom)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn witness_pairs(c: &Coloring) -> Vec<(String, u8)> {
    c.iter()
        .map(|(r, &v)| (r.to_string(), u8::from(v)))
        .collect()
}

fn witness_line(c: &Coloring) -> String {
    let cells: Vec<String> = c
        .iter()
        .map(|(r, &v)| format!("{r}={}", u8::from(v)))
        .collect();
    cells.join(" ")
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Rays { check, bar } => {
            let world = load_world()?;
            if check {
                return Ok("OK: 40 rays match Table 1\n".into());
            }
            Ok(match format {
                Format::Json => io::rays_json(world.geom.rays()),
                _ => io::render_ray_table(world.geom.rays(), bar),
            })
        }
        Command::Bases => {
            let world = load_world()?;
            Ok(match format {
                Format::Json => io::bases_json(&world.geom),
                Format::Dot => io::bases_dot(&world.geom),
                Format::Table => io::render_bases(&world.geom),
            })
        }
        Command::Gamma => {
            let world = load_world()?;
            Ok(match format {
                Format::Json => io::gamma_json(&world.gamma),
                _ => io::render_gamma(&world.gamma),
            })
        }
        Command::Construct {
            kind,
            gammas,
            picks,
            expand,
        } => {
            let world = load_world()?;
            let (geom, table) = (&world.geom, &world.gamma);
            if picks.is_some() && kind != "11" {
                return Err(Failure::new(1, "--picks only applies to --type 11"));
            }
            let result = match kind.as_str() {
                "11" => {
                    let [at] = gammas[..] else {
                        return Err(ConstructionError::WrongArity {
                            expected: 1,
                            got: gammas.len(),
                        }
                        .into());
                    };
                    let order = match picks {
                        None => PickOrder::Auto,
                        Some(ids) => PickOrder::Explicit(
                            ids.iter()
                                .map(|&i| {
                                    RayId::new(i).ok_or_else(|| {
                                        Failure::new(1, format!("ray {i} out of range"))
                                    })
                                })
                                .collect::<Result<_, _>>()?,
                        ),
                    };
                    construct::construct_11(geom, table, at, &order)?
                }
                "13" => construct::construct_13(geom, table, &gammas)?,
                _ => construct::construct_15(geom, table, &gammas)?,
            };
            let doc = KsSetDocument::from_set(geom, result.bases, expand).to_json();
            Ok(match format {
                Format::Json => doc,
                _ => format!("{}\n{doc}", trace_render(&result, geom)),
            })
        }
        Command::Verify { file } => {
            let world = load_world()?;
            let set = read_document(&file, &world.geom)?;
            let coloring = find_coloring(&world.geom, set);
            let sig = signature(&world.geom, set).ok().map(|s| s.to_string());
            Ok(match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "parity_proof": sig.is_some(),
                        "signature": sig,
                        "uncolorable": coloring.is_none(),
                        "witness": coloring.as_ref().map(witness_pairs),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
                _ => {
                    let mut out = match &sig {
                        Some(s) => format!("parity proof: yes; signature {s}; "),
                        None => "parity proof: no; ".to_string(),
                    };
                    out.push_str(&format!("uncolorable: {}\n", yes_no(coloring.is_none())));
                    if let Some(c) = &coloring {
                        out.push_str(&format!("witness: {}\n", witness_line(c)));
                    }
                    out
                }
            })
        }
        Command::ColorCheck { file } => {
            let world = load_world()?;
            let set = read_document(&file, &world.geom)?;
            let coloring = find_coloring(&world.geom, set);
            Ok(match (format, coloring) {
                (Format::Json, c) => {
                    let v = serde_json::json!({
                        "uncolorable": c.is_none(),
                        "witness": c.as_ref().map(witness_pairs),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
                }
                (_, None) => "uncolorable\n".into(),
                (_, Some(c)) => format!("colorable\nwitness: {}\n", witness_line(&c)),
            })
        }
        Command::Enumerate {
            classify,
            minimal,
            fixture_check,
        } => {
            let world = load_world()?;
            let full = enumerate_parity_proofs(&world.geom);
            let catalog = if minimal {
                full.minimal()
            } else {
                full.clone()
            };
            let mut out = match format {
                Format::Json => CatalogDocument::from_catalog(&catalog, classify).to_json(),
                _ => {
                    let mut s = io::render_counts(catalog.counts());
                    if classify {
                        s.push('\n');
                        for e in catalog.proofs() {
                            let ids: Vec<String> = e.set.ids().map(|i| i.to_string()).collect();
                            s.push_str(&format!("{} : {}\n", ids.join(" "), e.signature));
                        }
                    }
                    s
                }
            };
            if fixture_check {
                check_catalog(&world, &full)?;
                if format != Format::Json {
                    out.push_str("fixture check: OK\n");
                }
            }
            Ok(out)
        }
        Command::Graph { kind, out } => {
            let world = load_world()?;
            let dot = match kind {
                GraphKind::Orthogonality => io::orthogonality_dot(world.geom.rays()),
                GraphKind::Bases => io::bases_dot(&world.geom),
            };
            match out {
                Some(path) => {
                    fs::write(&path, dot).map_err(|e| {
                        Failure::new(1, format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(String::new())
                }
                None => Ok(dot),
            }
        }
    }
}

fn check_catalog(world: &World, full: &ProofCatalog) -> Result<(), Failure> {
    let kernel = kernel_parity_proofs(&IncidenceMatrix::from_geometry(&world.geom));
    if kernel != full.masks() {
        return Err(Failure::new(6, "subset scan and kernel span disagree"));
    }
    let frozen = &world.fixtures.counts;
    if full.counts() != &frozen.all {
        return Err(Failure::new(
            6,
            format!(
                "counts {:?} differ from fixture {:?}",
                full.counts(),
                frozen.all
            ),
        ));
    }
    let minimal = full.minimal();
    if minimal.counts() != &frozen.minimal {
        return Err(Failure::new(
            6,
            format!(
                "minimal counts {:?} differ from fixture {:?}",
                minimal.counts(),
                frozen.minimal
            ),
        ));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
