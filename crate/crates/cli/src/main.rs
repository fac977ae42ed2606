//! `gcr`: Gröbner bases, ring-map kernels, graded groups, Steenrod actions and
//! catalog verification from the command line.
//!
//! Exit status is 0 on success, 1 when a verification fails or a deadline
//! expires, and 2 for usage and input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use gcr_core::catalog::{self, Catalog, RunSettings, VerificationOutcome, NOTATION};
use gcr_core::format::{parse_file, parse_polynomial, SourceFile};
use gcr_core::graded::{graded_groups, hilbert_dims};
use gcr_core::hilton::{wedge_homotopy, SphereHomotopyTable, WedgeOfSpheres};
use gcr_core::{groebner_basis_with, Error, GroebnerOptions, MonomialOrder};
use rayon::prelude::*;
use serde_json::json;

const DEFAULT_MAX_DEGREE: u32 = 12;

// Writes to stdout, ignoring errors such as a closed pipe so that the exit
// status still reports the outcome.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "gcr", version, about = "Exact computations in graded commutative rings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Give up after this many seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    deadline: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of a named ideal.
    Gb {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Normal form of a polynomial modulo a named ideal.
    Nf {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Kernel of a named ring map.
    Kernel {
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Ideal membership; exits 1 when the polynomial is not a member.
    Member {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Degreewise additive groups of a named ring.
    Groups {
        file: PathBuf,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Degreewise dimensions of a named ring over a field.
    Hilbert {
        file: PathBuf,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Checks a named Steenrod action; exits 1 on any failed axiom.
    Steenrod {
        file: PathBuf,
        #[arg(long)]
        sq: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Homotopy group of a wedge of spheres.
    Hilton {
        /// Sphere dimensions, e.g. 2,2,3.
        #[arg(long, value_delimiter = ',', required = true)]
        spheres: Vec<u32>,
        #[arg(long)]
        n: u32,
        /// Additional sphere table entries, one `pi N M = GROUP` per line.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Runs catalog scenarios; exits 1 if any fails.
    Verify {
        #[arg(long, conflicts_with_all = ["all", "list"])]
        scenario: Option<String>,
        #[arg(long)]
        all: bool,
        /// Lists scenario names and statements.
        #[arg(long)]
        list: bool,
        /// Replaces same-named catalog declarations with those in FILE.
        #[arg(long, value_name = "FILE")]
        r#override: Option<PathBuf>,
        /// Degree bound replacing each scenario's default.
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Verification,
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Timeout) => {
                eprintln!("gcr: {e:#}");
                Failure::Verification
            }
            _ => Failure::Usage(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::from(e))
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("gcr: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let deadline = match cli.deadline {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(Failure::Usage(anyhow!("--deadline must be a non-negative number")))
        }
        Some(s) => Some(Instant::now() + Duration::from_secs_f64(s)),
        None => None,
    };
    let opts = GroebnerOptions::with_deadline(deadline);
    let fmt = cli.format;
    match cli.command {
        Command::Gb { file, ideal } => {
            let src = load(&file)?;
            let ideal = src.ideal(&ideal)?;
            let gb = groebner_basis_with(ideal, &MonomialOrder::DegRevLex, &opts)?;
            let elems: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
            match fmt {
                Format::Text => elems.iter().enumerate().for_each(|(i, p)| outln!("_[{}]={p}", i + 1)),
                Format::Json => outln!("{}", json!({ "ring": ideal.ring().to_string(), "basis": elems })),
            }
            Ok(())
        }
        Command::Nf { file, ideal, poly } => {
            let src = load(&file)?;
            let ideal = src.ideal(&ideal)?;
            let f = parse_polynomial(ideal.ring(), &poly)?;
            let gb = groebner_basis_with(ideal, &MonomialOrder::DegRevLex, &opts)?;
            let r = gb.normal_form(&f)?;
            match fmt {
                Format::Text => outln!("{r}"),
                Format::Json => outln!("{}", json!({ "poly": f.to_string(), "normal_form": r.to_string() })),
            }
            Ok(())
        }
        Command::Member { file, ideal, poly } => {
            let src = load(&file)?;
            let ideal = src.ideal(&ideal)?;
            let f = parse_polynomial(ideal.ring(), &poly)?;
            let gb = groebner_basis_with(ideal, &MonomialOrder::DegRevLex, &opts)?;
            let member = gb.contains(&f)?;
            match fmt {
                Format::Text => outln!("{}", if member { "member" } else { "not a member" }),
                Format::Json => outln!("{}", json!({ "poly": f.to_string(), "member": member })),
            }
            if member {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Kernel { file, map } => {
            let src = load(&file)?;
            let map = src.map(&map)?;
            let kernel = if map.source().is_free() {
                map.kernel_with(&opts)?
            } else {
                map.kernel_of_quotient_map_with(&opts)?
            };
            let gens: Vec<String> = kernel.generators().iter().map(|p| p.to_string()).collect();
            match fmt {
                Format::Text if gens.is_empty() => outln!("(0)"),
                Format::Text => gens.iter().enumerate().for_each(|(i, p)| outln!("_[{}]={p}", i + 1)),
                Format::Json => outln!("{}", json!({ "generators": gens })),
            }
            Ok(())
        }
        Command::Groups { file, ring, max_degree } => {
            let src = load(&file)?;
            let pres = src.ring(&ring)?;
            let max = degree_bound(max_degree)?;
            pres.gb_with(&opts)?;
            let groups = graded_groups(pres, max)?;
            match fmt {
                Format::Text => out!("{groups}"),
                Format::Json => {
                    let slices: Vec<_> = (0..=max).map(|n| json!({ "degree": n, "group": groups.render_slice(n) })).collect();
                    outln!("{}", json!({ "ring": ring, "slices": slices }))
                }
            }
            Ok(())
        }
        Command::Hilbert { file, ring, max_degree } => {
            let src = load(&file)?;
            let pres = src.ring(&ring)?;
            let max = degree_bound(max_degree)?;
            pres.gb_with(&opts)?;
            let dims = hilbert_dims(pres, max)?;
            match fmt {
                Format::Text => {
                    let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                    outln!("{}", parts.join(","))
                }
                Format::Json => outln!("{}", json!({ "ring": ring, "dims": dims })),
            }
            Ok(())
        }
        Command::Steenrod { file, sq, max_degree } => {
            let src = load(&file)?;
            let action = src.action(&sq)?;
            let max = degree_bound(max_degree)?;
            action.presentation().gb_with(&opts)?;
            let report = action.verify(max)?;
            match fmt {
                Format::Text => outln!("{}", report.to_string().trim_end()),
                Format::Json => outln!(
                    "{}",
                    json!({
                        "sq": sq,
                        "status": if report.passed() { "pass" } else { "fail" },
                        "checks": report.checks,
                        "failures": report.failures().collect::<Vec<_>>(),
                    })
                ),
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Hilton { spheres, n, table } => {
            let mut t = SphereHomotopyTable::standard();
            if let Some(path) = table {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let extra = SphereHomotopyTable::parse(&text)
                    .with_context(|| format!("in {}", path.display()))?;
                t.extend(&extra)?;
            }
            let wedge = WedgeOfSpheres::new(spheres)?;
            let group = wedge_homotopy(&wedge, n, &t)?;
            match fmt {
                Format::Text => outln!("{group}"),
                Format::Json => outln!("{}", json!({ "wedge": wedge.to_string(), "n": n, "group": group.to_string() })),
            }
            Ok(())
        }
        Command::Verify { scenario, all, list, r#override, max_degree } => {
            if list {
                return list_scenarios(fmt);
            }
            let mut cat = Catalog::builtin()?;
            if let Some(path) = r#override {
                cat = cat.with_overrides(&load(&path)?)?;
            }
            let settings = RunSettings {
                max_degree: match max_degree {
                    Some(d) => Some(d),
                    None => env_max_degree()?,
                },
                deadline,
            };
            let names: Vec<&str> = match (scenario.as_deref(), all) {
                (Some(name), false) => vec![catalog::find_scenario(name)?.name],
                (None, true) => catalog::list_scenarios().iter().map(|s| s.name).collect(),
                _ => return Err(Failure::Usage(anyhow!("pass --scenario NAME, --all or --list"))),
            };
            verify(&names, &cat, &settings, fmt, all)
        }
    }
}

fn verify(names: &[&str], cat: &Catalog, settings: &RunSettings, fmt: Format, all: bool) -> CmdResult {
    let results: Vec<Result<VerificationOutcome, Error>> = names
        .par_iter()
        .map(|name| catalog::run_scenario_with(name, cat, settings))
        .collect();
    let mut failed = false;
    let mut outcomes = Vec::new();
    for (name, result) in names.iter().zip(results) {
        match result {
            Ok(o) => {
                failed |= !o.passed();
                outcomes.push(o);
            }
            Err(Error::Timeout) => {
                eprintln!("gcr: {name}: deadline exceeded");
                failed = true;
            }
            Err(e) => return Err(Failure::Usage(anyhow!(e).context(format!("scenario {name}")))),
        }
    }
    match fmt {
        Format::Json if all => outln!("{}", serde_json::to_string_pretty(&outcomes).map_err(anyhow::Error::from)?),
        Format::Json => {
            for o in &outcomes {
                outln!("{}", serde_json::to_string_pretty(o).map_err(anyhow::Error::from)?);
            }
        }
        Format::Text if all => {
            for o in &outcomes {
                outln!("{:<32} {o}  ({} ms)", o.scenario, o.millis);
            }
            outln!();
            outln!("notation (published symbol -> catalog name):");
            for (published, ascii) in NOTATION {
                outln!("  {published:<28} {ascii}");
            }
        }
        Format::Text => outcomes.iter().for_each(|o| outln!("{o}")),
    }
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn list_scenarios(fmt: Format) -> CmdResult {
    let list = catalog::list_scenarios();
    match fmt {
        Format::Text => {
            for s in list {
                outln!("{:<32} {}", s.name, s.description);
            }
        }
        Format::Json => {
            let items: Vec<_> = list
                .iter()
                .map(|s| json!({ "name": s.name, "kind": s.kind, "description": s.description, "statement": s.statement }))
                .collect();
            outln!("{}", serde_json::to_string_pretty(&items).map_err(anyhow::Error::from)?);
        }
    }
    Ok(())
}

fn load(path: &Path) -> Result<SourceFile, Failure> {
    let src = parse_file(path).map_err(|d| Failure::Usage(anyhow!("{}:{d}", path.display())))?;
    for w in &src.warnings {
        eprintln!("{}:{w}", path.display());
    }
    Ok(src)
}

fn env_max_degree() -> Result<Option<u32>, Failure> {
    match std::env::var("GCR_MAX_DEGREE") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(anyhow!("GCR_MAX_DEGREE must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn degree_bound(flag: Option<u32>) -> Result<u32, Failure> {
    Ok(match flag {
        Some(d) => d,
        None => env_max_degree()?.unwrap_or(DEFAULT_MAX_DEGREE),
    })
}
