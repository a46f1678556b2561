//! `tcyclic` command-line front end.
//!
//! Exit codes: 0 success / all claims pass, 1 a claim failed or nothing was
//! found, 2 usage, input, or cap error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tcyclic::connectivity::{classify, Concatenation, FlowerVerdict};
use tcyclic::constructions::inflate_iterated;
use tcyclic::cyclic::{find_cyclic_ordering, has_cyclic_property, is_t_cyclic_ordering};
use tcyclic::families::{generate_kind, uniform};
use tcyclic::{
    CyclicOrdering, FamilyKind, Matroid, MatroidFile, OrderingFile, ReportFormat, SearchMode, Suite, SuiteSpec,
    VerificationReport,
};

#[derive(Parser)]
#[command(name = "tcyclic", version, about = "Matroids with cyclic arrangements of circuits and cocircuits")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Randomness source; everything is deterministic, so only `none` is accepted.
    #[arg(long, global = true, default_value = "none")]
    seed: String,
    /// Largest ground set accepted from input files.
    #[arg(long, global = true, default_value_t = 20)]
    max_n: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family member; with --out, also writes a `.ordering.json` sidecar.
    Gen {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        r: usize,
        /// Ground-set size (uniform only).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Classify an ordering as odd, even, or not t-cyclic.
    CheckOrdering {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        ordering: PathBuf,
        /// Defaults to the `t` recorded in the ordering file.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Search for an ordering.
    FindOrdering {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "t_cyclic")]
        mode: SearchMode,
    },
    /// Classify the concatenation with the given petal sizes.
    Flower {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        ordering: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        petal_sizes: Vec<usize>,
        #[arg(long)]
        k: usize,
        /// 0-based position of the first petal's first element.
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// Truncate then Higgs-lift, verifying the result is (t+2)-cyclic.
    Inflate {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        ordering: PathBuf,
        /// Defaults to the `t` recorded in the ordering file.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        r_min: usize,
        #[arg(long, default_value_t = 6)]
        r_max: usize,
        #[arg(long)]
        t: Option<usize>,
        /// Comma-separated family names; defaults to the suite's own.
        #[arg(long, value_delimiter = ',')]
        families: Vec<FamilyKind>,
    },
    /// Re-emit a JSON report in the chosen format.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(global: &Global, text: &str) -> Result<()> {
    match &global.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn load_matroid(path: &Path, global: &Global) -> Result<Matroid> {
    let file = MatroidFile::load(path).with_context(|| format!("reading {}", path.display()))?;
    if file.n > global.max_n {
        bail!("{}: n = {} exceeds --max-n {}", path.display(), file.n, global.max_n);
    }
    Ok(file.to_matroid()?)
}

fn load_ordering(path: &Path, m: &Matroid) -> Result<(OrderingFile, CyclicOrdering)> {
    let file = OrderingFile::load(path)?;
    let sigma = file.cyclic_ordering()?;
    if sigma.len() != m.n() {
        bail!("ordering has {} elements, matroid has {}", sigma.len(), m.n());
    }
    Ok((file, sigma))
}

/// `foo.json` → `foo<suffix>`; other names get the suffix appended.
fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let s = path.to_string_lossy();
    let stem = s.strip_suffix(".json").unwrap_or(&s);
    PathBuf::from(format!("{stem}{suffix}"))
}

#[derive(Serialize)]
struct OrderingVerdict {
    t: usize,
    parity: Option<String>,
    anchor: Option<usize>,
    both_clauses: bool,
    cyclic_property: Option<bool>,
    reason: Option<String>,
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    if g.seed != "none" {
        bail!("--seed accepts only `none`: every computation is deterministic");
    }
    match &cli.command {
        Command::Gen { family, r, n } => {
            if *family == FamilyKind::Uniform {
                let n = n.context("--n is required for uniform matroids")?;
                return finish_gen(g, MatroidFile::from_matroid(&uniform(*r, n)?), None);
            }
            let b = generate_kind(*family, *r)?;
            let file = OrderingFile {
                ordering: b.ordering.as_slice().to_vec(),
                t: b.t,
                parity: Some(b.parity),
            };
            let mut mf = MatroidFile::from_matroid(&b.matroid);
            mf.repr = b.source.clone();
            finish_gen(g, mf, Some(file))
        }
        Command::CheckOrdering { matroid, ordering, t } => {
            let m = load_matroid(matroid, g)?;
            let (file, sigma) = load_ordering(ordering, &m)?;
            let t = t.unwrap_or(file.t);
            let check = is_t_cyclic_ordering(&m, &sigma, t)?;
            let property = (t >= 2 && t < m.n()).then(|| has_cyclic_property(&m, &sigma, t)).transpose()?;
            let verdict = OrderingVerdict {
                t,
                parity: check.parity.map(|p| p.as_str().to_string()),
                anchor: check.anchor,
                both_clauses: check.both_clauses,
                cyclic_property: property,
                reason: check.reason.clone(),
            };
            emit(g, &to_json(&verdict))?;
            Ok(if check.is_t_cyclic() { 0 } else { 1 })
        }
        Command::FindOrdering { matroid, t, mode } => {
            let m = load_matroid(matroid, g)?;
            match find_cyclic_ordering(&m, *t, *mode)? {
                Some(sigma) => {
                    let parity = is_t_cyclic_ordering(&m, &sigma, *t)?.parity;
                    let file = OrderingFile {
                        ordering: sigma.as_slice().to_vec(),
                        t: *t,
                        parity,
                    };
                    emit(g, &file.to_json())?;
                    Ok(0)
                }
                None => {
                    emit(g, "null")?;
                    Ok(1)
                }
            }
        }
        Command::Flower {
            matroid,
            ordering,
            petal_sizes,
            k,
            start,
        } => {
            let m = load_matroid(matroid, g)?;
            let (_, sigma) = load_ordering(ordering, &m)?;
            let c = Concatenation::from_sizes(m.n(), *start, petal_sizes)?;
            let class = classify(&m, &c.flower(&sigma), *k)?;
            emit(g, &to_json(&class))?;
            Ok(if class.verdict == FlowerVerdict::NotAFlower { 1 } else { 0 })
        }
        Command::Inflate {
            matroid,
            ordering,
            t,
            iterations,
        } => {
            let m = load_matroid(matroid, g)?;
            let (file, sigma) = load_ordering(ordering, &m)?;
            let t = t.unwrap_or(file.t);
            let traces = inflate_iterated(&m, &sigma, t, *iterations)?;
            let last = traces.last().context("--iterations must be at least 1")?;
            let out_file = MatroidFile::from_matroid(&last.output);
            let out_ordering = OrderingFile {
                ordering: sigma.as_slice().to_vec(),
                t: last.t_out,
                parity: Some(last.parity),
            };
            match &g.out {
                Some(path) => {
                    std::fs::write(path, out_file.to_json())?;
                    std::fs::write(sidecar(path, ".ordering.json"), out_ordering.to_json())?;
                    std::fs::write(sidecar(path, ".trace.json"), to_json(&traces))?;
                }
                None => {
                    #[derive(Serialize)]
                    struct Bundle<'a> {
                        matroid: &'a MatroidFile,
                        ordering: &'a OrderingFile,
                        traces: &'a [tcyclic::constructions::InflationTrace],
                    }
                    println!(
                        "{}",
                        to_json(&Bundle {
                            matroid: &out_file,
                            ordering: &out_ordering,
                            traces: &traces,
                        })
                    );
                }
            }
            Ok(if traces.iter().all(|t| t.verified()) { 0 } else { 1 })
        }
        Command::Verify {
            suite,
            r_min,
            r_max,
            t,
            families,
        } => {
            if 2 * r_max > g.max_n {
                bail!("r = {r_max} gives n = {} above --max-n {}", 2 * r_max, g.max_n);
            }
            let spec = SuiteSpec {
                suite: *suite,
                families: families.clone(),
                r_min: *r_min,
                r_max: *r_max,
                t: *t,
            };
            let report = tcyclic::run_suite(&spec)?;
            emit(g, &report.emit(g.format.into()))?;
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Command::Report { input } => {
            let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let report = VerificationReport::from_json(&text)?;
            emit(g, &report.emit(g.format.into()))?;
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn finish_gen(g: &Global, file: MatroidFile, ordering: Option<OrderingFile>) -> Result<u8> {
    emit(g, &file.to_json())?;
    if let (Some(path), Some(ord)) = (&g.out, ordering) {
        std::fs::write(sidecar(path, ".ordering.json"), ord.to_json())?;
    }
    Ok(0)
}
