//! `mumford`: JSON front end to the stratification library.
//!
//! Every command prints one JSON document on stdout. Failures print
//! `{"error": ...}` and exit with status 2; a command whose checks fail
//! prints its report and exits with status 1.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use mumford_core::conformance::{run_verify, Suite};
use mumford_core::dynamics::lax::{lax_field_i, sigma_float, sigma_of_matrix};
use mumford_core::flow::flow_integrate;
use mumford_core::json::{parse, ComplexPointJson, ComplexPolyJson, MatrixJson, PointJson, PolyJson, SpectralJson};
use mumford_core::linalg::{float_rank, rank};
use mumford_core::mumford::{rho_float, rho_of_matrix, MumfordMatrix, SpectralPoly};
use mumford_core::strata::{
    classify, classify_float, enumerate_strata, jacobian_moment, sample_stratum, sample_stratum_float, StratumLabel,
};
use mumford_core::{Poly, Rational, C64, DEFAULT_EPS};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Parser, Debug)]
#[command(name = "mumford", version, about = "Strata of Mumford system fibers")]
struct Cli {
    #[arg(long, value_enum, default_value = "exact", global = true)]
    mode: Mode,
    /// Tolerance for float-mode rank and fiber tests.
    #[arg(long, default_value_t = DEFAULT_EPS, global = true)]
    epsilon: f64,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stratum label of a point on the fiber over `h`.
    Classify {
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
    /// Every stratum of the fiber over `h`, with closure edges.
    FiberStrata {
        #[arg(long)]
        h: PathBuf,
    },
    /// A point of the stratum of dimension `i` (gcd `q` if given).
    Sample {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        q: Option<PathBuf>,
        /// Exact rational sampling (overrides --mode).
        #[arg(long)]
        exact: bool,
    },
    /// Jacobian of the moment map and the rank law `2g + 1 − ρ`.
    Jacobian {
        #[arg(long)]
        point: PathBuf,
    },
    /// Run a conformance suite.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
    },
    /// RK4 integration of `D_i` with a conservation report.
    Flow {
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
    },
    /// The fields `D_0..D_{g−1}` evaluated at a point.
    VectorFields {
        #[arg(long)]
        point: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    All,
    Resultants,
    Poisson,
    Strata,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Resultants => Suite::Resultants,
            SuiteArg::Poisson => Suite::Poisson,
            SuiteArg::Strata => Suite::Strata,
        }
    }
}

/// The JSON document and whether every check it reports held.
struct Output {
    doc: Value,
    ok: bool,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_point(path: &Path) -> anyhow::Result<MumfordMatrix<Rational>> {
    Ok(parse::<PointJson>(&read(path)?)?.to_point()?)
}

fn load_spectral(path: &Path) -> anyhow::Result<SpectralPoly> {
    Ok(parse::<SpectralJson>(&read(path)?)?.to_spectral()?)
}

fn load_poly(path: &Path) -> anyhow::Result<Poly<Rational>> {
    Ok(parse::<PolyJson>(&read(path)?)?.to_poly()?)
}

fn to_json<T: serde::Serialize>(v: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn tangent_json(a: &MumfordMatrix<C64>, i: usize) -> Value {
    let d = lax_field_i(a, i);
    json!({
        "i": i,
        "du": ComplexPolyJson::from_poly(&d.du),
        "dv": ComplexPolyJson::from_poly(&d.dv),
        "dw": ComplexPolyJson::from_poly(&d.dw),
    })
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    if !(cli.epsilon.is_finite() && cli.epsilon > 0.0) {
        bail!("--epsilon must be positive");
    }
    let eps = cli.epsilon;
    let exact = cli.mode == Mode::Exact;
    match &cli.command {
        Command::Classify { point, h } => {
            let a = load_point(point)?;
            let h = load_spectral(h)?;
            if exact {
                let label = classify(&a, &h)?;
                Ok(Output { doc: to_json(&label)?, ok: true })
            } else {
                let i = classify_float(&a.to_float(), &h.h().to_field(), eps)?;
                Ok(Output { doc: json!({ "g": a.g(), "i": i }), ok: true })
            }
        }
        Command::FiberStrata { h } => {
            let lattice = enumerate_strata(&load_spectral(h)?)?;
            let ok = lattice.closure_consistent();
            let mut doc = to_json(&lattice)?;
            doc["closure_consistent"] = json!(ok);
            Ok(Output { doc, ok })
        }
        Command::Sample { h, i, q, exact: force_exact } => {
            let h = load_spectral(h)?;
            let g = h.g();
            if *i > g {
                bail!("stratum index {i} exceeds g = {g}");
            }
            let label = match q {
                Some(q) => StratumLabel::new(&h, load_poly(q)?)?,
                None => enumerate_strata(&h)?
                    .labels
                    .into_iter()
                    .find(|l| l.i == *i)
                    .ok_or_else(|| anyhow!("stratum of dimension {i} is empty"))?,
            };
            if label.i != *i {
                bail!("q has degree {} but --i {i} needs degree {}", g - label.i, g - i);
            }
            let doc = if *force_exact || exact {
                let a = sample_stratum(&label, cli.seed)?;
                json!({ "label": to_json(&label)?, "point": PointJson::from_point(&a) })
            } else {
                let a = sample_stratum_float(&label, cli.seed)?;
                json!({ "label": to_json(&label)?, "point": ComplexPointJson::from_point(&a) })
            };
            Ok(Output { doc, ok: true })
        }
        Command::Jacobian { point } => {
            let a = load_point(point)?;
            let g = a.g();
            if exact {
                let j = jacobian_moment(&a);
                let (r, rho) = (rank(&j), rho_of_matrix(&a)?.0);
                let ok = r + rho == 2 * g + 1;
                let doc = json!({
                    "g": g, "jacobian": MatrixJson::from_matrix(&j), "rank": r, "rho": rho,
                    "expected_rank": 2 * g + 1 - rho, "rank_law_holds": ok,
                });
                Ok(Output { doc, ok })
            } else {
                let af = a.to_float();
                let (r, rho) = (float_rank(&jacobian_moment(&af), eps), rho_float(&af, eps)?);
                let ok = r + rho == 2 * g + 1;
                let doc = json!({
                    "g": g, "rank": r, "rho": rho, "expected_rank": 2 * g + 1 - rho, "rank_law_holds": ok,
                });
                Ok(Output { doc, ok })
            }
        }
        Command::Verify { suite } => {
            let report = run_verify((*suite).into(), cli.seed);
            Ok(Output { ok: report.passed, doc: to_json(&report)? })
        }
        Command::Flow { point, i, t, dt } => {
            let a = load_point(point)?.to_float();
            let report = flow_integrate(&a, *i, *t, *dt)?;
            let ok = report.max_rel_drift.is_finite();
            Ok(Output { doc: to_json(&report)?, ok })
        }
        Command::VectorFields { point } => {
            let a = load_point(point)?;
            let af = a.to_float();
            let sigma = if exact { sigma_of_matrix(&a) } else { sigma_float(&af, eps) };
            let fields: Vec<Value> = (0..a.g()).map(|i| tangent_json(&af, i)).collect();
            Ok(Output { doc: json!({ "g": a.g(), "sigma": sigma, "fields": fields }), ok: true })
        }
    }
}

fn emit(doc: &Value, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(doc)?;
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if let Some(path) = out {
        fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn fail(msg: String) -> ExitCode {
    println!("{}", json!({ "error": msg }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(e.render().to_string().trim().to_string()),
    };
    match run(&cli).and_then(|o| emit(&o.doc, cli.out.as_deref()).map(|_| o.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => fail(format!("{e:#}")),
    }
}
