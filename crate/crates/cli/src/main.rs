use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use walled_brauer::center::{self, MultiPoly};
use walled_brauer::cyclotomic::{self, CyclotomicAlgebra};
use walled_brauer::isomorphism::{self, RELATION_TOL};
use walled_brauer::params::Params;
use walled_brauer::report::{Check, Report};
use walled_brauer::scalar::{format_rational, parse_rational, with_precision, Rational, DEFAULT_PRECISION};
use walled_brauer::{presentation, schur_weyl, truncation, young4, OrientedDiagram, Sequence};

const SCHEMA_VERSION: u32 = 1;
const CACHE_ENV: &str = "WBRAUER_CACHE_DIR";

#[derive(Parser)]
#[command(name = "wbrauer", version, about = "Walled Brauer algebras and their cyclotomic quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, global = true, default_value_t = 2)]
    r: usize,
    #[arg(long, global = true, default_value_t = 1)]
    t: usize,
    /// Defaults to 6, or 3 for schur-weyl.
    #[arg(long, global = true)]
    m: Option<usize>,
    #[arg(long, global = true, default_value_t = 6)]
    n: usize,
    /// Rational, e.g. 2 or -3/2.
    #[arg(long, global = true, default_value = "2", allow_hyphen_values = true)]
    delta: String,
    /// Working precision in bits for big-float computations.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    /// Residual tolerance for numeric relation checks.
    #[arg(long, global = true, default_value_t = RELATION_TOL)]
    tolerance: f64,
    /// Cache directory for built algebras; WBRAUER_CACHE_DIR overrides.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Every relation of Br_{r,t}(δ) with δ formal.
    VerifyPresentation,
    /// The mixed tensor space representation and its commutant.
    SchurWeyl,
    /// Build VB^cycl_{r,t} and check its relations and dimensions.
    BuildCyclotomic,
    /// The truncation isomorphism Br_{r,t}(−δ) ≅ f·VB^cycl·f.
    VerifyIsomorphism,
    /// Joint y-spectra against 4-Young path predictions.
    EigenCrosscheck,
    /// Central elements from polynomials and the center dimension.
    Center {
        /// Polynomials in y1..y_{r+t} or power sums p1, p2, ...
        #[arg(long = "poly", default_values_t = ["p1".to_string(), "p3".to_string(), "p1^2".to_string(), "p1*p3".to_string()])]
        polys: Vec<String>,
        /// Largest r+t for the dimension table.
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        /// Write the dimension table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// The non-central product of two JM elements.
    Counterexample,
    /// 4-Young paths for every (r,t)-sequence and the Σ f_Y² = n! check.
    Young4Tables {
        /// Write the path table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

struct Outcome {
    reports: Vec<Report>,
    data: Value,
}

impl Outcome {
    fn new(reports: Vec<Report>) -> Self {
        Outcome { reports, data: Value::Null }
    }

    fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }
}

fn params(c: &Common) -> Result<Params> {
    let delta = parse_rational(&c.delta).with_context(|| format!("--delta {:?} is not a rational", c.delta))?;
    Ok(Params::new(c.m.unwrap_or(6), c.n, delta))
}

fn cache_dir(c: &Common) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).or_else(|| c.cache_dir.clone())
}

fn algebra(c: &Common) -> Result<CyclotomicAlgebra> {
    let p = params(c)?;
    p.check_assumption(c.r, c.t).context("choose larger m, n or smaller r + t")?;
    Ok(cyclotomic::build_cached(c.r, c.t, &p, cache_dir(c).as_deref())?)
}

fn dims(alg: &CyclotomicAlgebra) -> Value {
    let blocks: Vec<Value> = alg
        .columns
        .iter()
        .flat_map(|col| {
            col.sequences.iter().zip(&col.blocks).map(move |(b, (lo, hi))| json!({"source": col.a.to_string(), "target": b.to_string(), "dim": hi - lo}))
        })
        .collect();
    json!({"blocks": blocks, "total": alg.columns.iter().map(|c| c.dim()).sum::<usize>()})
}

fn run(cmd: &Command, c: &Common) -> Result<Outcome> {
    let (r, t) = (c.r, c.t);
    if r + t == 0 {
        bail!("r + t must be positive");
    }
    Ok(match cmd {
        Command::VerifyPresentation => {
            let mut counts = Report::new(format!("|enumerate(a, b)| = ({})!", r + t));
            let fact: usize = (1..=r + t).product();
            for a in Sequence::all(r, t) {
                for b in Sequence::all(r, t) {
                    let got = OrientedDiagram::enumerate(&a, &b).len();
                    counts.push(Check::flag("diagram count", got == fact, format!("{got}")).with_orientation(format!("{a}→{b}")));
                }
            }
            Outcome::new(vec![presentation::verify_presentation(r, t), counts])
        }
        Command::SchurWeyl => {
            let m = c.m.unwrap_or(3);
            Outcome::new(vec![schur_weyl::verify_rep_is_homomorphism(m, r, t), schur_weyl::commutant_report(m, r, t)])
        }
        Command::BuildCyclotomic => {
            let alg = algebra(c)?;
            let mut reps = vec![cyclotomic::verify_algebra(&alg)];
            reps.extend(alg.columns.iter().map(|col| cyclotomic::check_affine(col, &alg.params)));
            Outcome::new(reps).with_data(dims(&alg))
        }
        Command::VerifyIsomorphism => {
            let alg = algebra(c)?;
            let rep = with_precision(c.precision, || isomorphism::verify_isomorphism(&alg, c.precision, c.tolerance))?;
            Outcome::new(vec![rep])
        }
        Command::EigenCrosscheck => {
            let alg = algebra(c)?;
            Outcome::new(vec![truncation::eigen_cross_check(&alg)?, truncation::f_properties(&alg)?])
        }
        Command::Center { polys, max_rank, csv } => {
            let br = walled_brauer::WalledBrauer::formal(r, t);
            let mut central = Report::new(format!("central elements of Br_{{{r},{t}}}(δ), δ formal"));
            let mut elements = Vec::new();
            for s in polys {
                let p = MultiPoly::parse(s, r + t)?;
                let z = center::central_element(&p, r, t)?;
                let rep = center::verify_central(&br, &z);
                let ok = rep.passed();
                central.push(Check::flag(format!("{s} is central"), ok, format!("{} terms", z.len())));
                elements.push(json!({"polynomial": s, "expanded": p.to_string(), "terms": z.len(), "central": ok}));
            }
            let delta = params(c)?.delta;
            let mut table = Report::new(format!("center dimensions at δ = {}", format_rational(&delta)));
            let mut rows = Vec::new();
            for n in 1..=*max_rank {
                for rr in (0..=n).rev() {
                    let (row, rep) = center::center_dimension(rr, n - rr, &delta)?;
                    table.extend(rep);
                    rows.push(row);
                }
            }
            if let Some(path) = csv {
                let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
                for row in &rows {
                    w.serialize(row)?;
                }
                w.flush()?;
            }
            Outcome::new(vec![central, table]).with_data(json!({"elements": elements, "dimensions": rows}))
        }
        Command::Counterexample => Outcome::new(vec![center::reproduce_counterexample()]),
        Command::Young4Tables { csv } => {
            let p = params(c)?;
            let mut rep = Report::new("Σ_Y f_Y² = n!");
            for n in 1..=6 {
                let fact: usize = (1..=n).product();
                let q = widened(&p, n);
                let got = young4::sum_of_squares(n, &q)?;
                let detail = format!("{got} vs {fact} at m = n = {}", q.m);
                rep.push(Check::flag(format!("n = {n}"), got == fact, detail));
            }
            let mut counts = Vec::new();
            let mut text = String::new();
            for a in Sequence::all(r, t) {
                let all = young4::enumerate_paths(&a, &p, young4::PathFilter::All)?;
                let small = young4::enumerate_paths(&a, &p, young4::PathFilter::Small)?;
                counts.push(json!({"sequence": a.to_string(), "paths": all.len(), "small": small.len()}));
                let table = young4::paths_csv(&all, &p);
                if text.is_empty() {
                    text = table;
                } else {
                    text.extend(table.lines().skip(1).map(|l| format!("{l}\n")));
                }
            }
            if let Some(path) = csv {
                std::fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            }
            Outcome::new(vec![rep]).with_data(json!({"paths": counts}))
        }
    })
}

/// The given parameters if n all-∧ steps satisfy the size assumption, else
/// the smallest m = n that does.
fn widened(p: &Params, steps: usize) -> Params {
    let mut q = p.clone();
    let mut k = p.m.max(p.n);
    while q.check_assumption(steps, 0).is_err() {
        k += 1;
        q = Params::new(k, k, p.delta.clone());
    }
    q
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::VerifyPresentation => "verify-presentation",
        Command::SchurWeyl => "schur-weyl",
        Command::BuildCyclotomic => "build-cyclotomic",
        Command::VerifyIsomorphism => "verify-isomorphism",
        Command::EigenCrosscheck => "eigen-crosscheck",
        Command::Center { .. } => "center",
        Command::Counterexample => "counterexample",
        Command::Young4Tables { .. } => "young4-tables",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let start = Instant::now();
    let outcome = match run(&cli.command, c) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let passed = outcome.reports.iter().all(Report::passed);
    let delta: Option<Rational> = parse_rational(&c.delta).ok();
    let doc = json!({
        "version": SCHEMA_VERSION,
        "command": command_name(&cli.command),
        "config": {
            "r": c.r, "t": c.t, "m": c.m, "n": c.n,
            "delta": delta.as_ref().map(format_rational),
            "precision_bits": c.precision,
            "tolerance": c.tolerance,
        },
        "passed": passed,
        "elapsed_ms": start.elapsed().as_millis() as u64,
        "reports": outcome.reports,
        "data": outcome.data,
    });
    let text = serde_json::to_string_pretty(&doc).expect("report serialises");
    match &c.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
