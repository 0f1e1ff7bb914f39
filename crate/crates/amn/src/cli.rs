//! The `amn` command line: zoo listing, pipeline analysis, pointwise norm
//! evaluation, convergence curves and the verification suite.
//!
//! Exit codes separate three failure kinds: 2 for bad input (spec or point
//! parse errors), 1 for a broken internal invariant (panics are caught and
//! mapped) or a failed verification, 0 otherwise. A mathematical verdict
//! like HYPOTHESES_VIOLATED is report content, not a failure: analyze still
//! exits 0.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::asymptote::{delta0, geometric_schedule, Delta0Mode, LimitEstimate};
use crate::field::unit_quadrature;
use crate::hypotheses::estimate_translation_defect;
use crate::report::{
    analyze_space, convergence_csv, report_to_json, verify_space, PipelineConfig,
};
use crate::space::{parse_space_spec, zoo_catalog, DistanceSpace, Vector};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "amn",
    about = "Asymptotic norm extraction for metric vector spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect the zoo of analytically solved spaces.
    Zoo {
        #[command(subcommand)]
        command: ZooCommand,
    },
    /// Run the full pipeline on a space spec and emit a JSON report.
    Analyze {
        /// Space spec, e.g. zoo:lp?field=R&dim=3&p=2
        spec: String,
        #[command(flatten)]
        flags: CommonFlags,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pointwise norm estimates.
    Norm {
        #[command(subcommand)]
        command: NormCommand,
    },
    /// Emit the per-schedule-point convergence curve as CSV.
    Convergence {
        spec: String,
        /// Flattened real coordinates, comma separated.
        #[arg(long)]
        point: String,
        #[command(flatten)]
        flags: CommonFlags,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite; exit 0 iff every check passes.
    Verify {
        spec: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

#[derive(Subcommand, Debug)]
enum ZooCommand {
    /// List zoo members with parameters and analytic ground truth.
    List,
}

#[derive(Subcommand, Debug)]
enum NormCommand {
    /// Estimate the extracted norm at one point.
    Eval {
        spec: String,
        /// Flattened real coordinates, comma separated (a ℂ/ℍ coordinate
        /// contributes 2/4 reals).
        #[arg(long)]
        point: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

#[derive(Args, Clone, Debug)]
struct CommonFlags {
    /// Seed for every sampled estimator.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample count for fits and checks.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Largest schedule point (rounded down to a power of two).
    #[arg(long = "n-max", default_value_t = 1 << 20)]
    n_max: u64,
    /// Unit-group quadrature resolution.
    #[arg(long, default_value_t = 64)]
    quad: u32,
    /// Relative null threshold for E₀ detection.
    #[arg(long = "tol-null", default_value_t = 1e-3)]
    tol_null: f64,
    /// λ sweep magnitudes run over 2^0 .. 2^this.
    #[arg(long = "lambda-max-exp", default_value_t = 10)]
    lambda_max_exp: u32,
}

impl CommonFlags {
    fn to_config(&self) -> PipelineConfig {
        PipelineConfig {
            seed: self.seed,
            samples: self.samples,
            n_max: self.n_max,
            quad_resolution: self.quad,
            tol_null_rel: self.tol_null,
            lambda_max_exp: self.lambda_max_exp,
        }
    }
}

/// Parse arguments, dispatch, and map outcomes to exit codes.
pub fn run() -> i32 {
    init_worker_pool();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let is_help = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if is_help { 0 } else { 2 };
        }
    };
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(cli))) {
        Ok(Ok(code)) => code,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            match err {
                Error::SpecParse(_) | Error::InvalidParameter(_) => 2,
                _ => 1,
            }
        }
        Err(_) => {
            eprintln!("error: internal invariant violated");
            1
        }
    }
}

/// `AMN_THREADS` caps worker parallelism; absent means the rayon default.
fn init_worker_pool() {
    if let Some(n) = std::env::var("AMN_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n >= 1)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Zoo { command: ZooCommand::List } => {
            print!("{}", render_zoo_list());
            Ok(0)
        }
        Command::Analyze { spec, flags, out } => {
            let space = parse_space_spec(&spec)?;
            let report = analyze_space(&space, &flags.to_config())?;
            write_output(out.as_deref(), &report_to_json(&report)?)?;
            Ok(0)
        }
        Command::Norm { command: NormCommand::Eval { spec, point, flags } } => {
            let space = parse_space_spec(&spec)?;
            let x = parse_point(&space, &point)?;
            let est = norm_estimate_at(&space, &x, &flags)?;
            println!("value {}", est.value);
            println!("upper_envelope {}", est.upper_envelope);
            println!("last_gap {}", est.last_gap);
            Ok(0)
        }
        Command::Convergence { spec, point, flags, out } => {
            let space = parse_space_spec(&spec)?;
            let x = parse_point(&space, &point)?;
            let est = norm_estimate_at(&space, &x, &flags)?;
            write_output(out.as_deref(), &convergence_csv(&est))?;
            Ok(0)
        }
        Command::Verify { spec, flags } => {
            let space = parse_space_spec(&spec)?;
            let outcome = verify_space(&space, &flags.to_config())?;
            print!("{}", outcome.render_table());
            Ok(if outcome.passed { 0 } else { 1 })
        }
    }
}

fn render_zoo_list() -> String {
    let mut out = String::new();
    for entry in zoo_catalog() {
        out.push_str(&format!(
            "{}  [{}]  e.g. {}  --  {}\n",
            entry.name, entry.parameters, entry.example_spec, entry.summary
        ));
    }
    out
}

/// The norm estimate the `norm eval` and `convergence` commands share:
/// δ̂₀(x, 0) with the averaged-then-limit evaluator and an estimated C₀.
fn norm_estimate_at(
    space: &DistanceSpace,
    x: &Vector,
    flags: &CommonFlags,
) -> Result<LimitEstimate> {
    let c0 = estimate_translation_defect(space, flags.seed, flags.samples);
    let quad = unit_quadrature(space.field(), flags.quad, flags.seed)?;
    let schedule = geometric_schedule(flags.n_max);
    delta0(
        space,
        &quad,
        c0,
        x,
        &space.zero_vector(),
        &schedule,
        Delta0Mode::AvgThenLimit,
    )
}

fn parse_point(space: &DistanceSpace, raw: &str) -> Result<Vector> {
    let reals = raw
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| Error::SpecParse(format!("bad coordinate '{part}' in point")))
        })
        .collect::<Result<Vec<f64>>>()?;
    let expected = space.dim() * space.field().components();
    if reals.len() != expected {
        return Err(Error::SpecParse(format!(
            "point has {} real coordinates, space {} needs {expected}",
            reals.len(),
            space.label()
        )));
    }
    Vector::from_reals(space.field(), &reals)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
        }
        Some(p) => std::fs::write(p, content)?,
    }
    Ok(())
}
