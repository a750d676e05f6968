//! Batch command-line front end: verification suites, kernel evaluation,
//! kernel-slice tables, and kernel ridge regression fit/predict.
//!
//! Exit codes: 0 success, 1 runtime or failed verification, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyrbf::kernels::{KernelFamily, KernelSpec};
use polyrbf::mlkit;
use polyrbf_cli::cplx::{format_complex, parse_complex};
use polyrbf_cli::suites;
use polyrbf_cli::table;

#[derive(Parser)]
#[command(name = "polyrbf", version, about = "Polyanalytic Gaussian RBF kernel toolbox")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report per-check pass/fail.
    Verify {
        /// One of: specfun, kernels, polygauss, transforms, mlkit, all
        suite: String,
        /// Write the report as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Zero out the wall-time field for byte-reproducible reports.
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Evaluate one kernel at a point pair.
    Kernel(KernelArgs),
    /// Write kernel values over a grid as CSV.
    Table(TableArgs),
    /// Kernel ridge regression.
    #[command(subcommand)]
    Krr(KrrCommand),
}

#[derive(Args)]
struct KernelParams {
    /// fock | polyfock | truepolyfock | rbf | truepolyrbf | polyrbf |
    /// polyrbf_rd | mehlersum | krho
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1)]
    order: u32,
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    /// Translation parameter of the shifted block sums.
    #[arg(long, default_value_t = 0.0)]
    a: f64,
}

#[derive(Args)]
struct KernelArgs {
    #[command(flatten)]
    params: KernelParams,
    /// First argument, complex literal like 0.5+0.25i (complex families).
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// Second argument, complex literal (complex families).
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// First vector, comma-separated reals (family polyrbf_rd).
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Second vector, comma-separated reals (family polyrbf_rd).
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    params: KernelParams,
    /// Grid as min:max:steps, optionally two comma-separated axes.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Fixed second argument for complex families.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    w: String,
    /// Output CSV path.
    out: PathBuf,
}

#[derive(Subcommand)]
enum KrrCommand {
    /// Fit on a CSV with a named target column and save the model as JSON.
    Fit {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 2.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1)]
        order: u32,
        #[arg(long, default_value_t = 1e-10)]
        lambda: f64,
        #[arg(long)]
        model: PathBuf,
    },
    /// Predict a feature CSV with a saved model; writes one `prediction`
    /// column.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_family(s: &str) -> Result<KernelFamily, String> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "fock" => KernelFamily::Fock,
        "polyfock" => KernelFamily::PolyFock,
        "truepolyfock" => KernelFamily::TruePolyFock,
        "rbf" => KernelFamily::Rbf,
        "truepolyrbf" => KernelFamily::TruePolyRbf,
        "polyrbf" => KernelFamily::PolyRbf,
        "polyrbf_rd" => KernelFamily::PolyRbfRd,
        "mehlersum" => KernelFamily::MehlerSum,
        "krho" => KernelFamily::KRho,
        other => return Err(format!("unknown kernel family '{other}'")),
    })
}

fn build_spec(p: &KernelParams) -> Result<KernelSpec, String> {
    let spec = KernelSpec {
        family: parse_family(&p.family)?,
        alpha: p.alpha,
        gamma: p.gamma,
        order: p.order,
        rho: p.rho,
        shift_a: p.a,
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn parse_vector(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("bad vector entry '{v}'")))
        .collect()
}

/// 2 = usage/parameter problem, 1 = runtime/IO problem.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<polyrbf::Error> for Failure {
    fn from(e: polyrbf::Error) -> Self {
        match e {
            polyrbf::Error::Domain(_)
            | polyrbf::Error::DimensionMismatch { .. }
            | polyrbf::Error::QuadOrder(_)
            | polyrbf::Error::SeriesBudget { .. } => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Verify { suite, json, no_timestamp } => {
            let mut report = suites::run_suite(&suite).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown suite '{suite}'; expected one of {}",
                    suites::SUITE_NAMES.join(", ")
                ))
            })?;
            if no_timestamp {
                report.wall_time = 0.0;
            }
            for chk in &report.checks {
                println!(
                    "[{}] {}  measured={:.3e} tol={:.1e}  ({})",
                    if chk.passed { "PASS" } else { "FAIL" },
                    chk.id,
                    chk.measured,
                    chk.tolerance,
                    chk.description
                );
            }
            let passed = report.all_passed();
            println!(
                "suite {}: {}/{} checks passed",
                report.suite_name,
                report.checks.iter().filter(|c| c.passed).count(),
                report.checks.len()
            );
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report)
                    .map_err(|e| Failure::Runtime(e.to_string()))?;
                std::fs::write(&path, text).map_err(|e| Failure::Runtime(e.to_string()))?;
            }
            Ok(passed)
        }
        Command::Kernel(args) => {
            let spec = build_spec(&args.params).map_err(Failure::Usage)?;
            if spec.family == KernelFamily::PolyRbfRd {
                let x = parse_vector(
                    args.x.as_deref().ok_or_else(|| Failure::Usage("--x required".into()))?,
                )
                .map_err(Failure::Usage)?;
                let y = parse_vector(
                    args.y.as_deref().ok_or_else(|| Failure::Usage("--y required".into()))?,
                )
                .map_err(Failure::Usage)?;
                let v = spec.evaluate_rd(&x, &y)?;
                println!("{v:.16e}");
            } else {
                let z = parse_complex(
                    args.z.as_deref().ok_or_else(|| Failure::Usage("--z required".into()))?,
                )
                .map_err(Failure::Usage)?;
                let w = parse_complex(
                    args.w.as_deref().ok_or_else(|| Failure::Usage("--w required".into()))?,
                )
                .map_err(Failure::Usage)?;
                let v = spec.evaluate(z, w)?;
                println!("{}", format_complex(v.value));
            }
            Ok(true)
        }
        Command::Table(args) => {
            let spec = build_spec(&args.params).map_err(Failure::Usage)?;
            let grid = table::parse_grid(&args.grid).map_err(Failure::Usage)?;
            let w = parse_complex(&args.w).map_err(Failure::Usage)?;
            let text = table::render_table(&spec, grid, w)?;
            std::fs::write(&args.out, text).map_err(|e| Failure::Runtime(e.to_string()))?;
            Ok(true)
        }
        Command::Krr(KrrCommand::Fit { data, target, gamma, order, lambda, model }) => {
            let dataset = mlkit::load_csv(&data, Some(&target))?;
            let spec = KernelSpec {
                family: KernelFamily::PolyRbfRd,
                gamma,
                order,
                ..Default::default()
            };
            spec.validate()?;
            let fitted = mlkit::krr_fit(&spec, &dataset, lambda)?;
            mlkit::save_model(&fitted, &model)?;
            println!(
                "fit {} rows of dimension {} (jitter {:.1e})",
                dataset.len(),
                dataset.dim(),
                fitted.jitter_used
            );
            Ok(true)
        }
        Command::Krr(KrrCommand::Predict { model, data, out }) => {
            let fitted = mlkit::load_model(&model)?;
            let dataset = mlkit::load_csv(&data, None)?;
            let preds = mlkit::krr_predict(&fitted, dataset.rows())?;
            let mut text = String::from("prediction\n");
            for p in preds {
                text.push_str(&format!("{p}\n"));
            }
            std::fs::write(&out, text).map_err(|e| Failure::Runtime(e.to_string()))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
