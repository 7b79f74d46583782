use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pointwise::alpha_prime::{alpha_prime, NullSpec};
use pointwise::config::parse_config;
use pointwise::data::{read_dataset, Dataset};
use pointwise::models::linear_or::or_null_test;
use pointwise::models::mvn_ball::{ball_pointwise_test, cross_fit_lrt_test, split_lrt_test};
use pointwise::models::normal_mean::{bonferroni_interval_test, interval_null_test};
use pointwise::models::nuisance::{
    psi_lrt_test, psi_pointwise_test, psi_region_f, psi_region_lrt, DEFAULT_PROXIES, REGION_WIDTH,
    TEST_WIDTH,
};
use pointwise::models::ModelId;
use pointwise::simulation::{
    result_rows, run_experiment, run_suite, write_csv, write_json, Method, SuiteRow,
};
use pointwise::{Error, Region1D, TestDecision};

#[derive(Parser)]
#[command(
    name = "pointwise",
    version,
    about = "Composite hypothesis tests by pointwise rejection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the modified level α′ for a null of dimension d0 inside d1.
    AlphaPrime {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        d1: u32,
        #[arg(long)]
        d0: u32,
        /// The null is a manifold with boundary.
        #[arg(long)]
        boundary: bool,
    },
    /// Test a composite null on one dataset.
    Test {
        #[arg(long)]
        model: ModelId,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Lower end of the null interval (interval model).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        /// Upper end of the null interval (interval model).
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        /// Number of test points (or_null: total, even) or proxies (nuisance).
        #[arg(long)]
        m: Option<usize>,
        /// Hypothesised ψ (nuisance model).
        #[arg(long, allow_hyphen_values = true)]
        psi0: Option<f64>,
        /// Proxy window multiplier (nuisance model).
        #[arg(long)]
        width: Option<f64>,
        #[arg(long, default_value = "pointwise")]
        method: Method,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Confidence region for ψ in the nuisance model.
    Confreg {
        #[arg(long)]
        model: ModelId,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_PROXIES)]
        m: usize,
        #[arg(long, default_value_t = REGION_WIDTH)]
        width: f64,
        #[arg(long, default_value = "pointwise")]
        method: Method,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run a simulation suite, or a single experiment from a config file.
    Simulate {
        #[arg(long, required_unless_present = "config", conflicts_with = "config")]
        suite: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Output path; `-` writes to standard output.
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Worker threads (0 = one per core).
        #[arg(long, env = "POINTWISE_THREADS", default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

enum Failure {
    /// Bad input or arguments: exit 2.
    Usage(String),
    /// Anything else: exit 1.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Formats `v` with 10 significant digits in fixed notation.
fn ten_significant(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.9}");
    }
    // The exponent of the rounded scientific form accounts for carries such
    // as 0.09999999999 -> 1.000000000e-1.
    let sci = format!("{v:.9e}");
    let magnitude: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    let decimals = (9 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

fn load(model: ModelId, path: &Path) -> Result<Dataset, Failure> {
    read_dataset(model, path).map_err(|e| match e {
        Error::Io(io) => usage(format!("cannot read {}: {io}", path.display())),
        other => other.into(),
    })
}

struct TestArgs {
    alpha: f64,
    a: Option<f64>,
    b: Option<f64>,
    m: Option<usize>,
    psi0: Option<f64>,
    width: Option<f64>,
    method: Method,
}

fn run_test(data: &Dataset, args: &TestArgs) -> Result<TestDecision, Failure> {
    let bad_method = || {
        usage(format!(
            "method {} does not apply to model {}",
            args.method,
            data.model()
        ))
    };
    let decision = match data {
        Dataset::Interval(s) => {
            let (a, b) = match (args.a, args.b) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(usage("the interval model needs --a and --b")),
            };
            match args.method {
                Method::Pointwise => interval_null_test(s, a, b, args.alpha)?,
                Method::Bonferroni => bonferroni_interval_test(s, a, b, args.alpha)?,
                _ => return Err(bad_method()),
            }
        }
        Dataset::OrNull(d) => {
            let m = args.m.unwrap_or(10);
            if m < 2 || !m.is_multiple_of(2) {
                return Err(usage(format!("or_null needs an even --m >= 2, got {m}")));
            }
            match args.method {
                Method::Pointwise => or_null_test(d, args.alpha, m / 2)?,
                _ => return Err(bad_method()),
            }
        }
        Dataset::Nuisance(d) => {
            let psi0 = args
                .psi0
                .ok_or_else(|| usage("the nuisance model needs --psi0"))?;
            let m = args.m.unwrap_or(100);
            let width = args.width.unwrap_or(TEST_WIDTH);
            match args.method {
                Method::Pointwise => psi_pointwise_test(d, psi0, args.alpha, m, width)?,
                Method::Lrt => psi_lrt_test(d, psi0, args.alpha, m, width)?,
                _ => return Err(bad_method()),
            }
        }
        Dataset::Ball(d) => match args.method {
            Method::Pointwise => ball_pointwise_test(d, args.alpha)?,
            Method::SplitLrt => split_lrt_test(d, args.alpha)?,
            Method::CrossfitLrt => cross_fit_lrt_test(d, args.alpha)?,
            _ => return Err(bad_method()),
        },
    };
    Ok(decision)
}

fn print_decision(
    model: ModelId,
    method: Method,
    d: &TestDecision,
    format: ReportFormat,
) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        ReportFormat::Text => {
            let verdict = if d.reject { "reject" } else { "fail to reject" };
            writeln!(out, "decision: {verdict}")?;
            writeln!(out, "max p-value: {}", d.max_p)?;
            writeln!(out, "alpha': {}", d.alpha_prime_used)?;
            writeln!(out, "test points: {}", d.n_points)?;
        }
        ReportFormat::Json => {
            let value = json!({
                "model": model,
                "method": method,
                "reject": d.reject,
                "max_p": d.max_p,
                "alpha_prime": d.alpha_prime_used,
                "n_points": d.n_points,
            });
            writeln!(out, "{value}")?;
        }
    }
    Ok(())
}

fn print_region(region: &Region1D, format: TableFormat) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match format {
        TableFormat::Csv => {
            writeln!(out, "lo,hi")?;
            for (lo, hi) in region.intervals() {
                writeln!(out, "{lo},{hi}")?;
            }
        }
        TableFormat::Json => {
            serde_json::to_writer(&mut out, region)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_rows(rows: &[SuiteRow], out: &str, format: TableFormat) -> Result<(), Failure> {
    let sink: Box<dyn Write> = if out == "-" {
        Box::new(io::stdout().lock())
    } else {
        let file = File::create(out).map_err(|e| usage(format!("cannot create {out}: {e}")))?;
        Box::new(BufWriter::new(file))
    };
    match format {
        TableFormat::Csv => write_csv(rows, sink)?,
        TableFormat::Json => write_json(rows, sink)?,
    }
    Ok(())
}

fn simulate(
    suite: Option<String>,
    config: Option<PathBuf>,
    seed: u64,
    scale: f64,
) -> Result<Vec<SuiteRow>, Failure> {
    if let Some(path) = config {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let config = parse_config(&text)?;
        let result = run_experiment(&config)?;
        return Ok(result_rows("config", &config, &result));
    }
    let suite = suite.ok_or_else(|| usage("either --suite or --config is required"))?;
    Ok(run_suite(&suite, seed, scale)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::AlphaPrime {
            alpha,
            d1,
            d0,
            boundary,
        } => {
            let spec = NullSpec::new(d1, d0, boundary)?;
            let value = alpha_prime(alpha, spec)?;
            println!("{}", ten_significant(value));
        }
        Command::Test {
            model,
            data,
            alpha,
            a,
            b,
            m,
            psi0,
            width,
            method,
            format,
        } => {
            let dataset = load(model, &data)?;
            let args = TestArgs {
                alpha,
                a,
                b,
                m,
                psi0,
                width,
                method,
            };
            let decision = run_test(&dataset, &args)?;
            print_decision(model, method, &decision, format)?;
        }
        Command::Confreg {
            model,
            data,
            alpha,
            m,
            width,
            method,
            format,
        } => {
            if model != ModelId::Nuisance {
                return Err(usage(format!(
                    "confidence regions are available for nuisance only, not {model}"
                )));
            }
            let Dataset::Nuisance(d) = load(model, &data)? else {
                unreachable!("nuisance dataset requested")
            };
            let region = match method {
                Method::Pointwise => psi_region_f(&d, alpha, m, width)?,
                Method::Lrt => psi_region_lrt(&d, alpha, m, width)?,
                other => return Err(usage(format!("method {other} does not build regions"))),
            };
            print_region(&region, format)?;
        }
        Command::Simulate {
            suite,
            config,
            seed,
            scale,
            out,
            format,
            threads,
        } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Failure::Internal(e.to_string()))?;
            let rows = pool.install(|| simulate(suite, config, seed, scale))?;
            write_rows(&rows, &out, format)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
