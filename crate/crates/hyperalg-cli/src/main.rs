//! `hyperalg` — command-line front end for the hyperalg workbench.
//!
//! Exit codes: 0 success, 1 domain error (singular division, malformed
//! input data, failed convergence, ...), 2 usage error.

mod expr;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperalg::algebra::Algebra;
use hyperalg::analytic::SeriesConfig;
use hyperalg::coupling::{run_experiment, CouplingConfig};
use hyperalg::schrodinger::{classify_energy, convergence_slope, eigencheck, EnergyValue, GridWave};
use hyperalg::search::{search, Predicate, SearchConfig};
use hyperalg::spectral::{dft, parseval_check, Direction, Signal, SignalKind};
use hyperalg::{io, CoreError};

use expr::{format_hnum, parse_expression, EvalContext};

#[derive(Parser)]
#[command(name = "hyperalg", version, about = "Hypercomplex algebra workbench", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct CommonOpts {
    /// Algebra to work in: omega, quaternion, complex, or file:<path>
    /// pointing at a table JSON.
    #[arg(long, default_value = "omega", global = false)]
    algebra: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a hypercomplex expression.
    Eval {
        #[command(flatten)]
        common: CommonOpts,
        /// Series tolerance for exp/sin/cos.
        #[arg(long)]
        tol: Option<f64>,
        /// Expression, e.g. "k*exp(j*1.5708)".
        expr: String,
    },
    /// Print the structural property report of an algebra.
    Props {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exhaustively search the unital 4-basis table space.
    Search {
        /// Restrict to commutative tables (row-determined cells).
        #[arg(long, default_value_t = true, num_args = 0..=1, default_missing_value = "true")]
        commutative: bool,
        /// Constrain i*i; accepts "-1" or "free".
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        i2: String,
        /// Worker count; defaults to OMEGA_WORKERS or 1.
        #[arg(long)]
        workers: Option<usize>,
        /// Write the full result JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Transform a CSV of samples with the Phi (or psi) DFT.
    Dft {
        /// Input CSV (columns index,a,b,c,d).
        #[arg(long = "in")]
        input: PathBuf,
        /// Output CSV.
        #[arg(long)]
        out: PathBuf,
        /// Signal kind: which 2-plane the samples live in.
        #[arg(long, value_enum, default_value_t = KindArg::Phi)]
        kind: KindArg,
        /// Apply the inverse transform instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Plane-wave energy demonstration on a periodic grid.
    Schrodinger {
        /// Grid size M.
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Seeded two-path interference experiment with Phi-phase drift.
    Couple {
        /// Phi drift in radians.
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
    },
    /// Interactive expression loop.
    Repl {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Psi,
    Phi,
}

impl From<KindArg> for SignalKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Psi => SignalKind::Psi,
            KindArg::Phi => SignalKind::Phi,
        }
    }
}

/// A failure after argument parsing succeeded: exit code 1.
struct DomainError(String);

impl<E: std::error::Error> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

/// An argument combination clap cannot catch: exit code 2.
struct UsageError(String);

fn resolve_algebra(name: &str) -> Result<Algebra, DomainError> {
    if let Some(path) = name.strip_prefix("file:") {
        let table = io::read_table_json(std::path::Path::new(path))?;
        return Ok(Algebra::new(table)?);
    }
    Algebra::builtin(name).ok_or_else(|| {
        DomainError(format!(
            "unknown algebra '{name}' (expected omega, quaternion, complex, or file:<path>)"
        ))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval { common, tol, expr } => cmd_eval(&common, tol, &expr),
        Command::Props { common } => cmd_props(&common),
        Command::Search { commutative, i2, workers, out, output } => {
            cmd_search(commutative, &i2, workers, out, output)
        }
        Command::Dft { input, out, kind, inverse } => cmd_dft(&input, &out, kind, inverse),
        Command::Schrodinger { grid, output } => cmd_schrodinger(grid, output),
        Command::Couple { delta, samples, seed, output } => cmd_couple(delta, samples, seed, output),
        Command::Repl { common, tol } => cmd_repl(&common, tol),
    };
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(DomainError(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(UsageError(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<Result<(), DomainError>, UsageError>;

fn domain<T>(r: Result<T, DomainError>) -> Result<Result<T, DomainError>, UsageError> {
    Ok(r)
}

macro_rules! run_domain {
    ($body:expr) => {{
        let inner = || -> Result<(), DomainError> { $body };
        domain(inner())
    }};
}

fn cmd_eval(common: &CommonOpts, tol: Option<f64>, text: &str) -> CmdResult {
    run_domain!({
        let mut ctx = EvalContext::new(resolve_algebra(&common.algebra)?);
        if let Some(t) = tol {
            ctx.series = SeriesConfig { tol: t, ..SeriesConfig::default() };
            ctx.series.validate()?;
        }
        let tree = parse_expression(text)?;
        let value = ctx.eval(&tree)?;
        match common.output {
            OutputFormat::Text => println!("{}", format_hnum(&value)),
            OutputFormat::Json => println!(
                "{}",
                serde_json::json!({
                    "coefficients": value.c,
                    "display": format_hnum(&value),
                })
            ),
            OutputFormat::Csv => {
                println!("a,b,c,d");
                println!("{},{},{},{}", value.c[0], value.c[1], value.c[2], value.c[3]);
            }
        }
        Ok(())
    })
}

fn cmd_props(common: &CommonOpts) -> CmdResult {
    if common.output == OutputFormat::Csv {
        return Err(UsageError("props supports --output text or json".into()));
    }
    run_domain!({
        let alg = resolve_algebra(&common.algebra)?;
        let report = alg.properties();
        match common.output {
            OutputFormat::Json => {
                println!("{}", serde_json::to_string_pretty(report).map_err(CoreError::from)?)
            }
            _ => {
                println!("algebra:       {}", alg.name());
                println!("unital:        {}", report.unital);
                println!("commutative:   {}", report.commutative);
                println!("associative:   {}", report.associative);
                match &report.zero_divisor_witness {
                    Some((x, y)) => println!("zero divisors: yes, e.g. {x:?} * {y:?} = 0"),
                    None => println!("zero divisors: none found"),
                }
                println!("closed 2-dim subalgebras: {:?}", report.closed_subalgebras);
                for cs in &report.complex_structures {
                    println!(
                        "complex structure on {:?}: unity {:?}, imaginary {:?}",
                        cs.subset, cs.unity, cs.imaginary
                    );
                }
            }
        }
        Ok(())
    })
}

fn cmd_search(
    commutative: bool,
    i2: &str,
    workers: Option<usize>,
    out: Option<PathBuf>,
    output: OutputFormat,
) -> CmdResult {
    let require_i2 = match i2 {
        "-1" => true,
        "free" => false,
        other => return Err(UsageError(format!("--i2 accepts \"-1\" or \"free\", got '{other}'"))),
    };
    if output == OutputFormat::Csv {
        return Err(UsageError("search supports --output text or json".into()));
    }
    run_domain!({
        let worker_count = match workers {
            Some(w) => w,
            None => std::env::var("OMEGA_WORKERS")
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(1),
        };
        let cfg = SearchConfig {
            require_commutative: commutative,
            require_i_squared_minus_one: require_i2,
            predicates: Predicate::ALL.to_vec(),
            worker_count,
            output_path: out,
            index_range: None,
        };
        let result = search(&cfg)?;
        match output {
            OutputFormat::Json => {
                println!("{}", serde_json::to_string_pretty(&result).map_err(CoreError::from)?)
            }
            _ => {
                println!("constraint level:  {}", result.constraint_level);
                println!("candidates:        {}", result.total_candidates);
                println!("survivors:         {}", result.survivor_count);
                println!("canonical forms:   {}", result.distinct_canonical_forms);
                println!("first-failure census:");
                for (name, count) in &result.failure_census {
                    println!("  {name}: {count}");
                }
                println!("wall time:         {:.3}s", result.wall_time_seconds);
            }
        }
        Ok(())
    })
}

fn cmd_dft(input: &PathBuf, out: &PathBuf, kind: KindArg, inverse: bool) -> CmdResult {
    run_domain!({
        let samples = io::read_samples_csv(input)?;
        let signal = Signal::new(kind.into(), samples)?;
        let direction = if inverse { Direction::Inverse } else { Direction::Forward };
        let transformed = dft(&signal, direction)?;
        io::write_samples_csv(out, transformed.samples())?;
        let (time_energy, freq_energy) = parseval_check(&signal)?;
        println!(
            "wrote {} samples to {}; energy time/freq = {:.6e}/{:.6e}",
            transformed.len(),
            out.display(),
            time_energy,
            freq_energy
        );
        Ok(())
    })
}

fn cmd_schrodinger(grid: usize, output: OutputFormat) -> CmdResult {
    if output == OutputFormat::Csv {
        return Err(UsageError("schrodinger supports --output text or json".into()));
    }
    run_domain!({
        let wave = GridWave::phi_plane_wave(grid)?;
        let energy = EnergyValue::k_proportional(0.5);
        let residual = eigencheck(&wave, &energy)?;
        let classified = classify_energy(&energy.value);
        let ms = [64, 128, 256, 512];
        let slope = convergence_slope(&ms, |m| {
            let w = GridWave::phi_plane_wave(m).expect("grid >= 3");
            eigencheck(&w, &EnergyValue::k_proportional(0.5)).expect("nonzero wave")
        });
        match output {
            OutputFormat::Json => println!(
                "{}",
                serde_json::json!({
                    "grid": grid,
                    "energy": energy.value.c,
                    "energy_class": format!("{:?}", classified.classification),
                    "residual": residual,
                    "convergence_slope": slope,
                })
            ),
            _ => {
                println!("grid:       M = {grid}");
                println!("wave:       k e^(jy), one period");
                println!("energy:     (1/2) k  [{:?}]", classified.classification);
                println!("residual:   {residual:.3e}");
                println!("slope:      {slope:.3} (expected ~2 for the central difference)");
            }
        }
        Ok(())
    })
}

fn cmd_couple(delta: f64, samples: u64, seed: u64, output: OutputFormat) -> CmdResult {
    run_domain!({
        let cfg = CouplingConfig {
            delta,
            base_phases: (0.0, std::f64::consts::FRAC_PI_3),
            samples,
            rng_seed: seed,
        };
        let result = run_experiment(&cfg)?;
        match output {
            OutputFormat::Json => {
                println!("{}", serde_json::to_string_pretty(&result).map_err(CoreError::from)?)
            }
            OutputFormat::Csv => {
                println!("hits,misses,expected_p,null_p,chi_square,p_value");
                println!(
                    "{},{},{},{},{},{}",
                    result.counts.0,
                    result.counts.1,
                    result.expected_probability,
                    result.null_probability,
                    result.chi_square.map(|v| v.to_string()).unwrap_or_default(),
                    result.p_value.map(|v| v.to_string()).unwrap_or_default(),
                );
            }
            OutputFormat::Text => {
                println!("delta:      {delta}");
                println!("samples:    {samples} (seed {seed})");
                println!("hits:       {} / misses: {}", result.counts.0, result.counts.1);
                println!("expected p: {:.6}", result.expected_probability);
                println!("null p:     {:.6}", result.null_probability);
                match (result.chi_square, result.p_value) {
                    (Some(chi), Some(p)) => println!("chi-square: {chi:.4}  p = {p:.3e}"),
                    _ => println!("chi-square: degenerate null, counts only"),
                }
            }
        }
        Ok(())
    })
}

fn cmd_repl(common: &CommonOpts, tol: Option<f64>) -> CmdResult {
    if common.output != OutputFormat::Text {
        return Err(UsageError("the repl is text only".into()));
    }
    run_domain!({
        use std::io::{BufRead, Write};
        let mut ctx = EvalContext::new(resolve_algebra(&common.algebra)?);
        if let Some(t) = tol {
            ctx.series = SeriesConfig { tol: t, ..SeriesConfig::default() };
            ctx.series.validate()?;
        }
        let stdin = std::io::stdin();
        let mut stdout = std::io::stdout();
        loop {
            write!(stdout, "\u{03a9}> ").map_err(CoreError::from)?;
            stdout.flush().map_err(CoreError::from)?;
            let mut line = String::new();
            if stdin.lock().read_line(&mut line).map_err(CoreError::from)? == 0 {
                writeln!(stdout).map_err(CoreError::from)?;
                break;
            }
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line == "quit" || line == "exit" {
                break;
            }
            match parse_expression(line).map_err(anyhow_msg).and_then(|tree| {
                ctx.eval(&tree).map_err(anyhow_msg)
            }) {
                Ok(value) => {
                    println!("{}", format_hnum(&value));
                    ctx.last_result = Some(value);
                }
                Err(msg) => eprintln!("error: {msg}"),
            }
        }
        Ok(())
    })
}

fn anyhow_msg<E: std::error::Error>(e: E) -> String {
    e.to_string()
}
