//! Command-line surface for constrained Farey pair correlation runs.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 bad arguments, 3 I/O
//! failure, 4 resource cap exceeded.

mod rat;
mod report;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fareycorr::correlation::{empirical_density_capped, empirical_g_capped, DEFAULT_POINT_CAP};
use fareycorr::farey::{count, count_in_window, Constraint, FareySpec, Window};
use fareycorr::theory::{cumulative_g_m, cumulative_g_tilde, g_full, g_m, g_tilde};
use fareycorr::{Error as CoreError, Rational64};
use serde_json::json;

use rat::{format_ratio, parse_ratio};
use report::ReportRow;

#[derive(Parser)]
#[command(
    name = "fareycorr",
    version,
    about = "Pair correlation statistics of congruence-constrained Farey fractions",
    after_help = "Constraints: all | coprime:m | residue:m,b (with gcd(b,m)=1).\n\
                  Rationals (lambda, alpha, beta) accept p/q, decimals, or integers\n\
                  and are handled exactly."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the elements of a constrained Farey set, one fraction per line
    Gen {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutPath,
    },
    /// Print the exact cardinality of a constrained Farey set
    Count {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        out: OutPath,
    },
    /// Empirical pair correlation curve, or a density histogram with --bins
    Empirical {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Histogram mode: split (0, lambda-max] into this many equal bins
        #[arg(long)]
        bins: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Closed-form limit curves (densities, or cumulative with --cumulative)
    Theory {
        /// Constraint modulus m
        #[arg(long, default_value_t = 1)]
        m: u64,
        /// Residue b; only checked for validity, the limit curve does not
        /// depend on it
        #[arg(long)]
        b: Option<u64>,
        /// Which limiting family to evaluate
        #[arg(long, value_enum, default_value_t = Variant::Coprime)]
        variant: Variant,
        /// Emit the cumulative curve instead of the density
        #[arg(long)]
        cumulative: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Empirical curve next to its closed-form limit, with absolute errors
    Compare {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Run the built-in verification suites
    Verify {
        /// Suites to run; defaults to all of them
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        /// Summation limit for the dirichlet suite
        #[arg(long, default_value_t = 10_000)]
        x: u64,
        /// Largest congruence modulus for the proposition suite
        #[arg(long, default_value_t = 500)]
        qmax: u64,
        /// Report format
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        format: VerifyFormat,
    },
}

#[derive(Args)]
struct SetArgs {
    /// Maximal denominator Q
    #[arg(long = "Q", value_name = "Q")]
    q_max: u64,
    /// Denominator constraint: all, coprime:m, or residue:m,b
    #[arg(long, default_value = "all")]
    constraint: String,
    /// Left window endpoint alpha (excluded); requires --beta
    #[arg(long, requires = "beta")]
    alpha: Option<String>,
    /// Right window endpoint beta (included); requires --alpha
    #[arg(long, requires = "alpha")]
    beta: Option<String>,
}

#[derive(Args)]
struct GridArgs {
    /// Explicit comma-separated lambda values, strictly increasing
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["lambda_max", "lambda_step"])]
    lambdas: Option<Vec<String>>,
    /// Largest lambda of a uniform grid
    #[arg(long)]
    lambda_max: Option<String>,
    /// Step of the uniform grid
    #[arg(long)]
    lambda_step: Option<String>,
}

#[derive(Args)]
struct OutPath {
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report encoding
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct LimitArgs {
    /// Worker threads for pair counting; 0 keeps the rayon default
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Refuse to materialize point sets larger than this
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    mem_cap: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// Unconstrained Farey sets (m = 1)
    Full,
    /// Denominators coprime to m
    Coprime,
    /// Denominators in a residue class mod m
    Residue,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theorem2,
    Kfn,
    Dirichlet,
    Proposition,
    Support,
    Limit,
}

/// CLI failure with its exit code.
enum Failure {
    Usage(String),
    Io(io::Error),
    Cap(String),
    ChecksFailed,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::ChecksFailed => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Cap(_) => 4,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::PointCap { points, cap } => Failure::Cap(format!(
                "point set has at least {points} elements, above the cap of {cap}; \
                 raise --mem-cap or split the run into disjoint --alpha/--beta windows"
            )),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Io(e) => eprintln!("error: {e}"),
                Failure::Cap(msg) => eprintln!("error: {msg}"),
                Failure::ChecksFailed => {}
            }
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { set, out } => cmd_gen(&set, out.out.as_deref()),
        Command::Count { set, out } => cmd_count(&set, out.out.as_deref()),
        Command::Empirical {
            set,
            grid,
            bins,
            output,
            limits,
        } => cmd_empirical(&set, &grid, bins, &output, &limits),
        Command::Theory {
            m,
            b,
            variant,
            cumulative,
            grid,
            output,
        } => cmd_theory(m, b, variant, cumulative, &grid, &output),
        Command::Compare {
            set,
            grid,
            output,
            limits,
        } => cmd_compare(&set, &grid, &output, &limits),
        Command::Verify {
            suites,
            x,
            qmax,
            format,
        } => cmd_verify(&suites, x, qmax, format),
    }
}

fn parse_constraint(s: &str) -> Result<Constraint, Failure> {
    let bad = |msg: String| Failure::Usage(msg);
    if s == "all" {
        return Ok(Constraint::All);
    }
    if let Some(m) = s.strip_prefix("coprime:") {
        let m = m
            .parse()
            .map_err(|_| bad(format!("bad modulus in '{s}'")))?;
        return Ok(Constraint::CoprimeTo(m));
    }
    if let Some(rest) = s.strip_prefix("residue:") {
        let (m, b) = rest
            .split_once(',')
            .ok_or_else(|| bad(format!("residue constraint needs 'residue:m,b', got '{s}'")))?;
        let modulus = m
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad modulus in '{s}'")))?;
        let residue = b
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad residue in '{s}'")))?;
        return Ok(Constraint::ResidueClass { modulus, residue });
    }
    Err(bad(format!(
        "unknown constraint '{s}'; use all, coprime:m, or residue:m,b"
    )))
}

fn build_spec(set: &SetArgs) -> Result<FareySpec, Failure> {
    let mut spec = FareySpec::new(set.q_max, parse_constraint(&set.constraint)?);
    if let (Some(a), Some(b)) = (&set.alpha, &set.beta) {
        let alpha = parse_ratio(a).map_err(Failure::Usage)?;
        let beta = parse_ratio(b).map_err(Failure::Usage)?;
        spec = spec.with_window(Window::new(alpha, beta)?);
    }
    spec.validate()?;
    Ok(spec)
}

/// The lambda grid as (verbatim label, exact value) pairs.
fn build_grid(grid: &GridArgs) -> Result<Vec<(String, Rational64)>, Failure> {
    if let Some(raw) = &grid.lambdas {
        let mut out = Vec::with_capacity(raw.len());
        let mut prev: Option<Rational64> = None;
        for s in raw {
            let v = parse_ratio(s).map_err(Failure::Usage)?;
            if v <= Rational64::new(0, 1) || prev.is_some_and(|p| p >= v) {
                return Err(Failure::Usage(
                    "lambda grid must be positive and strictly increasing".into(),
                ));
            }
            prev = Some(v);
            out.push((s.trim().to_string(), v));
        }
        if out.is_empty() {
            return Err(Failure::Usage("empty lambda grid".into()));
        }
        return Ok(out);
    }
    // uniform grid; the compare default of 0.1..=3.0 step 0.1 covers the
    // visible range of the limit curves
    let max = grid.lambda_max.as_deref().unwrap_or("3.0");
    let step = grid.lambda_step.as_deref().unwrap_or("0.1");
    let max = parse_ratio(max).map_err(Failure::Usage)?;
    let step = parse_ratio(step).map_err(Failure::Usage)?;
    if step <= Rational64::new(0, 1) || max < step {
        return Err(Failure::Usage("need 0 < lambda-step <= lambda-max".into()));
    }
    let mut out = Vec::new();
    let mut k = 1i64;
    loop {
        let v = step * Rational64::new(k, 1);
        if v > max {
            break;
        }
        out.push((format_ratio(v), v));
        k += 1;
    }
    Ok(out)
}

fn open_out(path: Option<&std::path::Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_report(rows: &[ReportRow], output: &OutputArgs) -> Result<(), Failure> {
    let mut w = open_out(output.out.as_deref())?;
    match output.format {
        Format::Csv => report::write_csv(rows, &mut w)?,
        Format::Json => report::write_json(rows, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn configure_threads(limits: &LimitArgs) -> Result<(), Failure> {
    if limits.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(limits.threads)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn constraint_label(c: Constraint) -> String {
    match c {
        Constraint::All => "all".into(),
        Constraint::CoprimeTo(m) => format!("coprime:{m}"),
        Constraint::ResidueClass { modulus, residue } => format!("residue:{modulus},{residue}"),
    }
}

fn cmd_gen(set: &SetArgs, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let spec = build_spec(set)?;
    let total = match &spec.window {
        Some(w) if !w.is_full() => count_in_window(&spec)?,
        _ => count(&spec)?,
    };
    let mut w = open_out(out)?;
    let mut header = format!(
        "# Q={} constraint={}",
        spec.q_max,
        constraint_label(spec.constraint)
    );
    if let Some(win) = &spec.window {
        header.push_str(&format!(
            " window=({},{}]",
            format_ratio(win.alpha()),
            format_ratio(win.beta())
        ));
    }
    writeln!(w, "{header} count={total}")?;
    for f in spec.stream()? {
        writeln!(w, "{f}")?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_count(set: &SetArgs, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let spec = build_spec(set)?;
    let total = match &spec.window {
        Some(w) if !w.is_full() => count_in_window(&spec)?,
        _ => count(&spec)?,
    };
    let mut w = open_out(out)?;
    writeln!(w, "{total}")?;
    w.flush()?;
    Ok(())
}

fn cmd_empirical(
    set: &SetArgs,
    grid: &GridArgs,
    bins: Option<u32>,
    output: &OutputArgs,
    limits: &LimitArgs,
) -> Result<(), Failure> {
    configure_threads(limits)?;
    let spec = build_spec(set)?;
    if let Some(bins) = bins {
        if bins == 0 {
            return Err(Failure::Usage("--bins must be at least 1".into()));
        }
        if grid.lambdas.is_some() {
            return Err(Failure::Usage(
                "--bins needs --lambda-max, not --lambdas".into(),
            ));
        }
        let max =
            parse_ratio(grid.lambda_max.as_deref().unwrap_or("3.0")).map_err(Failure::Usage)?;
        if max <= Rational64::new(0, 1) {
            return Err(Failure::Usage("--lambda-max must be positive".into()));
        }
        let hist = empirical_density_capped(&spec, max, bins, limits.mem_cap)?;
        let rows: Vec<ReportRow> = hist
            .into_iter()
            .map(|b| {
                let mut row = ReportRow::new(format_ratio(b.hi));
                row.empirical_g = Some(b.density);
                row.pair_count = Some(b.pair_count);
                row
            })
            .collect();
        return write_report(&rows, output);
    }
    let grid = build_grid(grid)?;
    let lambdas: Vec<Rational64> = grid.iter().map(|(_, v)| *v).collect();
    let curve = empirical_g_capped(&spec, &lambdas, limits.mem_cap)?;
    let rows: Vec<ReportRow> = grid
        .iter()
        .zip(&curve.rows)
        .map(|((label, _), r)| {
            let mut row = ReportRow::new(label.clone());
            row.empirical_g = Some(r.g_empirical);
            row.pair_count = Some(r.pair_count);
            row
        })
        .collect();
    write_report(&rows, output)
}

fn cmd_theory(
    m: u64,
    b: Option<u64>,
    variant: Variant,
    cumulative: bool,
    grid: &GridArgs,
    output: &OutputArgs,
) -> Result<(), Failure> {
    if m == 0 {
        return Err(Failure::Usage("modulus m must be at least 1".into()));
    }
    if variant == Variant::Full && m != 1 {
        return Err(Failure::Usage(
            "--variant full is the unconstrained curve; use --variant coprime for m > 1".into(),
        ));
    }
    if let Some(b) = b {
        // the residue curve is independent of b, but an invalid b is still
        // a spec error worth rejecting
        fareycorr::ntheory::ModulusParams::residue_class(m, b)?;
    }
    let grid = build_grid(grid)?;
    let rows: Vec<ReportRow> = grid
        .iter()
        .map(|(label, v)| {
            let lambda = *v.numer() as f64 / *v.denom() as f64;
            let value = match (variant, cumulative) {
                (Variant::Full, false) => g_full(lambda),
                (Variant::Full, true) => cumulative_g_m(1, lambda),
                (Variant::Coprime, false) => g_m(m, lambda),
                (Variant::Coprime, true) => cumulative_g_m(m, lambda),
                (Variant::Residue, false) => g_tilde(m, lambda),
                (Variant::Residue, true) => cumulative_g_tilde(m, lambda),
            };
            let mut row = ReportRow::new(label.clone());
            row.theory_g = Some(value);
            row
        })
        .collect();
    write_report(&rows, output)
}

fn cmd_compare(
    set: &SetArgs,
    grid: &GridArgs,
    output: &OutputArgs,
    limits: &LimitArgs,
) -> Result<(), Failure> {
    configure_threads(limits)?;
    let spec = build_spec(set)?;
    let grid = build_grid(grid)?;
    let lambdas: Vec<Rational64> = grid.iter().map(|(_, v)| *v).collect();
    let curve = empirical_g_capped(&spec, &lambdas, limits.mem_cap)?;
    let theory: fn(u64, f64) -> f64 = match spec.constraint {
        Constraint::All | Constraint::CoprimeTo(_) => cumulative_g_m,
        Constraint::ResidueClass { .. } => cumulative_g_tilde,
    };
    let m = match spec.constraint {
        Constraint::All => 1,
        Constraint::CoprimeTo(m) => m,
        Constraint::ResidueClass { modulus, .. } => modulus,
    };
    let rows: Vec<ReportRow> = grid
        .iter()
        .zip(&curve.rows)
        .map(|((label, v), r)| {
            let lambda = *v.numer() as f64 / *v.denom() as f64;
            let t = theory(m, lambda);
            let mut row = ReportRow::new(label.clone());
            row.empirical_g = Some(r.g_empirical);
            row.theory_g = Some(t);
            row.pair_count = Some(r.pair_count);
            row.abs_err = Some((r.g_empirical - t).abs());
            row
        })
        .collect();
    write_report(&rows, output)
}

fn cmd_verify(suites: &[Suite], x: u64, qmax: u64, format: VerifyFormat) -> Result<(), Failure> {
    let selected: Vec<Suite> = if suites.is_empty() {
        vec![
            Suite::Theorem2,
            Suite::Kfn,
            Suite::Dirichlet,
            Suite::Proposition,
            Suite::Support,
            Suite::Limit,
        ]
    } else {
        suites.to_vec()
    };
    let mut results = Vec::new();
    for s in selected {
        results.push(match s {
            Suite::Theorem2 => verify::theorem2(),
            Suite::Kfn => verify::k_identity(),
            Suite::Dirichlet => verify::dirichlet(x),
            Suite::Proposition => verify::proposition(qmax),
            Suite::Support => verify::support(),
            Suite::Limit => verify::limit(),
        });
    }
    let all_passed = results.iter().all(|r| r.passed());
    match format {
        VerifyFormat::Text => {
            for r in &results {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                println!(
                    "{}: {status} ({} checks, worst {} = {:.3e})",
                    r.name, r.checks, r.metric, r.worst
                );
                for f in r.failures.iter().take(10) {
                    println!("    {f}");
                }
                if r.failures.len() > 10 {
                    println!("    ... and {} more", r.failures.len() - 10);
                }
            }
        }
        VerifyFormat::Json => {
            let doc = json!({
                "passed": all_passed,
                "suites": results.iter().map(|r| json!({
                    "name": r.name,
                    "passed": r.passed(),
                    "checks": r.checks,
                    "worst": r.worst,
                    "metric": r.metric,
                    "failures": r.failures,
                })).collect::<Vec<_>>(),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
        }
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}
