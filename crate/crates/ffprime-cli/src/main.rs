//! ffprime: exact counting experiments with irreducible polynomials over
//! small finite fields.
//!
//! Subcommands map one-to-one onto library operations: `irr` for counting
//! and listing monic irreducibles, `goldbach`/`twin` for the exact pattern
//! counts and comparison sweeps, `heuristic` for the predicted main terms
//! and singular series, and `verify` for the combinatorial identity checks.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 enumeration budget
//! exceeded, 3 verification failure.

mod emit;
mod verify;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ffprime::budget::Budget;
use ffprime::counting::{self, Sampling, SweepConfig};
use ffprime::heuristic;
use ffprime::poly::{parse_poly, Poly};
use ffprime::{Error as LibError, Field, Problem};

#[derive(Parser)]
#[command(
    name = "ffprime",
    version,
    about = "Exact irreducible-polynomial counting experiments over small finite fields",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count or list monic irreducible polynomials
    Irr {
        #[command(subcommand)]
        cmd: IrrCmd,
    },
    /// Goldbach-style representation counts
    Goldbach {
        #[command(subcommand)]
        cmd: PatternCmd,
    },
    /// Twin irreducible pair counts
    Twin {
        #[command(subcommand)]
        cmd: PatternCmd,
    },
    /// Heuristic main terms, singular series, and error-bound magnitudes
    Heuristic {
        #[command(subcommand)]
        cmd: HeuristicCmd,
    },
    /// Mechanical verification of the combinatorial identities
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Field characteristic (a prime)
    #[arg(long)]
    p: u64,
    /// Extension degree k; the field has q = p^k elements
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Modulus polynomial over GF(p), comma-separated ascending coefficients
    /// (canonical least-encoding irreducible when omitted)
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn build(&self) -> Result<Field, CliError> {
        match &self.modulus {
            None => Ok(Field::new(self.p, self.k)?),
            Some(text) => {
                let coeffs = parse_u64_list(text)
                    .map_err(|e| CliError::Usage(format!("--modulus: {}", e)))?;
                Ok(Field::with_modulus(self.p, self.k, &coeffs)?)
            }
        }
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings in output (breaks byte-reproducibility)
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Clone)]
struct BudgetArg {
    /// Enumeration budget override (default 10^8, or FFPRIME_BUDGET)
    #[arg(long)]
    budget: Option<u64>,
}

impl BudgetArg {
    fn resolve(&self) -> Budget {
        if let Some(b) = self.budget {
            return Budget(b);
        }
        if let Ok(text) = std::env::var("FFPRIME_BUDGET") {
            if let Ok(b) = text.trim().parse::<u64>() {
                return Budget(b);
            }
        }
        Budget::default()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum IrrCmd {
    /// Exact number of monic irreducibles of degree n (closed formula)
    Count {
        #[command(flatten)]
        field: FieldArgs,
        /// Degree
        #[arg(long)]
        n: u32,
    },
    /// List monic polynomials of degree n in canonical order
    List {
        #[command(flatten)]
        field: FieldArgs,
        /// Degree
        #[arg(long)]
        n: u32,
        /// Keep only the irreducible ones
        #[arg(long)]
        irreducible: bool,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum PatternCmd {
    /// Exact count for one input polynomial
    Count {
        #[command(flatten)]
        field: FieldArgs,
        /// Input F (goldbach), monic of degree n
        #[arg(long)]
        poly: Option<String>,
        /// Gap polynomial A (twin), nonzero of degree < n
        #[arg(long)]
        a: Option<String>,
        /// Pattern degree n (optional for goldbach, required for twin)
        #[arg(long)]
        n: Option<u32>,
        /// Retain and print the witnesses
        #[arg(long)]
        witnesses: bool,
        /// Goldbach only: admit summands of every degree below n
        #[arg(long)]
        loose_summand: bool,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact counts vs heuristic prediction over a grid of fields
    Sweep {
        /// Pattern degree n
        #[arg(long)]
        n: u32,
        /// Comma-separated prime powers, e.g. 3,5,7,9 (empty for none)
        #[arg(long, default_value = "")]
        q_list: String,
        /// Input selection: "all" or "random:COUNT"
        #[arg(long, default_value = "all")]
        sample: String,
        /// Seed for random sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Singular-series truncation degree (automatic when omitted)
        #[arg(long = "trunc-D")]
        trunc_d: Option<u32>,
        /// Worker threads (output is identical for any value)
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum HeuristicCmd {
    /// Goldbach main term q^(n-1)/(n(n-1)) and series for F
    Goldbach {
        #[command(flatten)]
        field: FieldArgs,
        /// Pattern degree n (derived from --poly when omitted)
        #[arg(long)]
        n: Option<u32>,
        /// Input F, monic of degree n
        #[arg(long)]
        poly: Option<String>,
        /// Singular-series truncation degree (automatic when omitted)
        #[arg(long = "trunc-D")]
        trunc_d: Option<u32>,
        /// Also run the exact count and report the ratio
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Twin main term q^n/n^2 and series for A
    Twin {
        #[command(flatten)]
        field: FieldArgs,
        /// Pattern degree n
        #[arg(long)]
        n: u32,
        /// Gap polynomial A, nonzero of degree < n
        #[arg(long)]
        a: Option<String>,
        /// Singular-series truncation degree (automatic when omitted)
        #[arg(long = "trunc-D")]
        trunc_d: Option<u32>,
        /// Also run the exact count and report the ratio
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Fiber constancy of the shift-family specialization map
    Fibers {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Family size q^I, by parametrized enumeration and by filtering
    FamilySize {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Double-counting identity for one input
    DoubleCount {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        problem: Problem,
        /// Input F (goldbach), monic of degree n
        #[arg(long)]
        poly: Option<String>,
        /// Gap polynomial A (twin)
        #[arg(long)]
        a: Option<String>,
        /// Pattern degree n (derived from --poly for goldbach)
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Discriminant-locus size bound on worked and random inputs
    DiscLocus {
        /// Restrict random trials to GF(p^k) (default rotates 3, 5, 7)
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random separable bivariates to test
        #[arg(long, default_value_t = 100)]
        trials: u32,
    },
    /// Global sum identities
    Identities {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        problem: Problem,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Debug)]
pub enum CliError {
    Lib(LibError),
    Io(io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{}", e),
            CliError::Io(e) => write!(f, "{}", e),
            CliError::Usage(m) => write!(f, "{}", m),
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Lib(LibError::BudgetExceeded { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Cmd::Irr { cmd } => run_irr(cmd),
        Cmd::Goldbach { cmd } => run_pattern(Problem::Goldbach, cmd),
        Cmd::Twin { cmd } => run_pattern(Problem::Twin, cmd),
        Cmd::Heuristic { cmd } => run_heuristic(cmd),
        Cmd::Verify { cmd } => verify::run(cmd),
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| format!("invalid integer '{}'", tok.trim()))
        })
        .collect()
}

fn parse_sample(text: &str, seed: u64) -> Result<Sampling, CliError> {
    let t = text.trim();
    if t == "all" {
        return Ok(Sampling::All);
    }
    if let Some(rest) = t.strip_prefix("random:") {
        let count: u64 = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid sample count '{}'", rest)))?;
        return Ok(Sampling::Random { count, seed });
    }
    Err(CliError::Usage(format!(
        "invalid --sample '{}': expected 'all' or 'random:COUNT'",
        t
    )))
}

/// Regime warnings: the asymptotic analysis the comparisons are made
/// against assumes odd q, and in characteristic 2 the degree-2 Goldbach
/// inputs t^2+t+c have no representation at all. Both stay warnings; the
/// obstruction cases are legitimate inputs.
fn warn_regime(problem: Problem, field: &Field, n: u32) {
    if field.q().is_multiple_of(2) {
        eprintln!(
            "warning: q={} is even; the main-term comparison assumes odd q",
            field.q()
        );
    }
    if problem == Problem::Goldbach && field.p() == 2 && n == 2 {
        eprintln!(
            "warning: characteristic 2 with n=2: inputs t^2+t+c have no representation"
        );
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        Some(j) if j >= 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot build worker pool: {}", e)))?;
            Ok(pool.install(f))
        }
        Some(_) => Err(CliError::Usage("--jobs must be at least 1".into())),
        None => Ok(f()),
    }
}

fn run_irr(cmd: IrrCmd) -> Result<ExitCode, CliError> {
    match cmd {
        IrrCmd::Count { field, n } => {
            let field = field.build()?;
            let count = ffprime::irr::monic_irreducible_count(field.q(), n)?;
            println!("q={} n={} count={}", field.q(), n, count);
            Ok(ExitCode::SUCCESS)
        }
        IrrCmd::List {
            field,
            n,
            irreducible,
            budget,
            output,
        } => {
            if output.format.is_some_and(|f| f != Format::Text) {
                return Err(CliError::Usage("irr list only supports text output".into()));
            }
            let field = field.build()?;
            let budget = budget.resolve();
            let mut out = open_output(&output.out)?;
            if irreducible {
                for p in ffprime::irr::enumerate_monic_irreducible(&field, n, budget)? {
                    writeln!(out, "{}", p)?;
                }
            } else {
                for p in ffprime::irr::enumerate_monic(&field, n, budget)? {
                    writeln!(out, "{}", p)?;
                }
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_pattern(problem: Problem, cmd: PatternCmd) -> Result<ExitCode, CliError> {
    match cmd {
        PatternCmd::Count {
            field,
            poly,
            a,
            n,
            witnesses,
            loose_summand,
            budget,
            output,
        } => {
            let field = field.build()?;
            let budget = budget.resolve();
            let report = match problem {
                Problem::Goldbach => {
                    let text = poly.ok_or_else(|| {
                        CliError::Usage("goldbach count requires --poly".into())
                    })?;
                    if a.is_some() {
                        return Err(CliError::Usage("--a applies to twin counts only".into()));
                    }
                    let f = parse_poly(&text, &field)?;
                    if let (Some(n), Some(deg)) = (n, f.degree().finite()) {
                        if n as usize != deg {
                            return Err(CliError::Usage(format!(
                                "--n {} disagrees with deg F = {}",
                                n, deg
                            )));
                        }
                    }
                    let declared_n =
                        n.or_else(|| f.degree().finite().map(|d| d as u32)).unwrap_or(0);
                    warn_regime(problem, &field, declared_n);
                    if loose_summand {
                        counting::goldbach_count_loose(&f, witnesses, budget)?
                    } else {
                        counting::goldbach_count(&f, witnesses, budget)?
                    }
                }
                Problem::Twin => {
                    if loose_summand {
                        return Err(CliError::Usage(
                            "--loose-summand applies to goldbach counts only".into(),
                        ));
                    }
                    let text = a
                        .or(poly)
                        .ok_or_else(|| CliError::Usage("twin count requires --a".into()))?;
                    let n = n.ok_or_else(|| CliError::Usage("twin count requires --n".into()))?;
                    warn_regime(problem, &field, n);
                    let gap = parse_poly(&text, &field)?;
                    counting::twin_count(&field, n, &gap, witnesses, budget)?
                }
            };
            let mut out = open_output(&output.out)?;
            match output.format.unwrap_or(Format::Text) {
                Format::Text => emit::write_count_text(&mut out, &report)?,
                Format::Json => emit::write_count_json(&mut out, &report, output.timing)?,
                Format::Csv => {
                    return Err(CliError::Usage(
                        "count reports support text or json output".into(),
                    ))
                }
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        PatternCmd::Sweep {
            n,
            q_list,
            sample,
            seed,
            trunc_d,
            jobs,
            budget,
            output,
        } => {
            let q_list =
                parse_u64_list(&q_list).map_err(|e| CliError::Usage(format!("--q-list: {}", e)))?;
            let sampling = parse_sample(&sample, seed)?;
            let cfg = SweepConfig {
                problem,
                n,
                q_list: q_list.clone(),
                sampling,
                truncation: trunc_d,
                budget: budget.resolve(),
            };
            let mut warned = Vec::new();
            for &q in &q_list {
                if q % 2 == 0 && !warned.contains(&q) {
                    warned.push(q);
                    eprintln!(
                        "warning: q={} is even; the main-term comparison assumes odd q",
                        q
                    );
                }
            }
            if problem == Problem::Goldbach && n == 2 && q_list.iter().any(|q| q % 2 == 0) {
                eprintln!(
                    "warning: characteristic 2 with n=2: inputs t^2+t+c have no representation"
                );
            }
            let swept = with_jobs(jobs, || counting::sweep(&cfg))??;
            for w in &swept.warnings {
                eprintln!("warning: {}", w);
            }
            let mut out = open_output(&output.out)?;
            match output.format.unwrap_or(Format::Csv) {
                Format::Csv => emit::write_sweep_csv(&mut out, &swept.rows, output.timing)?,
                Format::Json => emit::write_sweep_json(&mut out, &swept.rows, output.timing)?,
                Format::Text => {
                    return Err(CliError::Usage("sweeps support csv or json output".into()))
                }
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_heuristic(cmd: HeuristicCmd) -> Result<ExitCode, CliError> {
    let (problem, field_args, n, input_text, trunc_d, want_count, budget, output) = match cmd {
        HeuristicCmd::Goldbach {
            field,
            n,
            poly,
            trunc_d,
            count,
            budget,
            output,
        } => (Problem::Goldbach, field, n, poly, trunc_d, count, budget, output),
        HeuristicCmd::Twin {
            field,
            n,
            a,
            trunc_d,
            count,
            budget,
            output,
        } => (Problem::Twin, field, Some(n), a, trunc_d, count, budget, output),
    };
    let field = field_args.build()?;
    let budget = budget.resolve();

    let input = input_text
        .as_deref()
        .map(|t| parse_poly(t, &field))
        .transpose()?;
    let n = match (n, problem, &input) {
        (Some(n), _, _) => n,
        (None, Problem::Goldbach, Some(f)) => f
            .degree()
            .finite()
            .ok_or_else(|| CliError::Usage("--poly must be nonzero".into()))?
            as u32,
        _ => return Err(CliError::Usage("--n is required without --poly".into())),
    };
    warn_regime(problem, &field, n);

    if want_count && input.is_none() {
        return Err(CliError::Usage("--count requires an input polynomial".into()));
    }

    // Reports are assembled through the same comparison path the sweeps use;
    // without an input polynomial a placeholder carries only (n, q).
    let (cmp, d_used) = match &input {
        Some(poly) => {
            let d = match trunc_d {
                Some(d) => d,
                None => heuristic::auto_truncation(problem, poly)?,
            };
            let report = if want_count {
                match problem {
                    Problem::Goldbach => counting::goldbach_count(poly, false, budget)?,
                    Problem::Twin => counting::twin_count(&field, n, poly, false, budget)?,
                }
            } else {
                placeholder_report(problem, &field, n, poly)
            };
            (heuristic::compare(&report, d)?, Some(d))
        }
        None => {
            let main_exact = heuristic::main_term(problem, n, field.q())?;
            let bounds = heuristic::error_bound_terms(problem, n, field.q())?;
            let cmp = heuristic::Comparison {
                count: 0,
                main_term: num::ToPrimitive::to_f64(&main_exact).unwrap_or(f64::INFINITY),
                main_exact,
                series: heuristic::SeriesValue {
                    value: 0.0,
                    truncation_degree: 0,
                    err_bound: 0.0,
                    zero_flag: false,
                },
                predicted: 0.0,
                ratio: None,
                bounds,
            };
            (cmp, None)
        }
    };
    if trunc_d.is_none() && d_used == Some(heuristic::SERIES_MAX_TRUNCATION) {
        if let Some(poly) = &input {
            let v = heuristic::singular_series(problem, poly, heuristic::SERIES_MAX_TRUNCATION)?;
            if !v.zero_flag && v.err_bound >= heuristic::SERIES_RELATIVE_TARGET * v.value.abs() {
                eprintln!(
                    "warning: singular series truncation capped at degree {} for q={} before reaching relative error {:e}",
                    heuristic::SERIES_MAX_TRUNCATION,
                    field.q(),
                    heuristic::SERIES_RELATIVE_TARGET
                );
            }
        }
    }

    let mut out = open_output(&output.out)?;
    let input_str = input.as_ref().map(Poly::to_string);
    match output.format.unwrap_or(Format::Text) {
        Format::Text => emit::write_heuristic_text(
            &mut out,
            problem,
            field.q(),
            n,
            input_str.as_deref(),
            &cmp,
            want_count,
        )?,
        Format::Json => emit::write_heuristic_json(
            &mut out,
            problem,
            field.q(),
            n,
            input_str.as_deref(),
            &cmp,
            want_count,
        )?,
        Format::Csv => {
            return Err(CliError::Usage(
                "heuristic reports support text or json output".into(),
            ))
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn placeholder_report(
    problem: Problem,
    field: &Field,
    n: u32,
    input: &Poly,
) -> counting::CountReport {
    counting::CountReport {
        problem,
        field: field.clone(),
        n,
        input: input.clone(),
        count: 0,
        witnesses: None,
        elapsed: std::time::Duration::ZERO,
    }
}
