use std::path::PathBuf;
use std::process::ExitCode;

use afom_cli::{
    compare_methods, run_benchmark, RunConfig, StrategyKind, DEFAULT_ALPHA, DEFAULT_DENSITY,
    DEFAULT_EPS, DEFAULT_GAP_CHECK_PERIOD, DEFAULT_KAPPA, DEFAULT_REPEATS,
};
use afom_core::eigopt::generate_instance;
use anyhow::Result;
use clap::{Args, Parser, Subcommand};

const EXIT_BUDGET: u8 = 2;

#[derive(Parser)]
#[command(name = "afom", version, about = "Accelerated first-order method for maximum-eigenvalue minimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a stored or freshly generated instance.
    Solve(SolveArgs),
    /// Generate a random jointly sparse instance and save it.
    Generate(GenerateArgs),
    /// Compare the non-adaptive and hybrid methods over a grid of sizes.
    Compare(CompareArgs),
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, default_value_t = DEFAULT_KAPPA)]
    kappa: f64,
    #[arg(long = "gap-check-every", default_value_t = DEFAULT_GAP_CHECK_PERIOD)]
    gap_check_every: usize,
    /// Check the gap at each of the first 100 iterations [default: on for
    /// adaptive strategies].
    #[arg(long)]
    check_first_hundred: Option<bool>,
    /// Iteration cap; defaults to the worst-case count.
    #[arg(long)]
    max_iters: Option<usize>,
    /// JSON report path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, conflicts_with_all = ["m", "n", "density", "seed"])]
    instance: Option<PathBuf>,
    #[arg(long, required_unless_present = "instance")]
    m: Option<usize>,
    #[arg(long, required_unless_present = "instance")]
    n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DENSITY)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = StrategyKind::Hybrid)]
    strategy: StrategyKind,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    /// Per-iteration CSV trace (one file per repeat when repeating).
    #[arg(long)]
    trace: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_DENSITY)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    /// Comma-separated matrix sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    grid: Vec<usize>,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = DEFAULT_DENSITY)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_REPEATS)]
    repeats: usize,
    /// CSV table path.
    #[arg(long)]
    table: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

fn config_from(m: usize, n: usize, seed: u64, strategy: StrategyKind, s: &SolverArgs) -> RunConfig {
    let mut c = RunConfig::new(m, n, seed, strategy);
    c.eps = s.eps;
    c.alpha = s.alpha;
    c.kappa = s.kappa;
    c.gap_check_period = s.gap_check_every;
    if let Some(dense) = s.check_first_hundred {
        c.check_first_hundred = dense;
    }
    c.max_iters = s.max_iters;
    c.report = s.report.clone();
    c
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let mut c = config_from(
        args.m.unwrap_or(0),
        args.n.unwrap_or(0),
        args.seed,
        args.strategy,
        &args.solver,
    );
    c.density = args.density;
    c.repeats = args.repeats;
    c.instance = args.instance;
    c.trace = args.trace;
    let report = run_benchmark(&c)?;
    for r in &report.repeats {
        match &r.error {
            Some(e) => eprintln!("repeat {}: failed: {e}", r.repeat),
            None => println!(
                "repeat {} seed {}: {:?} after {} of {} iterations, gap {:.3e} (target {:.3e}){}",
                r.repeat,
                r.seed,
                r.status,
                r.iterations_practice.unwrap_or(0),
                r.iterations_theory.unwrap_or(0),
                r.final_gap.unwrap_or(f64::NAN),
                r.target_gap.unwrap_or(f64::NAN),
                r.switch_back_iteration
                    .map(|t| format!(", switched back at {t}"))
                    .unwrap_or_default(),
            ),
        }
    }
    Ok(exit_for(&[report]))
}

fn exit_for(reports: &[afom_cli::RunReport]) -> ExitCode {
    if reports.iter().any(|r| r.any_failed()) {
        ExitCode::FAILURE
    } else if reports.iter().all(|r| r.all_converged()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_BUDGET)
    }
}

fn generate(args: GenerateArgs) -> Result<ExitCode> {
    let instance = generate_instance(args.m, args.n, args.density, args.seed)?;
    instance.save(&args.out)?;
    println!(
        "wrote {} ({} matrices of size {}, {} nonzeros each, L' = {:.6})",
        args.out.display(),
        instance.m(),
        instance.n(),
        instance.nonzeros(),
        instance.l_prime()
    );
    Ok(ExitCode::SUCCESS)
}

fn compare(args: CompareArgs) -> Result<ExitCode> {
    let mut c = config_from(args.m, args.grid[0], args.seed, StrategyKind::Hybrid, &args.solver);
    c.density = args.density;
    c.repeats = args.repeats;
    let cmp = compare_methods(&c, &args.grid, &args.table)?;
    print!("{}", cmp.table.to_csv());
    let reports: Vec<_> = cmp.nonadaptive.into_iter().chain(cmp.hybrid).collect();
    Ok(exit_for(&reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Generate(a) => generate(a),
        Command::Compare(a) => compare(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::FAILURE
    })
}
