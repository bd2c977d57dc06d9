//! `maxplus` command-line front end.
//!
//! Exit codes: 0 solvable, 1 unsolvable, 2 usage, parse or shape error.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use maxplus::bench::{self, BenchRecord, GridPoint, Method};
use maxplus::instance_io::{read_matrix, write_instance};
use maxplus::oracle::{oracle_solve_with, reports_agree, OracleOptions, DEFAULT_MAX_DIM};
use maxplus::solver::{
    solve_linear_with, solve_sylvester_with, two_sided_instance, SolveOptions, DEFAULT_TOLERANCE,
};
use maxplus::{
    format_matrix, generate_instance, Error, GeneratorConfig, GeneratorMode, InstanceFileSet,
    SolveReport, SylvesterInstance,
};

const EXIT_SOLVABLE: u8 = 0;
const EXIT_UNSOLVABLE: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "maxplus",
    version,
    about = "Max-plus Sylvester equation solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the principal solution and decide solvability.
    Solve(SolveArgs),
    /// Write a seeded random instance to a directory.
    Generate(GenerateArgs),
    /// Benchmark fast path vs oracle, CSV on stdout.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    /// ⊕ₖ Aₖ ⊗ X ⊗ Bₖ = C (one --a/--b pair per term)
    Sylvester,
    /// A ⊗ x = b (one --a, right-hand side in --c)
    Linear,
    /// A ⊗ X ⊕ X ⊗ B = C
    TwoSided,
}

#[derive(Args)]
struct SolveArgs {
    /// Directory holding A1.txt.., B1.txt.., C.txt (as written by `generate`)
    #[arg(long, conflicts_with_all = ["a", "b", "c"])]
    dir: Option<PathBuf>,
    /// Left factor file; repeat once per term
    #[arg(long)]
    a: Vec<PathBuf>,
    /// Right factor file; repeat once per term
    #[arg(long)]
    b: Vec<PathBuf>,
    /// Right-hand side file
    #[arg(long)]
    c: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "sylvester")]
    form: Form,
    /// List cells where substitution disagrees with C
    #[arg(long)]
    mismatches: bool,
    /// Cross-check with the Kronecker oracle
    #[arg(long)]
    oracle: bool,
    /// Largest m·n the oracle will accept
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    oracle_cap: usize,
    /// Absolute tolerance for non-integral data
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Solvable,
    Raw,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "solvable")]
    mode: ModeArg,
    #[arg(long, default_value_t = -10, allow_negative_numbers = true)]
    low: i64,
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    high: i64,
    #[arg(long, default_value_t = 0.1)]
    neginf_density: f64,
    /// Output directory (created if missing)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Row counts, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    /// Column counts; defaults to a square grid (n = m)
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Term counts
    #[arg(long, value_delimiter = ',', default_value = "2")]
    p: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "fast,oracle")]
    methods: Vec<MethodArg>,
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    oracle_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Fast,
    Oracle,
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Generate(args) => generate(args),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn single(paths: &[PathBuf], flag: &str) -> Result<PathBuf, Failure> {
    match paths {
        [p] => Ok(p.clone()),
        _ => Err(Failure(format!(
            "--form needs exactly one --{flag}, got {}",
            paths.len()
        ))),
    }
}

fn required(path: &Option<PathBuf>, flag: &str) -> Result<PathBuf, Failure> {
    path.clone()
        .ok_or_else(|| Failure(format!("missing --{flag}")))
}

fn load_sylvester(args: &SolveArgs) -> Result<SylvesterInstance, Failure> {
    let files = match &args.dir {
        Some(dir) => InstanceFileSet::discover(dir)?,
        None => InstanceFileSet {
            a: args.a.clone(),
            b: args.b.clone(),
            c: required(&args.c, "c")?,
        },
    };
    Ok(files.load()?)
}

fn solve(args: SolveArgs) -> Result<u8, Failure> {
    let opts = SolveOptions {
        tolerance: args.tolerance,
    };
    let (report, instance) = match args.form {
        Form::Linear => {
            if args.dir.is_some() || !args.b.is_empty() {
                return Err(Failure("--form linear takes --a and --c only".into()));
            }
            let a = read_matrix(single(&args.a, "a")?)?;
            let b = read_matrix(required(&args.c, "c")?)?;
            (solve_linear_with(&a, &b, &opts)?, None)
        }
        Form::TwoSided => {
            let a = read_matrix(single(&args.a, "a")?)?;
            let b = read_matrix(single(&args.b, "b")?)?;
            let c = read_matrix(required(&args.c, "c")?)?;
            let inst = two_sided_instance(&a, &b, &c)?;
            (solve_sylvester_with(&inst, &opts)?, Some(inst))
        }
        Form::Sylvester => {
            let inst = load_sylvester(&args)?;
            (solve_sylvester_with(&inst, &opts)?, Some(inst))
        }
    };

    let mut out = io::stdout().lock();
    write!(out, "{}", format_matrix(&report.principal))?;
    writeln!(out, "solvable: {}", report.solvable)?;
    if args.mismatches {
        writeln!(out, "mismatches: {}", report.mismatches.len())?;
        for (i, j) in &report.mismatches {
            writeln!(out, "{i} {j}")?;
        }
    }
    if args.oracle {
        let inst = instance
            .ok_or_else(|| Failure("--oracle needs a Sylvester or two-sided form".into()))?;
        let oracle_opts = OracleOptions {
            max_dim: args.oracle_cap,
            solve: opts,
        };
        match oracle_solve_with(&inst, &oracle_opts) {
            Ok(slow) => {
                let agrees =
                    reports_agree(&report, &slow, opts.effective_tolerance(inst.is_integral()));
                writeln!(out, "oracle-agrees: {agrees}")?;
                if !agrees {
                    out.flush()?;
                    dump_disagreement(&report, &slow);
                    return Ok(EXIT_ERROR);
                }
            }
            Err(e @ Error::OracleTooLarge { .. }) => eprintln!("note: oracle skipped: {e}"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(if report.solvable {
        EXIT_SOLVABLE
    } else {
        EXIT_UNSOLVABLE
    })
}

fn dump_disagreement(fast: &SolveReport, slow: &SolveReport) {
    eprintln!("error: fast path and oracle disagree");
    eprintln!("fast principal:\n{}", format_matrix(&fast.principal));
    eprintln!("oracle principal:\n{}", format_matrix(&slow.principal));
    eprintln!(
        "fast solvable={} mismatches={:?}",
        fast.solvable, fast.mismatches
    );
    eprintln!(
        "oracle solvable={} mismatches={:?}",
        slow.solvable, slow.mismatches
    );
}

fn generate(args: GenerateArgs) -> Result<u8, Failure> {
    let cfg = GeneratorConfig {
        m: args.m,
        n: args.n,
        p: args.p,
        seed: args.seed,
        entry_low: args.low,
        entry_high: args.high,
        neginf_density: args.neginf_density,
        mode: match args.mode {
            ModeArg::Solvable => GeneratorMode::SolvableByConstruction,
            ModeArg::Raw => GeneratorMode::RawRandom,
        },
    };
    let (inst, witness) = generate_instance(&cfg)?;
    write_instance(&args.out, &inst, witness.as_ref())
        .map_err(|e| Failure(format!("cannot write {}: {e}", args.out.display())))?;
    println!("seed: {}", cfg.seed);
    Ok(EXIT_SOLVABLE)
}

fn run_bench(args: BenchArgs) -> Result<u8, Failure> {
    if args.reps < 3 {
        return Err(Failure(format!(
            "--reps must be at least 3, got {}",
            args.reps
        )));
    }
    let zero = |v: &[usize]| v.contains(&0);
    if args.m.is_empty() || args.p.is_empty() || zero(&args.m) || zero(&args.n) || zero(&args.p) {
        return Err(Failure("grid values must be positive".into()));
    }
    let mut points = Vec::new();
    for &m in &args.m {
        let ns = if args.n.is_empty() {
            vec![m]
        } else {
            args.n.clone()
        };
        for n in ns {
            for &p in &args.p {
                points.push(GridPoint { m, n, p });
            }
        }
    }

    let oracle = OracleOptions {
        max_dim: args.oracle_cap,
        ..Default::default()
    };
    let stdout = io::stdout();
    let mut records: Vec<BenchRecord> = Vec::new();
    for pt in points {
        for method in &args.methods {
            let method = match method {
                MethodArg::Fast => Method::Fast,
                MethodArg::Oracle => Method::Oracle,
            };
            if method == Method::Oracle && pt.m * pt.n > args.oracle_cap {
                eprintln!(
                    "note: skipping oracle at m={} n={} p={} (m*n = {} > cap {})",
                    pt.m,
                    pt.n,
                    pt.p,
                    pt.m * pt.n,
                    args.oracle_cap
                );
                continue;
            }
            for rep in 0..args.reps {
                records.push(bench::measure(pt, method, rep, args.seed, &oracle)?);
            }
        }
    }
    bench::write_csv(stdout.lock(), &records)?;
    Ok(EXIT_SOLVABLE)
}
