use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use numrad::bench::{self, BenchConfig, Field, Status};
use numrad::mmio::read_matrix_market;
use numrad::{chebyshev, grid, levelset, sdp, Method, Result};

#[derive(Parser)]
#[command(
    name = "numrad",
    version,
    about = "Numerical radius of dense complex matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute r(A) for a Matrix Market file and print one JSON object.
    Compute(ComputeArgs),
    /// Run the timing and discrepancy benchmark on seeded random matrices.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "lso")]
    method: Method,
    /// Method tolerance; each method has its own default.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
    Both,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "10,20,50")]
    sizes: Vec<usize>,
    #[arg(long, value_enum, default_value = "both")]
    field: FieldArg,
    #[arg(long, value_delimiter = ',', default_value = "lso,cheb,sdp,grid")]
    methods: Vec<Method>,
    #[arg(long, default_value_t = bench::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = bench::DEFAULT_TRIAL_CAP_SECONDS)]
    trial_cap: f64,
    #[arg(long, default_value_t = bench::DEFAULT_SDP_CAP)]
    sdp_cap: usize,
    /// Write the SDP Newton trace of each matrix to the output directory.
    #[arg(long)]
    sdp_trace: bool,
}

#[derive(Serialize)]
struct ComputeOutput {
    value: f64,
    theta_star: f64,
    method: Method,
    wall_seconds: f64,
    iterations: usize,
    h_evals: usize,
    degenerate: bool,
    capped: bool,
}

fn compute(args: &ComputeArgs) -> Result<ExitCode> {
    let a = read_matrix_market(&args.input)?;
    let r = match args.method {
        Method::Lso => {
            levelset::compute_radius_lso(&a, args.tol.unwrap_or(levelset::DEFAULT_TOL_REL))
        }
        Method::Cheb => {
            chebyshev::compute_radius_cheb(&a, args.tol.unwrap_or(chebyshev::DEFAULT_TOL))
        }
        Method::Sdp => sdp::compute_radius_sdp(&a, args.tol.unwrap_or(sdp::DEFAULT_TOL)),
        Method::Grid => grid::compute_radius_grid(
            &a,
            grid::DEFAULT_POINTS,
            args.tol.unwrap_or(grid::DEFAULT_REFINE_TOL),
        ),
    }?;
    let out = ComputeOutput {
        value: r.value,
        theta_star: r.theta_star,
        method: r.method,
        wall_seconds: r.wall_seconds,
        iterations: r.iterations,
        h_evals: r.h_evals,
        degenerate: r.degenerate,
        capped: r.capped,
    };
    println!(
        "{}",
        serde_json::to_string(&out).expect("plain struct serializes")
    );
    Ok(ExitCode::SUCCESS)
}

fn run_bench(args: &BenchArgs) -> Result<ExitCode> {
    let fields = match args.field {
        FieldArg::Real => vec![Field::Real],
        FieldArg::Complex => vec![Field::Complex],
        FieldArg::Both => vec![Field::Real, Field::Complex],
    };
    let mut config = BenchConfig::new(
        args.sizes.clone(),
        fields,
        args.methods.clone(),
        args.seed,
        args.out.clone(),
    );
    config.trials = args.trials;
    config.trial_time_cap_seconds = args.trial_cap;
    config.sdp_cap = args.sdp_cap;
    config.sdp_trace = args.sdp_trace;

    let records = bench::run_benchmark(&config)?;
    let cells = bench::discrepancy_matrix(&records);
    bench::emit_reports(&records, &cells, &config.output_dir)?;
    let mut failed = false;
    for r in &records {
        if r.status == Status::Failed {
            failed = true;
            eprintln!(
                "numrad: {} failed on n = {} ({}): {}",
                r.method,
                r.n,
                r.field,
                r.error.as_deref().unwrap_or("unknown error")
            );
        }
    }
    Ok(if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn configure_threads() {
    let Ok(v) = std::env::var("NUMRAD_THREADS") else {
        return;
    };
    match v.trim().parse::<usize>() {
        Ok(k) if k > 0 => {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global();
        }
        _ => eprintln!("numrad: ignoring invalid NUMRAD_THREADS={v:?}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let outcome = match &cli.command {
        Command::Compute(args) => compute(args),
        Command::Bench(args) => run_bench(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("numrad: {e}");
            ExitCode::from(2)
        }
    }
}
