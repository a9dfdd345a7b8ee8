//! Benchmark CLI for the torus NLS solvers.
//!
//! Subcommands: `converge` (convergence study), `conserve` (long-time
//! energy/mass tracking), `step` (single run, dump the final field),
//! `oracle-check` (direct-sum oracle equivalence report). All file output
//! is CSV with `#`-prefixed metadata lines. Ladder jobs run in parallel;
//! set `RAYON_NUM_THREADS` to override the thread count.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use nls_spectral::baseline::solve_steps;
use nls_spectral::error::{Error, Result};
use nls_spectral::experiments::{
    run_conservation_study, run_convergence_study, ExperimentConfig, InitialData, ReferencePolicy,
};
use nls_spectral::field::max_coeff_error;
use nls_spectral::lowreg::{j1_1d, j2_1d, kj, Method, SchemeParams};
use nls_spectral::norm::parse_norm;
use nls_spectral::oracle::{j1_kernel_direct, j2_kernel_direct, kj_kernel_direct};
use nls_spectral::report;
use nls_spectral::{Field, TorusGrid};

#[derive(Parser)]
#[command(name = "nlsbench", version, about = "Benchmark CLI for torus NLS solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convergence study: errors at T over a step-size ladder, with order fits.
    Converge(ConvergeArgs),
    /// Long-time conservation study: energy and mass along one run.
    Conserve(ConserveArgs),
    /// Single run; dumps the final field.
    Step(StepArgs),
    /// Direct-sum oracle equivalence report (exit 0 iff all within 1e-12).
    OracleCheck(OracleCheckArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Grid dimension d.
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Points per axis (even).
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Sobolev regularity of the random initial data.
    #[arg(long, default_value_t = 3.0)]
    r: f64,
    /// Seed of the deterministic coefficient stream.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Nonlinearity coefficient μ.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Time horizon.
    #[arg(long = "T", default_value_t = 1.0)]
    t_end: f64,
    /// Comma-separated methods: lowreg1d, lowregdd, strang.
    #[arg(long, value_delimiter = ',', required = true)]
    methods: Vec<String>,
    /// Error norm: l2, h1 or sobolev:<r>.
    #[arg(long, default_value = "l2")]
    norm: String,
    /// Geometric step ladder start:factor:count, e.g. 2e-2:2:10.
    #[arg(long)]
    taus: String,
    /// Ground truth: `cross:<refinement>` (fine-step solve by the other
    /// method at τ_min/refinement) or `analytic` (plane-wave data only).
    #[arg(long, default_value = "cross:128")]
    reference: String,
    /// Switch to plane-wave initial data with this wavenumber (per axis).
    #[arg(long, value_delimiter = ',')]
    plane_k: Option<Vec<i64>>,
    /// Plane-wave amplitude.
    #[arg(long, default_value_t = 1.0)]
    plane_amp: f64,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ConserveArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = 2.0)]
    r: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Step size.
    #[arg(long)]
    tau: f64,
    /// Time horizon.
    #[arg(long = "T", default_value_t = 1000.0)]
    t_end: f64,
    #[arg(long, default_value = "lowreg1d")]
    method: String,
    /// Record every this-many steps.
    #[arg(long, default_value_t = 1)]
    stride: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StepArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = 2.0)]
    r: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    #[arg(long)]
    tau: f64,
    /// Number of steps to take.
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value = "lowreg1d")]
    method: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleCheckArgs {
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    tau: f64,
}

fn parse_ladder(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidConfig(format!("bad ladder `{spec}` (expected start:factor:count)"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].parse().map_err(|_| bad())?;
    let factor: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    let shape_ok = start.is_finite() && start > 0.0 && factor.is_finite() && factor > 1.0;
    if !shape_ok || count == 0 {
        return Err(bad());
    }
    Ok((0..count).map(|i| start / factor.powi(i as i32)).collect())
}

fn parse_reference(spec: &str) -> Result<ReferencePolicy> {
    if spec == "analytic" {
        return Ok(ReferencePolicy::Analytic);
    }
    if spec == "cross" {
        return Ok(ReferencePolicy::CrossMethod { refinement: 128 });
    }
    if let Some(rest) = spec.strip_prefix("cross:") {
        let refinement: u32 = rest.parse().map_err(|_| {
            Error::InvalidConfig(format!("bad reference refinement in `{spec}`"))
        })?;
        return Ok(ReferencePolicy::CrossMethod { refinement });
    }
    Err(Error::InvalidConfig(format!(
        "unknown reference `{spec}` (expected analytic or cross:<refinement>)"
    )))
}

fn parse_methods(names: &[String]) -> Result<Vec<Method>> {
    names.iter().map(|s| Method::parse(s)).collect()
}

fn timestamp() -> String {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_else(|_| "0".into())
}

fn open_out(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run_converge(args: &ConvergeArgs) -> Result<()> {
    let data = match &args.plane_k {
        Some(k) => InitialData::PlaneWave {
            amp: Complex64::new(args.plane_amp, 0.0),
            wavenumber: k.clone(),
        },
        None => InitialData::RandomHr {
            r: args.r,
            seed: args.seed,
        },
    };
    let cfg = ExperimentConfig {
        dim: args.grid.dim,
        n: args.grid.n,
        data,
        mu: args.mu,
        t_end: args.t_end,
        tau_ladder: parse_ladder(&args.taus)?,
        methods: parse_methods(&args.methods)?,
        norm: parse_norm(&args.norm)?,
        reference: parse_reference(&args.reference)?,
    };
    let result = run_convergence_study(&cfg)?;

    let mut w = open_out(&args.out)?;
    report::write_metadata(
        &mut w,
        &[
            ("subcommand", "converge".into()),
            ("dim", cfg.dim.to_string()),
            ("n", cfg.n.to_string()),
            ("data", format!("{:?}", cfg.data)),
            ("mu", cfg.mu.to_string()),
            ("T", cfg.t_end.to_string()),
            ("taus", args.taus.clone()),
            ("methods", args.methods.join(",")),
            ("norm", cfg.norm.to_string()),
            ("reference", args.reference.clone()),
            ("generated_unix", timestamp()),
        ],
    )?;
    report::write_convergence_csv(&mut w, &result)?;
    w.flush()?;

    for m in &result.methods {
        println!(
            "{}: fitted order {:.3} over {} points (tau in [{:.3e}, {:.3e}]){}",
            m.method,
            m.fit.order,
            m.fit.points_used,
            m.fit.tau_range.0,
            m.fit.tau_range.1,
            if m.fit.reliable { "" } else { " [unreliable]" },
        );
    }
    println!("wrote {}", args.out.display());
    Ok(())
}

fn run_conserve(args: &ConserveArgs) -> Result<()> {
    let cfg = ExperimentConfig {
        dim: args.grid.dim,
        n: args.grid.n,
        data: InitialData::RandomHr {
            r: args.r,
            seed: args.seed,
        },
        mu: args.mu,
        t_end: args.t_end,
        tau_ladder: vec![args.tau],
        methods: vec![Method::parse(&args.method)?],
        norm: nls_spectral::NormKind::DiscreteL2,
        reference: ReferencePolicy::CrossMethod { refinement: 1 },
    };
    let series = run_conservation_study(&cfg, args.stride)?;

    let mut w = open_out(&args.out)?;
    report::write_metadata(
        &mut w,
        &[
            ("subcommand", "conserve".into()),
            ("dim", cfg.dim.to_string()),
            ("n", cfg.n.to_string()),
            ("r", args.r.to_string()),
            ("seed", args.seed.to_string()),
            ("mu", cfg.mu.to_string()),
            ("tau", args.tau.to_string()),
            ("T", cfg.t_end.to_string()),
            ("method", args.method.clone()),
            ("stride", args.stride.to_string()),
            ("generated_unix", timestamp()),
        ],
    )?;
    report::write_conservation_csv(&mut w, &series)?;
    w.flush()?;

    println!(
        "energy: max rel deviation {:.3e}, growth/time {:.3e}, corr {:.3}",
        series.energy_drift.max_rel_deviation,
        series.energy_drift.growth_per_time,
        series.energy_drift.correlation,
    );
    println!(
        "mass:   max rel deviation {:.3e}, growth/time {:.3e}, corr {:.3}",
        series.mass_drift.max_rel_deviation,
        series.mass_drift.growth_per_time,
        series.mass_drift.correlation,
    );
    println!("wrote {}", args.out.display());
    Ok(())
}

fn run_step(args: &StepArgs) -> Result<()> {
    let grid = TorusGrid::new(args.grid.dim, args.grid.n)?;
    let method = Method::parse(&args.method)?;
    let p = SchemeParams::new(args.tau, args.mu, method)?;
    let u0 = nls_spectral::experiments::random_hr_data(&grid, args.r, args.seed);
    let u = solve_steps(&u0, &p, args.steps)?;

    let mut w = open_out(&args.out)?;
    report::write_metadata(
        &mut w,
        &[
            ("subcommand", "step".into()),
            ("dim", grid.dim().to_string()),
            ("n", grid.n().to_string()),
            ("r", args.r.to_string()),
            ("seed", args.seed.to_string()),
            ("mu", args.mu.to_string()),
            ("tau", args.tau.to_string()),
            ("steps", args.steps.to_string()),
            ("method", args.method.clone()),
            ("layout", "physical values, flat row-major".into()),
            ("generated_unix", timestamp()),
        ],
    )?;
    report::write_field_csv(&mut w, &u)?;
    w.flush()?;
    println!("wrote {}", args.out.display());
    Ok(())
}

const ORACLE_TOL: f64 = 1e-12;

fn run_oracle_check(args: &OracleCheckArgs) -> Result<bool> {
    let grid = TorusGrid::new(args.grid.dim, args.grid.n)?;
    let v = nls_spectral::experiments::random_hr_data(&grid, 0.5, args.seed);
    let tau = args.tau;
    let mut devs: Vec<(String, f64)> = Vec::new();

    if grid.dim() == 1 {
        devs.push((
            "j1".into(),
            max_coeff_error(&j1_1d(&v, tau)?, &j1_kernel_direct(&v, tau)?),
        ));
        devs.push((
            "j2".into(),
            max_coeff_error(&j2_1d(&v, tau)?, &j2_kernel_direct(&v, tau)?),
        ));
    }
    let w = nls_spectral::experiments::random_hr_data(&grid, 0.5, args.seed.wrapping_add(1));
    for axis in 0..grid.dim() {
        devs.push((
            format!("kj[axis {axis}]"),
            max_coeff_error(&kj(&w, &v, tau, axis)?, &kj_kernel_direct(&w, &v, tau, axis)?),
        ));
    }
    if grid.dim() == 1 {
        let full = nls_spectral::oracle::duhamel_integral_direct(&v, tau)?;
        let j1 = j1_kernel_direct(&v, tau)?;
        let j2 = j2_kernel_direct(&v, tau)?;
        let rem = nls_spectral::oracle::remainder_kernel_direct(&v, tau)?;
        let phys = v.to_physical();
        let cubic: Vec<Complex64> = phys.iter().map(|z| tau * z.norm_sqr() * z).collect();
        let cubic = Field::from_physical(&grid, &cubic)?;
        let sum = &(&(&j1 + &j2) + &rem) - &cubic;
        devs.push(("duhamel decomposition".into(), max_coeff_error(&full, &sum)));
    }

    println!(
        "oracle-check dim={} n={} seed={} tau={}",
        grid.dim(),
        grid.n(),
        args.seed,
        tau
    );
    let mut ok = true;
    for (name, dev) in &devs {
        let status = if *dev <= ORACLE_TOL { "ok" } else { "FAIL" };
        println!("  {name}: max |closed-form - direct| = {dev:.3e} [{status}]");
        ok &= *dev <= ORACLE_TOL;
    }
    println!(
        "overall: {}",
        if ok { "all within 1e-12" } else { "DEVIATIONS ABOVE 1e-12" }
    );
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Converge(args) => run_converge(args).map(|()| true),
        Command::Conserve(args) => run_conserve(args).map(|()| true),
        Command::Step(args) => run_step(args).map(|()| true),
        Command::OracleCheck(args) => run_oracle_check(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
