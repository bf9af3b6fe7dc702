//! `ckn` — command-line driver for the cylinder CKN toolkit.
//!
//! Configuration comes from an optional TOML file (`--config`) merged with
//! flag overrides; every command writes its outputs atomically (temp file +
//! rename) into the output directory and is byte-deterministic for identical
//! inputs. Exit codes: 0 success, 1 computational failure (with a JSON error
//! report on stdout), 2 configuration error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use ckn_core::constants::ProblemConstants;
use ckn_core::solver::{
    continuation_gamma, hardy_limit_check, solve_ground_state, Init, SolveResult,
};
use ckn_core::spectral::{indicial_roots, theta_symbol};
use ckn_core::stability::{assemble_linearized, lowest_eigs, region_sweep};
use ckn_core::{CknError, Grid, Parameters, RadialField};

#[derive(Parser)]
#[command(name = "ckn", version, about = "Cylinder CKN extremals, spectra and diagnostics")]
struct Cli {
    /// TOML configuration file; flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for output files (fallback: CKN_OUTPUT_DIR, then ".")
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    /// Worker threads for sweep execution
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Dimension n
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Fractional order gamma in (0, 1)
    #[arg(long, global = true)]
    gamma: Option<f64>,
    /// Weight exponent alpha
    #[arg(long, global = true, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Weight exponent beta
    #[arg(long, global = true, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Grid half-length T
    #[arg(long = "T", global = true)]
    t_half: Option<f64>,
    /// Grid size N (power of two)
    #[arg(long = "N", global = true)]
    grid_n: Option<usize>,
    /// Nonlinear solve tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structural constants as JSON
    Constants,
    /// Write the Fourier symbols Theta^(m) over the grid frequencies (CSV)
    Symbol {
        /// Number of angular modes (columns theta_m0..theta_m{modes-1})
        #[arg(long, default_value_t = 3)]
        modes: u32,
    },
    /// Write the leading indicial roots (CSV)
    Roots {
        /// Number of roots
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// Solve for the ground state; writes CSV profile + JSON sidecar
    Solve,
    /// Low-lying spectrum of the linearized operator (JSON)
    Spectrum {
        /// Angular mode m
        #[arg(long, default_value_t = 0)]
        mode: u32,
        /// Number of eigenvalues
        #[arg(long, default_value_t = 6)]
        count: usize,
    },
    /// Stability sweep over the (alpha, beta) ranges in the config file (CSV)
    Sweep,
    /// Continuation branch in gamma; per-point CSVs + summary CSV
    Continuation {
        #[arg(long, allow_negative_numbers = true)]
        c0: Option<f64>,
        #[arg(long)]
        p0: Option<f64>,
        #[arg(long)]
        gamma0: Option<f64>,
        #[arg(long)]
        gamma1: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Hardy-endpoint cutoff diagnostic (CSV + JSON summary)
    HardyCheck {
        /// Cutoff radii
        #[arg(long, value_delimiter = ',', default_values_t = [5.0, 10.0, 20.0, 40.0])]
        radii: Vec<f64>,
    },
    /// Run the bundled acceptance suite and print a pass/fail table
    Validate,
}

// ---------------------------------------------------------------------------
// configuration

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n: Option<u32>,
    gamma: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    output_dir: Option<PathBuf>,
    #[serde(default)]
    grid: GridSection,
    #[serde(default)]
    tolerances: TolSection,
    sweep: Option<SweepSection>,
    continuation: Option<ContinuationSection>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct GridSection {
    #[serde(rename = "T")]
    t_half: Option<f64>,
    #[serde(rename = "N")]
    n: Option<usize>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct TolSection {
    newton: Option<f64>,
    quadrature: Option<f64>,
    eig: Option<f64>,
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RangeSection {
    min: f64,
    max: f64,
    count: usize,
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    alpha: RangeSection,
    beta: RangeSection,
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct ContinuationSection {
    c0: Option<f64>,
    p0: Option<f64>,
    gamma0: Option<f64>,
    gamma1: Option<f64>,
    steps: Option<usize>,
}

/// Fully resolved run configuration (file values overridden by flags,
/// remaining gaps filled with defaults).
struct RunConfig {
    n: Option<u32>,
    gamma: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    t_half: f64,
    grid_n: usize,
    newton_tol: f64,
    #[allow(dead_code)]
    quadrature_tol: f64,
    eig_tol: f64,
    output_dir: PathBuf,
    sweep: Option<SweepSection>,
    continuation: Option<ContinuationSection>,
}

enum CliError {
    /// exit 2: bad flags / config / parameter constraints
    Config(String),
    /// exit 1: a computation failed; reported as JSON
    Compute(CknError),
    Io(std::io::Error),
}

impl From<CknError> for CliError {
    fn from(e: CknError) -> Self {
        CliError::Compute(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let file: FileConfig = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                config_err(format!("cannot read config {}: {e}", path.display()))
            })?;
            toml::from_str(&text).map_err(|e| config_err(format!("config error: {e}")))?
        }
        None => FileConfig::default(),
    };
    let positive = |name: &str, v: f64| -> Result<f64, CliError> {
        if v > 0.0 {
            Ok(v)
        } else {
            Err(config_err(format!("tolerance {name} must be positive, got {v}")))
        }
    };
    let output_dir = cli
        .output_dir
        .clone()
        .or(file.output_dir)
        .or_else(|| std::env::var_os("CKN_OUTPUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let grid_n = cli.grid_n.or(file.grid.n).unwrap_or(2048);
    if grid_n < 64 || !grid_n.is_power_of_two() {
        return Err(config_err(format!("N must be a power of two >= 64, got {grid_n}")));
    }
    Ok(RunConfig {
        n: cli.n.or(file.n),
        gamma: cli.gamma.or(file.gamma),
        alpha: cli.alpha.or(file.alpha),
        beta: cli.beta.or(file.beta),
        t_half: cli.t_half.or(file.grid.t_half).unwrap_or(20.0),
        grid_n,
        newton_tol: positive("newton", cli.tol.or(file.tolerances.newton).unwrap_or(1e-10))?,
        quadrature_tol: positive("quadrature", file.tolerances.quadrature.unwrap_or(1e-9))?,
        eig_tol: positive("eig", file.tolerances.eig.unwrap_or(1e-9))?,
        output_dir,
        sweep: file.sweep,
        continuation: file.continuation,
    })
}

impl RunConfig {
    fn params(&self) -> Result<Parameters, CliError> {
        let need = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| config_err(format!("missing parameter: {name} (flag or config)")))
        };
        let n = self
            .n
            .ok_or_else(|| config_err("missing parameter: n (flag or config)"))?;
        Parameters::new(
            n,
            need("gamma", self.gamma)?,
            need("alpha", self.alpha)?,
            need("beta", self.beta)?,
        )
        .map_err(|e| config_err(format!("invalid parameters: {e}")))
    }

    fn grid(&self) -> Result<Grid, CliError> {
        Grid::new(self.t_half, self.grid_n).map_err(|e| config_err(format!("invalid grid: {e}")))
    }
}

// ---------------------------------------------------------------------------
// deterministic emission

/// Write `bytes` to `path` atomically: temp file in the same directory, then
/// rename. Interrupted runs leave only `.tmp` artifacts.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(d) = dir {
        std::fs::create_dir_all(d)?;
    }
    let file_name = path
        .file_name()
        .ok_or_else(|| config_err(format!("bad output path {}", path.display())))?;
    let mut tmp = path.to_path_buf();
    tmp.set_file_name(format!(".{}.tmp", file_name.to_string_lossy()));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Shortest-roundtrip float formatting shared by all CSV output.
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn linspace(r: &RangeSection) -> Vec<f64> {
    match r.count {
        0 => Vec::new(),
        1 => vec![r.min],
        c => (0..c)
            .map(|i| r.min + (r.max - r.min) * i as f64 / (c - 1) as f64)
            .collect(),
    }
}

#[derive(Serialize)]
struct SolveSidecar {
    n: u32,
    gamma: f64,
    alpha: f64,
    beta: f64,
    p: f64,
    residual: f64,
    energy: f64,
    normalization: f64,
    iterations: usize,
    recentering_shift: f64,
}

fn profile_csv(grid: Grid, v: &RadialField) -> String {
    let mut csv = String::from("t,v\n");
    for (j, &x) in v.values().iter().enumerate() {
        let _ = writeln!(csv, "{},{}", fmt_f64(grid.point(j)), fmt_f64(x));
    }
    csv
}

fn solve_with_sidecar(
    params: &Parameters,
    grid: Grid,
    tol: f64,
) -> Result<(SolveResult, SolveSidecar), CliError> {
    let res = solve_ground_state(params, grid, Init::Preset, tol)?;
    let sidecar = SolveSidecar {
        n: params.n(),
        gamma: params.gamma(),
        alpha: params.alpha(),
        beta: params.beta(),
        p: params.exponent_p(),
        residual: res.residual,
        energy: res.energy,
        normalization: res.normalization,
        iterations: res.iterations,
        recentering_shift: res.recentering_shift,
    };
    Ok((res, sidecar))
}

// ---------------------------------------------------------------------------
// subcommands

#[derive(Serialize)]
struct ConstantsOut {
    n: u32,
    gamma: f64,
    alpha: f64,
    beta: f64,
    p: f64,
    nu: f64,
    sigma_ng: f64,
    c_ng: f64,
    kappa: f64,
    #[serde(rename = "C_alpha")]
    c_alpha: f64,
}

fn cmd_constants(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.params()?;
    let pc = ProblemConstants::compute(&params, cfg.quadrature_tol)?;
    let out = ConstantsOut {
        n: params.n(),
        gamma: params.gamma(),
        alpha: params.alpha(),
        beta: params.beta(),
        p: params.exponent_p(),
        nu: params.nu(),
        sigma_ng: pc.sigma,
        c_ng: pc.c,
        kappa: pc.kappa,
        c_alpha: pc.c_alpha,
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    Ok(())
}

fn cmd_symbol(cfg: &RunConfig, modes: u32) -> Result<(), CliError> {
    let params = cfg.params()?;
    let grid = cfg.grid()?;
    if modes == 0 {
        return Err(config_err("modes must be >= 1"));
    }
    let mut xis: Vec<f64> = (0..grid.len()).map(|k| grid.xi(k)).collect();
    xis.sort_by(|a, b| a.partial_cmp(b).expect("finite frequencies"));
    let mut csv = String::from("xi");
    for m in 0..modes {
        let _ = write!(csv, ",theta_m{m}");
    }
    csv.push('\n');
    for xi in xis {
        let _ = write!(csv, "{}", fmt_f64(xi));
        for m in 0..modes {
            let th = theta_symbol(params.n(), params.gamma(), m, xi)?;
            let _ = write!(csv, ",{}", fmt_f64(th));
        }
        csv.push('\n');
    }
    write_atomic(&cfg.output_dir.join("symbol.csv"), csv.as_bytes())
}

fn cmd_roots(cfg: &RunConfig, count: usize) -> Result<(), CliError> {
    let params = cfg.params()?;
    if count == 0 {
        return Err(config_err("count must be >= 1"));
    }
    let pc = ProblemConstants::compute(&params, cfg.quadrature_tol)?;
    let roots = indicial_roots(params.n(), params.gamma(), pc.c_alpha, count)?;
    let mut csv = String::from("j,tau,sigma,residual\n");
    for r in &roots {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            r.index,
            fmt_f64(r.tau),
            fmt_f64(r.sigma),
            fmt_f64(r.residual)
        );
    }
    write_atomic(&cfg.output_dir.join("roots.csv"), csv.as_bytes())
}

fn cmd_solve(cfg: &RunConfig) -> Result<(), CliError> {
    let params = cfg.params()?;
    if params.is_hardy_endpoint() {
        return Err(config_err(
            "beta = alpha + gamma is the Hardy endpoint: no extremal exists; \
             use the `hardy-check` subcommand instead",
        ));
    }
    let grid = cfg.grid()?;
    let (res, sidecar) = solve_with_sidecar(&params, grid, cfg.newton_tol)?;
    write_atomic(
        &cfg.output_dir.join("solution.csv"),
        profile_csv(grid, &res.field).as_bytes(),
    )?;
    let json = serde_json::to_string_pretty(&sidecar).expect("serialize");
    write_atomic(&cfg.output_dir.join("solution.json"), format!("{json}\n").as_bytes())
}

fn cmd_spectrum(cfg: &RunConfig, mode: u32, count: usize) -> Result<(), CliError> {
    let params = cfg.params()?;
    if params.is_hardy_endpoint() {
        return Err(config_err(
            "beta = alpha + gamma is the Hardy endpoint: no extremal exists; \
             use the `hardy-check` subcommand instead",
        ));
    }
    if !(1..=10).contains(&count) {
        return Err(config_err("count must be in 1..=10"));
    }
    let grid = cfg.grid()?;
    let solve = solve_ground_state(&params, grid, Init::Preset, cfg.newton_tol)?;
    let op = assemble_linearized(mode, &solve, &params)?;
    let mut report = lowest_eigs(&op, count)?;
    // eigenvalues below the solver tolerance are numerically zero
    for l in report.eigenvalues.iter_mut() {
        if l.abs() < cfg.eig_tol * 1e-3 {
            *l = 0.0;
        }
    }
    let json = serde_json::to_string_pretty(&report).expect("serialize");
    write_atomic(&cfg.output_dir.join("spectrum.json"), format!("{json}\n").as_bytes())
}

fn cmd_sweep(cfg: &RunConfig, jobs: Option<usize>) -> Result<(), CliError> {
    let params = cfg.params()?;
    let section = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| config_err("sweep requires a [sweep] section in the config file"))?;
    let grid = cfg.grid()?;
    let mut samples = Vec::new();
    for &a in &linspace(&section.alpha) {
        for &b in &linspace(&section.beta) {
            samples.push((a, b));
        }
    }
    if let Some(j) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| config_err(format!("cannot size worker pool: {e}")))?;
    }
    let rows = region_sweep(&samples, &params, grid);
    let mut csv = String::from("alpha,beta,p,R,lambda0,lambda1,verdict,sigma0,decay_fit,converged\n");
    for r in &rows {
        let verdict = r.verdict.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(r.alpha),
            fmt_f64(r.beta),
            fmt_f64(r.p),
            fmt_f64(r.r_value),
            fmt_f64(r.lambda0),
            fmt_f64(r.lambda1),
            verdict,
            fmt_f64(r.sigma0),
            fmt_f64(r.decay_fit),
            r.converged
        );
    }
    write_atomic(&cfg.output_dir.join("sweep.csv"), csv.as_bytes())
}

fn cmd_continuation(cfg: &RunConfig, flags: &ContinuationSection) -> Result<(), CliError> {
    let file = cfg.continuation.clone().unwrap_or(ContinuationSection {
        c0: None,
        p0: None,
        gamma0: None,
        gamma1: None,
        steps: None,
    });
    let need = |name: &str, a: Option<f64>, b: Option<f64>| {
        a.or(b)
            .ok_or_else(|| config_err(format!("missing continuation parameter: {name}")))
    };
    let n = cfg
        .n
        .ok_or_else(|| config_err("missing parameter: n (flag or config)"))?;
    let c0 = need("c0", flags.c0, file.c0)?;
    let p0 = need("p0", flags.p0, file.p0)?;
    let gamma0 = need("gamma0", flags.gamma0, file.gamma0)?;
    let gamma1 = need("gamma1", flags.gamma1, file.gamma1)?;
    let steps = flags
        .steps
        .or(file.steps)
        .ok_or_else(|| config_err("missing continuation parameter: steps"))?;
    let grid = cfg.grid()?;
    let branch = continuation_gamma(n, c0, p0, gamma0, gamma1, steps, grid)?;
    let mut summary = String::from("index,gamma,residual\n");
    for (i, bp) in branch.iter().enumerate() {
        let _ = writeln!(summary, "{i},{},{}", fmt_f64(bp.gamma), fmt_f64(bp.residual));
        write_atomic(
            &cfg.output_dir.join(format!("branch_{i:03}.csv")),
            profile_csv(grid, &bp.field).as_bytes(),
        )?;
    }
    write_atomic(&cfg.output_dir.join("branch.csv"), summary.as_bytes())
}

#[derive(Serialize)]
struct HardySummary {
    two_kappa: f64,
    extrapolated: f64,
}

fn cmd_hardy(cfg: &RunConfig, radii: &[f64]) -> Result<(), CliError> {
    let params = cfg.params()?;
    if radii.len() < 2 {
        return Err(config_err("hardy-check needs at least two radii"));
    }
    let grid = cfg.grid()?;
    let pc = ProblemConstants::compute(&params, cfg.quadrature_tol)?;
    let values = hardy_limit_check(&params, grid, radii)?;
    let mut csv = String::from("R,F\n");
    for &(r, f) in &values {
        let _ = writeln!(csv, "{},{}", fmt_f64(r), fmt_f64(f));
    }
    write_atomic(&cfg.output_dir.join("hardy.csv"), csv.as_bytes())?;
    let last = values[values.len() - 1].1;
    let prev = values[values.len() - 2].1;
    let summary = HardySummary {
        two_kappa: 2.0 * pc.kappa,
        extrapolated: 2.0 * last - prev,
    };
    println!("{}", serde_json::to_string_pretty(&summary).expect("serialize"));
    Ok(())
}

fn cmd_validate() -> Result<(), CliError> {
    let outcomes = ckn_core::validate::run_all();
    let mut failed = 0usize;
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:02} {}: {} — {}", o.index, o.name, status, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {} criteria passed", outcomes.len());
        Ok(())
    } else {
        Err(CliError::Compute(CknError::NonConvergence {
            what: "validation suite".into(),
            detail: format!("{failed} of {} criteria failed", outcomes.len()),
        }))
    }
}

// ---------------------------------------------------------------------------

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = resolve_config(cli)?;
    match &cli.command {
        Command::Constants => cmd_constants(&cfg),
        Command::Symbol { modes } => cmd_symbol(&cfg, *modes),
        Command::Roots { count } => cmd_roots(&cfg, *count),
        Command::Solve => cmd_solve(&cfg),
        Command::Spectrum { mode, count } => cmd_spectrum(&cfg, *mode, *count),
        Command::Sweep => cmd_sweep(&cfg, cli.jobs),
        Command::Continuation {
            c0,
            p0,
            gamma0,
            gamma1,
            steps,
        } => cmd_continuation(
            &cfg,
            &ContinuationSection {
                c0: *c0,
                p0: *p0,
                gamma0: *gamma0,
                gamma1: *gamma1,
                steps: *steps,
            },
        ),
        Command::HardyCheck { radii } => cmd_hardy(&cfg, radii),
        Command::Validate => cmd_validate(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(e)) => {
            let report = serde_json::json!({ "error": format!("{e}") });
            println!("{}", serde_json::to_string_pretty(&report).expect("serialize"));
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::from(1)
        }
    }
}
