// `!(x > 0.0)` guards reject NaN; `-3.14` is a scattering-length target,
// not an approximation of pi
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::approx_constant)]

//! `erange` - phase shifts and effective-range expansions for short-range
//! wells, emitted as deterministic CSV tables.
//!
//! Exit status: 0 success, 1 usage error, 2 numerical precondition violation,
//! 3 ordering violation in `fig` mode.

mod figures;
mod potential_arg;
mod records;
mod table;

use anyhow::anyhow;
use clap::{error::ErrorKind, Args, Parser, Subcommand};
use erange_core::{
    compare_expansions, fit_effective_range, integral_identity, solve_beta_for_target_a,
    solve_phase, ExpansionKind, ParamsPolicy, Potential, SolverConfig, SquareWell,
};
use std::path::PathBuf;

use potential_arg::parse_potential;
use table::{fmt, fmt_flag, Csv};

/// Error channel that distinguishes numerical failures (exit 2) from
/// figure-ordering violations (exit 3).
pub enum Failure {
    Numeric(anyhow::Error),
    Ordering(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Numeric(e.into())
    }
}

#[derive(Parser)]
#[command(
    name = "erange",
    version,
    about = "Low-energy S-wave scattering tables: exact square-well phase shifts, a radial solver, and effective-range expansions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Uniform k^2 grid shared by the table-producing subcommands.
#[derive(Args, Clone, Copy)]
pub struct GridArgs {
    /// Lower edge of the k^2 window
    #[arg(long = "kk-min", default_value_t = 0.005)]
    pub kk_min: f64,
    /// Upper edge of the k^2 window
    #[arg(long = "kk-max", default_value_t = 0.5)]
    pub kk_max: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 100)]
    pub n: usize,
}

impl GridArgs {
    fn points(&self) -> anyhow::Result<Vec<f64>> {
        grid_points(self.kk_min, self.kk_max, self.n)
    }
}

pub fn grid_points(lo: f64, hi: f64, n: usize) -> anyhow::Result<Vec<f64>> {
    if n < 2 {
        return Err(anyhow!("grid needs at least 2 points, got {n}"));
    }
    if !(lo >= 0.0 && hi > lo) {
        return Err(anyhow!("k^2 window must satisfy 0 <= kk-min < kk-max, got [{lo}, {hi}]"));
    }
    Ok((0..n).map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64).collect())
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form scattering length of a square well
    Scatlen {
        /// Potential spec, e.g. squarewell:R=1,beta=4.4934
        #[arg(long)]
        potential: String,
    },
    /// Radial-solver phase shifts on a k^2 grid (any supported potential)
    Phase {
        #[arg(long)]
        potential: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Integrator step; defaults to 1e-4 times the potential range
        #[arg(long)]
        step: Option<f64>,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form square-well phase-shift table on a k^2 grid
    Exact {
        #[arg(long = "R", default_value_t = 1.0)]
        range: f64,
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closure check of tan(delta)/k against -int u v V dr
    Identity {
        #[arg(long)]
        potential: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k^2 Taylor coefficients of both effective-range functions
    Coeffs {
        #[arg(long = "R", default_value_t = 1.0)]
        range: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one expansion kind on a k^2 grid
    Expand {
        /// Kind token: er1, er2, er18, er19, er22, er23, er24, inv4
        #[arg(long)]
        kind: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        r0: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least-squares (a, effective range) from a record CSV
    Fit {
        /// Input CSV with columns (k, delta) or (k, tan_delta_over_k)
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        kind: String,
        /// k^2 window as lo:hi (overrides --kk-min/--kk-max)
        #[arg(long)]
        window: Option<String>,
        #[arg(long = "kk-min", default_value_t = 0.0)]
        kk_min: f64,
        #[arg(long = "kk-max", default_value_t = 0.5)]
        kk_max: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expansion-versus-exact deviation report for a square well
    Compare {
        #[arg(long = "R", default_value_t = 1.0)]
        range: f64,
        #[arg(long)]
        beta: f64,
        /// Comma-separated kind tokens, e.g. er22,er23
        #[arg(long)]
        kinds: String,
        /// Parameter policy: "range" (both effective ranges = R) or "fitted"
        #[arg(long, default_value = "range")]
        policy: String,
        /// k^2 window as lo:hi (overrides --kk-min/--kk-max)
        #[arg(long)]
        window: Option<String>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inverse solve: well depth that produces a target scattering length
    BetaForA {
        #[arg(long = "R", default_value_t = 1.0)]
        range: f64,
        /// Target scattering length
        #[arg(long)]
        a: f64,
        /// beta*R bracket as lo:hi, excluding tan poles
        #[arg(long)]
        bracket: String,
    },
    /// Reference figures as CSV: fig1, fig2, fig3, fig4a, fig4b, fig4c, fig4d
    Fig {
        id: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "kk-min")]
        kk_min: Option<f64>,
        #[arg(long = "kk-max")]
        kk_max: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.command) {
        Ok(()) => {}
        Err(Failure::Numeric(e)) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
        Err(Failure::Ordering(msg)) => {
            eprintln!("ordering violation: {msg}");
            std::process::exit(3);
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Scatlen { potential } => scatlen(&potential),
        Command::Phase { potential, grid, step, out } => phase(&potential, grid, step, out.as_deref()),
        Command::Exact { range, beta, grid, out } => exact(range, beta, grid, out.as_deref()),
        Command::Identity { potential, grid, step, out } => identity(&potential, grid, step, out.as_deref()),
        Command::Coeffs { range, beta, out } => coeffs(range, beta, out.as_deref()),
        Command::Expand { kind, a, r0, grid, out } => expand(&kind, a, r0, grid, out.as_deref()),
        Command::Fit { input, kind, window, kk_min, kk_max, out } => {
            fit(&input, &kind, window.as_deref(), kk_min, kk_max, out.as_deref())
        }
        Command::Compare { range, beta, kinds, policy, window, grid, out } => {
            compare(range, beta, &kinds, &policy, window.as_deref(), grid, out.as_deref())
        }
        Command::BetaForA { range, a, bracket } => beta_for_a(range, a, &bracket),
        Command::Fig { id, out, kk_min, kk_max, n } => figures::run_figure(&id, &out, kk_min, kk_max, n),
    }
}

fn require_square_well(pot: &Potential) -> Result<SquareWell, Failure> {
    match *pot {
        Potential::SquareWell { range, beta } => Ok(SquareWell::new(range, beta)?),
        _ => Err(Failure::Numeric(anyhow!(
            "the closed form needs a squarewell potential, got {pot:?}"
        ))),
    }
}

fn solver_config(pot: &Potential, step: Option<f64>) -> SolverConfig {
    let mut cfg = SolverConfig::for_potential(pot);
    if let Some(step) = step {
        cfg.step = step;
    }
    cfg
}

fn scatlen(spec: &str) -> Result<(), Failure> {
    let well = require_square_well(&parse_potential(spec)?)?;
    println!("{}", fmt(well.scattering_length()?));
    Ok(())
}

const RECORD_HEADER: [&str; 7] =
    ["k", "kk", "delta", "tan_delta_over_k", "k_cot_delta", "pole_near_tan", "pole_near_kcot"];

fn record_row(rec: &erange_core::PhaseRecord) -> Vec<String> {
    vec![
        fmt(rec.k),
        fmt(rec.kk()),
        fmt(rec.delta),
        fmt(rec.tan_delta_over_k),
        fmt(rec.k_cot_delta),
        fmt_flag(rec.pole_near_tan),
        fmt_flag(rec.pole_near_kcot),
    ]
}

fn phase(spec: &str, grid: GridArgs, step: Option<f64>, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let pot = parse_potential(spec)?;
    let cfg = solver_config(&pot, step);
    let mut csv = Csv::new(&[], &RECORD_HEADER);
    for kk in grid.points()? {
        let rec = solve_phase(&pot, kk.sqrt(), &cfg)?;
        csv.row(&record_row(&rec));
    }
    csv.write(out)?;
    Ok(())
}

fn exact(range: f64, beta: f64, grid: GridArgs, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let well = SquareWell::new(range, beta)?;
    let mut csv = Csv::new(&[], &RECORD_HEADER);
    for kk in grid.points()? {
        let rec = well.phase_record(kk.sqrt())?;
        csv.row(&record_row(&rec));
    }
    csv.write(out)?;
    Ok(())
}

fn identity(spec: &str, grid: GridArgs, step: Option<f64>, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let pot = parse_potential(spec)?;
    let cfg = solver_config(&pot, step);
    let is_square = matches!(pot, Potential::SquareWell { .. });
    let range = pot.range();
    let mut csv = Csv::new(&[], &["k", "kk", "tan_delta_over_k", "integral", "abs_diff"]);
    let mut worst = (0.0f64, 0.0f64); // (diff, k)
    let mut violation: Option<String> = None;
    for kk in grid.points()? {
        let k = kk.sqrt();
        let t = if is_square {
            require_square_well(&pot)?.tan_delta_over_k(k)?
        } else {
            solve_phase(&pot, k, &cfg)?.tan_delta_over_k
        };
        let integral = integral_identity(&pot, k, &cfg)?;
        let diff = (integral - t).abs();
        if diff > worst.0 {
            worst = (diff, k);
        }
        let tol = if is_square {
            cfg.quadrature_tol.max(1e-8 * t.abs().max(range))
        } else {
            1e-6
        };
        if diff > tol && violation.is_none() {
            violation = Some(format!("identity closure failed at k = {k}: |diff| = {diff:e} > {tol:e}"));
        }
        csv.row(&[fmt(k), fmt(kk), fmt(t), fmt(integral), fmt(diff)]);
    }
    csv.write(out)?;
    println!("identity: max |integral - tan_delta_over_k| = {:.3e} at k = {:.6}", worst.0, worst.1);
    match violation {
        Some(msg) => Err(Failure::Numeric(anyhow!(msg))),
        None => Ok(()),
    }
}

fn coeffs(range: f64, beta: f64, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let well = SquareWell::new(range, beta)?;
    let c = well.taylor_coefficients()?;
    let mut csv = Csv::new(&[], &["R", "beta", "a", "b_small", "c_large", "r0_full"]);
    csv.row(&[
        fmt(range),
        fmt(beta),
        fmt(c.a),
        fmt(c.b_small),
        c.c_large.map(fmt).unwrap_or_default(),
        c.r0_full.map(fmt).unwrap_or_default(),
    ]);
    csv.write(out)?;
    Ok(())
}

fn parse_kind(token: &str) -> Result<ExpansionKind, Failure> {
    ExpansionKind::from_token(token).ok_or_else(|| {
        Failure::Numeric(anyhow!(
            "unknown expansion kind `{token}` (expected er1, er2, er18, er19, er22, er23, er24, inv4)"
        ))
    })
}

fn expand(kind: &str, a: f64, r0: f64, grid: GridArgs, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let kind = parse_kind(kind)?;
    let params = erange_core::ErParams { a, r0 };
    let mut csv = Csv::new(&[], &["kk", "value"]);
    for kk in grid.points()? {
        let v = erange_core::eval_expansion(kind, &params, kk.sqrt())?;
        csv.row(&[fmt(kk), fmt(v)]);
    }
    csv.write(out)?;
    Ok(())
}

fn parse_window(s: &str) -> anyhow::Result<(f64, f64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("window must be lo:hi, got `{s}`"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn fit(
    input: &std::path::Path,
    kind: &str,
    window: Option<&str>,
    kk_min: f64,
    kk_max: f64,
    out: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let kind = parse_kind(kind)?;
    let window = match window {
        Some(w) => parse_window(w)?,
        None => (kk_min, kk_max),
    };
    let recs = records::read_records(input)?;
    let fit = fit_effective_range(&recs, kind, window)?;
    let mut csv = Csv::new(
        &[],
        &["kind", "a", "r0", "intercept", "slope", "rms_residual", "n_points"],
    );
    csv.row(&[
        fit.kind.token().to_string(),
        fmt(fit.params.a),
        fmt(fit.params.r0),
        fmt(fit.intercept),
        fmt(fit.slope),
        fmt(fit.rms_residual),
        fit.n_points.to_string(),
    ]);
    csv.write(out)?;
    Ok(())
}

fn compare(
    range: f64,
    beta: f64,
    kinds: &str,
    policy: &str,
    window: Option<&str>,
    grid: GridArgs,
    out: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let well = SquareWell::new(range, beta)?;
    let kinds = kinds
        .split(',')
        .map(|t| parse_kind(t.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let policy = match policy {
        "range" => ParamsPolicy::UseRangeR,
        "fitted" => ParamsPolicy::UseFitted,
        other => return Err(Failure::Numeric(anyhow!("unknown policy `{other}` (range|fitted)"))),
    };
    let window = match window {
        Some(w) => parse_window(w)?,
        None => (grid.kk_min, grid.kk_max),
    };
    let reports = compare_expansions(&well, &kinds, policy, window, grid.n)?;
    let mut csv = Csv::new(
        &[],
        &["kind", "max_abs_dev", "mean_abs_dev", "kk_min", "kk_max", "n_samples", "n_excluded"],
    );
    for r in &reports {
        csv.row(&[
            r.kind.token().to_string(),
            fmt(r.max_abs_dev),
            fmt(r.mean_abs_dev),
            fmt(r.window.0),
            fmt(r.window.1),
            r.samples.len().to_string(),
            r.n_excluded.to_string(),
        ]);
    }
    csv.write(out)?;
    Ok(())
}

fn beta_for_a(range: f64, a: f64, bracket: &str) -> Result<(), Failure> {
    let bracket = parse_window(bracket)
        .map_err(|_| Failure::Numeric(anyhow!("bracket must be lo:hi in beta*R, got `{bracket}`")))?;
    let beta = solve_beta_for_target_a(range, a, bracket)?;
    println!("{}", fmt(beta));
    Ok(())
}
