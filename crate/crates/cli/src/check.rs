//! `qtrig check`: identity checks over parameter grids.

use std::io::Write;

use clap::{Args, ValueEnum};
use qtrig_core::formal::parse_rational;
use qtrig_core::identities::sweep::DEFAULT_ORDER;
use qtrig_core::identities::{registry, sweep, CheckOptions, IdentityResult, Mode, SweepRequest, Verdict};
use qtrig_core::qpoch::DEFAULT_MAX_TERMS;

use crate::grid::parse_q_grid;
use crate::report::{write_csv, write_json, Format, ReportRecord};
use crate::{CliError, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Numeric,
    Formal,
    Both,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Identities to check (comma-separated or repeated).
    #[arg(long = "identity", value_delimiter = ',', required_unless_present = "all", conflicts_with = "all")]
    pub identities: Vec<String>,
    /// Check every registered identity.
    #[arg(long)]
    pub all: bool,
    /// Values of q in (0, 1).
    #[arg(long = "q", value_delimiter = ',', allow_hyphen_values = true)]
    pub q: Vec<String>,
    /// A q grid `lo:hi:step`, endpoints inclusive.
    #[arg(long)]
    pub q_grid: Option<String>,
    /// Angle parameters z (the angle is pi z); decimals or fractions.
    #[arg(long = "z", value_delimiter = ',', allow_hyphen_values = true)]
    pub z: Vec<String>,
    /// Triple-product arguments: `a`, `a+bi`, or `r@t` for `r e^{i pi t}`.
    #[arg(long = "y", value_delimiter = ',', allow_hyphen_values = true)]
    pub y: Vec<String>,
    /// Exponents m of y = q^m for the formal triple product.
    #[arg(long = "m", value_delimiter = ',', allow_hyphen_values = true)]
    pub m: Vec<String>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Relative truncation target per side (default tol/10).
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Numeric)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Formal comparisons run through q^order.
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: i64,
    /// Working precision in decimal digits; above 16 uses multiprecision.
    #[arg(long, default_value_t = 16)]
    pub digits: u32,
    /// Lattice denominator for formal checks (a multiple of the automatic one).
    #[arg(long)]
    pub denom: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
}

fn non_empty(v: &[String]) -> Option<Vec<String>> {
    (!v.is_empty()).then(|| v.to_vec())
}

/// Builds the sweep request, rejecting malformed input before any work.
pub fn request(args: &CheckArgs) -> Result<SweepRequest, CliError> {
    let modes = match args.mode {
        ModeArg::Numeric => vec![Mode::Numeric],
        ModeArg::Formal => vec![Mode::Formal],
        ModeArg::Both => vec![Mode::Numeric, Mode::Formal],
    };
    let names: Vec<String> =
        if args.all { registry().iter().map(|s| s.name.to_string()).collect() } else { args.identities.clone() };
    for n in &names {
        qtrig_core::identities::lookup(n)?;
    }
    let mut q_grid = args.q.clone();
    if let Some(g) = &args.q_grid {
        q_grid.extend(parse_q_grid(g)?);
    }
    if modes.contains(&Mode::Numeric) && q_grid.is_empty() {
        return Err(CliError::usage("numeric checks need --q or --q-grid"));
    }
    if !(args.tol > 0.0) || args.eps.is_some_and(|e| !(e > 0.0)) {
        return Err(CliError::usage("--tol and --eps must be positive"));
    }
    if args.digits == 0 || args.max_terms == 0 {
        return Err(CliError::usage("--digits and --max-terms must be positive"));
    }
    for z in &args.z {
        let v = parse_rational(z)
            .map(|r| *r.numer() as f64 / *r.denom() as f64)
            .ok_or_else(|| CliError::usage(format!("cannot parse z `{z}`")))?;
        if !(0.0..=1.0).contains(&v) {
            return Err(CliError::domain(format!("z = {z} lies outside [0, 1]")));
        }
    }
    Ok(SweepRequest {
        names,
        modes,
        q_grid,
        z_grid: non_empty(&args.z),
        y_grid: non_empty(&args.y),
        m_grid: non_empty(&args.m),
        options: CheckOptions { tol: args.tol, digits: args.digits, eps: args.eps, max_terms: args.max_terms },
        order: args.order,
        denom: args.denom,
    })
}

/// 1 if a pass-expected check failed, else 4 if anything was inconclusive, else 0.
pub fn exit_code(results: &[IdentityResult]) -> i32 {
    if results.iter().any(IdentityResult::is_unexpected_failure) {
        EXIT_FAIL
    } else if results.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

pub fn run(args: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let req = request(args)?;
    let results = sweep(&req)?;
    let records: Vec<ReportRecord> = results.iter().map(ReportRecord::from).collect();
    match args.format {
        Format::Json => write_json(&records, out)?,
        Format::Csv => write_csv(&records, out)?,
    }
    Ok(exit_code(&results))
}
