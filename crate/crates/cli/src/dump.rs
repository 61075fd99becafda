//! `qtrig dump-series`: coefficient listings of formal series.

use std::io::Write;

use clap::{Args, ValueEnum};
use num_integer::Integer;
use num_rational::Rational64;
use qtrig_core::formal::{fs_binomial_pow, fs_pochhammer, fs_theta_sum, parse_rational};
use qtrig_core::{FormalSeries, SignRule};

use crate::{CliError, EXIT_OK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// (q^a; q^s)_inf
    Pochhammer,
    /// sum_n sign^n q^{c2 n^2 + c1 n + c0}
    ThetaSum,
    /// (1 - q^r)^e
    Binomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Alternating,
    Plus,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[arg(long, value_enum)]
    pub series: SeriesKind,
    /// Highest exponent listed (rational allowed).
    #[arg(long, allow_hyphen_values = true)]
    pub order: String,
    /// Pochhammer base exponent a.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    /// Pochhammer step exponent s.
    #[arg(long, default_value = "1")]
    pub s: String,
    #[arg(long, default_value = "1")]
    pub c2: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c0: String,
    #[arg(long, value_enum, default_value_t = SignArg::Alternating)]
    pub sign: SignArg,
    /// Binomial base exponent r.
    #[arg(long, default_value = "1")]
    pub r: String,
    /// Binomial power e.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub e: String,
    /// Lattice denominator; defaults to the lcm of the parameter denominators.
    #[arg(long)]
    pub denom: Option<u32>,
}

fn rational(s: &str, flag: &str) -> Result<Rational64, CliError> {
    parse_rational(s).ok_or_else(|| CliError::usage(format!("--{flag} expects a rational number, got `{s}`")))
}

pub fn build(args: &DumpArgs) -> Result<FormalSeries, CliError> {
    let order = rational(&args.order, "order")?;
    let exps: Vec<Rational64> = match args.series {
        SeriesKind::Pochhammer => vec![rational(&args.a, "a")?, rational(&args.s, "s")?],
        SeriesKind::ThetaSum => vec![rational(&args.c2, "c2")?, rational(&args.c1, "c1")?, rational(&args.c0, "c0")?],
        SeriesKind::Binomial => vec![rational(&args.r, "r")?],
    };
    let auto = exps.iter().fold(1i64, |acc, r| acc.lcm(r.denom())) as u32;
    let d = match args.denom {
        Some(d) if d == 0 || d % auto != 0 => {
            return Err(CliError::usage(format!("--denom must be a positive multiple of {auto}")));
        }
        Some(d) => d,
        None => auto,
    };
    let window = (order * Rational64::from_integer(d as i64)).floor().to_integer();
    if window > qtrig_core::identities::formal::MAX_KEYS {
        return Err(CliError::usage(format!("order {order} on lattice 1/{d} is too large")));
    }
    let series = match args.series {
        SeriesKind::Pochhammer => fs_pochhammer(exps[0], exps[1], d, window)?,
        SeriesKind::ThetaSum => {
            let sign = match args.sign {
                SignArg::Alternating => SignRule::Alternating,
                SignArg::Plus => SignRule::Plus,
            };
            fs_theta_sum(exps[0], exps[1], exps[2], sign, d, window)?
        }
        SeriesKind::Binomial => fs_binomial_pow(exps[0], rational(&args.e, "e")?, d, window)?,
    };
    Ok(series.truncate(window))
}

pub fn run(args: &DumpArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let series = build(args)?;
    write!(out, "{}", series.to_listing())?;
    Ok(EXIT_OK)
}
