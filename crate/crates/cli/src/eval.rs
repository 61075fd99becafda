//! `qtrig eval`: one function value with its certified bound.

use std::io::Write;

use clap::{Args, ValueEnum};
use qtrig_core::identities::{parse_real, parse_y};
use qtrig_core::qgamma::gamma_q;
use qtrig_core::qpoch::DEFAULT_MAX_TERMS;
use qtrig_core::qtrig::{cos_q, s_of_q, sin_q, special_sin_eighth, special_sin_quarter};
use qtrig_core::theta::theta1;
use qtrig_core::{qpoch, Angle, CertifiedValue, GammaArg, MpFloat, QParam, Real, ThetaArg, TruncationBudget};

use crate::{CliError, EXIT_OK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// (x; q)_inf
    Qpoch,
    /// Jacobi theta1(x, q)
    Theta1,
    /// sin_q(theta)
    Sinq,
    /// cos_q(theta)
    Cosq,
    /// The duplication constant S(q)
    #[value(name = "S")]
    S,
    /// Gamma_q(x)
    Gammaq,
    /// Closed form of sin_{q^2}(pi/4)
    SinQuarter,
    /// Closed form of sin_{q^2}(pi/8)
    SinEighth,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Argument of qpoch and theta1 (complex `a+bi` allowed) or gammaq (real).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Angle as a multiple of pi (theta = pi z) for sinq and cosq.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "theta")]
    pub z: Option<String>,
    /// Angle in radians for sinq and cosq.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Absolute truncation bound.
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// Working precision in decimal digits; above 16 uses multiprecision.
    #[arg(long, default_value_t = 16)]
    pub digits: u32,
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
}

fn real<T: Real>(s: &str, what: &str, digits: u32) -> Result<T, CliError> {
    parse_real(s, digits).ok_or_else(|| CliError::usage(format!("cannot parse {what} `{s}`")))
}

fn required<'a>(v: &'a Option<String>, flag: &str, f: Function) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::usage(format!("{f:?} needs {flag}").to_lowercase()))
}

fn angle<T: Real>(args: &EvalArgs) -> Result<Angle<T>, CliError> {
    match (&args.z, &args.theta) {
        (Some(z), _) => Ok(Angle::from_z(real(z, "z", args.digits)?)),
        (None, Some(t)) => Ok(Angle::from_radians(real(t, "theta", args.digits)?)),
        (None, None) => Err(CliError::usage("sinq and cosq need --z or --theta")),
    }
}

fn evaluate<T: Real>(args: &EvalArgs) -> Result<CertifiedValue<T>, CliError> {
    let d = args.digits;
    let qp = QParam::new(real::<T>(&args.q, "q", d)?)?;
    let budget = TruncationBudget::new(T::from_f64(args.eps, d), args.max_terms)?;
    let complex_x = || {
        let s = required(&args.x, "--x", args.function)?;
        parse_y::<T>(s, d).ok_or_else(|| CliError::usage(format!("cannot parse x `{s}`")))
    };
    Ok(match args.function {
        Function::Qpoch => qpoch(&complex_x()?, &qp, &budget)?,
        Function::Theta1 => theta1(&ThetaArg::new(complex_x()?), &qp, &budget)?,
        Function::Sinq => sin_q(&angle(args)?, &qp, &budget)?,
        Function::Cosq => cos_q(&angle(args)?, &qp, &budget)?,
        Function::S => s_of_q(&qp, &budget)?,
        Function::Gammaq => {
            let x = real::<T>(required(&args.x, "--x", args.function)?, "x", d)?;
            gamma_q(&GammaArg::new(x)?, &qp, &budget)?
        }
        Function::SinQuarter => special_sin_quarter(&qp, &budget)?,
        Function::SinEighth => special_sin_eighth(&qp, &budget)?,
    })
}

fn print<T: Real>(v: &CertifiedValue<T>, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "value\t{}", v.value.to_decimal())?;
    writeln!(out, "bound\t{}", v.bound.to_decimal())?;
    writeln!(out, "terms\t{}", v.terms_used)?;
    Ok(())
}

pub fn run(args: &EvalArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if args.digits == 0 {
        return Err(CliError::usage("--digits must be positive"));
    }
    if args.digits <= 16 {
        print(&evaluate::<f64>(args)?, out)?;
    } else {
        print(&evaluate::<MpFloat>(args)?, out)?;
    }
    Ok(EXIT_OK)
}
