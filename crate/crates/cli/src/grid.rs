//! Parameter grids given on the command line.

use num_rational::Rational64;
use qtrig_core::formal::parse_rational;

use crate::CliError;

/// Exact decimal for denominators built from 2 and 5, `n/d` otherwise.
pub fn rational_to_text(r: &Rational64) -> String {
    let (n, d) = (*r.numer(), *r.denom());
    if d == 1 {
        return n.to_string();
    }
    let (mut rest, mut twos, mut fives) = (d, 0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return format!("{n}/{d}");
    }
    let places = twos.max(fives);
    let scaled = n as i128 * 10i128.pow(places) / d as i128;
    let sign = if scaled < 0 { "-" } else { "" };
    let digits = format!("{:0>width$}", scaled.unsigned_abs(), width = places as usize + 1);
    let (int, frac) = digits.split_at(digits.len() - places as usize);
    format!("{sign}{int}.{}", frac.trim_end_matches('0')).trim_end_matches('.').to_string()
}

/// Expands `lo:hi:step` into the exact values `lo, lo+step, ...` not above `hi`.
pub fn parse_q_grid(spec: &str) -> Result<Vec<String>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::usage(format!("--q-grid expects lo:hi:step with rational entries, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo = parse_rational(parts[0]).ok_or_else(bad)?;
    let hi = parse_rational(parts[1]).ok_or_else(bad)?;
    let step = parse_rational(parts[2]).ok_or_else(bad)?;
    if step <= Rational64::from_integer(0) || hi < lo {
        return Err(bad());
    }
    let mut out = Vec::new();
    let mut v = lo;
    while v <= hi {
        out.push(rational_to_text(&v));
        v += step;
        if out.len() > 100_000 {
            return Err(CliError::usage("--q-grid has more than 100000 points"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering_is_exact() {
        assert_eq!(rational_to_text(&Rational64::new(3, 10)), "0.3");
        assert_eq!(rational_to_text(&Rational64::new(1, 8)), "0.125");
        assert_eq!(rational_to_text(&Rational64::new(-1, 4)), "-0.25");
        assert_eq!(rational_to_text(&Rational64::new(1, 3)), "1/3");
        assert_eq!(rational_to_text(&Rational64::new(7, 1)), "7");
        assert_eq!(rational_to_text(&Rational64::new(21, 20)), "1.05");
    }

    #[test]
    fn grid_has_no_float_drift() {
        let g = parse_q_grid("0.1:0.9:0.2").unwrap();
        assert_eq!(g, ["0.1", "0.3", "0.5", "0.7", "0.9"]);
        assert!(parse_q_grid("0.5:0.1:0.1").is_err());
        assert!(parse_q_grid("0.1:0.5").is_err());
    }
}
