//! Machine-readable check reports: JSON lines and CSV.

use std::io::Write;

use qtrig_core::identities::{judge, parse_real, parse_y, IdentityResult, Mode, Verdict};
use qtrig_core::{Complex, MpFloat, Real};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub z: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub digits: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub denom: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Terms {
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

/// One check as emitted by `qtrig check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub identity: String,
    pub mode: String,
    pub params: ReportParams,
    pub lhs: String,
    pub rhs: String,
    pub abs_diff: String,
    pub rel_diff: String,
    pub bound: String,
    pub verdict: String,
    pub terms: Terms,
    pub expected: String,
    pub tol: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mismatches: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl From<&IdentityResult> for ReportRecord {
    fn from(r: &IdentityResult) -> Self {
        let p = &r.params;
        Self {
            identity: r.identity.clone(),
            mode: r.mode.as_str().to_string(),
            params: ReportParams {
                q: p.q.clone(),
                z: p.z.clone(),
                y: p.y.clone(),
                m: p.m.clone(),
                order: p.order,
                digits: p.digits,
                denom: p.denom,
            },
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
            abs_diff: r.abs_diff.clone(),
            rel_diff: r.rel_diff.clone(),
            bound: r.bound.clone(),
            verdict: r.verdict.as_str().to_string(),
            terms: Terms { lhs_terms: r.lhs_terms, rhs_terms: r.rhs_terms },
            expected: r.expected.as_str().to_string(),
            tol: format!("{:e}", r.tol),
            mismatches: r.mismatches,
            note: r.note.clone(),
        }
    }
}

/// Flat CSV row with the columns in report order.
#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    identity: &'a str,
    mode: &'a str,
    q: Option<&'a str>,
    z: Option<&'a str>,
    y: Option<&'a str>,
    m: Option<&'a str>,
    order: Option<i64>,
    digits: Option<u32>,
    denom: Option<u32>,
    lhs: &'a str,
    rhs: &'a str,
    abs_diff: &'a str,
    rel_diff: &'a str,
    bound: &'a str,
    verdict: &'a str,
    lhs_terms: usize,
    rhs_terms: usize,
    expected: &'a str,
    tol: &'a str,
    mismatches: Option<usize>,
    note: Option<&'a str>,
}

impl<'a> From<&'a ReportRecord> for CsvRow<'a> {
    fn from(r: &'a ReportRecord) -> Self {
        let p = &r.params;
        Self {
            identity: &r.identity,
            mode: &r.mode,
            q: p.q.as_deref(),
            z: p.z.as_deref(),
            y: p.y.as_deref(),
            m: p.m.as_deref(),
            order: p.order,
            digits: p.digits,
            denom: p.denom,
            lhs: &r.lhs,
            rhs: &r.rhs,
            abs_diff: &r.abs_diff,
            rel_diff: &r.rel_diff,
            bound: &r.bound,
            verdict: &r.verdict,
            lhs_terms: r.terms.lhs_terms,
            rhs_terms: r.terms.rhs_terms,
            expected: &r.expected,
            tol: &r.tol,
            mismatches: r.mismatches,
            note: r.note.as_deref(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn write_json(records: &[ReportRecord], out: &mut dyn Write) -> Result<(), CliError> {
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| CliError { code: crate::EXIT_FAIL, message: e.to_string() })?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn write_csv(records: &[ReportRecord], out: &mut dyn Write) -> Result<(), CliError> {
    let fail = |e: csv::Error| CliError { code: crate::EXIT_FAIL, message: e.to_string() };
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(out);
    if records.is_empty() {
        w.write_record([
            "identity",
            "mode",
            "q",
            "z",
            "y",
            "m",
            "order",
            "digits",
            "denom",
            "lhs",
            "rhs",
            "abs_diff",
            "rel_diff",
            "bound",
            "verdict",
            "lhs_terms",
            "rhs_terms",
            "expected",
            "tol",
            "mismatches",
            "note",
        ])
        .map_err(fail)?;
    }
    for r in records {
        w.serialize(CsvRow::from(r)).map_err(fail)?;
    }
    w.flush()?;
    Ok(())
}

fn recompute<T: Real>(r: &ReportRecord, digits: u32) -> Option<Verdict> {
    let lhs: Complex<T> = parse_y(&r.lhs, digits)?;
    let rhs: Complex<T> = parse_y(&r.rhs, digits)?;
    let bound: T = parse_real(&r.bound, digits)?;
    let tol: T = parse_real(&r.tol, digits)?;
    Some(judge(&lhs, &rhs, &bound, &tol).verdict)
}

/// Recomputes the verdict of a record from its printed values.
///
/// Numeric records are re-judged from `lhs`, `rhs`, `bound` and `tol` at the
/// recorded precision; formal records from their mismatch count. `None` for
/// records that carry no values.
pub fn recomputed_verdict(r: &ReportRecord) -> Option<Verdict> {
    if r.mode == Mode::Formal.as_str() {
        return r.mismatches.map(|m| if m == 0 { Verdict::Pass } else { Verdict::Fail });
    }
    if r.lhs.is_empty() {
        return None;
    }
    let digits = r.params.digits.unwrap_or(16);
    if digits <= qtrig_core::identities::numeric::F64_DIGITS {
        recompute::<f64>(r, digits)
    } else {
        recompute::<MpFloat>(r, digits)
    }
}
