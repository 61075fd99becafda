//! Grid sweeps over identities, evaluated in parallel and reported in a
//! fixed order: identity, mode, then `q` ascending, then `z` ascending.

use num_rational::Rational64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formal::parse_rational;
use crate::qpoch::QParam;

use super::formal::{check_formal, FormalParams};
use super::numeric::{check_numeric, CheckOptions};
use super::registry::{lookup, IdentitySpec, Mode};
use super::{IdentityResult, Params, Verdict};

pub const DEFAULT_Z_GRID: [&str; 9] = ["0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"];
pub const DEFAULT_FORMAL_Z_GRID: [&str; 6] = ["1/8", "1/4", "3/8", "1/2", "5/8", "3/4"];
pub const DEFAULT_Y_GRID: [&str; 5] = ["0.25", "0.5", "1", "2", "1@1/3"];
pub const DEFAULT_M_GRID: [&str; 3] = ["0", "1", "2"];
pub const DEFAULT_ORDER: i64 = 40;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRequest {
    pub names: Vec<String>,
    pub modes: Vec<Mode>,
    pub q_grid: Vec<String>,
    /// Angle parameters; the defaults apply when absent.
    pub z_grid: Option<Vec<String>>,
    /// Triple-product arguments; derived from `z_grid` when only that is given.
    pub y_grid: Option<Vec<String>>,
    /// Exponents `m` of `y = q^m` for the formal triple product.
    pub m_grid: Option<Vec<String>>,
    pub options: CheckOptions,
    pub order: i64,
    pub denom: Option<u32>,
}

impl SweepRequest {
    pub fn numeric(names: &[&str], q_grid: &[&str], options: CheckOptions) -> Self {
        Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            modes: vec![Mode::Numeric],
            q_grid: q_grid.iter().map(|s| s.to_string()).collect(),
            z_grid: None,
            y_grid: None,
            m_grid: None,
            options,
            order: DEFAULT_ORDER,
            denom: None,
        }
    }
}

#[derive(Clone, Debug)]
enum Cell {
    Numeric { spec: &'static IdentitySpec, q: String, z: Option<String>, y: Option<String> },
    Formal { spec: &'static IdentitySpec, params: FormalParams },
}

fn owned(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn sorted_by_value(values: &[String]) -> Result<Vec<(f64, String)>> {
    let mut out = values
        .iter()
        .map(|s| {
            let v = parse_rational(s)
                .map(|r| *r.numer() as f64 / *r.denom() as f64)
                .or_else(|| s.trim().parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Domain(format!("cannot parse grid value `{s}`")))?;
            Ok((v, s.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

fn numeric_cells(
    spec: &'static IdentitySpec,
    req: &SweepRequest,
    qs: &[(f64, String)],
    out: &mut Vec<Cell>,
) -> Result<()> {
    let z_given = req.z_grid.clone();
    for (_, q) in qs {
        let cell = |z: Option<String>, y: Option<String>| Cell::Numeric { spec, q: q.clone(), z, y };
        if spec.takes_y && (req.y_grid.is_some() || z_given.is_none()) {
            let ys = req.y_grid.clone().unwrap_or_else(|| owned(&DEFAULT_Y_GRID));
            out.extend(ys.into_iter().map(|y| cell(None, Some(y))));
        } else if spec.z.takes_z() {
            let zs = z_given.clone().unwrap_or_else(|| owned(&DEFAULT_Z_GRID));
            for (v, z) in sorted_by_value(&zs)? {
                if spec.z.contains(v) {
                    out.push(cell(Some(z), None));
                }
            }
        } else {
            out.push(cell(None, None));
        }
    }
    Ok(())
}

fn rationals(values: &[String]) -> Result<Vec<Rational64>> {
    let mut out = values
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| Error::Domain(format!("`{s}` is not a rational number"))))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

fn formal_cells(spec: &'static IdentitySpec, req: &SweepRequest, out: &mut Vec<Cell>) -> Result<()> {
    if spec.takes_y && (req.m_grid.is_some() || req.z_grid.is_none()) {
        let ms = req.m_grid.clone().unwrap_or_else(|| owned(&DEFAULT_M_GRID));
        for m in rationals(&ms)? {
            out.push(Cell::Formal { spec, params: FormalParams { z: None, m: Some(m) } });
        }
    } else if spec.z.takes_z() {
        let zs = req.z_grid.clone().unwrap_or_else(|| owned(&DEFAULT_FORMAL_Z_GRID));
        for z in rationals(&zs)? {
            if spec.z.contains(*z.numer() as f64 / *z.denom() as f64) {
                out.push(Cell::Formal { spec, params: FormalParams { z: Some(z), m: None } });
            }
        }
    } else {
        out.push(Cell::Formal { spec, params: FormalParams::default() });
    }
    Ok(())
}

fn error_record(spec: &IdentitySpec, mode: Mode, params: Params, tol: f64, err: Error) -> IdentityResult {
    let mut r = IdentityResult::empty(spec, mode, params, tol);
    r.verdict = match err {
        Error::BudgetExhausted { .. } => Verdict::Inconclusive,
        _ => Verdict::Fail,
    };
    r.note = Some(format!("error: {err}"));
    r
}

fn run_cell(cell: &Cell, req: &SweepRequest) -> IdentityResult {
    match cell {
        Cell::Numeric { spec, q, z, y } => check_numeric(spec.name, q, z.as_deref(), y.as_deref(), &req.options)
            .unwrap_or_else(|e| {
                let params = Params {
                    q: Some(q.clone()),
                    z: z.clone(),
                    y: y.clone(),
                    digits: Some(req.options.digits),
                    ..Params::default()
                };
                error_record(spec, Mode::Numeric, params, req.options.tol, e)
            }),
        Cell::Formal { spec, params } => check_formal(spec.name, params, req.order, req.denom).unwrap_or_else(|e| {
            let p = Params {
                z: params.z.map(|z| z.to_string()),
                m: params.m.map(|m| m.to_string()),
                order: Some(req.order),
                denom: req.denom,
                ..Params::default()
            };
            error_record(spec, Mode::Formal, p, 0.0, e)
        }),
    }
}

/// Runs every applicable cell of the request.
///
/// The request itself is validated up front (names, `q` in `(0, 1)`, grid
/// syntax); problems inside a single cell are reported in its record.
pub fn sweep(req: &SweepRequest) -> Result<Vec<IdentityResult>> {
    let specs = req.names.iter().map(|n| lookup(n)).collect::<Result<Vec<_>>>()?;
    let qs = sorted_by_value(&req.q_grid)?;
    for (v, s) in &qs {
        QParam::new(*v).map_err(|_| Error::QOutOfRange(s.clone()))?;
    }
    let mut cells = Vec::new();
    for spec in specs {
        for mode in [Mode::Numeric, Mode::Formal] {
            if !req.modes.contains(&mode) || !spec.supports(mode) {
                continue;
            }
            match mode {
                Mode::Numeric => numeric_cells(spec, req, &qs, &mut cells)?,
                Mode::Formal => formal_cells(spec, req, &mut cells)?,
            }
        }
    }
    Ok(cells.par_iter().map(|c| run_cell(c, req)).collect())
}
