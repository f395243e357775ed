//! Commands behind the `minorant` binary. Each returns [`OutputRecord`]s so
//! that tests can call them without spawning a process.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use minorant_core::debranges::{self, QuadratureConfig, DEFAULT_SCALE_C};
use minorant_core::extremal::{self, Dimension};
use minorant_core::lp::{self, LpConfig, LpStatus};
use minorant_core::special::{bessel_zero, Order, ZeroIndex};
use minorant_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

/// One line of output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, f64>,
    pub status: String,
}

impl OutputRecord {
    fn new(command: &str, status: impl Into<String>) -> Self {
        OutputRecord {
            command: command.to_owned(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            status: status.into(),
        }
    }

    fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_owned(), v.into());
        self
    }

    fn output(mut self, key: &str, v: f64) -> Self {
        self.outputs.insert(key.to_owned(), v);
        self
    }

    /// Exit code implied by the record's own status.
    pub fn exit_code(&self) -> i32 {
        if self.status == STATUS_TOL_MISSED || self.status.starts_with("lp_") {
            EXIT_SOLVER
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}

const STATUS_TOL_MISSED: &str = "tolerance_not_met";

/// Maps a library error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain { .. } | Error::Overflow { .. } | Error::Window { .. } => EXIT_DOMAIN,
        Error::NonConvergence { .. } => EXIT_SOLVER,
        Error::Integrability { .. } | Error::Config(_) => EXIT_PRECONDITION,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Renders records as JSON lines or as a CSV table. CSV columns are the
/// input keys, then the output keys, then `status`; keys missing from a
/// record are left empty.
pub fn render(records: &[OutputRecord], format: Format) -> String {
    match format {
        Format::Json => records.iter().map(|r| r.to_json() + "\n").collect(),
        Format::Csv => {
            let mut ins = std::collections::BTreeSet::new();
            let mut outs = std::collections::BTreeSet::new();
            for r in records {
                ins.extend(r.inputs.keys().cloned());
                outs.extend(r.outputs.keys().cloned());
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            let header: Vec<String> = ins
                .iter()
                .chain(outs.iter())
                .cloned()
                .chain(std::iter::once("status".to_owned()))
                .collect();
            w.write_record(&header).expect("in-memory write");
            for r in records {
                let mut row: Vec<String> = ins
                    .iter()
                    .map(|k| match r.inputs.get(k) {
                        None => String::new(),
                        Some(Value::String(s)) => s.clone(),
                        Some(v) => v.to_string(),
                    })
                    .collect();
                row.extend(outs.iter().map(|k| r.outputs.get(k).map(|v| fmt_f64(*v)).unwrap_or_default()));
                row.push(r.status.clone());
                w.write_record(&row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    }
}

/// Shortest text that parses back to the same `f64`.
fn fmt_f64(v: f64) -> String {
    serde_json::to_string(&v).unwrap_or_else(|_| v.to_string())
}

/// Inclusive dimension range written `d` or `a..b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimRange(pub RangeInclusive<u32>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDimRangeError(String);

impl fmt::Display for ParseDimRangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid dimension range `{}`, expected `d` or `a..b`", self.0)
    }
}

impl std::error::Error for ParseDimRangeError {}

impl FromStr for DimRange {
    type Err = ParseDimRangeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDimRangeError(s.to_owned());
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), s.trim()),
        };
        let a: u32 = a.parse().map_err(|_| err())?;
        let b: u32 = b.parse().map_err(|_| err())?;
        if a > b {
            return Err(err());
        }
        Ok(DimRange(a..=b))
    }
}

/// LP mesh written `<m>x<samples_per_unit>`, e.g. `128x16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpGrid {
    pub m: usize,
    pub samples_per_unit: usize,
}

impl FromStr for LpGrid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (m, k) = s
            .split_once('x')
            .ok_or_else(|| format!("invalid grid `{s}`, expected <m>x<samples_per_unit>"))?;
        Ok(LpGrid {
            m: m.trim().parse().map_err(|e| format!("bad m in `{s}`: {e}"))?,
            samples_per_unit: k.trim().parse().map_err(|e| format!("bad samples in `{s}`: {e}"))?,
        })
    }
}

impl LpGrid {
    pub fn config(self) -> LpConfig {
        LpConfig {
            m: self.m,
            samples_per_unit: self.samples_per_unit,
            ..LpConfig::default()
        }
    }
}

impl Default for LpGrid {
    fn default() -> Self {
        let c = LpConfig::default();
        LpGrid {
            m: c.m,
            samples_per_unit: c.samples_per_unit,
        }
    }
}

impl fmt::Display for LpGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.samples_per_unit)
    }
}

pub fn cmd_bessel_zero(nu: f64, n: usize) -> Result<OutputRecord, Error> {
    let z = bessel_zero(Order::new(nu)?, ZeroIndex::new(n)?)?;
    Ok(OutputRecord::new("bessel-zero", "ok")
        .input("nu", nu)
        .input("n", n)
        .output("j", z))
}

/// Rounds to `digits` significant digits, half away from zero.
fn round_significant(x: f64, digits: usize) -> f64 {
    format!("{:.*e}", digits - 1, x).parse().expect("formatted float")
}

pub fn cmd_critical_radius(range: &DimRange) -> Result<Vec<OutputRecord>, Error> {
    range
        .0
        .clone()
        .map(|d| {
            let dim = Dimension::new(d)?;
            let rd = extremal::critical_radius(dim)?;
            Ok(OutputRecord::new("critical-radius", "ok")
                .input("d", d)
                .output("r_d", rd)
                .output("r_d_asymptotic", extremal::critical_radius_asymptotic(dim))
                .output("r_d_4sig", round_significant(rd, 4))
                .output("r_d_4sig_up", extremal::round_up_significant(rd, 4)))
        })
        .collect()
}

pub fn cmd_beta(d: u32, r: f64, lp_cfg: Option<LpConfig>) -> Result<OutputRecord, Error> {
    let dim = Dimension::new(d)?;
    let b = extremal::beta_closed_form(dim, r)?;
    let mut rec = OutputRecord::new("beta", b.regime.as_str()).input("d", d).input("r", r);
    if let Some(v) = b.value {
        rec = rec.output("beta", v);
    }
    if let Some(cfg) = lp_cfg {
        let s = lp::solve_lp(dim, r, cfg)?;
        let grid = LpGrid {
            m: cfg.m,
            samples_per_unit: cfg.samples_per_unit,
        };
        rec = rec
            .input("lp_grid", grid.to_string())
            .output("lp_objective", s.objective)
            .output("lp_max_violation", s.max_violation);
        if let Some(v) = b.value {
            if v > 0.0 {
                rec = rec.output("lp_relative_difference", (s.objective - v) / v);
            }
        }
        if s.status != LpStatus::Optimal {
            rec.status = format!("lp_{}", s.status.as_str());
        }
    }
    Ok(rec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Identity {
    /// `F = G_n^2`
    #[default]
    Isometry,
    /// `F = c G_n^2`
    Integral,
}

pub fn cmd_verify_identity(
    nu: f64,
    n: u32,
    truncation: Option<f64>,
    tol: f64,
    identity: Identity,
    c: f64,
) -> Result<OutputRecord, Error> {
    let o = Order::new(nu)?;
    if n == 0 {
        return Err(Error::Config("n must be >= 1".into()));
    }
    let min_n = debranges::minimal_n(o);
    if n < min_n {
        return Err(Error::Integrability { nu, n, min_n });
    }
    let cfg = match truncation {
        Some(t) => QuadratureConfig::new(t, tol, debranges::MAX_SUBDIVISIONS)?,
        None => QuadratureConfig::for_test_function(o, n, tol)?,
    };
    let (report, name) = match identity {
        Identity::Isometry => (debranges::verify_isometry(o, n, cfg)?, "isometry"),
        Identity::Integral => (debranges::verify_integral_identity(o, n, c, cfg)?, "integral"),
    };
    let mut rec = OutputRecord::new("verify-identity", if report.passed { "ok" } else { STATUS_TOL_MISSED })
        .input("nu", nu)
        .input("n", n)
        .input("tol", tol)
        .input("identity", name)
        .output("lhs", report.lhs)
        .output("rhs", report.rhs)
        .output("relative_error", report.relative_error)
        .output("tail_bound", report.tail_bound)
        .output("T", report.truncation_t);
    if identity == Identity::Integral {
        rec = rec.input("c", c);
    }
    Ok(rec)
}

/// The default scale used by `--identity integral`.
pub const DEFAULT_C: f64 = DEFAULT_SCALE_C;

pub fn cmd_lp_study(d: u32, r: f64, base: LpGrid, rungs: usize) -> Result<Vec<OutputRecord>, Error> {
    let dim = Dimension::new(d)?;
    let ladder = base.config().ladder(rungs);
    let rows = lp::convergence_study(dim, r, &ladder)?;
    let b = extremal::beta_closed_form(dim, r)?;
    Ok(rows
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let grid = LpGrid {
                m: row.config.m,
                samples_per_unit: row.config.samples_per_unit,
            };
            let status = match row.status {
                LpStatus::Optimal => b.regime.as_str().to_owned(),
                other => format!("lp_{}", other.as_str()),
            };
            let mut rec = OutputRecord::new("lp-study", status)
                .input("d", d)
                .input("r", r)
                .input("rung", i)
                .input("lp_grid", grid.to_string())
                .output("lp_objective", row.objective)
                .output("lp_max_violation", row.max_violation);
            if let Some(v) = b.value {
                rec = rec.output("beta", v).output("abs_difference", (row.objective - v).abs());
            }
            rec
        })
        .collect())
}
