use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;
use ssnn::analysis::{BoundCheck, Violator};
use ssnn::rational::format_rational;
use ssnn::roots::{ComplexRoot, RootSet};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub re: f64,
    pub im: f64,
    /// Full working precision, fixed point.
    pub re_decimal: String,
    pub im_decimal: String,
    pub error_radius: f64,
    pub residual: f64,
    pub multiplicity: usize,
    pub real: bool,
}

impl RootReport {
    pub fn new(r: &ComplexRoot) -> Self {
        let (re, im) = r.to_f64();
        let digits = r.re.decimal_digits();
        RootReport {
            re,
            im,
            re_decimal: r.re.to_decimal(digits),
            im_decimal: r.im.to_decimal(digits),
            error_radius: r.error_radius_f64(),
            residual: r.residual,
            multiplicity: r.multiplicity,
            real: r.is_real_certified,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ViolatorReport {
    Root {
        re: f64,
        im: f64,
        margin: f64,
    },
    RealRoots {
        lo: String,
        hi: String,
        count: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub kind: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_margin: Option<f64>,
    pub violators: Vec<ViolatorReport>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub extrapolated: bool,
}

impl CheckReport {
    pub fn simple(kind: &str, pass: bool) -> Self {
        CheckReport {
            kind: kind.to_string(),
            pass,
            lower: None,
            upper: None,
            radius: None,
            min_margin: None,
            violators: Vec::new(),
            extrapolated: false,
        }
    }

    pub fn from_bound(check: &BoundCheck) -> Self {
        let violators = check
            .violators
            .iter()
            .map(|v| match v {
                Violator::Root { re, im, margin } => ViolatorReport::Root {
                    re: *re,
                    im: *im,
                    margin: *margin,
                },
                Violator::RealRoots { lo, hi, count } => ViolatorReport::RealRoots {
                    lo: format_rational(lo),
                    hi: format_rational(hi),
                    count: *count,
                },
            })
            .collect();
        CheckReport {
            kind: check.kind.name().to_string(),
            pass: check.pass,
            lower: check.lower.as_ref().map(format_rational),
            upper: check.upper.as_ref().map(format_rational),
            radius: check.radius.as_ref().map(format_rational),
            min_margin: check.min_margin(),
            violators,
            extrapolated: check.extrapolated,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub seq: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub roots: Vec<RootReport>,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    pub precision_bits: u32,
    pub max_iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    pub elapsed_ms: f64,
    pub version: &'static str,
}

impl RunReport {
    pub fn new(seq: usize, command: &str) -> Self {
        RunReport {
            seq,
            line: None,
            command: command.to_string(),
            label: None,
            delta: None,
            degree: None,
            status: Status::Pass,
            error: None,
            roots: Vec::new(),
            checks: Vec::new(),
            details: None,
            precision_bits: 0,
            max_iterations: 0,
            iterations: None,
            elapsed_ms: 0.0,
            version: TOOL_VERSION,
        }
    }

    pub fn set_roots(&mut self, rs: &RootSet) {
        self.roots = rs.roots.iter().map(RootReport::new).collect();
        self.degree = Some(rs.degree);
        self.precision_bits = rs.precision_bits;
        self.iterations = Some(rs.iterations);
    }

    pub fn fail_with(&mut self, err: impl ToString) {
        self.error = Some(err.to_string());
    }

    /// Error beats fail beats pass.
    pub fn finish(mut self) -> Self {
        self.status = if self.error.is_some() {
            Status::Error
        } else if self.checks.iter().any(|c| !c.pass) {
            Status::Fail
        } else {
            Status::Pass
        };
        self
    }

    pub fn display_label(&self) -> String {
        self.label
            .clone()
            .unwrap_or_else(|| format!("#{}", self.seq))
    }
}

/// 0 when everything passed, 1 when a check failed, 2 on any error.
pub fn exit_code(reports: &[RunReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

pub fn write_jsonl<W: Write>(mut w: W, reports: &[RunReport]) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "seq,line,label,command,degree,status,checks,min_margin,roots,error";

/// One row per report.
pub fn write_csv<W: Write>(mut w: W, reports: &[RunReport]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in reports {
        let checks: Vec<String> = r
            .checks
            .iter()
            .map(|c| format!("{}={}", c.kind, if c.pass { "pass" } else { "fail" }))
            .collect();
        let min_margin = r
            .checks
            .iter()
            .filter_map(|c| c.min_margin)
            .reduce(f64::min);
        let status = serde_json::to_value(r.status).expect("status serializes");
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.seq,
            r.line.map(|l| l.to_string()).unwrap_or_default(),
            csv_field(&r.display_label()),
            r.command,
            r.degree.map(|d| d.to_string()).unwrap_or_default(),
            status.as_str().unwrap_or_default(),
            csv_field(&checks.join(";")),
            min_margin.map(|m| m.to_string()).unwrap_or_default(),
            r.roots.len(),
            csv_field(r.error.as_deref().unwrap_or("")),
        )?;
    }
    Ok(())
}
