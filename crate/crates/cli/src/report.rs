//! Machine-readable and text reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use pencil_core::bracket::HydroBracket;
use pencil_core::exactalg::{fmt_rational, Poly, Rational};
use pencil_core::{Error, ViolationReport};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationDoc {
    pub relation: String,
    /// 0-based.
    pub indices: Vec<usize>,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorDoc {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<&'static str>,
    pub status: Status,
    pub violations: Vec<ViolationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDoc>,
    pub artifacts: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    /// Human-readable lines for the text format.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(mode: Option<&'static str>) -> Self {
        Report {
            mode,
            status: Status::Pass,
            violations: Vec::new(),
            error: None,
            artifacts: Map::new(),
            timing_ms: None,
            summary: Vec::new(),
        }
    }

    pub fn add_violations(&mut self, rep: &ViolationReport) {
        self.violations.extend(rep.entries().iter().map(|v| ViolationDoc {
            relation: v.relation.as_str().to_string(),
            indices: v.indices.clone(),
            residual: v.residual.to_string(),
        }));
        self.settle();
    }

    pub fn add_violation(&mut self, relation: &str, indices: Vec<usize>, residual: String) {
        self.violations.push(ViolationDoc { relation: relation.to_string(), indices, residual });
        self.settle();
    }

    fn settle(&mut self) {
        if self.status != Status::Error {
            self.status = if self.violations.is_empty() { Status::Pass } else { Status::Fail };
        }
    }

    /// Marks the report as failed with `err`. Reports carried by
    /// `NotPoisson`/`NotIntegrable` are listed as violations.
    pub fn set_error(&mut self, err: &CliError) {
        if let CliError::Core(Error::NotPoisson(rep) | Error::NotIntegrable(rep)) = err {
            self.add_violations(rep);
        }
        self.status = Status::Error;
        self.error = Some(ErrorDoc { code: err.code(), message: err.to_string() });
    }

    pub fn artifact(&mut self, key: &str, value: Value) {
        self.artifacts.insert(key.to_string(), value);
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(mode) = self.mode {
            let _ = writeln!(s, "mode: {mode}");
        }
        let _ = writeln!(s, "status: {}", self.status.as_str());
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {} {}", e.code, e.message);
        }
        if !self.violations.is_empty() {
            let _ = writeln!(s, "violations: {}", self.violations.len());
            for v in &self.violations {
                let idx: Vec<String> = v.indices.iter().map(usize::to_string).collect();
                let _ = writeln!(s, "  ({}) [{}]: {}", v.relation, idx.join(","), v.residual);
            }
        }
        for line in &self.summary {
            let _ = writeln!(s, "{line}");
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "time: {t:.3} ms");
        }
        s
    }
}

pub fn rational_doc(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

/// Term list in the input format.
pub fn poly_doc(p: &Poly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!({ "coeff": fmt_rational(c), "exps": e })).collect())
}

pub fn poly_vec_doc(ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(poly_doc).collect())
}

pub fn matrix_doc(m: &[Vec<Poly>]) -> Value {
    Value::Array(m.iter().map(|r| poly_vec_doc(r)).collect())
}

/// A bracket in the input format, so it can be fed back as a `bracket`
/// payload.
pub fn bracket_doc(b: &HydroBracket) -> Value {
    let tails: Vec<Value> = b
        .tails()
        .iter()
        .map(|t| json!({ "sign": t.sign.as_i64(), "weight": rational_doc(&t.weight), "affinor": matrix_doc(&t.affinor) }))
        .collect();
    json!({
        "metric": matrix_doc(b.metric()),
        "conn": Value::Array(b.conn().iter().map(|m| matrix_doc(m)).collect()),
        "tails": tails,
    })
}
