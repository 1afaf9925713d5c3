//! JSON problem specifications and their validation.

use serde::Deserialize;
use serde_json::Value;

use pencil_core::bracket::{HydroBracket, PolyMatrix, Sign, Tail};
use pencil_core::compat::{CanonicalData, ConstantBracket};
use pencil_core::exactalg::{determinant, int, parse_rational, Poly, Rational};
use pencil_core::simulator::FourierSeries;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    CheckBracket,
    CheckCompat,
    CheckIntegrability,
    BuildCanonical,
    Reconstruct,
    Flow,
    Simulate,
    Involution,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::CheckBracket => "check-bracket",
            Mode::CheckCompat => "check-compat",
            Mode::CheckIntegrability => "check-integrability",
            Mode::BuildCanonical => "build-canonical",
            Mode::Reconstruct => "reconstruct",
            Mode::Flow => "flow",
            Mode::Simulate => "simulate",
            Mode::Involution => "involution",
        }
    }

    fn wants_bracket(self) -> bool {
        matches!(self, Mode::CheckBracket | Mode::CheckCompat | Mode::Reconstruct)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coeff: Value,
    exps: Vec<u32>,
}

type PolyDoc = Vec<TermDoc>;
type MatrixDoc = Vec<Vec<PolyDoc>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DataDoc {
    eta: Vec<Vec<Value>>,
    f: Vec<PolyDoc>,
    #[serde(default)]
    psi: Vec<PolyDoc>,
    #[serde(default)]
    signs: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TailDoc {
    sign: i64,
    #[serde(default)]
    weight: Option<Value>,
    affinor: MatrixDoc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketDoc {
    metric: MatrixDoc,
    conn: Vec<MatrixDoc>,
    #[serde(default)]
    tails: Vec<TailDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FourierDoc {
    #[serde(default)]
    mean: f64,
    #[serde(default)]
    cos: Vec<f64>,
    #[serde(default)]
    sin: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulationDoc {
    grid_points: usize,
    dt: f64,
    steps: usize,
    #[serde(default = "default_flow")]
    flow: usize,
    initial: Vec<FourierDoc>,
    #[serde(default = "default_drift_tolerance")]
    drift_tolerance: f64,
}

fn default_flow() -> usize {
    1
}

fn default_drift_tolerance() -> f64 {
    1e-8
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    mode: Mode,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    samples: Option<usize>,
    #[serde(default)]
    data: Option<DataDoc>,
    #[serde(default)]
    bracket: Option<BracketDoc>,
    #[serde(default)]
    eta: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    simulation: Option<SimulationDoc>,
}

#[derive(Debug, Clone)]
pub enum Payload {
    Data(CanonicalData),
    Bracket { bracket: HydroBracket, eta: Option<ConstantBracket> },
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub grid_points: usize,
    pub dt: f64,
    pub steps: usize,
    pub flow: usize,
    pub initial: Vec<FourierSeries>,
    pub drift_tolerance: f64,
}

/// A validated problem specification.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub mode: Mode,
    pub payload: Payload,
    pub simulation: Option<Simulation>,
    /// Seed of the sample-point stream used by geometry checks.
    pub seed: u64,
    /// Number of sample points for geometry checks.
    pub samples: usize,
}

impl ProblemSpec {
    pub fn data(&self) -> Option<&CanonicalData> {
        match &self.payload {
            Payload::Data(d) => Some(d),
            Payload::Bracket { .. } => None,
        }
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema { path: path.into(), message: message.into() }
}

pub fn parse_spec(text: &str) -> Result<ProblemSpec, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: SpecDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        match inner.classify() {
            serde_json::error::Category::Data => schema(path, inner.to_string()),
            _ => CliError::Json(inner.to_string()),
        }
    })?;
    validate(doc)
}

fn validate(doc: SpecDoc) -> Result<ProblemSpec, CliError> {
    let mode = doc.mode;
    let payload = match (doc.data, doc.bracket) {
        (Some(_), Some(_)) => return Err(schema("$", "give either `data` or `bracket`, not both")),
        (None, None) => {
            let want = if mode.wants_bracket() { "bracket" } else { "data" };
            return Err(schema("$", format!("mode {} needs `{want}`", mode.as_str())));
        }
        (Some(d), None) => {
            if mode.wants_bracket() {
                return Err(schema("data", format!("mode {} takes `bracket`, not `data`", mode.as_str())));
            }
            if doc.eta.is_some() {
                return Err(schema("eta", "top-level `eta` is only used with `bracket`; put it in `data`"));
            }
            Payload::Data(canonical_data(d)?)
        }
        (None, Some(b)) => {
            if !mode.wants_bracket() {
                return Err(schema("bracket", format!("mode {} takes `data`, not `bracket`", mode.as_str())));
            }
            let bracket = hydro_bracket(b)?;
            let eta = doc.eta.map(|e| constant_bracket(&e, "eta")).transpose()?;
            if let Some(eta) = &eta {
                if eta.nvars() != bracket.nvars() {
                    return Err(schema(
                        "eta",
                        format!("eta is {0}x{0} but the bracket has {1} fields", eta.nvars(), bracket.nvars()),
                    ));
                }
            }
            if eta.is_none() && mode != Mode::CheckBracket {
                return Err(schema("$", format!("mode {} needs `eta`", mode.as_str())));
            }
            Payload::Bracket { bracket, eta }
        }
    };

    let simulation = match (mode, doc.simulation) {
        (Mode::Simulate, Some(s)) => {
            let n = match &payload {
                Payload::Data(d) => d.nvars(),
                Payload::Bracket { bracket, .. } => bracket.nvars(),
            };
            Some(simulation(s, n)?)
        }
        (Mode::Simulate, None) => return Err(schema("$", "mode simulate needs `simulation`")),
        (_, Some(_)) => return Err(schema("simulation", "only used by mode simulate")),
        (_, None) => None,
    };

    Ok(ProblemSpec { mode, payload, simulation, seed: doc.seed.unwrap_or(0), samples: doc.samples.unwrap_or(5) })
}

fn rational(v: &Value, path: &str) -> Result<Rational, CliError> {
    let bad = || schema(path, format!("expected an integer or a \"p/q\" string, got {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(int).ok_or_else(bad),
        Value::String(s) => parse_rational(s).ok_or_else(bad),
        _ => Err(bad()),
    }
}

fn poly(doc: &[TermDoc], n: usize, path: &str) -> Result<Poly, CliError> {
    let mut terms = Vec::with_capacity(doc.len());
    for (t, term) in doc.iter().enumerate() {
        let c = rational(&term.coeff, &format!("{path}[{t}].coeff"))?;
        if term.exps.len() != n {
            return Err(schema(
                format!("{path}[{t}].exps"),
                format!("expected {n} exponents, got {}", term.exps.len()),
            ));
        }
        terms.push((c, term.exps.clone()));
    }
    Ok(Poly::from_terms(n, terms)?)
}

fn check_len(len: usize, n: usize, path: &str, what: &str) -> Result<(), CliError> {
    if len == n {
        Ok(())
    } else {
        Err(schema(path, format!("expected {n} {what}, got {len}")))
    }
}

fn matrix(doc: &MatrixDoc, n: usize, path: &str) -> Result<PolyMatrix, CliError> {
    check_len(doc.len(), n, path, "rows")?;
    doc.iter()
        .enumerate()
        .map(|(i, row)| {
            let rp = format!("{path}[{i}]");
            check_len(row.len(), n, &rp, "entries")?;
            row.iter().enumerate().map(|(j, p)| poly(p, n, &format!("{rp}[{j}]"))).collect()
        })
        .collect()
}

fn sign(s: i64, path: &str) -> Result<Sign, CliError> {
    Sign::from_i64(s).ok_or_else(|| schema(path, format!("sign must be 1 or -1, got {s}")))
}

/// Parses `η` and rejects non-symmetric or singular matrices.
fn constant_bracket(doc: &[Vec<Value>], path: &str) -> Result<ConstantBracket, CliError> {
    let n = doc.len();
    if n == 0 {
        return Err(schema(path, "eta is empty"));
    }
    let mut m = Vec::with_capacity(n);
    for (i, row) in doc.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        check_len(row.len(), n, &rp, "entries")?;
        m.push(row.iter().enumerate().map(|(j, v)| rational(v, &format!("{rp}[{j}]"))).collect::<Result<Vec<_>, _>>()?);
    }
    if let Some((i, j)) = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| m[i][j] != m[j][i]) {
        return Err(CliError::NonSymmetricEta { path: path.into(), i, j });
    }
    if determinant(&m) == int(0) {
        return Err(CliError::SingularEta { path: path.into() });
    }
    Ok(ConstantBracket::new(m)?)
}

fn canonical_data(d: DataDoc) -> Result<CanonicalData, CliError> {
    let eta = constant_bracket(&d.eta, "data.eta")?;
    let n = eta.nvars();
    check_len(d.f.len(), n, "data.f", "potentials")?;
    let f = d.f.iter().enumerate().map(|(i, p)| poly(p, n, &format!("data.f[{i}]"))).collect::<Result<_, _>>()?;
    check_len(d.signs.len(), d.psi.len(), "data.signs", "signs (one per psi)")?;
    let psi = d.psi.iter().enumerate().map(|(a, p)| poly(p, n, &format!("data.psi[{a}]"))).collect::<Result<_, _>>()?;
    let signs =
        d.signs.iter().enumerate().map(|(a, s)| sign(*s, &format!("data.signs[{a}]"))).collect::<Result<_, _>>()?;
    Ok(CanonicalData::new(eta, f, psi, signs)?)
}

fn hydro_bracket(b: BracketDoc) -> Result<HydroBracket, CliError> {
    let n = b.metric.len();
    if n == 0 {
        return Err(schema("bracket.metric", "metric is empty"));
    }
    let metric = matrix(&b.metric, n, "bracket.metric")?;
    check_len(b.conn.len(), n, "bracket.conn", "matrices")?;
    let conn = b
        .conn
        .iter()
        .enumerate()
        .map(|(i, m)| matrix(m, n, &format!("bracket.conn[{i}]")))
        .collect::<Result<_, _>>()?;
    let mut tails = Vec::with_capacity(b.tails.len());
    for (a, t) in b.tails.iter().enumerate() {
        let path = format!("bracket.tails[{a}]");
        let mut tail =
            Tail::new(sign(t.sign, &format!("{path}.sign"))?, matrix(&t.affinor, n, &format!("{path}.affinor"))?);
        if let Some(w) = &t.weight {
            let wp = format!("{path}.weight");
            tail.weight = rational(w, &wp)?;
            if tail.weight <= int(0) {
                return Err(schema(wp, "weight must be positive"));
            }
        }
        tails.push(tail);
    }
    Ok(HydroBracket::new(metric, conn, tails)?)
}

fn simulation(s: SimulationDoc, n: usize) -> Result<Simulation, CliError> {
    check_len(s.initial.len(), n, "simulation.initial", "components")?;
    if !(s.dt.is_finite() && s.dt > 0.0) {
        return Err(schema("simulation.dt", "must be positive"));
    }
    if s.flow == 0 {
        return Err(schema("simulation.flow", "flows are numbered from 1"));
    }
    if !(s.drift_tolerance.is_finite() && s.drift_tolerance > 0.0) {
        return Err(schema("simulation.drift_tolerance", "must be positive"));
    }
    let initial = s.initial.into_iter().map(|c| FourierSeries { mean: c.mean, cos: c.cos, sin: c.sin }).collect();
    Ok(Simulation {
        grid_points: s.grid_points,
        dt: s.dt,
        steps: s.steps,
        flow: s.flow,
        initial,
        drift_tolerance: s.drift_tolerance,
    })
}
