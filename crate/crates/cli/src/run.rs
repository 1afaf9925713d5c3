//! Mode dispatch.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde_json::{json, Value};

use pencil_core::bracket::{check_poisson, classify_geometry, nondegenerate_points, Classification, HydroBracket};
use pencil_core::compat::{
    canonical_bracket, check_compatibility, check_integrability, check_special_liouville, CanonicalData,
    ConstantBracket,
};
use pencil_core::exactalg::fmt_rational;
use pencil_core::hierarchy::{casimir_momentum_involution, flow1, verify_bihamiltonian};
use pencil_core::simulator::{FieldState, Grid, SpectralModel};

use crate::error::CliError;
use crate::report::{bracket_doc, matrix_doc, poly_doc, poly_vec_doc, rational_doc, Report};
use crate::spec::{Mode, Payload, ProblemSpec, Simulation};

/// Where `simulate` writes its conservation series, if anywhere.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions<'a> {
    pub csv: Option<&'a Path>,
}

/// Runs `spec`; module errors end up in the report with status `error`.
pub fn run(spec: &ProblemSpec, opts: RunOptions<'_>) -> Report {
    let mut report = Report::new(Some(spec.mode.as_str()));
    if let Err(e) = dispatch(spec, opts, &mut report) {
        report.set_error(&e);
    }
    report
}

fn dispatch(spec: &ProblemSpec, opts: RunOptions<'_>, r: &mut Report) -> Result<(), CliError> {
    if opts.csv.is_some() && spec.mode != Mode::Simulate {
        log::warn!("--csv is only used by mode simulate");
    }
    match (&spec.payload, spec.mode) {
        (Payload::Bracket { bracket, .. }, Mode::CheckBracket) => check_bracket(bracket, spec, r),
        (Payload::Bracket { bracket, eta: Some(eta) }, Mode::CheckCompat) => {
            r.add_violations(&check_compatibility(eta, bracket)?);
            Ok(())
        }
        (Payload::Bracket { bracket, eta: Some(eta) }, Mode::Reconstruct) => reconstruct(bracket, eta, r),
        (Payload::Data(d), Mode::CheckIntegrability) => {
            r.add_violations(&check_integrability(d));
            Ok(())
        }
        (Payload::Data(d), Mode::BuildCanonical) => build_canonical(d, r),
        (Payload::Data(d), Mode::Flow) => flow(d, r),
        (Payload::Data(d), Mode::Involution) => involution(d, r),
        (Payload::Data(d), Mode::Simulate) => match &spec.simulation {
            Some(sim) => simulate(d, sim, opts.csv, r),
            None => Err(CliError::Schema { path: "$".into(), message: "missing `simulation`".into() }),
        },
        _ => Err(CliError::Schema { path: "$".into(), message: "payload does not match mode".into() }),
    }
}

fn classification_doc(c: &Classification) -> (Value, String) {
    match c {
        Classification::Flat => (json!({ "kind": "flat" }), "flat".into()),
        Classification::ConstantCurvature(k) => (
            json!({ "kind": "constant-curvature", "K": rational_doc(k) }),
            format!("constant curvature K = {}", fmt_rational(k)),
        ),
        Classification::General => (json!({ "kind": "general" }), "general".into()),
    }
}

fn check_bracket(b: &HydroBracket, spec: &ProblemSpec, r: &mut Report) -> Result<(), CliError> {
    r.add_violations(&check_poisson(b));
    let mut points = Vec::new();
    for pt in nondegenerate_points(b, spec.seed, spec.samples) {
        let geo = classify_geometry(b, &pt)?;
        let (doc, text) = classification_doc(&geo.classification);
        let coords: Vec<String> = pt.iter().map(fmt_rational).collect();
        r.summary.push(format!("at ({}): {text}, Levi-Civita {}", coords.join(", "), geo.levi_civita_holds()));
        points.push(json!({
            "point": coords,
            "classification": doc,
            "levi_civita": geo.levi_civita_holds(),
        }));
    }
    if points.is_empty() {
        r.summary.push("metric degenerate at every sampled point; geometry skipped".into());
    }
    r.artifact("local", json!(b.is_local()));
    r.artifact("geometry", Value::Array(points));
    Ok(())
}

fn build_canonical(d: &CanonicalData, r: &mut Report) -> Result<(), CliError> {
    r.add_violations(&check_integrability(d));
    let b = canonical_bracket(d);
    let n = d.nvars();
    for i in 0..n {
        for j in i..n {
            r.summary.push(format!("g[{i}][{j}] = {}", b.g(i, j)));
        }
    }
    r.artifact("bracket", bracket_doc(&b));
    Ok(())
}

fn reconstruct(b: &HydroBracket, eta: &ConstantBracket, r: &mut Report) -> Result<(), CliError> {
    let sl = check_special_liouville(b, eta)?;
    r.add_violations(&sl.report);
    r.artifact("holds", json!(sl.holds));
    if let Some(form) = &sl.form {
        let chain = &form.chain;
        for (i, f) in chain.f.iter().enumerate() {
            r.summary.push(format!("F[{i}] = {f}"));
        }
        for (a, p) in chain.psi.iter().enumerate() {
            r.summary.push(format!("psi[{a}] = {p} (sign {})", chain.signs[a].as_i64()));
        }
        r.artifact("f", poly_vec_doc(&chain.f));
        r.artifact("psi", poly_vec_doc(&chain.psi));
        r.artifact("signs", json!(chain.signs.iter().map(|s| s.as_i64()).collect::<Vec<_>>()));
        r.artifact("phi_matrix", matrix_doc(&form.phi_matrix));
        r.artifact("phi", Value::Array(form.phi.iter().map(|p| poly_vec_doc(p)).collect()));
    }
    Ok(())
}

fn flow(d: &CanonicalData, r: &mut Report) -> Result<(), CliError> {
    let fs = flow1(d)?;
    r.add_violations(&verify_bihamiltonian(d, &fs));
    for (i, v) in fs.flux.iter().enumerate() {
        r.summary.push(format!("V[{i}] = {v}"));
    }
    r.summary.push(format!("h1 = {}", fs.h1_density));
    r.summary.push(format!("h2 = {}", fs.h2_density));
    r.artifact("flux", poly_vec_doc(&fs.flux));
    r.artifact("char_matrix", matrix_doc(&fs.char_matrix));
    r.artifact("h1", poly_doc(&fs.h1_density));
    r.artifact("h2", poly_doc(&fs.h2_density));
    Ok(())
}

fn involution(d: &CanonicalData, r: &mut Report) -> Result<(), CliError> {
    r.add_violations(&casimir_momentum_involution(d)?);
    let mut names: Vec<String> = (1..=d.nvars()).map(|i| format!("U{i}")).collect();
    names.push("H1".into());
    r.artifact("functionals", json!(names));
    Ok(())
}

fn simulate(d: &CanonicalData, sim: &Simulation, csv: Option<&Path>, r: &mut Report) -> Result<(), CliError> {
    let grid = Grid::new(sim.grid_points)?;
    let model = SpectralModel::new(d, grid.clone())?;
    let u0 = FieldState::new(sim.initial.iter().map(|s| s.sample(&grid)).collect(), 0.0);
    let traj = model.integrate(sim.flow, &u0, sim.dt, sim.steps)?;
    let series = &traj.conservation;

    let mut drifts = serde_json::Map::new();
    for (f, name) in series.names.iter().enumerate() {
        let drift = series.relative_drift(f);
        drifts.insert(name.clone(), json!(drift));
        r.summary.push(format!("{name}: relative drift {drift:.3e}"));
        if drift.is_nan() || drift > sim.drift_tolerance {
            r.add_violation("drift", vec![f], format!("{drift:e}"));
        }
    }
    r.artifact("final_time", json!(traj.last().time));
    r.artifact("drift", Value::Object(drifts));
    r.artifact("drift_tolerance", json!(sim.drift_tolerance));

    if let Some(path) = csv {
        let io = |e: std::io::Error| CliError::Io { path: path.display().to_string(), source: e };
        let file = File::create(path).map_err(io)?;
        series.write_csv(BufWriter::new(file))?;
        r.summary.push(format!("conservation series written to {}", path.display()));
    }
    Ok(())
}
