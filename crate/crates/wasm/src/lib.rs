//! Browser bindings for the demo page in `www/`.
//!
//! Every exported function has a plain Rust twin (`*_text`) returning `Result<String, String>`,
//! so the logic can be exercised natively.

use std::fmt::Write as _;

use dimspec::generators::{gen_interval, gen_sequence, SequenceFamily};
use dimspec::io::{sweep_to_csv, SweepRow};
use dimspec::{Estimator, FiniteApprox, OracleCurve, ScaleSchedule, SpectrumKind, ThetaGrid};
use wasm_bindgen::prelude::*;

/// Largest sample the page will build; keeps the tab responsive.
pub const MAX_DEMO_POINTS: u64 = 2_000_000;

fn family(name: &str, param: f64) -> Result<Option<SequenceFamily>, String> {
    match name {
        "power" => Ok(Some(SequenceFamily::Power { lambda: param })),
        "exponential" => Ok(Some(SequenceFamily::Exponential { c: param })),
        "exp_sqrt" => Ok(Some(SequenceFamily::ExpSqrt)),
        "interval" => Ok(None),
        other => Err(format!("unknown family `{other}`")),
    }
}

fn sample(name: &str, param: f64, delta: f64) -> Result<FiniteApprox, String> {
    match family(name, param)? {
        Some(fam) => {
            if !(delta > 0.0 && delta < 1.0) {
                return Err("delta must lie in (0,1)".into());
            }
            let n = fam.n_max(delta);
            if n > MAX_DEMO_POINTS {
                return Err(format!("{n} points is too many for the demo (limit {MAX_DEMO_POINTS})"));
            }
            gen_sequence(fam, delta).map_err(|e| e.to_string())
        }
        None => {
            if delta < 1.0 / MAX_DEMO_POINTS as f64 {
                return Err(format!("delta below {:e} is too fine for the demo", 1.0 / MAX_DEMO_POINTS as f64));
            }
            gen_interval(delta).map_err(|e| e.to_string())
        }
    }
}

/// One-line JSON summary of a sample: size, diameter and box/Assouad estimates.
pub fn describe_text(name: &str, param: f64, delta: f64) -> Result<String, String> {
    let f = sample(name, param, delta)?;
    let sched = ScaleSchedule::default_for(&f);
    let est = Estimator::new(&f).map_err(|e| e.to_string())?;
    let num = |r: dimspec::Result<dimspec::DimensionEstimate>| match r {
        Ok(e) => format!("{}", e.value),
        Err(_) => "null".to_string(),
    };
    Ok(format!(
        "{{\"points\":{},\"diameter\":{},\"upper_box\":{},\"assouad_dim\":{}}}",
        f.len(),
        f.diameter(),
        num(est.upper_box_dim(&sched)),
        num(est.assouad_dim_estimate(&sched)),
    ))
}

/// Spectrum sweep as CSV, rows ordered by theta. Inadmissible thetas are left out.
pub fn sweep_text(name: &str, param: f64, delta: f64, start: f64, stop: f64, step: f64) -> Result<String, String> {
    let f = sample(name, param, delta)?;
    let grid = ThetaGrid::range(start, stop, step).map_err(|e| e.to_string())?;
    let sched = ScaleSchedule::default_for(&f);
    let est = Estimator::new(&f).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for &t in grid.thetas() {
        for kind in [SpectrumKind::Assouad, SpectrumKind::Lower] {
            if let Ok(e) = est.spectrum_at(t, &sched, kind) {
                rows.push(SweepRow::from(&e));
            }
        }
    }
    if rows.is_empty() {
        return Err("no theta had enough admissible scales; try a smaller delta".into());
    }
    Ok(sweep_to_csv(&rows))
}

/// Closed-form Assouad spectrum of the sequence family as `theta,value` CSV.
pub fn oracle_text(name: &str, param: f64, start: f64, stop: f64, step: f64) -> Result<String, String> {
    let curve = match family(name, param)? {
        Some(SequenceFamily::Power { lambda }) => OracleCurve::FLambda { lambda },
        Some(_) => OracleCurve::Sequence { b: 0.0 },
        None => OracleCurve::Constant { v: 1.0 },
    };
    let grid = ThetaGrid::range(start, stop, step).map_err(|e| e.to_string())?;
    let mut out = String::from("theta,value\n");
    for &t in grid.thetas() {
        let v = curve.assouad(t).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "{t},{v}");
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn describe(family: &str, param: f64, delta: f64) -> Result<String, JsError> {
    describe_text(family, param, delta).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sweep(family: &str, param: f64, delta: f64, start: f64, stop: f64, step: f64) -> Result<String, JsError> {
    sweep_text(family, param, delta, start, stop, step).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn oracle(family: &str, param: f64, start: f64, stop: f64, step: f64) -> Result<String, JsError> {
    oracle_text(family, param, start, stop, step).map_err(|e| JsError::new(&e))
}
