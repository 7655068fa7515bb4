//! Browser bindings for the interactive demo page.
//!
//! Three operations back the single-page demo in `www/`: spectra as a
//! function of Phi, spectra as a function of kappa, and the two
//! transition-threshold curves. Results come back as flat `Float64Array`
//! buffers so the JS side can plot them without JSON overhead:
//!
//! - spectra: records of 4 values `[x, re, im, class]` with class codes
//!   0 = zero, 1 = real, 2 = purely imaginary, 3 = genuinely complex;
//! - critical curves: records of 3 values `[phi, kappa_c, status]` with
//!   status codes 0 = ok, 1 = broken-at-zero, 2 = not found (kappa_c is
//!   meaningful only for status 0).
//!
//! The `*_impl` functions hold the logic and stay testable on any
//! target; `JsValue` only appears in the exported wrappers.

use ptchain::classify::EigClass;
use ptchain::model::{GainLossLayout, ModelParams};
use ptchain::sweep::{
    critical_curve, sweep_kappa, sweep_phi, SweepOptions, SweepTable, Threshold, TransitionKind,
};
use wasm_bindgen::prelude::*;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn params(
    layout: &str,
    n: usize,
    delta: f64,
    phi: f64,
    kappa: f64,
    epsilon: f64,
) -> Result<ModelParams, String> {
    let layout: GainLossLayout = layout.parse().map_err(|e| format!("{e}"))?;
    ModelParams::new(n, delta, phi, kappa, epsilon, layout).map_err(|e| format!("{e}"))
}

fn class_code(class: EigClass) -> f64 {
    match class {
        EigClass::Zero => 0.0,
        EigClass::Real => 1.0,
        EigClass::PurelyImaginary => 2.0,
        EigClass::GenuinelyComplex => 3.0,
    }
}

fn pack_table(table: &SweepTable) -> Result<Vec<f64>, String> {
    let mut out = Vec::with_capacity(table.rows.len() * table.base.n_sites * 4);
    for row in &table.rows {
        if !row.converged {
            return Err("eigensolver did not converge".to_string());
        }
        for (value, &class) in row.spectrum.values.iter().zip(row.spectrum.classes.iter()) {
            out.push(row.x);
            out.push(value.re);
            out.push(value.im);
            out.push(class_code(class));
        }
    }
    Ok(out)
}

pub fn spectrum_vs_phi_impl(
    layout: &str,
    n: usize,
    delta: f64,
    kappa: f64,
    epsilon: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    if points < 2 {
        return Err("need at least 2 grid points".to_string());
    }
    let base = params(layout, n, delta, 0.0, kappa, epsilon)?;
    let grid: Vec<f64> = (0..points).map(|i| TWO_PI * i as f64 / (points - 1) as f64).collect();
    let table =
        sweep_phi(&SweepOptions::default(), &base, &grid).map_err(|e| format!("{e}"))?;
    pack_table(&table)
}

pub fn spectrum_vs_kappa_impl(
    layout: &str,
    n: usize,
    delta: f64,
    phi: f64,
    epsilon: f64,
    kappa_max: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    if points < 2 {
        return Err("need at least 2 grid points".to_string());
    }
    if !(kappa_max > 0.0) {
        return Err("kappa_max must be positive".to_string());
    }
    let base = params(layout, n, delta, phi, 0.0, epsilon)?;
    let grid: Vec<f64> =
        (0..points).map(|i| kappa_max * i as f64 / (points - 1) as f64).collect();
    let table =
        sweep_kappa(&SweepOptions::default(), &base, &grid).map_err(|e| format!("{e}"))?;
    pack_table(&table)
}

pub fn critical_curve_impl(
    layout: &str,
    n: usize,
    delta: f64,
    which: u32,
    kappa_max: f64,
    points: usize,
    tol: f64,
) -> Result<Vec<f64>, String> {
    if points < 2 {
        return Err("need at least 2 grid points".to_string());
    }
    let kind = match which {
        0 => TransitionKind::First,
        1 => TransitionKind::Second,
        other => return Err(format!("unknown transition {other}")),
    };
    let base = params(layout, n, delta, 0.0, 0.0, 0.0)?;
    let grid: Vec<f64> = (0..points).map(|i| TWO_PI * i as f64 / (points - 1) as f64).collect();
    // Shorter coarse scan than the CLI default keeps the demo
    // interactive; tol is the bisection width.
    let opts = SweepOptions { coarse_points: 32, ..SweepOptions::default() };
    let curve =
        critical_curve(&opts, &base, &grid, kind, kappa_max, tol).map_err(|e| format!("{e}"))?;

    let mut out = Vec::with_capacity(points * 3);
    for (phi, entry) in curve.phi_grid.iter().zip(curve.entries.iter()) {
        let (kappa_c, status) = match entry.threshold {
            Threshold::Value(v) => (v, 0.0),
            Threshold::Zero => (0.0, 1.0),
            Threshold::NoneFound => (f64::NAN, 2.0),
        };
        out.push(*phi);
        out.push(kappa_c);
        out.push(status);
    }
    Ok(out)
}

/// Spectra on a `points`-point Phi grid over [0, 2*pi] at fixed kappa.
#[wasm_bindgen]
pub fn spectrum_vs_phi(
    layout: &str,
    n: usize,
    delta: f64,
    kappa: f64,
    epsilon: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    spectrum_vs_phi_impl(layout, n, delta, kappa, epsilon, points)
        .map_err(|e| JsValue::from_str(&e))
}

/// Spectra on a `points`-point kappa grid over [0, kappa_max] at fixed phi.
#[wasm_bindgen]
pub fn spectrum_vs_kappa(
    layout: &str,
    n: usize,
    delta: f64,
    phi: f64,
    epsilon: f64,
    kappa_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    spectrum_vs_kappa_impl(layout, n, delta, phi, epsilon, kappa_max, points)
        .map_err(|e| JsValue::from_str(&e))
}

/// First (`which = 0`) or second (`which = 1`) transition threshold over
/// a `points`-point Phi grid, bisected to width `tol`.
#[wasm_bindgen]
pub fn critical_curve_data(
    layout: &str,
    n: usize,
    delta: f64,
    which: u32,
    kappa_max: f64,
    points: usize,
    tol: f64,
) -> Result<Vec<f64>, JsValue> {
    critical_curve_impl(layout, n, delta, which, kappa_max, points, tol)
        .map_err(|e| JsValue::from_str(&e))
}
