//! Parameter sweeps and transition thresholds.
//!
//! Spectra are tabulated over Phi or kappa grids, and the two
//! symmetry-breaking events are located in kappa at fixed Phi:
//!
//! - first transition: the phase label flips from unbroken to broken
//!   (some eigenvalue leaves the real axis);
//! - second transition: every genuinely complex quartet has collapsed
//!   onto the imaginary axis (complex count returns to zero while the
//!   purely imaginary count is positive).
//!
//! Thresholds are found by a coarse scan (64 points by default) that
//! brackets the first sign change of the predicate, followed by
//! bisection down to the requested width. The scan also counts extra
//! sign changes so a non-monotone predicate is at least reported.
//!
//! All predicates run on classifier counts; the classification
//! tolerance is configurable through [`SweepOptions`].

use crate::classify::{classify_spectrum, default_tol, ClassifyError, Phase, Spectrum};
use crate::eigen::eigenvalues;
use crate::model::{build_hamiltonian, ModelError, ModelParams};
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SweepError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("bracket tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("kappa_max must exceed the bracket tolerance, got {0}")]
    KappaMaxTooSmall(f64),
    #[error("odd-chain events need an odd number of sites, got {0}")]
    EvenSites(usize),
    #[error("eigensolver failed to converge at phi={phi}, kappa={kappa}")]
    NonConvergence { phi: f64, kappa: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Which parameter a [`SweepTable`] varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepAxis {
    Phi,
    Kappa,
}

/// One grid point of a sweep: the classified spectrum and whether the
/// eigensolver converged there.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub x: f64,
    pub spectrum: Spectrum,
    pub converged: bool,
}

/// Spectra tabulated over a strictly increasing grid.
#[derive(Clone, Debug)]
pub struct SweepTable {
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    pub rows: Vec<SweepRow>,
    pub base: ModelParams,
}

impl SweepTable {
    /// True when every row converged.
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }
}

/// Outcome of a threshold search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    /// Bracketed transition at this kappa (bracket in the diagnostics).
    Value(f64),
    /// The predicate already held at the smallest probe kappa = tol.
    Zero,
    /// The predicate never became true within [0, kappa_max].
    NoneFound,
}

impl Threshold {
    /// Stable status word used in CSV output.
    pub fn status(&self) -> &'static str {
        match self {
            Threshold::Value(_) => "ok",
            Threshold::Zero => "zero",
            Threshold::NoneFound => "none",
        }
    }
}

/// Scan bookkeeping carried alongside every threshold.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ScanDiagnostics {
    /// Number of coarse scan points evaluated.
    pub coarse_points: usize,
    /// Predicate flips seen along the coarse scan; more than one means
    /// the predicate is not monotone and only the first bracket was
    /// refined.
    pub sign_changes: usize,
    /// Final bisection bracket (lo, hi) for a finite threshold.
    pub bracket: Option<(f64, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionResult {
    pub threshold: Threshold,
    pub diagnostics: ScanDiagnostics,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionKind {
    First,
    Second,
}

/// Thresholds assembled over a Phi grid.
#[derive(Clone, Debug)]
pub struct CriticalCurve {
    pub which: TransitionKind,
    pub phi_grid: Vec<f64>,
    pub entries: Vec<TransitionResult>,
    pub bracket_tol: f64,
}

/// Events specific to odd chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddEventKind {
    /// At a phase boundary point: a +-ib pair joins the persistent zero
    /// mode (purely imaginary count reaches 2 with the zero mode intact).
    BoundaryPair,
    /// Elsewhere: the purely imaginary count rises from 1 to 3 when a
    /// -conj partner pair collides on the imaginary axis.
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OddEvent {
    pub kind: OddEventKind,
    pub result: TransitionResult,
}

/// Classification tolerance policy for sweep predicates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClassifyTol {
    /// Scale-aware default from [`classify::default_tol`](crate::classify::default_tol).
    Auto,
    /// Fixed absolute tolerance.
    Fixed(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    pub classify_tol: ClassifyTol,
    /// Points in the coarse bracketing scan.
    pub coarse_points: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { classify_tol: ClassifyTol::Auto, coarse_points: 64 }
    }
}

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Solve and classify one (phi, kappa) point of the base model.
fn spectrum_at(
    opts: &SweepOptions,
    base: &ModelParams,
    phi: f64,
    kappa: f64,
) -> Result<(Spectrum, bool), SweepError> {
    let params = ModelParams { phi, kappa, ..*base };
    let h = build_hamiltonian(&params)?;
    let report = eigenvalues(&h);
    let tol = match opts.classify_tol {
        ClassifyTol::Auto => default_tol(&report.values),
        ClassifyTol::Fixed(t) => t,
    };
    let spectrum = classify_spectrum(&report.values, tol)?;
    Ok((spectrum, report.converged))
}

fn spectrum_or_fail(
    opts: &SweepOptions,
    base: &ModelParams,
    phi: f64,
    kappa: f64,
) -> Result<Spectrum, SweepError> {
    let (spectrum, converged) = spectrum_at(opts, base, phi, kappa)?;
    if !converged {
        return Err(SweepError::NonConvergence { phi, kappa });
    }
    Ok(spectrum)
}

fn check_grid(grid: &[f64], lo: f64, hi: f64, what: &str) -> Result<(), SweepError> {
    if grid.is_empty() {
        return Err(SweepError::InvalidGrid(format!("{what} grid is empty")));
    }
    for w in grid.windows(2) {
        if !(w[0] < w[1]) {
            return Err(SweepError::InvalidGrid(format!(
                "{what} grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    for &x in grid {
        if !x.is_finite() || x < lo || x > hi {
            return Err(SweepError::InvalidGrid(format!(
                "{what} grid point {x} outside [{lo}, {hi}]"
            )));
        }
    }
    Ok(())
}

fn collect_rows<F>(grid: &[f64], eval: F) -> Result<Vec<SweepRow>, SweepError>
where
    F: Fn(f64) -> Result<SweepRow, SweepError> + Sync,
{
    #[cfg(feature = "parallel")]
    let results: Vec<Result<SweepRow, SweepError>> = grid.par_iter().map(|&x| eval(x)).collect();
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<SweepRow, SweepError>> = grid.iter().map(|&x| eval(x)).collect();

    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }
    Ok(rows)
}

/// Tabulate spectra over a Phi grid at the base model's fixed kappa.
/// Rows come back in grid order regardless of the worker count, and a
/// non-converged eigensolve only flags its own row.
pub fn sweep_phi(
    opts: &SweepOptions,
    base: &ModelParams,
    grid: &[f64],
) -> Result<SweepTable, SweepError> {
    base.validate()?;
    check_grid(grid, 0.0, TWO_PI, "phi")?;
    let rows = collect_rows(grid, |phi| {
        let (spectrum, converged) = spectrum_at(opts, base, phi, base.kappa)?;
        Ok(SweepRow { x: phi, spectrum, converged })
    })?;
    Ok(SweepTable { axis: SweepAxis::Phi, grid: grid.to_vec(), rows, base: *base })
}

/// Tabulate spectra over a kappa grid at the base model's fixed Phi.
pub fn sweep_kappa(
    opts: &SweepOptions,
    base: &ModelParams,
    grid: &[f64],
) -> Result<SweepTable, SweepError> {
    base.validate()?;
    check_grid(grid, 0.0, f64::INFINITY, "kappa")?;
    let rows = collect_rows(grid, |kappa| {
        let (spectrum, converged) = spectrum_at(opts, base, base.phi, kappa)?;
        Ok(SweepRow { x: kappa, spectrum, converged })
    })?;
    Ok(SweepTable { axis: SweepAxis::Kappa, grid: grid.to_vec(), rows, base: *base })
}

/// Generic scan-and-bisect driver over kappa in (0, kappa_max].
///
/// `pred` must be false below the sought threshold and true above it in
/// a neighborhood; extra coarse-scan flips are reported in the
/// diagnostics while the first bracket is the one refined.
fn locate_threshold<P>(
    opts: &SweepOptions,
    kappa_max: f64,
    tol: f64,
    mut pred: P,
) -> Result<TransitionResult, SweepError>
where
    P: FnMut(f64) -> Result<bool, SweepError>,
{
    if !(tol > 0.0) {
        return Err(SweepError::NonPositiveTolerance(tol));
    }
    if !(kappa_max > tol) {
        return Err(SweepError::KappaMaxTooSmall(kappa_max));
    }

    // Smallest probe: broken already means a zero threshold.
    if pred(tol)? {
        return Ok(TransitionResult {
            threshold: Threshold::Zero,
            diagnostics: ScanDiagnostics { coarse_points: 1, sign_changes: 1, bracket: None },
        });
    }

    let p = opts.coarse_points.max(2);
    let mut flags = Vec::with_capacity(p);
    for i in 1..=p {
        let kappa = kappa_max * i as f64 / p as f64;
        flags.push((kappa, pred(kappa)?));
    }

    let mut sign_changes = 0usize;
    let mut prev = false;
    for &(_, f) in &flags {
        if f != prev {
            sign_changes += 1;
            prev = f;
        }
    }

    let first_true = flags.iter().position(|&(_, f)| f);
    let Some(idx) = first_true else {
        return Ok(TransitionResult {
            threshold: Threshold::NoneFound,
            diagnostics: ScanDiagnostics { coarse_points: p + 1, sign_changes, bracket: None },
        });
    };

    let mut lo = if idx == 0 { tol } else { flags[idx - 1].0 };
    let mut hi = flags[idx].0;
    let mut guard = 0;
    while hi - lo > 0.5 * tol {
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        guard += 1;
        if guard > 200 {
            break;
        }
    }

    Ok(TransitionResult {
        threshold: Threshold::Value(0.5 * (lo + hi)),
        diagnostics: ScanDiagnostics { coarse_points: p + 1, sign_changes, bracket: Some((lo, hi)) },
    })
}

/// Smallest kappa in [0, kappa_max] at which the spectrum's phase turns
/// broken, to bracket width `tol`. Returns [`Threshold::Zero`] when the
/// phase is already broken at kappa = tol and [`Threshold::NoneFound`]
/// when it never breaks.
pub fn first_transition(
    opts: &SweepOptions,
    base: &ModelParams,
    phi: f64,
    kappa_max: f64,
    tol: f64,
) -> Result<TransitionResult, SweepError> {
    base.validate()?;
    locate_threshold(opts, kappa_max, tol, |kappa| {
        Ok(spectrum_or_fail(opts, base, phi, kappa)?.phase == Phase::Broken)
    })
}

/// Smallest kappa beyond the first transition at which the genuinely
/// complex count returns to zero while the purely imaginary count is
/// positive (quartets collapsed onto the imaginary axis). NoneFound when
/// quartets never appear, or never collapse, within [0, kappa_max].
pub fn second_transition(
    opts: &SweepOptions,
    base: &ModelParams,
    phi: f64,
    kappa_max: f64,
    tol: f64,
) -> Result<TransitionResult, SweepError> {
    base.validate()?;
    if !(tol > 0.0) {
        return Err(SweepError::NonPositiveTolerance(tol));
    }
    if !(kappa_max > tol) {
        return Err(SweepError::KappaMaxTooSmall(kappa_max));
    }

    let collapsed = |s: &Spectrum| s.counts.complex == 0 && s.counts.imaginary > 0;

    let p = opts.coarse_points.max(2);
    let mut rows = Vec::with_capacity(p);
    for i in 1..=p {
        let kappa = kappa_max * i as f64 / p as f64;
        let s = spectrum_or_fail(opts, base, phi, kappa)?;
        rows.push((kappa, s.counts.complex > 0, collapsed(&s)));
    }

    let mut sign_changes = 0usize;
    let mut prev = false;
    for &(_, _, f) in &rows {
        if f != prev {
            sign_changes += 1;
            prev = f;
        }
    }
    let diagnostics = |bracket| ScanDiagnostics { coarse_points: p, sign_changes, bracket };

    // Quartets must show up before their collapse can mean anything.
    let Some(onset) = rows.iter().position(|&(_, quartet, _)| quartet) else {
        return Ok(TransitionResult { threshold: Threshold::NoneFound, diagnostics: diagnostics(None) });
    };
    let Some(idx) = (onset..rows.len()).find(|&i| rows[i].2) else {
        return Ok(TransitionResult { threshold: Threshold::NoneFound, diagnostics: diagnostics(None) });
    };
    debug_assert!(idx > 0, "collapse cannot precede the quartet onset");

    let mut lo = rows[idx - 1].0;
    let mut hi = rows[idx].0;
    let mut guard = 0;
    while hi - lo > 0.5 * tol {
        let mid = 0.5 * (lo + hi);
        if collapsed(&spectrum_or_fail(opts, base, phi, mid)?) {
            hi = mid;
        } else {
            lo = mid;
        }
        guard += 1;
        if guard > 200 {
            break;
        }
    }

    Ok(TransitionResult {
        threshold: Threshold::Value(0.5 * (lo + hi)),
        diagnostics: diagnostics(Some((lo, hi))),
    })
}

/// Per-Phi thresholds over a grid; rows are independent and returned in
/// grid order.
pub fn critical_curve(
    opts: &SweepOptions,
    base: &ModelParams,
    phi_grid: &[f64],
    which: TransitionKind,
    kappa_max: f64,
    tol: f64,
) -> Result<CriticalCurve, SweepError> {
    base.validate()?;
    check_grid(phi_grid, 0.0, TWO_PI, "phi")?;

    let eval = |phi: f64| match which {
        TransitionKind::First => first_transition(opts, base, phi, kappa_max, tol),
        TransitionKind::Second => second_transition(opts, base, phi, kappa_max, tol),
    };

    #[cfg(feature = "parallel")]
    let results: Vec<Result<TransitionResult, SweepError>> =
        phi_grid.par_iter().map(|&phi| eval(phi)).collect();
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<TransitionResult, SweepError>> =
        phi_grid.iter().map(|&phi| eval(phi)).collect();

    let mut entries = Vec::with_capacity(results.len());
    for r in results {
        entries.push(r?);
    }
    Ok(CriticalCurve { which, phi_grid: phi_grid.to_vec(), entries, bracket_tol: tol })
}

/// Whether phi sits on a phase boundary (cos(phi) = 0 to roundoff), where
/// the couplings are uniform and the odd chain keeps an exact zero mode.
fn at_phase_boundary(phi: f64) -> bool {
    phi.cos().abs() < 1e-12
}

/// Threshold events for an odd chain at fixed phi.
///
/// At a phase boundary point the event is the appearance of a purely
/// imaginary +-ib pair alongside the persistent zero mode; elsewhere it
/// is the split where the purely imaginary count first rises from 1
/// to 3. Exactly one event is searched for within [0, kappa_max].
pub fn odd_chain_events(
    opts: &SweepOptions,
    base: &ModelParams,
    phi: f64,
    kappa_max: f64,
    tol: f64,
) -> Result<Vec<OddEvent>, SweepError> {
    base.validate()?;
    if base.n_sites % 2 == 0 {
        return Err(SweepError::EvenSites(base.n_sites));
    }

    let (kind, result) = if at_phase_boundary(phi) {
        let r = locate_threshold(opts, kappa_max, tol, |kappa| {
            let s = spectrum_or_fail(opts, base, phi, kappa)?;
            Ok(s.counts.imaginary >= 2 && s.counts.zero >= 1)
        })?;
        (OddEventKind::BoundaryPair, r)
    } else {
        let r = locate_threshold(opts, kappa_max, tol, |kappa| {
            let s = spectrum_or_fail(opts, base, phi, kappa)?;
            Ok(s.counts.imaginary >= 3)
        })?;
        (OddEventKind::Split, r)
    };
    Ok(vec![OddEvent { kind, result }])
}
