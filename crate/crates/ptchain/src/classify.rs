//! Turn raw spectra into phase vocabulary: real / purely imaginary /
//! genuinely complex eigenvalues, conjugate pairs and quartets, the
//! unbroken-vs-broken phase label, and zero-mode counts.

use crate::eigen::{cmp_canonical, sort_canonical};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("classification tolerance must be positive, got {0}")]
    NonPositiveTol(f64),
    #[error("zero-mode tolerance must be positive, got {0}")]
    NonPositiveZeroTol(f64),
}

/// Class of a single eigenvalue against a tolerance `tau`:
/// `Zero` when both parts are within `tau`, `Real`/`PurelyImaginary`
/// when only one is, `GenuinelyComplex` otherwise. The four classes are
/// mutually exclusive and exhaustive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigClass {
    Zero,
    Real,
    PurelyImaginary,
    GenuinelyComplex,
}

impl EigClass {
    pub fn of(value: Complex64, tol: f64) -> EigClass {
        let re_small = value.re.abs() <= tol;
        let im_small = value.im.abs() <= tol;
        match (re_small, im_small) {
            (true, true) => EigClass::Zero,
            (false, true) => EigClass::Real,
            (true, false) => EigClass::PurelyImaginary,
            (false, false) => EigClass::GenuinelyComplex,
        }
    }

    /// Stable lowercase name used in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            EigClass::Zero => "zero",
            EigClass::Real => "real",
            EigClass::PurelyImaginary => "imaginary",
            EigClass::GenuinelyComplex => "complex",
        }
    }
}

/// Whether every eigenvalue is real within tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Unbroken,
    Broken,
}

/// Per-class tallies; the four counts always sum to the dimension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub zero: usize,
    pub real: usize,
    pub imaginary: usize,
    pub complex: usize,
}

/// A classified spectrum: values in canonical (re, im) order, one class
/// per value, the tolerance used, the induced phase label, and counts.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
    pub classes: Vec<EigClass>,
    pub tol: f64,
    pub phase: Phase,
    pub counts: ClassCounts,
}

/// Default classification tolerance: `1e-7 * (1 + spectral radius)`.
///
/// Absolute but scale-aware: comfortably above eigensolver noise and the
/// exponentially small splitting of hybridized edge modes, far below the
/// bulk gap of the chains this crate targets.
pub fn default_tol(values: &[Complex64]) -> f64 {
    let radius = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    1e-7 * (1.0 + radius)
}

/// Classify a multiset of eigenvalues against tolerance `tol`.
pub fn classify_spectrum(values: &[Complex64], tol: f64) -> Result<Spectrum, ClassifyError> {
    if !(tol > 0.0) {
        return Err(ClassifyError::NonPositiveTol(tol));
    }
    let mut sorted = values.to_vec();
    sort_canonical(&mut sorted);

    let mut counts = ClassCounts::default();
    let classes: Vec<EigClass> = sorted
        .iter()
        .map(|&v| {
            let class = EigClass::of(v, tol);
            match class {
                EigClass::Zero => counts.zero += 1,
                EigClass::Real => counts.real += 1,
                EigClass::PurelyImaginary => counts.imaginary += 1,
                EigClass::GenuinelyComplex => counts.complex += 1,
            }
            class
        })
        .collect();

    let phase = if counts.imaginary + counts.complex == 0 { Phase::Unbroken } else { Phase::Broken };
    Ok(Spectrum { values: sorted, classes, tol, phase, counts })
}

/// How the non-real eigenvalues organize into conjugate pairs and
/// quartets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairingReport {
    /// Conjugate pairs {v, conj(v)} outside of quartets (a purely
    /// imaginary +-ib pair counts here).
    pub conjugate_pairs: usize,
    /// Quartets {v, conj(v), -v, -conj(v)} of genuinely complex values.
    pub quartets: usize,
    /// Non-real eigenvalues left over after pair and quartet matching;
    /// expected only for reflection-asymmetric odd chains.
    pub unmatched: usize,
}

/// Default pairing tolerance, tighter than classification since partners
/// agree to solver accuracy: `1e-9 * (1 + spectral radius)`.
pub fn default_pair_tol(values: &[Complex64]) -> f64 {
    let radius = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    1e-9 * (1.0 + radius)
}

/// Group the non-real eigenvalues of a classified spectrum into quartets
/// and conjugate pairs by greedy nearest-distance matching within
/// `pair_tol`. Quartets are matched first, seeded from the genuinely
/// complex values in order of increasing |Re| (then canonically); every
/// value joins at most one group.
pub fn pairing_structure(spec: &Spectrum, pair_tol: f64) -> PairingReport {
    let n = spec.values.len();
    let mut used = vec![false; n];
    let mut report = PairingReport::default();

    let non_real = |class: EigClass| {
        matches!(class, EigClass::PurelyImaginary | EigClass::GenuinelyComplex)
    };

    // Nearest unused non-real value to `target`, within tolerance.
    let find = |target: Complex64, used: &[bool], exclude: &[usize]| -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..n {
            if used[i] || !non_real(spec.classes[i]) || exclude.contains(&i) {
                continue;
            }
            let dist = (spec.values[i] - target).norm();
            if dist <= pair_tol && best.map_or(true, |(_, d)| dist < d) {
                best = Some((i, dist));
            }
        }
        best.map(|(i, _)| i)
    };

    // Quartet seeds: genuinely complex, smallest |Re| first.
    let mut seeds: Vec<usize> = (0..n)
        .filter(|&i| spec.classes[i] == EigClass::GenuinelyComplex)
        .collect();
    seeds.sort_by(|&a, &b| {
        let (va, vb) = (spec.values[a], spec.values[b]);
        va.re
            .abs()
            .total_cmp(&vb.re.abs())
            .then(cmp_canonical(va, vb))
    });

    for &i in &seeds {
        if used[i] {
            continue;
        }
        let v = spec.values[i];
        let Some(j) = find(v.conj(), &used, &[i]) else { continue };
        let Some(k) = find(-v, &used, &[i, j]) else { continue };
        let Some(l) = find(-v.conj(), &used, &[i, j, k]) else { continue };
        used[i] = true;
        used[j] = true;
        used[k] = true;
        used[l] = true;
        report.quartets += 1;
    }

    // Conjugate pairs among the rest, upper-half-plane members first.
    for i in 0..n {
        if used[i] || !non_real(spec.classes[i]) || spec.values[i].im <= 0.0 {
            continue;
        }
        if let Some(j) = find(spec.values[i].conj(), &used, &[i]) {
            used[i] = true;
            used[j] = true;
            report.conjugate_pairs += 1;
        }
    }

    report.unmatched = (0..n).filter(|&i| !used[i] && non_real(spec.classes[i])).count();
    report
}

/// Largest matched distance of a greedy minimum-distance pairing
/// between two equal-size multisets (infinity when the sizes differ).
///
/// This is the comparison primitive for all spectral-symmetry checks
/// (conjugation covariance, PT pairing, -conj pairing, oracle
/// equivalence): index-wise comparison after sorting is unreliable when
/// partners differ by roundoff across an ordering boundary, e.g. a +-ib
/// pair whose real parts are opposite-signed noise.
pub fn multiset_match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut xs = a.to_vec();
    sort_canonical(&mut xs);
    let mut ys = b.to_vec();
    sort_canonical(&mut ys);

    let mut used = vec![false; ys.len()];
    let mut worst = 0.0f64;
    for &x in &xs {
        let mut best: Option<(usize, f64)> = None;
        for (j, &y) in ys.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (x - y).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.expect("multisets are the same nonzero size");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Number of eigenvalues with `|v| <= zero_tol`.
pub fn count_zero_modes(spec: &Spectrum, zero_tol: f64) -> Result<usize, ClassifyError> {
    if !(zero_tol > 0.0) {
        return Err(ClassifyError::NonPositiveZeroTol(zero_tol));
    }
    Ok(spec.values.iter().filter(|v| v.norm() <= zero_tol).count())
}
