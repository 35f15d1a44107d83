//! Photon-number distributions: Gaussian states through the Hermite, Laguerre
//! and centered closed forms, the uncertainty-violating family, two-mode
//! squeezed light and deformed coherent states.

mod deformed;
mod export;
mod one_mode;
mod two_mode;
mod violation;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sum::neumaier_sum_complex;

pub use deformed::{deformed_distribution, deformed_pn, DeformationKind, DeformationSpec, FConvention};
pub use export::{format_float, to_csv, to_json};
pub use one_mode::{pn_centered_xyt, pn_hermite, pn_laguerre, pn_laguerre_with, LaguerreArgs};
pub use two_mode::{two_mode_joint, two_mode_p2k, LegendreParams, TwoModeJointDistribution};
pub use violation::{mean_photon_xyt, pn_violation, violation_exact};

pub(crate) use deformed::log_weights;
pub(crate) use one_mode::laguerre_factors;

/// Verdict on whether a computed sequence is a probability distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Probability,
    /// Real within tolerance, with at least one clearly negative entry.
    SignedReal,
    /// Some entry has a non-negligible imaginary part.
    Complex,
    /// Real and nonnegative, but the mass is not 1 within the tail bound.
    Unnormalized,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Probability => "Probability",
            Classification::SignedReal => "SignedReal",
            Classification::Complex => "Complex",
            Classification::Unnormalized => "Unnormalized",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub imag: f64,
    pub neg: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            imag: 1e-12,
            neg: 1e-12,
        }
    }
}

/// Slack allowed on the total mass on top of the tail bound.
pub const MASS_TOLERANCE: f64 = 1e-9;

pub const ADAPTIVE_START: usize = 32;
pub const ADAPTIVE_MAX: usize = 16384;
pub const ADAPTIVE_TAIL: f64 = 1e-12;

/// A truncated sequence `values[n]`, `n = 0..=truncation`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    values: Vec<Complex64>,
    truncation: usize,
    tail_bound: f64,
    classification: Classification,
}

impl PhotonDistribution {
    pub fn from_values(values: Vec<Complex64>) -> Self {
        Self::with_tolerances(values, Tolerances::default())
    }

    pub fn from_real(values: Vec<f64>) -> Self {
        Self::from_values(values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    pub fn with_tolerances(values: Vec<Complex64>, tol: Tolerances) -> Self {
        assert!(!values.is_empty(), "a distribution needs at least one value");
        let tail_bound = tail_bound(&values);
        let classification = classify(&values, tail_bound, tol);
        Self {
            truncation: values.len() - 1,
            values,
            tail_bound,
            classification,
        }
    }

    pub fn reclassified(&self, tol: Tolerances) -> Self {
        Self::with_tolerances(self.values.clone(), tol)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn get(&self, n: usize) -> Complex64 {
        self.values.get(n).copied().unwrap_or_default()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn is_probability(&self) -> bool {
        self.classification == Classification::Probability
    }

    pub fn total(&self) -> Complex64 {
        neumaier_sum_complex(self.values.iter().copied())
    }

    pub fn mean(&self) -> Complex64 {
        neumaier_sum_complex(self.values.iter().enumerate().map(|(n, v)| v * n as f64))
    }
}

/// Window length for the envelope ratio in [`tail_bound`].
const TAIL_WINDOW: usize = 8;

/// Geometric extrapolation of `Σ_{n > N} |p_n|`, doubled.
///
/// The decay ratio is read off the envelope (window maxima) of the last
/// `2 * 8` entries, so parity-alternating supports and rounding noise in
/// vanishing entries do not spoil it. Shorter sequences use the per-index
/// ratios of the last five nonzero terms. Returns 0 for sequences ending in a
/// run of exact zeros (finite support) and infinity when the decay ratio is not
/// below 1.
pub fn tail_bound(values: &[Complex64]) -> f64 {
    let last = values.len() - 1;
    let nonzero: Vec<usize> = values
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, v)| v.norm() > 0.0)
        .map(|(i, _)| i)
        .take(5)
        .collect();
    let trailing_zeros = nonzero.first().map_or(values.len(), |&i| last - i);
    if trailing_zeros >= 2 || (nonzero.len() < 2 && trailing_zeros >= 1) {
        return 0.0;
    }
    if nonzero.len() < 2 {
        return f64::INFINITY;
    }
    let (anchor, anchor_value, ratio) = if values.len() >= 2 * TAIL_WINDOW {
        let window_max = |range: std::ops::Range<usize>| {
            range
                .map(|i| (i, values[i].norm()))
                .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
        };
        let (i2, e2) = window_max(values.len() - TAIL_WINDOW..values.len());
        let (_, e1) = window_max(values.len() - 2 * TAIL_WINDOW..values.len() - TAIL_WINDOW);
        if e1 == 0.0 {
            return f64::INFINITY;
        }
        (i2, e2, (e2 / e1).powf(1.0 / TAIL_WINDOW as f64))
    } else {
        let mut ratio: f64 = 0.0;
        for pair in nonzero.windows(2) {
            let (hi, lo) = (pair[0], pair[1]);
            let step = (values[hi].norm() / values[lo].norm()).powf(1.0 / (hi - lo) as f64);
            ratio = ratio.max(step);
        }
        (nonzero[0], values[nonzero[0]].norm(), ratio)
    };
    if !(ratio < 1.0) {
        return f64::INFINITY;
    }
    2.0 * anchor_value * ratio.powi((last - anchor + 1) as i32) / (1.0 - ratio)
}

fn classify(values: &[Complex64], tail: f64, tol: Tolerances) -> Classification {
    if values.iter().any(|v| !(v.im.abs() < tol.imag)) {
        return Classification::Complex;
    }
    if values.iter().any(|v| v.re < -tol.neg) {
        return Classification::SignedReal;
    }
    let total = neumaier_sum_complex(values.iter().copied()).re;
    if total <= 1.0 + MASS_TOLERANCE && total >= 1.0 - tail - MASS_TOLERANCE {
        Classification::Probability
    } else {
        Classification::Unnormalized
    }
}

/// Doubles the truncation from 32 until the tail bound drops below 1e-12 or
/// the cap of 16384 is reached.
pub fn adaptive<F>(mut compute: F) -> Result<PhotonDistribution>
where
    F: FnMut(usize) -> Result<PhotonDistribution>,
{
    let mut n = ADAPTIVE_START;
    loop {
        let d = compute(n)?;
        if d.tail_bound() < ADAPTIVE_TAIL || n >= ADAPTIVE_MAX {
            return Ok(d);
        }
        n = (2 * n).min(ADAPTIVE_MAX);
    }
}
