use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{assoc_legendre, gauss_2f1_terminating, log_factorial};
use crate::sum::neumaier_sum;

/// Probability of `2k` photons in total from two independently squeezed modes
/// with `s_j = tanh^2 r_j`:
/// `sqrt(1-s1) sqrt(1-s2) s2^k 2F1(-k, 1/2; 1; 1 - s1/s2)`.
///
/// The expression is symmetric in `s1, s2`; the larger one is put in the
/// `s2` slot so the series argument stays in `[0, 1)`. At `s2 = 0` this gives
/// the continuous limit `sqrt(1 - s1) s1^k (1/2)_k / k!`.
pub fn two_mode_p2k(s1: f64, s2: f64, k: usize) -> Result<f64> {
    for s in [s1, s2] {
        if !(0.0..1.0).contains(&s) {
            return Err(Error::Domain(format!("squeezing fraction {s} outside [0, 1)")));
        }
    }
    let pref = ((1.0 - s1) * (1.0 - s2)).sqrt();
    let (lo, hi) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
    if k == 0 {
        return Ok(pref);
    }
    if hi == 0.0 {
        return Ok(0.0);
    }
    let f = gauss_2f1_terminating(k, 0.5, 1.0, 1.0 - lo / hi)?;
    Ok(pref * (k as f64 * hi.ln()).exp() * f)
}

/// The Legendre-form two-mode distribution parameters `N, F1, F2, F3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegendreParams {
    pub n_factor: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

impl LegendreParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.f1 > 0.0 && self.f2 > 0.0) {
            return Err(Error::Domain("F1 and F2 must be positive".into()));
        }
        if !(self.n_factor >= 0.0 && self.n_factor.is_finite() && self.f3.is_finite()) {
            return Err(Error::Domain("N must be nonnegative and F3 finite".into()));
        }
        Ok(())
    }
}

/// `N T(n1,n2) F1^{(n1-n2)/2} F2^{(n1+n2)/2} |P_{(n1+n2)/2}^{|n1-n2|/2}(F3)|^2`
/// with `T = exp(-|ln(n1!/n2!)|)`.
pub fn two_mode_joint(params: &LegendreParams, n1: usize, n2: usize) -> Result<f64> {
    params.validate()?;
    if (n1 + n2) % 2 == 1 {
        return Err(Error::Parity { n1, n2 });
    }
    if params.n_factor == 0.0 {
        return Ok(0.0);
    }
    let l = (n1 + n2) / 2;
    let m = n1.abs_diff(n2) / 2;
    let leg = assoc_legendre(l, m, params.f3)?;
    if leg == 0.0 {
        return Ok(0.0);
    }
    let log_t = -(log_factorial(n1) - log_factorial(n2)).abs();
    let half_diff = (n1 as f64 - n2 as f64) / 2.0;
    let log_value = params.n_factor.ln()
        + log_t
        + half_diff * params.f1.ln()
        + l as f64 * params.f2.ln()
        + 2.0 * leg.abs().ln();
    let value = log_value.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { what: "two_mode_joint", n: n1 + n2 })
    }
}

/// A truncated joint table `values[n1][n2]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoModeJointDistribution {
    values: Vec<Vec<f64>>,
    truncation: (usize, usize),
    tail_bound: f64,
}

impl TwoModeJointDistribution {
    /// Validates a rectangular, nonnegative table with mass at most `1 + 1e-9`.
    pub fn new(values: Vec<Vec<f64>>) -> Result<Self> {
        let rows = values.len();
        let cols = values.first().map_or(0, |r| r.len());
        if rows == 0 || cols == 0 || values.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("joint table must be rectangular and nonempty".into()));
        }
        if values.iter().flatten().any(|&v| !(v >= 0.0 && v.is_finite())) {
            return Err(Error::Domain("joint table entries must be finite and nonnegative".into()));
        }
        let total = neumaier_sum(values.iter().flatten().copied());
        if total > 1.0 + 1e-9 {
            return Err(Error::Unnormalized(total));
        }
        // mass on the outer edge, doubled
        let edge = neumaier_sum(values[rows - 1].iter().copied())
            + neumaier_sum(values[..rows - 1].iter().map(|r| r[cols - 1]));
        Ok(Self {
            truncation: (rows - 1, cols - 1),
            tail_bound: 2.0 * edge,
            values,
        })
    }

    /// Rescales the table to unit mass first.
    pub fn normalized(mut values: Vec<Vec<f64>>) -> Result<Self> {
        let total = neumaier_sum(values.iter().flatten().copied());
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::Unnormalized(total));
        }
        for v in values.iter_mut().flatten() {
            *v /= total;
        }
        Self::new(values)
    }

    /// Table of [`two_mode_joint`] for `n1 <= n1_max`, `n2 <= n2_max`; cells with
    /// `n1 + n2` odd are 0.
    pub fn legendre_table(params: &LegendreParams, n1_max: usize, n2_max: usize) -> Result<Vec<Vec<f64>>> {
        (0..=n1_max)
            .map(|n1| {
                (0..=n2_max)
                    .map(|n2| {
                        if (n1 + n2) % 2 == 1 {
                            Ok(0.0)
                        } else {
                            two_mode_joint(params, n1, n2)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn truncation(&self) -> (usize, usize) {
        self.truncation
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn total(&self) -> f64 {
        neumaier_sum(self.values.iter().flatten().copied())
    }

    pub fn marginal1(&self) -> Vec<f64> {
        self.values.iter().map(|r| neumaier_sum(r.iter().copied())).collect()
    }

    pub fn marginal2(&self) -> Vec<f64> {
        (0..=self.truncation.1)
            .map(|j| neumaier_sum(self.values.iter().map(|r| r[j])))
            .collect()
    }
}
