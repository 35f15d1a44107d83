use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::PhotonDistribution;
use crate::error::{Error, Result};
use crate::specfun::{log_factorial, scaled_hermite_log_sequence, LogAccumulator, LogSigned};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeformationKind {
    Poisson,
    FCoherent,
    QCoherent,
    SqueezedCorrelated,
    SqueezedVacuum,
}

/// Weight used for the f-coherent family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FConvention {
    /// `|alpha|^{2n} / (sqrt(n!) (f(n)!)^2)`
    #[default]
    SqrtFactorial,
    /// `|alpha|^{2n} / (n! (f(n)!)^2)`, the usual nonlinear coherent state.
    Standard,
}

/// Parameters of the non-Gaussian and closed-form state families.
///
/// Fields that a family does not use are ignored. `f_values` lists
/// `f(0), f(1), ...`; indices past the end reuse the last entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeformationSpec {
    pub kind: DeformationKind,
    #[serde(default)]
    pub alpha_mag2: f64,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub r: f64,
    #[serde(default)]
    pub theta: f64,
    #[serde(default)]
    pub f_values: Vec<f64>,
    #[serde(default)]
    pub mean_q: f64,
    #[serde(default)]
    pub mean_p: f64,
    #[serde(default)]
    pub f_convention: FConvention,
}

impl DeformationSpec {
    fn base(kind: DeformationKind) -> Self {
        Self {
            kind,
            alpha_mag2: 0.0,
            lambda: 0.0,
            r: 0.0,
            theta: 0.0,
            f_values: Vec::new(),
            mean_q: 0.0,
            mean_p: 0.0,
            f_convention: FConvention::SqrtFactorial,
        }
    }

    pub fn poisson(x_bar: f64) -> Self {
        Self {
            alpha_mag2: x_bar,
            ..Self::base(DeformationKind::Poisson)
        }
    }

    pub fn f_coherent(alpha_mag2: f64, f_values: Vec<f64>) -> Self {
        Self {
            alpha_mag2,
            f_values,
            ..Self::base(DeformationKind::FCoherent)
        }
    }

    pub fn q_coherent(alpha_mag2: f64, lambda: f64) -> Self {
        Self {
            alpha_mag2,
            lambda,
            ..Self::base(DeformationKind::QCoherent)
        }
    }

    pub fn squeezed_vacuum(r: f64) -> Self {
        Self {
            r,
            ..Self::base(DeformationKind::SqueezedVacuum)
        }
    }

    pub fn squeezed_correlated(r: f64, theta: f64, mean_q: f64, mean_p: f64) -> Self {
        Self {
            r,
            theta,
            mean_q,
            mean_p,
            ..Self::base(DeformationKind::SqueezedCorrelated)
        }
    }

    pub fn with_convention(mut self, convention: FConvention) -> Self {
        self.f_convention = convention;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.alpha_mag2, self.lambda, self.r, self.theta, self.mean_q, self.mean_p]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidSpec("parameters must be finite".into()));
        }
        match self.kind {
            DeformationKind::Poisson | DeformationKind::QCoherent | DeformationKind::FCoherent => {
                if self.alpha_mag2 < 0.0 {
                    return Err(Error::InvalidSpec("alpha_mag2 must be nonnegative".into()));
                }
            }
            DeformationKind::SqueezedVacuum | DeformationKind::SqueezedCorrelated => {
                if self.r < 0.0 {
                    return Err(Error::InvalidSpec("squeeze parameter r must be nonnegative".into()));
                }
            }
        }
        if self.kind == DeformationKind::FCoherent {
            if self.f_values.is_empty() {
                return Err(Error::InvalidSpec("f_values must not be empty".into()));
            }
            if self.f_values.iter().any(|f| *f == 0.0 || !f.is_finite()) {
                return Err(Error::InvalidSpec("f_values must be finite and nonzero".into()));
            }
        }
        Ok(())
    }

    fn f_at(&self, n: usize) -> f64 {
        let last = self.f_values.len() - 1;
        self.f_values[n.min(last)]
    }
}

/// `ln sinh x` for `x > 0` without overflow.
fn ln_sinh(x: f64) -> f64 {
    if x > 20.0 {
        x + (-(-2.0 * x).exp()).ln_1p() - 2f64.ln()
    } else {
        x.sinh().ln()
    }
}

const NORMALIZATION_MAX: usize = 1 << 20;
/// Terms below `exp(-46)` (~1e-20) of the running sum are dropped once decaying.
const NORMALIZATION_CUTOFF: f64 = 46.0;

/// Unnormalized log weights `ln u_n` of the f-/q-coherent families, as a recurrence.
struct WeightRecurrence<'a> {
    spec: &'a DeformationSpec,
    ln_x: f64,
}

impl<'a> WeightRecurrence<'a> {
    fn new(spec: &'a DeformationSpec) -> Self {
        Self {
            spec,
            ln_x: spec.alpha_mag2.ln(),
        }
    }

    fn first(&self) -> f64 {
        match self.spec.kind {
            DeformationKind::FCoherent => -2.0 * self.spec.f_at(0).abs().ln(),
            _ => 0.0,
        }
    }

    /// `ln u_n - ln u_{n-1}` for `n >= 1`.
    fn step(&self, n: usize) -> f64 {
        let nf = n as f64;
        let decay = match self.spec.kind {
            DeformationKind::FCoherent => {
                let fact = match self.spec.f_convention {
                    FConvention::SqrtFactorial => 0.5 * nf.ln(),
                    FConvention::Standard => nf.ln(),
                };
                fact + 2.0 * self.spec.f_at(n).abs().ln()
            }
            DeformationKind::QCoherent => {
                let lambda = self.spec.lambda.abs();
                if lambda == 0.0 {
                    nf.ln()
                } else {
                    ln_sinh(lambda * nf) - ln_sinh(lambda)
                }
            }
            _ => unreachable!("weights only exist for the deformed families"),
        };
        self.ln_x - decay
    }

    fn weights(&self, n_max: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n_max + 1);
        let mut w = self.first();
        out.push(w);
        for n in 1..=n_max {
            w += self.step(n);
            out.push(w);
        }
        out
    }

    /// `ln Σ_n u_n`.
    fn log_normalization(&self) -> Result<f64> {
        let mut acc = LogAccumulator::new();
        let mut w = self.first();
        acc.add(LogSigned::new(w, Complex64::new(1.0, 0.0)));
        let mut last_step = f64::NAN;
        for n in 1..=NORMALIZATION_MAX {
            last_step = self.step(n);
            w += last_step;
            acc.add(LogSigned::new(w, Complex64::new(1.0, 0.0)));
            let total = acc.finish().log_magnitude();
            if last_step < 0.0 && w - total < -NORMALIZATION_CUTOFF || w == f64::NEG_INFINITY {
                return Ok(total);
            }
        }
        Err(Error::DivergentNormalization {
            ratio: last_step.exp(),
            n: NORMALIZATION_MAX,
        })
    }
}

/// Unnormalized log weights `ln u_n` (`n <= n_max`) and `ln Σ_n u_n` of the
/// f-/q-coherent families.
pub(crate) fn log_weights(spec: &DeformationSpec, n_max: usize) -> Result<(Vec<f64>, f64)> {
    spec.validate()?;
    if !matches!(spec.kind, DeformationKind::FCoherent | DeformationKind::QCoherent) {
        return Err(Error::InvalidSpec("weights exist only for f-coherent and q-coherent".into()));
    }
    let rec = WeightRecurrence::new(spec);
    Ok((rec.weights(n_max), rec.log_normalization()?))
}

fn log_values(spec: &DeformationSpec, n_max: usize) -> Result<Vec<LogSigned>> {
    spec.validate()?;
    let positive = |ln: f64| LogSigned::new(ln, Complex64::new(1.0, 0.0));
    let out = match spec.kind {
        DeformationKind::Poisson => {
            let x = spec.alpha_mag2;
            (0..=n_max)
                .map(|n| {
                    if x == 0.0 {
                        if n == 0 { LogSigned::ONE } else { LogSigned::ZERO }
                    } else {
                        positive(-x + n as f64 * x.ln() - log_factorial(n))
                    }
                })
                .collect()
        }
        DeformationKind::FCoherent | DeformationKind::QCoherent => {
            let (weights, norm) = log_weights(spec, n_max)?;
            weights.into_iter().map(|w| positive(w - norm)).collect()
        }
        DeformationKind::SqueezedVacuum => {
            let r = spec.r;
            (0..=n_max)
                .map(|n| {
                    if n % 2 == 1 {
                        return LogSigned::ZERO;
                    }
                    if r == 0.0 {
                        return if n == 0 { LogSigned::ONE } else { LogSigned::ZERO };
                    }
                    let m = n / 2;
                    positive(
                        -r.cosh().ln() + n as f64 * (r.tanh() / 2.0).ln() + log_factorial(n)
                            - 2.0 * log_factorial(m),
                    )
                })
                .collect()
        }
        DeformationKind::SqueezedCorrelated => {
            // P_n = P0 tanh^n r |H_n(g)|^2 / (n! 2^n), with tanh^{n/2} H_n(g) run as the
            // scaled recurrence at R = 2 tanh r, w = 2 sqrt(tanh r) g (finite at r = 0).
            let (q, p, th) = (spec.mean_q, spec.mean_p, spec.theta);
            let tanh = spec.r.tanh();
            let ln_p0 = -spec.r.cosh().ln() - (p * p + q * q) / 2.0
                + tanh / 2.0 * ((p * p - q * q) * th.cos() + 2.0 * p * q * th.sin());
            let a = Complex64::new(q, -p) / 2.0;
            let b = Complex64::new(q, p) / 2.0;
            let w = 2.0 * Complex64::from_polar(1.0, -th / 2.0) * (tanh * a + Complex64::from_polar(1.0, th) * b);
            let s = scaled_hermite_log_sequence(n_max, w, Complex64::new(2.0 * tanh, 0.0));
            s.into_iter()
                .enumerate()
                .map(|(n, v)| {
                    if v.is_zero() {
                        LogSigned::ZERO
                    } else {
                        positive(ln_p0 + 2.0 * v.log_magnitude() - log_factorial(n) - n as f64 * 2f64.ln())
                    }
                })
                .collect()
        }
    };
    Ok(out)
}

/// `p_n` of the family described by `spec`.
pub fn deformed_pn(spec: &DeformationSpec, n: usize) -> Result<f64> {
    Ok(log_values(spec, n)?[n].to_complex().re)
}

pub fn deformed_distribution(spec: &DeformationSpec, n_max: usize) -> Result<PhotonDistribution> {
    let values = log_values(spec, n_max)?
        .into_iter()
        .map(|v| v.to_complex())
        .collect();
    Ok(PhotonDistribution::from_values(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian_state::OneModeGaussianState;
    use crate::photon_dist::{adaptive, pn_hermite, Classification};
    use crate::sum::neumaier_sum;
    use proptest::prelude::*;

    #[test]
    fn poisson() {
        assert!((deformed_pn(&DeformationSpec::poisson(1.0), 0).unwrap() - (-1f64).exp()).abs() < 1e-16);
        assert_eq!(deformed_pn(&DeformationSpec::poisson(0.0), 0).unwrap(), 1.0);
        assert_eq!(deformed_pn(&DeformationSpec::poisson(0.0), 3).unwrap(), 0.0);
    }

    #[test]
    fn poisson_mean_and_variance() {
        for x in [0.3, 1.0, 4.5, 12.0] {
            let d = adaptive(|n| deformed_distribution(&DeformationSpec::poisson(x), n)).unwrap();
            let p = d.real_values();
            let mean = neumaier_sum(p.iter().enumerate().map(|(n, v)| n as f64 * v));
            let var = neumaier_sum(p.iter().enumerate().map(|(n, v)| (n as f64 - x).powi(2) * v));
            assert!((mean - x).abs() < 1e-9 && (var - x).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn squeezed_vacuum_odd_terms_vanish_and_mass_is_one() {
        for i in 0..=30 {
            let r = i as f64 * 0.1;
            let spec = DeformationSpec::squeezed_vacuum(r);
            assert_eq!(deformed_pn(&spec, 7).unwrap(), 0.0);
            let d = adaptive(|n| deformed_distribution(&spec, n)).unwrap();
            assert!((d.total().re - 1.0).abs() < 1e-10, "r={r}: {}", d.total().re);
            assert_eq!(d.classification(), Classification::Probability);
        }
    }

    #[test]
    fn q_coherent_tail_decays_super_geometrically() {
        let spec = DeformationSpec::q_coherent(1.5, 2.0);
        let p: Vec<f64> = (0..12).map(|n| deformed_pn(&spec, n).unwrap()).collect();
        for n in 2..11 {
            // successive ratios shrink once n >> 1/lambda
            assert!(p[n + 1] / p[n] < p[n] / p[n - 1]);
        }
        let total = neumaier_sum(p.iter().copied());
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn q_coherent_at_zero_lambda_is_poisson() {
        let q = DeformationSpec::q_coherent(0.8, 0.0);
        for n in 0..10 {
            let a = deformed_pn(&q, n).unwrap();
            let b = deformed_pn(&DeformationSpec::poisson(0.8), n).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn f_coherent_conventions() {
        let std = DeformationSpec::f_coherent(0.9, vec![1.0]).with_convention(FConvention::Standard);
        for n in 0..10 {
            let a = deformed_pn(&std, n).unwrap();
            let b = deformed_pn(&DeformationSpec::poisson(0.9), n).unwrap();
            assert!((a - b).abs() < 1e-14);
        }
        let sqrt_fact = DeformationSpec::f_coherent(0.9, vec![1.0]);
        let w: Vec<f64> = (0..200).map(|n| (n as f64 * 0.9f64.ln() - 0.5 * log_factorial(n)).exp()).collect();
        let norm: f64 = w.iter().sum();
        for n in 0..10 {
            assert!((deformed_pn(&sqrt_fact, n).unwrap() - w[n] / norm).abs() < 1e-14);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(deformed_pn(&DeformationSpec::poisson(-1.0), 0), Err(Error::InvalidSpec(_))));
        assert!(matches!(deformed_pn(&DeformationSpec::f_coherent(1.0, vec![]), 0), Err(Error::InvalidSpec(_))));
        assert!(matches!(deformed_pn(&DeformationSpec::f_coherent(1.0, vec![1.0, 0.0]), 0), Err(Error::InvalidSpec(_))));
        assert!(matches!(deformed_pn(&DeformationSpec::squeezed_vacuum(-0.1), 0), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn runaway_normalization_is_reported() {
        let spec = DeformationSpec::f_coherent(1e200, vec![1.0]);
        assert!(matches!(deformed_pn(&spec, 0), Err(Error::DivergentNormalization { .. })));
    }

    #[test]
    fn squeezed_correlated_matches_gaussian_route() {
        for &(r, th, q, p) in &[(0.5, 0.7, 0.4, -0.3), (1.1, -2.0, -0.8, 0.6), (0.0, 0.3, 1.0, 0.5), (0.8, 0.0, 0.0, 0.0)] {
            let spec = DeformationSpec::squeezed_correlated(r, th, q, p);
            let (c2, s2) = ((2.0 * r).cosh(), (2.0 * r).sinh());
            let state = OneModeGaussianState::new(
                (c2 + th.cos() * s2) / 2.0,
                (c2 - th.cos() * s2) / 2.0,
                th.sin() * s2 / 2.0,
                q,
                p,
            )
            .unwrap();
            let g = pn_hermite(&state, 30).unwrap();
            let d = deformed_distribution(&spec, 30).unwrap();
            for n in 0..=30 {
                let (a, b) = (d.get(n).re, g.get(n).re);
                assert!((a - b).abs() <= 1e-10 * b.abs() + 1e-15, "r={r} th={th} n={n}: {a} vs {b}");
            }
        }
    }

    proptest! {
        #[test]
        fn deformed_families_normalize(x in 0.0f64..4.0, lambda in 0.1f64..3.0, f in 0.5f64..2.0) {
            for spec in [
                DeformationSpec::q_coherent(x, lambda),
                DeformationSpec::f_coherent(x, vec![1.0, f]),
            ] {
                let d = adaptive(|n| deformed_distribution(&spec, n)).unwrap();
                prop_assert!((d.total().re - 1.0).abs() < 1e-12);
            }
        }
    }
}
