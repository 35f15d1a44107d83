//! Building a distribution from command-line parameters.

use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use photodist_core::photon_dist::adaptive;
use photodist_core::{
    deformed_distribution, pn_centered_xyt, pn_hermite, pn_laguerre, pn_violation, two_mode_p2k, DeformationSpec,
    FConvention, OneModeGaussianState, PhotonDistribution, Tolerances, XYTState, uncertainty_check,
};

use crate::error::CliError;
use crate::Common;

/// Default truncation where the tail need not converge (the xyt family and
/// uncertainty-violating Gaussian states).
pub const FIXED_N_MAX: usize = 64;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Gaussian,
    Xyt,
    SqueezedVacuum,
    SqueezedCorrelated,
    TwoMode,
    Poisson,
    FCoherent,
    QCoherent,
    /// Read a deformation spec from --spec
    Deformed,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Hermite,
    Laguerre,
    Centered,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConventionArg {
    #[default]
    SqrtFactorial,
    Standard,
}

impl From<ConventionArg> for FConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::SqrtFactorial => FConvention::SqrtFactorial,
            ConventionArg::Standard => FConvention::Standard,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct StateArgs {
    #[arg(long, value_enum)]
    pub family: Option<Family>,

    /// JSON state {sigma_pp, sigma_qq, sigma_pq, mean_q, mean_p}
    #[arg(long)]
    pub state: Option<PathBuf>,

    /// JSON deformation spec (family deformed)
    #[arg(long)]
    pub spec: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Method::Hermite)]
    pub method: Method,

    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub t: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,

    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub mean_q: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub mean_p: f64,

    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub theta: f64,

    /// Coherent amplitude |alpha|
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Poisson mean
    #[arg(long)]
    pub mean: Option<f64>,
    /// f(0), f(1), ...; the last value repeats
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub f_values: Vec<f64>,
    #[arg(long, value_enum, default_value_t = ConventionArg::SqrtFactorial)]
    pub f_convention: ConventionArg,

    #[arg(long)]
    pub s1: Option<f64>,
    #[arg(long)]
    pub s2: Option<f64>,
}

fn need(v: Option<f64>, flag: &str, family: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Config(format!("--{flag} is required for family {family}")))
}

pub fn with_n_max<F>(common: &Common, fixed_default: Option<usize>, mut compute: F) -> Result<PhotonDistribution, CliError>
where
    F: FnMut(usize) -> photodist_core::Result<PhotonDistribution>,
{
    match common.n_max.or(fixed_default) {
        Some(n) => Ok(compute(n)?),
        None => Ok(adaptive(compute)?),
    }
}

impl StateArgs {
    /// The Gaussian state from --state or the inline covariance flags.
    pub fn gaussian_state(&self) -> Result<OneModeGaussianState, CliError> {
        if let Some(path) = &self.state {
            let text = fs::read_to_string(path)?;
            let state: OneModeGaussianState = serde_json::from_str(&text)?;
            state.validate()?;
            return Ok(state);
        }
        let x = need(self.x, "x", "gaussian")?;
        let y = need(self.y, "y", "gaussian")?;
        Ok(OneModeGaussianState::new(x, y, self.t, self.mean_q, self.mean_p)?)
    }

    pub fn family(&self) -> Result<Family, CliError> {
        self.family.ok_or_else(|| CliError::Config("--family is required".into()))
    }

    pub fn deformation(&self) -> Result<DeformationSpec, CliError> {
        let spec = match self.family()? {
            Family::SqueezedVacuum => DeformationSpec::squeezed_vacuum(need(self.r, "r", "squeezed-vacuum")?),
            Family::SqueezedCorrelated => DeformationSpec::squeezed_correlated(
                need(self.r, "r", "squeezed-correlated")?,
                self.theta,
                self.mean_q,
                self.mean_p,
            ),
            Family::Poisson => DeformationSpec::poisson(need(self.mean, "mean", "poisson")?),
            Family::FCoherent => {
                let a = need(self.alpha, "alpha", "f-coherent")?;
                DeformationSpec::f_coherent(a * a, self.f_values.clone()).with_convention(self.f_convention.into())
            }
            Family::QCoherent => {
                let a = need(self.alpha, "alpha", "q-coherent")?;
                DeformationSpec::q_coherent(a * a, need(self.lambda, "lambda", "q-coherent")?)
            }
            Family::Deformed => {
                let path = self
                    .spec
                    .as_ref()
                    .ok_or_else(|| CliError::Config("--spec is required for family deformed".into()))?;
                serde_json::from_str(&fs::read_to_string(path)?)?
            }
            _ => return Err(CliError::Config("not a deformed family".into())),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn distribution(&self, common: &Common) -> Result<PhotonDistribution, CliError> {
        let dist = match self.family()? {
            Family::Gaussian => {
                let s = self.gaussian_state()?;
                let fixed = (!uncertainty_check(&s).valid).then_some(FIXED_N_MAX);
                match self.method {
                    Method::Hermite => with_n_max(common, fixed, |n| pn_hermite(&s, n))?,
                    Method::Laguerre => with_n_max(common, fixed, |n| pn_laguerre(&s, n))?,
                    Method::Centered => {
                        if !s.is_centered() {
                            return Err(CliError::Config("--method centered needs zero means".into()));
                        }
                        let xyt = XYTState { x: s.sigma_pp, y: s.sigma_qq, t: s.sigma_pq };
                        with_n_max(common, fixed, |n| pn_centered_xyt(&xyt, n))?
                    }
                }
            }
            Family::Xyt => {
                let y = need(self.y, "y", "xyt")?;
                match self.tau {
                    Some(tau) => {
                        if let Some(x) = self.x {
                            let implied = (0.25 - tau + self.t * self.t) / y;
                            if (x - implied).abs() > 1e-12 * (1.0 + implied.abs()) {
                                return Err(CliError::Config(format!(
                                    "--x {x} is inconsistent with --tau {tau} (implies x = {implied})"
                                )));
                            }
                        }
                        with_n_max(common, Some(FIXED_N_MAX), |n| pn_violation(tau, y, self.t, n))?
                    }
                    None => {
                        let xyt = XYTState { x: need(self.x, "x", "xyt")?, y, t: self.t };
                        with_n_max(common, Some(FIXED_N_MAX), |n| pn_centered_xyt(&xyt, n))?
                    }
                }
            }
            Family::TwoMode => {
                let s1 = need(self.s1, "s1", "two-mode")?;
                let s2 = need(self.s2, "s2", "two-mode")?;
                with_n_max(common, None, |n| {
                    let values = (0..=n)
                        .map(|m| {
                            if m % 2 == 1 {
                                Ok(Complex64::new(0.0, 0.0))
                            } else {
                                two_mode_p2k(s1, s2, m / 2).map(|v| Complex64::new(v, 0.0))
                            }
                        })
                        .collect::<photodist_core::Result<Vec<_>>>()?;
                    Ok(PhotonDistribution::from_values(values))
                })?
            }
            _ => {
                let spec = self.deformation()?;
                with_n_max(common, None, |n| deformed_distribution(&spec, n))?
            }
        };
        Ok(dist.reclassified(Tolerances { imag: common.tol_imag, neg: common.tol_neg }))
    }
}
