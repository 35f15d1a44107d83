//! The polynomial inequalities obtained by writing subadditivity out in terms of
//! the Hermite, Laguerre and Legendre forms of the distributions, and the
//! deformed-coherent-state versions.
//!
//! Each form is evaluated with its own weights (the normalization constant sits
//! inside the logarithms only). `margin = lhs - rhs`, and `scale * margin` is the
//! information of the underlying probability distribution.

use serde::Serialize;

use super::{block_entropies_of, neg_plogp, PartitionScheme, SUBADDITIVITY_TOLERANCE};
use crate::error::{Error, Result};
use crate::gaussian_state::{p0_log, r_matrix, uncertainty_check, OneModeGaussianState};
use crate::photon_dist::{
    laguerre_factors, log_weights, pn_hermite, DeformationSpec, FConvention, LaguerreArgs, LegendreParams,
    TwoModeJointDistribution,
};
use crate::specfun::{log_factorial, TwoIndexHermite};
use crate::sum::{neumaier_sum, NeumaierSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityForm {
    Hermite,
    Laguerre,
    Legendre,
    FCoherent,
    QCoherent,
    Poisson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    pub form: InequalityForm,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Factor turning `margin` into information.
    pub scale: f64,
    pub h_joint: f64,
    pub h_sub1: f64,
    pub h_sub2: f64,
    pub information: f64,
    pub holds: bool,
}

impl InequalityReport {
    fn from_weights(form: InequalityForm, weights: &[f64], inner: f64) -> Self {
        let (lhs, rhs) = weighted_sides(weights, inner);
        let probs: Vec<f64> = weights.iter().map(|w| w * inner).collect();
        let e = block_entropies_of(&probs, PartitionScheme::pairs());
        let margin = lhs - rhs;
        Self {
            form,
            lhs,
            rhs,
            margin,
            scale: inner,
            h_joint: e.h_joint,
            h_sub1: e.h_sub1,
            h_sub2: e.h_sub2,
            information: e.information,
            holds: inner * margin >= -SUBADDITIVITY_TOLERANCE,
        }
    }
}

/// `-w ln(c w)`, zero for `w <= 0`.
fn weighted_term(w: f64, inner: f64) -> f64 {
    if w > 0.0 {
        -w * (inner * w).ln()
    } else {
        0.0
    }
}

/// Both sides of the pair-partition inequality on weights `w_k` with `inner`
/// multiplying the log arguments.
fn weighted_sides(weights: &[f64], inner: f64) -> (f64, f64) {
    let even = neumaier_sum(weights.iter().step_by(2).copied());
    let odd = neumaier_sum(weights.iter().skip(1).step_by(2).copied());
    let mut lhs = NeumaierSum::new();
    lhs.add(weighted_term(odd, inner));
    for pair in weights.chunks(2) {
        lhs.add(weighted_term(pair.iter().sum(), inner));
    }
    lhs.add(weighted_term(even, inner));
    let rhs = neumaier_sum(weights.iter().map(|&w| weighted_term(w, inner)));
    (lhs.value(), rhs)
}

fn require_physical(state: &OneModeGaussianState, n_max: usize) -> Result<()> {
    if uncertainty_check(state).valid {
        Ok(())
    } else {
        Err(Error::NotProbability(pn_hermite(state, n_max)?.classification()))
    }
}

/// Hermite form with weights `H_kk / k!` and `P0` inside the logarithms.
pub fn hermite_inequality(state: &OneModeGaussianState, n_max: usize) -> Result<InequalityReport> {
    require_physical(state, n_max)?;
    let r = r_matrix(state)?;
    let (p0, _) = p0_log(state)?;
    let h = TwoIndexHermite::from_rmatrix(&r, n_max);
    let weights: Vec<f64> = (0..=n_max)
        .map(|k| h.diagonal_log(k).scale_log(-log_factorial(k)).to_complex().re)
        .collect();
    Ok(InequalityReport::from_weights(InequalityForm::Hermite, &weights, p0.value.re))
}

/// Laguerre form with weights `Σ_s L_{k,s}`, where `L_{k,s}` already carries `P0`.
pub fn laguerre_inequality(state: &OneModeGaussianState, n_max: usize) -> Result<InequalityReport> {
    require_physical(state, n_max)?;
    let (p0, m1, m2) = laguerre_factors(state, n_max, LaguerreArgs::Derived)?;
    let weights: Vec<f64> = (0..=n_max)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let inner: NeumaierSum = (0..=k)
                .map(|s| sign * (p0 * m1[s] * m2[k - s]).to_complex().re)
                .collect();
            inner.value()
        })
        .collect();
    Ok(InequalityReport::from_weights(InequalityForm::Laguerre, &weights, 1.0))
}

/// Legendre form on the normalized two-mode table, with marginal subsystem
/// entropies.
pub fn legendre_inequality(params: &LegendreParams, n1_max: usize, n2_max: usize) -> Result<InequalityReport> {
    let raw = TwoModeJointDistribution::legendre_table(params, n1_max, n2_max)?;
    let raw_total = neumaier_sum(raw.iter().flatten().copied());
    let joint = TwoModeJointDistribution::normalized(raw)?;
    let e = super::joint_entropy_report(&joint)?;
    let lhs = e.h_sub1 + e.h_sub2;
    Ok(InequalityReport {
        form: InequalityForm::Legendre,
        lhs,
        rhs: e.h_joint,
        margin: lhs - e.h_joint,
        scale: 1.0,
        h_joint: e.h_joint,
        h_sub1: e.h_sub1,
        h_sub2: e.h_sub2,
        information: e.information,
        holds: e.subadditive && raw_total > 0.0,
    })
}

fn exp_weights(log_w: &[f64], what: &'static str) -> Result<Vec<f64>> {
    let w: Vec<f64> = log_w.iter().map(|l| l.exp()).collect();
    if w.iter().all(|v| v.is_finite()) {
        Ok(w)
    } else {
        Err(Error::Overflow { what, n: log_w.len() - 1 })
    }
}

/// f-coherent form on the unnormalized weights `|α|^{2n} / (sqrt(n!) (f(n)!)^2)`
/// with `C0 = 1 / Σ u_n` inside the logarithms.
pub fn f_coherent_inequality(
    alpha_mag2: f64,
    f_values: Vec<f64>,
    convention: FConvention,
    n_max: usize,
) -> Result<InequalityReport> {
    let spec = DeformationSpec::f_coherent(alpha_mag2, f_values).with_convention(convention);
    let (log_w, log_norm) = log_weights(&spec, n_max)?;
    let weights = exp_weights(&log_w, "f-coherent weights")?;
    Ok(InequalityReport::from_weights(InequalityForm::FCoherent, &weights, (-log_norm).exp()))
}

/// q-coherent closed form: `-S_e ln S_e - S_o ln S_o` over the even and odd
/// masses. This is the residue-class entropy, reported as `lhs` and `margin`;
/// `information` holds the mutual information of the same distribution.
pub fn q_coherent_information(alpha_mag2: f64, lambda: f64, n_max: usize) -> Result<InequalityReport> {
    let spec = DeformationSpec::q_coherent(alpha_mag2, lambda);
    let (log_w, log_norm) = log_weights(&spec, n_max)?;
    let probs: Vec<f64> = log_w.iter().map(|l| (l - log_norm).exp()).collect();
    let e = block_entropies_of(&probs, PartitionScheme::pairs());
    let even = neumaier_sum(probs.iter().step_by(2).copied());
    let odd = neumaier_sum(probs.iter().skip(1).step_by(2).copied());
    let lhs = neg_plogp(even) + neg_plogp(odd);
    Ok(InequalityReport {
        form: InequalityForm::QCoherent,
        lhs,
        rhs: 0.0,
        margin: lhs,
        scale: 1.0,
        h_joint: e.h_joint,
        h_sub1: e.h_sub1,
        h_sub2: e.h_sub2,
        information: e.information,
        holds: lhs >= -SUBADDITIVITY_TOLERANCE,
    })
}

/// Poisson closed form for the pair partition, reported like
/// [`q_coherent_information`]; the entropies come from the first `n_max + 1`
/// Poisson terms.
pub fn poisson_inequality(x_bar: f64, n_max: usize) -> Result<InequalityReport> {
    let d = crate::photon_dist::deformed_distribution(&DeformationSpec::poisson(x_bar), n_max)?;
    let e = block_entropies_of(&d.real_values(), PartitionScheme::pairs());
    let lhs = poisson_information_closed_form(x_bar);
    Ok(InequalityReport {
        form: InequalityForm::Poisson,
        lhs,
        rhs: 0.0,
        margin: lhs,
        scale: 1.0,
        h_joint: e.h_joint,
        h_sub1: e.h_sub1,
        h_sub2: e.h_sub2,
        information: e.information,
        holds: lhs >= -SUBADDITIVITY_TOLERANCE,
    })
}

/// `-e^{-x}(sinh x ln(e^{-x} sinh x) + cosh x ln(e^{-x} cosh x))` for Poisson mean `x`.
pub fn poisson_information_closed_form(x: f64) -> f64 {
    // e^{-x} sinh x = (1 - e^{-2x}) / 2, e^{-x} cosh x = (1 + e^{-2x}) / 2
    let e2 = (-2.0 * x).exp();
    let odd = -(-2.0 * x).exp_m1() / 2.0;
    let even = (1.0 + e2) / 2.0;
    neg_plogp(odd) + neg_plogp(even)
}

/// Three-term trigonometric expression for the Poisson residue classes
/// modulo 3. The third term reuses the first prefactor while its logarithm
/// takes the `(π + 3√3 x)/6` argument, so it is not the residue entropy.
pub fn poisson_residue_information_trig(x: f64) -> f64 {
    use std::f64::consts::PI;
    let s3 = 3f64.sqrt();
    let decay = (-1.5 * x).exp();
    let s_minus = 1.0 / 3.0 - 2.0 / 3.0 * decay * ((PI - 3.0 * s3 * x) / 6.0).sin();
    let s_plus = 1.0 / 3.0 - 2.0 / 3.0 * decay * ((PI + 3.0 * s3 * x) / 6.0).sin();
    let s_zero = (2.0 * decay * (s3 * x / 2.0).cos() + 1.0) / 3.0;
    let term = |w: f64, arg: f64| if w == 0.0 { 0.0 } else { -w * arg.ln() };
    term(s_minus, s_minus) + term(s_zero, s_zero) + term(s_minus, s_plus)
}
