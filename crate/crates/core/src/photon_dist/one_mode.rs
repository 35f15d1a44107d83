use num_complex::Complex64;

use super::PhotonDistribution;
use crate::error::{Error, Result};
use crate::gaussian_state::{p0_log, r_matrix, OneModeGaussianState, XYTState};
use crate::specfun::{
    log_factorial, scaled_laguerre_half_log_sequence, LogAccumulator, LogSigned, TwoIndexHermite,
};

/// `P_n = P0 H_nn^{R} / n!` for `n = 0..=n_max`.
pub fn pn_hermite(state: &OneModeGaussianState, n_max: usize) -> Result<PhotonDistribution> {
    let r = r_matrix(state)?;
    let (_, p0) = p0_log(state)?;
    let h = TwoIndexHermite::from_rmatrix(&r, n_max);
    let values = (0..=n_max)
        .map(|n| (p0 * h.diagonal_log(n)).scale_log(-log_factorial(n)).to_complex())
        .collect();
    finish(values, "pn_hermite")
}

/// Which arguments feed the Laguerre polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LaguerreArgs {
    /// Arguments from the partial-fraction split of the generating function.
    /// Valid for displaced states.
    #[default]
    Derived,
    /// The sign-grouped form (all upper signs for `x1`, lower for `x2`, the
    /// factor `R12 ∓ rho` multiplying). Agrees with `Derived` only for
    /// centered states.
    SignGrouped,
}

pub fn pn_laguerre(state: &OneModeGaussianState, n_max: usize) -> Result<PhotonDistribution> {
    pn_laguerre_with(state, n_max, LaguerreArgs::Derived)
}

/// `P_n = P0 (-1)^n Σ_s b^s a^{n-s} L_s^{-1/2}(x1) L_{n-s}^{-1/2}(x2)` with
/// `a, b = R12 ± |R11|`.
pub fn pn_laguerre_with(
    state: &OneModeGaussianState,
    n_max: usize,
    args: LaguerreArgs,
) -> Result<PhotonDistribution> {
    let (p0, m1, m2) = laguerre_factors(state, n_max, args)?;
    let values = (0..=n_max)
        .map(|n| {
            let mut acc = LogAccumulator::new();
            for s in 0..=n {
                acc.add(m1[s] * m2[n - s]);
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            (p0 * acc.finish()).to_complex() * sign
        })
        .collect();
    finish(values, "pn_laguerre")
}

/// `P0` and the two scaled Laguerre sequences `b^s L_s(x1)`, `a^s L_s(x2)`.
pub(crate) fn laguerre_factors(
    state: &OneModeGaussianState,
    n_max: usize,
    args: LaguerreArgs,
) -> Result<(LogSigned, Vec<LogSigned>, Vec<LogSigned>)> {
    let r = r_matrix(state)?;
    let (_, p0) = p0_log(state)?;
    let rho = r.r11.norm();
    let a = Complex64::new(r.r12 + rho, 0.0);
    let b = Complex64::new(r.r12 - rho, 0.0);
    let cross = 2.0 * r.w1 * r.w2;
    // gamma_j = (a or b) * x_j; the scaled Laguerre form needs only gamma
    let (gamma1, gamma2) = match args {
        LaguerreArgs::Derived => {
            if rho == 0.0 {
                (cross / 4.0, cross / 4.0)
            } else {
                let u = r.r22 / rho;
                let v = r.r11 / rho;
                let sq = u * r.w1 * r.w1 + v * r.w2 * r.w2;
                ((cross - sq) / 4.0, (cross + sq) / 4.0)
            }
        }
        LaguerreArgs::SignGrouped => {
            if rho == 0.0 {
                return Err(Error::SingularDenominator("Laguerre arguments (R11 = 0)"));
            }
            let s12 = (r.r11 / r.r22).sqrt();
            let s21 = (r.r22 / r.r11).sqrt();
            let sq = s12 * r.w1 * r.w1 + s21 * r.w2 * r.w2;
            (b * b * (cross - sq) / 4.0, a * a * (cross + sq) / 4.0)
        }
    };
    let m1 = scaled_laguerre_half_log_sequence(n_max, b, gamma1);
    let m2 = scaled_laguerre_half_log_sequence(n_max, a, gamma2);
    Ok((p0, m1, m2))
}

/// Centered closed form:
/// `P_n = 2 n! c0^{-(n+1/2)} Σ_k (-1)^k (1-4D)^k (T^2-4D)^{(n-k)/2} H_{n-k}(0)^2 / (k! (n-k)!^2)`
/// with `T = x + y`, `D = xy - t^2`, `c0 = 1 + 2T + 4D`.
///
/// Negative `c0` (deep in the violation regime) is handled with principal-branch
/// half-integer powers.
pub fn pn_centered_xyt(state: &XYTState, n_max: usize) -> Result<PhotonDistribution> {
    let tr = state.trace();
    let det = state.det();
    let c0 = 1.0 + 2.0 * tr + 4.0 * det;
    if c0 == 0.0 || !c0.is_finite() {
        return Err(Error::SingularDenominator("centered form (1 + 2Tr + 4det = 0)"));
    }
    let minus_u = LogSigned::from_real(-(1.0 - 4.0 * det));
    let v = LogSigned::from_real(tr * tr - 4.0 * det);
    let values = (0..=n_max)
        .map(|n| {
            let mut acc = LogAccumulator::new();
            // only even n - k contribute; H_{2j}(0)^2 = ((2j)!/j!)^2
            for j in 0..=n / 2 {
                let k = n - 2 * j;
                let h2 = 2.0 * (log_factorial(2 * j) - log_factorial(j));
                acc.add(
                    (minus_u.powi(k as u32) * v.powi(j as u32))
                        .scale_log(h2 - log_factorial(k) - 2.0 * log_factorial(2 * j)),
                );
            }
            let pref = LogSigned::real_pow_half(c0, -(2 * n as i64 + 1))
                .expect("c0 is nonzero")
                .scale_log(2f64.ln() + log_factorial(n));
            (pref * acc.finish()).to_complex()
        })
        .collect();
    finish(values, "pn_centered_xyt")
}

fn finish(values: Vec<Complex64>, what: &'static str) -> Result<PhotonDistribution> {
    if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite(what));
    }
    Ok(PhotonDistribution::from_values(values))
}
