use num_complex::Complex64;

use super::{pn_centered_xyt, PhotonDistribution};
use crate::error::{Error, Result};
use crate::gaussian_state::from_tau;
use crate::specfun::{log_factorial, LogAccumulator, LogSigned};

/// Even-index closed form in `tau = 1/4 - (xy - t^2)`, evaluated verbatim:
///
/// `P_2l = (2l)! Σ_i tau^{2(l-i)} N^i / (i! ((2(l-i))!)^2 2^{4i-2l-1/2} y^{2i-2l-1/2} D^{2l+1/2})`
///
/// with `N = 1/16 + t^4 + tau^2 + (t^2 - tau - y^2)/2 - 2 t^2 tau + y^4 - 6 y^2 tau + 2 t^2 y^2`
/// and `D = 1/4 - tau + t^2 + y^2 + y - 4 y tau`. Odd indices are zero.
///
/// This expression is not an exact rewriting of [`pn_centered_xyt`]; it is
/// kept for the closed-form complex example it produces (`tau = 4, y = 5,
/// t = 0`). [`violation_exact`] evaluates the same covariance exactly.
pub fn pn_violation(tau: f64, y: f64, t: f64, n_max: usize) -> Result<PhotonDistribution> {
    from_tau(tau, y, t)?;
    let (t2, y2) = (t * t, y * y);
    let big_n = 1.0 / 16.0 + t2 * t2 + tau * tau + (t2 - tau - y2) / 2.0 - 2.0 * t2 * tau + y2 * y2
        - 6.0 * y2 * tau
        + 2.0 * t2 * y2;
    let big_d = 0.25 - tau + t2 + y2 + y - 4.0 * y * tau;
    if big_d == 0.0 {
        return Err(Error::SingularDenominator("violation form (D = 0)"));
    }
    let tau_l = LogSigned::from_real(tau);
    let n_l = LogSigned::from_real(big_n);
    let ln2 = 2f64.ln();
    let mut values = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for l in 0..=n_max / 2 {
        let mut acc = LogAccumulator::new();
        for i in 0..=l {
            let j = l - i;
            // 2^{-(4i-2l-1/2)} y^{-(2i-2l-1/2)} D^{-(2l+1/2)}
            let y_pow = LogSigned::real_pow_half(y, 4 * j as i64 + 1).expect("y is nonzero");
            let d_pow = LogSigned::real_pow_half(big_d, -(4 * l as i64 + 1)).expect("D is nonzero");
            let term = (tau_l.powi(2 * j as u32) * n_l.powi(i as u32) * y_pow * d_pow).scale_log(
                -(4.0 * i as f64 - 2.0 * l as f64 - 0.5) * ln2
                    - log_factorial(i)
                    - 2.0 * log_factorial(2 * j),
            );
            acc.add(term);
        }
        values[2 * l] = acc.finish().scale_log(log_factorial(2 * l)).to_complex();
    }
    if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite("pn_violation"));
    }
    Ok(PhotonDistribution::from_values(values))
}

/// The exact centered distribution of the covariance `(x(tau), y, t)`.
pub fn violation_exact(tau: f64, y: f64, t: f64, n_max: usize) -> Result<PhotonDistribution> {
    pn_centered_xyt(&from_tau(tau, y, t)?, n_max)
}

/// The rational mean-photon expression `2(x - y) / (6x - 2y + 4xy + 1)`, evaluated as written.
///
/// It does not equal the mean of [`pn_centered_xyt`], which is `(x + y - 1)/2`.
pub fn mean_photon_xyt(x: f64, y: f64) -> Result<f64> {
    let denom = 6.0 * x - 2.0 * y + 4.0 * x * y + 1.0;
    if denom == 0.0 {
        return Err(Error::DivisionByZero("mean_photon_xyt"));
    }
    Ok(2.0 * (x - y) / denom)
}
