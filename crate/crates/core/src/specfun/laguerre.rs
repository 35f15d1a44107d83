use num_complex::Complex64;

use super::logsigned::{recurrence_log_sequence, LogSigned};
use crate::error::{Error, Result};

const ALPHA: f64 = -0.5;

/// Associated Laguerre polynomial `L_n^{-1/2}(x)`.
pub fn laguerre_half(n: usize, x: f64) -> Result<f64> {
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + ALPHA - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + ALPHA - x) * cur - (kf + ALPHA) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if !cur.is_finite() || cur.abs() > 1e284 {
            return Err(Error::Overflow { what: "laguerre_half", n });
        }
    }
    Ok(cur)
}

/// `M_s = beta^s L_s^{-1/2}(gamma / beta)` for `s = 0..=n_max`, complex `beta`, `gamma`.
///
/// Uses `(s+1) M_{s+1} = ((2s+1+a) beta - gamma) M_s - (s+a) beta^2 M_{s-1}`,
/// which stays finite at `beta = 0` (there `M_s = (-gamma)^s / s!`).
pub fn scaled_laguerre_half_log_sequence(
    n_max: usize,
    beta: Complex64,
    gamma: Complex64,
) -> Vec<LogSigned> {
    let beta2 = beta * beta;
    recurrence_log_sequence(
        n_max,
        Complex64::new(1.0, 0.0),
        (1.0 + ALPHA) * beta - gamma,
        |s| {
            let sf = s as f64;
            let inv = 1.0 / (sf + 1.0);
            (
                ((2.0 * sf + 1.0 + ALPHA) * beta - gamma) * inv,
                -(sf + ALPHA) * beta2 * inv,
            )
        },
    )
}

/// `L_0^{-1/2}(x) ..= L_{n_max}^{-1/2}(x)` in log form.
pub fn laguerre_half_log_sequence(n_max: usize, x: Complex64) -> Vec<LogSigned> {
    scaled_laguerre_half_log_sequence(n_max, Complex64::new(1.0, 0.0), x)
}
