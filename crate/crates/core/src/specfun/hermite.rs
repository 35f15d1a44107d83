use num_complex::Complex64;

use super::factorial::log_factorial;
use super::logsigned::{recurrence_log_sequence, LogAccumulator, LogSigned};
use crate::error::{Error, Result};
use crate::gaussian_state::RMatrix;

/// Magnitude above which the plain recurrence gives up.
const PLAIN_LIMIT: f64 = 1e284;

/// Physicists' Hermite polynomial `H_n(z)` by the three-term recurrence.
///
/// Fails with [`Error::Overflow`] once an intermediate exceeds ~1e284;
/// use [`hermite_log`] for those arguments.
pub fn hermite(n: usize, z: Complex64) -> Result<Complex64> {
    let two_z = 2.0 * z;
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = two_z;
    for k in 1..n {
        let next = two_z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        if !(cur.norm() <= PLAIN_LIMIT) {
            return Err(Error::Overflow { what: "hermite", n });
        }
    }
    Ok(cur)
}

/// `H_0(z) ..= H_{n_max}(z)` in log-magnitude form.
pub fn hermite_log_sequence(n_max: usize, z: Complex64) -> Vec<LogSigned> {
    let two_z = 2.0 * z;
    recurrence_log_sequence(n_max, Complex64::new(1.0, 0.0), two_z, |k| {
        (two_z, Complex64::new(-2.0 * k as f64, 0.0))
    })
}

pub fn hermite_log(n: usize, z: Complex64) -> LogSigned {
    hermite_log_sequence(n, z)[n]
}

/// `S_m = (r/2)^{m/2} H_m(w / sqrt(2r))` for `m = 0..=n_max`.
///
/// Runs `S_{m+1} = w S_m - m r S_{m-1}` directly, so it needs no square root of
/// `r` and stays finite at `r = 0` where it reduces to `w^m`.
pub fn scaled_hermite_log_sequence(n_max: usize, w: Complex64, r: Complex64) -> Vec<LogSigned> {
    recurrence_log_sequence(n_max, Complex64::new(1.0, 0.0), w, |k| (w, -(k as f64) * r))
}

/// Diagonal two-index Hermite polynomials `H_nn^{R}` for a fixed matrix and argument.
///
/// The arguments are given as `w = R y`. When `R11 R22 != 0` the sum over
/// products of ordinary Hermite polynomials at `z_j = w_j / sqrt(2 R_jj)` is
/// used; otherwise the branch-free scaled form.
#[derive(Debug, Clone)]
pub struct TwoIndexHermite {
    minus_r12: LogSigned,
    // a[m] * b[m] = (R11 R22 / 4)^{m/2} H_m(z1) H_m(z2)
    a: Vec<LogSigned>,
    b: Vec<LogSigned>,
    degenerate: bool,
}

impl TwoIndexHermite {
    pub fn new(
        r11: Complex64,
        r22: Complex64,
        r12: f64,
        w1: Complex64,
        w2: Complex64,
        n_max: usize,
    ) -> Self {
        let degenerate = r11 == Complex64::new(0.0, 0.0) || r22 == Complex64::new(0.0, 0.0);
        let (a, b) = if degenerate {
            (
                scaled_hermite_log_sequence(n_max, w1, r11),
                scaled_hermite_log_sequence(n_max, w2, r22),
            )
        } else {
            // one root per diagonal entry, shared by z_j and the prefactor
            let root1 = (r11 / 2.0).sqrt();
            let root2 = (r22 / 2.0).sqrt();
            let z1 = w1 / (2.0 * root1);
            let z2 = w2 / (2.0 * root2);
            let h1 = hermite_log_sequence(n_max, z1);
            let h2 = hermite_log_sequence(n_max, z2);
            let c1 = LogSigned::from_complex(root1);
            let c2 = LogSigned::from_complex(root2);
            let scale = |h: Vec<LogSigned>, c: LogSigned| {
                h.into_iter()
                    .enumerate()
                    .map(|(m, v)| v * c.powi(m as u32))
                    .collect::<Vec<_>>()
            };
            (scale(h1, c1), scale(h2, c2))
        };
        Self {
            minus_r12: LogSigned::from_real(-r12),
            a,
            b,
            degenerate,
        }
    }

    pub fn from_rmatrix(r: &RMatrix, n_max: usize) -> Self {
        Self::new(r.r11, r.r22, r.r12, r.w1, r.w2, n_max)
    }

    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Terms `k = 0..=n` of `H_nn / n!^2`, in summation order.
    pub fn diagonal_terms(&self, n: usize) -> Vec<LogSigned> {
        assert!(n <= self.n_max(), "index beyond the precomputed range");
        (0..=n)
            .map(|k| {
                let m = n - k;
                (self.minus_r12.powi(k as u32) * self.a[m] * self.b[m])
                    .scale_log(-log_factorial(k) - 2.0 * log_factorial(m))
            })
            .collect()
    }

    /// `H_nn^{R}` in log form.
    pub fn diagonal_log(&self, n: usize) -> LogSigned {
        let mut acc = LogAccumulator::new();
        for t in self.diagonal_terms(n) {
            acc.add(t);
        }
        acc.finish().scale_log(2.0 * log_factorial(n))
    }
}

/// `H_nn^{R}(y1, y2)` for the matrix in `r`, at arbitrary arguments.
pub fn hermite_2d(n: usize, r: &RMatrix, y1: Complex64, y2: Complex64) -> Result<Complex64> {
    let r12 = Complex64::new(r.r12, 0.0);
    let w1 = r.r11 * y1 + r12 * y2;
    let w2 = r12 * y1 + r.r22 * y2;
    let value = TwoIndexHermite::new(r.r11, r.r22, r.r12, w1, w2, n)
        .diagonal_log(n)
        .to_complex();
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { what: "hermite_2d", n })
    }
}
