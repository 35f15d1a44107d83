//! Log-magnitude / unit-phase representation for factorial-heavy terms.

use std::ops::{Div, Mul};

use num_complex::Complex64;

/// A complex number stored as `exp(log_magnitude) * phase` with `|phase| = 1`.
///
/// Zero is represented by `log_magnitude = -inf` and `phase = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSigned {
    log_magnitude: f64,
    phase: Complex64,
}

impl LogSigned {
    pub const ZERO: LogSigned = LogSigned {
        log_magnitude: f64::NEG_INFINITY,
        phase: Complex64::new(0.0, 0.0),
    };

    pub const ONE: LogSigned = LogSigned {
        log_magnitude: 0.0,
        phase: Complex64::new(1.0, 0.0),
    };

    /// Builds a value from a log-magnitude and an arbitrary nonzero phase factor
    /// (renormalized to unit modulus). A zero phase yields [`LogSigned::ZERO`].
    pub fn new(log_magnitude: f64, phase: Complex64) -> Self {
        let norm = phase.norm();
        if norm == 0.0 || log_magnitude == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            log_magnitude,
            phase: phase / norm,
        }
    }

    pub fn from_real(x: f64) -> Self {
        if x == 0.0 {
            return Self::ZERO;
        }
        Self {
            log_magnitude: x.abs().ln(),
            phase: Complex64::new(x.signum(), 0.0),
        }
    }

    pub fn from_complex(z: Complex64) -> Self {
        let norm = z.norm();
        if norm == 0.0 {
            return Self::ZERO;
        }
        Self {
            log_magnitude: norm.ln(),
            phase: z / norm,
        }
    }

    /// Principal-branch `base^(twice_exponent / 2)` for a real base.
    ///
    /// Negative bases pick up the phase `i^twice_exponent` exactly, so
    /// `(-a)^(2l + 1/2)` is `a^(2l + 1/2) * i` with no rounding in the phase.
    /// Returns `None` for a zero base raised to a negative power.
    pub fn real_pow_half(base: f64, twice_exponent: i64) -> Option<Self> {
        if twice_exponent == 0 {
            return Some(Self::ONE);
        }
        if base == 0.0 {
            return if twice_exponent > 0 {
                Some(Self::ZERO)
            } else {
                None
            };
        }
        let log_magnitude = 0.5 * twice_exponent as f64 * base.abs().ln();
        let phase = if base > 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            match twice_exponent.rem_euclid(4) {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            }
        };
        Some(Self {
            log_magnitude,
            phase,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.log_magnitude == f64::NEG_INFINITY
    }

    pub fn log_magnitude(&self) -> f64 {
        self.log_magnitude
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    /// Multiplies by `exp(log_factor)`.
    pub fn scale_log(self, log_factor: f64) -> Self {
        if self.is_zero() {
            return self;
        }
        Self {
            log_magnitude: self.log_magnitude + log_factor,
            phase: self.phase,
        }
    }

    pub fn conj(self) -> Self {
        Self {
            log_magnitude: self.log_magnitude,
            phase: self.phase.conj(),
        }
    }

    pub fn powi(self, k: u32) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        if self.is_zero() {
            return self;
        }
        Self {
            log_magnitude: self.log_magnitude * k as f64,
            phase: self.phase.powu(k),
        }
    }

    /// `exp(log_magnitude) * phase`; may overflow to infinity or underflow to zero.
    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        self.phase * self.log_magnitude.exp()
    }
}

impl Mul for LogSigned {
    type Output = LogSigned;

    fn mul(self, rhs: LogSigned) -> LogSigned {
        if self.is_zero() || rhs.is_zero() {
            return LogSigned::ZERO;
        }
        let phase = self.phase * rhs.phase;
        LogSigned {
            log_magnitude: self.log_magnitude + rhs.log_magnitude,
            phase: phase / phase.norm(),
        }
    }
}

impl Div for LogSigned {
    type Output = LogSigned;

    fn div(self, rhs: LogSigned) -> LogSigned {
        assert!(!rhs.is_zero(), "LogSigned division by zero");
        if self.is_zero() {
            return LogSigned::ZERO;
        }
        let phase = self.phase * rhs.phase.conj();
        LogSigned {
            log_magnitude: self.log_magnitude - rhs.log_magnitude,
            phase: phase / phase.norm(),
        }
    }
}

/// Sums [`LogSigned`] terms relative to a running maximum magnitude.
#[derive(Debug, Clone, Copy)]
pub struct LogAccumulator {
    scale: f64,
    acc: Complex64,
}

impl Default for LogAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl LogAccumulator {
    pub fn new() -> Self {
        Self {
            scale: f64::NEG_INFINITY,
            acc: Complex64::new(0.0, 0.0),
        }
    }

    pub fn add(&mut self, term: LogSigned) {
        if term.is_zero() {
            return;
        }
        if self.scale == f64::NEG_INFINITY {
            self.scale = term.log_magnitude;
            self.acc = term.phase;
        } else if term.log_magnitude > self.scale {
            self.acc = self.acc * (self.scale - term.log_magnitude).exp() + term.phase;
            self.scale = term.log_magnitude;
        } else {
            self.acc += term.phase * (term.log_magnitude - self.scale).exp();
        }
    }

    pub fn finish(self) -> LogSigned {
        if self.scale == f64::NEG_INFINITY {
            return LogSigned::ZERO;
        }
        LogSigned::from_complex(self.acc).scale_log(self.scale)
    }
}

impl FromIterator<LogSigned> for LogSigned {
    fn from_iter<I: IntoIterator<Item = LogSigned>>(iter: I) -> Self {
        let mut acc = LogAccumulator::new();
        for t in iter {
            acc.add(t);
        }
        acc.finish()
    }
}

/// Runs the three-term recurrence `y[k+1] = a_k y[k] + b_k y[k-1]` for `k >= 1`,
/// rescaling on the fly so that no intermediate overflows.
pub(crate) fn recurrence_log_sequence<F>(
    n_max: usize,
    y0: Complex64,
    y1: Complex64,
    mut coeffs: F,
) -> Vec<LogSigned>
where
    F: FnMut(usize) -> (Complex64, Complex64),
{
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(LogSigned::from_complex(y0));
    if n_max == 0 {
        return out;
    }
    out.push(LogSigned::from_complex(y1));
    let mut scale = 0.0_f64;
    let (mut prev, mut cur) = (y0, y1);
    for k in 1..n_max {
        let (a, b) = coeffs(k);
        let next = a * cur + b * prev;
        prev = cur;
        cur = next;
        let big = cur.norm().max(prev.norm());
        if big > 1e100 || (big < 1e-100 && big > 0.0) {
            cur /= big;
            prev /= big;
            scale += big.ln();
        }
        out.push(LogSigned::from_complex(cur).scale_log(scale));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_values() {
        for z in [
            Complex64::new(3.5, -1.0),
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, 1e-200),
        ] {
            let back = LogSigned::from_complex(z).to_complex();
            assert!((back - z).norm() <= 1e-13 * z.norm());
        }
        assert!(LogSigned::from_real(0.0).is_zero());
        assert_eq!(LogSigned::ZERO.to_complex(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn half_integer_powers_of_negative_bases_are_exact_in_phase() {
        let v = LogSigned::real_pow_half(-215.0 / 4.0, 5).unwrap();
        assert_eq!(v.phase(), Complex64::new(0.0, 1.0));
        assert!((v.log_magnitude() - 2.5 * (215.0_f64 / 4.0).ln()).abs() < 1e-14);
        let w = LogSigned::real_pow_half(-4.0, -1).unwrap();
        assert_eq!(w.phase(), Complex64::new(0.0, -1.0));
        assert!((w.to_complex() - Complex64::new(0.0, -0.5)).norm() < 1e-16);
        assert!(LogSigned::real_pow_half(0.0, -1).is_none());
        assert_eq!(LogSigned::real_pow_half(0.0, 0), Some(LogSigned::ONE));
    }

    #[test]
    fn accumulator_handles_wide_dynamic_range() {
        let terms = [
            LogSigned::from_real(1.0).scale_log(800.0),
            LogSigned::from_real(-1.0).scale_log(800.0),
            LogSigned::from_real(2.0),
        ];
        let s: LogSigned = terms.into_iter().collect();
        assert!((s.to_complex().re - 2.0).abs() < 1e-10 || s.is_zero());
        let s: LogSigned = [LogSigned::from_real(3.0), LogSigned::from_real(4.0).scale_log(-700.0)]
            .into_iter()
            .collect();
        assert!((s.to_complex().re - 3.0).abs() < 1e-15);
    }

    #[test]
    fn recurrence_rescales_without_overflow() {
        // y[k+1] = 10 y[k] grows as 10^k
        let seq = recurrence_log_sequence(400, Complex64::new(1.0, 0.0), Complex64::new(10.0, 0.0), |_| {
            (Complex64::new(10.0, 0.0), Complex64::new(0.0, 0.0))
        });
        let ln10 = 10f64.ln();
        assert!((seq[400].log_magnitude() - 400.0 * ln10).abs() < 1e-9);
    }
}
