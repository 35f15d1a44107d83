use num_complex::Complex64;

use super::logsigned::{LogAccumulator, LogSigned};
use crate::error::{Error, Result};

struct Series {
    sum: LogSigned,
    log_abs_sum: f64,
}

impl Series {
    fn condition(&self) -> f64 {
        if self.sum.is_zero() {
            f64::INFINITY
        } else {
            (self.log_abs_sum - self.sum.log_magnitude()).exp()
        }
    }
}

/// Σ_{j=0..k} (-k)_j (b)_j / ((c)_j j!) z^j, or the index of the first vanishing `c + j`.
fn direct(k: usize, b: f64, c: f64, z: f64) -> std::result::Result<Series, usize> {
    let mut term = LogSigned::ONE;
    let mut sum = LogAccumulator::new();
    let mut abs = LogAccumulator::new();
    sum.add(term);
    abs.add(term);
    let zl = LogSigned::from_real(z);
    for j in 0..k {
        let jf = j as f64;
        if c + jf == 0.0 {
            return Err(j);
        }
        let ratio = LogSigned::from_real((jf - k as f64) * (b + jf) / ((c + jf) * (jf + 1.0)));
        term = term * ratio * zl;
        if term.is_zero() {
            break;
        }
        sum.add(term);
        abs.add(LogSigned::new(term.log_magnitude(), Complex64::new(1.0, 0.0)));
    }
    Ok(Series {
        sum: sum.finish(),
        log_abs_sum: abs.finish().log_magnitude(),
    })
}

/// Terminating Gauss hypergeometric series `2F1(-k, b; c; z)`.
///
/// Evaluated both directly and through the reversal
/// `2F1(-k,b;c;z) = (c-b)_k/(c)_k 2F1(-k,b;b-c-k+1;1-z)`, keeping whichever sum
/// suffers less cancellation. Terms are carried in log form.
pub fn gauss_2f1_terminating(k: usize, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::Domain("non-finite hypergeometric parameter".into()));
    }
    let plain = direct(k, b, c, z).map_err(Error::Pole)?;
    let mut best = plain.sum;
    let plain_condition = plain.condition();
    if plain_condition > 1.0 + 1e-12 && k > 0 {
        let c_rev = b - c - k as f64 + 1.0;
        if let Ok(rev) = direct(k, b, c_rev, 1.0 - z) {
            let mut pref = LogSigned::ONE;
            for i in 0..k {
                let f = i as f64;
                pref = pref * LogSigned::from_real((c - b + f) / (c + f));
            }
            if rev.condition() < plain_condition {
                best = pref * rev.sum;
            }
        }
    }
    let value = best.to_complex().re;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { what: "gauss_2f1_terminating", n: k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::factorial::log_factorial;

    fn central_ratio(k: usize) -> f64 {
        (log_factorial(2 * k) - 2.0 * log_factorial(k) - k as f64 * 4f64.ln()).exp()
    }

    #[test]
    fn short_series() {
        assert_eq!(gauss_2f1_terminating(0, 0.3, 1.7, 9.0).unwrap(), 1.0);
        for z in [-3.0, 0.0, 0.4, 1.0, 2.0] {
            let v = gauss_2f1_terminating(1, 0.5, 1.0, z).unwrap();
            assert!((v - (1.0 - z / 2.0)).abs() < 1e-15 * (1.0 + z.abs()));
        }
        assert!((gauss_2f1_terminating(2, 0.5, 1.0, 1.0).unwrap() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn chu_vandermonde_at_unit_argument() {
        for k in 0..=30 {
            let v = gauss_2f1_terminating(k, 0.5, 1.0, 1.0).unwrap();
            let expected = central_ratio(k);
            assert!((v - expected).abs() <= 1e-12 * expected, "k={k}: {v} vs {expected}");
        }
    }

    #[test]
    fn pole_is_reported() {
        assert_eq!(gauss_2f1_terminating(4, 0.5, -2.0, 0.3), Err(Error::Pole(2)));
        // pole beyond the last term is harmless
        assert!(gauss_2f1_terminating(2, 0.5, -2.0, 0.3).is_ok());
    }

    #[test]
    fn agrees_with_plain_rational_sum() {
        for k in 0..12 {
            for &(b, c, z) in &[(0.5, 1.0, 0.3), (1.5, 2.5, -0.8), (-0.25, 0.75, 0.95)] {
                let mut term = 1.0;
                let mut sum = 1.0;
                for j in 0..k {
                    let jf = j as f64;
                    term *= (jf - k as f64) * (b + jf) / ((c + jf) * (jf + 1.0)) * z;
                    sum += term;
                }
                let v = gauss_2f1_terminating(k, b, c, z).unwrap();
                assert!((v - sum).abs() < 1e-12 * sum.abs().max(1.0), "k={k} b={b} c={c} z={z}");
            }
        }
    }
}
