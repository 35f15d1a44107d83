//! One-mode Gaussian states, the matrix `R` of the two-index Hermite
//! representation, the vacuum probability and the uncertainty check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::LogSigned;

/// Wigner parameters of a one-mode Gaussian state (vacuum covariance is `I/2`).
///
/// Uncertainty-violating covariances are allowed; see [`uncertainty_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OneModeGaussianState {
    pub sigma_pp: f64,
    pub sigma_qq: f64,
    pub sigma_pq: f64,
    pub mean_q: f64,
    pub mean_p: f64,
}

impl OneModeGaussianState {
    pub fn new(sigma_pp: f64, sigma_qq: f64, sigma_pq: f64, mean_q: f64, mean_p: f64) -> Result<Self> {
        let s = Self {
            sigma_pp,
            sigma_qq,
            sigma_pq,
            mean_q,
            mean_p,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn centered(sigma_pp: f64, sigma_qq: f64, sigma_pq: f64) -> Result<Self> {
        Self::new(sigma_pp, sigma_qq, sigma_pq, 0.0, 0.0)
    }

    pub fn vacuum() -> Self {
        Self::coherent(0.0, 0.0)
    }

    pub fn coherent(mean_q: f64, mean_p: f64) -> Self {
        Self {
            sigma_pp: 0.5,
            sigma_qq: 0.5,
            sigma_pq: 0.0,
            mean_q,
            mean_p,
        }
    }

    pub fn thermal(n_bar: f64) -> Self {
        let v = n_bar + 0.5;
        Self {
            sigma_pp: v,
            sigma_qq: v,
            sigma_pq: 0.0,
            mean_q: 0.0,
            mean_p: 0.0,
        }
    }

    /// Squeezed vacuum with `sigma_pp = e^{2r}/2`, `sigma_qq = e^{-2r}/2`.
    pub fn squeezed_vacuum(r: f64) -> Self {
        Self {
            sigma_pp: (2.0 * r).exp() / 2.0,
            sigma_qq: (-2.0 * r).exp() / 2.0,
            sigma_pq: 0.0,
            mean_q: 0.0,
            mean_p: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.sigma_pp, self.sigma_qq, self.sigma_pq, self.mean_q, self.mean_p];
        if all.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Domain("state parameters must be finite".into()))
        }
    }

    pub fn trace(&self) -> f64 {
        self.sigma_pp + self.sigma_qq
    }

    pub fn det(&self) -> f64 {
        self.sigma_pp * self.sigma_qq - self.sigma_pq * self.sigma_pq
    }

    pub fn is_centered(&self) -> bool {
        self.mean_q == 0.0 && self.mean_p == 0.0
    }

    /// `<z> = (<q> + i<p>) / sqrt 2`.
    pub fn mean_z(&self) -> Complex64 {
        Complex64::new(self.mean_q, self.mean_p) / std::f64::consts::SQRT_2
    }
}

/// Centered state with `sigma_pp = x`, `sigma_qq = y`, `sigma_pq = t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XYTState {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl XYTState {
    pub fn new(x: f64, y: f64, t: f64) -> Self {
        Self { x, y, t }
    }

    pub fn to_state(&self) -> OneModeGaussianState {
        OneModeGaussianState {
            sigma_pp: self.x,
            sigma_qq: self.y,
            sigma_pq: self.t,
            mean_q: 0.0,
            mean_p: 0.0,
        }
    }

    pub fn det(&self) -> f64 {
        self.x * self.y - self.t * self.t
    }

    pub fn trace(&self) -> f64 {
        self.x + self.y
    }

    /// `tau = 1/4 - det`; positive values violate the uncertainty relation.
    pub fn tau(&self) -> f64 {
        0.25 - self.det()
    }
}

impl From<XYTState> for OneModeGaussianState {
    fn from(s: XYTState) -> Self {
        s.to_state()
    }
}

/// `x = (1/4 - tau + t^2) / y`, so that `xy - t^2 = 1/4 - tau`.
pub fn from_tau(tau: f64, y: f64, t: f64) -> Result<XYTState> {
    if y == 0.0 {
        return Err(Error::DivisionByZero("from_tau (y = 0)"));
    }
    Ok(XYTState {
        x: (0.25 - tau + t * t) / y,
        y,
        t,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyVerdict {
    pub det_sigma: f64,
    /// `det - 1/4`
    pub slack: f64,
    pub valid: bool,
}

/// Rounding allowance when deciding validity; minimum-uncertainty states built
/// from `exp(2r) * exp(-2r)` land a few ulps below 1/4.
pub const UNCERTAINTY_TOLERANCE: f64 = 1e-12;

pub fn uncertainty_check(state: &OneModeGaussianState) -> UncertaintyVerdict {
    let det_sigma = state.det();
    let slack = det_sigma - 0.25;
    UncertaintyVerdict {
        det_sigma,
        slack,
        valid: slack >= -UNCERTAINTY_TOLERANCE * (1.0 + det_sigma.abs()),
    }
}

/// Matrix `R` and Hermite arguments for [`crate::photon_dist::pn_hermite`].
///
/// `y1`, `y2` follow the displayed formula and are `None` where its
/// denominator `Tr - 2 det - 1/2` vanishes (e.g. coherent states). `w1 = R11 y1 + R12 y2`
/// and `w2 = conj(w1)` are always available in cancelled form and are what the
/// distributions consume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RMatrix {
    pub r11: Complex64,
    pub r22: Complex64,
    pub r12: f64,
    pub y1: Option<Complex64>,
    pub y2: Option<Complex64>,
    pub w1: Complex64,
    pub w2: Complex64,
}

pub fn r_matrix(state: &OneModeGaussianState) -> Result<RMatrix> {
    state.validate()?;
    let tr = state.trace();
    let det = state.det();
    let denom = tr + 2.0 * det + 0.5;
    if denom == 0.0 {
        return Err(Error::SingularDenominator("R matrix (Tr + 2 det + 1/2 = 0)"));
    }
    let diff = state.sigma_pp - state.sigma_qq;
    let r11 = Complex64::new(diff, -2.0 * state.sigma_pq) / denom;
    let r12 = (0.5 - 2.0 * det) / denom;
    let k = Complex64::new(diff, 2.0 * state.sigma_pq);
    let z = state.mean_z();

    let y_denom = tr - 2.0 * det - 0.5;
    let y1 = if state.is_centered() {
        Some(Complex64::new(0.0, 0.0))
    } else if y_denom == 0.0 {
        None
    } else {
        Some(((tr - 1.0) * z.conj() + k * z) / y_denom)
    };
    let w1 = (k.conj() * z.conj() + (tr + 1.0) * z) / denom;
    Ok(RMatrix {
        r11,
        r22: r11.conj(),
        r12,
        y1,
        y2: y1.map(|v| v.conj()),
        w1,
        w2: w1.conj(),
    })
}

/// Vacuum probability, possibly complex outside the physical region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumProbability {
    pub value: Complex64,
    /// `false` when `det + Tr/2 + 1/4 <= 0` and the value is a principal-branch continuation.
    pub physical: bool,
}

pub fn p0(state: &OneModeGaussianState) -> Result<VacuumProbability> {
    Ok(p0_log(state)?.0)
}

/// `P0` together with its log form.
pub(crate) fn p0_log(state: &OneModeGaussianState) -> Result<(VacuumProbability, LogSigned)> {
    state.validate()?;
    let radicand = state.det() + state.trace() / 2.0 + 0.25;
    let root = LogSigned::real_pow_half(radicand, -1)
        .ok_or(Error::SingularDenominator("P0 (det + Tr/2 + 1/4 = 0)"))?;
    let exponent = if state.is_centered() {
        0.0
    } else {
        let (q, p) = (state.mean_q, state.mean_p);
        let num = -p * p * (state.sigma_qq + 0.5) - q * q * (state.sigma_pp + 0.5)
            + 2.0 * state.sigma_pq * q * p;
        num / (2.0 * radicand)
    };
    let log_value = root.scale_log(exponent);
    Ok((
        VacuumProbability {
            value: log_value.to_complex(),
            physical: radicand > 0.0,
        },
        log_value,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn uncertainty_examples() {
        let v = uncertainty_check(&OneModeGaussianState::vacuum());
        assert_eq!(v.slack, 0.0);
        assert!(v.valid);
        let bad = uncertainty_check(&XYTState::new(-0.75, 5.0, 0.0).to_state());
        assert_eq!(bad.slack, -4.0);
        assert!(!bad.valid);
        let th = uncertainty_check(&XYTState::new(1.5, 1.5, 0.0).to_state());
        assert_eq!(th.slack, 2.0);
        assert!(th.valid);
        assert!(uncertainty_check(&OneModeGaussianState::squeezed_vacuum(1.3)).valid);
    }

    #[test]
    fn vacuum_r_matrix() {
        let r = r_matrix(&OneModeGaussianState::vacuum()).unwrap();
        assert_eq!(r.r11, Complex64::new(0.0, 0.0));
        assert_eq!(r.r12, 0.0);
        assert_eq!(r.y1, Some(Complex64::new(0.0, 0.0)));
        assert_eq!(r.w1, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn isotropic_states_have_vanishing_diagonal() {
        let r = r_matrix(&OneModeGaussianState::thermal(2.0)).unwrap();
        assert_eq!(r.r11, Complex64::new(0.0, 0.0));
        assert_eq!(r.r22, Complex64::new(0.0, 0.0));
        // thermal: R12 = (1/2 - 2(nbar + 1/2)^2) / (2nbar + 1 + 2(nbar + 1/2)^2 + 1/2) = -nbar/(nbar+1)
        assert!((r.r12 + 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn coherent_state_needs_the_cancelled_argument() {
        let r = r_matrix(&OneModeGaussianState::coherent(0.8, -0.3)).unwrap();
        assert_eq!(r.y1, None);
        // R = 0 except R12 = 0, w = <z>
        let z = Complex64::new(0.8, -0.3) / std::f64::consts::SQRT_2;
        assert!((r.w1 - z).norm() < 1e-15);
    }

    #[test]
    fn singular_denominator() {
        // Tr + 2 det + 1/2 = 0 with x = y = -1/2, t = 0: -1 + 1/2 + 1/2 = 0
        let s = OneModeGaussianState::centered(-0.5, -0.5, 0.0).unwrap();
        assert!(matches!(r_matrix(&s), Err(Error::SingularDenominator(_))));
        assert!(matches!(p0(&s), Err(Error::SingularDenominator(_))));
    }

    #[test]
    fn p0_examples() {
        assert_eq!(p0(&OneModeGaussianState::vacuum()).unwrap().value, Complex64::new(1.0, 0.0));
        for n_bar in [0.0, 0.5, 1.0, 7.25] {
            let v = p0(&OneModeGaussianState::thermal(n_bar)).unwrap();
            assert!((v.value.re - 1.0 / (n_bar + 1.0)).abs() < 1e-15);
            assert!(v.physical);
        }
        for r in [0.0, 0.3, 1.0, 2.5] {
            let v = p0(&OneModeGaussianState::squeezed_vacuum(r)).unwrap();
            assert!((v.value.re - 1.0 / f64::cosh(r)).abs() < 1e-14);
        }
        let (q, p) = (1.1, -0.4);
        let coh = p0(&OneModeGaussianState::coherent(q, p)).unwrap();
        assert!((coh.value.re - (-(q * q + p * p) / 2.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn p0_matches_xyt_form() {
        for &(x, y, t) in &[(0.7, 1.3, 0.2), (2.0, 0.9, -0.3), (3.0, 3.0, 0.0)] {
            let v = p0(&XYTState::new(x, y, t).to_state()).unwrap().value.re;
            let expected = 2.0 * (2.0 * x - 4.0 * t * t + 2.0 * y + 4.0 * x * y + 1.0f64).powf(-0.5);
            assert!((v - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn p0_in_violation_regime_is_tagged_complex() {
        let s = from_tau(4.0, 5.0, 0.0).unwrap().to_state();
        let v = p0(&s).unwrap();
        assert!(!v.physical);
        // radicand = -15/4 + 17/8 + 1/4 = -11/8
        assert!(v.value.re.abs() < 1e-17);
        assert!((v.value.im + (8.0f64 / 11.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn from_tau_examples() {
        assert_eq!(from_tau(0.0, 0.5, 0.0).unwrap(), XYTState::new(0.5, 0.5, 0.0));
        assert_eq!(from_tau(4.0, 5.0, 0.0).unwrap().x, -0.75);
        let s = from_tau(0.0, 2.0, 0.5).unwrap();
        assert_eq!(s.x, 0.25);
        assert_eq!(uncertainty_check(&s.to_state()).slack, 0.0);
        assert!(matches!(from_tau(1.0, 0.0, 0.0), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn from_tau_slack_is_minus_tau() {
        for i in 0..=100 {
            let tau = i as f64 * 0.1;
            for y in [0.5, 1.0, 5.0] {
                for t in [0.0, 0.3] {
                    let s = from_tau(tau, y, t).unwrap().to_state();
                    assert!((uncertainty_check(&s).slack + tau).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn uncancelled_arguments_agree_with_cancelled_form() {
        let s = OneModeGaussianState::new(1.3, 0.6, 0.25, 0.9, -1.4).unwrap();
        let r = r_matrix(&s).unwrap();
        let (y1, y2) = (r.y1.unwrap(), r.y2.unwrap());
        let w1 = r.r11 * y1 + r.r12 * y2;
        assert!((w1 - r.w1).norm() < 1e-14 * r.w1.norm());
    }

    #[test]
    fn json_descriptor_requires_all_fields() {
        let ok: OneModeGaussianState = serde_json::from_str(
            r#"{"sigma_pp":0.5,"sigma_qq":0.5,"sigma_pq":0,"mean_q":0,"mean_p":0}"#,
        )
        .unwrap();
        assert_eq!(ok, OneModeGaussianState::vacuum());
        assert!(serde_json::from_str::<OneModeGaussianState>(r#"{"sigma_pp":0.5,"sigma_qq":0.5,"sigma_pq":0}"#).is_err());
    }

    fn valid_state() -> impl Strategy<Value = OneModeGaussianState> {
        (0.5f64..3.0, 0.5f64..3.0, -0.4f64..0.4, -2.0f64..2.0, -2.0f64..2.0).prop_filter_map(
            "uncertainty",
            |(x, y, t, q, p)| {
                let s = OneModeGaussianState::new(x, y, t, q, p).ok()?;
                (s.det() >= 0.25).then_some(s)
            },
        )
    }

    proptest! {
        #[test]
        fn conjugate_structure(s in valid_state()) {
            let r = r_matrix(&s).unwrap();
            prop_assert!((r.r22 - r.r11.conj()).norm() < 1e-14);
            prop_assert!((r.w2 - r.w1.conj()).norm() < 1e-14);
            if let (Some(a), Some(b)) = (r.y1, r.y2) {
                prop_assert!((b - a.conj()).norm() < 1e-14 * a.norm().max(1.0));
            }
        }

        #[test]
        fn p0_is_a_probability(s in valid_state()) {
            let v = p0(&s).unwrap();
            prop_assert!(v.physical);
            prop_assert!(v.value.im == 0.0);
            prop_assert!(v.value.re > 0.0 && v.value.re <= 1.0 + 1e-15);
            let is_vacuum = s.sigma_pp == 0.5 && s.sigma_qq == 0.5 && s.sigma_pq == 0.0 && s.is_centered();
            if !is_vacuum {
                prop_assert!(v.value.re < 1.0);
            }
        }
    }
}
