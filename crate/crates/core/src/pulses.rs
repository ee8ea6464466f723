//! Non-stationary signal models and their imaginary-time machinery.
//!
//! Three shapes are supported:
//! - quartic-Gaussian `-eps * exp(-Omega^4 t^4 - 2 Omega^4 theta^2 t^2)`,
//!   even in t; on the imaginary axis its profile peaks at `xi = theta`
//!   with enhancement `exp(Omega^4 theta^4)`, which is what makes a weak
//!   lab signal act as an instant kick;
//! - Lorentz-Gaussian `-eps * t theta / (t^2 + theta^2) * exp(-Omega^2 t^2)`,
//!   odd in t, with simple poles at `t = +-i theta` that deliver the kick
//!   for smooth potentials;
//! - odd-Gaussian `-eps * (t/theta) * exp(-Omega^2 t^2)`, a pole-free
//!   negative control: it stays within 10% of the Lorentz-Gaussian on the
//!   real axis yet produces no resonance.

use crate::numerics::{integrate, integrate_complex, QuadratureError};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PulseError {
    #[error("invalid pulse parameter: {0}")]
    InvalidParameter(String),
    #[error("imaginary-time profile quadrature failed: {0}")]
    Quadrature(#[from] QuadratureError),
    #[error("operation requires a {required} pulse, got {got}")]
    WrongShape {
        required: &'static str,
        got: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PulseShape {
    QuarticGaussian,
    LorentzGaussian,
    OddGaussian,
}

impl PulseShape {
    pub fn name(self) -> &'static str {
        match self {
            PulseShape::QuarticGaussian => "quartic-gaussian",
            PulseShape::LorentzGaussian => "lorentz-gaussian",
            PulseShape::OddGaussian => "odd-gaussian",
        }
    }
}

/// An immutable signal: shape, field amplitude `eps`, inverse time `omega`,
/// pole/width time `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pulse {
    pub shape: PulseShape,
    pub eps: f64,
    pub omega: f64,
    pub theta: f64,
}

impl Pulse {
    pub fn new(shape: PulseShape, eps: f64, omega: f64, theta: f64) -> Result<Self, PulseError> {
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(PulseError::InvalidParameter(format!(
                "amplitude must be >= 0, got {eps}"
            )));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(PulseError::InvalidParameter(format!(
                "inverse time Omega must be > 0, got {omega}"
            )));
        }
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(PulseError::InvalidParameter(format!(
                "pole time theta must be > 0, got {theta}"
            )));
        }
        Ok(Pulse {
            shape,
            eps,
            omega,
            theta,
        })
    }

    pub fn quartic_gaussian(eps: f64, omega: f64, theta: f64) -> Result<Self, PulseError> {
        Pulse::new(PulseShape::QuarticGaussian, eps, omega, theta)
    }

    pub fn lorentz_gaussian(eps: f64, omega: f64, theta: f64) -> Result<Self, PulseError> {
        Pulse::new(PulseShape::LorentzGaussian, eps, omega, theta)
    }

    pub fn odd_gaussian(eps: f64, omega: f64, theta: f64) -> Result<Self, PulseError> {
        Pulse::new(PulseShape::OddGaussian, eps, omega, theta)
    }

    /// Quartic-Gaussian with `eps` chosen so the effective step amplitude
    /// is `lambda` against the static field `e0` (inversion of the
    /// instant-signal formula).
    pub fn quartic_from_lambda(
        lambda: f64,
        omega: f64,
        theta: f64,
        e0: f64,
    ) -> Result<Self, PulseError> {
        if lambda < 0.0 {
            return Err(PulseError::InvalidParameter(format!(
                "lambda must be >= 0, got {lambda}"
            )));
        }
        let o2t2 = omega * omega * theta * theta;
        // eps = lambda * 2 Omega^2 theta^2 e0 exp(-Omega^4 theta^4) / sqrt(pi)
        let ln_eps = lambda.ln() + (2.0 * o2t2 * e0 / PI.sqrt()).ln() - o2t2 * o2t2;
        let eps = if lambda == 0.0 { 0.0 } else { ln_eps.exp() };
        Pulse::quartic_gaussian(eps, omega, theta)
    }

    pub fn omega2_theta2(&self) -> f64 {
        self.omega * self.omega * self.theta * self.theta
    }

    pub fn omega4_theta4(&self) -> f64 {
        self.omega2_theta2().powi(2)
    }

    /// True when the pulse qualifies as an instant signal for its shape
    /// (`Omega^4 theta^4 >= 4` for the quartic envelope, `Omega^2 theta^2
    /// >= 4` for the Lorentz one).
    pub fn instant_regime_ok(&self) -> bool {
        match self.shape {
            PulseShape::QuarticGaussian => self.omega4_theta4() >= 4.0,
            PulseShape::LorentzGaussian | PulseShape::OddGaussian => self.omega2_theta2() >= 4.0,
        }
    }

    /// Field value at real time `t`.
    pub fn evaluate(&self, t: f64) -> f64 {
        let th = self.theta;
        match self.shape {
            PulseShape::QuarticGaussian => {
                let o4 = self.omega.powi(4);
                -self.eps * (-o4 * t.powi(4) - 2.0 * o4 * th * th * t * t).exp()
            }
            PulseShape::LorentzGaussian => {
                -self.eps * t * th / (t * t + th * th) * (-self.omega * self.omega * t * t).exp()
            }
            PulseShape::OddGaussian => {
                -self.eps * (t / th) * (-self.omega * self.omega * t * t).exp()
            }
        }
    }

    /// Analytic continuation of the field to complex time.
    pub fn evaluate_complex(&self, t: Complex64) -> Complex64 {
        let th = self.theta;
        match self.shape {
            PulseShape::QuarticGaussian => {
                let o4 = self.omega.powi(4);
                let t2 = t * t;
                -(self.eps) * (-o4 * t2 * t2 - 2.0 * o4 * th * th * t2).exp()
            }
            PulseShape::LorentzGaussian => {
                -(self.eps) * t * th / (t * t + th * th) * (-self.omega * self.omega * t * t).exp()
            }
            PulseShape::OddGaussian => {
                -(self.eps) * (t / th) * (-self.omega * self.omega * t * t).exp()
            }
        }
    }

    /// Reduced profile h(t) = field / e0 as a callable.
    pub fn reduced_profile(&self, e0: f64) -> impl Fn(f64) -> f64 + '_ {
        move |t| self.evaluate(t) / e0
    }

    /// Effective step amplitude of a quartic-Gaussian against `e0`:
    /// `lambda = sqrt(pi)/(2 Omega^2 theta^2) * (eps/e0) * exp(Omega^4 theta^4)`.
    /// Computed in log form so large exponents do not overflow.
    pub fn effective_amplitude(&self, e0: f64) -> Result<f64, PulseError> {
        if self.shape != PulseShape::QuarticGaussian {
            return Err(PulseError::WrongShape {
                required: "quartic-gaussian",
                got: self.shape.name(),
            });
        }
        if self.eps == 0.0 {
            return Ok(0.0);
        }
        let o2t2 = self.omega2_theta2();
        let ln_lambda = (PI.sqrt() / (2.0 * o2t2)).ln() + (self.eps / e0).ln() + o2t2 * o2t2;
        Ok(ln_lambda.exp())
    }

    /// Magnitude of the momentum impulse delivered by a Lorentz-Gaussian
    /// instant signal: `pi theta eps exp(Omega^2 theta^2)`, the full residue
    /// of the field at its pole `t = i theta`.
    pub fn contour_kick(&self) -> Result<f64, PulseError> {
        if self.shape != PulseShape::LorentzGaussian {
            return Err(PulseError::WrongShape {
                required: "lorentz-gaussian",
                got: self.shape.name(),
            });
        }
        if self.eps == 0.0 {
            return Ok(0.0);
        }
        Ok((PI * self.theta * self.eps).ln().exp() * self.omega2_theta2().exp())
    }

    /// Numerical residue oracle: integrate the analytic continuation around
    /// a circle of radius `r` centered at `t = i theta` and return the loop
    /// integral (should be `-i pi theta eps exp(Omega^2 theta^2)`).
    pub fn contour_kick_numeric(&self, r: f64) -> Result<Complex64, PulseError> {
        let center = Complex64::new(0.0, self.theta);
        let value = integrate_complex(
            |phi| {
                let t = center + r * Complex64::new(phi.cos(), phi.sin());
                let dt = r * Complex64::new(-phi.sin(), phi.cos());
                self.evaluate_complex(t) * dt
            },
            0.0,
            2.0 * PI,
            1e-12,
        )?;
        Ok(value)
    }

    /// Fourier component of a Lorentz-Gaussian at `omega_q > 0`:
    /// pole term plus Gaussian-saddle term of the asymptotic expansion.
    /// Within 5% of the saddle/pole coalescence `omega_q = 2 Omega^2 theta`,
    /// where the asymptotic form has a spurious pole, the full numerical
    /// Fourier integral is evaluated instead and flagged.
    pub fn fourier_component(&self, omega_q: f64) -> Result<FourierComponent, PulseError> {
        if self.shape != PulseShape::LorentzGaussian {
            return Err(PulseError::WrongShape {
                required: "lorentz-gaussian",
                got: self.shape.name(),
            });
        }
        assert!(omega_q > 0.0, "frequency must be positive");
        let coalesce = 2.0 * self.omega * self.omega * self.theta;
        let near = (omega_q - coalesce).abs() < 0.05 * coalesce;
        let pole = self.fourier_pole_term(omega_q);
        if near {
            let value = self.fourier_numeric(omega_q)?;
            return Ok(FourierComponent {
                value,
                pole_term: pole,
                saddle_term: value - pole,
                near_coalescence: true,
            });
        }
        let saddle = {
            let o = self.omega;
            let num = 2.0 * PI.sqrt() * self.eps * omega_q * self.theta * o;
            let den = omega_q * omega_q - coalesce * coalesce;
            Complex64::i() * num / den * (-omega_q * omega_q / (4.0 * o * o)).exp()
        };
        Ok(FourierComponent {
            value: pole + saddle,
            pole_term: pole,
            saddle_term: saddle,
            near_coalescence: false,
        })
    }

    /// Pole term of the Fourier component: nonzero only once the shifted
    /// saddle path crosses the pole, `theta < omega_q / (2 Omega^2)`.
    pub fn fourier_pole_term(&self, omega_q: f64) -> Complex64 {
        if self.theta < omega_q / (2.0 * self.omega * self.omega) {
            let magnitude =
                PI * self.theta * self.eps * (self.omega2_theta2() - omega_q * self.theta).exp();
            -Complex64::i() * magnitude
        } else {
            Complex64::ZERO
        }
    }

    /// Direct numerical Fourier transform `int E(t) e^{i w t} dt` (oracle
    /// for the asymptotic form). The contour is shifted to `Im t = c` with
    /// `c` at the Gaussian saddle height (kept below the pole), which
    /// removes the e^{-w c} cancellation that would otherwise drown the
    /// exponentially small answer in roundoff; by analyticity the value is
    /// unchanged since no pole is crossed.
    pub fn fourier_numeric(&self, omega_q: f64) -> Result<Complex64, PulseError> {
        let saddle_height = omega_q / (2.0 * self.omega * self.omega);
        let c = saddle_height.min(0.9 * self.theta);
        let half_window = 10.0 / self.omega + 3.0 * self.theta;
        Ok(integrate_complex(
            |x| {
                let t = Complex64::new(x, c);
                (Complex64::i() * omega_q * t).exp() * self.evaluate_complex(t)
            },
            -half_window,
            half_window,
            1e-11,
        )?)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FourierComponent {
    pub value: Complex64,
    pub pole_term: Complex64,
    pub saddle_term: Complex64,
    /// True when evaluated numerically inside the coalescence window.
    pub near_coalescence: bool,
}

/// Imaginary-time machinery shared by the step profile and smooth pulses:
/// the reduced profile along `t = i xi` and its integrals.
pub trait ImaginaryTimeProfile {
    /// Reduced field on the imaginary axis, `h(xi) = E(i xi)/E0` (real for
    /// even pulses). The idealized step returns 0: its kick lives entirely
    /// in the integrals.
    fn h(&self, xi: f64) -> f64;

    /// `H(tau) = int_0^tau h(xi) dxi`.
    fn h_integral(&self, tau: f64) -> Result<f64, PulseError>;

    /// `int_0^tau xi h(xi) dxi` (enters the coordinate map).
    fn h_weighted_integral(&self, tau: f64) -> Result<f64, PulseError>;

    /// `int_0^tau H(xi) dxi = int_0^tau (tau - xi) h(xi) dxi`.
    fn h_double_integral(&self, tau: f64) -> Result<f64, PulseError>;

    /// Reduced imaginary-time velocity profile `phi(tau) = tau + H(tau)`.
    fn phi(&self, tau: f64) -> Result<f64, PulseError> {
        Ok(tau + self.h_integral(tau)?)
    }
}

/// Idealized instant-signal profile: `phi(tau) = tau - lambda theta`
/// past the kick at `tau = theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepProfile {
    pub lambda: f64,
    pub theta: f64,
}

impl StepProfile {
    pub fn new(lambda: f64, theta: f64) -> Result<Self, PulseError> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(PulseError::InvalidParameter(format!(
                "lambda must be >= 0, got {lambda}"
            )));
        }
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(PulseError::InvalidParameter(format!(
                "theta must be > 0, got {theta}"
            )));
        }
        Ok(StepProfile { lambda, theta })
    }

    /// Reduce a quartic-Gaussian pulse to its effective step.
    pub fn from_pulse(pulse: &Pulse, e0: f64) -> Result<Self, PulseError> {
        StepProfile::new(pulse.effective_amplitude(e0)?, pulse.theta)
    }
}

impl ImaginaryTimeProfile for StepProfile {
    fn h(&self, _xi: f64) -> f64 {
        0.0
    }

    fn h_integral(&self, tau: f64) -> Result<f64, PulseError> {
        Ok(if tau > self.theta {
            -self.lambda * self.theta
        } else {
            0.0
        })
    }

    fn h_weighted_integral(&self, tau: f64) -> Result<f64, PulseError> {
        // All the weight sits at xi = theta.
        Ok(if tau > self.theta {
            -self.lambda * self.theta * self.theta
        } else {
            0.0
        })
    }

    fn h_double_integral(&self, tau: f64) -> Result<f64, PulseError> {
        Ok(if tau > self.theta {
            -self.lambda * self.theta * (tau - self.theta)
        } else {
            0.0
        })
    }
}

/// Imaginary-axis profile of a quartic-Gaussian pulse against a static
/// field: `h(xi) = -(eps/e0) exp(-Omega^4 xi^4 + 2 Omega^4 theta^2 xi^2)`,
/// evaluated in log form because the enhancement spans many orders of
/// magnitude. Integrals use adaptive quadrature at 1e-10 relative.
#[derive(Debug, Clone, Copy)]
pub struct QuarticImaginaryProfile {
    ln_ratio: f64,
    omega: f64,
    theta: f64,
    zero: bool,
}

impl QuarticImaginaryProfile {
    pub fn new(pulse: &Pulse, e0: f64) -> Result<Self, PulseError> {
        if pulse.shape != PulseShape::QuarticGaussian {
            return Err(PulseError::WrongShape {
                required: "quartic-gaussian",
                got: pulse.shape.name(),
            });
        }
        Ok(QuarticImaginaryProfile {
            ln_ratio: if pulse.eps == 0.0 {
                f64::NEG_INFINITY
            } else {
                (pulse.eps / e0).ln()
            },
            omega: pulse.omega,
            theta: pulse.theta,
            zero: pulse.eps == 0.0,
        })
    }

    fn exponent(&self, xi: f64) -> f64 {
        let o4 = self.omega.powi(4);
        -o4 * xi.powi(4) + 2.0 * o4 * self.theta * self.theta * xi * xi
    }
}

impl ImaginaryTimeProfile for QuarticImaginaryProfile {
    fn h(&self, xi: f64) -> f64 {
        if self.zero {
            0.0
        } else {
            -(self.ln_ratio + self.exponent(xi)).exp()
        }
    }

    fn h_integral(&self, tau: f64) -> Result<f64, PulseError> {
        if self.zero || tau == 0.0 {
            return Ok(0.0);
        }
        Ok(integrate(|xi| self.h(xi), 0.0, tau, 1e-10)?)
    }

    fn h_weighted_integral(&self, tau: f64) -> Result<f64, PulseError> {
        if self.zero || tau == 0.0 {
            return Ok(0.0);
        }
        Ok(integrate(|xi| xi * self.h(xi), 0.0, tau, 1e-10)?)
    }

    fn h_double_integral(&self, tau: f64) -> Result<f64, PulseError> {
        if self.zero || tau == 0.0 {
            return Ok(0.0);
        }
        Ok(integrate(|xi| (tau - xi) * self.h(xi), 0.0, tau, 1e-10)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lg(eps: f64, o2t2: f64, theta: f64) -> Pulse {
        Pulse::lorentz_gaussian(eps, o2t2.sqrt() / theta, theta).unwrap()
    }

    #[test]
    fn quartic_at_zero_is_minus_eps() {
        let p = Pulse::quartic_gaussian(0.3, 1.0, 1.0).unwrap();
        assert_relative_eq!(p.evaluate(0.0), -0.3);
    }

    #[test]
    fn lorentz_values() {
        let p = lg(1.0, 15.0, 1.0);
        assert_eq!(p.evaluate(0.0), 0.0);
        // at t = theta: -(eps/2) exp(-Omega^2 theta^2)
        assert_relative_eq!(
            p.evaluate(1.0),
            -0.5 * (-15.0f64).exp(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn reduced_profile_examples() {
        let p = Pulse::quartic_gaussian(0.0, 1.0, 1.0).unwrap();
        let h = p.reduced_profile(2.0);
        assert_eq!(h(0.3), 0.0);

        let p = Pulse::quartic_gaussian(2.0, 1.0, 1.0).unwrap();
        let h = p.reduced_profile(2.0);
        assert_relative_eq!(h(0.0), -1.0);

        let p = lg(2.0, 15.0, 1.0);
        let h = p.reduced_profile(1.0);
        assert_relative_eq!(h(1.0), -(-15.0f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn symmetry() {
        let q = Pulse::quartic_gaussian(0.7, 1.3, 0.9).unwrap();
        let l = lg(0.7, 9.0, 0.9);
        for i in 0..50 {
            let t = -3.0 + 0.123 * i as f64;
            assert_relative_eq!(q.evaluate(-t), q.evaluate(t), max_relative = 1e-14);
            assert_relative_eq!(l.evaluate(-t), -l.evaluate(t), max_relative = 1e-14);
        }
    }

    #[test]
    fn effective_amplitude_example() {
        // eps/E0 = 1e-6 at Omega^2 theta^2 = 4: lambda = sqrt(pi)/8 * 1e-6 * e^16
        let p = Pulse::quartic_gaussian(1e-6, 2.0, 1.0).unwrap();
        let lambda = p.effective_amplitude(1.0).unwrap();
        assert_relative_eq!(
            lambda,
            PI.sqrt() / 8.0 * 1e-6 * 16.0f64.exp(),
            max_relative = 1e-12
        );
        assert!((lambda - 1.969).abs() < 2e-3);
    }

    #[test]
    fn lambda_inversion_round_trip() {
        let lambda_t = 1.0 - 1.0 / 3.0f64.sqrt();
        let p = Pulse::quartic_from_lambda(lambda_t, 2.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(p.eps, 2.1468e-7, max_relative = 1e-3);
        assert_relative_eq!(
            p.effective_amplitude(1.0).unwrap(),
            lambda_t,
            max_relative = 1e-12
        );
        // zero amplitude maps to lambda = 0
        let p0 = Pulse::quartic_gaussian(0.0, 2.0, 1.0).unwrap();
        assert_eq!(p0.effective_amplitude(1.0).unwrap(), 0.0);
    }

    #[test]
    fn contour_kick_closed_form() {
        let p = lg(1.0, 15.0, 1.0);
        assert_relative_eq!(
            p.contour_kick().unwrap(),
            PI * 15.0f64.exp(),
            max_relative = 1e-12
        );
        assert!((p.contour_kick().unwrap() - 1.027e7).abs() / 1.027e7 < 1e-3);
        let p0 = lg(0.0, 15.0, 1.0);
        assert_eq!(p0.contour_kick().unwrap(), 0.0);
    }

    #[test]
    fn contour_kick_residue_oracle() {
        let p = lg(0.3, 15.0, 1.0);
        let loop_integral = p.contour_kick_numeric(0.03).unwrap();
        // Full loop = -i pi theta eps e^{O2t2}
        let expected = p.contour_kick().unwrap();
        assert_relative_eq!(loop_integral.norm(), expected, max_relative = 1e-6);
        assert!((loop_integral.im + expected).abs() / expected < 1e-6);
        assert!((loop_integral.re / expected).abs() < 1e-6);
    }

    #[test]
    fn fourier_pole_term_examples() {
        // theta > omega_q / 2 Omega^2: pole term exactly zero
        let p = lg(1.0, 4.0, 1.0); // Omega^2 = 4
        assert_eq!(p.fourier_pole_term(4.0), Complex64::ZERO);
        // omega_q = 16: |pole| = pi eps e^{4 - 16}
        let mag = p.fourier_pole_term(16.0).norm();
        assert_relative_eq!(mag, PI * (4.0f64 - 16.0).exp(), max_relative = 1e-12);
    }

    #[test]
    fn fourier_asymptotic_vs_numeric() {
        // Omega^2 theta^2 = 15, omega_q = 3 Omega^2 theta (well away from
        // the 2 Omega^2 theta coalescence): 1% agreement.
        let theta = 1.0;
        let p = lg(1.0, 15.0, theta);
        let omega_q = 3.0 * p.omega * p.omega * theta;
        let asym = p.fourier_component(omega_q).unwrap();
        assert!(!asym.near_coalescence);
        let exact = p.fourier_numeric(omega_q).unwrap();
        assert!(
            (asym.value - exact).norm() <= 0.01 * exact.norm(),
            "asym {} vs exact {}",
            asym.value,
            exact
        );
    }

    #[test]
    fn fourier_coalescence_window_flagged() {
        let p = lg(1.0, 15.0, 1.0);
        let coalesce = 2.0 * p.omega * p.omega * 1.0;
        let fc = p.fourier_component(coalesce * 1.01).unwrap();
        assert!(fc.near_coalescence);
        assert!(fc.value.norm().is_finite());
    }

    #[test]
    fn step_profile_forms() {
        let s = StepProfile::new(0.5, 1.0).unwrap();
        assert_relative_eq!(s.phi(2.0).unwrap(), 1.5);
        assert_relative_eq!(s.phi(0.5).unwrap(), 0.5);
        assert_relative_eq!(s.h_double_integral(2.0).unwrap(), -0.5);
        assert_relative_eq!(s.h_weighted_integral(2.0).unwrap(), -0.5);
    }

    #[test]
    fn phi_zero_pulse_is_identity() {
        let p = Pulse::quartic_gaussian(0.0, 1.0, 1.0).unwrap();
        let prof = QuarticImaginaryProfile::new(&p, 1.0).unwrap();
        for tau in [0.0, 0.5, 2.0, 7.0] {
            assert_relative_eq!(prof.phi(tau).unwrap(), tau);
        }
    }

    #[test]
    fn phi_approaches_step_limit() {
        // Omega^4 theta^4 = 16, lambda = 1: phi(2 theta) ~ theta within 2%.
        let theta = 1.0;
        let p = Pulse::quartic_from_lambda(1.0, 2.0, theta, 1.0).unwrap();
        let prof = QuarticImaginaryProfile::new(&p, 1.0).unwrap();
        let phi = prof.phi(2.0 * theta).unwrap();
        assert!(
            (phi - theta).abs() <= 0.02 * theta,
            "phi(2 theta) = {phi}, expected ~ {theta}"
        );
        // continuity at the origin
        assert_eq!(prof.phi(0.0).unwrap(), 0.0);
    }

    #[test]
    fn odd_gaussian_tracks_lorentz_within_ten_percent() {
        // max |lorentz - odd| <= 0.1 max|lorentz| at Omega^2 theta^2 = 15
        let theta = 1.0;
        let l = lg(1.0, 15.0, theta);
        let o = Pulse::odd_gaussian(1.0, 15.0f64.sqrt() / theta, theta).unwrap();
        let mut max_dev: f64 = 0.0;
        let mut max_l: f64 = 0.0;
        for i in 0..=600 {
            let t = -3.0 * theta + 6.0 * theta * i as f64 / 600.0;
            max_dev = max_dev.max((l.evaluate(t) - o.evaluate(t)).abs());
            max_l = max_l.max(l.evaluate(t).abs());
        }
        assert!(
            max_dev <= 0.1 * max_l,
            "deviation {max_dev} exceeds 10% of peak {max_l}"
        );
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Pulse::quartic_gaussian(-1.0, 1.0, 1.0).is_err());
        assert!(Pulse::quartic_gaussian(1.0, 0.0, 1.0).is_err());
        assert!(Pulse::quartic_gaussian(1.0, 1.0, -2.0).is_err());
        assert!(StepProfile::new(-0.1, 1.0).is_err());
    }

    #[test]
    fn kick_matches_pole_prefactor_scaling() {
        // contour_kick equals the omega_q -> 0 limit of the pole-term
        // prefactor pi theta eps e^{O2t2 - w theta}.
        let p = lg(0.7, 9.0, 1.3);
        let kick = p.contour_kick().unwrap();
        let prefactor = PI * p.theta * p.eps * p.omega2_theta2().exp();
        assert_relative_eq!(kick, prefactor, max_relative = 1e-14);
    }
}
