//! Instant-signal tunneling for general smooth potentials.
//!
//! The under-barrier path splits into a free segment at the lowered energy
//! `W = E + dE` (duration theta in imaginary time), an instant kick at the
//! signal pole, and a free segment at the original energy E. The segment
//! duration `theta = sqrt(m/2) int dx / sqrt(V - W)` depends only on W, so
//! the dive depth dE(E, theta) follows by inverting one transit-time
//! integral; the action is `A = 2 sqrt(2m) int sqrt(V - W) dx + 2 theta dE`,
//! and `A = 0` defines the resonance energy. A complex-time Runge-Kutta
//! oracle integrates the actual Newton equation along the three-segment
//! contour and cross-checks the kick, the energy gain and the action.

use crate::numerics::{brent, integrate, OdeError, Pchip, QuadratureError, RootError};
use crate::pulses::{Pulse, PulseError, PulseShape};
use crate::quantities::UnitSystem;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SmoothError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("energy gain must be negative (a dive), got delta_e = {0}")]
    InvalidDeltaE(f64),
    #[error(
        "no turning point: V(x) = {energy} has no root in [{lo}, {hi}] \
         (V spans [{v_min:.6e}, {v_max:.6e}] there)"
    )]
    NoTurningPoint {
        energy: f64,
        lo: f64,
        hi: f64,
        v_min: f64,
        v_max: f64,
    },
    #[error(
        "transit time diverges: quadratic turning point at x = {x:.9e} \
         (|V'| = {dv:.3e}); the imaginary-time dwell is unbounded there"
    )]
    DivergentTransit { x: f64, dv: f64 },
    #[error(
        "theta = {theta:.6e} below the attainable range: the free segment \
         at delta_e -> 0- already takes {theta_min:.6e}"
    )]
    ThetaOutOfRange { theta: f64, theta_min: f64 },
    #[error(
        "transit time is not monotone in the dive depth near w = {w:.6e}; \
             ambiguous inversion"
    )]
    NonMonotone { w: f64 },
    #[error(
        "action has no sign change on the energy bracket [{lo:.6e}, {hi:.6e}]: \
         A(lo) = {a_lo:.6e}, A(hi) = {a_hi:.6e}"
    )]
    NoSignChange {
        lo: f64,
        hi: f64,
        a_lo: f64,
        a_hi: f64,
    },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    Pulse(#[from] PulseError),
    #[error("tabulated potential: {0}")]
    Tabulated(String),
}

/// Static potential model for the smooth-potential track.
#[derive(Debug, Clone)]
pub enum PotentialModel {
    /// `V(x) = v - e0 x` on x >= 0 (the exactly solvable limit).
    Triangular { v: f64, e0: f64 },
    /// Repulsive tail `V(x) = beta / x` on x > 0.
    Coulomb { beta: f64 },
    /// Tabulated samples with monotone cubic interpolation.
    Tabulated(TabulatedPotential),
}

impl PotentialModel {
    pub fn value(&self, x: f64) -> f64 {
        match self {
            PotentialModel::Triangular { v, e0 } => v - e0 * x,
            PotentialModel::Coulomb { beta } => beta / x,
            PotentialModel::Tabulated(t) => t.value(x),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            PotentialModel::Triangular { e0, .. } => -e0,
            PotentialModel::Coulomb { beta } => -beta / (x * x),
            PotentialModel::Tabulated(t) => t.derivative(x),
        }
    }

    /// Analytic continuation for the contour oracle; the tabulated kind is
    /// continued to first order off the real axis (excursions are small).
    pub fn value_complex(&self, x: Complex64) -> Complex64 {
        match self {
            PotentialModel::Triangular { v, e0 } => v - e0 * x,
            PotentialModel::Coulomb { beta } => beta / x,
            PotentialModel::Tabulated(t) => {
                let xr = x.re;
                t.value(xr) + t.derivative(xr) * (x - xr)
            }
        }
    }

    pub fn derivative_complex(&self, x: Complex64) -> Complex64 {
        match self {
            PotentialModel::Triangular { e0, .. } => Complex64::from(-e0),
            PotentialModel::Coulomb { beta } => -beta / (x * x),
            PotentialModel::Tabulated(t) => Complex64::from(t.derivative(x.re)),
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            PotentialModel::Triangular { v, e0 } => (0.0, 100.0 * (v.abs() + 1.0) / e0),
            PotentialModel::Coulomb { .. } => (f64::MIN_POSITIVE, f64::MAX),
            PotentialModel::Tabulated(t) => t.domain(),
        }
    }

    /// Lowest representable energy floor of the dive (below it no outer
    /// turning point exists).
    fn dive_floor(&self) -> Option<f64> {
        match self {
            PotentialModel::Triangular { .. } => None,
            PotentialModel::Coulomb { .. } => Some(0.0),
            PotentialModel::Tabulated(t) => {
                Some(t.ys().iter().copied().fold(f64::INFINITY, f64::min))
            }
        }
    }
}

/// Two-column tabulated potential with `#` comments and a `units:` header.
#[derive(Debug, Clone)]
pub struct TabulatedPotential {
    interp: Pchip,
    pub units: UnitSystem,
    /// Recorded interpolation error bound (h^2 max|V''| / 8).
    pub interp_error_bound: f64,
}

impl TabulatedPotential {
    pub fn new(xs: Vec<f64>, vs: Vec<f64>, units: UnitSystem) -> Result<Self, SmoothError> {
        if xs.len() < 4 {
            return Err(SmoothError::Tabulated(format!(
                "need at least 4 samples, got {}",
                xs.len()
            )));
        }
        if !xs.windows(2).all(|w| w[0] < w[1]) {
            return Err(SmoothError::Tabulated(
                "abscissae must be strictly increasing".into(),
            ));
        }
        let interp = Pchip::new(xs, vs);
        let interp_error_bound = interp.error_bound();
        Ok(TabulatedPotential {
            interp,
            units,
            interp_error_bound,
        })
    }

    /// Parse the two-column text format:
    /// ```text
    /// # optional comments
    /// units: atomic
    /// 0.0   1.25
    /// 0.1   1.11
    /// ```
    pub fn parse(text: &str) -> Result<Self, SmoothError> {
        let mut units = None;
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("units:") {
                units = Some(match rest.trim() {
                    "atomic" => UnitSystem::Atomic,
                    "nuclear" => UnitSystem::NuclearNatural,
                    other => {
                        return Err(SmoothError::Tabulated(format!(
                            "line {}: unknown unit system `{other}` (atomic|nuclear)",
                            lineno + 1
                        )))
                    }
                });
                continue;
            }
            let mut cols = line.split_whitespace();
            let (x, v) = match (cols.next(), cols.next(), cols.next()) {
                (Some(x), Some(v), None) => (x, v),
                _ => {
                    return Err(SmoothError::Tabulated(format!(
                        "line {}: expected two numeric columns, got `{line}`",
                        lineno + 1
                    )))
                }
            };
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    SmoothError::Tabulated(format!("line {}: bad number `{s}`", lineno + 1))
                })
            };
            xs.push(parse(x)?);
            vs.push(parse(v)?);
        }
        let units = units.ok_or_else(|| {
            SmoothError::Tabulated("missing `units: atomic|nuclear` header line".into())
        })?;
        TabulatedPotential::new(xs, vs, units)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, SmoothError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SmoothError::Tabulated(format!("{}: {e}", path.display())))?;
        TabulatedPotential::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let units = match self.units {
            UnitSystem::Atomic => "atomic",
            UnitSystem::NuclearNatural => "nuclear",
            UnitSystem::Lab => "atomic",
        };
        let mut out = format!("units: {units}\n");
        for (x, v) in self.interp.xs().iter().zip(self.interp.ys()) {
            out.push_str(&format!("{x:.17e} {v:.17e}\n"));
        }
        out
    }

    pub fn value(&self, x: f64) -> f64 {
        self.interp.value(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.interp.derivative(x)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.interp.domain()
    }

    fn ys(&self) -> &[f64] {
        self.interp.ys()
    }
}

/// Roots of `V(x) = energy` in the potential's domain, ascending; the root
/// search scans the domain and polishes each bracket to 1e-12 relative.
pub fn turning_points(pot: &PotentialModel, energy: f64) -> Result<Vec<f64>, SmoothError> {
    match pot {
        PotentialModel::Triangular { v, e0 } => {
            if energy >= *v {
                return Err(no_turning(pot, energy));
            }
            Ok(vec![(v - energy) / e0])
        }
        PotentialModel::Coulomb { beta } => {
            if energy <= 0.0 {
                return Err(no_turning(pot, energy));
            }
            Ok(vec![beta / energy])
        }
        PotentialModel::Tabulated(t) => {
            let (lo, hi) = t.domain();
            let f = |x: f64| t.value(x) - energy;
            let n = (t.ys().len() * 4).max(256);
            let mut roots = Vec::new();
            let mut x0 = lo;
            let mut f0 = f(x0);
            for i in 1..=n {
                let x1 = lo + (hi - lo) * i as f64 / n as f64;
                let f1 = f(x1);
                if f0 == 0.0 {
                    roots.push(x0);
                } else if f0.signum() != f1.signum() {
                    let mut r = brent(f, x0, x1, 1e-12 * hi.abs().max(1.0), 200)?;
                    // polish so V(r) - energy vanishes to roundoff (the
                    // transit integrand is 1/sqrt of it at the endpoint)
                    for _ in 0..2 {
                        let dv = t.derivative(r);
                        if dv != 0.0 {
                            r -= f(r) / dv;
                        }
                    }
                    if r.is_finite() && r > lo && r < hi {
                        roots.push(r);
                    }
                }
                x0 = x1;
                f0 = f1;
            }
            if roots.is_empty() {
                return Err(no_turning(pot, energy));
            }
            roots.dedup_by(|a, b| (*a - *b).abs() < 1e-10 * (hi - lo));
            Ok(roots)
        }
    }
}

fn no_turning(pot: &PotentialModel, energy: f64) -> SmoothError {
    let (lo, hi) = pot.domain();
    let (mut v_min, mut v_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 1..100 {
        let x = lo + (hi - lo).min(1e6) * i as f64 / 100.0;
        let v = pot.value(x);
        if v.is_finite() {
            v_min = v_min.min(v);
            v_max = v_max.max(v);
        }
    }
    SmoothError::NoTurningPoint {
        energy,
        lo,
        hi,
        v_min,
        v_max,
    }
}

/// Outer (largest) turning point at the given energy.
pub fn outer_turning_point(pot: &PotentialModel, energy: f64) -> Result<f64, SmoothError> {
    Ok(*turning_points(pot, energy)?
        .last()
        .expect("turning_points is non-empty on success"))
}

/// A smooth-potential problem: the potential, the particle mass, and the
/// inner matching point x0 (the well edge; 0 for the triangular and
/// Coulomb scenarios).
#[derive(Debug, Clone)]
pub struct InstantSignalProblem {
    pub pot: PotentialModel,
    pub m: f64,
    pub x0: f64,
}

/// Everything the instant-signal solver produces for one (E, theta).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct InstantSolution {
    pub e: f64,
    pub theta: f64,
    pub delta_e: f64,
    pub x0: f64,
    pub x1: f64,
    pub action: f64,
    pub eps_ext: f64,
    pub eps_t: f64,
    pub e_r: f64,
}

impl InstantSignalProblem {
    pub fn new(pot: PotentialModel, m: f64, x0: f64) -> Result<Self, SmoothError> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(SmoothError::InvalidInput(format!(
                "mass must be positive, got {m}"
            )));
        }
        Ok(InstantSignalProblem { pot, m, x0 })
    }

    /// Imaginary-time transit from x0 to the outer turning point at energy
    /// w: `T(w) = sqrt(m/2) int_x0^x1 dx / sqrt(V - w)`. The inverse-
    /// square-root endpoint at x1 is removed by `x = x1 - u^2`; if x0 is
    /// itself a (near-)turning point the same substitution is applied there.
    pub fn transit_time(&self, w: f64) -> Result<f64, SmoothError> {
        let roots = turning_points(&self.pot, w)?;
        let x1 = *roots.last().expect("non-empty on success");
        if x1 <= self.x0 {
            return Err(SmoothError::InvalidInput(format!(
                "outer turning point {x1} not beyond x0 = {}",
                self.x0
            )));
        }
        // Merging turning points (w at a barrier top) make the dwell time
        // diverge logarithmically; report instead of mis-integrating.
        if roots.len() >= 2 {
            let gap = x1 - roots[roots.len() - 2];
            if gap < 1e-5 * (x1 - self.x0) {
                return Err(SmoothError::DivergentTransit {
                    x: x1,
                    dv: self.pot.derivative(x1),
                });
            }
        }
        let dv1 = self.pot.derivative(x1);
        let scale = (self.pot.value(self.x0.max(x1 * 1e-9)) - w).abs() / (x1 - self.x0);
        if dv1.abs() < 1e-9 * scale.max(1e-300) {
            return Err(SmoothError::DivergentTransit { x: x1, dv: dv1 });
        }
        // The inner matching point must sit under the barrier at this dive.
        let probe = self.x0 + 1e-9 * (x1 - self.x0);
        if self.pot.value(probe) < w && self.pot.value(self.x0 + 0.01 * (x1 - self.x0)) < w {
            return Err(SmoothError::InvalidInput(format!(
                "inner point x0 = {} is not under the barrier at dive energy {w}",
                self.x0
            )));
        }
        let integral = self.barrier_integral(w, x1, |v_minus_w| 1.0 / v_minus_w.sqrt())?;
        Ok((self.m / 2.0).sqrt() * integral)
    }

    /// `int_x0^x1 f(V(x) - w) dx` with turning-point substitutions.
    fn barrier_integral<F: Fn(f64) -> f64>(
        &self,
        w: f64,
        x1: f64,
        f: F,
    ) -> Result<f64, SmoothError> {
        let x0 = self.x0;
        let span = x1 - x0;
        // Left endpoint: substitute if x0 sits at (or near) a turning point.
        let left_singular = {
            let probe = self.pot.value(x0 + 1e-12 * span) - w;
            probe <= 0.0 || {
                let mid = self.pot.value(x0 + 0.5 * span) - w;
                probe < 0.05 * mid.abs()
            }
        };
        let xm = x0 + 0.75 * span;
        let mut total = 0.0;
        if left_singular {
            let xl = x0 + 0.25 * span;
            // x = x0 + u^2; roundoff in V(x0) - w is floored by the local
            // quadratic growth so the integrand stays bounded.
            let ul = (xl - x0).sqrt();
            let dv0 = self.pot.derivative(x0).abs();
            total += integrate(
                |u| {
                    let val = self.pot.value(x0 + u * u) - w;
                    2.0 * u * f(val.max(0.5 * dv0 * u * u).max(1e-300))
                },
                0.0,
                ul,
                1e-10,
            )?;
            total += integrate(|x| f(self.pot.value(x) - w), xl, xm, 1e-10)?;
        } else {
            total += integrate(|x| f(self.pot.value(x) - w), x0, xm, 1e-10)?;
        }
        // Right endpoint: x = x1 - u^2 renders the integrand analytic. The
        // turning point carries a roundoff residual (V(x1) - w ~ eps |V|),
        // so the argument is floored by its local quadratic model |V'| u^2;
        // beyond the residual zone the true value dominates the max.
        let ur = (x1 - xm).sqrt();
        let dv1 = self.pot.derivative(x1).abs();
        total += integrate(
            |u| {
                let val = self.pot.value(x1 - u * u) - w;
                2.0 * u * f(val.max(0.5 * dv1 * u * u).max(1e-300))
            },
            0.0,
            ur,
            1e-10,
        )?;
        Ok(total)
    }

    /// Duration of the dived segment: `theta(delta_e) = T(E + delta_e)`,
    /// rejecting non-negative gains.
    pub fn theta_of_delta_e(&self, e: f64, delta_e: f64) -> Result<f64, SmoothError> {
        if delta_e >= 0.0 {
            return Err(SmoothError::InvalidDeltaE(delta_e));
        }
        self.transit_time(e + delta_e)
    }

    /// Invert the transit time: the dived energy w with `T(w) = theta`.
    /// The transit depends only on w, so the inversion is global. A ladder
    /// of sampled dive energies (seeded analytically for the closed-form
    /// kinds) is checked for monotonicity — T grows with the dive depth for
    /// long-tailed barriers and shrinks for finite bumps, and a mixed
    /// profile is reported as ambiguous rather than silently resolved —
    /// then the bracketing rung is polished by Brent to 1e-10 relative.
    pub fn transit_inverse(&self, theta: f64) -> Result<f64, SmoothError> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(SmoothError::InvalidInput(format!(
                "theta must be positive, got {theta}"
            )));
        }
        let ladder: Vec<f64> = match &self.pot {
            PotentialModel::Triangular { v, e0 } => {
                // closed-form seed (exact at x0 = 0): w* = v - theta^2 e0^2 / 2m
                let drop = theta * theta * e0 * e0 / (2.0 * self.m);
                [8.0, 4.0, 2.0, 1.4, 1.05, 0.95, 0.7, 0.5, 0.25, 0.12]
                    .iter()
                    .map(|f| v - f * drop)
                    .collect()
            }
            PotentialModel::Coulomb { beta } => {
                let w = (PI * beta * (2.0 * self.m).sqrt() / (4.0 * theta)).powf(2.0 / 3.0);
                [0.12, 0.25, 0.5, 0.95, 1.05, 1.4, 2.0, 4.0, 8.0]
                    .iter()
                    .map(|f| f * w)
                    .collect()
            }
            PotentialModel::Tabulated(t) => {
                let v_max = t.ys().iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let floor = self.pot.dive_floor().unwrap_or(f64::NEG_INFINITY);
                let cap = v_max.min(self.pot.value(self.x0));
                let span = cap - floor;
                [
                    1e-5, 1e-4, 1e-3, 0.01, 0.03, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.97,
                ]
                .iter()
                .map(|f| cap - f * span)
                .collect()
            }
        };
        let mut samples: Vec<(f64, f64)> = Vec::new();
        for w in ladder {
            if let Ok(t) = self.transit_time(w) {
                samples.push((w, t));
            }
        }
        if samples.len() < 2 {
            return Err(SmoothError::InvalidInput(
                "too few valid dive energies to invert the transit time".into(),
            ));
        }
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        let increasing = samples.last().unwrap().1 > samples[0].1;
        for pair in samples.windows(2) {
            let ordered = if increasing {
                pair[1].1 >= pair[0].1
            } else {
                pair[1].1 <= pair[0].1
            };
            if !ordered {
                return Err(SmoothError::NonMonotone { w: pair[1].0 });
            }
        }
        // Locate the bracketing rung.
        let mut bracket = None;
        for pair in samples.windows(2) {
            let (t_a, t_b) = (pair[0].1, pair[1].1);
            if (t_a - theta) * (t_b - theta) <= 0.0 {
                bracket = Some((pair[0].0, pair[1].0));
                break;
            }
        }
        let (w_a, w_b) = match bracket {
            Some(b) => b,
            None => {
                let nearest = samples
                    .iter()
                    .map(|(_, t)| *t)
                    .min_by(|a, b| (a - theta).abs().total_cmp(&(b - theta).abs()))
                    .unwrap();
                return Err(SmoothError::ThetaOutOfRange {
                    theta,
                    theta_min: nearest,
                });
            }
        };
        let f = |w: f64| match self.transit_time(w) {
            Ok(t) => t - theta,
            Err(_) => f64::NAN,
        };
        let scale = w_a.abs().max(w_b.abs()).max(1e-12);
        Ok(brent(f, w_a, w_b, 1e-12 * scale, 200)?)
    }

    /// Energy gain `delta_e(E, theta) < 0` of the dived segment; errors when
    /// theta is below the attainable range for this level (the dive must go
    /// down).
    pub fn delta_e_of_theta(&self, e: f64, theta: f64) -> Result<f64, SmoothError> {
        let w = self.transit_inverse(theta)?;
        if w >= e {
            return Err(SmoothError::ThetaOutOfRange {
                theta,
                theta_min: self.transit_time(e)?,
            });
        }
        Ok(w - e)
    }

    /// Barrier action at the dived energy:
    /// `S(w) = 2 sqrt(2m) int_x0^x1 sqrt(V - w) dx`.
    fn dived_barrier_action(&self, w: f64) -> Result<f64, SmoothError> {
        let x1 = outer_turning_point(&self.pot, w)?;
        let integral = self.barrier_integral(w, x1, |v_minus_w| v_minus_w.max(0.0).sqrt())?;
        Ok(2.0 * (2.0 * self.m).sqrt() * integral)
    }

    /// Total tunneling action under the extremal instant signal:
    /// `A(E, theta) = S(W) + 2 theta (W - E)` with `W = E + delta_e`.
    /// The dived energy W depends on theta alone, so A is affine in E and
    /// remains evaluable across the resonance (where delta_e crosses the
    /// physical-dive boundary).
    pub fn action(&self, e: f64, theta: f64) -> Result<f64, SmoothError> {
        let w = self.transit_inverse(theta)?;
        Ok(self.dived_barrier_action(w)? + 2.0 * theta * (w - e))
    }

    /// Resonance energy `E_R(theta)`: the root of `A(E, theta) = 0` on the
    /// supplied energy bracket.
    pub fn resonance_energy(&self, theta: f64, bracket: (f64, f64)) -> Result<f64, SmoothError> {
        let (lo, hi) = bracket;
        // The dived energy w depends on theta only; A is affine in E.
        let action_at = |e: f64| -> Result<f64, SmoothError> { self.action(e, theta) };
        let a_lo = action_at(lo)?;
        let a_hi = action_at(hi)?;
        if a_lo == 0.0 {
            return Ok(lo);
        }
        if a_hi == 0.0 {
            return Ok(hi);
        }
        if a_lo.signum() == a_hi.signum() {
            return Err(SmoothError::NoSignChange { lo, hi, a_lo, a_hi });
        }
        let f = |e: f64| self.action(e, theta).unwrap_or(f64::NAN);
        Ok(brent(f, lo, hi, 1e-12 * hi.abs().max(1.0), 200)?)
    }

    /// Extremal signal amplitude: the kick that brings the dived particle
    /// exactly to rest at x0, `pi theta eps exp(O2t2) = sqrt(-2m delta_e)`.
    pub fn extremal_field(&self, e: f64, theta: f64, omega: f64) -> Result<f64, SmoothError> {
        let delta_e = self.delta_e_of_theta(e, theta)?;
        Ok(kick_to_amplitude(
            (-2.0 * self.m * delta_e).sqrt(),
            theta,
            omega,
        ))
    }

    /// Threshold amplitude: the extremal field at the resonance energy.
    pub fn threshold_field(
        &self,
        theta: f64,
        omega: f64,
        e_bracket: (f64, f64),
    ) -> Result<f64, SmoothError> {
        let e_r = self.resonance_energy(theta, e_bracket)?;
        self.extremal_field(e_r, theta, omega)
    }

    /// Energy at which a given amplitude is extremal (the escape-rate peak);
    /// clamps to `E_R` at and above the threshold amplitude.
    pub fn extremal_energy(
        &self,
        theta: f64,
        omega: f64,
        eps: f64,
        e_bracket: (f64, f64),
    ) -> Result<f64, SmoothError> {
        let e_r = self.resonance_energy(theta, e_bracket)?;
        let eps_t = self.extremal_field(e_r, theta, omega)?;
        if eps >= eps_t {
            return Ok(e_r);
        }
        let kick = amplitude_to_kick(eps, theta, omega);
        let w = self.transit_inverse(theta)?;
        Ok(w + kick * kick / (2.0 * self.m))
    }

    /// Full solution record at one (E, theta, Omega).
    pub fn instant_solution(
        &self,
        e: f64,
        theta: f64,
        omega: f64,
        e_bracket: (f64, f64),
    ) -> Result<InstantSolution, SmoothError> {
        let w = self.transit_inverse(theta)?;
        let delta_e = w - e;
        let x1 = outer_turning_point(&self.pot, w)?;
        let action = self.dived_barrier_action(w)? + 2.0 * theta * delta_e;
        let eps_ext = kick_to_amplitude((-2.0 * self.m * delta_e).sqrt(), theta, omega);
        let e_r = self.resonance_energy(theta, e_bracket)?;
        let eps_t = self.extremal_field(e_r, theta, omega)?;
        Ok(InstantSolution {
            e,
            theta,
            delta_e,
            x0: self.x0,
            x1,
            action,
            eps_ext,
            eps_t,
            e_r,
        })
    }
}

/// Momentum kick delivered by a Lorentz-Gaussian amplitude eps.
pub fn amplitude_to_kick(eps: f64, theta: f64, omega: f64) -> f64 {
    PI * theta * eps * (omega * omega * theta * theta).exp()
}

/// Amplitude required for a given momentum kick (threshold fields are
/// exponentially small in the instant regime).
pub fn kick_to_amplitude(kick: f64, theta: f64, omega: f64) -> f64 {
    kick / (PI * theta) * (-omega * omega * theta * theta).exp()
}

/// Contour and tolerance settings for the trajectory oracle.
#[derive(Debug, Clone, Copy)]
pub struct ContourSpec {
    pub rtol: f64,
    pub atol: f64,
    /// Kick-region half width in units of 1/(Omega^2 theta) (tagging and
    /// the segment-2 extent).
    pub kick_halfwidth_factor: f64,
    /// Pole-loop radius in units of 1/(Omega^2 theta).
    pub loop_radius_factor: f64,
    /// Free continuation past the kick, as a fraction of theta.
    pub tail_fraction: f64,
    /// Keep the signal field on during the straight approach (physics
    /// dressing; off reproduces the matched free-kick-free idealization).
    pub approach_field: bool,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            rtol: 1e-9,
            atol: 1e-12,
            kick_halfwidth_factor: 5.0,
            loop_radius_factor: 0.01,
            tail_fraction: 0.2,
            approach_field: false,
        }
    }
}

/// One accepted point of the contour integration.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub segment: u8,
    pub t: Complex64,
    pub x: Complex64,
    /// dx/dt (complex-time velocity).
    pub velocity: Complex64,
    /// Instantaneous `m/2 (dx/dt)^2 + V(x)`.
    pub energy: Complex64,
}

/// Result of the complex-contour Newton integration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EuclideanTrajectory {
    pub points: Vec<TrajectoryPoint>,
    /// Energy gain measured from segment energies (start minus end).
    pub delta_e_energy: f64,
    /// Energy gain from the work integral along the contour.
    pub delta_e_work: f64,
    /// Action accumulated over the dived transit and the kick.
    pub action: f64,
    /// Euclidean momentum jump across the pole loop (`i m dv`), if a kick
    /// segment was traversed.
    pub momentum_kick: Option<Complex64>,
    /// Complex-time velocity dx/dt at the end of the approach segment.
    pub velocity_before_kick: Option<Complex64>,
    /// Coordinate change across the kick segment.
    pub coordinate_jump: Option<f64>,
    /// Maximum instantaneous-energy drift (real part) on segments 1 and 3.
    pub energy_drift: [f64; 2],
}

// ODE state: [x, dx/dt, work accumulator, action accumulator].
type State = [Complex64; 4];

struct Leg {
    segment_of: fn(f64, &LegCtx) -> u8,
    t_of: Box<dyn Fn(f64) -> (Complex64, Complex64)>, // (t, dt/ds)
    s_end: f64,
    field_on: bool,
}

struct LegCtx {
    theta: f64,
    w_seg: f64,
}

/// Integrate the complex-time Newton equation along the instant-signal
/// contour of a Lorentz-Gaussian pulse: free dive from the outer turning
/// point, full loop around the pole at `t = i theta`, free continuation.
pub fn integrate_euclidean(
    problem: &InstantSignalProblem,
    pulse: &Pulse,
    e: f64,
    contour: &ContourSpec,
) -> Result<EuclideanTrajectory, SmoothError> {
    match pulse.shape {
        PulseShape::LorentzGaussian => integrate_instant(problem, pulse, e, contour),
        PulseShape::QuarticGaussian | PulseShape::OddGaussian => {
            Err(SmoothError::InvalidInput(format!(
                "the smooth-potential contour oracle needs a lorentz-gaussian signal, \
                 got {}; use integrate_straight for on-axis profiles",
                pulse.shape.name()
            )))
        }
    }
}

fn integrate_instant(
    problem: &InstantSignalProblem,
    pulse: &Pulse,
    e: f64,
    contour: &ContourSpec,
) -> Result<EuclideanTrajectory, SmoothError> {
    let theta = pulse.theta;
    let o2t = pulse.omega * pulse.omega * theta;
    let w_seg = contour.kick_halfwidth_factor / o2t;
    let w_loop = (contour.loop_radius_factor / o2t).min(0.45 * theta);
    if w_seg >= theta {
        return Err(SmoothError::InvalidInput(format!(
            "kick half-width {w_seg} exceeds theta = {theta}; pulse not instant enough"
        )));
    }

    let w = problem.transit_inverse(theta)?;
    let x1 = outer_turning_point(&problem.pot, w)?;

    let approach_end = theta - w_loop;
    let tail = contour.tail_fraction * theta;

    let legs = vec![
        Leg {
            segment_of: |s, ctx| {
                if s < ctx.theta - ctx.w_seg {
                    1
                } else {
                    2
                }
            },
            t_of: Box::new(move |s| (Complex64::new(0.0, s), Complex64::new(0.0, 1.0))),
            s_end: approach_end,
            field_on: contour.approach_field,
        },
        Leg {
            segment_of: |_, _| 2,
            t_of: Box::new(move |phi| {
                let e_iphi = Complex64::from_polar(1.0, phi);
                (
                    Complex64::new(0.0, theta) + w_loop * e_iphi,
                    Complex64::i() * w_loop * e_iphi,
                )
            }),
            s_end: 2.0 * PI,
            field_on: true,
        },
        Leg {
            segment_of: |_, _| 3,
            t_of: Box::new(move |s| {
                (
                    Complex64::new(0.0, approach_end + s),
                    Complex64::new(0.0, 1.0),
                )
            }),
            s_end: w_loop + tail,
            field_on: false,
        },
    ];

    let ctx = LegCtx { theta, w_seg };
    // The signal couples through its force; an instant kick transfers
    // momentum with no potential-energy offset, so the dipole term of the
    // Lagrangian is anchored at the kick position (the exact triangular
    // limit has the kick at the well origin, where the two conventions
    // coincide).
    run_contour(
        problem,
        Some(pulse),
        e,
        x1,
        legs,
        ctx,
        contour,
        theta,
        problem.x0,
    )
}

/// Integrate straight up the imaginary axis from rest at `x_start` to
/// `tau_end`, with an optional on-axis (quartic-Gaussian) signal; the oracle
/// for the exactly solvable trajectories.
pub fn integrate_straight(
    problem: &InstantSignalProblem,
    pulse: Option<&Pulse>,
    e: f64,
    x_start: f64,
    tau_end: f64,
    contour: &ContourSpec,
) -> Result<EuclideanTrajectory, SmoothError> {
    if let Some(p) = pulse {
        if p.shape == PulseShape::LorentzGaussian && p.eps > 0.0 {
            return Err(SmoothError::InvalidInput(
                "on-axis integration of a lorentz-gaussian hits its pole; \
                 use integrate_euclidean"
                    .into(),
            ));
        }
    }
    let (theta, w_seg) = match pulse {
        Some(p) => (
            p.theta,
            contour.kick_halfwidth_factor / (p.omega * p.omega * p.theta),
        ),
        None => (f64::INFINITY, 0.0),
    };
    let legs = vec![Leg {
        segment_of: |s, ctx| {
            if !ctx.theta.is_finite() || s < ctx.theta - ctx.w_seg {
                1
            } else if s <= ctx.theta + ctx.w_seg {
                2
            } else {
                3
            }
        },
        t_of: Box::new(move |s| (Complex64::new(0.0, s), Complex64::new(0.0, 1.0))),
        s_end: tau_end,
        field_on: pulse.is_some(),
    }];
    let ctx = LegCtx { theta, w_seg };
    run_contour(problem, pulse, e, x_start, legs, ctx, contour, tau_end, 0.0)
}

#[allow(clippy::too_many_arguments)]
fn run_contour(
    problem: &InstantSignalProblem,
    pulse: Option<&Pulse>,
    e: f64,
    x_start: f64,
    legs: Vec<Leg>,
    ctx: LegCtx,
    contour: &ContourSpec,
    action_cutoff_tau: f64,
    dipole_ref: f64,
) -> Result<EuclideanTrajectory, SmoothError> {
    let m = problem.m;
    let mut state: State = [
        Complex64::from(x_start),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::ZERO,
    ];
    let mut points: Vec<TrajectoryPoint> = Vec::new();
    let mut kick_before: Option<Complex64> = None;
    let mut kick_after: Option<Complex64> = None;
    let mut x_before_kick: Option<Complex64> = None;
    let mut x_after_kick: Option<Complex64> = None;
    let mut action_at_cutoff: Option<Complex64> = None;

    for (leg_idx, leg) in legs.iter().enumerate() {
        if leg.s_end <= 0.0 {
            continue;
        }
        let field_on = leg.field_on;
        let rhs = |s: f64, y: &State| -> State {
            let (t, dtds) = (leg.t_of)(s);
            let x = y[0];
            let v = y[1];
            let field = match (field_on, pulse) {
                (true, Some(p)) => p.evaluate_complex(t),
                _ => Complex64::ZERO,
            };
            let accel = (field - problem.pot.derivative_complex(x)) / m;
            let lagr =
                0.5 * m * v * v - problem.pot.value_complex(x) + (x - dipole_ref) * field + e;
            [v * dtds, accel * dtds, -field * v * dtds, lagr * dtds]
        };
        let sol =
            crate::numerics::integrate_ode(rhs, 0.0, leg.s_end, state, contour.rtol, contour.atol)?;
        for sample in &sol.samples {
            let (t, _) = (leg.t_of)(sample.s);
            let seg = (leg.segment_of)(sample.s, &ctx);
            let v = sample.y[1];
            let x = sample.y[0];
            let energy = 0.5 * m * v * v + problem.pot.value_complex(x);
            points.push(TrajectoryPoint {
                segment: seg,
                t,
                x,
                velocity: v,
                energy,
            });
            // Action is accounted up to the end of the kick (the free
            // continuation beyond the barrier-transit time is diagnostics).
            if t.im <= action_cutoff_tau * (1.0 + 1e-12) {
                action_at_cutoff = Some(sample.y[3]);
            }
        }
        state = *sol.last();
        // Loop leg bookkeeping: legs[1] is the pole loop in instant mode.
        if legs.len() == 3 {
            if leg_idx == 0 {
                kick_before = Some(state[1]);
                x_before_kick = Some(state[0]);
            }
            if leg_idx == 1 {
                kick_after = Some(state[1]);
                x_after_kick = Some(state[0]);
            }
        }
    }

    let momentum_kick = match (kick_before, kick_after) {
        (Some(b), Some(a)) => Some(Complex64::i() * m * (a - b)),
        _ => None,
    };
    let coordinate_jump = match (x_before_kick, x_after_kick) {
        (Some(b), Some(a)) => Some((a - b).norm()),
        _ => None,
    };

    let e_start = points.first().map(|p| p.energy.re).unwrap_or(f64::NAN);
    let e_end = points.last().map(|p| p.energy.re).unwrap_or(f64::NAN);
    let drift = |seg: u8| -> f64 {
        let mut first = None;
        let mut max_dev: f64 = 0.0;
        for p in &points {
            if p.segment == seg {
                let base = *first.get_or_insert(p.energy.re);
                max_dev = max_dev.max((p.energy.re - base).abs());
            }
        }
        max_dev
    };

    Ok(EuclideanTrajectory {
        delta_e_energy: e_start - e_end,
        delta_e_work: state[2].re,
        action: -2.0 * action_at_cutoff.unwrap_or(state[3]).im,
        momentum_kick,
        velocity_before_kick: kick_before,
        coordinate_jump,
        energy_drift: [drift(1), drift(3)],
        points,
    })
}

/// Relative deviations of the smooth-track results from the exact
/// triangular closed forms, evaluated on the identical triangular potential.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TriangularLimitReport {
    pub action_dev: f64,
    pub e_r_dev: f64,
    pub eps_t_dev: f64,
    pub max_dev: f64,
}

/// Cross-validate the smooth-potential machinery against the exact
/// triangular model at (theta, Omega).
pub fn triangular_limit_check(
    spec: &crate::triangular::BarrierSpec,
    theta: f64,
    omega: f64,
) -> Result<TriangularLimitReport, SmoothError> {
    let problem = InstantSignalProblem::new(
        PotentialModel::Triangular {
            v: spec.v,
            e0: spec.e0,
        },
        spec.m,
        0.0,
    )?;
    let params = spec.resonance_params(theta);

    let a_smooth = problem.action(spec.e, theta)?;
    let a_exact = 2.0 * theta * (params.e_r - spec.e);
    let action_dev = rel_dev(a_smooth, a_exact);

    let bracket = (
        spec.e - 2.0 * spec.v_minus_e() - theta * theta * spec.e0 * spec.e0 / spec.m,
        spec.v,
    );
    let e_r_smooth = problem.resonance_energy(theta, bracket)?;
    let e_r_dev = rel_dev(e_r_smooth - spec.e, params.e_r - spec.e);

    let eps_t_smooth = problem.threshold_field(theta, omega, bracket)?;
    let eps_t_exact = spec.e0 * (2.0f64 / 3.0).sqrt() / PI * (-omega * omega * theta * theta).exp();
    let eps_t_dev = rel_dev(eps_t_smooth, eps_t_exact);

    Ok(TriangularLimitReport {
        action_dev,
        e_r_dev,
        eps_t_dev,
        max_dev: action_dev.max(e_r_dev).max(eps_t_dev),
    })
}

fn rel_dev(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
