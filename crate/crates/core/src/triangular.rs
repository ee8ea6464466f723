//! Exactly solvable model: a delta-well held by a triangular barrier
//! `V(x) = V - E0 |x|` under a symmetric pulse.
//!
//! The under-barrier dynamics runs in imaginary time `t = i tau`. With the
//! reduced velocity profile `phi(tau) = tau + int_0^tau h`, exit candidates
//! are the solutions of `phi(tau1) = tau00`, where
//! `tau00 = sqrt(2m(V-E))/E0` is the static under-barrier time. For the
//! idealized step profile the candidates are up to three branches (two
//! parabola intersections and the vertical jump segment), each carrying a
//! closed-form action; the jump branch carries `A = 2(E_R - E) theta` and
//! hits zero at the resonance energy `E_R = V - theta^2 E0^2 / 6m`.

use crate::numerics::{brent, integrate, scan_bracket, RootError};
use crate::pulses::{
    ImaginaryTimeProfile, Pulse, PulseError, QuarticImaginaryProfile, StepProfile,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TriangularError {
    #[error("invalid barrier: {0}")]
    InvalidBarrier(String),
    #[error(transparent)]
    Pulse(#[from] PulseError),
    #[error("no real tau0 solves the coordinate map for x = {x}")]
    NoMapSolution { x: f64 },
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(
        "action curvature is singular at tau0 = {tau0:.9e} (near the \
         branch-merging time tau2 where it diverges as (x2 - x)^(-1/2))"
    )]
    CurvatureSingular { tau0: f64 },
    #[error("Stokes point: sigma1 argument {arg:.6e} <= 0 at tau1 = {tau1:.9e}")]
    StokesPoint { tau1: f64, arg: f64 },
    #[error("quadrature failure: {0}")]
    Quadrature(#[from] crate::numerics::QuadratureError),
    #[error("outside validity domain: {0}")]
    Domain(String),
}

/// Static problem definition. Energies are absolute: `v` is the barrier top
/// at x = 0, `e` the decaying level, with `v > e`. Everything is in one
/// natural unit system (`hbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierSpec {
    pub v: f64,
    pub e: f64,
    pub e0: f64,
    pub m: f64,
}

impl BarrierSpec {
    pub fn new(v: f64, e: f64, e0: f64, m: f64) -> Result<Self, TriangularError> {
        if v.is_nan() || e.is_nan() || v <= e {
            return Err(TriangularError::InvalidBarrier(format!(
                "need V > E for a barrier, got V = {v}, E = {e}"
            )));
        }
        if !(e0 > 0.0 && e0.is_finite()) {
            return Err(TriangularError::InvalidBarrier(format!(
                "static field must be positive, got {e0}"
            )));
        }
        if !(m > 0.0 && m.is_finite()) {
            return Err(TriangularError::InvalidBarrier(format!(
                "mass must be positive, got {m}"
            )));
        }
        Ok(BarrierSpec { v, e, e0, m })
    }

    /// Spec with the level at E = 0 and barrier top at `v_minus_e`.
    pub fn from_barrier_height(v_minus_e: f64, e0: f64, m: f64) -> Result<Self, TriangularError> {
        BarrierSpec::new(v_minus_e, 0.0, e0, m)
    }

    pub fn v_minus_e(&self) -> f64 {
        self.v - self.e
    }

    /// Static under-barrier time `sqrt(2m(V-E))/E0`.
    pub fn tau00(&self) -> f64 {
        (2.0 * self.m * self.v_minus_e()).sqrt() / self.e0
    }

    /// Same at a shifted level energy.
    pub fn tau00_at(&self, energy: f64) -> f64 {
        (2.0 * self.m * (self.v - energy)).sqrt() / self.e0
    }

    /// Conventional decay action `A0 = (4/3)(V-E) tau00`.
    pub fn static_action(&self) -> f64 {
        self.static_action_at(self.e)
    }

    pub fn static_action_at(&self, energy: f64) -> f64 {
        let dv = self.v - energy;
        if dv <= 0.0 {
            return 0.0;
        }
        4.0 / 3.0 * dv * self.tau00_at(energy)
    }

    /// Static exit point `(V-E)/E0` (turning point of the WKB action).
    pub fn static_exit_point(&self) -> f64 {
        self.v_minus_e() / self.e0
    }

    /// Signal time at which the level E is resonant:
    /// `theta_R = sqrt(6m(V-E))/E0 = sqrt(3) tau00`.
    pub fn resonance_theta(&self) -> f64 {
        (6.0 * self.m * self.v_minus_e()).sqrt() / self.e0
    }

    /// Resonance energy, threshold amplitude and peak-energy rule for a
    /// signal of time parameter `theta`.
    pub fn resonance_params(&self, theta: f64) -> ResonanceParams {
        let scale = theta * theta * self.e0 * self.e0 / (6.0 * self.m);
        ResonanceParams {
            e_r: self.v - scale,
            lambda_t: LAMBDA_T,
            theta,
            scale,
        }
    }
}

/// Threshold step amplitude `1 - 1/sqrt(3)`.
pub const LAMBDA_T: f64 = 0.422_649_730_810_374_2;

/// Resonance energy `E_R = V - theta^2 E0^2/6m`, the threshold amplitude
/// `lambda_T`, and the peak energy `E_ext(lambda)` of the escape rate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ResonanceParams {
    pub e_r: f64,
    pub lambda_t: f64,
    pub theta: f64,
    scale: f64,
}

impl ResonanceParams {
    /// Peak energy of the driven escape rate: equals `E_R` above threshold
    /// and drops below it for sub-threshold amplitudes.
    pub fn e_ext(&self, lambda: f64) -> f64 {
        if lambda >= self.lambda_t {
            self.e_r
        } else {
            let third = 1.0 / 3.0f64.sqrt();
            self.e_r - self.scale * (1.0 + third - lambda) * (self.lambda_t - lambda)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchKind {
    /// Exit before the kick on the first parabola, `tau1 = tau00`.
    PreKick,
    /// Exit during the kick on the vertical segment, `tau1 = theta`.
    Jump,
    /// Exit after the kick on the shifted parabola, `tau1 = tau00 + lambda theta`.
    PostKick,
}

impl BranchKind {
    pub fn name(self) -> &'static str {
        match self {
            BranchKind::PreKick => "pre-kick",
            BranchKind::Jump => "jump",
            BranchKind::PostKick => "post-kick",
        }
    }
}

/// One exit candidate with its action, energy gain and stability.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Branch {
    pub kind: BranchKind,
    pub tau1: f64,
    pub action: f64,
    pub delta_e: f64,
    pub exit_energy: f64,
    pub x1: f64,
    /// Second derivative of the action is negative at the smoothed root.
    pub stable: bool,
    /// Stable and within the physical window (A >= 0, delta_e <= 0, and for
    /// the jump branch E <= E_ext).
    pub physical: bool,
    /// Root of the smoothed profile used for the stability classification.
    pub smoothed_tau1: Option<f64>,
    pub curvature: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchSet {
    pub branches: Vec<Branch>,
    /// Branch-merging time where the action curvature diverges (vanishing
    /// map derivative), located on the smoothed profile.
    pub tau2: Option<f64>,
    /// Index of the physical branch with the smallest action, if any.
    pub selected: Option<usize>,
}

impl BranchSet {
    pub fn selected_branch(&self) -> Option<&Branch> {
        self.selected.map(|i| &self.branches[i])
    }
}

/// Coordinate map x(tau0): the characteristic label tau0 of the action
/// surface at t = 0 mapped to its position in the barrier.
pub fn map_tau_to_x<P: ImaginaryTimeProfile>(
    spec: &BarrierSpec,
    profile: &P,
    tau0: f64,
) -> Result<f64, TriangularError> {
    let tau00 = spec.tau00();
    let w = profile.h_weighted_integral(tau0)?;
    Ok(spec.e0 / (2.0 * spec.m) * (2.0 * tau0 * tau00 - tau0 * tau0 - 2.0 * w))
}

/// First derivative of the action at t = 0: `i dS/dx = E0 (phi(tau0) - tau00)`,
/// with tau0 resolved from x through the coordinate map.
pub fn action_gradient<P: ImaginaryTimeProfile>(
    spec: &BarrierSpec,
    profile: &P,
    x: f64,
) -> Result<f64, TriangularError> {
    let tau0 = invert_map(spec, profile, x)?;
    action_gradient_at_tau(spec, profile, tau0)
}

pub fn action_gradient_at_tau<P: ImaginaryTimeProfile>(
    spec: &BarrierSpec,
    profile: &P,
    tau0: f64,
) -> Result<f64, TriangularError> {
    Ok(spec.e0 * (profile.phi(tau0)? - spec.tau00()))
}

/// Second derivative of the action at t = 0:
/// `i d2S/dx2 = m (1 + h) / (tau00 - tau0 - tau0 h)`. Requires a profile
/// with a pointwise h (smooth pulses); diverges at the branch-merging point.
pub fn action_curvature<P: ImaginaryTimeProfile>(
    spec: &BarrierSpec,
    profile: &P,
    x: f64,
) -> Result<f64, TriangularError> {
    let tau0 = invert_map(spec, profile, x)?;
    action_curvature_at_tau(spec, profile, tau0)
}

pub fn action_curvature_at_tau<P: ImaginaryTimeProfile>(
    spec: &BarrierSpec,
    profile: &P,
    tau0: f64,
) -> Result<f64, TriangularError> {
    let h = profile.h(tau0);
    let denom = spec.tau00() - tau0 - tau0 * h;
    if denom.abs() < 1e-12 * spec.tau00() {
        return Err(TriangularError::CurvatureSingular { tau0 });
    }
    Ok(spec.m * (1.0 + h) / denom)
}

/// Invert the coordinate map x(tau0) for the principal (smallest-tau0)
/// characteristic through x.
fn invert_map<P: ImaginaryTimeProfile>(
    spec: &BarrierSpec,
    profile: &P,
    x: f64,
) -> Result<f64, TriangularError> {
    let tau00 = spec.tau00();
    if x == 0.0 {
        return Ok(0.0);
    }
    let f = |tau0: f64| match map_tau_to_x(spec, profile, tau0) {
        Ok(v) => v - x,
        Err(_) => f64::NAN,
    };
    let hi = 4.0 * tau00;
    let (a, b) = scan_bracket(f, 0.0, hi, 400).ok_or(TriangularError::NoMapSolution { x })?;
    if a == b {
        return Ok(a);
    }
    Ok(brent(f, a, b, 1e-14 * tau00.max(1.0), 200)?)
}

/// Action of an exit branch from the transformed Hamilton-Jacobi integral
/// `A = (E0^2/m) [tau1 tau00^2 - int_0^tau1 phi^2]` (the defining relation
/// `phi(tau1) = tau00` is substituted in the boundary term). Adaptive
/// quadrature at 1e-10 relative.
pub fn action_quadrature<P: ImaginaryTimeProfile>(
    spec: &BarrierSpec,
    profile: &P,
    tau1: f64,
) -> Result<f64, TriangularError> {
    let tau00 = spec.tau00();
    let integral = integrate(
        |tau| match profile.phi(tau) {
            Ok(p) => p * p,
            Err(_) => f64::NAN,
        },
        0.0,
        tau1,
        1e-10,
    )?;
    Ok(spec.e0 * spec.e0 / spec.m * (tau1 * tau00 * tau00 - integral))
}

/// Geometric-area route to the same action: signed area between the curve
/// `phi^2(tau)` and the level `tau00^2`, accumulated piecewise in closed
/// form (parabola segments only, no numerical quadrature). Returns
/// `(A, Q_plus, Q_minus)`.
pub fn action_area(spec: &BarrierSpec, step: &StepProfile, tau1: f64) -> (f64, f64, f64) {
    let tau00 = spec.tau00();
    let theta = step.theta;
    let shift = step.lambda * theta;

    // Segment integral of tau00^2 - (tau - c)^2 split at its sign changes.
    let mut q_plus = 0.0f64;
    let mut q_minus = 0.0f64;
    let mut accumulate = |c: f64, from: f64, to: f64| {
        if to <= from {
            return;
        }
        let mut pts = vec![from];
        for r in [c - tau00, c + tau00] {
            if r > from && r < to {
                pts.push(r);
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.push(to);
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let piece = tau00 * tau00 * (b - a) - ((b - c).powi(3) - (a - c).powi(3)) / 3.0;
            if piece >= 0.0 {
                q_plus += piece;
            } else {
                q_minus -= piece;
            }
        }
    };

    if tau1 <= theta {
        accumulate(0.0, 0.0, tau1);
    } else {
        accumulate(0.0, 0.0, theta);
        accumulate(shift, theta, tau1);
    }
    let a = spec.e0 * spec.e0 / spec.m * (q_plus - q_minus);
    (a, q_plus, q_minus)
}

/// Closed-form action on the jump branch: `A = 2 (E_R - E) theta`, valid
/// while the jump branch exists.
pub fn action_closed(spec: &BarrierSpec, step: &StepProfile) -> Result<f64, TriangularError> {
    let tau00 = spec.tau00();
    let theta = step.theta;
    if !((1.0 - step.lambda) * theta <= tau00 && tau00 <= theta) {
        return Err(TriangularError::Domain(format!(
            "jump branch requires (1-lambda) theta <= tau00 <= theta, \
             got tau00 = {tau00}, theta = {theta}, lambda = {}",
            step.lambda
        )));
    }
    let params = spec.resonance_params(theta);
    Ok(2.0 * (params.e_r - spec.e) * theta)
}

/// Energy gain and exit energy of a step-profile branch:
/// `delta_e = (V-E)/tau00^2 [tau00^2 - tau1^2 - 2 int int h]` and
/// `E + delta_e = V - E0 x1`.
pub fn energy_gain(spec: &BarrierSpec, step: &StepProfile, kind: BranchKind) -> (f64, f64) {
    let tau00 = spec.tau00();
    let theta = step.theta;
    let lambda = step.lambda;
    let tau1 = branch_tau1(tau00, step, kind);
    // Double integral of h up to tau1; the jump branch fires the kick at
    // its endpoint, contributing nothing to the double integral.
    let double = match kind {
        BranchKind::PreKick | BranchKind::Jump => 0.0,
        BranchKind::PostKick => -lambda * theta * (tau1 - theta),
    };
    let delta_e = spec.v_minus_e() / (tau00 * tau00) * (tau00 * tau00 - tau1 * tau1 - 2.0 * double);
    (delta_e, spec.e + delta_e)
}

fn branch_tau1(tau00: f64, step: &StepProfile, kind: BranchKind) -> f64 {
    match kind {
        BranchKind::PreKick => tau00,
        BranchKind::Jump => step.theta,
        BranchKind::PostKick => tau00 + step.lambda * step.theta,
    }
}

fn branch_x1(spec: &BarrierSpec, step: &StepProfile, kind: BranchKind) -> f64 {
    let tau00 = spec.tau00();
    let tau1 = branch_tau1(tau00, step, kind);
    let double = match kind {
        BranchKind::PreKick | BranchKind::Jump => 0.0,
        BranchKind::PostKick => -step.lambda * step.theta * (tau1 - step.theta),
    };
    spec.e0 / (2.0 * spec.m) * (tau1 * tau1 + 2.0 * double)
}

fn branch_action(spec: &BarrierSpec, step: &StepProfile, kind: BranchKind) -> f64 {
    let tau00 = spec.tau00();
    let theta = step.theta;
    let lambda = step.lambda;
    let scale = spec.e0 * spec.e0 / spec.m;
    match kind {
        BranchKind::PreKick => 2.0 / 3.0 * scale * tau00.powi(3),
        BranchKind::Jump => scale * (theta * tau00 * tau00 - theta.powi(3) / 3.0),
        BranchKind::PostKick => {
            let tau1 = tau00 + lambda * theta;
            let inner = (tau00.powi(3) - ((1.0 - lambda) * theta).powi(3)) / 3.0;
            scale * (tau1 * tau00 * tau00 - theta.powi(3) / 3.0 - inner)
        }
    }
}

/// Dip geometry of a smooth pulse's imaginary-time profile: the
/// `phi'(tau) = 0` crossings bracketing the kick, and branch-resolved roots
/// of `phi(tau) = tau00` between them.
struct DipGeometry {
    profile: QuarticImaginaryProfile,
    theta: f64,
    /// phi'(tau) = 0 crossings bracketing the dip, when the dip exists.
    tau_peak: Option<f64>,
    tau_valley: Option<f64>,
}

impl DipGeometry {
    fn new(profile: QuarticImaginaryProfile, theta: f64) -> Result<Self, TriangularError> {
        // The dip exists when |h| exceeds 1 at the peak.
        let g = |xi: f64| profile.h(xi) + 1.0;
        let (tau_peak, tau_valley) = if g(theta) < 0.0 {
            let peak = scan_bracket(g, 0.25 * theta, theta, 64)
                .map(|(a, b)| brent(g, a, b, 1e-13 * theta, 200))
                .transpose()?;
            let valley = scan_bracket(g, theta, 2.0 * theta, 64)
                .map(|(a, b)| brent(g, a, b, 1e-13 * theta, 200))
                .transpose()?;
            (peak, valley)
        } else {
            (None, None)
        };
        Ok(DipGeometry {
            profile,
            theta,
            tau_peak,
            tau_valley,
        })
    }

    /// Smoothed stand-in for the idealized step: a quartic-Gaussian with
    /// `Omega^4 theta^4 = 16` and matched effective amplitude, used to
    /// classify branch stability where the step's pointwise h is
    /// ill-defined.
    fn classifier(step: &StepProfile) -> Result<Self, TriangularError> {
        let theta = step.theta;
        let omega = 2.0 / theta; // Omega^2 theta^2 = 4
        let pulse = Pulse::quartic_from_lambda(step.lambda, omega, theta, 1.0)?;
        let profile = QuarticImaginaryProfile::new(&pulse, 1.0)?;
        DipGeometry::new(profile, theta)
    }

    /// Root of `phi(tau) = tau00` on the segment corresponding to a branch
    /// kind, if it exists at this smoothing.
    fn branch_root(&self, tau00: f64) -> impl Fn(BranchKind) -> Option<f64> + '_ {
        move |kind| {
            let f = |tau: f64| match self.profile.phi(tau) {
                Ok(p) => p - tau00,
                Err(_) => f64::NAN,
            };
            let bracket = match kind {
                BranchKind::PreKick => {
                    let hi = self.tau_peak.unwrap_or(self.theta).min(self.theta);
                    if f(hi) < 0.0 {
                        None
                    } else {
                        Some((0.0, hi))
                    }
                }
                BranchKind::Jump => match (self.tau_peak, self.tau_valley) {
                    (Some(p), Some(v)) => {
                        if f(p) >= 0.0 && f(v) <= 0.0 {
                            Some((p, v))
                        } else {
                            None
                        }
                    }
                    _ => None,
                },
                BranchKind::PostKick => {
                    let lo = self.tau_valley.unwrap_or(self.theta);
                    if f(lo) > 0.0 {
                        None
                    } else {
                        Some((lo, 4.0 * (tau00 + self.theta)))
                    }
                }
            };
            bracket.and_then(|(a, b)| brent(f, a, b, 1e-12 * self.theta, 200).ok())
        }
    }

    /// Locate the smoothed root of phi(tau) = tau00 that corresponds to a
    /// step branch, then evaluate the curvature sign there. Returns
    /// (root, curvature, stable).
    fn classify(
        &self,
        spec: &BarrierSpec,
        kind: BranchKind,
    ) -> Result<(Option<f64>, Option<f64>, bool), TriangularError> {
        match self.branch_root(spec.tau00())(kind) {
            Some(root) => match action_curvature_at_tau(spec, &self.profile, root) {
                Ok(c) => Ok((Some(root), Some(c), c < 0.0)),
                Err(TriangularError::CurvatureSingular { .. }) => Ok((Some(root), None, false)),
                Err(e) => Err(e),
            },
            None => {
                // No smoothed root at the classifier smoothing; fall back to
                // the instant-limit sign analysis: the descending-dip and
                // post-kick roots have negative curvature there, the
                // pre-kick one degenerates to the static Stokes point.
                let stable = matches!(kind, BranchKind::Jump | BranchKind::PostKick);
                Ok((None, None, stable))
            }
        }
    }

    /// Branch-merging time tau2 (vanishing map derivative) above theta.
    fn tau2(&self, spec: &BarrierSpec) -> Option<f64> {
        let tau00 = spec.tau00();
        let d = |tau: f64| tau00 - tau - tau * self.profile.h(tau);
        let (a, b) = scan_bracket(d, self.theta, 2.0 * self.theta, 256)?;
        brent(d, a, b, 1e-13 * self.theta, 200).ok()
    }
}

/// Enumerate the exit branches of a step profile, their closed-form actions
/// and energy gains, classify stability on the smoothed profile, and select
/// the physical branch of least action.
pub fn solve_branches(
    spec: &BarrierSpec,
    step: &StepProfile,
) -> Result<BranchSet, TriangularError> {
    let tau00 = spec.tau00();
    let theta = step.theta;
    let lambda = step.lambda;

    if lambda < 1e-14 {
        // Static limit: the single conventional branch.
        let branch = Branch {
            kind: BranchKind::PreKick,
            tau1: tau00,
            action: spec.static_action(),
            delta_e: 0.0,
            exit_energy: spec.e,
            x1: spec.static_exit_point(),
            stable: true,
            physical: true,
            smoothed_tau1: None,
            curvature: None,
        };
        return Ok(BranchSet {
            branches: vec![branch],
            tau2: None,
            selected: Some(0),
        });
    }

    let mut kinds = Vec::new();
    if tau00 <= theta {
        kinds.push(BranchKind::PreKick);
    }
    if (1.0 - lambda) * theta <= tau00 && tau00 <= theta {
        kinds.push(BranchKind::Jump);
    }
    if tau00 >= (1.0 - lambda) * theta {
        kinds.push(BranchKind::PostKick);
    }

    let smoothed = DipGeometry::classifier(step)?;
    let params = spec.resonance_params(theta);
    let e_ext = params.e_ext(lambda);
    let in_jump_window = (1.0 - lambda) * theta <= tau00 && tau00 <= theta;

    let mut branches = Vec::with_capacity(kinds.len());
    for kind in kinds {
        let tau1 = branch_tau1(tau00, step, kind);
        let action = branch_action(spec, step, kind);
        let (delta_e, exit_energy) = energy_gain(spec, step, kind);
        let x1 = branch_x1(spec, step, kind);
        let (smoothed_tau1, curvature, stable) = smoothed.classify(spec, kind)?;
        let tol_a = 1e-12 * spec.static_action().max(1.0);
        let tol_e = 1e-12 * spec.v_minus_e();
        // Inside the jump window the post-kick root sits beyond further
        // folds of the multivalued action surface; the single continuation
        // around the singular point only reaches the jump branch there.
        let reachable = match kind {
            BranchKind::PostKick => !in_jump_window,
            _ => true,
        };
        let physical = stable
            && reachable
            && action >= -tol_a
            && delta_e <= tol_e
            && !(kind == BranchKind::Jump && spec.e > e_ext + tol_e);
        branches.push(Branch {
            kind,
            tau1,
            action,
            delta_e,
            exit_energy,
            x1,
            stable,
            physical,
            smoothed_tau1,
            curvature,
        });
    }

    let selected = branches
        .iter()
        .enumerate()
        .filter(|(_, b)| b.physical)
        .min_by(|a, b| a.1.action.total_cmp(&b.1.action))
        .map(|(i, _)| i);

    Ok(BranchSet {
        branches,
        tau2: smoothed.tau2(spec),
        selected,
    })
}

/// Residual of the action decomposition `A = A0(E + dE) + 2 theta dE` on a
/// step branch; vanishes identically on the jump branch.
pub fn action_decomposition_check(spec: &BarrierSpec, step: &StepProfile, branch: &Branch) -> f64 {
    branch.action - (spec.static_action_at(branch.exit_energy) + 2.0 * step.theta * branch.delta_e)
}

/// Duration of the exit wave packet at resonance:
/// `dt = theta [4 / (3 (V - E_R) theta)]^(1/4)`.
pub fn exit_packet_duration(spec: &BarrierSpec, theta: f64) -> f64 {
    let v_minus_er = theta * theta * spec.e0 * spec.e0 / (6.0 * spec.m);
    theta * (4.0 / (3.0 * v_minus_er * theta)).powf(0.25)
}

/// General packet duration from the action curvature at the exit point:
/// `dt = [E0^2 |curvature| / (8 m^2)]^(-1/4)` (curvature must be negative).
pub fn packet_duration_from_curvature(
    spec: &BarrierSpec,
    curvature: f64,
) -> Result<f64, TriangularError> {
    if curvature >= 0.0 {
        return Err(TriangularError::Domain(format!(
            "packet duration needs a stable exit (negative curvature), got {curvature}"
        )));
    }
    Ok((spec.e0 * spec.e0 * (-curvature) / (8.0 * spec.m * spec.m)).powf(-0.25))
}

/// First non-semiclassical correction at the exit point:
/// `i sigma1 = -ln sqrt(1 - (tau1/tau00)(1 + h(tau1))) - 1/2`.
pub fn sigma1<P: ImaginaryTimeProfile>(
    spec: &BarrierSpec,
    profile: &P,
    tau1: f64,
) -> Result<f64, TriangularError> {
    let arg = 1.0 - tau1 / spec.tau00() * (1.0 + profile.h(tau1));
    if arg <= 0.0 {
        return Err(TriangularError::StokesPoint { tau1, arg });
    }
    Ok(-arg.sqrt().ln() - 0.5)
}

/// Exponent of the tunneling probability as a function of the signal time:
/// `3 sqrt(3) A0 (theta_R - theta)/theta_R` below the resonance time,
/// saturating at the static exponent `A0` above it.
pub fn probability_vs_theta(spec: &BarrierSpec, theta: f64) -> f64 {
    let theta_r = spec.resonance_theta();
    if theta > theta_r {
        spec.static_action()
    } else {
        3.0 * 3.0f64.sqrt() * spec.static_action() * (theta_r - theta) / theta_r
    }
}

/// Advisory semiclassical-validity margins; the `<<` conditions are
/// operationalized as ratio <= 0.1.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SemiclassicalCheck {
    /// Exact-model condition ratio (quartic pulse); None when theta <= tau00
    /// where the driven regime does not apply.
    pub triangular_ratio: Option<f64>,
    pub triangular_ok: Option<bool>,
    /// Generic smooth-potential ratio `Omega^2 theta^2 / ((V-E) theta)`
    /// (the condition for pole-kick signals).
    pub smooth_ratio: f64,
    pub smooth_ok: bool,
}

pub fn semiclassical_check(spec: &BarrierSpec, omega: f64, theta: f64) -> SemiclassicalCheck {
    let tau00 = spec.tau00();
    let o2t2 = omega * omega * theta * theta;
    let ve_theta = spec.v_minus_e() * theta;
    let smooth_ratio = o2t2 / ve_theta;
    let triangular_ratio = if theta > tau00 {
        Some(tau00 / (theta - tau00) * o2t2 * o2t2 * o2t2.ln() / ve_theta)
    } else {
        None
    };
    SemiclassicalCheck {
        triangular_ratio,
        triangular_ok: triangular_ratio.map(|r| r <= 0.1),
        smooth_ratio,
        smooth_ok: smooth_ratio <= 0.1,
    }
}

/// Euclidean trajectory of a step-profile exit branch, parametrized by the
/// imaginary time tau in [0, tau1]: starts at the exit point with zero
/// velocity and terminates at the well with the static entry speed.
pub struct BranchTrajectory<'a, P: ImaginaryTimeProfile> {
    spec: &'a BarrierSpec,
    profile: &'a P,
    pub tau1: f64,
}

impl<'a, P: ImaginaryTimeProfile> BranchTrajectory<'a, P> {
    pub fn new(spec: &'a BarrierSpec, profile: &'a P, tau1: f64) -> Self {
        BranchTrajectory {
            spec,
            profile,
            tau1,
        }
    }

    pub fn position(&self, tau: f64) -> Result<f64, TriangularError> {
        let d1 = self.profile.h_double_integral(self.tau1)?;
        let d = self.profile.h_double_integral(tau)?;
        Ok(self.spec.e0 / (2.0 * self.spec.m)
            * (self.tau1 * self.tau1 - tau * tau + 2.0 * (d1 - d)))
    }

    /// dx/dtau; at the endpoint tau1 the exit boundary value
    /// `-sqrt(2(V-E)/m)` is reported (the step kick is mid-delivery there).
    pub fn velocity(&self, tau: f64) -> Result<f64, TriangularError> {
        if tau >= self.tau1 {
            return Ok(-(2.0 * self.spec.v_minus_e() / self.spec.m).sqrt());
        }
        Ok(-self.spec.e0 / self.spec.m * self.profile.phi(tau)?)
    }
}

/// Validity diagnostics attached to probability reports.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct ProbabilityFlags {
    /// exp(-A) is not small (A < 3): exponential accuracy marginal.
    pub exponent_not_small: bool,
    /// The short-time static expansion t(V-E)exp(-A0) approaches 1.
    pub static_term_saturated: bool,
    /// No stable driven branch: only the static channel contributes.
    pub no_stable_branch: bool,
    /// Pulse outside the instant-signal regime.
    pub instant_regime_violated: bool,
}

/// Escape probability decomposition per the exact-model formula.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EscapeProbability {
    pub total: f64,
    pub static_term: f64,
    pub driven_term: f64,
    /// Arrival step time `sqrt(2m (x_det - x1)/E0)`.
    pub arrival_time: Option<f64>,
    /// Driven prefactor (coefficient of exp(-A) in the second term).
    pub prefactor: Option<f64>,
    /// First non-semiclassical correction at the selected exit.
    pub sigma1: Option<f64>,
    /// Exponent of the energy-resolved driven form `2 (E_R - E) theta`,
    /// gated by `E <= E_ext`; infinite outside the window.
    pub exponent_vs_energy: f64,
    /// Exponent of the theta-resolved form.
    pub exponent_vs_theta: f64,
    pub branches: BranchSet,
    pub flags: ProbabilityFlags,
}

/// Total probability to find the particle outside the barrier at time `t`
/// with a detector at `x_det`, for a quartic-Gaussian pulse against the
/// static field.
pub fn escape_probability(
    spec: &BarrierSpec,
    pulse: &Pulse,
    t: f64,
    x_det: f64,
) -> Result<EscapeProbability, TriangularError> {
    let step = StepProfile::from_pulse(pulse, spec.e0)?;
    let branches = solve_branches(spec, &step)?;
    let a0 = spec.static_action();
    let static_term = t * spec.v_minus_e() * (-a0).exp();

    let mut flags = ProbabilityFlags {
        static_term_saturated: static_term > 0.1,
        instant_regime_violated: !pulse.instant_regime_ok(),
        ..Default::default()
    };

    let params = spec.resonance_params(step.theta);
    let exponent_vs_energy = if spec.e <= params.e_ext(step.lambda) {
        2.0 * (params.e_r - spec.e) * step.theta
    } else {
        f64::INFINITY
    };
    let exponent_vs_theta = probability_vs_theta(spec, step.theta);

    let selected = branches.selected_branch().copied();
    let (driven_term, arrival_time, prefactor, sigma1_value) = match selected {
        Some(branch) if branch.kind != BranchKind::PreKick => {
            if branch.action < 3.0 {
                flags.exponent_not_small = true;
            }
            // Prefactor needs the smoothed h at the exit root of the actual
            // pulse (the step limit leaves it ill-defined).
            let profile = QuarticImaginaryProfile::new(pulse, spec.e0)?;
            let dip = DipGeometry::new(profile, pulse.theta)?;
            let tau1s = dip.branch_root(spec.tau00())(branch.kind).unwrap_or(branch.tau1);
            let h1 = dip.profile.h(tau1s);
            let tau00 = spec.tau00();
            let sigma1_value = sigma1(spec, &dip.profile, tau1s).ok();
            let denom = (tau1s * h1 + tau1s - tau00) * (1.0 + h1);
            if denom <= 0.0 {
                flags.no_stable_branch = true;
                (0.0, None, None, sigma1_value)
            } else {
                let arrival = (2.0 * spec.m * (x_det - branch.x1) / spec.e0)
                    .max(0.0)
                    .sqrt();
                let pref = 4.0 / std::f64::consts::E
                    * spec.v_minus_e()
                    * (2.0 * std::f64::consts::PI * spec.m).sqrt()
                    / spec.e0
                    / denom.sqrt();
                let term = if t >= arrival {
                    pref * (-branch.action).exp()
                } else {
                    0.0
                };
                (term, Some(arrival), Some(pref), sigma1_value)
            }
        }
        _ => {
            flags.no_stable_branch = true;
            (0.0, None, None, None)
        }
    };

    Ok(EscapeProbability {
        total: static_term + driven_term,
        static_term,
        driven_term,
        arrival_time,
        prefactor,
        sigma1: sigma1_value,
        exponent_vs_energy,
        exponent_vs_theta,
        branches,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_spec(tau00: f64) -> BarrierSpec {
        // E0 = m = 1, so V - E = tau00^2 / 2 and the action scale E0^2/m = 1.
        BarrierSpec::from_barrier_height(tau00 * tau00 / 2.0, 1.0, 1.0).unwrap()
    }

    fn hydrogen_like() -> BarrierSpec {
        BarrierSpec::from_barrier_height(0.5, 3.89e-3, 1.0).unwrap()
    }

    #[test]
    fn tau00_values() {
        let s = hydrogen_like();
        assert_relative_eq!(s.tau00(), 1.0 / 3.89e-3, max_relative = 1e-12);
        assert!((s.tau00() - 257.07).abs() < 0.01);

        let s = BarrierSpec::from_barrier_height(1.0, 1.0, 2.0).unwrap();
        assert_relative_eq!(s.tau00(), 2.0);

        // vanishing barrier
        let s = BarrierSpec::new(1.0 + 1e-15, 1.0, 1.0, 1.0).unwrap();
        assert!(s.tau00() < 1e-7);
    }

    #[test]
    fn static_action_values() {
        let s = hydrogen_like();
        assert_relative_eq!(
            s.static_action(),
            4.0 / 3.0 * 0.5 * s.tau00(),
            max_relative = 1e-14
        );
        assert!((s.static_action() - 171.4).abs() < 0.1);
    }

    #[test]
    fn resonance_theta_ratio_and_consistency() {
        let s = hydrogen_like();
        assert_relative_eq!(
            s.resonance_theta() / s.tau00(),
            3.0f64.sqrt(),
            max_relative = 1e-14
        );
        // E_R(theta_R) = E
        let params = s.resonance_params(s.resonance_theta());
        assert_relative_eq!(params.e_r, s.e, epsilon = 1e-12 * s.v_minus_e());
    }

    #[test]
    fn lambda_threshold_exact() {
        assert_relative_eq!(LAMBDA_T, 1.0 - 1.0 / 3.0f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn e_ext_limits() {
        let s = unit_spec(0.8);
        let p = s.resonance_params(1.0);
        // above threshold: E_ext = E_R
        assert_eq!(p.e_ext(0.6), p.e_r);
        assert_eq!(p.e_ext(LAMBDA_T), p.e_r);
        // lambda = 0: E_ext = E_R - theta^2 E0^2 / 9m
        assert_relative_eq!(p.e_ext(0.0), p.e_r - 1.0 / 9.0, max_relative = 1e-12);
    }

    #[test]
    fn map_examples() {
        let s = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        // tau0 = 0 -> x = 0
        assert_eq!(map_tau_to_x(&s, &step, 0.0).unwrap(), 0.0);
        // static: tau0 = tau00 -> (E0/2m) tau00^2 = (V-E)/E0
        let zero = StepProfile::new(0.0, 1.0).unwrap();
        assert_relative_eq!(
            map_tau_to_x(&s, &zero, 0.8).unwrap(),
            s.static_exit_point(),
            max_relative = 1e-14
        );
        // step at tau0 = theta (kick not yet delivered): (E0/2m)(2*0.8 - 1)
        assert_relative_eq!(
            map_tau_to_x(&s, &step, 1.0).unwrap(),
            0.5 * (2.0 * 0.8 - 1.0),
            max_relative = 1e-14
        );
    }

    #[test]
    fn gradient_examples() {
        let s = unit_spec(0.8);
        let zero = StepProfile::new(0.0, 1.0).unwrap();
        // h = 0, x = 0: gradient = -E0 tau00 = -sqrt(2m(V-E))
        assert_relative_eq!(
            action_gradient(&s, &zero, 0.0).unwrap(),
            -(2.0 * s.m * s.v_minus_e()).sqrt(),
            max_relative = 1e-12
        );
        // at the static exit point the gradient vanishes
        let g = action_gradient(&s, &zero, s.static_exit_point()).unwrap();
        assert!(g.abs() < 1e-9);
        // step profile just past the kick: E0 (phi - tau00) = 0.5 - 0.8
        let step = StepProfile::new(0.5, 1.0).unwrap();
        assert_relative_eq!(
            action_gradient_at_tau(&s, &step, 1.0 + 1e-12).unwrap(),
            0.5 - 0.8,
            max_relative = 1e-9
        );
    }

    #[test]
    fn curvature_examples() {
        let s = unit_spec(0.8);
        let zero = StepProfile::new(0.0, 1.0).unwrap();
        // entry point: m / tau00
        assert_relative_eq!(
            action_curvature_at_tau(&s, &zero, 0.0).unwrap(),
            s.m / 0.8,
            max_relative = 1e-14
        );
        // static Stokes point: singular
        assert!(matches!(
            action_curvature_at_tau(&s, &zero, 0.8),
            Err(TriangularError::CurvatureSingular { .. })
        ));
    }

    #[test]
    fn branch_actions_reference_case() {
        // theta = 1, lambda = 0.5, tau00 = 0.8, E0^2/m = 1
        let s = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        let set = solve_branches(&s, &step).unwrap();
        assert_eq!(set.branches.len(), 3);
        let by_kind = |k: BranchKind| set.branches.iter().find(|b| b.kind == k).unwrap();
        assert_relative_eq!(
            by_kind(BranchKind::PreKick).action,
            0.341333333333,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            by_kind(BranchKind::Jump).action,
            0.306666666667,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            by_kind(BranchKind::PostKick).action,
            0.369666666667,
            max_relative = 1e-9
        );
        // selected: the jump branch
        let sel = set.selected_branch().unwrap();
        assert_eq!(sel.kind, BranchKind::Jump);
        assert_relative_eq!(sel.tau1, 1.0);
        // stability pattern: jump and post-kick stable
        assert!(by_kind(BranchKind::Jump).stable);
        assert!(by_kind(BranchKind::PostKick).stable);
        assert!(!by_kind(BranchKind::PreKick).stable);
    }

    #[test]
    fn branch_geometry_other_regions() {
        // tau00 > theta (1 + lambda): only the post-kick branch
        let s = unit_spec(2.0);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        let set = solve_branches(&s, &step).unwrap();
        assert_eq!(set.branches.len(), 1);
        assert_eq!(set.branches[0].kind, BranchKind::PostKick);
        assert_relative_eq!(set.branches[0].tau1, 2.5);

        // lambda -> 0: single static branch with A = A0
        let set = solve_branches(&s, &StepProfile::new(0.0, 1.0).unwrap()).unwrap();
        assert_eq!(set.branches.len(), 1);
        assert_relative_eq!(
            set.branches[0].action,
            s.static_action(),
            max_relative = 1e-14
        );
        assert_eq!(set.branches[0].delta_e, 0.0);
    }

    #[test]
    fn quadrature_route_matches_closed_forms() {
        let s = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        for (tau1, expect) in [
            (0.8, 0.34133333333333),
            (1.0, 0.30666666666667),
            (1.3, 0.36966666666667),
        ] {
            let a = action_quadrature(&s, &step, tau1).unwrap();
            assert_relative_eq!(a, expect, max_relative = 1e-9);
        }
        // static: quadrature equals A0
        let zero = StepProfile::new(0.0, 1.0).unwrap();
        assert_relative_eq!(
            action_quadrature(&s, &zero, 0.8).unwrap(),
            s.static_action(),
            max_relative = 1e-11
        );
    }

    #[test]
    fn area_route_matches() {
        let s = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        let (a, _qp, _qm) = action_area(&s, &step, 1.0);
        assert_relative_eq!(a, 0.30666666666667, max_relative = 1e-12);
        let (a, _, qm) = action_area(&s, &step, 0.8);
        assert_relative_eq!(a, 0.34133333333333, max_relative = 1e-12);
        assert_eq!(qm, 0.0);
        let (a, _, _) = action_area(&s, &step, 1.3);
        assert_relative_eq!(a, 0.36966666666667, max_relative = 1e-12);
        // lambda = 0: Q- = 0 and A = A0
        let zero = StepProfile::new(0.0, 1.0).unwrap();
        let (a, _, qm) = action_area(&s, &zero, 0.8);
        assert_eq!(qm, 0.0);
        assert_relative_eq!(a, s.static_action(), max_relative = 1e-12);
        // at resonance the two areas balance exactly
        let sr = unit_spec(1.0 / 3.0f64.sqrt());
        let (a, qp, qm) = action_area(&sr, &step, 1.0);
        assert_relative_eq!(qp, qm, max_relative = 1e-12);
        assert!(a.abs() < 1e-14);
    }

    #[test]
    fn closed_form_jump_action() {
        let s = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        // E_R - E = (V-E) - theta^2/6 = 0.32 - 1/6
        let a = action_closed(&s, &step).unwrap();
        assert_relative_eq!(a, 2.0 * (0.32 - 1.0 / 6.0), max_relative = 1e-12);
        assert_relative_eq!(a, 0.30666666666667, max_relative = 1e-10);
        // at resonance tau00 = theta/sqrt(3): zero
        let s = unit_spec(1.0 / 3.0f64.sqrt());
        let a = action_closed(&s, &step).unwrap();
        assert!(a.abs() < 1e-12);
        // domain error outside the window
        let s = unit_spec(2.0);
        assert!(action_closed(&s, &step).is_err());
    }

    #[test]
    fn energy_gain_examples() {
        // resonance: delta_e = -2 (V - E_R), exit energy V - 3(V - E_R)
        let theta = 1.0;
        let s = unit_spec(theta / 3.0f64.sqrt());
        let step = StepProfile::new(0.5, theta).unwrap();
        let (de, exit) = energy_gain(&s, &step, BranchKind::Jump);
        let p = s.resonance_params(theta);
        assert_relative_eq!(de, -2.0 * (s.v - p.e_r), max_relative = 1e-12);
        assert_relative_eq!(exit, s.v - 3.0 * (s.v - p.e_r), max_relative = 1e-12);
        // lambda = 0 -> no gain on the static branch
        let zero = StepProfile::new(0.0, theta).unwrap();
        let (de, _) = energy_gain(&s, &zero, BranchKind::PreKick);
        assert_eq!(de, 0.0);
    }

    #[test]
    fn exit_point_matches_coordinate_map() {
        // x1 of the parabola branches equals the coordinate map at tau1;
        // on the jump branch the kick fires at the endpoint and the map's
        // weighted integral is taken just before delivery.
        let s = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        let set = solve_branches(&s, &step).unwrap();
        for b in &set.branches {
            if b.kind != BranchKind::Jump {
                let mapped = map_tau_to_x(&s, &step, b.tau1).unwrap();
                assert_relative_eq!(mapped, b.x1, epsilon = 1e-12);
            }
        }
        // tau00 > theta: the post-kick branch is the principal one
        let s2 = unit_spec(2.0);
        let set2 = solve_branches(&s2, &step).unwrap();
        let post = &set2.branches[0];
        assert_relative_eq!(
            map_tau_to_x(&s2, &step, post.tau1).unwrap(),
            post.x1,
            epsilon = 1e-12
        );
    }

    #[test]
    fn exit_energy_bookkeeping() {
        // E + delta_e = V - E0 x1 for every branch
        let s = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        let set = solve_branches(&s, &step).unwrap();
        for b in &set.branches {
            assert_relative_eq!(
                b.exit_energy,
                s.v - s.e0 * b.x1,
                epsilon = 1e-12 * s.v_minus_e()
            );
        }
    }

    #[test]
    fn decomposition_identity() {
        let s = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        let set = solve_branches(&s, &step).unwrap();
        let jump = set
            .branches
            .iter()
            .find(|b| b.kind == BranchKind::Jump)
            .unwrap();
        let residual = action_decomposition_check(&s, &step, jump);
        assert!(residual.abs() <= 1e-9 * jump.action);
        // at resonance both decomposition parts cancel
        let sr = unit_spec(1.0 / 3.0f64.sqrt());
        let setr = solve_branches(&sr, &step).unwrap();
        let jr = setr
            .branches
            .iter()
            .find(|b| b.kind == BranchKind::Jump)
            .unwrap();
        let a0_part = sr.static_action_at(jr.exit_energy);
        let de_part = 2.0 * step.theta * jr.delta_e;
        assert_relative_eq!(a0_part, 2.0 / 3.0, max_relative = 1e-9);
        assert_relative_eq!(de_part, -2.0 / 3.0, max_relative = 1e-9);
    }

    #[test]
    fn packet_duration() {
        // (V - E_R) theta = 4/3 -> dt = theta;
        // theta^3 E0^2 / 6m = 4/3 with E0 = m = 1 gives theta = 2.
        let s = unit_spec(0.5);
        let dt = exit_packet_duration(&s, 2.0);
        assert_relative_eq!(dt, 2.0, max_relative = 1e-12);
        // hydrogen at resonance: dt / theta ~ 0.278
        let h = hydrogen_like();
        let tr = h.resonance_theta();
        assert!((exit_packet_duration(&h, tr) / tr - 0.278).abs() < 1e-3);
    }

    #[test]
    fn packet_duration_vs_curvature_route() {
        // dt from the smoothed curvature agrees with the resonance closed
        // form within 5% at Omega^4 theta^4 = 16, lambda = 1.
        let theta = 1.0f64;
        let s = unit_spec(theta / 3.0f64.sqrt());
        let step = StepProfile::new(1.0, theta).unwrap();
        let set = solve_branches(&s, &step).unwrap();
        let jump = set
            .branches
            .iter()
            .find(|b| b.kind == BranchKind::Jump)
            .unwrap();
        let curv = jump.curvature.expect("smoothed curvature available");
        let dt_curv = packet_duration_from_curvature(&s, curv).unwrap();
        let dt_res = exit_packet_duration(&s, theta);
        assert!(
            (dt_curv - dt_res).abs() <= 0.05 * dt_res,
            "dt(curvature) = {dt_curv}, dt(resonance) = {dt_res}"
        );
    }

    #[test]
    fn sigma1_examples() {
        let s = unit_spec(1.0);
        let zero = StepProfile::new(0.0, 1.0).unwrap();
        // tau1/tau00 = 0.5, h = 0
        let v = sigma1(&s, &zero, 0.5).unwrap();
        assert_relative_eq!(v, -(0.5f64.sqrt().ln()) - 0.5, max_relative = 1e-12);
        assert!((v + 0.15343).abs() < 1e-4);
        // h = -1 kills the log term (argument 1): i sigma1 = -1/2
        let arg: f64 = 1.0;
        assert_relative_eq!(-(arg.sqrt().ln()) - 0.5, -0.5);
        // static Stokes limit diverges
        assert!(matches!(
            sigma1(&s, &zero, 1.0),
            Err(TriangularError::StokesPoint { .. })
        ));
    }

    #[test]
    fn probability_vs_theta_limits() {
        let s = hydrogen_like();
        let tr = s.resonance_theta();
        assert_eq!(probability_vs_theta(&s, tr), 0.0);
        assert_relative_eq!(
            probability_vs_theta(&s, 0.0),
            3.0 * 3.0f64.sqrt() * s.static_action(),
            max_relative = 1e-12
        );
        // theta = 0.99 theta_R: exponent = 3 sqrt(3) A0 / 100
        let a0 = s.static_action();
        let expect = 3.0 * 3.0f64.sqrt() * a0 * 0.01;
        assert_relative_eq!(
            probability_vs_theta(&s, 0.99 * tr),
            expect,
            max_relative = 1e-9
        );
        // above theta_R: static exponent
        assert_eq!(probability_vs_theta(&s, 1.5 * tr), a0);
    }

    #[test]
    fn semiclassical_margins() {
        let s = hydrogen_like();
        let theta = s.resonance_theta();
        // Omega^2 theta^2 = 15
        let omega = 15.0f64.sqrt() / theta;
        let c = semiclassical_check(&s, omega, theta);
        assert_relative_eq!(c.smooth_ratio, 15.0 / (0.5 * theta), max_relative = 1e-12);
        assert!(c.smooth_ratio < 0.1 && c.smooth_ok);
        // ratio = 1 when Omega^2 theta^2 = (V-E) theta
        let omega = (s.v_minus_e() * theta).sqrt() / theta;
        let c = semiclassical_check(&s, omega, theta);
        assert_relative_eq!(c.smooth_ratio, 1.0, max_relative = 1e-12);
        assert!(!c.smooth_ok);
        // Omega -> 0
        let c = semiclassical_check(&s, 1e-8, theta);
        assert!(c.smooth_ratio < 1e-10 && c.smooth_ok);
    }

    #[test]
    fn trajectory_boundary_conditions() {
        let s = unit_spec(0.8);
        let zero = StepProfile::new(0.0, 1.0).unwrap();
        let tr = BranchTrajectory::new(&s, &zero, 0.8);
        // x(tau1) = 0, x(0) = static exit point
        assert!(tr.position(0.8).unwrap().abs() < 1e-14);
        assert_relative_eq!(
            tr.position(0.0).unwrap(),
            s.static_exit_point(),
            max_relative = 1e-14
        );
        // velocities
        assert_eq!(tr.velocity(0.0).unwrap(), 0.0);
        assert_relative_eq!(
            tr.velocity(0.8).unwrap(),
            -(2.0 * s.v_minus_e() / s.m).sqrt(),
            max_relative = 1e-14
        );
        // post-kick branch endpoint velocity
        let step = StepProfile::new(0.5, 1.0).unwrap();
        let tr = BranchTrajectory::new(&s, &step, 1.3);
        assert!(tr.position(1.3).unwrap().abs() < 1e-12);
        assert_relative_eq!(
            tr.velocity(1.3).unwrap(),
            -(2.0 * s.v_minus_e() / s.m).sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn escape_probability_static_only() {
        let s = unit_spec(0.8);
        let pulse = Pulse::quartic_gaussian(0.0, 2.0, 1.0).unwrap();
        let w = escape_probability(&s, &pulse, 3.0, 2.0 * s.static_exit_point()).unwrap();
        assert_eq!(w.driven_term, 0.0);
        assert!(w.flags.no_stable_branch);
        assert_relative_eq!(
            w.static_term,
            3.0 * s.v_minus_e() * (-s.static_action()).exp(),
            max_relative = 1e-12
        );
        assert_eq!(w.total, w.static_term);
    }

    #[test]
    fn escape_probability_resonant() {
        // at resonance the driven exponent vanishes: W of order the prefactor
        let theta = 1.0f64;
        let s = unit_spec(theta / 3.0f64.sqrt());
        let pulse = Pulse::quartic_from_lambda(0.6, 2.0 / theta, theta, s.e0).unwrap();
        let w = escape_probability(&s, &pulse, 10.0, 1.0).unwrap();
        let sel = w.branches.selected_branch().unwrap();
        assert_eq!(sel.kind, BranchKind::Jump);
        assert!(sel.action.abs() < 1e-9);
        assert!(w.flags.exponent_not_small);
        assert!(w.exponent_vs_energy.abs() < 1e-9);
        assert!(w.driven_term > 0.0);
    }

    #[test]
    fn derivative_matching_at_window_edge() {
        // dA/dE of the jump form equals dA0/dE at tau00 = theta, by central
        // finite differences in E with relative step 1e-5.
        let theta = 1.0;
        let e0 = 1.0;
        let m = 1.0;
        let v = 1.0;
        let e_edge = v - theta * theta * e0 * e0 / (2.0 * m); // tau00 = theta
        let de = 1e-5 * (v - e_edge);
        let jump_action = |e: f64| {
            let s = BarrierSpec::new(v, e, e0, m).unwrap();
            let step = StepProfile::new(0.5, theta).unwrap();
            action_quadrature(&s, &step, theta).unwrap()
        };
        let static_action = |e: f64| BarrierSpec::new(v, e, e0, m).unwrap().static_action();
        let da = (jump_action(e_edge + de) - jump_action(e_edge - de)) / (2.0 * de);
        let da0 = (static_action(e_edge + de) - static_action(e_edge - de)) / (2.0 * de);
        assert_relative_eq!(da, da0, max_relative = 1e-4);
        // analytic value: both -2 theta
        assert_relative_eq!(da, -2.0 * theta, max_relative = 1e-4);
    }

    #[test]
    fn branch_tau2_near_kick() {
        let s = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        let set = solve_branches(&s, &step).unwrap();
        let tau2 = set.tau2.expect("tau2 exists in the driven window");
        // tau2 - theta ~ sqrt(ln Omega^2 theta^2) / (2 Omega^2 theta) at the
        // classifier smoothing Omega^2 theta^2 = 4
        let est = 1.0 + (4.0f64.ln()).sqrt() / 8.0;
        assert!((tau2 - est).abs() < 0.1, "tau2 = {tau2}, estimate {est}");
    }

    #[test]
    fn scaling_invariance_of_selection() {
        // scaling V-E and E0^2 by a common factor at fixed m preserves tau00
        // and theta, rescales all actions uniformly, and keeps the selected
        // branch index.
        let s1 = unit_spec(0.8);
        let step = StepProfile::new(0.5, 1.0).unwrap();
        let set1 = solve_branches(&s1, &step).unwrap();
        let c2 = 7.3;
        let s2 = BarrierSpec::from_barrier_height(c2 * 0.32, c2.sqrt() * 1.0, 1.0).unwrap();
        assert_relative_eq!(s2.tau00(), 0.8, max_relative = 1e-12);
        let set2 = solve_branches(&s2, &step).unwrap();
        assert_eq!(set1.selected, set2.selected);
        for (b1, b2) in set1.branches.iter().zip(&set2.branches) {
            assert_relative_eq!(b2.action, c2 * b1.action, max_relative = 1e-9);
        }
    }
}
