//! Integrate the complex-time Newton equation along the instant-signal
//! contour: free dive at the lowered energy, a full loop around the signal
//! pole collecting the momentum kick, free continuation at the original
//! energy. Cross-checks the kick, the energy gain and the action against
//! the closed-form/quadrature routes.
//!
//! Run with: `cargo run --example euclidean_trajectory`

use euclidean_resonance::pulses::Pulse;
use euclidean_resonance::quantities::UnitSystem;
use euclidean_resonance::smooth::{
    integrate_euclidean, turning_points, ContourSpec, InstantSignalProblem, PotentialModel,
    TabulatedPotential,
};

fn main() {
    // A smooth well with the inner matching point at the energy crossing
    // V(x0) = E, where the extremal kick lands the particle exactly at rest.
    let n = 2400;
    let l = 6.0;
    let xs: Vec<f64> = (0..=n).map(|i| l * i as f64 / n as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|x| 4.0 * (x / l) * (1.0 - x / l)).collect();
    let tab = TabulatedPotential::new(xs, vs, UnitSystem::Atomic).unwrap();
    let pot = PotentialModel::Tabulated(tab);
    let e = 0.55;
    let x0 = *turning_points(&pot, e).unwrap().first().unwrap();
    let problem = InstantSignalProblem::new(pot, 1.0, x0).unwrap();
    let theta = 0.85 * problem.transit_time(e).unwrap();
    let omega = 15.0f64.sqrt() / theta;

    // The extremal amplitude: the kick that brings the dived particle to
    // the matching point with the right energy.
    let eps = problem.extremal_field(e, theta, omega).unwrap();
    let pulse = Pulse::lorentz_gaussian(eps, omega, theta).unwrap();
    println!(
        "sampled well-plus-barrier, E = {e}, x0 = {x0:.4}, theta = {theta:.4}, \
         Omega^2 theta^2 = 15, eps_ext = {eps:.3e}"
    );

    let sol = integrate_euclidean(&problem, &pulse, e, &ContourSpec::default()).unwrap();
    let delta_e = problem.delta_e_of_theta(e, theta).unwrap();
    let action = problem.action(e, theta).unwrap();

    println!("\nODE route vs quadrature route:");
    println!(
        "  momentum kick   {:.6e}  (pole residue {:.6e})",
        sol.momentum_kick.unwrap().norm(),
        pulse.contour_kick().unwrap()
    );
    println!(
        "  delta_e energy  {:.6}   (transit inversion {delta_e:.6})",
        sol.delta_e_energy
    );
    println!("  delta_e work    {:.6}", sol.delta_e_work);
    println!(
        "  action          {:.6}   (dived-transit form {action:.6})",
        sol.action
    );
    println!(
        "  coordinate jump across the kick: {:.3e}",
        sol.coordinate_jump.unwrap()
    );
    println!(
        "  energy drift on free segments: {:.2e} / {:.2e}",
        sol.energy_drift[0], sol.energy_drift[1]
    );

    println!("\nsample points (segment, Im t, x, dx/dtau, energy):");
    for p in sol.points.iter().step_by(sol.points.len() / 12) {
        let v = (num_complex::Complex64::i() * p.velocity).re;
        println!(
            "  {}  {:8.4}  {:8.5}  {:8.5}  {:8.5}",
            p.segment, p.t.im, p.x.re, v, p.energy.re
        );
    }
}
