//! Threshold signal amplitudes: the smallest pulse that drives the
//! resonance, for the exactly solvable barrier and for the Coulomb tail.
//! The amplitude is exponentially small in Omega^2 theta^2, which is why a
//! laboratory-scale signal can beat a barrier it could never tear down
//! statically.
//!
//! Run with: `cargo run --example threshold_fields`

use euclidean_resonance::smooth::{InstantSignalProblem, PotentialModel};
use euclidean_resonance::triangular::BarrierSpec;

fn main() {
    // Exactly solvable barrier (natural units)
    let spec = BarrierSpec::from_barrier_height(0.5, 1.0, 1.0).unwrap();
    let problem = InstantSignalProblem::new(
        PotentialModel::Triangular {
            v: spec.v,
            e0: spec.e0,
        },
        spec.m,
        0.0,
    )
    .unwrap();
    let bracket = (spec.e - 3.0 * spec.v_minus_e() - 10.0, spec.v);

    // Fixed signal bandwidth: the Gaussian enhancement e^(Omega^2 theta^2)
    // then grows with theta and the threshold collapses accordingly.
    let omega = 15.0f64.sqrt() / spec.tau00();
    println!("triangular barrier, V - E = 0.5, E0 = 1, fixed Omega = {omega:.3}");
    println!(
        "{:>8} {:>10} {:>12} {:>12}",
        "theta", "O2t2", "E_R", "eps_T/E0"
    );
    for factor in [1.1, 1.3, 1.5, 1.7, 2.0] {
        let theta = factor * spec.tau00();
        let o2t2 = omega * omega * theta * theta;
        let e_r = problem.resonance_energy(theta, bracket).unwrap();
        let eps_t = problem.threshold_field(theta, omega, bracket).unwrap();
        println!(
            "{theta:8.3} {o2t2:10.2} {e_r:12.5} {:12.4e}",
            eps_t / spec.e0
        );
    }

    // Coulomb tail (alpha decay numbers, MeV-based natural units)
    let beta = 0.8465;
    let m = 3727.379;
    let e = 1.9;
    let coulomb = InstantSignalProblem::new(PotentialModel::Coulomb { beta }, m, 0.0).unwrap();
    let theta_r = std::f64::consts::PI * beta * (27.0 * m / (8.0 * e * e * e)).sqrt();
    println!("\ncoulomb tail, beta = {beta}, E = {e} MeV: theta_R = {theta_r:.2} MeV^-1");
    println!(
        "{:>10} {:>12} {:>14}",
        "O2t2", "eps_T (nat)", "eps_ext at E"
    );
    for o2t2 in [5.0f64, 10.0, 15.0, 20.0] {
        let omega = o2t2.sqrt() / theta_r;
        let eps_t = coulomb
            .threshold_field(theta_r, omega, (0.2 * e, 5.0 * e))
            .unwrap();
        // extremal amplitude for the actual level at a slightly longer time
        let eps_ext = coulomb.extremal_field(e, 1.2 * theta_r, omega).unwrap();
        println!("{o2t2:>10} {eps_t:12.4e} {eps_ext:14.4e}");
    }
}
