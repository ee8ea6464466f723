//! Ionization of a hydrogen-like level by an adapted signal.
//!
//! A static field of 2e7 eV/cm gives a conventional ionization exponent of
//! about 171 — a lifetime beyond any experiment. A weak pulse with its time
//! parameter tuned to the resonance value makes the tunneling exponent
//! collapse, with the required signal amplitude measured in eV/cm.
//!
//! Run with: `cargo run --example hydrogen_ionization`

use euclidean_resonance::quantities::{constants, to_natural, LabBarrier, UnitSystem};
use euclidean_resonance::scenarios::hydrogen_report;
use euclidean_resonance::triangular::{self, BarrierSpec};

fn main() {
    let report = hydrogen_report(2e7, 15.0).unwrap();

    println!("hydrogen ionization, E0 = 2e7 eV/cm, Omega^2 theta^2 = 15");
    println!(
        "  static exponent A0          = {:.1} (published figure {})",
        report.a0.computed,
        report.a0.reference.unwrap()
    );
    println!(
        "  resonance signal time       = {:.3e} s",
        report.theta_r_seconds.computed
    );
    println!(
        "  exit packet duration        = {:.3e} s  (dt/theta = {:.3})",
        report.delta_t_seconds, report.delta_t_over_theta
    );
    println!(
        "  threshold amplitude         = {:.2} eV/cm (published ~{})",
        report.eps_t_ev_per_cm.computed,
        report.eps_t_ev_per_cm.reference.unwrap()
    );
    println!(
        "  needed theta accuracy       = {:.1e} relative",
        report.theta_accuracy
    );
    println!(
        "  semiclassical margin        = {:.3} (ok: {})",
        report.validity.semiclassical_ratio, report.validity.semiclassical_ok
    );

    // The same numbers through the explicit barrier machinery.
    let nat = to_natural(
        &LabBarrier {
            v_minus_e_ev: 13.6,
            field_ev_per_cm: 2e7,
            mass_ev: constants::ELECTRON_MASS_EV,
        },
        Some(UnitSystem::Atomic),
    )
    .unwrap();
    let spec = BarrierSpec::from_barrier_height(nat.v_minus_e, nat.field, nat.mass).unwrap();
    let theta_r = spec.resonance_theta();
    println!("\natomic-unit cross-check:");
    println!("  tau00   = {:.2} a.u.", spec.tau00());
    println!("  theta_R = {:.2} a.u. = sqrt(3) tau00", theta_r);
    for fraction in [0.95, 0.99, 1.0] {
        let exponent = triangular::probability_vs_theta(&spec, fraction * theta_r);
        println!(
            "  theta = {:.2} theta_R: escape rate ~ exp(-{exponent:.2})",
            fraction
        );
    }
}
