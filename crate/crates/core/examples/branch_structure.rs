//! Exit-branch structure of the exactly solvable barrier under a step
//! signal: up to three candidate exits (pre-kick, jump, post-kick), their
//! actions, energy gains and stability, and which one the decay selects.
//!
//! Run with: `cargo run --example branch_structure`

use euclidean_resonance::pulses::StepProfile;
use euclidean_resonance::triangular::{self, BarrierSpec};

fn main() {
    let theta = 1.0;
    let lambda = 0.5;
    let step = StepProfile::new(lambda, theta).unwrap();

    println!("step signal: lambda = {lambda}, theta = {theta}  (E0 = m = 1)");
    println!(
        "{:>7} {:>10} {:>9} {:>9} {:>9} {:>8} {:>9}",
        "tau00", "branch", "tau1", "action", "delta_e", "stable", "selected"
    );
    for tau00 in [0.3, 0.45, 0.58, 0.7, 0.8, 0.95, 1.2, 2.0] {
        let spec = BarrierSpec::from_barrier_height(tau00 * tau00 / 2.0, 1.0, 1.0).unwrap();
        let set = triangular::solve_branches(&spec, &step).unwrap();
        for (i, b) in set.branches.iter().enumerate() {
            let mark = if Some(i) == set.selected { "<--" } else { "" };
            println!(
                "{:>7.2} {:>10} {:>9.4} {:>9.5} {:>9.5} {:>8} {:>9}",
                tau00,
                b.kind.name(),
                b.tau1,
                b.action,
                b.delta_e,
                b.stable,
                mark
            );
        }
    }

    // The three action routes agree on the jump branch.
    let spec = BarrierSpec::from_barrier_height(0.32, 1.0, 1.0).unwrap();
    let a_quad = triangular::action_quadrature(&spec, &step, theta).unwrap();
    let (a_area, q_plus, q_minus) = triangular::action_area(&spec, &step, theta);
    let a_closed = triangular::action_closed(&spec, &step).unwrap();
    println!("\naction routes at tau00 = 0.8 (jump branch):");
    println!("  transformed integral   = {a_quad:.12}");
    println!("  area route Q+ - Q-     = {a_area:.12}  (Q+ = {q_plus:.6}, Q- = {q_minus:.6})");
    println!("  resonance closed form  = {a_closed:.12}");

    // At resonance the areas balance and the action vanishes.
    let res = BarrierSpec::from_barrier_height(1.0 / 6.0, 1.0, 1.0).unwrap();
    let (a, q_plus, q_minus) = triangular::action_area(&res, &step, theta);
    println!("\nat tau00 = theta/sqrt(3): Q+ = {q_plus:.9}, Q- = {q_minus:.9}, A = {a:.2e}");
}
