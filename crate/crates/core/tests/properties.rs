//! Property tests for the structural invariants: unit round trips and
//! dimension algebra, pulse symmetries, profile continuity, action
//! monotonicity and branch-selection scale invariance.

use euclidean_resonance::pulses::{
    ImaginaryTimeProfile, Pulse, QuarticImaginaryProfile, StepProfile,
};
use euclidean_resonance::quantities::{Dimension, Quantity, UnitSystem};
use euclidean_resonance::triangular::{self, BarrierSpec, LAMBDA_T};
use proptest::prelude::*;

fn unit_systems() -> impl Strategy<Value = UnitSystem> {
    prop_oneof![
        Just(UnitSystem::Atomic),
        Just(UnitSystem::NuclearNatural),
        Just(UnitSystem::Lab),
    ]
}

fn dimensions() -> impl Strategy<Value = Dimension> {
    (-3i8..=3, -3i8..=3, -3i8..=3).prop_map(|(e, l, t)| Dimension::new(e, l, t, 0))
}

proptest! {
    #[test]
    fn conversion_round_trip(
        value in 1e-12f64..1e12,
        dim in dimensions(),
        a in unit_systems(),
        b in unit_systems(),
    ) {
        let q = Quantity::new(value, dim, a);
        let back = q.convert(b).unwrap().convert(a).unwrap();
        prop_assert!((back.value - value).abs() <= 1e-12 * value.abs());
    }

    #[test]
    fn dimension_algebra_of_products(
        v1 in 0.1f64..10.0,
        v2 in 0.1f64..10.0,
        d1 in dimensions(),
        d2 in dimensions(),
        sys in unit_systems(),
    ) {
        let a = Quantity::new(v1, d1, sys);
        let b = Quantity::new(v2, d2, sys);
        let p = a * b;
        prop_assert_eq!(p.dim, d1 + d2);
        prop_assert!((p.value - v1 * v2).abs() <= 1e-12 * (v1 * v2));
    }

    #[test]
    fn pulse_parity(
        t in -5.0f64..5.0,
        eps in 0.0f64..3.0,
        omega in 0.3f64..3.0,
        theta in 0.3f64..3.0,
    ) {
        let q = Pulse::quartic_gaussian(eps, omega, theta).unwrap();
        prop_assert!((q.evaluate(-t) - q.evaluate(t)).abs() <= 1e-12 * eps.max(1e-12));
        let l = Pulse::lorentz_gaussian(eps, omega, theta).unwrap();
        prop_assert!((l.evaluate(-t) + l.evaluate(t)).abs() <= 1e-12 * eps.max(1e-12));
        let o = Pulse::odd_gaussian(eps, omega, theta).unwrap();
        prop_assert!((o.evaluate(-t) + o.evaluate(t)).abs() <= 1e-12 * eps.max(1e-12));
    }

    #[test]
    fn profile_starts_at_zero_and_is_continuous(
        lambda in 0.05f64..1.2,
        theta in 0.4f64..2.5,
        tau in 0.0f64..5.0,
    ) {
        // phi(0) = 0 and small steps never jump for the smooth profile
        let pulse = Pulse::quartic_from_lambda(lambda, 2.0 / theta, theta, 1.0).unwrap();
        let profile = QuarticImaginaryProfile::new(&pulse, 1.0).unwrap();
        prop_assert_eq!(profile.phi(0.0).unwrap(), 0.0);
        let h = 1e-5 * theta;
        let a = profile.phi(tau).unwrap();
        let b = profile.phi(tau + h).unwrap();
        // |phi'| <= 1 + |h| is bounded by 1 + peak amplitude
        let peak = 1.0 + profile.h(theta).abs();
        prop_assert!((b - a).abs() <= 1.5 * peak * h + 1e-12);
    }

    #[test]
    fn jump_action_decreases_with_energy(
        theta in 0.5f64..2.0,
        lambda in (LAMBDA_T + 0.01)..1.2,
        e0 in 0.2f64..5.0,
        m in 0.2f64..5.0,
        u1 in 0.60f64..0.95,
        du in 0.005f64..0.04,
    ) {
        // On the jump branch the action is linear decreasing in E.
        let v = 10.0 * e0 * e0 * theta * theta / (2.0 * m);
        let spec_at = |u: f64| {
            let tau00 = u * theta;
            let e = v - e0 * e0 * tau00 * tau00 / (2.0 * m);
            BarrierSpec::new(v, e, e0, m).unwrap()
        };
        let step = StepProfile::new(lambda, theta).unwrap();
        // larger u = smaller E
        let a_low_e = triangular::action_closed(&spec_at(u1 + du), &step).unwrap();
        let a_high_e = triangular::action_closed(&spec_at(u1), &step).unwrap();
        prop_assert!(a_high_e < a_low_e);
    }

    #[test]
    fn selection_is_scale_invariant(
        theta in 0.5f64..2.0,
        lambda in 0.1f64..1.1,
        u in 0.3f64..1.6,
        scale in 0.2f64..20.0,
    ) {
        let tau00 = u * theta;
        let s1 = BarrierSpec::from_barrier_height(tau00 * tau00 / 2.0, 1.0, 1.0).unwrap();
        let s2 = BarrierSpec::from_barrier_height(
            scale * tau00 * tau00 / 2.0,
            scale.sqrt(),
            1.0,
        )
        .unwrap();
        prop_assert!((s1.tau00() - s2.tau00()).abs() < 1e-12 * tau00);
        let step = StepProfile::new(lambda, theta).unwrap();
        let set1 = triangular::solve_branches(&s1, &step).unwrap();
        let set2 = triangular::solve_branches(&s2, &step).unwrap();
        prop_assert_eq!(set1.selected, set2.selected);
        for (b1, b2) in set1.branches.iter().zip(&set2.branches) {
            prop_assert!((b2.action - scale * b1.action).abs() <= 1e-9 * scale * b1.action.abs().max(1e-12));
        }
    }

    #[test]
    fn jump_branch_dives(
        theta in 0.5f64..2.0,
        lambda in 0.05f64..1.2,
        e0 in 0.2f64..5.0,
        m in 0.2f64..5.0,
        u in 0.3f64..0.999,
    ) {
        // delta_e < 0 on the jump branch whenever tau00 < theta
        prop_assume!(u > (1.0 - lambda).max(0.0) + 1e-6);
        let tau00 = u * theta;
        let spec = BarrierSpec::from_barrier_height(
            e0 * e0 * tau00 * tau00 / (2.0 * m),
            e0,
            m,
        )
        .unwrap();
        let step = StepProfile::new(lambda, theta).unwrap();
        let (delta_e, exit) = triangular::energy_gain(
            &spec,
            &step,
            triangular::BranchKind::Jump,
        );
        prop_assert!(delta_e < 0.0);
        // exit-energy bookkeeping against the barrier at the exit point
        let set = triangular::solve_branches(&spec, &step).unwrap();
        let jump = set
            .branches
            .iter()
            .find(|b| b.kind == triangular::BranchKind::Jump)
            .unwrap();
        prop_assert!((exit - (spec.v - spec.e0 * jump.x1)).abs() <= 1e-12 * spec.v_minus_e());
    }
}
