//! Implementations behind the `eures` subcommands. Every command takes a
//! [`RunConfig`] (file values already merged with command-line overrides)
//! and returns either a JSON report or a [`CurveTable`].

use super::{config::RunConfig, table::CurveTable, CliError, Output};
use crate::pulses::{Pulse, PulseShape, StepProfile};
use crate::quantities::{constants, Dimension, UnitSystem};
use crate::scenarios::{self, AlphaSpec, MetalParams};
use crate::smooth::{self, ContourSpec, InstantSignalProblem, PotentialModel, TabulatedPotential};
use crate::triangular::{self, BarrierSpec, BranchKind};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

/// Presets fill config keys before the generic path runs; explicit keys win.
fn apply_preset(cfg: &mut RunConfig, preset: &str) -> Result<(), CliError> {
    let fill = |cfg: &mut RunConfig, key: &str, value: &str| {
        if !cfg.contains(key) {
            cfg.set(key, value);
        }
    };
    match preset {
        "hydrogen" => {
            fill(cfg, "scenario", "hydrogen");
            fill(cfg, "v_minus_e", "13.6 eV");
            fill(cfg, "field", "2e7 eV/cm");
            fill(cfg, "mass", "1 me");
            fill(cfg, "omega2theta2", "15");
        }
        "nd144" => {
            fill(cfg, "scenario", "alpha");
            fill(cfg, "beta", &format!("{}", 116.0 * constants::ALPHA));
            fill(cfg, "energy", "1.9 MeV");
            fill(
                cfg,
                "mass_mev",
                &format!("{}", constants::ALPHA_PARTICLE_MASS_MEV),
            );
            fill(cfg, "omega2theta2", "15");
        }
        "soft-alpha" => {
            fill(cfg, "scenario", "soft-alpha");
            fill(cfg, "beta", &format!("{}", 116.0 * constants::ALPHA));
            fill(cfg, "energy", "1 keV");
            fill(
                cfg,
                "mass_mev",
                &format!("{}", constants::ALPHA_PARTICLE_MASS_MEV),
            );
            fill(cfg, "omega2theta2", "18");
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown preset `{other}` (hydrogen|nd144|soft-alpha)"
            )))
        }
    }
    Ok(())
}

/// Merge a `--preset` choice into the config if present.
pub fn resolve_preset(cfg: &mut RunConfig) -> Result<(), CliError> {
    if let Some(p) = cfg.get("preset").map(|s| s.to_string()) {
        apply_preset(cfg, &p)?;
    }
    Ok(())
}

fn barrier_from_config(cfg: &RunConfig) -> Result<(BarrierSpec, UnitSystem), CliError> {
    let system = match cfg.get("units") {
        Some(_) => cfg.unit_system()?,
        None => {
            // infer from the mass scale when lab units are used
            match cfg.quantity("mass")? {
                Some(q) if q.dim == Dimension::MASS => {
                    let rest_energy = q.value * constants::C_CM_PER_S * constants::C_CM_PER_S;
                    if rest_energy < 5e7 {
                        UnitSystem::Atomic
                    } else {
                        UnitSystem::NuclearNatural
                    }
                }
                _ => UnitSystem::Atomic,
            }
        }
    };
    let mass = cfg.require_natural("mass", Dimension::MASS, system)?;
    let field = cfg.require_natural("field", Dimension::FIELD, system)?;
    let spec = if cfg.contains("v") {
        let v = cfg.require_natural("v", Dimension::ENERGY, system)?;
        let e = cfg
            .natural("energy", Dimension::ENERGY, system)?
            .unwrap_or(0.0);
        BarrierSpec::new(v, e, field, mass)?
    } else {
        let v_minus_e = cfg.require_natural("v_minus_e", Dimension::ENERGY, system)?;
        BarrierSpec::from_barrier_height(v_minus_e, field, mass)?
    };
    Ok((spec, system))
}

fn theta_from_config(
    cfg: &RunConfig,
    spec: &BarrierSpec,
    system: UnitSystem,
) -> Result<f64, CliError> {
    Ok(cfg
        .natural("theta", Dimension::TIME, system)?
        .unwrap_or_else(|| spec.resonance_theta()))
}

fn time_to_seconds(value: f64, system: UnitSystem) -> f64 {
    match system {
        UnitSystem::Atomic => value * constants::ATOMIC_TIME_S,
        UnitSystem::NuclearNatural => value * constants::HBAR_MEV_S,
        UnitSystem::Lab => value,
    }
}

fn branch_code(kind: BranchKind) -> f64 {
    match kind {
        BranchKind::PreKick => 0.0,
        BranchKind::Jump => 1.0,
        BranchKind::PostKick => 2.0,
    }
}

/// Full resonance report for a triangular barrier (optionally with a step
/// amplitude and an escape-probability evaluation).
pub fn cmd_resonance(cfg: &RunConfig, strict: bool) -> Result<Output, CliError> {
    let mut cfg = cfg.clone();
    resolve_preset(&mut cfg)?;
    let (spec, system) = barrier_from_config(&cfg)?;
    let theta = theta_from_config(&cfg, &spec, system)?;
    let theta_r = spec.resonance_theta();
    let params = spec.resonance_params(theta);
    let o2t2 = cfg.number_or("omega2theta2", 15.0)?;
    let omega = o2t2.sqrt() / theta;
    let check = triangular::semiclassical_check(&spec, omega, theta);
    let delta_t = triangular::exit_packet_duration(&spec, theta);

    let lambda = match (
        cfg.number("lambda")?,
        cfg.natural("eps", Dimension::FIELD, system)?,
    ) {
        (Some(l), _) => Some(l),
        (None, Some(eps)) => {
            let pulse = Pulse::quartic_gaussian(eps, omega, theta)?;
            Some(pulse.effective_amplitude(spec.e0)?)
        }
        (None, None) => None,
    };

    let inputs: serde_json::Map<String, serde_json::Value> = cfg
        .entries()
        .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string())))
        .collect();
    let mut report = json!({
        "command": "resonance",
        "inputs": inputs,
        "unit_system": system.to_string(),
        "tau00": spec.tau00(),
        "a0": spec.static_action(),
        "theta": theta,
        "theta_r": theta_r,
        "theta_r_seconds": time_to_seconds(theta_r, system),
        "e_r": params.e_r,
        "lambda_t": params.lambda_t,
        "delta_t": delta_t,
        "delta_t_seconds": time_to_seconds(delta_t, system),
        "delta_t_over_theta": delta_t / theta,
        "exponent_vs_theta": triangular::probability_vs_theta(&spec, theta),
        "semiclassical": serde_json::to_value(check).expect("serializable"),
    });

    if let Some(lambda) = lambda {
        let step = StepProfile::new(lambda, theta)?;
        let set = triangular::solve_branches(&spec, &step)?;
        let sel = set.selected_branch();
        let a_sel = sel.map(|b| b.action);
        let w_exponent = -a_sel.unwrap_or(f64::INFINITY).min(spec.static_action());
        let obj = report.as_object_mut().expect("object");
        obj.insert("lambda".into(), json!(lambda));
        obj.insert("e_ext".into(), json!(params.e_ext(lambda)));
        obj.insert(
            "branches".into(),
            serde_json::to_value(&set).expect("serializable"),
        );
        obj.insert("w_exponent".into(), json!(w_exponent));
        // escape probability when a detector and time are configured
        if let (Some(t), Some(x_det)) = (
            cfg.natural("time", Dimension::TIME, system)?,
            cfg.natural("x_det", Dimension::LENGTH, system)?,
        ) {
            let pulse = Pulse::quartic_from_lambda(lambda, omega, theta, spec.e0)?;
            let escape = triangular::escape_probability(&spec, &pulse, t, x_det)?;
            obj.insert(
                "escape".into(),
                serde_json::to_value(&escape).expect("serializable"),
            );
        }
    }

    if strict && !check.smooth_ok {
        return Err(CliError::Validity(format!(
            "semiclassical ratio {} exceeds 0.1",
            check.smooth_ratio
        )));
    }
    Ok(Output::Json(report))
}

/// Parameter sweep over E, theta, lambda or eps; one row per point with all
/// branch actions, the selected branch and the escape exponent. Rows are
/// computed on a worker pool and assembled in input order; solver failures
/// are flagged per row (ok = 0) and the sweep continues.
pub fn cmd_sweep(cfg: &RunConfig, _strict: bool) -> Result<Output, CliError> {
    let mut cfg = cfg.clone();
    resolve_preset(&mut cfg)?;
    let (base, system) = barrier_from_config(&cfg)?;
    let theta = theta_from_config(&cfg, &base, system)?;
    let lambda = cfg.number_or("lambda", 0.5)?;
    let o2t2 = cfg.number_or("omega2theta2", 15.0)?;

    let var = cfg.require("sweep")?.to_string();
    let points = cfg.usize_or("points", 101)?;
    if !(2..=1_000_000).contains(&points) {
        return Err(CliError::Config(format!(
            "points must be in 2..=1000000, got {points}"
        )));
    }
    let (dim, default_span): (Dimension, Option<(f64, f64)>) = match var.as_str() {
        "E" | "energy" => {
            let params = base.resonance_params(theta);
            let half = 0.5 * (base.v - params.e_r).abs().max(1e-3 * base.v_minus_e());
            (
                Dimension::ENERGY,
                Some((params.e_r - half, params.e_r + half)),
            )
        }
        "theta" => (Dimension::TIME, Some((0.5 * theta, 1.5 * theta))),
        "lambda" => (Dimension::DIMENSIONLESS, Some((0.0, 1.0))),
        "eps" => (Dimension::FIELD, None),
        other => {
            return Err(CliError::Config(format!(
                "sweep variable must be E|theta|lambda|eps, got `{other}`"
            )))
        }
    };
    let from = cfg.natural("from", dim, system)?;
    let to = cfg.natural("to", dim, system)?;
    let (from, to) = match (from, to, default_span) {
        (Some(a), Some(b), _) => (a, b),
        (None, None, Some((a, b))) => (a, b),
        _ => {
            return Err(CliError::Config(
                "sweep needs both `from` and `to` (or neither for the default span)".into(),
            ))
        }
    };
    if to.is_nan() || from.is_nan() || to <= from {
        return Err(CliError::Config(format!(
            "sweep range is degenerate: from = {from}, to = {to}"
        )));
    }

    let grid: Vec<f64> = (0..points)
        .map(|i| from + (to - from) * i as f64 / (points - 1) as f64)
        .collect();

    struct Row {
        value: f64,
        cells: Vec<f64>,
        ok: bool,
    }

    let eval = |value: f64| -> Result<Vec<f64>, CliError> {
        let (spec, step) = match var.as_str() {
            "E" | "energy" => (
                BarrierSpec::new(base.v, value, base.e0, base.m)?,
                StepProfile::new(lambda, theta)?,
            ),
            "theta" => (base, StepProfile::new(lambda, value)?),
            "lambda" => (base, StepProfile::new(value, theta)?),
            "eps" => {
                let omega = o2t2.sqrt() / theta;
                let pulse = Pulse::quartic_gaussian(value, omega, theta)?;
                (base, StepProfile::from_pulse(&pulse, base.e0)?)
            }
            _ => unreachable!(),
        };
        let set = triangular::solve_branches(&spec, &step)?;
        let by_kind = |k: BranchKind| {
            set.branches
                .iter()
                .find(|b| b.kind == k)
                .map(|b| b.action)
                .unwrap_or(f64::NAN)
        };
        let sel = set.selected_branch();
        let params = spec.resonance_params(step.theta);
        let a0 = spec.static_action();
        let a_sel = sel.map(|b| b.action).unwrap_or(f64::NAN);
        let w_exponent = if a_sel.is_nan() { -a0 } else { -a_sel.min(a0) };
        Ok(vec![
            spec.tau00(),
            a0,
            by_kind(BranchKind::PreKick),
            by_kind(BranchKind::Jump),
            by_kind(BranchKind::PostKick),
            sel.map(|b| branch_code(b.kind)).unwrap_or(-1.0),
            a_sel,
            sel.map(|b| b.delta_e).unwrap_or(f64::NAN),
            sel.map(|b| b.exit_energy).unwrap_or(f64::NAN),
            params.e_r,
            params.e_ext(step.lambda),
            w_exponent,
        ])
    };

    let rows: Vec<Row> = grid
        .par_iter()
        .map(|&value| match eval(value) {
            Ok(cells) => Row {
                value,
                cells,
                ok: true,
            },
            Err(_) => Row {
                value,
                cells: vec![f64::NAN; 12],
                ok: false,
            },
        })
        .collect();

    let mut table = CurveTable::new(
        [
            var.as_str(),
            "tau00",
            "a0",
            "a_pre_kick",
            "a_jump",
            "a_post_kick",
            "selected_branch",
            "a_selected",
            "delta_e",
            "exit_energy",
            "e_r",
            "e_ext",
            "w_exponent",
            "ok",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    );
    table.meta("command", "sweep");
    table.meta("tool", format!("eures {}", env!("CARGO_PKG_VERSION")));
    table.meta("unit_system", system);
    table.meta("quadrature_rel_tol", "1e-10");
    table.meta("root_tol", "1e-12 theta");
    for (k, v) in cfg.entries() {
        table.meta(k, v);
    }
    for r in rows {
        let mut cells = vec![r.value];
        cells.extend(r.cells);
        cells.push(if r.ok { 1.0 } else { 0.0 });
        table.push_row(cells);
    }
    Ok(Output::Table(table))
}

/// Euclidean-trajectory table: complex-time contour samples with segment
/// tags, positions, velocities and instantaneous energy.
pub fn cmd_trajectory(cfg: &RunConfig, _strict: bool) -> Result<Output, CliError> {
    let mut cfg = cfg.clone();
    resolve_preset(&mut cfg)?;
    let (spec, system) = barrier_from_config(&cfg)?;
    let theta = theta_from_config(&cfg, &spec, system)?;
    let o2t2 = cfg.number_or("omega2theta2", 15.0)?;
    let omega = o2t2.sqrt() / theta;
    let shape = cfg.get("shape").unwrap_or("quartic-gaussian");

    let problem = InstantSignalProblem::new(
        PotentialModel::Triangular {
            v: spec.v,
            e0: spec.e0,
        },
        spec.m,
        0.0,
    )?;

    let sol = match shape {
        "lorentz-gaussian" => {
            let eps = match cfg.get("eps") {
                Some("extremal") | None => problem.extremal_field(spec.e, theta, omega)?,
                Some(_) => cfg.require_natural("eps", Dimension::FIELD, system)?,
            };
            let pulse = Pulse::lorentz_gaussian(eps, omega, theta)?;
            smooth::integrate_euclidean(&problem, &pulse, spec.e, &ContourSpec::default())?
        }
        "quartic-gaussian" | "none" => {
            let lambda = cfg.number_or("lambda", 0.0)?;
            let (pulse, x_start, tau_end) = if lambda > 0.0 {
                let pulse = Pulse::quartic_from_lambda(lambda, omega, theta, spec.e0)?;
                let step = StepProfile::from_pulse(&pulse, spec.e0)?;
                let set = triangular::solve_branches(&spec, &step)?;
                let sel = set.selected_branch().ok_or_else(|| {
                    CliError::Solver("no stable branch for the trajectory start".into())
                })?;
                (Some(pulse), sel.x1, sel.tau1)
            } else {
                (None, spec.static_exit_point(), spec.tau00())
            };
            smooth::integrate_straight(
                &problem,
                pulse.as_ref(),
                spec.e,
                x_start,
                tau_end,
                &ContourSpec::default(),
            )?
        }
        other => {
            return Err(CliError::Config(format!(
                "trajectory shape must be lorentz-gaussian|quartic-gaussian|none, got `{other}`"
            )))
        }
    };

    let mut table = CurveTable::new(
        ["segment", "re_t", "im_t", "x", "velocity", "energy"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    table.meta("command", "trajectory");
    table.meta("tool", format!("eures {}", env!("CARGO_PKG_VERSION")));
    table.meta("unit_system", system);
    table.meta("ode_rel_tol", "1e-9");
    table.meta("velocity_column", "dx/dtau (Euclidean)");
    for (k, v) in cfg.entries() {
        table.meta(k, v);
    }
    table.meta("delta_e_measured", super::fmt_g17(sol.delta_e_energy));
    table.meta("action_measured", super::fmt_g17(sol.action));
    if let Some(k) = sol.momentum_kick {
        table.meta("momentum_kick", super::fmt_g17(k.norm()));
    }
    for p in &sol.points {
        let eucl_v = (Complex64::i() * p.velocity).re;
        table.push_row(vec![
            p.segment as f64,
            p.t.re,
            p.t.im,
            p.x.re,
            eucl_v,
            p.energy.re,
        ]);
    }
    Ok(Output::Table(table))
}

/// Signal waveform table: reduced field value per shape on a uniform real
/// time grid (default 400 points on [-3 theta, 3 theta]).
pub fn cmd_pulse(cfg: &RunConfig, _strict: bool) -> Result<Output, CliError> {
    let shapes_text = cfg.get("shapes").unwrap_or("lorentz-gaussian,odd-gaussian");
    let o2t2 = cfg.number_or("omega2theta2", 15.0)?;
    let points = cfg.usize_or("points", 400)?;
    if points < 2 {
        return Err(CliError::Config(
            "pulse table needs at least 2 points".into(),
        ));
    }
    // Only t/theta and field/eps are emitted, so natural scales suffice.
    let theta = 1.0;
    let omega = o2t2.sqrt() / theta;
    let mut shapes = Vec::new();
    for name in shapes_text.split(',') {
        let shape = match name.trim() {
            "quartic-gaussian" => PulseShape::QuarticGaussian,
            "lorentz-gaussian" => PulseShape::LorentzGaussian,
            "odd-gaussian" => PulseShape::OddGaussian,
            other => return Err(CliError::Config(format!("unknown pulse shape `{other}`"))),
        };
        shapes.push((
            name.trim().to_string(),
            Pulse::new(shape, 1.0, omega, theta)?,
        ));
    }
    let mut columns = vec!["t_over_theta".to_string()];
    columns.extend(shapes.iter().map(|(n, _)| n.clone()));
    let mut table = CurveTable::new(columns);
    table.meta("command", "pulse");
    table.meta("tool", format!("eures {}", env!("CARGO_PKG_VERSION")));
    table.meta("omega2theta2", super::fmt_g17(o2t2));
    for (k, v) in cfg.entries() {
        table.meta(k, v);
    }
    for i in 0..points {
        let t = -3.0 * theta + 6.0 * theta * i as f64 / (points - 1) as f64;
        let mut row = vec![t / theta];
        row.extend(shapes.iter().map(|(_, p)| p.evaluate(t)));
        table.push_row(row);
    }
    Ok(Output::Table(table))
}

/// Scenario reports in lab units, with dual computed/reference fields where
/// the published figures are not reproducible from the formulas.
pub fn cmd_scenario(cfg: &RunConfig, strict: bool) -> Result<Output, CliError> {
    let mut cfg = cfg.clone();
    resolve_preset(&mut cfg)?;
    let scenario = cfg.require("scenario")?.to_string();
    let report = match scenario.as_str() {
        "hydrogen" => {
            let e0 = cfg
                .quantity("field")?
                .map(|q| q.value_in(UnitSystem::Lab))
                .transpose()?
                .unwrap_or(2e7);
            let o2t2 = cfg.number_or("omega2theta2", 15.0)?;
            serde_json::to_value(scenarios::hydrogen_report(e0, o2t2)?).expect("serializable")
        }
        "alpha" | "soft-alpha" => {
            let beta = cfg.number_or("beta", 116.0 * constants::ALPHA)?;
            let e_mev = cfg
                .quantity("energy")?
                .map(|q| Ok::<f64, CliError>(q.value_in(UnitSystem::Lab)? / 1e6))
                .transpose()?
                .unwrap_or(if scenario == "alpha" { 1.9 } else { 1e-3 });
            let m_mev = cfg.number_or("mass_mev", constants::ALPHA_PARTICLE_MASS_MEV)?;
            let o2t2 = cfg.number_or(
                "omega2theta2",
                if scenario == "alpha" { 15.0 } else { 18.0 },
            )?;
            let spec = AlphaSpec::new(beta, e_mev, m_mev, o2t2)?;
            let mut v =
                serde_json::to_value(scenarios::alpha_report(&spec)?).expect("serializable");
            let obj = v.as_object_mut().expect("object");
            obj.insert(
                "threshold".into(),
                serde_json::to_value(scenarios::alpha_threshold(&spec)).expect("serializable"),
            );
            obj.insert(
                "resonance".into(),
                serde_json::to_value(scenarios::alpha_resonance(&spec)).expect("serializable"),
            );
            v
        }
        "metal" => {
            let work = cfg
                .quantity("work_function")?
                .map(|q| q.value_in(UnitSystem::Lab))
                .transpose()?
                .unwrap_or(4.5);
            let e0 = cfg
                .quantity("field")?
                .map(|q| q.value_in(UnitSystem::Lab))
                .transpose()?
                .unwrap_or(2e7);
            let period = cfg
                .quantity("period")?
                .map(|q| q.value_in(UnitSystem::Lab))
                .transpose()?
                .unwrap_or(1e-13);
            let metal = MetalParams {
                n_per_cm3: cfg.number_or("n_per_cm3", MetalParams::default().n_per_cm3)?,
                v_f_cm_per_s: cfg.number_or("v_f_cm_per_s", MetalParams::default().v_f_cm_per_s)?,
            };
            serde_json::to_value(scenarios::metal_emission_report(work, e0, period, metal)?)
                .expect("serializable")
        }
        "custom-smooth" => {
            let path = cfg.require("potential_file")?;
            let tab = TabulatedPotential::from_file(std::path::Path::new(path))?;
            let system = match tab.units {
                UnitSystem::NuclearNatural => UnitSystem::NuclearNatural,
                _ => UnitSystem::Atomic,
            };
            let m = cfg.require_natural("mass", Dimension::MASS, system)?;
            let x0 = cfg.number_or("x0", 0.0)?;
            let e = cfg.require_natural("energy", Dimension::ENERGY, system)?;
            let theta = cfg.require_natural("theta", Dimension::TIME, system)?;
            let o2t2 = cfg.number_or("omega2theta2", 15.0)?;
            let omega = o2t2.sqrt() / theta;
            let problem = InstantSignalProblem::new(PotentialModel::Tabulated(tab), m, x0)?;
            let lo = cfg.number_or("e_bracket_lo", 0.5 * e)?;
            let hi = cfg.number_or("e_bracket_hi", 2.0 * e)?;
            let sol = problem.instant_solution(e, theta, omega, (lo, hi))?;
            serde_json::to_value(sol).expect("serializable")
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown scenario `{other}` \
                 (hydrogen|alpha|soft-alpha|metal|custom-smooth)"
            )))
        }
    };
    let out = json!({
        "command": "scenario",
        "scenario": scenario,
        "report": report,
    });
    if strict {
        if let Some(ok) = out
            .pointer("/report/validity/semiclassical_ok")
            .and_then(|v| v.as_bool())
        {
            if !ok {
                return Err(CliError::Validity("semiclassical margin exceeded".into()));
            }
        }
    }
    Ok(Output::Json(out))
}

/// Validity-only report: semiclassical margins and the dissipation bound.
pub fn cmd_check(cfg: &RunConfig, strict: bool) -> Result<Output, CliError> {
    let mut cfg = cfg.clone();
    resolve_preset(&mut cfg)?;
    let (spec, system) = barrier_from_config(&cfg)?;
    let theta = theta_from_config(&cfg, &spec, system)?;
    let o2t2 = cfg.number_or("omega2theta2", 15.0)?;
    let omega = o2t2.sqrt() / theta;
    let check = triangular::semiclassical_check(&spec, omega, theta);
    let gamma = cfg.number("gamma")?;
    let dissipation =
        gamma.map(|g| scenarios::dissipation_bound(theta, g, Some(o2t2), Some(spec.v_minus_e())));
    // The exact-model condition constrains quartic signals; pole signals
    // answer to the generic smooth-potential form only.
    let shape = cfg.get("shape").unwrap_or("lorentz-gaussian");
    let semiclassical_ok = match shape {
        "quartic-gaussian" => check.smooth_ok && check.triangular_ok.unwrap_or(true),
        _ => check.smooth_ok,
    };
    let all_ok = semiclassical_ok && dissipation.is_none_or(|d| d.ok && d.chain_ok.unwrap_or(true));
    let out = json!({
        "command": "check",
        "unit_system": system.to_string(),
        "theta": theta,
        "omega2theta2": o2t2,
        "shape": shape,
        "semiclassical": serde_json::to_value(check).expect("serializable"),
        "dissipation": dissipation.map(|d| serde_json::to_value(d).expect("serializable")),
        "ok": all_ok,
    });
    if strict && !all_ok {
        return Err(CliError::Validity(
            "one or more validity conditions failed".into(),
        ));
    }
    Ok(Output::Json(out))
}
