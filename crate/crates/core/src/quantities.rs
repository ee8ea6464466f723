//! Unit systems and conversions. Internally everything runs in natural units
//! (`hbar = 1`): atomic units for electron-scale problems, MeV-based natural
//! units for nuclear ones. Lab units (eV, eV/cm, seconds) appear only at the
//! I/O boundary.
//!
//! Electric fields carry dimension energy/length with one unit of charge
//! absorbed into the field; a particle of charge q·e sees q times the
//! reported per-unit-charge lab field, handled at scenario level.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// CODATA 2018 values, frozen here to at least 10 significant digits.
pub mod constants {
    /// Reduced Planck constant, eV·s.
    pub const HBAR_EV_S: f64 = 6.582119569e-16;
    /// Reduced Planck constant, MeV·s.
    pub const HBAR_MEV_S: f64 = 6.582119569e-22;
    /// Fine-structure constant.
    pub const ALPHA: f64 = 7.2973525693e-3;
    /// 1/alpha.
    pub const INV_ALPHA: f64 = 137.035999084;
    /// Electron mass energy equivalent, eV.
    pub const ELECTRON_MASS_EV: f64 = 510_998.950_00;
    /// Alpha-particle mass energy equivalent, MeV.
    pub const ALPHA_PARTICLE_MASS_MEV: f64 = 3_727.379_406_6;
    /// Hartree energy, eV.
    pub const HARTREE_EV: f64 = 27.211_386_245_988;
    /// Bohr radius, cm.
    pub const BOHR_CM: f64 = 0.529_177_210_903e-8;
    /// Atomic unit of time, s (hbar / Hartree).
    pub const ATOMIC_TIME_S: f64 = 2.418_884_326_585_7e-17;
    /// Atomic unit of electric field, V/cm (Hartree / (e · bohr)).
    pub const ATOMIC_FIELD_V_PER_CM: f64 = 5.142_206_747_63e9;
    /// hbar·c, MeV·cm.
    pub const HBARC_MEV_CM: f64 = 1.973_269_804e-11;
    /// Speed of light, cm/s (exact).
    pub const C_CM_PER_S: f64 = 2.99792458e10;
}

/// Exponents of (energy, length, time, charge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dimension {
    pub energy: i8,
    pub length: i8,
    pub time: i8,
    pub charge: i8,
}

impl Dimension {
    pub const DIMENSIONLESS: Dimension = Dimension::new(0, 0, 0, 0);
    pub const ENERGY: Dimension = Dimension::new(1, 0, 0, 0);
    /// Mass as energy·time²/length²; its atomic-units scale is the electron
    /// mass (atomic units have c != 1) and its MeV-natural scale is MeV/c².
    pub const MASS: Dimension = Dimension::new(1, -2, 2, 0);
    pub const LENGTH: Dimension = Dimension::new(0, 1, 0, 0);
    pub const TIME: Dimension = Dimension::new(0, 0, 1, 0);
    pub const INVERSE_TIME: Dimension = Dimension::new(0, 0, -1, 0);
    /// Electric field as energy per length (unit charge absorbed).
    pub const FIELD: Dimension = Dimension::new(1, -1, 0, 0);
    pub const ACTION: Dimension = Dimension::new(1, 0, 1, 0);

    pub const fn new(energy: i8, length: i8, time: i8, charge: i8) -> Self {
        Dimension {
            energy,
            length,
            time,
            charge,
        }
    }
}

impl Add for Dimension {
    type Output = Dimension;
    fn add(self, o: Dimension) -> Dimension {
        Dimension::new(
            self.energy + o.energy,
            self.length + o.length,
            self.time + o.time,
            self.charge + o.charge,
        )
    }
}

impl Sub for Dimension {
    type Output = Dimension;
    fn sub(self, o: Dimension) -> Dimension {
        Dimension::new(
            self.energy - o.energy,
            self.length - o.length,
            self.time - o.time,
            self.charge - o.charge,
        )
    }
}

impl Neg for Dimension {
    type Output = Dimension;
    fn neg(self) -> Dimension {
        Dimension::new(-self.energy, -self.length, -self.time, -self.charge)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "E^{} L^{} T^{} Q^{}",
            self.energy, self.length, self.time, self.charge
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitSystem {
    /// Hartree / bohr / atomic time; for electron-scale problems.
    Atomic,
    /// MeV-based with hbar = c = 1; for nuclear problems.
    NuclearNatural,
    /// eV, cm, s, elementary charge.
    Lab,
}

impl fmt::Display for UnitSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitSystem::Atomic => write!(f, "atomic"),
            UnitSystem::NuclearNatural => write!(f, "nuclear-natural"),
            UnitSystem::Lab => write!(f, "lab"),
        }
    }
}

impl UnitSystem {
    /// Scale of one unit of each base dimension, expressed in lab base
    /// units (eV, cm, s, e).
    fn base_scales(self) -> (f64, f64, f64, f64) {
        match self {
            UnitSystem::Lab => (1.0, 1.0, 1.0, 1.0),
            UnitSystem::Atomic => (
                constants::HARTREE_EV,
                constants::BOHR_CM,
                constants::ATOMIC_TIME_S,
                1.0,
            ),
            UnitSystem::NuclearNatural => {
                (1e6, constants::HBARC_MEV_CM, constants::HBAR_MEV_S, 1.0)
            }
        }
    }

    fn factor_to_lab(self, dim: Dimension) -> f64 {
        let (e, l, t, q) = self.base_scales();
        e.powi(dim.energy as i32)
            * l.powi(dim.length as i32)
            * t.powi(dim.time as i32)
            * q.powi(dim.charge as i32)
    }
}

#[derive(Debug, Error)]
pub enum UnitError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: Dimension, right: Dimension },
    #[error("system {system} cannot express dimension {dim} (charged quantities are lab-only)")]
    Inexpressible { system: UnitSystem, dim: Dimension },
    #[error("invalid barrier description: {0}")]
    InvalidBarrier(String),
    #[error("cannot parse quantity from `{0}`")]
    Parse(String),
}

/// A value with its dimension and the unit system it is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub dim: Dimension,
    pub system: UnitSystem,
}

impl Quantity {
    pub fn new(value: f64, dim: Dimension, system: UnitSystem) -> Self {
        Quantity { value, dim, system }
    }

    pub fn dimensionless(value: f64) -> Self {
        Quantity::new(value, Dimension::DIMENSIONLESS, UnitSystem::Lab)
    }

    pub fn energy_ev(value: f64) -> Self {
        Quantity::new(value, Dimension::ENERGY, UnitSystem::Lab)
    }

    pub fn field_ev_per_cm(value: f64) -> Self {
        Quantity::new(value, Dimension::FIELD, UnitSystem::Lab)
    }

    pub fn time_s(value: f64) -> Self {
        Quantity::new(value, Dimension::TIME, UnitSystem::Lab)
    }

    /// Mass from its rest energy in eV (lab masses are quoted as mc²).
    pub fn mass_from_rest_energy_ev(rest_energy_ev: f64) -> Self {
        Quantity::new(
            rest_energy_ev / (constants::C_CM_PER_S * constants::C_CM_PER_S),
            Dimension::MASS,
            UnitSystem::Lab,
        )
    }

    /// Convert to another unit system, rescaling the value.
    pub fn convert(&self, target: UnitSystem) -> Result<Quantity, UnitError> {
        if self.dim.charge != 0 && target != UnitSystem::Lab {
            // Natural systems absorb the unit charge into fields; explicitly
            // charged dimensions are only representable in lab units.
            return Err(UnitError::Inexpressible {
                system: target,
                dim: self.dim,
            });
        }
        if self.value == 0.0 {
            return Ok(Quantity::new(0.0, self.dim, target));
        }
        let factor = self.system.factor_to_lab(self.dim) / target.factor_to_lab(self.dim);
        Ok(Quantity::new(self.value * factor, self.dim, target))
    }

    /// Value after conversion (convenience).
    pub fn value_in(&self, target: UnitSystem) -> Result<f64, UnitError> {
        Ok(self.convert(target)?.value)
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    /// Product of two quantities; the right operand is converted into the
    /// left operand's system first (panics only on charged-into-natural,
    /// which `convert` flags).
    fn mul(self, rhs: Quantity) -> Quantity {
        let rhs = rhs
            .convert(self.system)
            .expect("charged quantities cannot be multiplied into natural systems");
        Quantity::new(self.value * rhs.value, self.dim + rhs.dim, self.system)
    }
}

/// Lab-unit description of a triangular-barrier problem.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LabBarrier {
    /// Barrier height above the level, V - E (lab energy units, eV).
    pub v_minus_e_ev: f64,
    /// Static field in eV/cm (per unit charge).
    pub field_ev_per_cm: f64,
    /// Particle mass as rest energy in eV.
    pub mass_ev: f64,
}

/// The same barrier in one internal natural system.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NaturalBarrier {
    pub v_minus_e: f64,
    pub field: f64,
    pub mass: f64,
    pub system: UnitSystem,
}

/// Convert a lab barrier description to natural units.
///
/// The system is chosen by mass scale when not forced: electron-scale
/// masses (< 50 MeV) go to atomic units, heavier ones to MeV-based units.
pub fn to_natural(
    lab: &LabBarrier,
    force_system: Option<UnitSystem>,
) -> Result<NaturalBarrier, UnitError> {
    if lab.v_minus_e_ev <= 0.0 {
        return Err(UnitError::InvalidBarrier(format!(
            "V - E must be positive (no barrier otherwise), got {} eV",
            lab.v_minus_e_ev
        )));
    }
    if lab.mass_ev <= 0.0 {
        return Err(UnitError::InvalidBarrier(format!(
            "mass must be positive, got {} eV",
            lab.mass_ev
        )));
    }
    if lab.field_ev_per_cm <= 0.0 {
        return Err(UnitError::InvalidBarrier(format!(
            "static field must be positive, got {} eV/cm",
            lab.field_ev_per_cm
        )));
    }
    let system = match force_system {
        Some(UnitSystem::Lab) => {
            return Err(UnitError::InvalidBarrier(
                "internal barrier spec must be in a natural system".into(),
            ))
        }
        Some(s) => s,
        None => {
            if lab.mass_ev < 5e7 {
                UnitSystem::Atomic
            } else {
                UnitSystem::NuclearNatural
            }
        }
    };
    Ok(NaturalBarrier {
        v_minus_e: Quantity::energy_ev(lab.v_minus_e_ev).value_in(system)?,
        field: Quantity::field_ev_per_cm(lab.field_ev_per_cm).value_in(system)?,
        mass: Quantity::mass_from_rest_energy_ev(lab.mass_ev).value_in(system)?,
        system,
    })
}

/// Parse `"<number> [unit]"` into a [`Quantity`]. Supported units: energies
/// (eV, keV, MeV, hartree/Ha), fields (eV/cm, V/cm), times (s, fs, as),
/// masses (me = electron masses), and bare numbers (dimensionless).
pub fn parse_quantity(text: &str) -> Result<Quantity, UnitError> {
    let t = text.trim();
    let (num_part, unit_part) = split_float_prefix(t)?;
    let value: f64 = num_part
        .trim()
        .parse()
        .map_err(|_| UnitError::Parse(text.to_string()))?;
    let c2 = constants::C_CM_PER_S * constants::C_CM_PER_S;
    let (dim, factor) = match unit_part {
        "" => (Dimension::DIMENSIONLESS, 1.0),
        "eV" => (Dimension::ENERGY, 1.0),
        "keV" => (Dimension::ENERGY, 1e3),
        "MeV" => (Dimension::ENERGY, 1e6),
        "hartree" | "Ha" => (Dimension::ENERGY, constants::HARTREE_EV),
        "eV/cm" | "V/cm" => (Dimension::FIELD, 1.0),
        "s" => (Dimension::TIME, 1.0),
        "fs" => (Dimension::TIME, 1e-15),
        "as" => (Dimension::TIME, 1e-18),
        "me" => (Dimension::MASS, constants::ELECTRON_MASS_EV / c2),
        _ => return Err(UnitError::Parse(text.to_string())),
    };
    Ok(Quantity::new(value * factor, dim, UnitSystem::Lab))
}

fn split_float_prefix(t: &str) -> Result<(&str, &str), UnitError> {
    let bytes = t.as_bytes();
    let mut end = 0usize;
    let mut seen_digit = false;
    while end < bytes.len() {
        let c = bytes[end] as char;
        let ok = c.is_ascii_digit()
            || c == '.'
            || c == '+'
            || c == '-'
            || ((c == 'e' || c == 'E')
                && seen_digit
                && end + 1 < bytes.len()
                && (bytes[end + 1].is_ascii_digit()
                    || bytes[end + 1] == b'+'
                    || bytes[end + 1] == b'-'));
        if !ok {
            break;
        }
        if c.is_ascii_digit() {
            seen_digit = true;
        }
        end += 1;
    }
    if !seen_digit {
        return Err(UnitError::Parse(t.to_string()));
    }
    Ok((t[..end].trim(), t[end..].trim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn mev_inverse_time_to_seconds() {
        // 1 MeV^-1 of time in nuclear-natural units is hbar / (1 MeV).
        let q = Quantity::new(1.0, Dimension::TIME, UnitSystem::NuclearNatural);
        let s = q.value_in(UnitSystem::Lab).unwrap();
        assert_relative_eq!(s, 6.582119569e-22, max_relative = 1e-9);
    }

    #[test]
    fn zero_is_system_independent() {
        let q = Quantity::new(0.0, Dimension::FIELD, UnitSystem::Lab);
        assert_eq!(q.value_in(UnitSystem::Lab).unwrap(), 0.0);
        let q = Quantity::new(0.0, Dimension::ENERGY, UnitSystem::Atomic);
        assert_eq!(q.value_in(UnitSystem::NuclearNatural).unwrap(), 0.0);
    }

    #[test]
    fn ionization_energy_to_hartree() {
        let q = Quantity::energy_ev(13.6);
        let ha = q.value_in(UnitSystem::Atomic).unwrap();
        assert_relative_eq!(ha, 13.6 / constants::HARTREE_EV, max_relative = 1e-12);
        // about half a hartree
        assert!((ha - 0.4998).abs() < 1e-3);
    }

    #[test]
    fn hydrogen_barrier_to_atomic_units() {
        let nat = to_natural(
            &LabBarrier {
                v_minus_e_ev: 13.6,
                field_ev_per_cm: 2e7,
                mass_ev: constants::ELECTRON_MASS_EV,
            },
            None,
        )
        .unwrap();
        assert_eq!(nat.system, UnitSystem::Atomic);
        assert_relative_eq!(nat.mass, 1.0, max_relative = 1e-9);
        assert_relative_eq!(nat.v_minus_e, 0.499794, max_relative = 1e-5);
        assert_relative_eq!(nat.field, 3.88938e-3, max_relative = 1e-5);
    }

    #[test]
    fn already_natural_is_identity() {
        let q = Quantity::new(1.0, Dimension::ENERGY, UnitSystem::Atomic);
        let r = q.convert(UnitSystem::Atomic).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn alpha_barrier_stays_in_mev() {
        let nat = to_natural(
            &LabBarrier {
                v_minus_e_ev: 1.9e6,
                field_ev_per_cm: 1e9,
                mass_ev: constants::ALPHA_PARTICLE_MASS_MEV * 1e6,
            },
            None,
        )
        .unwrap();
        assert_eq!(nat.system, UnitSystem::NuclearNatural);
        assert_relative_eq!(nat.v_minus_e, 1.9, max_relative = 1e-12);
        assert_relative_eq!(nat.mass, 3727.3794066, max_relative = 1e-9);
    }

    #[test]
    fn rejects_no_barrier() {
        let r = to_natural(
            &LabBarrier {
                v_minus_e_ev: -1.0,
                field_ev_per_cm: 1.0,
                mass_ev: 1.0,
            },
            None,
        );
        assert!(r.is_err());
    }

    #[test]
    fn charged_dimension_is_lab_only() {
        let q = Quantity::new(1.0, Dimension::new(0, 0, 0, 1), UnitSystem::Lab);
        assert!(q.convert(UnitSystem::Atomic).is_err());
    }

    #[test]
    fn round_trip_all_pairs() {
        let systems = [
            UnitSystem::Atomic,
            UnitSystem::NuclearNatural,
            UnitSystem::Lab,
        ];
        let dims = [
            Dimension::ENERGY,
            Dimension::LENGTH,
            Dimension::TIME,
            Dimension::FIELD,
            Dimension::new(2, -1, 1, 0),
        ];
        for &a in &systems {
            for &b in &systems {
                for &dim in &dims {
                    let q = Quantity::new(3.7, dim, a);
                    let back = q.convert(b).unwrap().convert(a).unwrap();
                    assert_relative_eq!(back.value, q.value, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn parse_quantities() {
        let q = parse_quantity("13.6 eV").unwrap();
        assert_eq!(q.dim, Dimension::ENERGY);
        assert_relative_eq!(q.value, 13.6);

        let q = parse_quantity("2e7 eV/cm").unwrap();
        assert_eq!(q.dim, Dimension::FIELD);
        assert_relative_eq!(q.value, 2e7);

        let q = parse_quantity("15").unwrap();
        assert_eq!(q.dim, Dimension::DIMENSIONLESS);
        assert_relative_eq!(q.value, 15.0);

        let q = parse_quantity("1.9 MeV").unwrap();
        assert_relative_eq!(q.value, 1.9e6);

        let q = parse_quantity("10 fs").unwrap();
        assert_relative_eq!(q.value, 1e-14);

        let q = parse_quantity("1 me").unwrap();
        assert_eq!(q.dim, Dimension::MASS);
        assert_relative_eq!(
            q.value_in(UnitSystem::Atomic).unwrap(),
            1.0,
            max_relative = 1e-8
        );

        assert!(parse_quantity("10 parsec").is_err());
        assert!(parse_quantity("abc").is_err());
    }
}
