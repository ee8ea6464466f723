//! Line-oriented `key = value` run configuration with `#` comments and unit
//! suffixes (`13.6 eV`, `2e7 eV/cm`, `15` dimensionless). Command-line
//! overrides take precedence over file values.

use crate::quantities::{parse_quantity, Dimension, Quantity, UnitSystem};
use std::collections::BTreeMap;

use super::CliError;

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    i + 1
                ))
            })?;
            values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(RunConfig { values })
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    /// Apply a `key=value` override (command line wins over the file).
    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    /// Echo of every input, for table metadata.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::Config(format!("missing required key `{key}`")))
    }

    pub fn quantity(&self, key: &str) -> Result<Option<Quantity>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(text) => parse_quantity(text)
                .map(Some)
                .map_err(|e| CliError::Config(format!("key `{key}`: {e}"))),
        }
    }

    pub fn require_quantity(&self, key: &str) -> Result<Quantity, CliError> {
        self.quantity(key)?
            .ok_or_else(|| CliError::Config(format!("missing required key `{key}`")))
    }

    /// Plain number (dimensionless or already in natural units).
    pub fn number(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(text) => text
                .trim()
                .parse::<f64>()
                .map(Some)
                .map_err(|_| CliError::Config(format!("key `{key}`: not a number: `{text}`"))),
        }
    }

    pub fn number_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.number(key)?.unwrap_or(default))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(text) => text
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::Config(format!("key `{key}`: not an integer: `{text}`"))),
        }
    }

    /// The internal natural unit system; `units = atomic|nuclear` or atomic
    /// by default.
    pub fn unit_system(&self) -> Result<UnitSystem, CliError> {
        match self.get("units") {
            None | Some("atomic") => Ok(UnitSystem::Atomic),
            Some("nuclear") => Ok(UnitSystem::NuclearNatural),
            Some(other) => Err(CliError::Config(format!(
                "units must be atomic|nuclear, got `{other}`"
            ))),
        }
    }

    /// A value in natural units: plain numbers pass through, lab-unit
    /// quantities are converted (dimension checked).
    pub fn natural(
        &self,
        key: &str,
        dim: Dimension,
        system: UnitSystem,
    ) -> Result<Option<f64>, CliError> {
        let Some(q) = self.quantity(key)? else {
            return Ok(None);
        };
        if q.dim == Dimension::DIMENSIONLESS {
            return Ok(Some(q.value));
        }
        if q.dim != dim {
            return Err(CliError::Config(format!(
                "key `{key}`: expected dimension {dim}, got {}",
                q.dim
            )));
        }
        q.value_in(system)
            .map(Some)
            .map_err(|e| CliError::Config(format!("key `{key}`: {e}")))
    }

    pub fn require_natural(
        &self,
        key: &str,
        dim: Dimension,
        system: UnitSystem,
    ) -> Result<f64, CliError> {
        self.natural(key, dim, system)?
            .ok_or_else(|| CliError::Config(format!("missing required key `{key}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parses_and_overrides() {
        let mut cfg = RunConfig::parse(
            "# barrier\nv_minus_e = 13.6 eV\nfield = 2e7 eV/cm\nmass = 1 me\npoints = 100\n",
        )
        .unwrap();
        assert_eq!(cfg.get("points"), Some("100"));
        cfg.set("points", 50);
        assert_eq!(cfg.usize_or("points", 0).unwrap(), 50);
        let v = cfg
            .require_natural("v_minus_e", Dimension::ENERGY, UnitSystem::Atomic)
            .unwrap();
        assert_relative_eq!(v, 0.499794, max_relative = 1e-5);
        let m = cfg
            .require_natural("mass", Dimension::MASS, UnitSystem::Atomic)
            .unwrap();
        assert_relative_eq!(m, 1.0, max_relative = 1e-8);
    }

    #[test]
    fn plain_numbers_pass_through_as_natural() {
        let cfg = RunConfig::parse("field = 3.89e-3\nunits = atomic\n").unwrap();
        let f = cfg
            .require_natural("field", Dimension::FIELD, cfg.unit_system().unwrap())
            .unwrap();
        assert_relative_eq!(f, 3.89e-3);
    }

    #[test]
    fn errors_name_fields() {
        let cfg = RunConfig::parse("v_minus_e = 13.6 eV\n").unwrap();
        let err = cfg
            .require_natural("mass", Dimension::MASS, UnitSystem::Atomic)
            .unwrap_err();
        assert!(err.to_string().contains("mass"), "{err}");

        assert!(RunConfig::parse("not a kv line\n").is_err());

        let cfg = RunConfig::parse("mass = 5 eV/cm\n").unwrap();
        let err = cfg
            .require_natural("mass", Dimension::MASS, UnitSystem::Atomic)
            .unwrap_err();
        assert!(err.to_string().contains("dimension"), "{err}");
    }
}
