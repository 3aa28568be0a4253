//! Run configuration, read from an optional JSON file.
//!
//! ```json
//! {
//!   "molecule_registry": "molecules.json",
//!   "tolerances": { "morse": 5e-6, "hulthen": 5e-7, "manning_rosen": 5e-7 },
//!   "grid": { "points": 4000 }
//! }
//! ```
//!
//! Every key is optional. A relative registry path is resolved against the
//! directory holding the config file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::oracle::{DEFAULT_GRID_POINTS, MIN_GRID_POINTS};
use crate::units::{builtin_molecules, load_registry, MoleculeParams, PhysicalConstants};

/// Absolute energy tolerances for the reference-table comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// eV
    pub morse: f64,
    /// atomic units
    pub hulthen: f64,
    /// atomic units
    pub manning_rosen: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            morse: 5e-6,
            hulthen: 5e-7,
            manning_rosen: 5e-7,
        }
    }
}

impl Tolerances {
    /// The same tolerance for every table.
    pub fn uniform(tol: f64) -> Result<Self> {
        if !(tol >= 0.0) || !tol.is_finite() {
            return domain(format!("tolerance must be a non-negative number, got {tol}"));
        }
        Ok(Self {
            morse: tol,
            hulthen: tol,
            manning_rosen: tol,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Points on the first Numerov grid.
    pub points: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            points: DEFAULT_GRID_POINTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub molecule_registry: Option<PathBuf>,
    pub constants: PhysicalConstants,
    pub tolerances: Tolerances,
    pub grid: GridConfig,
}

impl Config {
    pub fn parse(json: &str) -> Result<Self> {
        let config: Config = serde_json::from_str(json).map_err(|e| Error::Parse(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let body = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut config = Self::parse(&body)?;
        if let Some(registry) = &config.molecule_registry {
            if registry.is_relative() {
                let base = path.parent().unwrap_or_else(|| Path::new("."));
                config.molecule_registry = Some(base.join(registry));
            }
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        let t = &self.tolerances;
        for (name, v) in [
            ("morse", t.morse),
            ("hulthen", t.hulthen),
            ("manning_rosen", t.manning_rosen),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return domain(format!("tolerance {name} must be a non-negative number, got {v}"));
            }
        }
        if self.grid.points < MIN_GRID_POINTS {
            return domain(format!(
                "grid.points must be at least {MIN_GRID_POINTS}, got {}",
                self.grid.points
            ));
        }
        Ok(())
    }

    /// Built-in molecules followed by registry entries; a registry entry
    /// replaces a built-in of the same name.
    pub fn molecules(&self) -> Result<Vec<MoleculeParams>> {
        let mut all = builtin_molecules();
        if let Some(path) = &self.molecule_registry {
            for mol in load_registry(path, &self.constants)? {
                match all.iter_mut().find(|m| m.name == mol.name) {
                    Some(slot) => *slot = mol,
                    None => all.push(mol),
                }
            }
        }
        Ok(all)
    }

    pub fn molecule(&self, name: &str) -> Result<MoleculeParams> {
        let all = self.molecules()?;
        let known: Vec<&str> = all.iter().map(|m| m.name.as_str()).collect();
        all.iter()
            .find(|m| m.name.eq_ignore_ascii_case(name))
            .cloned()
            .ok_or_else(|| Error::Domain(format!("unknown molecule {name:?}; known: {}", known.join(", "))))
    }
}
