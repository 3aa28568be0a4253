//! Physical constants, molecule parameters and dimensionless couplings.
//!
//! Two unit regimes are supported: molecular (eV, Å, amu) and atomic
//! (ħ = m = e = 1). Both are expressed through a [`KineticScale`], the value
//! of ħ²/(2m) in the active energy·length² unit.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{domain, Error, Result};

/// Fundamental constants for the eV/Å/amu regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// ħc in eV·Å.
    pub hbar_c: f64,
    /// Rest energy of one atomic mass unit in eV.
    pub amu_to_energy: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar_c: 1973.269804,
            amu_to_energy: 9.3149410242e8,
        }
    }
}

impl PhysicalConstants {
    pub fn validate(&self) -> Result<()> {
        if !(1973.2..=1973.4).contains(&self.hbar_c) {
            return domain(format!("hbar_c = {} eV·Å is implausible", self.hbar_c));
        }
        if !(9.314e8..=9.316e8).contains(&self.amu_to_energy) {
            return domain(format!("amu_to_energy = {} eV is implausible", self.amu_to_energy));
        }
        Ok(())
    }
}

/// ħ²/(2m) in energy·length² of the active unit system.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct KineticScale(pub f64);

impl KineticScale {
    /// Atomic units, ħ = m = 1.
    pub const ATOMIC: KineticScale = KineticScale(0.5);

    /// ħ²/(2m) for a reduced mass given in amu, in eV·Å².
    pub fn from_mass_amu(m: f64, consts: &PhysicalConstants) -> Result<Self> {
        if !(m > 0.0) {
            return domain(format!("mass must be positive, got {m}"));
        }
        Ok(Self(consts.hbar_c * consts.hbar_c / (2.0 * m * consts.amu_to_energy)))
    }

    /// ħ²/(2m) recovered from a characteristic energy E0 = ħ²/(m r0²).
    pub fn from_e0(e0: f64, r0: f64) -> Self {
        Self(0.5 * e0 * r0 * r0)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// ħ²/(m r0²) in eV.
pub fn derive_e0(m: f64, r0: f64, consts: &PhysicalConstants) -> Result<f64> {
    if !(m > 0.0) || !(r0 > 0.0) {
        return domain(format!("derive_e0 needs m > 0 and r0 > 0, got m = {m}, r0 = {r0}"));
    }
    Ok(consts.hbar_c * consts.hbar_c / (m * consts.amu_to_energy * r0 * r0))
}

/// Empirical constants of one diatomic species.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeParams {
    pub name: String,
    /// Potential depth in eV.
    #[serde(rename = "D0_eV")]
    pub d0: f64,
    /// Equilibrium separation in Å.
    #[serde(rename = "r0_angstrom")]
    pub r0: f64,
    /// Reduced mass in amu.
    #[serde(rename = "m_amu")]
    pub m: f64,
    /// Dimensionless shape exponent.
    pub mu: f64,
    /// ħ²/(m r0²) in eV.
    #[serde(rename = "E0_eV")]
    pub e0: f64,
}

#[derive(Deserialize)]
struct MoleculeRecord {
    name: String,
    #[serde(rename = "D0_eV")]
    d0: f64,
    #[serde(rename = "r0_angstrom")]
    r0: f64,
    #[serde(rename = "m_amu")]
    m: f64,
    mu: f64,
    #[serde(rename = "E0_eV", default)]
    e0: Option<f64>,
}

/// Relative agreement required between a stated E0 and the derived one.
pub const E0_REL_TOLERANCE: f64 = 1e-4;

impl MoleculeParams {
    /// H₂ with the characteristic energy as tabulated.
    pub fn h2() -> Self {
        Self {
            name: "H2".into(),
            d0: 4.744600,
            r0: 0.741600,
            m: 0.503910,
            mu: 1.440558,
            e0: 1.508343932e-2,
        }
    }

    /// LiH with the characteristic energy as tabulated.
    pub fn lih() -> Self {
        Self {
            name: "LiH".into(),
            d0: 2.515287,
            r0: 1.595600,
            m: 0.8801221,
            mu: 1.7998368,
            e0: 1.865528199e-3,
        }
    }

    /// Checks positivity and consistency of E0 with ħ²/(m r0²).
    pub fn validate(&self, consts: &PhysicalConstants) -> Result<()> {
        for (label, v) in [
            ("D0", self.d0),
            ("r0", self.r0),
            ("m", self.m),
            ("mu", self.mu),
            ("E0", self.e0),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return domain(format!("{}: {label} must be positive, got {v}", self.name));
            }
        }
        let derived = derive_e0(self.m, self.r0, consts)?;
        let rel = (self.e0 - derived).abs() / derived;
        if rel > E0_REL_TOLERANCE {
            return domain(format!(
                "{}: E0 = {} eV disagrees with ħ²/(m r0²) = {derived} eV (rel. {rel:.2e})",
                self.name, self.e0
            ));
        }
        Ok(())
    }

    /// β = μ / r0 in Å⁻¹.
    pub fn beta(&self) -> f64 {
        self.mu / self.r0
    }

    pub fn kinetic(&self) -> KineticScale {
        KineticScale::from_e0(self.e0, self.r0)
    }
}

/// The built-in molecule registry.
pub fn builtin_molecules() -> Vec<MoleculeParams> {
    vec![MoleculeParams::h2(), MoleculeParams::lih()]
}

/// Parses a registry file body: a JSON array of molecule objects.
pub fn parse_registry(json: &str, consts: &PhysicalConstants) -> Result<Vec<MoleculeParams>> {
    let records: Vec<MoleculeRecord> = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    records
        .into_iter()
        .map(|rec| {
            let e0 = match rec.e0 {
                Some(e0) => e0,
                None => derive_e0(rec.m, rec.r0, consts)?,
            };
            let mol = MoleculeParams {
                name: rec.name,
                d0: rec.d0,
                r0: rec.r0,
                m: rec.m,
                mu: rec.mu,
                e0,
            };
            mol.validate(consts)?;
            Ok(mol)
        })
        .collect()
}

pub fn load_registry(path: &Path, consts: &PhysicalConstants) -> Result<Vec<MoleculeParams>> {
    let body = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_registry(&body, consts)
}

/// Dimensionless form of the radial Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedHamiltonian {
    /// 2mV0/(β²ħ²)
    pub v0: f64,
    /// 2mV1/(β²ħ²)
    pub v1: f64,
    pub q: f64,
    /// β²ħ²/(2m)
    pub e_scale: f64,
}

impl ReducedHamiltonian {
    /// Recovers the dimensioned strengths (V0, V1).
    pub fn unreduce(&self) -> (f64, f64) {
        (self.v0 * self.e_scale, self.v1 * self.e_scale)
    }
}

/// Nondimensionalizes the couplings of the two-term potential.
pub fn reduce(v0: f64, v1: f64, beta: f64, q: f64, kinetic: KineticScale) -> Result<ReducedHamiltonian> {
    if !(beta > 0.0) {
        return domain(format!("beta must be positive, got {beta}"));
    }
    if !(kinetic.0 > 0.0) {
        return domain(format!("ħ²/2m must be positive, got {}", kinetic.0));
    }
    if !(q >= 0.0) {
        return domain(format!("q must be non-negative, got {q}"));
    }
    let e_scale = beta * beta * kinetic.0;
    Ok(ReducedHamiltonian {
        v0: v0 / e_scale,
        v1: v1 / e_scale,
        q,
        e_scale,
    })
}
