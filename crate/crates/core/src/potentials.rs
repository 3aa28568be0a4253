//! The two-term potential family and the centrifugal terms.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::units::{KineticScale, MoleculeParams};

/// V(r) = −V0 e^{−βr}/(1 − q e^{−βr}) + V1 e^{−2βr}/(1 − q e^{−βr})².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoTermPotential {
    #[serde(rename = "V0")]
    pub v0: f64,
    #[serde(rename = "V1")]
    pub v1: f64,
    pub beta: f64,
    pub q: f64,
}

impl TwoTermPotential {
    pub fn new(v0: f64, v1: f64, beta: f64, q: f64) -> Result<Self> {
        let p = Self { v0, v1, beta, q };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return domain(format!("beta must be positive, got {}", self.beta));
        }
        if !(self.q >= 0.0) || !self.q.is_finite() {
            return domain(format!("q must be non-negative, got {}", self.q));
        }
        if !self.v0.is_finite() || !self.v1.is_finite() {
            return domain("potential strengths must be finite");
        }
        Ok(())
    }

    /// Maps a molecule onto the family: V1 = D0(e^μ − q), V0 = 2V1, β = μ/r0.
    pub fn from_molecule(mol: &MoleculeParams, q: f64) -> Result<Self> {
        if !(q >= 0.0) {
            return domain(format!("q must be non-negative, got {q}"));
        }
        let e_mu = mol.mu.exp();
        if e_mu <= q {
            return domain(format!(
                "{}: e^mu = {e_mu} does not exceed q = {q}; depth parameterization breaks down",
                mol.name
            ));
        }
        let v1 = mol.d0 * (e_mu - q);
        Self::new(2.0 * v1, v1, mol.beta(), q)
    }

    /// Radius where the denominator vanishes: ln(q)/β for q > 1, zero for
    /// q = 1 and absent otherwise.
    pub fn singular_radius(&self) -> Option<f64> {
        singular_radius(self.beta, self.q)
    }

    /// Lower end of the physical domain: r_s when it exists, else the origin.
    pub fn inner_boundary(&self) -> f64 {
        self.singular_radius().unwrap_or(0.0)
    }

    /// The potential at `r`, checked against the singular radius.
    pub fn eval(&self, r: f64) -> Result<f64> {
        check_outside_singularity(self.beta, self.q, r)?;
        Ok(self.value(r))
    }

    /// The potential without the domain check. Callers guarantee r > r_s.
    pub fn value(&self, r: f64) -> f64 {
        let e = (-self.beta * r).exp();
        if self.q == 0.0 {
            return self.v1 * e * e - self.v0 * e;
        }
        // 1 − q e^{−βr} = −expm1(−β(r − ln q/β)), exact near the singularity.
        let shift = self.q.ln() / self.beta;
        let denom = -(-self.beta * (r - shift)).exp_m1();
        let ratio = e / denom;
        -self.v0 * ratio + self.v1 * ratio * ratio
    }

    /// ħ²/2m · Greene-Aldrich centrifugal term.
    pub fn centrifugal_greene_aldrich(&self, l: u32, r: f64) -> Result<f64> {
        centrifugal_greene_aldrich(l, self.beta, self.q, r)
    }
}

pub fn singular_radius(beta: f64, q: f64) -> Option<f64> {
    if q > 1.0 {
        Some(q.ln() / beta)
    } else if q == 1.0 {
        Some(0.0)
    } else {
        None
    }
}

fn check_outside_singularity(beta: f64, q: f64, r: f64) -> Result<()> {
    match singular_radius(beta, q) {
        Some(rs) if !(r > rs) => domain(format!("r = {r} is at or inside the singular radius r_s = {rs}")),
        None if q > 0.0 && !(r > 0.0) => domain(format!("r = {r} must be positive")),
        _ => Ok(()),
    }
}

/// ℓ(ℓ+1)β² e^{βr}/(e^{βr} − q)², the substitute for ℓ(ℓ+1)/r².
pub fn centrifugal_greene_aldrich(l: u32, beta: f64, q: f64, r: f64) -> Result<f64> {
    check_outside_singularity(beta, q, r)?;
    Ok(greene_aldrich_unchecked(l, beta, q, r))
}

pub(crate) fn greene_aldrich_unchecked(l: u32, beta: f64, q: f64, r: f64) -> f64 {
    if l == 0 {
        return 0.0;
    }
    let ll = f64::from(l) * f64::from(l + 1);
    // e^{βr}/(e^{βr} − q)² = e^{−βr}/(1 − q e^{−βr})²
    let e = (-beta * r).exp();
    let denom = if q > 0.0 {
        -(-beta * (r - q.ln() / beta)).exp_m1()
    } else {
        1.0
    };
    ll * beta * beta * e / (denom * denom)
}

/// ℓ(ℓ+1)/r².
pub fn centrifugal_exact(l: u32, r: f64) -> f64 {
    f64::from(l) * f64::from(l + 1) / (r * r)
}

fn default_screening() -> f64 {
    1e-5
}

/// A potential specification, as accepted from configuration files and the
/// command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PotentialKind {
    TwoTerm(TwoTermPotential),
    /// −Aħ²/(2mb²)/(e^{r/b} − 1) + α(α−1)ħ²/(2mb²)/(e^{r/b} − 1)²
    ManningRosen {
        #[serde(rename = "A")]
        a: f64,
        b: f64,
        alpha: f64,
    },
    /// −V0 e^{−βr}/(1 − e^{−βr})
    Hulthen {
        #[serde(rename = "V0")]
        v0: f64,
        beta: f64,
    },
    /// −Z/r, carried as a Hulthén potential with V0 = Zβ and small β.
    Coulomb {
        #[serde(rename = "Z")]
        z: f64,
        #[serde(default = "default_screening")]
        screening: f64,
    },
    /// V1 e^{−2βr} − V0 e^{−βr}
    #[serde(rename = "morse")]
    GeneralizedMorse {
        #[serde(rename = "V0")]
        v0: f64,
        #[serde(rename = "V1")]
        v1: f64,
        beta: f64,
    },
}

impl PotentialKind {
    /// The member of the two-term family this potential corresponds to.
    pub fn to_two_term(&self, kinetic: KineticScale) -> Result<TwoTermPotential> {
        match *self {
            PotentialKind::TwoTerm(p) => {
                p.validate()?;
                Ok(p)
            }
            PotentialKind::ManningRosen { a, b, alpha } => {
                if !(b > 0.0) {
                    return domain(format!("Manning-Rosen range b must be positive, got {b}"));
                }
                let unit = kinetic.0 / (b * b);
                TwoTermPotential::new(a * unit, alpha * (alpha - 1.0) * unit, 1.0 / b, 1.0)
            }
            PotentialKind::Hulthen { v0, beta } => TwoTermPotential::new(v0, 0.0, beta, 1.0),
            PotentialKind::Coulomb { z, screening } => {
                if !(z > 0.0) {
                    return domain(format!("Coulomb charge must be positive, got {z}"));
                }
                TwoTermPotential::new(z * screening, 0.0, screening, 1.0)
            }
            PotentialKind::GeneralizedMorse { v0, v1, beta } => TwoTermPotential::new(v0, v1, beta, 0.0),
        }
    }

    /// Evaluates the potential in its own parameterization.
    pub fn eval(&self, r: f64, kinetic: KineticScale) -> Result<f64> {
        match *self {
            PotentialKind::TwoTerm(p) => p.eval(r),
            PotentialKind::ManningRosen { a, b, alpha } => {
                check_outside_singularity(1.0 / b, 1.0, r)?;
                let unit = kinetic.0 / (b * b);
                let d = (r / b).exp_m1();
                Ok(-a * unit / d + alpha * (alpha - 1.0) * unit / (d * d))
            }
            PotentialKind::Hulthen { v0, beta } => {
                check_outside_singularity(beta, 1.0, r)?;
                Ok(-v0 / (beta * r).exp_m1())
            }
            PotentialKind::Coulomb { z, screening } => {
                check_outside_singularity(screening, 1.0, r)?;
                Ok(-z * screening / (screening * r).exp_m1())
            }
            PotentialKind::GeneralizedMorse { v0, v1, beta } => {
                let e = (-beta * r).exp();
                Ok(v1 * e * e - v0 * e)
            }
        }
    }
}
