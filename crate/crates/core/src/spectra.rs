//! Closed-form bound-state energies.
//!
//! With z = q e^{−βr}, R = z^{A1}(1−z)^{A2} φ(z) and the Greene-Aldrich
//! substitute for ℓ(ℓ+1)/r², the radial equation becomes hypergeometric in φ.
//! The series terminates when
//!
//! ```text
//! A1 + A2 − sqrt(A1² + v1/q² + v0/q) = −n,
//! ```
//!
//! which fixes A1 = sqrt(−E/e_scale). The V1 term of the potential reads
//! v1 z²/(q²(1−z)²) in this variable, so the coupling that enters A2 is v1/q².
//! At q = 1 (Manning-Rosen, Hulthén) this is the familiar textbook result.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::units::{reduce, KineticScale, ReducedHamiltonian};

fn centrifugal_factor(l: u32) -> f64 {
    f64::from(l) * f64::from(l + 1)
}

/// A2′ = sqrt(1/4 + ℓ(ℓ+1)/q + v1/q²).
pub fn a2_prime(l: u32, h: &ReducedHamiltonian) -> Result<f64> {
    check_shape(h)?;
    let arg = 0.25 + centrifugal_factor(l) / h.q + h.v1 / (h.q * h.q);
    if !(arg >= 0.0) {
        return domain(format!("A2' is complex for l = {l}: 1/4 + l(l+1)/q + v1/q^2 = {arg}"));
    }
    Ok(arg.sqrt())
}

fn check_shape(h: &ReducedHamiltonian) -> Result<()> {
    if h.q == 0.0 {
        return domain("q = 0 is the generalized Morse limit; use energy_morse");
    }
    if !(h.q > 0.0) || !h.q.is_finite() {
        return domain(format!("q must be positive, got {}", h.q));
    }
    if !(h.e_scale > 0.0) {
        return domain(format!("energy scale must be positive, got {}", h.e_scale));
    }
    Ok(())
}

/// n² + (2n+1)(A2′ + 1/2) + (ℓ(ℓ+1) − v0)/q; negative exactly for bound states.
fn bracket_numerator(n: usize, l: u32, a2p: f64, h: &ReducedHamiltonian) -> f64 {
    let nf = n as f64;
    nf * nf + (2.0 * nf + 1.0) * (a2p + 0.5) + (centrifugal_factor(l) - h.v0) / h.q
}

/// Number of radial quantum numbers n ≥ 0 that give a bound state.
pub fn count_bound_states(l: u32, h: &ReducedHamiltonian) -> Result<usize> {
    let a2p = a2_prime(l, h)?;
    let s = a2p + 0.5;
    // Positive root of n² + 2sn + s + (ℓ(ℓ+1) − v0)/q.
    let disc = s * s - s - (centrifugal_factor(l) - h.v0) / h.q;
    let mut count = if disc > 0.0 {
        let root = -s + disc.sqrt();
        if root > 0.0 {
            root.ceil() as usize
        } else {
            0
        }
    } else {
        0
    };
    while count > 0 && bracket_numerator(count - 1, l, a2p, h) >= 0.0 {
        count -= 1;
    }
    while bracket_numerator(count, l, a2p, h) < 0.0 {
        count += 1;
    }
    Ok(count)
}

/// Energy of the (n, ℓ) state of the Greene-Aldrich-substituted two-term
/// Hamiltonian, q > 0.
pub fn energy_two_term(n: usize, l: u32, h: &ReducedHamiltonian) -> Result<f64> {
    Ok(-h.e_scale * decay_exponent(n, l, h)?.powi(2))
}

/// A1 = sqrt(−E/e_scale) for an admitted state.
fn decay_exponent(n: usize, l: u32, h: &ReducedHamiltonian) -> Result<f64> {
    let a2p = a2_prime(l, h)?;
    let num = bracket_numerator(n, l, a2p, h);
    if !(num < 0.0) {
        return Err(Error::NoSuchState { n, l });
    }
    Ok(-num / (2.0 * n as f64 + 1.0 + 2.0 * a2p))
}

/// Analytic wave-function parameters of a two-term bound state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveParams {
    /// Decay exponent at z → 0.
    pub a1: f64,
    /// Boundary exponent at z → 1, the larger root of A2(A2−1) = ℓ(ℓ+1)/q + v1/q².
    pub a2: f64,
    pub a2_prime: f64,
    /// Hypergeometric parameters; a = −n on the spectrum.
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl WaveParams {
    pub fn new(n: usize, l: u32, h: &ReducedHamiltonian) -> Result<Self> {
        let a1 = decay_exponent(n, l, h)?;
        let a2_prime = a2_prime(l, h)?;
        let a2 = 0.5 + a2_prime;
        Ok(Self {
            a1,
            a2,
            a2_prime,
            a: -(n as f64),
            b: n as f64 + 2.0 * a1 + 2.0 * a2,
            c: 1.0 + 2.0 * a1,
        })
    }
}

/// Manning-Rosen energy in atomic units, written directly in (A, b, α).
pub fn energy_manning_rosen(n: usize, l: u32, a: f64, b: f64, alpha: f64) -> Result<f64> {
    if !(b > 0.0) {
        return domain(format!("Manning-Rosen range b must be positive, got {b}"));
    }
    let ll = centrifugal_factor(l);
    let arg = 0.25 + ll + alpha * (alpha - 1.0);
    if !(arg >= 0.0) {
        return domain(format!("Manning-Rosen exponent is complex: {arg}"));
    }
    let root = arg.sqrt();
    let nf = n as f64;
    let num = nf * nf + (2.0 * nf + 1.0) * (0.5 + root) + ll - a;
    if !(num < 0.0) {
        return Err(Error::NoSuchState { n, l });
    }
    let ratio = num / (2.0 * nf + 1.0 + 2.0 * root);
    Ok(-ratio * ratio / (2.0 * b * b))
}

/// Hulthén energy from the reduced coupling v0 = 2mV0/(β²ħ²) and
/// e_scale = β²ħ²/(2m).
pub fn energy_hulthen(n: usize, l: u32, v0: f64, e_scale: f64) -> Result<f64> {
    if !(e_scale > 0.0) {
        return domain(format!("energy scale must be positive, got {e_scale}"));
    }
    let big_n = (n + l as usize + 1) as f64;
    if !(big_n * big_n < v0) {
        return Err(Error::NoSuchState { n, l });
    }
    let m = (n + l as usize) as f64;
    let ratio = (m * (m + 2.0) + 1.0 - v0) / (2.0 * big_n);
    Ok(-e_scale * ratio * ratio)
}

/// Hydrogen-like energy −Z²/(2(n+ℓ+1)²) in atomic units.
pub fn energy_coulomb(n: usize, l: u32, z: f64) -> Result<f64> {
    if !(z > 0.0) {
        return domain(format!("Coulomb charge must be positive, got {z}"));
    }
    let big_n = (n + l as usize + 1) as f64;
    Ok(-z * z / (2.0 * big_n * big_n))
}

/// Parameters of the generalized Morse wave function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorseParams {
    /// sqrt(8mV1)/(βħ)
    pub b1: f64,
    /// sqrt(−8mE)/(βħ)
    pub b2: f64,
    /// Laguerre order, equal to B2.
    pub sigma_bar: f64,
}

impl MorseParams {
    /// Parameters of the n-th s-wave state; B2 = v0/sqrt(v1) − 2n − 1 > 0.
    pub fn new(n: usize, v0: f64, v1: f64, beta: f64, kinetic: KineticScale) -> Result<Self> {
        let h = morse_reduced(v0, v1, beta, kinetic)?;
        let b2 = h.v0 / h.v1.sqrt() - 2.0 * n as f64 - 1.0;
        if !(b2 > 0.0) {
            return Err(Error::NoSuchState { n, l: 0 });
        }
        Ok(Self {
            b1: 2.0 * h.v1.sqrt(),
            b2,
            sigma_bar: b2,
        })
    }
}

fn morse_reduced(v0: f64, v1: f64, beta: f64, kinetic: KineticScale) -> Result<ReducedHamiltonian> {
    if !(v1 > 0.0) {
        return domain(format!("Morse repulsion V1 must be positive, got {v1}"));
    }
    reduce(v0, v1, beta, 0.0, kinetic)
}

/// Generalized Morse s-wave energy −(β²ħ²/8m)(2n + 1 − (V0/βħ)sqrt(2m/V1))².
///
/// The threshold 2n + 1 = (V0/βħ)sqrt(2m/V1) is admitted and gives E = 0.
pub fn energy_morse(n: usize, v0: f64, v1: f64, beta: f64, kinetic: KineticScale) -> Result<f64> {
    let h = morse_reduced(v0, v1, beta, kinetic)?;
    let strength = h.v0 / h.v1.sqrt();
    let gap = 2.0 * n as f64 + 1.0 - strength;
    if gap > 0.0 {
        return Err(Error::NoSuchState { n, l: 0 });
    }
    Ok(-h.e_scale * gap * gap / 4.0)
}

/// Number of Morse bound states, 2n + 1 < (V0/βħ)sqrt(2m/V1).
pub fn count_morse_states(v0: f64, v1: f64, beta: f64, kinetic: KineticScale) -> Result<usize> {
    let h = morse_reduced(v0, v1, beta, kinetic)?;
    let strength = h.v0 / h.v1.sqrt();
    if strength <= 1.0 {
        return Ok(0);
    }
    let mut count = ((strength - 1.0) / 2.0).ceil() as usize;
    while count > 0 && 2.0 * (count - 1) as f64 + 1.0 >= strength {
        count -= 1;
    }
    Ok(count)
}
