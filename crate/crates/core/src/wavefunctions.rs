//! Analytic radial wave functions, their normalization and node counts.
//!
//! Two-term states live on r > r_s with z = q e^{−βr} ∈ (0, 1) and are
//! constructed for q ≥ 1. Morse states (q = 0) live on the whole line, where
//! z = e^{−βr} ∈ (0, ∞) and the Laguerre form is an exact eigenfunction.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::potentials::TwoTermPotential;
use crate::quadrature::{integrate, integrate_to_infinity};
use crate::specfun::{gamma, laguerre, laguerre_coefficients, ln_beta, lower_incomplete_gamma, Dd, SeriesCoefficients};
use crate::spectra::{energy_morse, energy_two_term, MorseParams, WaveParams};
use crate::units::{reduce, KineticScale, ReducedHamiltonian};

const NORM_REL_TOL: f64 = 1e-13;
/// Points on the node-counting grid.
pub const NODE_GRID_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormConvention {
    /// ∫|R(r)|² dr = 1 over the physical domain.
    Physical,
    /// ∫|R(z)|² dz = 1 over z ∈ (0, q) (two-term) or (0, 1) (Morse).
    ZMeasure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StateKind {
    TwoTerm {
        potential: TwoTermPotential,
        params: WaveParams,
    },
    Morse {
        #[serde(rename = "V0")]
        v0: f64,
        #[serde(rename = "V1")]
        v1: f64,
        beta: f64,
        params: MorseParams,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub n: usize,
    pub l: u32,
    pub energy: f64,
    pub kind: StateKind,
    pub kinetic: KineticScale,
    pub norm: f64,
    pub norm_convention: NormConvention,
}

impl BoundState {
    /// Physically normalized (n, ℓ) state of a two-term potential with q ≥ 1.
    pub fn two_term(n: usize, l: u32, potential: TwoTermPotential, kinetic: KineticScale) -> Result<Self> {
        potential.validate()?;
        if potential.q < 1.0 {
            return domain(format!(
                "analytic two-term states need q >= 1 (q = 0 is the Morse case), got q = {}",
                potential.q
            ));
        }
        let h = reduced(&potential, kinetic)?;
        let params = WaveParams::new(n, l, &h)?;
        let energy = energy_two_term(n, l, &h)?;
        let mut state = Self {
            n,
            l,
            energy,
            kind: StateKind::TwoTerm { potential, params },
            kinetic,
            norm: 1.0,
            norm_convention: NormConvention::Physical,
        };
        state.norm = normalize_physical(&state)?;
        Ok(state)
    }

    /// Physically normalized n-th s-wave state of the generalized Morse potential.
    pub fn morse(n: usize, v0: f64, v1: f64, beta: f64, kinetic: KineticScale) -> Result<Self> {
        let params = MorseParams::new(n, v0, v1, beta, kinetic)?;
        let energy = energy_morse(n, v0, v1, beta, kinetic)?;
        let mut state = Self {
            n,
            l: 0,
            energy,
            kind: StateKind::Morse { v0, v1, beta, params },
            kinetic,
            norm: 1.0,
            norm_convention: NormConvention::Physical,
        };
        state.norm = normalize_physical(&state)?;
        Ok(state)
    }

    /// The same state rescaled to another convention.
    pub fn with_convention(&self, convention: NormConvention) -> Result<Self> {
        let norm = match convention {
            NormConvention::Physical => normalize_physical(self)?,
            NormConvention::ZMeasure => normalize_z_measure(self)?,
        };
        Ok(Self {
            norm,
            norm_convention: convention,
            ..self.clone()
        })
    }

    pub fn beta(&self) -> f64 {
        match &self.kind {
            StateKind::TwoTerm { potential, .. } => potential.beta,
            StateKind::Morse { beta, .. } => *beta,
        }
    }

    /// Lower end of the radial domain, or None for the whole line.
    pub fn inner_boundary(&self) -> Option<f64> {
        match &self.kind {
            StateKind::TwoTerm { potential, .. } => Some(potential.inner_boundary()),
            StateKind::Morse { .. } => None,
        }
    }

    /// Normalized amplitude at r.
    pub fn eval(&self, r: f64) -> Result<f64> {
        match self.kind {
            StateKind::TwoTerm { .. } => radial_two_term(self, r),
            StateKind::Morse { .. } => radial_morse(self, r),
        }
    }
}

fn reduced(p: &TwoTermPotential, kinetic: KineticScale) -> Result<ReducedHamiltonian> {
    reduce(p.v0, p.v1, p.beta, p.q, kinetic)
}

/// z^{A1}(1−z)^{A2} ₂F₁(−n, b; c; z) with z = e^{−τ}, τ > 0.
fn two_term_shape(params: &WaveParams, series: &SeriesCoefficients, tau: f64) -> f64 {
    let w = -(-tau).exp_m1();
    let log_envelope = -params.a1 * tau + params.a2 * w.ln();
    let poly = if w < 0.5 {
        series.eval_complement(w)
    } else {
        series.eval((-tau).exp())
    };
    log_envelope.exp() * poly
}

fn two_term_parts(s: &BoundState) -> Result<(TwoTermPotential, WaveParams, SeriesCoefficients)> {
    match &s.kind {
        StateKind::TwoTerm { potential, params } => {
            let series = SeriesCoefficients::new(s.n, params.b, params.c)?;
            Ok((*potential, *params, series))
        }
        StateKind::Morse { .. } => domain("expected a two-term state"),
    }
}

fn morse_parts(s: &BoundState) -> Result<(f64, MorseParams)> {
    match &s.kind {
        StateKind::Morse { beta, params, .. } => Ok((*beta, *params)),
        StateKind::TwoTerm { .. } => domain("expected a Morse state"),
    }
}

/// N z^{A1}(1−z)^{A2} ₂F₁(−n, n+2A1+2A2; 1+2A1; z), z = q e^{−βr}.
pub fn radial_two_term(s: &BoundState, r: f64) -> Result<f64> {
    let (potential, params, series) = two_term_parts(s)?;
    let tau = potential.beta * r - potential.q.ln();
    if !(tau > 0.0) {
        return domain(format!(
            "r = {r} is not beyond the inner boundary {}",
            potential.inner_boundary()
        ));
    }
    Ok(s.norm * two_term_shape(&params, &series, tau))
}

/// e^{−y/2} z^{B2/2} L_n^{B2}(y), y = B1 z.
fn morse_shape(params: &MorseParams, n: usize, log_z: f64) -> f64 {
    let y = params.b1 * log_z.exp();
    let envelope = (0.5 * (params.b2 * log_z - y)).exp();
    if envelope == 0.0 {
        // Deep in either tail; the polynomial may have overflowed.
        return 0.0;
    }
    envelope * laguerre(n, params.sigma_bar, y)
}

/// N e^{−B1 z/2} z^{B2/2} L_n^{B2}(B1 z), z = e^{−βr}, for any real r.
pub fn radial_morse(s: &BoundState, r: f64) -> Result<f64> {
    let (beta, params) = morse_parts(s)?;
    if !r.is_finite() {
        return domain(format!("r must be finite, got {r}"));
    }
    Ok(s.norm * morse_shape(&params, s.n, -beta * r))
}

/// N with ∫|R|² dr = 1, by adaptive quadrature.
pub fn normalize_physical(s: &BoundState) -> Result<f64> {
    let integral = match &s.kind {
        StateKind::TwoTerm { .. } => {
            let (potential, params, series) = two_term_parts(s)?;
            // dr = dτ/β; stretch τ so the tail decays like e^{−x}.
            let stretch = 2.0 * params.a1;
            let f = |x: f64| {
                let tau = x / stretch;
                if tau == 0.0 {
                    return 0.0;
                }
                two_term_shape(&params, &series, tau).powi(2)
            };
            let value = integrate_to_infinity(f, 0.0, 0.0, NORM_REL_TOL)?.value;
            value / (stretch * potential.beta)
        }
        StateKind::Morse { beta, params, .. } => {
            // dr = −dz/(βz); in y = B1 z the measure is B1^{−B2} y^{B2−1} dy.
            let (b2, n) = (params.b2, s.n);
            let tail = |y: f64| (-y + (b2 - 1.0) * y.ln()).exp() * laguerre(n, b2, y).powi(2);
            // y = u^{1/B2} on (0, 1] absorbs y^{B2−1}.
            let head = |u: f64| {
                if u == 0.0 {
                    return 0.0;
                }
                let y = u.powf(1.0 / b2);
                (-y).exp() * laguerre(n, b2, y).powi(2) / b2
            };
            let near = integrate(head, 0.0, 1.0, 0.0, NORM_REL_TOL)?.value;
            let far = integrate_to_infinity(tail, 1.0, 0.0, NORM_REL_TOL)?.value;
            (near + far) * (-b2 * params.b1.ln()).exp() / beta
        }
    };
    norm_from_integral(integral)
}

fn norm_from_integral(integral: f64) -> Result<f64> {
    if !(integral > 0.0) || !integral.is_finite() {
        return Err(Error::Numeric(format!(
            "normalization integral is not a positive finite number: {integral}"
        )));
    }
    Ok(integral.powf(-0.5))
}

/// ∫₀¹ ξ^{2A1+j}(1 − ξ)^{2A2} dξ for j < count, as I₀ times double-double
/// ratios. The Euler form ₂F₁(−2A2, b; b+1; 1)/b sums to the Beta function
/// B(2A1+j+1, 2A2+1), whose successive ratios are exact; the double sum
/// cancels too deeply for moments carried in f64.
fn unit_q_moments(params: &WaveParams, count: usize) -> (f64, Vec<Dd>) {
    let (x, y) = (2.0 * params.a1 + 1.0, 2.0 * params.a2 + 1.0);
    let mut ratios = Vec::with_capacity(count);
    let mut rho = Dd::ONE;
    for j in 0..count {
        ratios.push(rho);
        let j = j as f64;
        rho = rho * (Dd::from(x) + Dd::from(j)) / (Dd::from(x + y) + Dd::from(j));
    }
    (ln_beta(x, y).exp(), ratios)
}

/// N in the z-measure convention, from the closed-form double sums.
pub fn normalize_z_measure(s: &BoundState) -> Result<f64> {
    let inverse_square = match &s.kind {
        StateKind::TwoTerm { potential, params } => {
            let q = potential.q;
            if q > 1.0 {
                return Err(Error::UnsupportedConvention(format!(
                    "the z-measure normalization needs q <= 1 (got q = {q}); \
                     (1 - q xi)^(2 A2) is complex beyond xi = 1/q. Use the physical convention"
                )));
            }
            if q < 1.0 {
                return domain(format!("two-term states need q >= 1, got q = {q}"));
            }
            let series = SeriesCoefficients::new(s.n, params.b, params.c)?;
            let c = series.as_dd();
            let (scale, moments) = unit_q_moments(params, 2 * s.n + 1);
            let mut sum = Dd::ZERO;
            for (k, &ck) in c.iter().enumerate() {
                for (l, &cl) in c.iter().enumerate() {
                    sum = sum + ck * cl * moments[k + l];
                }
            }
            scale * sum.to_f64()
        }
        StateKind::Morse { params, .. } => {
            let (b1, b2) = (params.b1, params.b2);
            let d: Vec<f64> = laguerre_coefficients(s.n, b2)
                .iter()
                .enumerate()
                .map(|(k, c)| c * b1.powi(k as i32))
                .collect();
            let mut sum = 0.0;
            for (k, dk) in d.iter().enumerate() {
                for (l, dl) in d.iter().enumerate() {
                    let a = 1.0 + b2 + (k + l) as f64;
                    sum += dk * dl * (-a * b1.ln()).exp() * lower_incomplete_gamma(a, b1)?;
                }
            }
            sum
        }
    };
    norm_from_integral(inverse_square)
}

/// Literal ground-state norm of the Manning-Rosen family,
/// N = ₂F₁(−2A2, 1+2A1; 2+2A2; 1)^{−1/2}, evaluated by the Gauss sum.
/// None when the form is not a real positive number.
pub fn ground_norm_gauss_form(params: &WaveParams) -> Option<f64> {
    let (a, b, c) = (-2.0 * params.a2, 1.0 + 2.0 * params.a1, 2.0 + 2.0 * params.a2);
    if !(c - a - b > 0.0) {
        return None;
    }
    let f = gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b));
    (f.is_finite() && f > 0.0).then(|| f.powf(-0.5))
}

/// Literal ground-state norm of the Hulthén family,
/// N² = Γ(2+4A2)/((1+2A2)Γ(1−2A1+4A2)) with A2 = ℓ + 1.
/// None when the form is not a real positive number.
pub fn ground_norm_gamma_form(a1: f64, l: u32) -> Option<f64> {
    let a2 = f64::from(l) + 1.0;
    let n2 = gamma(2.0 + 4.0 * a2) / ((1.0 + 2.0 * a2) * gamma(1.0 - 2.0 * a1 + 4.0 * a2));
    (n2.is_finite() && n2 > 0.0).then(|| n2.sqrt())
}

/// Grid for node counting and sampling: geometric in the distance from the
/// inner boundary for two-term states, uniform in ln z for Morse states.
pub fn state_grid(s: &BoundState, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return domain("a sampling grid needs at least two points");
    }
    let beta = s.beta();
    match &s.kind {
        StateKind::TwoTerm { potential, params } => {
            let origin = potential.inner_boundary();
            let start = 1e-6 / beta;
            // Far enough for every node even when the state is weakly bound.
            let end = (50.0f64).max((60.0 + 4.0 * s.n as f64) / params.a1) / beta;
            let ratio = (end / start).ln() / (points - 1) as f64;
            Ok((0..points).map(|i| origin + start * (ratio * i as f64).exp()).collect())
        }
        StateKind::Morse { params, .. } => {
            // ln y from deep under the barrier to well past the last turning point.
            let y_max = 2.0 * (params.b2 + 2.0 * s.n as f64) + 120.0;
            let log_y_min = (-120.0 / params.b2).max(-700.0);
            let log_y_max = y_max.ln();
            let log_b1 = params.b1.ln();
            let step = (log_y_max - log_y_min) / (points - 1) as f64;
            // r = −ln z/β = (ln B1 − ln y)/β, listed in increasing r.
            Ok((0..points)
                .map(|i| (log_b1 - (log_y_max - step * i as f64)) / beta)
                .collect())
        }
    }
}

fn sign_changes(values: impl IntoIterator<Item = f64>) -> usize {
    let mut last = 0.0f64;
    let mut changes = 0;
    for v in values {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// Strict sign changes of R on a 10⁴-point grid over the domain.
pub fn count_nodes(s: &BoundState) -> Result<usize> {
    let grid = state_grid(s, NODE_GRID_POINTS)?;
    let values = grid.iter().map(|&r| s.eval(r)).collect::<Result<Vec<_>>>()?;
    Ok(sign_changes(values))
}

/// Samples written as `r,R,probability_density` with 17 significant digits.
pub fn samples_csv(s: &BoundState, grid: &[f64]) -> Result<String> {
    let mut out = String::from("r,R,probability_density\n");
    for &r in grid {
        let value = s.eval(r)?;
        writeln!(out, "{r:.16e},{value:.16e},{:.16e}", value * value).expect("writing to a String");
    }
    Ok(out)
}
