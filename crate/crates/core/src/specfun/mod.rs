//! Special functions used by the closed-form solutions.
//!
//! Finite alternating sums (terminating ₂F₁, Laguerre polynomials) are
//! accumulated in double-double arithmetic: for σ ~ 40 and x ~ 50 the
//! individual Laguerre terms exceed the result by up to fourteen orders of
//! magnitude.

mod dd;

pub use statrs::function::beta::ln_beta;

use crate::error::{domain, Error, Result};
use crate::quadrature;
pub use dd::Dd;

pub use statrs::function::gamma::{gamma, ln_gamma};

/// Rising factorial (x)_k = x(x+1)…(x+k−1).
pub fn pochhammer(x: f64, k: u32) -> f64 {
    pochhammer_dd(x, k).to_f64()
}

fn pochhammer_dd(x: f64, k: u32) -> Dd {
    (0..k).fold(Dd::ONE, |acc, j| acc * (Dd::from(x) + Dd::from(f64::from(j))))
}

/// Coefficients c_k = (−n)_k (b)_k / ((c)_k k!) of the terminating series
/// ₂F₁(−n, b; c; z) = Σ c_k z^k.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    coeffs: Vec<Dd>,
}

impl SeriesCoefficients {
    pub fn new(n: usize, b: f64, c: f64) -> Result<Self> {
        for j in 0..n {
            if c + j as f64 == 0.0 {
                return domain(format!(
                    "terminating 2F1 with n = {n} has a vanishing denominator at c = {c}"
                ));
            }
        }
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut ck = Dd::ONE;
        coeffs.push(ck);
        for k in 0..n {
            let kf = k as f64;
            ck = ck * Dd::from(kf - n as f64) * (Dd::from(b) + Dd::from(kf))
                / ((Dd::from(c) + Dd::from(kf)) * Dd::from(kf + 1.0));
            coeffs.push(ck);
        }
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64()).collect()
    }

    /// The coefficients at full double-double precision.
    pub fn as_dd(&self) -> &[Dd] {
        &self.coeffs
    }

    pub fn eval(&self, z: f64) -> f64 {
        horner(&self.coeffs, Dd::from(z))
    }

    /// Value at z = 1 − w, with z carried in double-double so that w ≪ 1
    /// keeps its digits.
    pub fn eval_complement(&self, w: f64) -> f64 {
        horner(&self.coeffs, Dd::ONE - Dd::from(w))
    }
}

fn horner(coeffs: &[Dd], xd: Dd) -> f64 {
    coeffs.iter().rev().fold(Dd::ZERO, |acc, &c| acc * xd + c).to_f64()
}

/// ₂F₁(−n, b; c; z) as the finite sum of its n+1 terms.
pub fn hyp2f1_terminating(n: usize, b: f64, c: f64, z: f64) -> Result<f64> {
    Ok(SeriesCoefficients::new(n, b, c)?.eval(z))
}

/// Absolute accuracy requested from the Euler-integral evaluation of ₂F₁.
pub const EULER_ABS_TOL: f64 = 1e-12;
/// Relative target tried first by [`hyp2f1_euler`].
pub const EULER_REL_TOL: f64 = 1e-13;

/// ₂F₁(a, b; c; z) from Euler's integral
/// Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ t^{b−1}(1−t)^{c−b−1}(1−tz)^{−a} dt.
///
/// Requires c > b > 0, and either z ≤ 1 or a a non-positive integer so the
/// factor (1 − tz)^{−a} stays real on the whole range.
pub fn hyp2f1_euler(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(b > 0.0 && c > b) {
        return domain(format!("Euler integral needs c > b > 0, got b = {b}, c = {c}"));
    }
    let integer_a = a <= 0.0 && a.fract() == 0.0;
    if z > 1.0 && !integer_a {
        return domain(format!(
            "Euler integral at z = {z} > 1 needs a non-positive integer a, got {a}"
        ));
    }
    // Exponent of (1 − t) at the upper endpoint.
    let end_power = c - b - 1.0 - if z == 1.0 { a } else { 0.0 };
    if end_power <= -1.0 {
        return domain(format!(
            "Euler integrand is not integrable at t = 1 (exponent {end_power})"
        ));
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    let log_beta = ln_beta(b, c - b);
    // (1 − tz)^{−a}, with the t = 1 singularity folded into `right_power` when z = 1.
    let middle = |t: f64| -> f64 {
        if z == 1.0 {
            1.0
        } else if integer_a && z > 1.0 {
            (1.0 - t * z).powi((-a) as i32)
        } else {
            (-a * (-t * z).ln_1p()).exp()
        }
    };
    let right_power = end_power + 1.0;
    // Split at the mean of the Beta(b, c − b) weight; with the spread below
    // it places breaks where a sharply peaked weight actually lives.
    let split = b / c;
    let spread = (b * (c - b) / (c * c * (c + 1.0))).sqrt();
    let density = |t: f64| ((b - 1.0) * t.ln() + end_power * (1.0 - t).ln() - log_beta).exp() * middle(t);
    let run = |abs_tol: f64, rel_tol: f64| -> Result<f64> {
        let lower = if b < 2.0 {
            // t = s^{1/b} removes t^{b−1}.
            let f = |s: f64| {
                let log_t = s.ln() / b;
                let t = log_t.exp();
                (end_power * (-log_t.exp_m1()).ln() - log_beta).exp() * middle(t) / b
            };
            quadrature::integrate(f, 0.0, split.powf(b), abs_tol, rel_tol)?.value
        } else {
            quadrature::integrate_with_breaks(density, &breaks(0.0, split, split, -spread), abs_tol, rel_tol)?.value
        };
        let upper = if right_power < 2.0 {
            // 1 − t = u^{1/e} removes (1 − t)^{e−1}.
            let f = |u: f64| {
                let one_minus_t = u.powf(1.0 / right_power);
                let t = 1.0 - one_minus_t;
                ((b - 1.0) * (-one_minus_t).ln_1p() - log_beta).exp() * middle(t) / right_power
            };
            quadrature::integrate(f, 0.0, (1.0 - split).powf(right_power), abs_tol, rel_tol)?.value
        } else {
            quadrature::integrate_with_breaks(density, &breaks(split, 1.0, split, spread), abs_tol, rel_tol)?.value
        };
        Ok(lower + upper)
    };
    // Relative accuracy when the pieces allow it; cancellation inside a
    // sign-changing (1 − tz)^{−a} falls back to the absolute target.
    run(0.0, EULER_REL_TOL).or_else(|_| run(0.5 * EULER_ABS_TOL, EULER_REL_TOL))
}

/// Ordered breaks in [lo, hi]: the endpoints plus centre + k·step for
/// k = 1, 4, 16, 64, 256 where they fall inside.
fn breaks(lo: f64, hi: f64, centre: f64, step: f64) -> Vec<f64> {
    let mut points = vec![lo, hi];
    points.extend(
        [1.0, 4.0, 16.0, 64.0, 256.0]
            .iter()
            .map(|k| centre + k * step)
            .filter(|&t| t > lo && t < hi),
    );
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// Coefficients of x^k in L_n^σ(x): (−1)^k C(n+σ, n−k)/k!.
pub fn laguerre_coefficients(n: usize, sigma: f64) -> Vec<f64> {
    laguerre_coefficients_dd(n, sigma).into_iter().map(Dd::to_f64).collect()
}

fn laguerre_coefficients_dd(n: usize, sigma: f64) -> Vec<Dd> {
    (0..=n)
        .map(|k| {
            // C(n+σ, n−k) = Π_{j=1}^{n−k} (σ + k + j)/j
            let mut c = Dd::ONE;
            for j in 1..=(n - k) {
                c = c * (Dd::from(sigma) + Dd::from((k + j) as f64)) / (j as f64);
            }
            for j in 1..=k {
                c = c / (j as f64);
            }
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Generalized Laguerre polynomial L_n^σ(x).
pub fn laguerre(n: usize, sigma: f64, x: f64) -> f64 {
    horner(&laguerre_coefficients_dd(n, sigma), Dd::from(x))
}

/// Relative term size below which the Kummer series is truncated.
pub const SERIES_TOL: f64 = 1e-16;
/// Maximum number of Kummer series terms.
pub const SERIES_MAX_TERMS: usize = 10_000;

/// Kummer's confluent hypergeometric function ₁F₁(a; b; z).
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if b <= 0.0 && b.fract() == 0.0 {
        return domain(format!("1F1 is undefined for b = {b}"));
    }
    let mut sum = Dd::ONE;
    let mut term = 1.0f64;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * z / ((b + kf) * (kf + 1.0));
        term *= ratio;
        sum = sum + Dd::from(term);
        let s = sum.to_f64();
        if term == 0.0 || (term.abs() <= SERIES_TOL * s.abs() && ratio.abs() < 0.5) {
            return Ok(s);
        }
        if !s.is_finite() {
            return Err(Error::Numeric(format!("1F1({a}; {b}; {z}) overflowed")));
        }
    }
    Err(Error::Numeric(format!(
        "1F1({a}; {b}; {z}) did not converge in {SERIES_MAX_TERMS} terms"
    )))
}

/// Lower incomplete gamma γ(a, x) = x^a e^{−x} ₁F₁(1; 1+a; x)/a.
pub fn lower_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) {
        return domain(format!("incomplete gamma needs a > 0, got {a}"));
    }
    if !(x >= 0.0) {
        return domain(format!("incomplete gamma needs x >= 0, got {x}"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let prefactor = (a * x.ln() - x).exp() / a;
    Ok(prefactor * hyp1f1(1.0, 1.0 + a, x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn complement_evaluation_near_one() {
        // Terminating connection formula:
        // F(−n, b; c; 1−w) = (c−b)_n/(c)_n · F(−n, b; b−c−n+1; w).
        let (b, c) = (2.0e5 + 4.0, 2.0e5 + 1.0);
        for n in 1..=3usize {
            let s = SeriesCoefficients::new(n, b, c).unwrap();
            for w in [1e-9, 1e-6, 3e-3, 0.2] {
                let expected = pochhammer(c - b, n as u32) / pochhammer(c, n as u32)
                    * hyp2f1_terminating(n, b, b - c - n as f64 + 1.0, w).unwrap();
                assert_relative_eq!(s.eval_complement(w), expected, max_relative = 1e-9);
            }
            assert_relative_eq!(s.eval_complement(0.3), s.eval(0.7), max_relative = 1e-12);
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(-2.0, 2), 2.0);
        assert_eq!(pochhammer(3.0, 3), 60.0);
        // (−n)_k = (−1)^k n!/(n−k)!
        assert_eq!(pochhammer(-5.0, 3), -60.0);
    }

    #[test]
    fn terminating_series_small_cases() {
        assert_eq!(hyp2f1_terminating(0, 3.3, 1.7, 0.4).unwrap(), 1.0);
        let (b, c, z) = (2.5, 1.5, 0.3);
        assert_relative_eq!(
            hyp2f1_terminating(1, b, c, z).unwrap(),
            1.0 - b * z / c,
            max_relative = 1e-15
        );
        assert!(hyp2f1_terminating(2, 3.0, 2.0, 0.5).unwrap().abs() < 1e-15);
    }

    #[test]
    fn terminating_series_rejects_pole() {
        assert!(hyp2f1_terminating(3, 1.0, -1.0, 0.5).is_err());
        assert!(hyp2f1_terminating(3, 1.0, 0.0, 0.5).is_err());
        // c = −3 is reached only by a term that is already zero.
        assert!(hyp2f1_terminating(3, 1.0, -3.0, 0.5).is_ok());
    }

    #[test]
    fn series_coefficients_shape() {
        let s = SeriesCoefficients::new(4, 2.0, 3.0).unwrap();
        assert_eq!(s.degree(), 4);
        assert_eq!(s.to_vec()[0], 1.0);
    }

    #[test]
    fn euler_trivial_and_logarithm() {
        assert_eq!(hyp2f1_euler(0.0, 1.5, 3.0, 0.7).unwrap(), 1.0);
        let z: f64 = 0.5;
        let expected = -(1.0 - z).ln() / z;
        assert_relative_eq!(expected, 1.386_294_361_1, max_relative = 1e-10);
        assert_relative_eq!(hyp2f1_euler(1.0, 1.0, 2.0, z).unwrap(), expected, max_relative = 1e-11);
    }

    #[test]
    fn euler_at_unit_argument_is_gauss_sum() {
        // ₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b))
        let (a, b, c) = (-2.3, 0.7, 2.9);
        let expected = (ln_gamma(c) + ln_gamma(c - a - b) - ln_gamma(c - a) - ln_gamma(c - b)).exp();
        assert_relative_eq!(hyp2f1_euler(a, b, c, 1.0).unwrap(), expected, max_relative = 1e-10);
    }

    #[test]
    fn euler_with_sharply_peaked_weight() {
        // Gauss sum Γ(b+1)Γ(3)/(Γ(b+3)Γ(1)) = 2/((b+1)(b+2)).
        let b = 2.0e5 + 3.0;
        let expected = 2.0 / ((b + 1.0) * (b + 2.0));
        assert_relative_eq!(
            hyp2f1_euler(-2.0, b, b + 1.0, 1.0).unwrap(),
            expected,
            max_relative = 1e-10
        );
        for (b, c) in [(1.0e4, 2.0e4), (3.0e4, 3.0e4 + 40.0), (2.5, 5.0e4)] {
            assert_relative_eq!(
                hyp2f1_euler(-1.0, b, c, 0.6).unwrap(),
                1.0 - 0.6 * b / c,
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn euler_domain_errors() {
        assert!(hyp2f1_euler(1.0, 2.0, 1.0, 0.5).is_err());
        assert!(hyp2f1_euler(1.0, -1.0, 1.0, 0.5).is_err());
        assert!(hyp2f1_euler(-0.5, 1.0, 2.0, 1.5).is_err());
        assert!(hyp2f1_euler(2.0, 1.0, 2.0, 1.0).is_err());
        assert!(hyp2f1_euler(-2.0, 1.0, 2.0, 1.5).is_ok());
    }

    #[test]
    fn euler_matches_terminating_series() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut uniform = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..50 {
            let n = (uniform() * 7.0) as usize;
            let b = 0.2 + 4.0 * uniform();
            let c = b + 0.2 + 4.0 * uniform();
            let z = uniform();
            let series = hyp2f1_terminating(n, b, c, z).unwrap();
            let integral = hyp2f1_euler(-(n as f64), b, c, z).unwrap();
            assert!(
                (series - integral).abs() <= 1e-9 * series.abs().max(1e-3),
                "n={n} b={b} c={c} z={z}: {series} vs {integral}"
            );
        }
    }

    #[test]
    fn laguerre_small_cases() {
        assert_eq!(laguerre(0, 3.3, 7.0), 1.0);
        let (s, x) = (2.5, 0.75);
        assert_relative_eq!(laguerre(1, s, x), 1.0 + s - x, max_relative = 1e-15);
        assert_relative_eq!(laguerre(2, 0.0, 1.0), -0.5, max_relative = 1e-15);
    }

    #[test]
    fn laguerre_three_term_recurrence() {
        for n in 1..20usize {
            for &sigma in &[0.0, 0.5, 7.3, 23.8, 40.0] {
                for &x in &[0.0, 0.3, 2.0, 9.9, 25.0, 37.5, 50.0] {
                    let nf = n as f64;
                    let lhs = (nf + 1.0) * laguerre(n + 1, sigma, x);
                    let a = (2.0 * nf + 1.0 + sigma - x) * laguerre(n, sigma, x);
                    let b = (nf + sigma) * laguerre(n - 1, sigma, x);
                    let scale = lhs.abs().max(a.abs()).max(b.abs());
                    assert!((lhs - (a - b)).abs() <= 1e-10 * scale, "n={n} sigma={sigma} x={x}");
                }
            }
        }
    }

    #[test]
    fn hyp1f1_cases() {
        for z in [-2.0, 0.5, 3.0] {
            assert_relative_eq!(hyp1f1(1.7, 1.7, z).unwrap(), f64::exp(z), max_relative = 1e-14);
        }
        assert_relative_eq!(
            hyp1f1(1.0, 2.0, 1.0).unwrap(),
            1.718_281_828_459_045,
            max_relative = 1e-14
        );
        assert_eq!(hyp1f1(0.3, 1.2, 0.0).unwrap(), 1.0);
        assert!(hyp1f1(1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn incomplete_gamma_cases() {
        assert_relative_eq!(
            lower_incomplete_gamma(1.0, 1.0).unwrap(),
            1.0 - (-1.0f64).exp(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            lower_incomplete_gamma(1.0, 1.0).unwrap(),
            0.632_120_6,
            max_relative = 1e-7
        );
        assert_eq!(lower_incomplete_gamma(2.5, 0.0).unwrap(), 0.0);
        let g = lower_incomplete_gamma(0.5, 30.0).unwrap();
        assert!((g - std::f64::consts::PI.sqrt()).abs() < 1e-10);
        assert!(lower_incomplete_gamma(0.0, 1.0).is_err());
        assert!(lower_incomplete_gamma(-1.0, 1.0).is_err());
    }

    #[test]
    fn incomplete_gamma_derivative() {
        for i in 0..20 {
            let a = 0.5 + 0.9 * f64::from(i % 5);
            let x = 0.2 + 0.5 * f64::from(i);
            let h = 1e-4 * x;
            let fd =
                (lower_incomplete_gamma(a, x + h).unwrap() - lower_incomplete_gamma(a, x - h).unwrap()) / (2.0 * h);
            let exact = ((a - 1.0) * x.ln() - x).exp();
            assert_relative_eq!(fd, exact, max_relative = 1e-6);
        }
    }

    proptest::proptest! {
        #[test]
        fn terminating_series_is_a_polynomial(n in 0usize..7, b in -3.0f64..5.0, c in 0.5f64..6.0, x0 in -1.0f64..1.0) {
            // The (n+1)-th forward difference of a degree-n polynomial vanishes.
            let h = 0.1;
            let values: Vec<f64> = (0..=n + 1)
                .map(|i| hyp2f1_terminating(n, b, c, x0 + h * i as f64).unwrap())
                .collect();
            let mut diff = values.clone();
            for order in 1..=n + 1 {
                for i in 0..diff.len() - order {
                    diff[i] = diff[i + 1] - diff[i];
                }
            }
            let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            proptest::prop_assert!(diff[0].abs() <= 1e-9 * scale);
        }
    }
}
