//! Globally adaptive Gauss-Kronrod (10/21-point) integration.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_707_599_950,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Default cap on the number of subintervals.
pub const MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Segment { a, b, value, error }
}

/// ∫_a^b f, refined until the error estimate is below max(abs_tol, rel_tol·|I|).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<Integral> {
    integrate_with_breaks(f, &[a, b], abs_tol, rel_tol)
}

/// Like [`integrate`], with the range pre-split at the given ordered points.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(f: F, points: &[f64], abs_tol: f64, rel_tol: f64) -> Result<Integral> {
    if points.len() < 2 {
        return Err(Error::Domain("integration needs at least two points".into()));
    }
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Domain(format!(
                "integration limits out of order: {} >= {}",
                w[0], w[1]
            )));
        }
        heap.push(kronrod21(&f, w[0], w[1]));
    }
    let (mut value, mut error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), s: &Segment| (v + s.value, e + s.error));
    loop {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Numeric("non-finite integrand".into()));
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            // Resum to drop drift from the running totals.
            let (exact_value, exact_error) = heap.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
            value = exact_value;
            error = exact_error;
            if error <= abs_tol.max(rel_tol * value.abs()) {
                return Ok(Integral {
                    value,
                    error,
                    intervals: heap.len(),
                });
            }
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::Numeric(format!(
                "quadrature did not converge: error estimate {error:.3e} after {} intervals",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::Numeric("quadrature interval underflow".into()));
        }
        let left = kronrod21(&f, worst.a, mid);
        let right = kronrod21(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}

/// ∫_a^∞ f via x = a + t/(1 − t).
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, abs_tol: f64, rel_tol: f64) -> Result<Integral> {
    let g = |t: f64| {
        let s = 1.0 - t;
        let x = a + t / s;
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v / (s * s)
        }
    };
    integrate(g, 0.0, 1.0, abs_tol, rel_tol)
}
