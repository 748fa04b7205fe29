//! Globally adaptive Gauss–Kronrod (10/21) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
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

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_932_457_209,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ...
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Default relative tolerance for every integral in the crate.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: 1e-15,
            max_intervals: 5000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    for i in 0..10 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::ToleranceNotMet {
            estimate: value,
            achieved: f64::INFINITY,
            requested: 0.0,
        });
    }
    // Roundoff floor so that panels of an exactly-integrated polynomial stop.
    let floor = 50.0 * f64::EPSILON * (kronrod.abs() * half.abs());
    Ok(Panel {
        a,
        b,
        value,
        error: error.max(floor),
    })
}

/// Integrate `f` over the finite interval `[a, b]`.
pub fn integrate_with<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    opts: QuadratureOptions,
) -> Result<QuadratureEstimate> {
    if a == b {
        return Ok(QuadratureEstimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let first = kronrod21(&f, a, b)?;
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut evaluations = 21;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            return Ok(QuadratureEstimate {
                value,
                error,
                evaluations,
            });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::ToleranceNotMet {
                estimate: value,
                achieved: error,
                requested: target,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod21(&f, worst.a, mid)?;
        let right = kronrod21(&f, mid, worst.b)?;
        evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // Re-sum to keep the running totals free of drift.
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
        }
    }
}

/// Integrate `f` over `[a, b]` with the default tolerances.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<f64> {
    integrate_with(f, a, b, QuadratureOptions::default()).map(|e| e.value)
}

/// Integrate `f` over `[a, ∞)` after the map `x = a + t/(1-t)`.
pub fn integrate_semi_infinite_with<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    opts: QuadratureOptions,
) -> Result<QuadratureEstimate> {
    let mapped = |t: f64| {
        let s = 1.0 - t;
        let x = a + t / s;
        let fx = f(x);
        if fx == 0.0 {
            0.0
        } else {
            fx / (s * s)
        }
    };
    integrate_with(mapped, 0.0, 1.0, opts)
}

/// Integrate `f` over `[a, ∞)` with the default tolerances.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, a: f64) -> Result<f64> {
    integrate_semi_infinite_with(f, a, QuadratureOptions::default()).map(|e| e.value)
}
