//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate falls below `max(abs, rel * |I|)`. Semi-infinite ranges are mapped
//! onto `[0, 1)` with `x = a + s * t / (1 - t)`.

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
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Absolute and relative error targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn relative(rel: f64) -> Self {
        Tolerance { abs: 0.0, rel }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

/// Result of an integration together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

pub const DEFAULT_MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // ∫|f| estimate, for the roundoff floor
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
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

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut gauss = 0.0;
    let mut kronrod = f_center * WGK[10];
    let mut res_abs = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    #[allow(clippy::needless_range_loop)]
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        gauss += WG[j] * (f1 + f2);
        kronrod += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        kronrod += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let width = half.abs();
    let err = (kronrod - gauss) * half;
    let res_abs = res_abs * width;
    let res_asc = res_asc * width;
    Segment {
        a,
        b,
        value: kronrod * half,
        error: rescale_error(err, res_abs, res_asc),
        abs_value: res_abs,
    }
}

/// Integrates `f` over the finite range spanned by `breakpoints`
/// (at least two, increasing). Each gap between consecutive breakpoints
/// starts as its own interval.
pub fn integrate_with_breakpoints<F>(
    f: F,
    breakpoints: &[f64],
    tol: Tolerance,
    max_intervals: usize,
) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    if breakpoints.len() < 2 {
        return Err(Error::domain("breakpoints", "need at least two"));
    }
    if breakpoints.iter().any(|x| !x.is_finite()) {
        return Err(Error::domain("breakpoints", "must be finite"));
    }
    if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("breakpoints", "must be strictly increasing"));
    }

    let mut heap: BinaryHeap<Segment> = breakpoints
        .windows(2)
        .map(|w| kronrod21(&f, w[0], w[1]))
        .collect();
    let mut value: f64 = heap.iter().map(|s| s.value).sum();
    let mut error: f64 = heap.iter().map(|s| s.error).sum();

    loop {
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NonConvergence {
                what: "quadrature",
                residual: error,
            });
        }
        if error <= tol.target(value) {
            break;
        }
        let abs_total: f64 = heap.iter().map(|s| s.abs_value).sum();
        if error <= 50.0 * f64::EPSILON * abs_total {
            // error estimate is at the roundoff floor
            break;
        }
        if heap.len() >= max_intervals {
            return Err(Error::NonConvergence {
                what: "quadrature",
                residual: error,
            });
        }

        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further in floating point
            return Err(Error::NonConvergence {
                what: "quadrature",
                residual: error,
            });
        }
        let left = kronrod21(&f, worst.a, mid);
        let right = kronrod21(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // resum occasionally to keep drift out of the running totals
        if heap.len().is_multiple_of(256) {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }

    let value = heap.iter().map(|s| s.value).sum();
    let error = heap.iter().map(|s| s.error).sum();
    Ok(Integral {
        value,
        error,
        intervals: heap.len(),
    })
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    integrate_with_breakpoints(f, &[a, b], tol, DEFAULT_MAX_INTERVALS)
}

/// Integrates `f` over `[a, ∞)`. `scale` sets where the mapping places the
/// bulk of the range; pass the characteristic width of `f`'s decay.
pub fn integrate_to_infinity<F>(f: F, a: f64, scale: f64, tol: Tolerance) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::domain("scale", "must be finite and > 0"));
    }
    let mapped = |t: f64| {
        let one_minus = 1.0 - t;
        if one_minus <= 0.0 {
            return 0.0;
        }
        let x = a + scale * t / one_minus;
        let jac = scale / (one_minus * one_minus);
        let y = f(x) * jac;
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    integrate(mapped, 0.0, 1.0, tol)
}
