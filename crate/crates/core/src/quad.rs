//! Globally adaptive Gauss–Kronrod (7/15 on the Gauss side, 21-point
//! Kronrod rule from QUADPACK's `qk21`) with breakpoints and a mapping
//! of semi-infinite intervals onto the unit interval.

use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

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
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Values that can be integrated: reals and complex numbers.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Tolerances for the adaptive scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_intervals: 2000,
        }
    }
}

impl QuadConfig {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        QuadConfig {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }

    pub fn with_max_intervals(mut self, n: usize) -> Self {
        self.max_intervals = n;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: Integrand> QuadResult<T> {
    /// Turn a non-converged result into an error carrying the achieved estimate.
    pub fn require(self, what: &'static str, cfg: &QuadConfig) -> Result<T> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NoConvergence {
                what,
                achieved: self.abs_error,
                requested: cfg.abs_tol.max(cfg.rel_tol * self.value.magnitude()),
            })
        }
    }
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<T: Integrand, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[10];
    let mut resg = T::zero();
    let mut resabs = fc.magnitude() * WGK[10];
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk = resk + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[10] * (fc - reskh).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).magnitude() + (fv2[j] - reskh).magnitude());
    }
    let result = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err)
}

/// Integrate `f` over `[points[0], points[last]]`, treating interior points as
/// initial breakpoints (useful at kinks, peaks and integrable singularities).
pub fn integrate_points<T, F>(mut f: F, points: &[f64], cfg: &QuadConfig) -> QuadResult<T>
where
    T: Integrand,
    F: FnMut(f64) -> T,
{
    assert!(points.len() >= 2, "need at least two points");
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let (value, error) = kronrod21(&mut f, w[0], w[1]);
        evaluations += 21;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }
    loop {
        let (total, total_err) = heap
            .iter()
            .fold((T::zero(), 0.0), |(v, e), s| (v + s.value, e + s.error));
        let target = cfg.abs_tol.max(cfg.rel_tol * total.magnitude());
        if total_err <= target {
            return QuadResult {
                value: total,
                abs_error: total_err,
                evaluations,
                converged: true,
            };
        }
        if heap.len() >= cfg.max_intervals {
            return QuadResult {
                value: total,
                abs_error: total_err,
                evaluations,
                converged: false,
            };
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => {
                return QuadResult {
                    value: T::zero(),
                    abs_error: 0.0,
                    evaluations,
                    converged: true,
                }
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a.min(worst.b) && mid < worst.a.max(worst.b)) {
            // interval cannot be split any further
            heap.push(worst);
            let (total, total_err) = heap
                .iter()
                .fold((T::zero(), 0.0), |(v, e), s| (v + s.value, e + s.error));
            return QuadResult {
                value: total,
                abs_error: total_err,
                evaluations,
                converged: false,
            };
        }
        let (v1, e1) = kronrod21(&mut f, worst.a, mid);
        let (v2, e2) = kronrod21(&mut f, mid, worst.b);
        evaluations += 42;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }
}

/// Integrate `f` over the finite interval `[a, b]`.
pub fn integrate<T, F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> QuadResult<T>
where
    T: Integrand,
    F: FnMut(f64) -> T,
{
    integrate_points(f, &[a, b], cfg)
}

/// Integrate `f` over `[a, ∞)` via `x = a + s·u/(1−u)`, `u ∈ [0, 1)`.
/// `scale` sets the length over which the integrand is expected to live.
pub fn integrate_to_infinity<T, F>(mut f: F, a: f64, scale: f64, cfg: &QuadConfig) -> QuadResult<T>
where
    T: Integrand,
    F: FnMut(f64) -> T,
{
    let g = move |u: f64| {
        let om = 1.0 - u;
        let x = a + scale * u / om;
        let jac = scale / (om * om);
        let v = f(x);
        if jac.is_finite() {
            v * jac
        } else {
            T::zero()
        }
    };
    integrate_points(g, &[0.0, 0.5, 1.0], cfg)
}

/// Integrate over a breakpoint list whose last segment extends to +∞.
pub fn integrate_points_to_infinity<T, F>(mut f: F, points: &[f64], scale: f64, cfg: &QuadConfig) -> QuadResult<T>
where
    T: Integrand,
    F: FnMut(f64) -> T,
{
    let last = *points.last().expect("at least one point");
    let finite = if points.len() >= 2 {
        Some(integrate_points(&mut f, points, cfg))
    } else {
        None
    };
    let tail = integrate_to_infinity(&mut f, last, scale, cfg);
    match finite {
        Some(head) => QuadResult {
            value: head.value + tail.value,
            abs_error: head.abs_error + tail.abs_error,
            evaluations: head.evaluations + tail.evaluations,
            converged: head.converged && tail.converged,
        },
        None => tail,
    }
}

/// ∫_a^b w e^{−w} dφ where ln w(φ) is monotone on (a, b). The integrand
/// peaks where w = 1 (or at an endpoint if w never crosses 1). The range is
/// trimmed to where the integrand is within about e^{−50} of its maximum,
/// and the peak becomes a breakpoint with geometrically spaced panels around
/// it. Values are formed in the log domain.
pub(crate) fn peaked_integral<L>(ln_w: L, a: f64, b: f64, rel_tol: f64) -> QuadResult<f64>
where
    L: Fn(f64) -> f64,
{
    let lw = |phi: f64| {
        let l = ln_w(phi);
        if l.is_nan() {
            // rounding at an endpoint; treat as the limit on that side
            if phi - a < b - phi {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        } else {
            l
        }
    };
    let span = b - a;
    let fa = lw(a + 1e-15 * span);
    let fb = lw(b - 1e-15 * span);
    let increasing = fa <= fb;
    let (l_min, l_max) = if increasing { (fa, fb) } else { (fb, fa) };
    // trim levels relative to the largest integrand value on (a, b)
    let high = if l_min > 0.0 {
        l_min + (1.0 + 50.0 * (-l_min).exp()).ln()
    } else {
        5.0
    };
    let low = if l_max < 0.0 { l_max - 50.0 } else { -50.0 };
    // orient so that ln w increases with the parameter
    let g_of = |level: f64| level_crossing(&lw, a, b, level, increasing);
    let (lo, hi) = if increasing {
        (g_of(low), g_of(high))
    } else {
        (g_of(high), g_of(low))
    };
    let peak = g_of(0.0).clamp(lo, hi);
    let g = |phi: f64| {
        let l = lw(phi);
        if !(l > low - 20.0) || l > 709.0 {
            return 0.0;
        }
        (l - l.exp()).exp()
    };
    let mut pts = vec![lo, hi];
    if peak > lo && peak < hi {
        pts.push(peak);
        let d = (peak - lo).min(hi - peak);
        let mut step = 0.5 * d;
        while peak - step > lo || peak + step < hi {
            for q in [peak - step, peak + step] {
                if q > lo && q < hi {
                    pts.push(q);
                }
            }
            step *= 4.0;
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    if pts.len() < 2 || !(hi > lo) {
        return QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    let cfg = QuadConfig::new(0.0, rel_tol).with_max_intervals(4000);
    integrate_points(g, &pts, &cfg)
}

/// Point in [a, b] where the monotone `f` crosses `level` (an endpoint if it
/// does not), by bisection.
fn level_crossing<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, level: f64, increasing: bool) -> f64 {
    let below = |x: f64| (f(x) < level) == increasing;
    let (mut lo, mut hi) = (a, b);
    if !below(a + 1e-15 * (b - a)) {
        return a;
    }
    if below(b - 1e-15 * (b - a)) {
        return b;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * (b - a).max(lo.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}
