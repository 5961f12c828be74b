//! Adaptive Gauss–Kronrod quadrature (21-point rule, QUADPACK style).
//!
//! The worst panel (largest error estimate) is bisected until the absolute
//! target is met, the panel budget is exhausted, or panels become too narrow
//! to split in double precision. Kronrod nodes are strictly interior, so the
//! integrand is never evaluated at panel endpoints; integrable endpoint
//! singularities are handled by deep subdivision. The subdivision sequence
//! is fully deterministic and the final sum is accumulated over panels sorted
//! by position, so results are independent of evaluation order.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

/// Default hard cap on the number of panels (2^20).
pub const DEFAULT_MAX_PANELS: usize = 1 << 20;

/// Panel cap, honoring the `YM_MAX_PANELS` environment override.
pub fn max_panels() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("YM_MAX_PANELS")
            .ok()
            .and_then(|v| v.parse().ok())
            .filter(|&v| v >= 1)
            .unwrap_or(DEFAULT_MAX_PANELS)
    })
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: f64,
    /// Achieved error estimate (sum of per-panel estimates).
    pub error_estimate: f64,
    pub panels: usize,
    /// False when the panel cap stopped refinement before the target.
    pub converged: bool,
}

// 21-point Kronrod nodes (positive half), 10-point Gauss weights and
// 21-point Kronrod weights, from QUADPACK dqk21.
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
    0.000_000_000_000_000_000_000_000_000_000_000,
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

/// One 21-point Gauss–Kronrod pass over `[lo, hi]`: returns the integral
/// estimate, the error estimate, and the estimate of `∫|f|`.
fn qk21<E>(
    f: &mut dyn FnMut(f64) -> Result<f64, E>,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64, f64), E> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center)?;

    let mut fv1 = [0.0f64; 10];
    let mut fv2 = [0.0f64; 10];

    let mut res_gauss = 0.0;
    let mut res_kronrod = f_center * WGK[10];
    let mut res_abs = res_kronrod.abs();

    for j in 0..10 {
        let abscissa = half * XGK[j];
        let fval1 = f(center - abscissa)?;
        let fval2 = f(center + abscissa)?;
        fv1[j] = fval1;
        fv2[j] = fval2;
        let fsum = fval1 + fval2;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * fsum;
        }
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (fval1.abs() + fval2.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half;
    let value = res_kronrod * half;
    let abs_half = half.abs();
    Ok((
        value,
        rescale_error(err, res_abs * abs_half, res_asc * abs_half),
        res_abs * abs_half,
    ))
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    seq: u64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap by error estimate, insertion order breaks ties
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integrates `f` over `[lo, hi]` to absolute tolerance `abs_tol`.
pub fn adaptive<E>(
    mut f: impl FnMut(f64) -> Result<f64, E>,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    cap: usize,
) -> Result<QuadOutcome, E> {
    if lo == hi {
        return Ok(QuadOutcome {
            value: 0.0,
            error_estimate: 0.0,
            panels: 0,
            converged: true,
        });
    }

    let mut seq = 0u64;
    let mut active: BinaryHeap<Panel> = BinaryHeap::new();
    let mut settled: Vec<Panel> = Vec::new();

    let (value, err, res_abs) = qk21(&mut f, lo, hi)?;
    // the requested tolerance cannot beat the f64 roundoff floor of the
    // integrand scale
    let abs_tol = abs_tol.max(50.0 * f64::EPSILON * res_abs);
    active.push(Panel {
        lo,
        hi,
        value,
        err,
        seq,
    });
    let mut active_err = err;
    // error bound to panels too narrow to refine further (endpoint
    // singularities pinned at f64 resolution)
    let mut settled_err = 0.0f64;
    let mut n_panels = 1usize;
    // splits that failed to shrink the error estimate: once this piles up
    // the tolerance is below the f64 roundoff floor of the integrand
    let mut stagnant_splits = 0usize;

    while active_err + settled_err > abs_tol && n_panels < cap {
        if settled_err > abs_tol && active_err <= 0.01 * settled_err {
            // refining the splittable panels can no longer matter
            break;
        }
        if stagnant_splits >= 50 {
            break;
        }
        let Some(worst) = active.pop() else { break };
        let width = worst.hi - worst.lo;
        let mid = 0.5 * (worst.lo + worst.hi);
        // below this width the Kronrod nodes collapse onto the panel
        // endpoints and a singular integrand would be sampled at its pole
        let min_width =
            2048.0 * f64::EPSILON * worst.lo.abs().max(worst.hi.abs()).max(1.0);
        if width <= min_width || mid <= worst.lo || mid >= worst.hi {
            active_err -= worst.err;
            settled_err += worst.err;
            settled.push(worst);
            continue;
        }
        active_err -= worst.err;
        let (lv, le, _) = qk21(&mut f, worst.lo, mid)?;
        seq += 1;
        active.push(Panel {
            lo: worst.lo,
            hi: mid,
            value: lv,
            err: le,
            seq,
        });
        let (rv, re, _) = qk21(&mut f, mid, worst.hi)?;
        seq += 1;
        active.push(Panel {
            lo: mid,
            hi: worst.hi,
            value: rv,
            err: re,
            seq,
        });
        if le + re >= 0.99 * worst.err {
            stagnant_splits += 1;
        }
        active_err += le + re;
        n_panels += 1;
    }

    let mut leaves: Vec<Panel> = settled;
    leaves.extend(active);
    leaves.sort_by(|a, b| a.lo.total_cmp(&b.lo));

    let mut vsum = NeumaierSum::new();
    let mut esum = NeumaierSum::new();
    for p in &leaves {
        vsum.add(p.value);
        esum.add(p.err);
    }
    let error_estimate = esum.total();
    Ok(QuadOutcome {
        value: vsum.total(),
        error_estimate,
        panels: leaves.len(),
        converged: error_estimate <= abs_tol,
    })
}

/// Compensated (Neumaier) summation accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
