//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite and
//! semi-infinite intervals.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::potentials::Support;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadResult {
    pub const ZERO: QuadResult = QuadResult {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
    };

    /// Sum of two independent results.
    pub fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
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
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn check(x: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NotANumber { abscissa: x })
    }
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = check(center, f(center)?)?;
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    let mut res_abs = kron.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let x = half * XGK[j];
        let (xl, xr) = (center - x, center + x);
        let f1 = check(xl, f(xl)?)?;
        let f2 = check(xr, f(xr)?)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kron += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = kron * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kron * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((kron - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * libm::pow(200.0 * err / res_asc, 1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((value, err))
}

/// Adaptive integration over consecutive pieces `[p0,p1], [p1,p2], …` of a
/// sorted break-point list, with a fallible integrand.
pub fn try_integrate_pieces<F>(
    mut f: F,
    points: &[f64],
    tol: f64,
    max_evaluations: usize,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if points.len() < 2 {
        return Err(Error::invalid("integration needs at least two end points"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("integration tolerance must be positive"));
    }
    if points.iter().any(|p| !p.is_finite()) || points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("integration end points must be finite and increasing"));
    }
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let mut evaluations = 0usize;
    for w in points.windows(2) {
        let (value, error) = kronrod(&mut f, w[0], w[1])?;
        evaluations += 15;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }
    // Running sums drive the stopping test; exact ordered sums confirm it
    // and periodically clear accumulated rounding.
    let (mut run_value, mut run_error) = totals(heap.iter());
    let mut steps = 0usize;
    loop {
        steps += 1;
        if run_error <= tol * run_value.abs().max(1.0) || steps.is_multiple_of(1024) || heap.is_empty() {
            let (value, error) = totals(heap.iter().chain(frozen.iter()));
            (run_value, run_error) = (value, error);
            if error <= tol * value.abs().max(1.0) {
                return Ok(QuadResult {
                    value,
                    error_estimate: error,
                    evaluations,
                });
            }
        }
        let Some(seg) = heap.pop() else {
            return Err(Error::NonConvergence {
                evaluations,
                error_estimate: run_error,
                tolerance: tol,
            });
        };
        if evaluations + 30 > max_evaluations {
            return Err(Error::NonConvergence {
                evaluations,
                error_estimate: run_error,
                tolerance: tol,
            });
        }
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b)
            || (seg.b - seg.a) <= 64.0 * f64::EPSILON * seg.a.abs().max(seg.b.abs())
        {
            // No room left to bisect.
            frozen.push(seg);
            continue;
        }
        let (v1, e1) = kronrod(&mut f, seg.a, mid)?;
        let (v2, e2) = kronrod(&mut f, mid, seg.b)?;
        evaluations += 30;
        run_value += v1 + v2 - seg.value;
        run_error += e1 + e2 - seg.error;
        heap.push(Segment {
            a: seg.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: seg.b,
            value: v2,
            error: e2,
        });
    }
}

/// Sums in ascending order of the left end point, so results do not depend
/// on heap layout.
fn totals<'a>(segs: impl Iterator<Item = &'a Segment>) -> (f64, f64) {
    let mut v: Vec<&Segment> = segs.collect();
    v.sort_by(|x, y| x.a.total_cmp(&y.a));
    v.iter().fold((0.0, 0.0), |(s, e), seg| (s + seg.value, e + seg.error))
}

/// `∫_a^b f` to `error_estimate ≤ tol · max(1, |value|)`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    try_integrate(|x| Ok(f(x)), a, b, tol)
}

pub fn try_integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a < b) {
        return Err(Error::invalid("integrate requires a < b"));
    }
    try_integrate_pieces(f, &[a, b], tol, DEFAULT_MAX_EVALUATIONS)
}

/// `∫_a^∞ f` through `x = a + t/(1-t)`.
pub fn integrate_semiinfinite<F>(mut f: F, a: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_semiinfinite(|x| Ok(f(x)), a, tol)
}

pub fn try_integrate_semiinfinite<F>(mut f: F, a: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !a.is_finite() {
        return Err(Error::invalid("semi-infinite integration needs a finite lower end"));
    }
    try_integrate(
        |t| {
            let u = 1.0 - t;
            let x = a + t / u;
            if x.is_infinite() {
                return Ok(0.0);
            }
            Ok(f(x)? / (u * u))
        },
        0.0,
        1.0,
        tol,
    )
}

/// `∫_a^∞ f` when `f` vanishes outside `support`: bounded supports are
/// integrated directly over `[a, ∞) ∩ support`, skipping the substitution.
/// `breaks` are interior points (kinks, jumps) to split at.
pub fn try_integrate_on_support<F>(
    mut f: F,
    a: f64,
    support: Support,
    breaks: &[f64],
    tol: f64,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    match support.clip(a, f64::INFINITY) {
        Support::Empty => Ok(QuadResult::ZERO),
        Support::Interval { lo, hi } if hi.is_finite() => {
            let mut pts = Vec::with_capacity(breaks.len() + 2);
            pts.push(lo);
            pts.extend(breaks.iter().copied().filter(|&p| p > lo && p < hi));
            pts.push(hi);
            pts.sort_by(f64::total_cmp);
            pts.dedup();
            try_integrate_pieces(f, &pts, tol, DEFAULT_MAX_EVALUATIONS)
        }
        Support::Interval { lo, .. } => {
            let mut cut = breaks
                .iter()
                .copied()
                .filter(|&p| p > lo && p.is_finite())
                .fold(lo, f64::max);
            if cut == lo {
                return try_integrate_semiinfinite(f, lo, tol);
            }
            let head = {
                let mut pts: Vec<f64> = Vec::new();
                pts.push(lo);
                pts.extend(breaks.iter().copied().filter(|&p| p > lo && p < cut));
                pts.push(cut);
                pts.sort_by(f64::total_cmp);
                pts.dedup();
                try_integrate_pieces(&mut f, &pts, tol, DEFAULT_MAX_EVALUATIONS)?
            };
            cut = cut.max(lo);
            let tail = try_integrate_semiinfinite(&mut f, cut, tol)?;
            Ok(head.combine(tail))
        }
    }
}
