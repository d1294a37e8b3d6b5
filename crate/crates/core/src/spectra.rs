//! Finite-difference discretization of the fully substituted operators
//! `-d²/ds² + W(s)` and exact counting of their negative eigenvalues.
//!
//! After `n + 1` logarithmic substitutions the Hardy weights of `H_{d,n}`
//! disappear from the quadratic form, so a uniform grid in `s` with
//! Dirichlet ends converges without special treatment of the origin.
//! Truncation to a window shrinks the form domain, so every count reported
//! here is a lower bound for the count of the full operator.

use alloc::vec::Vec;

use crate::bounds::{l_max, OperatorSpec};
use crate::error::{Error, Result};
use crate::iterfun::{degeneracy, hardy_weight_stack, LogDepth, MAX_DEPTH};
use crate::potentials::{
    angular_eigenvalue, effective_radial_potential, transform_potential, Potential,
    PotentialSpec, Support, TransformedPotential,
};
use crate::quadrature::{try_integrate_pieces, DEFAULT_MAX_EVALUATIONS};

/// Uniform grid of `m` interior points on `[s_min, s_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Grid {
    pub s_min: f64,
    pub s_max: f64,
    pub m: usize,
}

impl Grid {
    pub fn new(s_min: f64, s_max: f64, m: usize) -> Result<Self> {
        if !(s_min < s_max) || !s_min.is_finite() || !s_max.is_finite() {
            return Err(Error::invalid("grid needs finite s_min < s_max"));
        }
        if m < 2 {
            return Err(Error::invalid("grid needs at least two interior points"));
        }
        Ok(Grid { s_min, s_max, m })
    }

    pub fn step(&self) -> f64 {
        (self.s_max - self.s_min) / (self.m + 1) as f64
    }

    /// Interior point `i`, `0 ≤ i < m`.
    pub fn point(&self, i: usize) -> f64 {
        self.s_min + (i + 1) as f64 * self.step()
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::invalid(
                "tridiagonal operator needs m diagonal and m-1 off-diagonal entries",
            ));
        }
        if diagonal.iter().chain(off_diagonal.iter()).any(|x| !x.is_finite()) {
            return Err(Error::invalid("tridiagonal entries must be finite"));
        }
        Ok(TridiagonalOperator {
            diagonal,
            off_diagonal,
        })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Infinity norm.
    pub fn norm(&self) -> f64 {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < m { self.off_diagonal[i].abs() } else { 0.0 };
                self.diagonal[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let m = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..m {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < m { self.off_diagonal[i].abs() } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }
}

/// Three-point stencil for `-d²/ds² + W` with Dirichlet ends:
/// diagonal `2/h² + W(s_i)`, off-diagonal `-1/h²`.
pub fn assemble<P: Potential + ?Sized>(w: &P, grid: &Grid) -> Result<TridiagonalOperator> {
    let h = grid.step();
    let inv_h2 = 1.0 / (h * h);
    let mut diagonal = Vec::with_capacity(grid.m);
    for i in 0..grid.m {
        let s = grid.point(i);
        let v = w.eval(s).map_err(|e| Error::AtGridPoint {
            index: i,
            source: alloc::boxed::Box::new(e),
        })?;
        diagonal.push(2.0 * inv_h2 + v);
    }
    TridiagonalOperator::new(diagonal, alloc::vec![-inv_h2; grid.m - 1])
}

/// Number of eigenvalues strictly below a shift. `low < high` only when a
/// zero pivot made the count depend on the sign of the perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Inertia {
    pub low: usize,
    pub high: usize,
}

impl Inertia {
    pub fn exact(&self) -> Option<usize> {
        (self.low == self.high).then_some(self.low)
    }

    pub fn is_ambiguous(&self) -> bool {
        self.low != self.high
    }
}

/// Relative size of the zero-pivot perturbation.
pub const PIVOT_EPSILON: f64 = 1.0 / (1u64 << 40) as f64;

fn sturm_count(t: &TridiagonalOperator, shift: f64, replacement: f64) -> (usize, bool) {
    let mut count = 0;
    let mut hit_zero = false;
    let mut pivot = t.diagonal[0] - shift;
    if pivot == 0.0 {
        hit_zero = true;
        pivot = replacement;
    }
    if pivot < 0.0 {
        count += 1;
    }
    for i in 1..t.dim() {
        let e = t.off_diagonal[i - 1];
        pivot = (t.diagonal[i] - shift) - e * e / pivot;
        if pivot == 0.0 || !pivot.is_finite() {
            hit_zero = true;
            pivot = replacement;
        }
        if pivot < 0.0 {
            count += 1;
        }
    }
    (count, hit_zero)
}

/// Sylvester inertia of `T - shift` from the pivots of its `LDLᵀ`
/// factorization: `d_1 = t_11 - σ`, `d_i = (t_ii - σ) - e_{i-1}² / d_{i-1}`.
pub fn inertia_negative_count(t: &TridiagonalOperator, shift: f64) -> Inertia {
    let delta = PIVOT_EPSILON * t.norm().max(f64::MIN_POSITIVE);
    let (plus, hit) = sturm_count(t, shift, delta);
    if !hit {
        return Inertia {
            low: plus,
            high: plus,
        };
    }
    let (minus, _) = sturm_count(t, shift, -delta);
    Inertia {
        low: plus.min(minus),
        high: plus.max(minus),
    }
}

/// The `k` smallest eigenvalues, each bracketed by bisection on the inertia
/// function to width `≤ tol`, ascending.
pub fn lowest_eigenvalues(t: &TridiagonalOperator, k: usize, tol: f64) -> Result<Vec<f64>> {
    if k == 0 || k > t.dim() {
        return Err(Error::invalid("eigenvalue count must satisfy 1 <= k <= m"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("eigenvalue tolerance must be positive"));
    }
    let (glo, ghi) = t.gershgorin();
    let pad = 1e-12 * glo.abs().max(ghi.abs()).max(1.0);
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        // Smallest x with #{λ < x} ≥ j + 1.
        let mut lo = glo - pad;
        let mut hi = ghi + pad;
        if let Some(&prev) = out.last() {
            lo = lo.max(prev - tol);
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if inertia_negative_count(t, mid).high > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

/// Truncation and grid parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct Numerics {
    /// Window length `L`: `[-L, L]` on the line, `[s_0, s_0 + L]` otherwise.
    pub window: f64,
    /// Interior grid points `m` at the base window.
    pub points: usize,
    /// Number of simultaneous doublings of `L` and `m` to run.
    pub refinements: u32,
    /// How many of the lowest eigenvalues to report (0 for none).
    pub eigenvalues: usize,
}

pub const DEFAULT_WINDOW: f64 = 20.0;
pub const DEFAULT_POINTS: usize = 4000;

impl Default for Numerics {
    fn default() -> Self {
        Numerics {
            window: DEFAULT_WINDOW,
            points: DEFAULT_POINTS,
            refinements: 0,
            eigenvalues: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RefinementStep {
    pub window: f64,
    pub points: usize,
    pub count: usize,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CountResult {
    /// Count at the finest refinement level.
    pub negative_count: usize,
    pub inertia: Inertia,
    pub lowest_eigenvalues: Vec<f64>,
    pub grid: Grid,
    pub channel: u32,
    /// One entry per refinement level, coarsest first.
    pub trail: Vec<RefinementStep>,
}

impl CountResult {
    pub fn trail_non_decreasing(&self) -> bool {
        self.trail.windows(2).all(|w| w[1].count >= w[0].count)
    }
}

/// Number of substitutions that remove every Hardy weight of `H_{d,n}`.
pub fn reduction_steps(n: LogDepth) -> Result<u32> {
    let k = n.0 + 1;
    if k > MAX_DEPTH {
        return Err(Error::DepthCap {
            depth: k,
            max: MAX_DEPTH,
        });
    }
    Ok(k)
}

/// The channel-`l` operator in the fully substituted coordinate, with the
/// left end of its domain (`-inf` for the whole line).
pub fn reduced_channel(
    spec: &OperatorSpec,
    v: &PotentialSpec,
    l: u32,
) -> Result<(TransformedPotential, f64)> {
    if spec.d == 1 && l != 0 {
        return Err(Error::invalid("d = 1 has only the channel l = 0"));
    }
    let k = reduction_steps(spec.n)?;
    let effective = effective_radial_potential(v, l, spec.d)?;
    let w = transform_potential(&effective, k, 0.0)?;
    Ok((w, spec.domain.transformed(k)))
}

fn window_grid(s0: f64, window: f64, points: usize) -> Result<Grid> {
    if s0.is_finite() {
        Grid::new(s0, s0 + window, points)
    } else {
        Grid::new(-window, window, points)
    }
}

/// Discrete count of negative eigenvalues of `H_{d,n}` restricted to
/// angular channel `l` (ignored for `d = 1`), on the window ladder
/// `(L 2^j, m 2^j)`, `j = 0..=refinements`.
pub fn count_negative(
    spec: &OperatorSpec,
    v: &PotentialSpec,
    channel: Option<u32>,
    numerics: &Numerics,
) -> Result<CountResult> {
    let l = channel.unwrap_or(0);
    let (w, s0) = reduced_channel(spec, v, l)?;
    let mut trail = Vec::new();
    let mut last = None;
    for j in 0..=numerics.refinements {
        let scale = 1u64 << j;
        let window = numerics.window * scale as f64;
        let points = numerics.points * scale as usize;
        let grid = window_grid(s0, window, points)?;
        let t = assemble(&w, &grid)?;
        let inertia = inertia_negative_count(&t, 0.0);
        trail.push(RefinementStep {
            window,
            points,
            count: inertia.low,
            ambiguous: inertia.is_ambiguous(),
        });
        last = Some((grid, t, inertia));
    }
    let (grid, t, inertia) = last.expect("at least one refinement level");
    let lowest_eigenvalues = if numerics.eigenvalues > 0 {
        lowest_eigenvalues(&t, numerics.eigenvalues.min(t.dim()), 1e-10)?
    } else {
        Vec::new()
    };
    Ok(CountResult {
        negative_count: inertia.low,
        inertia,
        lowest_eigenvalues,
        grid,
        channel: l,
        trail,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChannelCount {
    pub l: u32,
    pub degeneracy: u64,
    pub count: usize,
    pub result: CountResult,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CentralCount {
    pub total: u64,
    pub l_max: Option<u32>,
    pub channels: Vec<ChannelCount>,
}

impl CentralCount {
    pub fn any_ambiguous(&self) -> bool {
        self.channels.iter().any(|c| c.result.inertia.is_ambiguous())
    }
}

/// Upper limit on the angular momenta scanned by [`total_central_count`].
pub const MAX_CHANNELS: u32 = 10_000;

/// `Σ_l D_{d,l} · count_l`, stopping at the first channel with zero count
/// beyond `l_max`.
pub fn total_central_count(
    spec: &OperatorSpec,
    v: &PotentialSpec,
    numerics: &Numerics,
) -> Result<CentralCount> {
    if spec.d == 1 {
        let result = count_negative(spec, v, None, numerics)?;
        return Ok(CentralCount {
            total: result.negative_count as u64,
            l_max: None,
            channels: alloc::vec![ChannelCount {
                l: 0,
                degeneracy: 1,
                count: result.negative_count,
                result,
            }],
        });
    }
    if !v.central {
        return Err(Error::invalid("channel decomposition needs a central potential"));
    }
    let lmax = l_max(v, spec.d, &spec.domain);
    let mut channels = Vec::new();
    let mut total = 0u64;
    for l in 0..=MAX_CHANNELS {
        let result = count_negative(spec, v, Some(l), numerics)?;
        let count = result.negative_count;
        let deg = degeneracy(spec.d, l)?;
        total += deg * count as u64;
        channels.push(ChannelCount {
            l,
            degeneracy: deg,
            count,
            result,
        });
        if count == 0 && lmax.is_none_or(|m| l > m) {
            break;
        }
    }
    Ok(CentralCount {
        total,
        l_max: lmax,
        channels,
    })
}

/// Smooth compactly supported radial test function.
pub trait TestFunction {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
    /// Open interval outside of which the function vanishes.
    fn support(&self) -> (f64, f64);
}

/// `exp(-1/(1-y²))` with `y = (x - center)/half_width`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Bump {
    pub center: f64,
    pub half_width: f64,
}

impl Bump {
    pub fn new(center: f64, half_width: f64) -> Self {
        Bump { center, half_width }
    }

    /// `1 - y²` and `y`, or `None` where the bump is numerically zero.
    fn local(&self, x: f64) -> Option<(f64, f64)> {
        let y = (x - self.center) / self.half_width;
        let q = 1.0 - y * y;
        // exp(-1/q) underflows well before q reaches this size.
        (q > 1.0 / 700.0).then_some((q, y))
    }
}

impl TestFunction for Bump {
    fn value(&self, x: f64) -> f64 {
        self.local(x).map_or(0.0, |(q, _)| libm::exp(-1.0 / q))
    }

    fn derivative(&self, x: f64) -> f64 {
        self.local(x).map_or(0.0, |(q, y)| {
            libm::exp(-1.0 / q) * (-2.0 * y / (q * q)) / self.half_width
        })
    }

    fn support(&self) -> (f64, f64) {
        (self.center - self.half_width, self.center + self.half_width)
    }
}

/// Which side of the substitution identity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FormSide {
    /// `∫ (|u'|² + (l(l+d-2)/r² - stack + V)|u|²) r^{d-1} dr`.
    Original,
    /// After one `d`-dimensional substitution,
    /// `ψ(s) = s^{-(d-1)/2} e^{(d-2)s/2} u(e^s)`:
    /// `∫ (|ψ'|² + (l(l+d-2) - (d-1)(d-3)/(4s²) + e^{2s}(V - log terms)(e^s))|ψ|²) s^{d-1} ds`.
    SingleStep,
    /// Fully reduced one-dimensional form `∫ (|φ'|² + W(t)|φ|²) dt` after
    /// `n + 1` substitutions.
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FormValue {
    pub value: f64,
    /// Gradient part alone.
    pub kinetic: f64,
    /// Integral of the absolute value of the potential part.
    pub potential_abs: f64,
    pub error_estimate: f64,
}

impl FormValue {
    /// Natural size of the form, used for relative comparisons.
    pub fn scale(&self) -> f64 {
        self.kinetic + self.potential_abs
    }
}

/// Evaluates `φ(t) = e^{α₀ t} φ₁(e^t)`, `φ₁(s) = e^{α₁ s} φ₂(e^s)`, …,
/// ending in the test function, with its derivative.
fn pullback<U: TestFunction + ?Sized>(u: &U, alphas: &[f64], t: f64) -> (f64, f64) {
    match alphas.split_first() {
        None => (u.value(t), u.derivative(t)),
        Some((&alpha, rest)) => {
            let y = libm::exp(t);
            let (g, dg) = pullback(u, rest, y);
            if g == 0.0 && dg == 0.0 {
                return (0.0, 0.0);
            }
            let e = libm::exp(alpha * t);
            (e * g, alpha * e * g + e * y * dg)
        }
    }
}

fn iterated_ln_or_neg_inf(x: f64, k: usize) -> f64 {
    let mut v = x;
    for _ in 0..k {
        v = if v > 0.0 { libm::log(v) } else { f64::NEG_INFINITY };
    }
    v
}

/// Sorted integration nodes: support ends plus interior break points.
fn pieces(lo: f64, hi: f64, interior: &[f64]) -> Vec<f64> {
    let mut pts = alloc::vec![lo, hi];
    pts.extend(interior.iter().copied().filter(|&p| p > lo && p < hi && p.is_finite()));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Quadratic form of `H_{d,n}` restricted to the channel `l`, with radial
/// profile `u`, on one side of the substitution identity. `u` must be
/// supported inside the domain `r > spec.domain.value`.
pub fn quadratic_form_value<U: TestFunction + ?Sized>(
    side: FormSide,
    spec: &OperatorSpec,
    v: &PotentialSpec,
    l: u32,
    u: &U,
    tol: f64,
) -> Result<FormValue> {
    let d = spec.d;
    let n = spec.n;
    let (a, b) = u.support();
    if !(a >= spec.domain.value && a > 0.0 && b > a) {
        return Err(Error::invalid(
            "test function must be supported inside the operator domain",
        ));
    }
    if d == 1 && l != 0 {
        return Err(Error::invalid("d = 1 has only the channel l = 0"));
    }
    let g_l = angular_eigenvalue(l, d);
    let v_breaks: Vec<f64> = match v.support() {
        Support::Empty => Vec::new(),
        Support::Interval { lo, hi } => alloc::vec![lo, hi],
    };
    let map_breaks = |k: usize| -> Vec<f64> {
        v_breaks
            .iter()
            .map(|&x| iterated_ln_or_neg_inf(x, k))
            .collect()
    };

    // Parts are accumulated as (kinetic, potential, |potential|).
    let parts: [f64; 3];
    let mut error = 0.0;
    let mut integrate3 = |f: &dyn Fn(f64) -> Result<[f64; 3]>, pts: &[f64]| -> Result<[f64; 3]> {
        let mut acc = [0.0; 3];
        for idx in 0..3 {
            let q = try_integrate_pieces(|x| Ok(f(x)?[idx]), pts, tol, DEFAULT_MAX_EVALUATIONS)?;
            acc[idx] = q.value;
            error += q.error_estimate;
        }
        Ok(acc)
    };

    match side {
        FormSide::Original => {
            let dm1 = (d - 1) as i32;
            let f = |r: f64| -> Result<[f64; 3]> {
                let (val, der) = (u.value(r), u.derivative(r));
                let meas = libm::pow(r, dm1 as f64);
                let pot = g_l / (r * r) - hardy_weight_stack(r, d, n)? + v.eval(r)?;
                let p = pot * val * val * meas;
                Ok([der * der * meas, p, p.abs()])
            };
            parts = integrate3(&f, &pieces(a, b, &v_breaks))?;
        }
        FormSide::SingleStep => {
            let (s0, s1) = (libm::log(a), libm::log(b));
            if s0 < 0.0 && s1 > 0.0 && d > 1 {
                return Err(Error::invalid(
                    "single-step form is singular at s = 0; keep the support away from r = 1",
                ));
            }
            if d.is_multiple_of(2) && s0 < 0.0 {
                return Err(Error::invalid(
                    "single-step form in even dimension needs support in r > 1",
                ));
            }
            let alpha = [(d as f64 - 2.0) / 2.0];
            let half = (d as i32 - 1) / 2;
            let odd_half = (d - 1) % 2 == 1;
            let q = ((d as f64 - 1.0) * (d as f64 - 3.0)) / 4.0;
            let dm2sq = (d as f64 - 2.0) * (d as f64 - 2.0) / 4.0;
            let f = |s: f64| -> Result<[f64; 3]> {
                let (w, dw) = pullback(u, &alpha, s);
                // s^{-(d-1)/2}, real for odd d at any s ≠ 0 and for even d at s > 0.
                let (p, dp) = if odd_half {
                    let p = libm::pow(s, -(d as f64 - 1.0) / 2.0);
                    (p, -(d as f64 - 1.0) / 2.0 * p / s)
                } else {
                    let p = libm::pow(s, -(half as f64));
                    (p, -(half as f64) * p / s)
                };
                let psi = p * w;
                let dpsi = dp * w + p * dw;
                let meas = libm::pow(s, (d - 1) as f64);
                let r = libm::exp(s);
                let log_terms = hardy_weight_stack(r, d, n)? - dm2sq / (r * r);
                let pot = g_l - q / (s * s) + r * r * (v.eval(r)? - log_terms);
                let pv = pot * psi * psi * meas;
                Ok([dpsi * dpsi * meas, pv, pv.abs()])
            };
            parts = integrate3(&f, &pieces(s0, s1, &map_breaks(1)))?;
        }
        FormSide::Reduced => {
            let k = reduction_steps(n)?;
            let mut alphas: Vec<f64> = alloc::vec![-0.5; (k - 1) as usize];
            alphas.push((d as f64 - 2.0) / 2.0);
            let effective = effective_radial_potential(v, l, d)?;
            let w = transform_potential(&effective, k, 0.0)?;
            let t0 = iterated_ln_or_neg_inf(a, k as usize);
            let t1 = iterated_ln_or_neg_inf(b, k as usize);
            if !(t0.is_finite() && t1 > t0) {
                return Err(Error::invalid("test function support does not map to a finite window"));
            }
            let f = |t: f64| -> Result<[f64; 3]> {
                let (phi, dphi) = pullback(u, &alphas, t);
                let pv = w.eval(t)? * phi * phi;
                Ok([dphi * dphi, pv, pv.abs()])
            };
            parts = integrate3(&f, &pieces(t0, t1, &map_breaks(k as usize)))?;
        }
    }
    Ok(FormValue {
        value: parts[0] + parts[1],
        kinetic: parts[0],
        potential_abs: parts[2],
        error_estimate: error,
    })
}
