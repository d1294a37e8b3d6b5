//! Eigenvalue-count bounds: Bargmann-type bounds on the line and half-line,
//! the one-dimensional iterated-log bound, the CLR-type bound for `d ≥ 3`,
//! and the partial-wave bound for central potentials.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::iterfun::{degeneracy, log_product, sphere_area, DomainThreshold, LogDepth, Variant};
use crate::potentials::{
    angular_eigenvalue, check_bounded_below_weighted, transform_potential, Potential,
    PotentialSpec, Support,
};
use crate::quadrature::{try_integrate_on_support, QuadResult};

/// Which family of bounds an operator is evaluated under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Theorem {
    /// One-dimensional bound, domain `(exp^{(n)}(0|1), ∞)`.
    T41,
    /// CLR-type bound for `d ≥ 3`, domain `|x| > exp^{(n+2)}(0|1)`.
    T42,
    /// Partial-wave bound for central potentials, domain `|x| > exp^{(n)}(0|1)`.
    T43,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::T41 => "t41",
            Theorem::T42 => "t42",
            Theorem::T43 => "t43",
        }
    }

    /// Depth of the domain threshold for log depth `n`.
    pub fn threshold_depth(self, n: LogDepth) -> u32 {
        match self {
            Theorem::T41 | Theorem::T43 => n.0,
            Theorem::T42 => n.0 + 2,
        }
    }
}

impl core::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t41" => Ok(Theorem::T41),
            "t42" => Ok(Theorem::T42),
            "t43" => Ok(Theorem::T43),
            other => Err(Error::invalid(format!(
                "unknown theorem `{other}` (expected t41, t42 or t43)"
            ))),
        }
    }
}

/// The operator `H_{d,n}` on the exterior of a threshold ball.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OperatorSpec {
    pub d: u32,
    pub n: LogDepth,
    pub variant: Variant,
    pub domain: DomainThreshold,
}

impl OperatorSpec {
    /// Operator with the domain threshold `exp^{(depth)}(0|1)`.
    pub fn new(d: u32, n: LogDepth, variant: Variant, threshold_depth: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::Dimension {
                d,
                required: "d >= 1",
            });
        }
        if threshold_depth < n.0 {
            return Err(Error::invalid(
                "domain threshold must lie above exp^{(n)}(0) so every log weight is defined",
            ));
        }
        Ok(OperatorSpec {
            d,
            n,
            variant,
            domain: DomainThreshold::new(threshold_depth, variant)?,
        })
    }

    /// Operator on the domain the given theorem uses.
    pub fn for_theorem(theorem: Theorem, d: u32, n: LogDepth, variant: Variant) -> Result<Self> {
        match theorem {
            Theorem::T41 if d != 1 => {
                return Err(Error::Dimension {
                    d,
                    required: "d = 1",
                })
            }
            Theorem::T42 if d < 3 => {
                return Err(Error::Dimension {
                    d,
                    required: "d >= 3",
                })
            }
            Theorem::T43 if d < 2 => {
                return Err(Error::Dimension {
                    d,
                    required: "d >= 2",
                })
            }
            _ => {}
        }
        Self::new(d, n, variant, theorem.threshold_depth(n))
    }
}

/// CLR constants `C_d`, keyed by dimension.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct BoundConstants {
    pub entries: Vec<ClrConstant>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct ClrConstant {
    pub d: u32,
    pub value: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub source: String,
}

/// Lieb's constant in three dimensions.
pub const C3_LIEB: f64 = 0.1156;

/// Classical phase-space constant `|B_1| / (2π)^d`.
fn weyl_constant(d: u32) -> f64 {
    let ball = sphere_area(d).unwrap_or(f64::NAN) / d as f64;
    ball / libm::pow(2.0 * core::f64::consts::PI, d as f64)
}

impl Default for BoundConstants {
    /// `C_3 = 0.1156`; `d = 4..=7` carry placeholders obtained by scaling
    /// `C_3` with the ratio of classical phase-space constants. The
    /// placeholders are not proven CLR constants.
    fn default() -> Self {
        let mut entries = alloc::vec![ClrConstant {
            d: 3,
            value: C3_LIEB,
            source: String::from("Lieb (d = 3)"),
        }];
        for d in 4..=7 {
            entries.push(ClrConstant {
                d,
                value: C3_LIEB * weyl_constant(d) / weyl_constant(3),
                source: String::from("placeholder: C_3 scaled by Weyl-constant ratio (unproven)"),
            });
        }
        BoundConstants { entries }
    }
}

impl BoundConstants {
    pub fn get(&self, d: u32) -> Result<f64> {
        self.entries
            .iter()
            .find(|c| c.d == d)
            .map(|c| c.value)
            .ok_or_else(|| Error::invalid(format!("no CLR constant configured for d = {d}")))
    }

    pub fn set(&mut self, d: u32, value: f64, source: impl Into<String>) -> Result<()> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::invalid("CLR constants must be positive and finite"));
        }
        let source = source.into();
        match self.entries.iter_mut().find(|c| c.d == d) {
            Some(c) => {
                c.value = value;
                c.source = source;
            }
            None => {
                self.entries.push(ClrConstant { d, value, source });
                self.entries.sort_by_key(|c| c.d);
            }
        }
        Ok(())
    }
}

/// Contribution of one angular channel to [`central_bound`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChannelBound {
    pub l: u32,
    pub degeneracy: u64,
    pub integral: f64,
    pub error_estimate: f64,
    /// `D_{d,l} (1 + I_l)` or `D_{d,l} I_l`.
    pub contribution: f64,
}

/// A real bound on a count together with its integer consequence.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundValue {
    /// May be `+inf` when the bounding integral diverges.
    pub raw: f64,
    /// `floor(raw)`; `None` when `raw` is infinite.
    pub cap: Option<u64>,
    pub quadrature: QuadResult,
    pub warnings: Vec<String>,
    pub channels: Vec<ChannelBound>,
}

impl BoundValue {
    pub fn new(raw: f64, quadrature: QuadResult) -> Self {
        let cap = if raw.is_finite() {
            Some(libm::floor(raw.max(0.0)) as u64)
        } else {
            None
        };
        BoundValue {
            raw,
            cap,
            quadrature,
            warnings: Vec::new(),
            channels: Vec::new(),
        }
    }

    /// Whether an integer count is compatible with the bound.
    pub fn admits(&self, count: u64) -> bool {
        self.cap.is_none_or(|cap| count <= cap)
    }
}

fn mirrored(support: Support) -> Support {
    match support {
        Support::Empty => Support::Empty,
        Support::Interval { lo, hi } => Support::Interval { lo: -hi, hi: -lo },
    }
}

fn support_breaks(support: Support) -> Vec<f64> {
    match support {
        Support::Empty => Vec::new(),
        Support::Interval { lo, hi } => [lo, hi].into_iter().filter(|x| x.is_finite()).collect(),
    }
}

/// `1 + ∫_ℝ |V(x)_-| |x| dx`.
pub fn bargmann_line_bound<P: Potential + ?Sized>(v: &P, tol: f64) -> Result<BoundValue> {
    let support = v.support();
    let right = try_integrate_on_support(
        |x| Ok(v.negative_part_abs(x)? * x),
        0.0,
        support,
        &support_breaks(support),
        tol,
    )?;
    let left_support = mirrored(support);
    let left = try_integrate_on_support(
        |x| Ok(v.negative_part_abs(-x)? * x),
        0.0,
        left_support,
        &support_breaks(left_support),
        tol,
    )?;
    let q = right.combine(left);
    Ok(BoundValue::new(1.0 + q.value, q))
}

/// `∫_0^∞ |V(x)_-| x dx`.
pub fn bargmann_halfline_bound<P: Potential + ?Sized>(v: &P, tol: f64) -> Result<BoundValue> {
    let support = v.support();
    let q = try_integrate_on_support(
        |x| Ok(v.negative_part_abs(x)? * x),
        0.0,
        support,
        &support_breaks(support),
        tol,
    )?;
    Ok(BoundValue::new(q.value, q))
}

/// Points `exp^{(j)}(0)`, `j = 0..=count`, above `t`: where some
/// `|ln^{(j)} x|` has a kink.
fn log_kinks(t: f64, count: u32) -> Vec<f64> {
    let mut out = Vec::new();
    let mut v = 0.0;
    for _ in 0..=count {
        if v > t && v.is_finite() {
            out.push(v);
        }
        v = libm::exp(v);
    }
    out
}

fn hypothesis_warning(v: &PotentialSpec, spec: &OperatorSpec) -> Option<String> {
    match check_bounded_below_weighted(v, spec.n, &spec.domain, 2000) {
        Ok(chk) if chk.bounded => None,
        Ok(chk) => {
            let (x, w) = chk.witness.unwrap_or((f64::NAN, f64::NAN));
            Some(format!(
                "weighted potential x^2 (ln x)^2 ... V(x) looks unbounded below near x = {x:e} (value {w:e})"
            ))
        }
        Err(e) => Some(format!("boundedness check could not run: {e}")),
    }
}

/// One-dimensional bound on `(exp^{(n)}(0|1), ∞)`:
/// `[1 +] ∫ |V_-| |x| |ln x| ⋯ |ln^{(n+1)} x| dx`, the `1` present for the
/// `zero` variant only.
pub fn bound_1d(v: &PotentialSpec, spec: &OperatorSpec, tol: f64) -> Result<BoundValue> {
    if spec.d != 1 {
        return Err(Error::Dimension {
            d: spec.d,
            required: "d = 1",
        });
    }
    let t = spec.domain.value;
    let logs = spec.n.0 + 1;
    let support = v.support();
    let mut breaks = support_breaks(support);
    breaks.extend(log_kinks(t, logs));
    let q = try_integrate_on_support(
        |x| {
            let neg = v.negative_part_abs(x)?;
            if neg == 0.0 {
                return Ok(0.0);
            }
            Ok(neg * x.abs() * log_product(x, logs, true)?)
        },
        t,
        support,
        &breaks,
        tol,
    )?;
    let raw = match spec.variant {
        Variant::Zero => 1.0 + q.value,
        Variant::One => q.value,
    };
    let mut out = BoundValue::new(raw, q);
    out.warnings.extend(hypothesis_warning(v, spec));
    Ok(out)
}

/// Steps of logarithmic substitution behind the CLR-type bound.
fn clr_steps(spec: &OperatorSpec) -> u32 {
    match spec.variant {
        Variant::Zero => spec.n.0 + 1,
        Variant::One => spec.n.0 + 2,
    }
}

/// CLR-type bound for `d ≥ 3`, evaluated in the fully substituted radial
/// coordinate `ρ > 1` (`r = exp^{(k)} ρ`):
///
/// `C_d |S^{d-1}| ∫_1^∞ ((d-1)(d-3)/(4ρ²) - δ - W(ρ))_+^{d/2} ρ^{d-1} dρ`
///
/// with `δ = 0, k = n+1` for the `zero` variant and `δ = 1/4, k = n+2` for
/// the `one` variant, `W` the `k`-step image of `V`. Changing variables back
/// gives the radial form evaluated by [`clr_radial_integrand`].
///
/// The `zero` variant diverges for `d ≥ 4` whenever `V` has bounded
/// support, and the result is then `+inf`.
pub fn clr_bound(
    v: &PotentialSpec,
    spec: &OperatorSpec,
    constants: &BoundConstants,
    tol: f64,
) -> Result<BoundValue> {
    let d = spec.d;
    if d < 3 {
        return Err(Error::Dimension {
            d,
            required: "d >= 3",
        });
    }
    if spec.domain.depth != spec.n.0 + 2 {
        return Err(Error::invalid(
            "CLR bound needs the domain threshold exp^{(n+2)}(0|1)",
        ));
    }
    if !v.central {
        return Err(Error::invalid("CLR bound evaluation supports central potentials only"));
    }
    let c_d = constants.get(d)?;
    let area = sphere_area(d)?;
    let k = clr_steps(spec);
    let w = transform_potential(v, k, 0.0)?;
    let q = ((d - 1) * (d - 3)) as f64;
    let delta = match spec.variant {
        Variant::Zero => 0.0,
        Variant::One => 0.25,
    };
    let half_d = d as f64 / 2.0;
    let integrand = |rho: f64| -> Result<f64> {
        let inner = q / (4.0 * rho * rho) - delta - w.eval(rho)?;
        if inner <= 0.0 {
            return Ok(0.0);
        }
        Ok(libm::pow(inner, half_d) * libm::pow(rho, (d - 1) as f64))
    };

    let w_support = w.support().clip(1.0, f64::INFINITY);
    // Beyond the support of W the integrand is (q/(4ρ²) - δ)_+^{d/2} ρ^{d-1}.
    let free_cutoff = match spec.variant {
        Variant::Zero if q > 0.0 => f64::INFINITY,
        Variant::Zero => 1.0,
        Variant::One => libm::sqrt(q).max(1.0),
    };
    let (region, tail_diverges) = match w_support {
        Support::Empty => (free_cutoff, free_cutoff.is_infinite()),
        Support::Interval { hi, .. } if hi.is_finite() => {
            (hi.max(free_cutoff), free_cutoff.is_infinite())
        }
        Support::Interval { .. } => (f64::INFINITY, false),
    };
    if tail_diverges {
        let mut out = BoundValue::new(f64::INFINITY, QuadResult::ZERO);
        out.warnings.push(format!(
            "CLR integral diverges: the remnant (d-1)(d-3)/(4rho^2) = {}/(4rho^2) is not \
             integrable to the power d/2 at infinity for d = {d}",
            q
        ));
        return Ok(out);
    }
    let mut breaks = support_breaks(w_support);
    if spec.variant == Variant::One && q > 0.0 {
        breaks.push(libm::sqrt(q));
    }
    let domain = Support::Interval {
        lo: 1.0,
        hi: region,
    };
    let res = if region > 1.0 {
        try_integrate_on_support(integrand, 1.0, domain, &breaks, tol)?
    } else {
        QuadResult::ZERO
    };
    let scale = c_d * area;
    let quad = QuadResult {
        value: scale * res.value,
        error_estimate: scale * res.error_estimate,
        evaluations: res.evaluations,
    };
    let mut out = BoundValue::new(quad.value, quad);
    out.warnings.extend(hypothesis_warning(v, spec));
    Ok(out)
}

/// The CLR-type integrand in the original radius, without `C_d |S^{d-1}|`:
///
/// zero variant: `((d-1)(d-3)/(4r² Π_{j≤n+1}(ln^{(j)} r)²) - V)_+^{d/2} Π_{j≤n+1}(ln^{(j)} r)^{d-1} r^{d-1}`;
/// one variant: numerator `(d-1)(d-3) - (ln^{(n+2)} r)²`, products up to `n+2`.
///
/// Every logarithm must be positive on the domain; a non-positive factor is a
/// domain error.
pub fn clr_radial_integrand(v: &PotentialSpec, spec: &OperatorSpec, r: f64) -> Result<f64> {
    let d = spec.d;
    let logs = clr_steps(spec);
    let mut prod = 1.0;
    let mut last = r;
    for _ in 0..logs {
        if !(last > 0.0) {
            return Err(Error::Domain {
                what: "CLR weight",
                value: r,
            });
        }
        last = libm::log(last);
        if !(last > 0.0) {
            return Err(Error::Domain {
                what: "CLR weight (non-positive logarithm)",
                value: r,
            });
        }
        prod *= last;
    }
    let q = ((d - 1) * (d - 3)) as f64;
    let numerator = match spec.variant {
        Variant::Zero => q,
        Variant::One => q - last * last,
    };
    let inner = numerator / (4.0 * r * r * prod * prod) - v.eval(r)?;
    if inner <= 0.0 {
        return Ok(0.0);
    }
    Ok(libm::pow(inner, d as f64 / 2.0)
        * libm::pow(prod, (d - 1) as f64)
        * libm::pow(r, (d - 1) as f64))
}

/// Number of log-spaced samples used for the supremum in [`l_max`].
pub const L_MAX_SAMPLES: usize = 10_000;

/// `sup_{r > T} r² |Ṽ(r)_-|`, sampled and refined by golden-section search.
pub fn weighted_negative_sup(v: &PotentialSpec, domain: &DomainThreshold) -> f64 {
    let t = domain.value;
    let (lo, hi) = match v.support().clip(t, f64::INFINITY) {
        Support::Empty => return 0.0,
        Support::Interval { lo, hi } => (lo, hi),
    };
    let lo = if lo > 0.0 { lo } else { 1e-12 };
    let hi = if hi.is_finite() { hi } else { 1e12_f64.max(lo * 1e6) };
    let g = |r: f64| -> f64 {
        if !(r > t) {
            return 0.0;
        }
        v.negative_part_abs(r).map_or(0.0, |neg| r * r * neg)
    };
    let (l0, l1) = (libm::log(lo), libm::log(hi));
    let xs: Vec<f64> = (0..L_MAX_SAMPLES)
        .map(|i| {
            if i + 1 == L_MAX_SAMPLES {
                hi
            } else {
                libm::exp(l0 + (l1 - l0) * i as f64 / (L_MAX_SAMPLES - 1) as f64)
            }
        })
        .collect();
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let val = g(x);
        if val > best {
            best = val;
            best_i = i;
        }
    }
    if best <= 0.0 {
        return 0.0;
    }
    // Golden-section refinement on the bracketing samples.
    let mut a = xs[best_i.saturating_sub(1)];
    let mut b = xs[(best_i + 1).min(xs.len() - 1)];
    let phi = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut c = b - phi * (b - a);
    let mut dd = a + phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(dd));
    for _ in 0..100 {
        if gc > gd {
            b = dd;
            dd = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = dd;
            gc = gd;
            dd = a + phi * (b - a);
            gd = g(dd);
        }
        best = best.max(gc).max(gd);
        if (b - a) <= 1e-15 * b.abs() {
            break;
        }
    }
    best
}

/// Greatest `l ≥ 0` with `l(l+d-2) < sup r² |Ṽ_-|`, or `None` when the
/// supremum vanishes.
pub fn l_max(v: &PotentialSpec, d: u32, domain: &DomainThreshold) -> Option<u32> {
    let s = weighted_negative_sup(v, domain);
    if !(s > 0.0) {
        return None;
    }
    let mut l = 0;
    while angular_eigenvalue(l + 1, d) < s && l < 100_000 {
        l += 1;
    }
    Some(l)
}

/// Partial-wave bound for a central potential:
/// `Σ_{l ≤ l_max} D_{d,l} ([1 +] I_l)` with
/// `I_l = ∫_T^∞ (-l(l+d-2)/r² - Ṽ(r))_+ r |ln r| ⋯ |ln^{(n+1)} r| dr`.
pub fn central_bound(v: &PotentialSpec, spec: &OperatorSpec, tol: f64) -> Result<BoundValue> {
    let d = spec.d;
    if d < 2 {
        return Err(Error::Dimension {
            d,
            required: "d >= 2",
        });
    }
    if !v.central {
        return Err(Error::invalid("partial-wave bound needs a central potential"));
    }
    let t = spec.domain.value;
    let logs = spec.n.0 + 1;
    let Some(lmax) = l_max(v, d, &spec.domain) else {
        let mut out = BoundValue::new(0.0, QuadResult::ZERO);
        out.warnings.extend(hypothesis_warning(v, spec));
        return Ok(out);
    };
    let support = v.support();
    let mut breaks = support_breaks(support);
    breaks.extend(log_kinks(t, logs));
    let mut channels = Vec::new();
    let mut total = 0.0;
    let mut quad = QuadResult::ZERO;
    for l in 0..=lmax {
        let g = angular_eigenvalue(l, d);
        let res = try_integrate_on_support(
            |r| {
                let inner = -g / (r * r) - v.eval(r)?;
                if inner <= 0.0 {
                    return Ok(0.0);
                }
                Ok(inner * r * log_product(r, logs, true)?)
            },
            t,
            support,
            &breaks,
            tol,
        )?;
        let deg = degeneracy(d, l)?;
        let contribution = deg as f64
            * match spec.variant {
                Variant::Zero => 1.0 + res.value,
                Variant::One => res.value,
            };
        total += contribution;
        quad = quad.combine(QuadResult {
            value: contribution,
            error_estimate: deg as f64 * res.error_estimate,
            evaluations: res.evaluations,
        });
        channels.push(ChannelBound {
            l,
            degeneracy: deg,
            integral: res.value,
            error_estimate: res.error_estimate,
            contribution,
        });
    }
    let mut out = BoundValue::new(total, quad);
    out.channels = channels;
    out.warnings.extend(hypothesis_warning(v, spec));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::FnPotential;
    use core::f64::consts::LN_2;

    const I0: f64 = 2.0 * LN_2 - 0.75;

    fn well() -> PotentialSpec {
        PotentialSpec::square_well(1.0, 1.0, 2.0).unwrap()
    }

    #[test]
    fn bargmann_line_examples() {
        let b = bargmann_line_bound(&PotentialSpec::zero(), 1e-10).unwrap();
        assert_eq!((b.raw, b.cap), (1.0, Some(1)));
        let sym = FnPotential::new(|_| -1.0).with_support(-1.0, 1.0);
        let b = bargmann_line_bound(&sym, 1e-10).unwrap();
        assert!((b.raw - 2.0).abs() < 1e-12);
        assert_eq!(b.cap, Some(2));
        let b = bargmann_line_bound(&well(), 1e-10).unwrap();
        assert!((b.raw - 2.5).abs() < 1e-12);
    }

    #[test]
    fn bargmann_halfline_examples() {
        let b = bargmann_halfline_bound(&PotentialSpec::zero(), 1e-10).unwrap();
        assert_eq!(b.raw, 0.0);
        let b = bargmann_halfline_bound(&well(), 1e-10).unwrap();
        assert!((b.raw - 1.5).abs() < 1e-12);
        let deep = FnPotential::new(|_| -4.0).with_support(0.0, 1.0);
        let b = bargmann_halfline_bound(&deep, 1e-10).unwrap();
        assert!((b.raw - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bound_1d_examples() {
        let zero = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(0), Variant::Zero).unwrap();
        let one = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(0), Variant::One).unwrap();
        let b = bound_1d(&PotentialSpec::zero(), &zero, 1e-10).unwrap();
        assert_eq!(b.raw, 1.0);
        let b = bound_1d(&well(), &one, 1e-10).unwrap();
        assert!((b.raw - I0).abs() < 1e-10);
        assert_eq!(b.cap, Some(0));
        assert!(b.warnings.is_empty());
        let b = bound_1d(&well(), &zero, 1e-10).unwrap();
        assert!((b.raw - 1.0 - I0).abs() < 1e-10);
        assert_eq!(b.cap, Some(1));
    }

    #[test]
    fn bound_1d_flags_hypothesis() {
        let zero = OperatorSpec::for_theorem(Theorem::T41, 1, LogDepth(0), Variant::Zero).unwrap();
        let v = PotentialSpec::power_log_well(1.0, -1.0, 0.0, 0.0, Some(1e14)).unwrap();
        let b = bound_1d(&v, &zero, 1e-8).unwrap();
        assert_eq!(b.warnings.len(), 1);
    }

    #[test]
    fn clr_d3_nonnegative_potential_is_zero() {
        let spec = OperatorSpec::for_theorem(Theorem::T42, 3, LogDepth(0), Variant::Zero).unwrap();
        let c = BoundConstants::default();
        assert_eq!(clr_bound(&PotentialSpec::zero(), &spec, &c, 1e-10).unwrap().raw, 0.0);
        let pos = PotentialSpec::power_log_well(-1.0, 0.0, 0.0, 3.0, Some(5.0)).unwrap();
        assert_eq!(clr_bound(&pos, &spec, &c, 1e-10).unwrap().raw, 0.0);
    }

    #[test]
    fn clr_d5_zero_potential_diverges() {
        let spec = OperatorSpec::for_theorem(Theorem::T42, 5, LogDepth(0), Variant::Zero).unwrap();
        let b = clr_bound(&PotentialSpec::zero(), &spec, &BoundConstants::default(), 1e-10).unwrap();
        assert!(b.raw > 0.0 && b.raw.is_infinite());
        assert_eq!(b.cap, None);
        assert!(b.admits(1_000_000));
    }

    #[test]
    fn clr_d4_variant_one_cutoff() {
        // (d-1)(d-3) - (ln ln r)² = 3 - (ln ln r)² vanishes at ln ln r = √3.
        let spec = OperatorSpec::for_theorem(Theorem::T42, 4, LogDepth(0), Variant::One).unwrap();
        let v = PotentialSpec::zero();
        let root = libm::exp(libm::exp(libm::sqrt(3.0)));
        assert!(clr_radial_integrand(&v, &spec, root * 1.001).unwrap() == 0.0);
        assert!(clr_radial_integrand(&v, &spec, root * 0.999).unwrap() > 0.0);
        let b = clr_bound(&v, &spec, &BoundConstants::default(), 1e-10).unwrap();
        assert!(b.raw > 0.0 && b.raw.is_finite());
    }

    #[test]
    fn clr_radial_weights_checked() {
        let spec = OperatorSpec::for_theorem(Theorem::T42, 3, LogDepth(0), Variant::Zero).unwrap();
        assert!(clr_radial_integrand(&well(), &spec, 0.5).is_err());
        assert!(clr_bound(&well(), &spec, &BoundConstants { entries: Vec::new() }, 1e-8).is_err());
        let bad = OperatorSpec::for_theorem(Theorem::T42, 2, LogDepth(0), Variant::Zero);
        assert!(bad.is_err());
    }

    #[test]
    fn l_max_examples() {
        let zero_dom = DomainThreshold::new(0, Variant::Zero).unwrap();
        assert_eq!(l_max(&PotentialSpec::zero(), 3, &zero_dom), None);
        let inv = PotentialSpec::inverse_square(5.0, 1e-6).unwrap();
        assert_eq!(l_max(&inv, 3, &zero_dom), Some(1));
        assert_eq!(l_max(&well(), 3, &zero_dom), Some(1));
        let s = weighted_negative_sup(&well(), &zero_dom);
        assert!((s - 4.0).abs() < 1e-12);
        // On (2, ∞) nothing of the well remains.
        let beyond = DomainThreshold::new(0, Variant::One).unwrap();
        let shifted = PotentialSpec::square_well(1.0, 0.2, 0.9).unwrap();
        assert_eq!(l_max(&shifted, 3, &beyond), None);
    }

    #[test]
    fn central_bound_examples() {
        let one = OperatorSpec::for_theorem(Theorem::T43, 3, LogDepth(0), Variant::One).unwrap();
        let zero = OperatorSpec::for_theorem(Theorem::T43, 3, LogDepth(0), Variant::Zero).unwrap();
        assert_eq!(central_bound(&PotentialSpec::zero(), &one, 1e-10).unwrap().raw, 0.0);
        let b1 = central_bound(&well(), &one, 1e-10).unwrap();
        assert_eq!(b1.channels.len(), 2);
        assert!((b1.channels[0].integral - I0).abs() < 1e-10);
        assert_eq!(b1.channels[1].degeneracy, 3);
        let b0 = central_bound(&well(), &zero, 1e-10).unwrap();
        assert!((b0.raw - b1.raw - 4.0).abs() < 1e-10);
    }

    #[test]
    fn integer_cap_is_floor() {
        for raw in [0.0, 0.3, 1.0, 2.999, 17.5] {
            let b = BoundValue::new(raw, QuadResult::ZERO);
            let cap = b.cap.unwrap() as f64;
            assert!(cap <= raw && raw < cap + 1.0);
        }
    }
}
