//! Radial potentials, their negative parts, and their images under repeated
//! logarithmic substitution `r = e^s`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::iterfun::{log_product, DomainThreshold, LogDepth, MAX_DEPTH};

/// Closed interval outside of which a potential vanishes identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    Empty,
    /// `hi` may be `+inf`, `lo` may be `-inf`.
    Interval { lo: f64, hi: f64 },
}

impl Support {
    pub fn contains(&self, x: f64) -> bool {
        match *self {
            Support::Empty => false,
            Support::Interval { lo, hi } => x >= lo && x <= hi,
        }
    }

    /// Intersection with `[lo, hi]`.
    pub fn clip(&self, lo: f64, hi: f64) -> Support {
        match *self {
            Support::Empty => Support::Empty,
            Support::Interval { lo: a, hi: b } => {
                let (a, b) = (a.max(lo), b.min(hi));
                if a < b {
                    Support::Interval { lo: a, hi: b }
                } else {
                    Support::Empty
                }
            }
        }
    }

    pub fn is_bounded_above(&self) -> bool {
        match *self {
            Support::Empty => true,
            Support::Interval { hi, .. } => hi.is_finite(),
        }
    }
}

/// Anything evaluable as a real potential on (part of) the real line.
pub trait Potential {
    fn eval(&self, x: f64) -> Result<f64>;

    /// Where the potential can be non-zero.
    fn support(&self) -> Support;

    fn negative_part_abs(&self, x: f64) -> Result<f64> {
        Ok((-self.eval(x)?).max(0.0))
    }
}

/// A potential given by a closure, for ad hoc line potentials.
pub struct FnPotential<F> {
    f: F,
    support: Support,
}

impl<F: Fn(f64) -> f64> FnPotential<F> {
    pub fn new(f: F) -> Self {
        FnPotential {
            f,
            support: Support::Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            },
        }
    }

    pub fn with_support(mut self, lo: f64, hi: f64) -> Self {
        self.support = Support::Interval { lo, hi };
        self
    }
}

impl<F: Fn(f64) -> f64> Potential for FnPotential<F> {
    fn eval(&self, x: f64) -> Result<f64> {
        if !self.support.contains(x) {
            return Ok(0.0);
        }
        Ok((self.f)(x))
    }

    fn support(&self) -> Support {
        self.support
    }
}

/// Shape of a radial potential `Ṽ(r)`, `r > 0`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)
)]
pub enum PotentialFamily {
    Zero,
    /// `-depth` on `[inner, outer]`, zero elsewhere.
    SquareWell { depth: f64, inner: f64, outer: f64 },
    /// `-coefficient / r²` for `r ≥ onset`, zero below.
    InverseSquare { coefficient: f64, onset: f64 },
    /// `-coefficient · r^power · |ln r|^log_power` on `[lower, upper]`;
    /// `upper = None` means unbounded.
    PowerLogWell {
        coefficient: f64,
        power: f64,
        log_power: f64,
        lower: f64,
        upper: Option<f64>,
    },
    /// Linear interpolation through `(r[i], v[i])`; undefined outside.
    Tabulated { r: Vec<f64>, v: Vec<f64> },
    /// `strength / r² + base(r)`.
    Centrifugal {
        strength: f64,
        base: Box<PotentialSpec>,
    },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct PotentialSpec {
    pub family: PotentialFamily,
    /// Always true here; non-central potentials are not modelled.
    #[cfg_attr(feature = "serde", serde(default = "default_true"))]
    pub central: bool,
    #[cfg_attr(feature = "serde", serde(default))]
    pub dimension_hint: Option<u32>,
}

#[cfg(feature = "serde")]
fn default_true() -> bool {
    true
}

impl PotentialSpec {
    pub fn new(family: PotentialFamily) -> Result<Self> {
        let spec = PotentialSpec {
            family,
            central: true,
            dimension_hint: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn zero() -> Self {
        PotentialSpec {
            family: PotentialFamily::Zero,
            central: true,
            dimension_hint: None,
        }
    }

    pub fn square_well(depth: f64, inner: f64, outer: f64) -> Result<Self> {
        Self::new(PotentialFamily::SquareWell {
            depth,
            inner,
            outer,
        })
    }

    pub fn inverse_square(coefficient: f64, onset: f64) -> Result<Self> {
        Self::new(PotentialFamily::InverseSquare { coefficient, onset })
    }

    pub fn power_log_well(
        coefficient: f64,
        power: f64,
        log_power: f64,
        lower: f64,
        upper: Option<f64>,
    ) -> Result<Self> {
        Self::new(PotentialFamily::PowerLogWell {
            coefficient,
            power,
            log_power,
            lower,
            upper,
        })
    }

    pub fn tabulated(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        Self::new(PotentialFamily::Tabulated { r, v })
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |x: f64, name: &str| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(format!("{name} must be finite")))
            }
        };
        match &self.family {
            PotentialFamily::Zero => Ok(()),
            PotentialFamily::SquareWell {
                depth,
                inner,
                outer,
            } => {
                finite(*depth, "square_well depth")?;
                if !(*depth > 0.0) {
                    return Err(Error::invalid("square_well depth must be positive"));
                }
                if !(*inner > 0.0 && inner < outer && outer.is_finite()) {
                    return Err(Error::invalid("square_well requires 0 < inner < outer"));
                }
                Ok(())
            }
            PotentialFamily::InverseSquare { coefficient, onset } => {
                finite(*coefficient, "inverse_square coefficient")?;
                if !(*onset > 0.0 && onset.is_finite()) {
                    return Err(Error::invalid("inverse_square onset must be positive"));
                }
                Ok(())
            }
            PotentialFamily::PowerLogWell {
                coefficient,
                power,
                log_power,
                lower,
                upper,
            } => {
                finite(*coefficient, "power_log_well coefficient")?;
                finite(*power, "power_log_well power")?;
                finite(*log_power, "power_log_well log power")?;
                if !(*lower >= 0.0 && lower.is_finite()) {
                    return Err(Error::invalid("power_log_well lower end must be >= 0"));
                }
                if let Some(u) = upper {
                    if !(u > lower && u.is_finite()) {
                        return Err(Error::invalid("power_log_well requires lower < upper"));
                    }
                }
                Ok(())
            }
            PotentialFamily::Tabulated { r, v } => {
                if r.len() < 2 || r.len() != v.len() {
                    return Err(Error::invalid(
                        "tabulated potential needs at least two (r, v) pairs of equal length",
                    ));
                }
                if !(r[0] > 0.0) {
                    return Err(Error::invalid("tabulated radii must be positive"));
                }
                if r.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::invalid("tabulated radii must be strictly increasing"));
                }
                if r.iter().chain(v.iter()).any(|x| !x.is_finite()) {
                    return Err(Error::invalid("tabulated values must be finite"));
                }
                Ok(())
            }
            PotentialFamily::Centrifugal { strength, base } => {
                finite(*strength, "centrifugal strength")?;
                base.validate()
            }
        }
    }

    /// The same potential with every value multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let family = match &self.family {
            PotentialFamily::Zero => PotentialFamily::Zero,
            PotentialFamily::SquareWell {
                depth,
                inner,
                outer,
            } => PotentialFamily::SquareWell {
                depth: depth * factor,
                inner: *inner,
                outer: *outer,
            },
            PotentialFamily::InverseSquare { coefficient, onset } => {
                PotentialFamily::InverseSquare {
                    coefficient: coefficient * factor,
                    onset: *onset,
                }
            }
            PotentialFamily::PowerLogWell {
                coefficient,
                power,
                log_power,
                lower,
                upper,
            } => PotentialFamily::PowerLogWell {
                coefficient: coefficient * factor,
                power: *power,
                log_power: *log_power,
                lower: *lower,
                upper: *upper,
            },
            PotentialFamily::Tabulated { r, v } => PotentialFamily::Tabulated {
                r: r.clone(),
                v: v.iter().map(|x| x * factor).collect(),
            },
            PotentialFamily::Centrifugal { strength, base } => PotentialFamily::Centrifugal {
                strength: strength * factor,
                base: Box::new(base.scaled(factor)?),
            },
        };
        let spec = PotentialSpec {
            family,
            central: self.central,
            dimension_hint: self.dimension_hint,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `(sign, ln|V|)` at `r = e^{ln_r}` for the analytic power-law
    /// families, computed without forming `r`. The caller has already
    /// checked that `r` lies in the support.
    fn log_magnitude(&self, ln_r: f64) -> Option<(f64, f64)> {
        match &self.family {
            PotentialFamily::InverseSquare { coefficient, .. } => {
                Some((-coefficient.signum(), libm::log(coefficient.abs()) - 2.0 * ln_r))
            }
            PotentialFamily::PowerLogWell {
                coefficient,
                power,
                log_power,
                ..
            } => {
                let mut lm = libm::log(coefficient.abs()) + power * ln_r;
                if *log_power != 0.0 {
                    lm += log_power * libm::log(ln_r.abs());
                }
                Some((-coefficient.signum(), lm))
            }
            _ => None,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            PotentialFamily::Zero => "zero",
            PotentialFamily::SquareWell { .. } => "square_well",
            PotentialFamily::InverseSquare { .. } => "inverse_square",
            PotentialFamily::PowerLogWell { .. } => "power_log_well",
            PotentialFamily::Tabulated { .. } => "tabulated",
            PotentialFamily::Centrifugal { .. } => "centrifugal",
        }
    }

    /// Parameters as `key=value` pairs joined by `;` (CSV-safe).
    pub fn params_string(&self) -> String {
        let lit = self.to_string();
        match lit.split_once(':') {
            Some((_, params)) => params.replace(',', ";"),
            None => String::new(),
        }
    }
}

impl Potential for PotentialSpec {
    fn eval(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::Domain {
                what: "potential evaluation",
                value: r,
            });
        }
        match &self.family {
            PotentialFamily::Zero => Ok(0.0),
            PotentialFamily::SquareWell {
                depth,
                inner,
                outer,
            } => Ok(if r >= *inner && r <= *outer {
                -depth
            } else {
                0.0
            }),
            PotentialFamily::InverseSquare { coefficient, onset } => Ok(if r >= *onset {
                -coefficient / (r * r)
            } else {
                0.0
            }),
            PotentialFamily::PowerLogWell {
                coefficient,
                power,
                log_power,
                lower,
                upper,
            } => {
                let inside = r >= *lower && upper.is_none_or(|u| r <= u);
                if !inside {
                    return Ok(0.0);
                }
                let mut v = -coefficient * libm::pow(r, *power);
                if *log_power != 0.0 {
                    v *= libm::pow(libm::log(r).abs(), *log_power);
                }
                Ok(v)
            }
            PotentialFamily::Tabulated { r: rs, v } => {
                let last = rs.len() - 1;
                if r < rs[0] || r > rs[last] {
                    return Err(Error::Domain {
                        what: "tabulated potential (outside tabulation range)",
                        value: r,
                    });
                }
                let i = match rs.partition_point(|&x| x <= r) {
                    0 => 0,
                    p if p > last => last - 1,
                    p => p - 1,
                };
                let t = (r - rs[i]) / (rs[i + 1] - rs[i]);
                Ok(v[i] + t * (v[i + 1] - v[i]))
            }
            PotentialFamily::Centrifugal { strength, base } => {
                Ok(strength / (r * r) + base.eval(r)?)
            }
        }
    }

    fn support(&self) -> Support {
        match &self.family {
            PotentialFamily::Zero => Support::Empty,
            PotentialFamily::SquareWell { inner, outer, .. } => Support::Interval {
                lo: *inner,
                hi: *outer,
            },
            PotentialFamily::InverseSquare { onset, coefficient } => {
                if *coefficient == 0.0 {
                    Support::Empty
                } else {
                    Support::Interval {
                        lo: *onset,
                        hi: f64::INFINITY,
                    }
                }
            }
            PotentialFamily::PowerLogWell {
                lower,
                upper,
                coefficient,
                ..
            } => {
                if *coefficient == 0.0 {
                    Support::Empty
                } else {
                    Support::Interval {
                        lo: *lower,
                        hi: upper.unwrap_or(f64::INFINITY),
                    }
                }
            }
            PotentialFamily::Tabulated { r, .. } => Support::Interval {
                lo: r[0],
                hi: r[r.len() - 1],
            },
            PotentialFamily::Centrifugal { strength, base } => {
                if *strength == 0.0 {
                    base.support()
                } else {
                    Support::Interval {
                        lo: 0.0,
                        hi: f64::INFINITY,
                    }
                }
            }
        }
    }
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

impl fmt::Display for PotentialSpec {
    /// The `family:key=value,...` literal accepted by [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            PotentialFamily::Zero => write!(f, "zero"),
            PotentialFamily::SquareWell {
                depth,
                inner,
                outer,
            } => write!(f, "square_well:c={depth},a={inner},b={outer}"),
            PotentialFamily::InverseSquare { coefficient, onset } => {
                write!(f, "inverse_square:c={coefficient},a={onset}")
            }
            PotentialFamily::PowerLogWell {
                coefficient,
                power,
                log_power,
                lower,
                upper,
            } => {
                write!(
                    f,
                    "power_log_well:c={coefficient},p={power},q={log_power},lo={lower}"
                )?;
                match upper {
                    Some(u) => write!(f, ",hi={u}"),
                    None => write!(f, ",hi=inf"),
                }
            }
            PotentialFamily::Tabulated { r, v } => {
                let join = |xs: &[f64]| xs.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(";");
                write!(f, "tabulated:r={},v={}", join(r), join(v))
            }
            PotentialFamily::Centrifugal { strength, base } => {
                write!(f, "centrifugal:g={strength},base=[{base}]")
            }
        }
    }
}

impl FromStr for PotentialSpec {
    type Err = Error;

    /// Parses `zero`, `square_well:c=1,a=1,b=2`, `inverse_square:c=2,a=1`,
    /// `power_log_well:c=1,p=-1,q=0,lo=0,hi=inf` and
    /// `tabulated:r=1;2;3,v=-1;-2;0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = match s.split_once(':') {
            Some((f, r)) => (f.trim(), r.trim()),
            None => (s, ""),
        };
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        if !rest.is_empty() {
            for item in rest.split(',') {
                let (k, v) = item.split_once('=').ok_or_else(|| {
                    Error::invalid(format!("expected key=value in potential literal, got `{item}`"))
                })?;
                pairs.push((k.trim(), v.trim()));
            }
        }
        let known: &[&str] = match family {
            "zero" => &[],
            "square_well" => &["c", "a", "b"],
            "inverse_square" => &["c", "a"],
            "power_log_well" => &["c", "p", "q", "lo", "hi"],
            "tabulated" => &["r", "v"],
            other => {
                return Err(Error::invalid(format!("unknown potential family `{other}`")));
            }
        };
        for (k, _) in &pairs {
            if !known.contains(k) {
                return Err(Error::invalid(format!(
                    "unknown key `{k}` for potential family `{family}`"
                )));
            }
        }
        let raw = |key: &str| -> Option<&str> {
            pairs.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
        };
        let num = |key: &str| -> Result<f64> {
            let v = raw(key)
                .ok_or_else(|| Error::invalid(format!("missing key `{key}` for `{family}`")))?;
            parse_f64(v)
        };
        let list = |key: &str| -> Result<Vec<f64>> {
            let v = raw(key)
                .ok_or_else(|| Error::invalid(format!("missing key `{key}` for `{family}`")))?;
            v.split(';').map(parse_f64).collect()
        };
        match family {
            "zero" => Ok(PotentialSpec::zero()),
            "square_well" => PotentialSpec::square_well(num("c")?, num("a")?, num("b")?),
            "inverse_square" => PotentialSpec::inverse_square(num("c")?, num("a")?),
            "power_log_well" => {
                let upper = match raw("hi") {
                    None | Some("inf") => None,
                    Some(v) => Some(parse_f64(v)?),
                };
                PotentialSpec::power_log_well(
                    num("c")?,
                    num("p")?,
                    raw("q").map_or(Ok(0.0), parse_f64)?,
                    raw("lo").map_or(Ok(0.0), parse_f64)?,
                    upper,
                )
            }
            _ => PotentialSpec::tabulated(list("r")?, list("v")?),
        }
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::invalid(format!("not a number: `{s}`")))
}

/// Potential on the transformed line after `steps` substitutions:
///
/// `W(s) = e^{2s} e^{2e^s} ⋯ e^{2 exp^{(k-1)} s} · V(exp^{(k)} s) + extra_constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedPotential {
    pub base: PotentialSpec,
    pub steps: u32,
    pub extra_constant: f64,
}

/// Builds the `k`-step image of `v`. `k` must lie in `1..=MAX_DEPTH`.
pub fn transform_potential(
    v: &PotentialSpec,
    steps: u32,
    extra_constant: f64,
) -> Result<TransformedPotential> {
    if steps == 0 {
        return Err(Error::invalid("transform_potential needs at least one step"));
    }
    if steps > MAX_DEPTH {
        return Err(Error::DepthCap {
            depth: steps,
            max: MAX_DEPTH,
        });
    }
    v.validate()?;
    Ok(TransformedPotential {
        base: v.clone(),
        steps,
        extra_constant,
    })
}

/// `2 Σ_{j<count} exp^{(j)}(s)` together with `exp^{(count)}(s)`.
fn log_prefactor(s: f64, count: u32) -> (f64, f64) {
    let mut r = s;
    let mut lp = 0.0;
    for _ in 0..count {
        lp += 2.0 * r;
        r = libm::exp(r);
    }
    (lp, r)
}

fn transformed_value(spec: &PotentialSpec, s: f64, k: u32) -> Result<f64> {
    if let PotentialFamily::Centrifugal { strength, base } = &spec.family {
        // strength / r² with r = exp^{(k)} s cancels the last prefactor
        // exactly, leaving strength · e^{2 Σ_{j<k-1} exp^{(j)} s}.
        let centrifugal = if *strength == 0.0 {
            0.0
        } else {
            let (lp, _) = log_prefactor(s, k - 1);
            let c = strength * libm::exp(lp);
            if !c.is_finite() {
                return Err(Error::Overflow {
                    what: "transformed centrifugal term",
                    at: s,
                });
            }
            c
        };
        return Ok(centrifugal + transformed_value(base, s, k)?);
    }

    let (lo, hi) = match spec.support() {
        Support::Empty => return Ok(0.0),
        Support::Interval { lo, hi } => (lo, hi),
    };
    // ln r = exp^{(k-1)} s stays finite long after r itself overflows.
    let (lp_inner, ln_r) = log_prefactor(s, k - 1);
    let lp = lp_inner + 2.0 * ln_r;
    let r = libm::exp(ln_r);
    if hi.is_finite() && (r.is_infinite() || r > hi) {
        return Ok(0.0);
    }
    if r < lo || (r == 0.0 && lo > 0.0) {
        return Ok(0.0);
    }
    if let Some((sign, log_mag)) = spec.log_magnitude(ln_r) {
        let magnitude = libm::exp(lp + log_mag);
        if !magnitude.is_finite() {
            return Err(Error::Overflow {
                what: "transformed potential",
                at: s,
            });
        }
        return Ok(sign * magnitude);
    }
    if r.is_infinite() {
        return Err(Error::Overflow {
            what: "transformed potential (unbounded support)",
            at: s,
        });
    }
    if r <= 0.0 {
        return Err(Error::Overflow {
            what: "transformed potential (underflow near the origin)",
            at: s,
        });
    }
    let v = spec.eval(r)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let pref = libm::exp(lp);
    let direct = pref * v;
    if pref.is_finite() && direct.is_finite() && direct != 0.0 {
        return Ok(direct);
    }
    let magnitude = libm::exp(lp + libm::log(v.abs()));
    if !magnitude.is_finite() {
        return Err(Error::Overflow {
            what: "transformed potential",
            at: s,
        });
    }
    Ok(magnitude.copysign(v))
}

impl TransformedPotential {
    /// Inverse image of the base support in the transformed coordinate.
    fn transformed_support(&self) -> Support {
        fn image(base: &PotentialSpec, k: u32) -> Support {
            match base.support() {
                Support::Empty => Support::Empty,
                Support::Interval { lo, hi } => {
                    let map = |x: f64| -> f64 {
                        let mut v = x;
                        for _ in 0..k {
                            v = if v > 0.0 {
                                libm::log(v)
                            } else {
                                f64::NEG_INFINITY
                            };
                        }
                        v
                    };
                    let (a, b) = (map(lo), map(hi));
                    if a < b {
                        Support::Interval { lo: a, hi: b }
                    } else {
                        Support::Empty
                    }
                }
            }
        }
        image(&self.base, self.steps)
    }
}

impl Potential for TransformedPotential {
    fn eval(&self, s: f64) -> Result<f64> {
        Ok(transformed_value(&self.base, s, self.steps)? + self.extra_constant)
    }

    fn support(&self) -> Support {
        if self.extra_constant != 0.0 {
            return Support::Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        self.transformed_support()
    }
}

pub fn eval_potential(v: &PotentialSpec, r: f64) -> Result<f64> {
    v.eval(r)
}

pub fn negative_part_abs(v: &PotentialSpec, r: f64) -> Result<f64> {
    v.negative_part_abs(r)
}

/// `r ↦ l(l+d-2)/r² + Ṽ(r)`, the potential seen by angular channel `l`.
pub fn effective_radial_potential(v: &PotentialSpec, l: u32, d: u32) -> Result<PotentialSpec> {
    if !v.central {
        return Err(Error::invalid("effective radial potential needs a central potential"));
    }
    let strength = angular_eigenvalue(l, d);
    if strength == 0.0 {
        return Ok(v.clone());
    }
    Ok(PotentialSpec {
        family: PotentialFamily::Centrifugal {
            strength,
            base: Box::new(v.clone()),
        },
        central: true,
        dimension_hint: Some(d),
    })
}

/// Eigenvalue `l(l+d-2)` of `-Δ_{S^{d-1}}` on degree-`l` harmonics.
pub fn angular_eigenvalue(l: u32, d: u32) -> f64 {
    let l = l as f64;
    l * (l + d as f64 - 2.0)
}

/// Outcome of the sampled boundedness-below heuristic.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundednessCheck {
    pub bounded: bool,
    /// `(x, weighted value)` where downward divergence was detected.
    pub witness: Option<(f64, f64)>,
    /// Smallest sampled weighted value and where it occurred.
    pub minimum: Option<(f64, f64)>,
}

/// Largest sampled radius in the boundedness heuristic.
pub const SAMPLING_HORIZON: f64 = 1e12;

/// Samples `x² (ln x)² ⋯ (ln^{(n)} x)² V(x)` on a grid log-spaced in the
/// distance from the domain threshold, and flags a run of strictly
/// decreasing values at either end that at least doubles in magnitude.
/// This is a heuristic: it cannot decide boundedness, only spot obvious
/// divergence inside the sampled window.
pub fn check_bounded_below_weighted(
    v: &PotentialSpec,
    n: LogDepth,
    domain: &DomainThreshold,
    samples: usize,
) -> Result<BoundednessCheck> {
    if samples < 100 {
        return Err(Error::invalid("boundedness check needs at least 100 samples"));
    }
    let t = domain.value;
    let delta_lo = 1e-9 * t.max(1.0);
    let delta_hi = SAMPLING_HORIZON;
    let (l0, l1) = (libm::log(delta_lo), libm::log(delta_hi));
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = t + libm::exp(l0 + (l1 - l0) * i as f64 / (samples - 1) as f64);
        let Ok(val) = v.eval(x) else { continue };
        let Ok(p) = log_product(x, n.0, false) else {
            continue;
        };
        pts.push((x, x * x * p * p * val));
    }
    let minimum = pts
        .iter()
        .copied()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(core::cmp::Ordering::Equal));
    let tail = (samples / 10).max(5);
    let diverges = |seg: &[(f64, f64)]| -> bool {
        // `seg` runs towards the end point.
        if seg.len() < 2 {
            return false;
        }
        let start = seg[0].1;
        let end = seg[seg.len() - 1].1;
        start < 0.0 && end < 2.0 * start && seg.windows(2).all(|w| w[1].1 < w[0].1)
    };
    let mut witness = None;
    if pts.len() >= tail {
        let upper = &pts[pts.len() - tail..];
        if diverges(upper) {
            witness = Some(upper[upper.len() - 1]);
        } else {
            let mut lower: Vec<(f64, f64)> = pts[..tail].to_vec();
            lower.reverse();
            if diverges(&lower) {
                witness = Some(lower[lower.len() - 1]);
            }
        }
    }
    Ok(BoundednessCheck {
        bounded: witness.is_none(),
        witness,
        minimum,
    })
}
