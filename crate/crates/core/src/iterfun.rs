//! Iterated logarithms and exponentials, Hardy weight stacks, and the special
//! functions the bound evaluators need.

use core::f64::consts::PI;

use crate::error::{Error, Result};

/// Deepest composition of `exp` this crate will form. `exp^{(4)}(1)` already
/// overflows `f64`, so every path that exponentiates is capped here.
pub const MAX_DEPTH: u32 = 3;

/// Number of factors in an iterated `ln`/`exp` composition. Zero is the
/// identity map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct LogDepth(pub u32);

impl LogDepth {
    pub const ZERO: LogDepth = LogDepth(0);

    pub fn get(self) -> u32 {
        self.0
    }
}

impl From<u32> for LogDepth {
    fn from(n: u32) -> Self {
        LogDepth(n)
    }
}

/// Which end point a domain threshold is built from: `exp^{(k)}(0)` or
/// `exp^{(k)}(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Variant {
    Zero,
    One,
}

impl Variant {
    pub fn seed(self) -> f64 {
        match self {
            Variant::Zero => 0.0,
            Variant::One => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Zero => "zero",
            Variant::One => "one",
        }
    }
}

impl core::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "0" => Ok(Variant::Zero),
            "one" | "1" => Ok(Variant::One),
            other => Err(Error::invalid(alloc::format!(
                "unknown domain variant `{other}` (expected `zero` or `one`)"
            ))),
        }
    }
}

/// Left end point `exp^{(depth)}(0)` or `exp^{(depth)}(1)` of a radial domain.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DomainThreshold {
    pub depth: u32,
    pub variant: Variant,
    pub value: f64,
}

impl DomainThreshold {
    pub fn new(depth: u32, variant: Variant) -> Result<Self> {
        let value = iterated_exp(variant.seed(), LogDepth(depth))?;
        Ok(DomainThreshold {
            depth,
            variant,
            value,
        })
    }

    /// Image of the threshold after `steps` logarithmic substitutions,
    /// i.e. `ln^{(steps)}(value)`. Returns `-inf` when the threshold maps to
    /// the left end of the real line.
    pub fn transformed(&self, steps: u32) -> f64 {
        let seed = self.variant.seed();
        if self.depth >= steps {
            // exp^{(depth - steps)}(seed) is finite whenever `value` was.
            let mut v = seed;
            for _ in 0..(self.depth - steps) {
                v = libm::exp(v);
            }
            v
        } else {
            // ln of the seed, then further logs of -inf/0 stay at -inf.
            let mut v = seed;
            for _ in 0..(steps - self.depth) {
                v = if v > 0.0 { libm::log(v) } else { f64::NEG_INFINITY };
            }
            v
        }
    }
}

/// `ln` applied `n` times. Every intermediate value must be positive.
pub fn iterated_log(x: f64, n: LogDepth) -> Result<f64> {
    let mut v = x;
    for _ in 0..n.0 {
        if !(v > 0.0) {
            return Err(Error::Domain {
                what: "iterated_log",
                value: x,
            });
        }
        v = libm::log(v);
    }
    Ok(v)
}

/// `exp` applied `n` times.
pub fn iterated_exp(x: f64, n: LogDepth) -> Result<f64> {
    if n.0 > MAX_DEPTH {
        return Err(Error::DepthCap {
            depth: n.0,
            max: MAX_DEPTH,
        });
    }
    let mut v = x;
    for _ in 0..n.0 {
        v = libm::exp(v);
    }
    if v.is_infinite() {
        return Err(Error::Overflow {
            what: "iterated_exp",
            at: x,
        });
    }
    Ok(v)
}

/// Product `ln x · ln ln x ⋯ ln^{(count)} x`. With `absolute`, each factor is
/// taken in absolute value. Every factor except the last must be positive so
/// the next logarithm exists.
pub fn log_product(x: f64, count: u32, absolute: bool) -> Result<f64> {
    let mut prod = 1.0;
    let mut v = x;
    for _ in 0..count {
        if !(v > 0.0) {
            return Err(Error::Domain {
                what: "log_product",
                value: x,
            });
        }
        v = libm::log(v);
        prod *= if absolute { v.abs() } else { v };
    }
    Ok(prod)
}

/// Full subtracted weight of `H_{d,n}`:
/// `(d-2)²/(4x²) + Σ_{k=1..n} 1/(4x² (ln x)² ⋯ (ln^{(k)} x)²)`.
///
/// Requires `x > exp^{(n)}(0)`, i.e. every logarithm in the stack positive.
pub fn hardy_weight_stack(x: f64, d: u32, n: LogDepth) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "hardy_weight_stack",
            value: x,
        });
    }
    let dm2 = d as f64 - 2.0;
    let inv = 1.0 / (4.0 * x * x);
    let mut total = dm2 * dm2 * inv;
    let mut v = x;
    let mut prod = 1.0;
    for _ in 0..n.0 {
        v = libm::log(v);
        if !(v > 0.0) {
            return Err(Error::Domain {
                what: "hardy_weight_stack",
                value: x,
            });
        }
        prod *= v;
        total += inv / (prod * prod);
    }
    Ok(total)
}

/// `n!` for `n ≤ 20`, exactly.
fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real arguments (Lanczos, g = 7). Positive integers up
/// to 21 use an exact factorial.
pub fn gamma(x: f64) -> f64 {
    if x == libm::floor(x) {
        if x <= 0.0 {
            return f64::NAN;
        }
        if x <= 21.0 {
            return factorial(x as u64 - 1) as f64;
        }
    }
    if x < 0.5 {
        // Reflection.
        return PI / (libm::sin(PI * x) * gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    libm::sqrt(2.0 * PI) * libm::exp((z + 0.5) * libm::log(t) - t) * a
}

/// Dimension `D_{d,l}` of the degree-`l` spherical harmonics on `S^{d-1}`,
/// `(2l+d-2) Γ(d+l-2) / (Γ(d-1) Γ(l+1)) = (2l+d-2) C(l+d-3, l) / (d-2)`,
/// evaluated in exact integer arithmetic.
///
/// `l = 0` is always 1 and `d = 2, l ≥ 1` is 2; the closed formula is
/// indeterminate at `d = 2, l = 0`. Values beyond `u64` are an
/// [`Error::Overflow`].
pub fn degeneracy(d: u32, l: u32) -> Result<u64> {
    if d < 2 {
        return Err(Error::Dimension {
            d,
            required: "d >= 2",
        });
    }
    if l == 0 {
        return Ok(1);
    }
    if d == 2 {
        return Ok(2);
    }
    let overflow = || Error::Overflow {
        what: "degeneracy",
        at: l as f64,
    };
    let (d, l) = (d as u128, l as u128);
    // C(l+d-3, l) built up as C(d-3+i, i); each step divides exactly.
    let mut binom: u128 = 1;
    for i in 1..=l {
        binom = binom.checked_mul(d - 3 + i).ok_or_else(overflow)? / i;
    }
    let value = binom.checked_mul(2 * l + d - 2).ok_or_else(overflow)? / (d - 2);
    u64::try_from(value).map_err(|_| overflow())
}

/// Surface area `|S^{d-1}| = 2 π^{d/2} / Γ(d/2)`.
pub fn sphere_area(d: u32) -> Result<f64> {
    if d < 1 {
        return Err(Error::Dimension {
            d,
            required: "d >= 1",
        });
    }
    let half = d as f64 / 2.0;
    Ok(2.0 * libm::pow(PI, half) / gamma(half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::E;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1.0)
    }

    #[test]
    fn iterated_log_examples() {
        assert_eq!(iterated_log(E, LogDepth(1)).unwrap(), 1.0);
        assert_eq!(iterated_log(7.5, LogDepth(0)).unwrap(), 7.5);
        // ln(ln 10) = ln(2.302585092994046) = 0.834032445247956
        assert!(close(
            iterated_log(10.0, LogDepth(2)).unwrap(),
            0.834_032_445_247_955_7,
            1e-15
        ));
        assert!(iterated_log(0.5, LogDepth(2)).is_err());
        assert!(iterated_log(-1.0, LogDepth(1)).is_err());
    }

    #[test]
    fn iterated_exp_examples() {
        assert!(close(iterated_exp(0.0, LogDepth(2)).unwrap(), E, 1e-15));
        assert_eq!(iterated_exp(0.0, LogDepth(0)).unwrap(), 0.0);
        // e^e = 15.154262241479259
        assert!(close(
            iterated_exp(1.0, LogDepth(2)).unwrap(),
            15.154_262_241_479_259,
            1e-15
        ));
        assert!(matches!(
            iterated_exp(0.0, LogDepth(4)),
            Err(Error::DepthCap { .. })
        ));
        assert!(matches!(
            iterated_exp(2.0, LogDepth(3)),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn weight_stack_examples() {
        assert_eq!(hardy_weight_stack(3.7, 2, LogDepth(0)).unwrap(), 0.0);
        assert_eq!(hardy_weight_stack(2.0, 3, LogDepth(0)).unwrap(), 1.0 / 16.0);
        let x = E * E;
        let direct = 1.0 / (4.0 * x * x) + 1.0 / (4.0 * x * x * 4.0);
        let v = hardy_weight_stack(x, 1, LogDepth(1)).unwrap();
        assert!(close(v, direct, 1e-15));
        assert!(close(v, 5.0 / (16.0 * E.powi(4)), 1e-14));
        assert!(hardy_weight_stack(1.0, 1, LogDepth(1)).is_err());
        assert!(hardy_weight_stack(2.0, 1, LogDepth(2)).is_err());
    }

    #[test]
    fn thresholds() {
        let z: alloc::vec::Vec<f64> = (0..4)
            .map(|k| DomainThreshold::new(k, Variant::Zero).unwrap().value)
            .collect();
        assert_eq!(z[0], 0.0);
        assert_eq!(z[1], 1.0);
        assert!(close(z[2], E, 1e-15));
        assert!(close(z[3], E.powf(E), 1e-14));
        for k in 0..3 {
            let one = DomainThreshold::new(k, Variant::One).unwrap().value;
            let next = DomainThreshold::new(k + 1, Variant::One).unwrap().value;
            assert!(one > z[k as usize]);
            assert!(next > one);
        }
        assert!(DomainThreshold::new(4, Variant::Zero).is_err());
    }

    #[test]
    fn threshold_images() {
        let t = DomainThreshold::new(1, Variant::Zero).unwrap();
        assert_eq!(t.transformed(2), f64::NEG_INFINITY);
        let t = DomainThreshold::new(1, Variant::One).unwrap();
        assert_eq!(t.transformed(2), 0.0);
        let t = DomainThreshold::new(2, Variant::Zero).unwrap();
        assert_eq!(t.transformed(1), 1.0);
        let t = DomainThreshold::new(3, Variant::One).unwrap();
        assert!(close(t.transformed(2), E, 1e-15));
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy(3, 2).unwrap(), 5);
        assert_eq!(degeneracy(4, 1).unwrap(), 4);
        for d in 2..12 {
            assert_eq!(degeneracy(d, 0).unwrap(), 1);
        }
        assert_eq!(degeneracy(2, 7).unwrap(), 2);
        assert!(degeneracy(1, 0).is_err());
    }

    #[test]
    fn sphere_area_examples() {
        assert!(close(sphere_area(1).unwrap(), 2.0, 1e-14));
        assert!(close(sphere_area(2).unwrap(), 2.0 * PI, 1e-14));
        assert!(close(sphere_area(3).unwrap(), 4.0 * PI, 1e-14));
        assert!(close(sphere_area(5).unwrap(), 8.0 * PI * PI / 3.0, 1e-13));
        assert!(sphere_area(0).is_err());
    }

    #[test]
    fn gamma_half_integers() {
        let sqrt_pi = libm::sqrt(PI);
        assert!(close(gamma(0.5), sqrt_pi, 1e-14));
        assert!(close(gamma(2.5), 0.75 * sqrt_pi, 1e-14));
        assert!(close(gamma(30.0), 8.841_761_993_739_701e30, 1e-13));
        assert!(close(gamma(-0.5), -2.0 * sqrt_pi, 1e-13));
    }
}
