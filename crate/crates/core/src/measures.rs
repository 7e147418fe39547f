//! The coordinate distribution: the law of each i.i.d. `x_j`.
//!
//! Five families are supported. Each provides its absolute moments
//! `m_r = E|x|^r`, mean and variance, the partition constant `C(M, ω)` (both by
//! exhaustive enumeration and in closed form), and an inverse-transform
//! sampler.

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::integrate_adaptive;
use crate::rng::{uniform, uniform_open};

/// Largest order accepted by [`MeasureSpec::c_constant_enum`].
pub const MAX_ENUM_ORDER: u32 = 24;

/// Relative tolerance of the logistic moment quadrature.
pub const LOGISTIC_MOMENT_TOL: f64 = 1e-10;

/// Distribution of a single coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MeasureSpec {
    /// Uniform on `[0, 1]`.
    Uniform01,
    /// Uniform on `[-1/2, 1/2]`.
    UniformSym,
    /// Density `exp(-x/λ)/λ` on `[0, ∞)`.
    Exponential { scale: f64 },
    /// Density `exp(-x/λ) / (λ (1 + exp(-x/λ))²)` on `ℝ`.
    Logistic { scale: f64 },
    /// Centered normal with variance `σ²`.
    Gaussian { variance: f64 },
}

/// Closed-form knowledge about `C(M, ω)`: an exact value, a strict two-sided
/// bracket, or only an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BoundValue {
    Exact { value: f64 },
    Interval { lo: f64, hi: f64 },
    UpperBound { value: f64 },
}

impl BoundValue {
    pub fn kind_name(&self) -> &'static str {
        match self {
            BoundValue::Exact { .. } => "Exact",
            BoundValue::Interval { .. } => "Interval",
            BoundValue::UpperBound { .. } => "UpperBound",
        }
    }

    /// Largest value compatible with this knowledge.
    pub fn upper(&self) -> f64 {
        match *self {
            BoundValue::Exact { value } | BoundValue::UpperBound { value } => value,
            BoundValue::Interval { hi, .. } => hi,
        }
    }

    /// Whether `x` is consistent with the closed form, with relative slack `rel`
    /// applied to exact values and upper bounds. Interval endpoints are strict.
    pub fn admits(&self, x: f64, rel: f64) -> bool {
        match *self {
            BoundValue::Exact { value } => (x - value).abs() <= rel * value.abs(),
            BoundValue::Interval { lo, hi } => lo < x && x < hi,
            BoundValue::UpperBound { value } => x <= value * (1.0 + rel),
        }
    }
}

impl MeasureSpec {
    pub fn exponential(scale: f64) -> Result<Self> {
        let m = MeasureSpec::Exponential { scale };
        m.validate()?;
        Ok(m)
    }

    pub fn logistic(scale: f64) -> Result<Self> {
        let m = MeasureSpec::Logistic { scale };
        m.validate()?;
        Ok(m)
    }

    pub fn gaussian(variance: f64) -> Result<Self> {
        let m = MeasureSpec::Gaussian { variance };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MeasureSpec::Exponential { scale } | MeasureSpec::Logistic { scale } => {
                if !(scale.is_finite() && scale > 0.0) {
                    return Err(Error::arg(format!("scale must be positive, got {scale}")));
                }
            }
            MeasureSpec::Gaussian { variance } => {
                if !(variance.is_finite() && variance > 0.0) {
                    return Err(Error::arg(format!("variance must be positive, got {variance}")));
                }
            }
            MeasureSpec::Uniform01 | MeasureSpec::UniformSym => {}
        }
        Ok(())
    }

    pub fn name(&self) -> String {
        match *self {
            MeasureSpec::Uniform01 => "Uniform01".into(),
            MeasureSpec::UniformSym => "UniformSym".into(),
            MeasureSpec::Exponential { scale } => format!("Exponential(scale={scale})"),
            MeasureSpec::Logistic { scale } => format!("Logistic(scale={scale})"),
            MeasureSpec::Gaussian { variance } => format!("Gaussian(variance={variance})"),
        }
    }

    /// True when the support lies in `[0, ∞)`.
    pub fn nonnegative_support(&self) -> bool {
        matches!(self, MeasureSpec::Uniform01 | MeasureSpec::Exponential { .. })
    }

    /// True for the three families that are symmetric about zero.
    pub fn is_symmetric(&self) -> bool {
        !self.nonnegative_support()
    }

    /// Essential supremum of `|x|`, when finite.
    pub fn sup_abs(&self) -> Option<f64> {
        match self {
            MeasureSpec::Uniform01 => Some(1.0),
            MeasureSpec::UniformSym => Some(0.5),
            _ => None,
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            MeasureSpec::Uniform01 => 0.5,
            MeasureSpec::Exponential { scale } => scale,
            _ => 0.0,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            MeasureSpec::Uniform01 | MeasureSpec::UniformSym => 1.0 / 12.0,
            MeasureSpec::Exponential { scale } => scale * scale,
            MeasureSpec::Logistic { scale } => {
                scale * scale * std::f64::consts::PI * std::f64::consts::PI / 3.0
            }
            MeasureSpec::Gaussian { variance } => variance,
        }
    }

    /// Absolute moment `m_r = E|x|^r` for `r ≥ 1`.
    pub fn moment_abs(&self, r: u32) -> Result<f64> {
        if r == 0 {
            return Err(Error::arg("moment order must be at least 1"));
        }
        self.validate()?;
        let rf = r as f64;
        Ok(match *self {
            MeasureSpec::Uniform01 => 1.0 / (rf + 1.0),
            MeasureSpec::UniformSym => 0.5f64.powi(r as i32) / (rf + 1.0),
            MeasureSpec::Exponential { scale } => scale.powi(r as i32) * factorial_f64(r),
            MeasureSpec::Gaussian { variance } => {
                let sigma = variance.sqrt();
                let odd_factor = if r % 2 == 1 {
                    (2.0 / std::f64::consts::PI).sqrt()
                } else {
                    1.0
                };
                sigma.powi(r as i32) * double_factorial_f64(r - 1) * odd_factor
            }
            MeasureSpec::Logistic { scale } => logistic_moment(scale, r)?,
        })
    }

    /// `C(M, ω)`: the maximum of `Π m_{r_j}` over all integer partitions of `M`.
    pub fn c_constant_enum(&self, order: u32) -> Result<f64> {
        if order == 0 || order > MAX_ENUM_ORDER {
            return Err(Error::arg(format!(
                "partition order must lie in 1..={MAX_ENUM_ORDER}, got {order}"
            )));
        }
        let moments = (1..=order)
            .map(|r| self.moment_abs(r))
            .collect::<Result<Vec<_>>>()?;
        let mut best = f64::NEG_INFINITY;
        for_each_partition(order, |parts| {
            let p: f64 = parts.iter().map(|&r| moments[r as usize - 1]).product();
            if p > best {
                best = p;
            }
        });
        Ok(best)
    }

    /// Closed-form value or bracket of `C(M, ω)`.
    pub fn c_constant_closed(&self, order: u32) -> Result<BoundValue> {
        if order == 0 {
            return Err(Error::arg("partition order must be at least 1"));
        }
        self.validate()?;
        let m = order as f64;
        Ok(match *self {
            MeasureSpec::Uniform01 => BoundValue::Exact { value: 1.0 / (m + 1.0) },
            MeasureSpec::UniformSym => BoundValue::Exact {
                value: 0.5f64.powi(order as i32) / (m + 1.0),
            },
            MeasureSpec::Exponential { scale } => BoundValue::Exact {
                value: scale.powi(order as i32) * factorial_f64(order),
            },
            MeasureSpec::Logistic { scale } => {
                let base = scale.powi(order as i32) * factorial_f64(order);
                BoundValue::Interval {
                    lo: 0.5 * base,
                    hi: 2.0 * base,
                }
            }
            MeasureSpec::Gaussian { variance } => BoundValue::UpperBound {
                value: variance.sqrt().powi(order as i32) * double_factorial_f64(order - 1),
            },
        })
    }

    /// `C(M, ω)` by enumeration inside the guard, otherwise the closed-form
    /// upper value.
    pub fn c_constant(&self, order: u32) -> Result<f64> {
        if order <= MAX_ENUM_ORDER {
            self.c_constant_enum(order)
        } else {
            Ok(self.c_constant_closed(order)?.upper())
        }
    }

    /// One draw from the measure.
    ///
    /// Uniform, exponential and logistic use the inverse CDF of a single
    /// uniform. The Gaussian uses the cosine branch of Box–Muller on two
    /// uniforms, `σ √(-2 ln u₁) cos(2π u₂)` with `u₁ ∈ (0, 1)`.
    #[inline]
    pub fn draw<R: RngCore>(&self, rng: &mut R) -> f64 {
        match *self {
            MeasureSpec::Uniform01 => uniform(rng),
            MeasureSpec::UniformSym => uniform(rng) - 0.5,
            MeasureSpec::Exponential { scale } => -scale * (1.0 - uniform(rng)).ln(),
            MeasureSpec::Logistic { scale } => {
                let u = uniform_open(rng);
                scale * (u / (1.0 - u)).ln()
            }
            MeasureSpec::Gaussian { variance } => {
                let u1 = uniform_open(rng);
                let u2 = uniform(rng);
                variance.sqrt()
                    * (-2.0 * u1.ln()).sqrt()
                    * (2.0 * std::f64::consts::PI * u2).cos()
            }
        }
    }

    /// `n` i.i.d. draws.
    pub fn sample<R: RngCore>(&self, rng: &mut R, n: usize) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::arg("sample count must be at least 1"));
        }
        self.validate()?;
        Ok((0..n).map(|_| self.draw(rng)).collect())
    }
}

/// `m_r` of the logistic law: `2 λ^r ∫₀^∞ t^r e^{-t} / (1 + e^{-t})² dt`.
///
/// The integral is cut at `T ≥ 40` where the discarded part, bounded by
/// `Γ(r+1, T)`, falls below `1e-3` of the target tolerance.
fn logistic_moment(scale: f64, r: u32) -> Result<f64> {
    let fact = factorial_f64(r);
    let target = LOGISTIC_MOMENT_TOL * 0.25 * fact;
    let mut cut = 40.0f64;
    while upper_incomplete_gamma_int(r, cut) > 1e-3 * target {
        cut += 10.0;
    }
    let rf = r as i32;
    let integrand = |t: f64| {
        let e = (-t).exp();
        t.powi(rf) * e / ((1.0 + e) * (1.0 + e))
    };
    let integral = integrate_adaptive(integrand, 0.0, cut, 1e-3 * LOGISTIC_MOMENT_TOL, 0.0, 4000)?;
    let value = 2.0 * scale.powi(rf) * integral.value;
    let base = scale.powi(rf) * fact;
    if !(0.5 * base < value && value < 2.0 * base) {
        return Err(Error::Numeric {
            message: format!("logistic moment m_{r} = {value} escaped its bracket"),
            achieved_tolerance: Some(integral.error / integral.value.abs()),
        });
    }
    Ok(value)
}

/// `Γ(r+1, T) = r! e^{-T} Σ_{i≤r} T^i / i!` for integer `r`.
fn upper_incomplete_gamma_int(r: u32, t: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for i in 1..=r {
        term *= t / i as f64;
        sum += term;
    }
    factorial_f64(r) * (-t).exp() * sum
}

/// `k!!`, the product `k (k-2) (k-4) ⋯` down to 1 or 2; `0!! = 1`.
///
/// Returns `None` when the result does not fit in `u128`.
pub fn double_factorial(k: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut j = k;
    while j >= 2 {
        acc = acc.checked_mul(j as u128)?;
        j -= 2;
    }
    Some(acc)
}

/// `k!!` as a float. Exact integer arithmetic up to `k = 20`; beyond that the
/// product is accumulated in `f64` (relative error a few ulps).
pub fn double_factorial_f64(k: u32) -> f64 {
    if k <= 20 {
        return double_factorial(k).expect("20!! fits in u128") as f64;
    }
    let mut acc = 1.0f64;
    let mut j = k;
    while j >= 2 {
        acc *= j as f64;
        j -= 2;
    }
    acc
}

/// `n!` as a float, exact through `n = 20`.
pub fn factorial_f64(n: u32) -> f64 {
    if n <= 20 {
        return (1..=n as u64).product::<u64>() as f64;
    }
    (1..=n).map(|i| i as f64).product()
}

/// Calls `visit` with every partition of `n` into positive parts, each listed
/// with non-increasing parts, in lexicographically descending order
/// (`[n]` first, `[1, 1, …]` last).
pub fn for_each_partition<F: FnMut(&[u32])>(n: u32, mut visit: F) {
    fn rec<F: FnMut(&[u32])>(remaining: u32, max_part: u32, parts: &mut Vec<u32>, visit: &mut F) {
        if remaining == 0 {
            visit(parts);
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            parts.push(p);
            rec(remaining - p, p, parts, visit);
            parts.pop();
        }
    }
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut parts = Vec::with_capacity(n as usize);
    rec(n, n, &mut parts, &mut visit);
}

/// All partitions of `n`, in the order of [`for_each_partition`].
pub fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_partition(n, |p| out.push(p.to_vec()));
    out
}
