//! The coefficient sequence `(ξ_j)` and its tail sums.
//!
//! `PowerLaw { decay: a }` is `ξ_j = j^{-a}` with `a > 1`, which certifies
//! `Σ |ξ_j| < ∞`. Its tails are computed by summing the next few dozen terms
//! directly and closing with an Euler–Maclaurin remainder, which is accurate to
//! a few ulps for every `k`. `FiniteList` is zero beyond its last entry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CoefficientSequence {
    PowerLaw { decay: f64 },
    FiniteList { values: Vec<f64> },
}

impl CoefficientSequence {
    pub fn power_law(decay: f64) -> Result<Self> {
        let s = CoefficientSequence::PowerLaw { decay };
        s.validate()?;
        Ok(s)
    }

    pub fn finite(values: Vec<f64>) -> Result<Self> {
        let s = CoefficientSequence::FiniteList { values };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CoefficientSequence::PowerLaw { decay } => {
                if !(decay.is_finite() && *decay > 1.0) {
                    return Err(Error::arg(format!(
                        "power-law decay must exceed 1 for absolute summability, got {decay}"
                    )));
                }
            }
            CoefficientSequence::FiniteList { values } => {
                if let Some(v) = values.iter().find(|v| !v.is_finite()) {
                    return Err(Error::arg(format!("non-finite coefficient {v}")));
                }
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        match self {
            CoefficientSequence::PowerLaw { decay } => format!("PowerLaw(xi_j=j^-{decay})"),
            CoefficientSequence::FiniteList { values } => format!("FiniteList(len={})", values.len()),
        }
    }

    /// `ξ_j` for `j ≥ 1`.
    pub fn xi(&self, j: usize) -> Result<f64> {
        if j == 0 {
            return Err(Error::arg("coefficient index starts at 1"));
        }
        Ok(self.xi_unchecked(j))
    }

    #[inline]
    pub(crate) fn xi_unchecked(&self, j: usize) -> f64 {
        match self {
            CoefficientSequence::PowerLaw { decay } => (j as f64).powf(-decay),
            CoefficientSequence::FiniteList { values } => values.get(j - 1).copied().unwrap_or(0.0),
        }
    }

    /// `ξ_1, …, ξ_n`.
    pub fn prefix(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|j| self.xi_unchecked(j)).collect()
    }

    /// Index past which every coefficient vanishes, if any.
    pub fn support_len(&self) -> Option<usize> {
        match self {
            CoefficientSequence::PowerLaw { .. } => None,
            CoefficientSequence::FiniteList { values } => {
                Some(values.iter().rposition(|v| *v != 0.0).map_or(0, |i| i + 1))
            }
        }
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            CoefficientSequence::PowerLaw { .. } => true,
            CoefficientSequence::FiniteList { values } => values.iter().all(|v| *v >= 0.0),
        }
    }

    /// `Σ_{j>k} |ξ_j|`.
    pub fn tail_abs_sum(&self, k: usize) -> f64 {
        match self {
            CoefficientSequence::PowerLaw { decay } => power_tail(*decay, k),
            CoefficientSequence::FiniteList { values } => tail_of(values, k, f64::abs),
        }
    }

    /// `Σ_{j>k} ξ_j`.
    pub fn tail_signed_sum(&self, k: usize) -> f64 {
        match self {
            CoefficientSequence::PowerLaw { decay } => power_tail(*decay, k),
            CoefficientSequence::FiniteList { values } => tail_of(values, k, |v| v),
        }
    }

    /// `Σ_{j>k} ξ_j²`.
    pub fn tail_sq_sum(&self, k: usize) -> f64 {
        match self {
            CoefficientSequence::PowerLaw { decay } => power_tail(2.0 * decay, k),
            CoefficientSequence::FiniteList { values } => tail_of(values, k, |v| v * v),
        }
    }

    /// `Σ_j |ξ_j|`.
    pub fn total_abs(&self) -> f64 {
        self.tail_abs_sum(0)
    }
}

fn tail_of(values: &[f64], k: usize, f: impl Fn(f64) -> f64) -> f64 {
    values.iter().skip(k).map(|&v| f(v)).sum()
}

/// Number of terms summed directly before the Euler–Maclaurin remainder.
fn direct_terms(exponent: f64) -> usize {
    32 + 2 * exponent.ceil() as usize
}

/// `Σ_{j>k} j^{-s}` for `s > 1`.
pub fn power_tail(s: f64, k: usize) -> f64 {
    debug_assert!(s > 1.0);
    let n = k + direct_terms(s);
    let nf = n as f64;
    // Σ_{j>n} j^{-s} = ∫_n^∞ - f(n)/2 - Σ B_{2i}/(2i)! f^{(2i-1)}(n) + R
    let fn_ = nf.powf(-s);
    let inv2 = 1.0 / (nf * nf);
    let p1 = s / nf;
    let p3 = p1 * (s + 1.0) * (s + 2.0) * inv2;
    let p5 = p3 * (s + 3.0) * (s + 4.0) * inv2;
    let p7 = p5 * (s + 5.0) * (s + 6.0) * inv2;
    let remainder = fn_
        * (nf / (s - 1.0) - 0.5 + p1 / 12.0 - p3 / 720.0 + p5 / 30_240.0 - p7 / 1_209_600.0);
    let mut sum = remainder;
    for j in (k + 1..=n).rev() {
        sum += (j as f64).powf(-s);
    }
    sum
}

/// Integral bracket `(1/((a-1)(k+1)^{a-1}), 1/((a-1)(k+1/2)^{a-1}))` around
/// `Σ_{j>k} j^{-a}`.
pub fn tail_bracket(a: f64, k: usize) -> Result<(f64, f64)> {
    if !(a.is_finite() && a > 1.0) {
        return Err(Error::arg(format!("tail bracket needs a > 1, got {a}")));
    }
    let kf = k as f64;
    let lo = 1.0 / ((a - 1.0) * (kf + 1.0).powf(a - 1.0));
    let hi = 1.0 / ((a - 1.0) * (kf + 0.5).powf(a - 1.0));
    Ok((lo, hi))
}

/// Riemann zeta function for real `a > 1`.
pub fn zeta(a: f64) -> Result<f64> {
    if !(a.is_finite() && a > 1.0) {
        return Err(Error::arg(format!("zeta needs a > 1, got {a}")));
    }
    Ok(power_tail(a, 0))
}
