//! Kernel families on the real line and their derived constants.
//!
//! * fractional Wiener `K_β(x, y) = (|x|^{2β} + |y|^{2β} - |x - y|^{2β}) / 2`
//! * `r`-folded Wiener on `[0, ∞)`, `∫₀^∞ (x-t)₊^{r-1} (y-t)₊^{r-1} dt / ((r-1)!)²`
//! * its two-sided extension, zero across the origin
//! * Korobov, `Σ_h w(h) e^{2πih(x-y)}`, evaluated in cosine form
//! * Hermite, `Σ_ℓ w(ℓ) H_ℓ(x) H_ℓ(y)` with orthonormal probabilists' `H_ℓ`
//!
//! The two series kernels are truncated at a cap chosen so that the discarded
//! weight mass is below a tolerance; see [`Kernel::series_cap`].

use serde::{Deserialize, Serialize};

use crate::coefficients::{power_tail, zeta};
use crate::error::{Error, Result};
use crate::measures::factorial_f64;
use crate::quadrature::GaussLegendre;

/// Default discarded-mass tolerance for series kernels.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
/// Largest Korobov cap the constructor will pick.
pub const MAX_KOROBOV_CAP: usize = 1_000_000;
/// Largest Hermite degree; the recurrence is overflow-free for `ℓ ≤ 200`, `|x| ≤ 20`.
pub const MAX_HERMITE_CAP: usize = 200;
/// Absolute threshold (scaled by `max(1, K(x,x) + K(y,y))`) below which a
/// negative squared distance is treated as rounding and clamped to zero.
pub const CLAMP_TOL: f64 = 1e-12;
/// Cramér's constant: `|H_ℓ(x)| ≤ K e^{x²/4}` for orthonormal `H_ℓ`.
pub const CRAMER_CONSTANT: f64 = 1.086_435;

/// Symmetric positive weight sequence of a series kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum WeightFunction {
    /// `w(h) = max(1, |h|)^{-2α}`.
    PolynomialDecay { alpha: f64 },
    /// `w(h) = q^{|h|}`, `0 < q < 1`.
    GeometricDecay { q: f64 },
}

impl WeightFunction {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightFunction::PolynomialDecay { alpha } => {
                if !(alpha.is_finite() && alpha > 0.5) {
                    return Err(Error::arg(format!(
                        "polynomial weights need alpha > 1/2 to be summable, got {alpha}"
                    )));
                }
            }
            WeightFunction::GeometricDecay { q } => {
                if !(q > 0.0 && q < 1.0) {
                    return Err(Error::arg(format!("geometric weights need 0 < q < 1, got {q}")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn weight(&self, h: i64) -> f64 {
        let a = h.unsigned_abs();
        match *self {
            WeightFunction::PolynomialDecay { alpha } => {
                if a <= 1 {
                    1.0
                } else {
                    (a as f64).powf(-2.0 * alpha)
                }
            }
            WeightFunction::GeometricDecay { q } => q.powi(a.min(i32::MAX as u64) as i32),
        }
    }

    /// `Σ_{h > cap} w(h)` (one side only).
    pub fn tail(&self, cap: usize) -> f64 {
        match *self {
            WeightFunction::PolynomialDecay { alpha } => power_tail(2.0 * alpha, cap.max(1)),
            WeightFunction::GeometricDecay { q } => q.powf(cap as f64 + 1.0) / (1.0 - q),
        }
    }

    /// `C_r = (Σ_{h≥1} h² w(h))^{1/2}`.
    pub fn korobov_cr(&self) -> Result<f64> {
        self.validate()?;
        match *self {
            WeightFunction::PolynomialDecay { alpha } => {
                if alpha <= 1.5 {
                    return Err(Error::arg(format!(
                        "sum of h^2 w(h) diverges for alpha = {alpha} <= 3/2"
                    )));
                }
                Ok(zeta(2.0 * alpha - 2.0)?.sqrt())
            }
            WeightFunction::GeometricDecay { q } => {
                Ok((q * (1.0 + q) / (1.0 - q).powi(3)).sqrt())
            }
        }
    }

    /// `V = Σ_{ℓ≥1} w(ℓ) ℓ^{11/6}`.
    pub fn hermite_v(&self) -> Result<f64> {
        const P: f64 = 11.0 / 6.0;
        self.validate()?;
        match *self {
            WeightFunction::PolynomialDecay { alpha } => {
                if 2.0 * alpha <= 17.0 / 6.0 {
                    return Err(Error::arg(format!(
                        "sum of w(l) l^(11/6) diverges for 2*alpha = {} <= 17/6",
                        2.0 * alpha
                    )));
                }
                zeta(2.0 * alpha - P)
            }
            WeightFunction::GeometricDecay { q } => {
                let term = |l: f64| q.powf(l) * l.powf(P);
                let mut terms = Vec::new();
                let mut l = 1.0f64;
                loop {
                    terms.push(term(l));
                    // Past the peak the terms shrink at least geometrically
                    // with ratio rho; bound the rest by a geometric series.
                    let rho = q * ((l + 2.0) / (l + 1.0)).powf(P);
                    let partial: f64 = terms.iter().sum();
                    if rho < 1.0 && term(l + 1.0) / (1.0 - rho) <= 1e-17 * partial {
                        break;
                    }
                    l += 1.0;
                    if l > 1e7 {
                        return Err(Error::numeric("hermite V series failed to converge"));
                    }
                }
                Ok(terms.iter().rev().sum())
            }
        }
    }
}

fn default_tail_tol() -> f64 {
    DEFAULT_TAIL_TOL
}

/// Serializable kernel description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum KernelSpec {
    FractionalWiener {
        beta: f64,
    },
    RFoldedWiener {
        r: u32,
    },
    TwoSidedRFolded {
        r: u32,
    },
    Korobov {
        weight: WeightFunction,
        #[serde(default)]
        series_cap: Option<usize>,
        #[serde(default = "default_tail_tol")]
        tail_tol: f64,
    },
    Hermite {
        weight: WeightFunction,
        #[serde(default)]
        series_cap: Option<usize>,
        #[serde(default = "default_tail_tol")]
        tail_tol: f64,
    },
}

impl KernelSpec {
    pub fn korobov(weight: WeightFunction) -> Self {
        KernelSpec::Korobov {
            weight,
            series_cap: None,
            tail_tol: DEFAULT_TAIL_TOL,
        }
    }

    pub fn hermite(weight: WeightFunction) -> Self {
        KernelSpec::Hermite {
            weight,
            series_cap: None,
            tail_tol: DEFAULT_TAIL_TOL,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            KernelSpec::FractionalWiener { .. } => "FractionalWiener",
            KernelSpec::RFoldedWiener { .. } => "RFoldedWiener",
            KernelSpec::TwoSidedRFolded { .. } => "TwoSidedRFolded",
            KernelSpec::Korobov { .. } => "Korobov",
            KernelSpec::Hermite { .. } => "Hermite",
        }
    }
}

/// Where a kernel's arguments may live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    Real,
    NonNegative,
    /// `[0, 1]`, extended 1-periodically to the whole line.
    PeriodicUnit,
}

#[derive(Debug, Clone)]
enum Repr {
    Fractional {
        two_beta: f64,
    },
    Folded {
        rule: GaussLegendre,
        power: i32,
        norm: f64,
        two_sided: bool,
    },
    Korobov {
        w0: f64,
        /// `w(1), …, w(H)`.
        weights: Vec<f64>,
        diag: f64,
    },
    Hermite {
        /// `w(0), …, w(L)`.
        weights: Vec<f64>,
    },
}

/// A constructed kernel, ready for evaluation.
#[derive(Debug, Clone)]
pub struct Kernel {
    spec: KernelSpec,
    repr: Repr,
    tail_mass: f64,
}

fn choose_cap(weight: &WeightFunction, factor: f64, tol: f64, max_cap: usize) -> Result<usize> {
    // Exponential search then bisection on the monotone tail.
    let ok = |h: usize| factor * weight.tail(h) <= tol;
    let mut hi = 1usize;
    while !ok(hi) {
        if hi >= max_cap {
            return Err(Error::arg(format!(
                "tail tolerance {tol} needs more than {max_cap} series terms"
            )));
        }
        hi = (hi * 2).min(max_cap);
    }
    let mut lo = 0usize;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(if ok(lo) { lo } else { hi })
}

impl Kernel {
    pub fn new(spec: KernelSpec) -> Result<Self> {
        let (repr, tail_mass) = match &spec {
            KernelSpec::FractionalWiener { beta } => {
                if !(*beta > 0.0 && *beta < 1.0) {
                    return Err(Error::arg(format!("fractional Wiener needs 0 < beta < 1, got {beta}")));
                }
                (Repr::Fractional { two_beta: 2.0 * beta }, 0.0)
            }
            KernelSpec::RFoldedWiener { r } | KernelSpec::TwoSidedRFolded { r } => {
                if *r < 2 {
                    return Err(Error::arg(format!("folded Wiener kernels need r >= 2, got {r}")));
                }
                let f = factorial_f64(r - 1);
                (
                    Repr::Folded {
                        rule: GaussLegendre::new(*r as usize)?,
                        power: *r as i32 - 1,
                        norm: 1.0 / (f * f),
                        two_sided: matches!(spec, KernelSpec::TwoSidedRFolded { .. }),
                    },
                    0.0,
                )
            }
            KernelSpec::Korobov {
                weight,
                series_cap,
                tail_tol,
            } => {
                weight.validate()?;
                let cap = match series_cap {
                    Some(c) => *c,
                    None => choose_cap(weight, 2.0, *tail_tol, MAX_KOROBOV_CAP)?,
                };
                let tail = 2.0 * weight.tail(cap);
                if tail > *tail_tol {
                    return Err(Error::arg(format!(
                        "Korobov cap {cap} leaves tail {tail:e} above tolerance {tail_tol:e}"
                    )));
                }
                let weights: Vec<f64> = (1..=cap as i64).map(|h| weight.weight(h)).collect();
                let w0 = weight.weight(0);
                let diag = w0 + 2.0 * weights.iter().rev().sum::<f64>();
                (Repr::Korobov { w0, weights, diag }, tail)
            }
            KernelSpec::Hermite {
                weight,
                series_cap,
                tail_tol,
            } => {
                weight.validate()?;
                let cap = match series_cap {
                    Some(c) => *c,
                    None => choose_cap(weight, 1.0, *tail_tol, MAX_HERMITE_CAP)?,
                };
                if cap > MAX_HERMITE_CAP {
                    return Err(Error::arg(format!(
                        "Hermite cap {cap} exceeds the supported {MAX_HERMITE_CAP}"
                    )));
                }
                let tail = weight.tail(cap);
                if tail > *tail_tol {
                    return Err(Error::arg(format!(
                        "Hermite cap {cap} leaves weight tail {tail:e} above tolerance {tail_tol:e}"
                    )));
                }
                let weights = (0..=cap as i64).map(|l| weight.weight(l)).collect();
                (Repr::Hermite { weights }, tail)
            }
        };
        Ok(Self {
            spec,
            repr,
            tail_mass,
        })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn domain(&self) -> Domain {
        match &self.spec {
            KernelSpec::RFoldedWiener { .. } => Domain::NonNegative,
            KernelSpec::Korobov { .. } => Domain::PeriodicUnit,
            _ => Domain::Real,
        }
    }

    /// Truncation index of a series kernel (`H` or `L`).
    pub fn series_cap(&self) -> Option<usize> {
        match &self.repr {
            Repr::Korobov { weights, .. } => Some(weights.len()),
            Repr::Hermite { weights } => Some(weights.len() - 1),
            _ => None,
        }
    }

    /// Weight mass discarded by the truncation. For Korobov this bounds the
    /// pointwise error; for Hermite the pointwise error is at most
    /// `K² e^{(x²+y²)/4}` times this value, `K` Cramér's constant.
    pub fn discarded_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Pointwise bound on the series truncation error at `(x, y)`.
    pub fn truncation_bound(&self, x: f64, y: f64) -> f64 {
        match self.repr {
            Repr::Hermite { .. } => {
                CRAMER_CONSTANT * CRAMER_CONSTANT * ((x * x + y * y) / 4.0).exp() * self.tail_mass
            }
            _ => self.tail_mass,
        }
    }

    fn check_domain(&self, x: f64, y: f64) -> Result<()> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::arg(format!("kernel arguments must be finite, got ({x}, {y})")));
        }
        if self.domain() == Domain::NonNegative && (x < 0.0 || y < 0.0) {
            return Err(Error::arg(format!(
                "r-folded Wiener kernel is defined on [0, inf), got ({x}, {y})"
            )));
        }
        Ok(())
    }

    /// `K(x, y)`.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.check_domain(x, y)?;
        let v = self.eval_raw(x, y);
        if !v.is_finite() {
            return Err(Error::numeric(format!("kernel overflow at ({x}, {y})")));
        }
        Ok(v)
    }

    #[inline]
    fn eval_raw(&self, x: f64, y: f64) -> f64 {
        match &self.repr {
            Repr::Fractional { two_beta } => {
                0.5 * (x.abs().powf(*two_beta) + y.abs().powf(*two_beta)
                    - (x - y).abs().powf(*two_beta))
            }
            Repr::Folded {
                rule,
                power,
                norm,
                two_sided,
            } => {
                let (x, y) = if *two_sided {
                    if x * y < 0.0 {
                        return 0.0;
                    }
                    (x.abs(), y.abs())
                } else {
                    (x, y)
                };
                let m = x.min(y);
                if m <= 0.0 {
                    return 0.0;
                }
                norm * rule.integrate(0.0, m, |t| ((x - t) * (y - t)).powi(*power))
            }
            Repr::Korobov { w0, weights, .. } => {
                let theta = 2.0 * std::f64::consts::PI * (x - y);
                let s: f64 = weights
                    .iter()
                    .enumerate()
                    .rev()
                    .map(|(i, w)| w * (theta * (i + 1) as f64).cos())
                    .sum();
                w0 + 2.0 * s
            }
            Repr::Hermite { weights } => {
                let (_, _, xy) = hermite_sums(weights, x, y);
                xy
            }
        }
    }

    /// `K(x,x) + K(y,y) - 2 K(x,y)`, the squared RKHS distance between
    /// `K(·,x)` and `K(·,y)`.
    pub fn sq_distance(&self, x: f64, y: f64) -> Result<f64> {
        self.check_domain(x, y)?;
        let (xx, yy, xy) = match &self.repr {
            Repr::Hermite { weights } => hermite_sums(weights, x, y),
            Repr::Korobov { diag, .. } => (*diag, *diag, self.eval_raw(x, y)),
            _ => (self.eval_raw(x, x), self.eval_raw(y, y), self.eval_raw(x, y)),
        };
        let v = xx + yy - 2.0 * xy;
        if !v.is_finite() {
            return Err(Error::numeric(format!("kernel overflow at ({x}, {y})")));
        }
        if v < 0.0 {
            if v >= -CLAMP_TOL * (xx + yy).abs().max(1.0) {
                return Ok(0.0);
            }
            return Err(Error::numeric(format!(
                "squared distance {v:e} at ({x}, {y}) is negative beyond rounding"
            )));
        }
        Ok(v)
    }
}

/// `(Σ w H_ℓ(x)², Σ w H_ℓ(y)², Σ w H_ℓ(x) H_ℓ(y))` in one recurrence pass.
fn hermite_sums(weights: &[f64], x: f64, y: f64) -> (f64, f64, f64) {
    let (mut px0, mut px1) = (1.0, x);
    let (mut py0, mut py1) = (1.0, y);
    let mut sxx = weights[0];
    let mut syy = weights[0];
    let mut sxy = weights[0];
    if weights.len() > 1 {
        sxx += weights[1] * (x * x);
        syy += weights[1] * (y * y);
        sxy += weights[1] * (x * y);
    }
    for (l, w) in weights.iter().enumerate().skip(2) {
        let lm1 = (l - 1) as f64;
        let scale = 1.0 / (l as f64).sqrt();
        let px2 = (x * px1 - lm1.sqrt() * px0) * scale;
        let py2 = (y * py1 - lm1.sqrt() * py0) * scale;
        sxx += w * (px2 * px2);
        syy += w * (py2 * py2);
        sxy += w * (px2 * py2);
        px0 = px1;
        px1 = px2;
        py0 = py1;
        py1 = py2;
    }
    (sxx, syy, sxy)
}

/// Orthonormal probabilists' Hermite polynomial `H_ℓ(x)`, via
/// `H_{ℓ+1} = (x H_ℓ - √ℓ H_{ℓ-1}) / √(ℓ+1)`.
pub fn hermite_poly(l: usize, x: f64) -> f64 {
    let mut p0 = 1.0;
    if l == 0 {
        return p0;
    }
    let mut p1 = x;
    for k in 1..l {
        let kf = k as f64;
        let p2 = (x * p1 - kf.sqrt() * p0) / (kf + 1.0).sqrt();
        p0 = p1;
        p1 = p2;
    }
    p1
}
