//! Closed-form truncation-error bounds.
//!
//! Every function returns a certified upper bound on the truncation error
//! `e(k) = (E[K(Y∞,Y∞) + K(Y_k,Y_k) - 2K(Y∞,Y_k)])^{1/2}` (or on the
//! corresponding moment of `Y∞ - Y_k`) for the given measure, sequence and
//! truncation level. Reports carry a [`FormulaId`] naming the inequality used
//! and the preconditions it relied on.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coefficients::{tail_bracket, zeta, CoefficientSequence};
use crate::error::{Error, Result};
use crate::estimators::McEstimate;
use crate::kernels::{KernelSpec, WeightFunction};
use crate::measures::{factorial_f64, MeasureSpec};

/// Registry of bound formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaId {
    /// `(m₁ Σ_{j>k}|ξ_j|)^{2β}`, valid for `β ≤ 1/2`.
    #[serde(rename = "FR1")]
    Fr1,
    /// `((E x Σ_{j>k}ξ_j)² + Var x Σ_{j>k}ξ_j²)^β`.
    #[serde(rename = "GEN_BETA")]
    GenBeta,
    /// `(E x² Σ_{j>k}ξ_j²)^β` for centered measures.
    #[serde(rename = "ZERO_MEAN")]
    ZeroMean,
    /// `C(M, ω) (Σ_{j>k}|ξ_j|)^M`.
    #[serde(rename = "POWER_M")]
    PowerM,
    #[serde(rename = "RFOLD_B")]
    RFoldBounded,
    #[serde(rename = "RFOLD_U")]
    RFoldUnbounded,
    #[serde(rename = "TWOSIDED_B")]
    TwoSidedBounded,
    #[serde(rename = "TWOSIDED_U")]
    TwoSidedUnbounded,
    #[serde(rename = "KOROBOV")]
    Korobov,
    #[serde(rename = "HERMITE_B")]
    HermiteBounded,
    #[serde(rename = "HERMITE_S")]
    HermiteSplit,
}

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::Fr1 => "FR1",
            FormulaId::GenBeta => "GEN_BETA",
            FormulaId::ZeroMean => "ZERO_MEAN",
            FormulaId::PowerM => "POWER_M",
            FormulaId::RFoldBounded => "RFOLD_B",
            FormulaId::RFoldUnbounded => "RFOLD_U",
            FormulaId::TwoSidedBounded => "TWOSIDED_B",
            FormulaId::TwoSidedUnbounded => "TWOSIDED_U",
            FormulaId::Korobov => "KOROBOV",
            FormulaId::HermiteBounded => "HERMITE_B",
            FormulaId::HermiteSplit => "HERMITE_S",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Hölder condition `|g(x) - g(y)| ≤ C ‖g‖ |x - y|^β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderClass {
    pub constant: f64,
    pub beta: f64,
}

impl HolderClass {
    pub fn new(constant: f64, beta: f64) -> Result<Self> {
        let h = Self { constant, beta };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.constant.is_finite() && self.constant > 0.0) {
            return Err(Error::arg(format!("Hölder constant must be positive, got {}", self.constant)));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::arg(format!("Hölder exponent must lie in (0, 1], got {}", self.beta)));
        }
        Ok(())
    }
}

/// Hölder parameters of `G_p` (absolutely continuous, `g' ∈ L_p`):
/// `C = 1`, `β = 1/p*` with `1/p + 1/p* = 1`.
pub fn gp_space_params(p: f64) -> Result<HolderClass> {
    if p.is_nan() || p <= 1.0 {
        return Err(Error::arg(format!("G_p needs p > 1, got {p}")));
    }
    let beta = if p.is_infinite() { 1.0 } else { 1.0 - 1.0 / p };
    HolderClass::new(1.0, beta)
}

/// A computed bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub k: usize,
    pub value: f64,
    pub formula_id: FormulaId,
    pub assumptions: Vec<String>,
    pub inputs: BTreeMap<String, f64>,
}

impl BoundReport {
    fn new(k: usize, value: f64, formula_id: FormulaId) -> Result<Self> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::numeric(format!(
                "bound {formula_id} at k={k} evaluated to {value}"
            )));
        }
        Ok(Self {
            k,
            value,
            formula_id,
            assumptions: Vec::new(),
            inputs: BTreeMap::new(),
        })
    }

    fn assume(mut self, text: impl Into<String>) -> Self {
        self.assumptions.push(text.into());
        self
    }

    fn input(mut self, name: &str, value: f64) -> Self {
        self.inputs.insert(name.to_string(), value);
        self
    }

    fn sequence_note(self, seq: &CoefficientSequence) -> Self {
        match seq {
            CoefficientSequence::PowerLaw { decay } => self
                .assume(format!("xi_j = j^-{decay} (extremal member of |xi_j| <= j^-a)"))
                .input("a", *decay),
            CoefficientSequence::FiniteList { values } => {
                self.input("sequence_len", values.len() as f64)
            }
        }
    }
}

/// A moment bound together with the inequality that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentBound {
    pub value: f64,
    pub formula_id: FormulaId,
}

/// Smallest applicable bound on `E|Y∞ - Y_k|^{2β}`.
pub fn holder_moment_bound(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    beta: f64,
) -> Result<MomentBound> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::arg(format!("exponent beta must lie in (0, 1], got {beta}")));
    }
    measure.validate()?;
    let mean = measure.mean();
    let (second, formula) = if mean == 0.0 {
        (measure.moment_abs(2)? * seq.tail_sq_sum(k), FormulaId::ZeroMean)
    } else {
        let drift = mean * seq.tail_signed_sum(k);
        (
            drift * drift + measure.variance() * seq.tail_sq_sum(k),
            FormulaId::GenBeta,
        )
    };
    let mut best = MomentBound {
        value: second.powf(beta),
        formula_id: formula,
    };
    if beta <= 0.5 {
        let first = (measure.moment_abs(1)? * seq.tail_abs_sum(k)).powf(2.0 * beta);
        if first < best.value {
            best = MomentBound {
                value: first,
                formula_id: FormulaId::Fr1,
            };
        }
    }
    Ok(best)
}

/// `C (E|Y∞ - Y_k|^{2β})^{1/2}` with the moment replaced by its best bound.
pub fn holder_error_bound(
    holder: &HolderClass,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
) -> Result<BoundReport> {
    holder.validate()?;
    let m = holder_moment_bound(measure, seq, k, holder.beta)?;
    let mut report = BoundReport::new(k, holder.constant * m.value.sqrt(), m.formula_id)?
        .input("C", holder.constant)
        .input("beta", holder.beta)
        .sequence_note(seq);
    if m.formula_id == FormulaId::ZeroMean {
        report = report.assume("zero-mean coordinates");
    }
    Ok(report)
}

/// `C(M, ω) (Σ_{j>k} |ξ_j|)^M`, a bound on `E|Y∞ - Y_k|^M`.
///
/// Uses the enumerated constant and checks it against the closed form.
pub fn power_moment_bound(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    order: u32,
) -> Result<f64> {
    let c = measure.c_constant(order)?;
    let closed = measure.c_constant_closed(order)?;
    if !closed.admits(c, 1e-10) {
        return Err(Error::numeric(format!(
            "C({order}) = {c} disagrees with closed form {closed:?}"
        )));
    }
    Ok(c * seq.tail_abs_sum(k).powi(order as i32))
}

/// `c_r = (1/(2r-1) + (r-1)²/(2r-3))^{1/2} / (r-1)!`.
pub fn c_r(r: u32) -> Result<f64> {
    if r < 2 {
        return Err(Error::arg(format!("c_r needs r >= 2, got {r}")));
    }
    let rf = r as f64;
    let bracket = 1.0 / (2.0 * rf - 1.0) + (rf - 1.0).powi(2) / (2.0 * rf - 3.0);
    Ok(bracket.sqrt() / factorial_f64(r - 1))
}

/// The simpler majorant `(2r/3)^{1/2} / (r-1)!` of `c_r`.
pub fn c_r_majorant(r: u32) -> Result<f64> {
    if r < 2 {
        return Err(Error::arg(format!("c_r needs r >= 2, got {r}")));
    }
    Ok((2.0 * r as f64 / 3.0).sqrt() / factorial_f64(r - 1))
}

/// Whether a bound may use an essential supremum of the path sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupMode {
    /// Use `‖Y∞‖_∞` (or `‖Y∞^abs‖_∞`); refused unless it is known analytically.
    Bounded,
    /// Use moments of order 4 and `4r - 6` instead.
    Unbounded,
}

/// Analytic `‖Y∞^abs‖_∞ = sup|x| Σ|ξ_j|` for bounded coordinates.
fn sup_abs_sum(measure: &MeasureSpec, seq: &CoefficientSequence) -> Result<f64> {
    match measure.sup_abs() {
        Some(s) => Ok(s * seq.total_abs()),
        None => Err(Error::Refused(format!(
            "sup of the path sum is not certified for {} (unbounded support); use Unbounded mode",
            measure.name()
        ))),
    }
}

fn second_moment_term(measure: &MeasureSpec, tail: f64, tail_sq: f64) -> f64 {
    let drift = measure.mean() * tail;
    drift * drift + measure.variance() * tail_sq
}

/// Bound for the `r`-folded Wiener kernel on `[0, ∞)`.
pub fn rfolded_bound(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    r: u32,
    mode: SupMode,
) -> Result<BoundReport> {
    if !measure.nonnegative_support() {
        return Err(Error::arg(format!(
            "r-folded Wiener kernel needs nonnegative coordinates, {} has negative support",
            measure.name()
        )));
    }
    if !seq.is_nonnegative() {
        return Err(Error::arg("r-folded Wiener kernel needs xi_j >= 0"));
    }
    let cr = c_r(r)?;
    let exponent = r as f64 - 1.5;
    let report = match mode {
        SupMode::Bounded => {
            let sup = sup_abs_sum(measure, seq)?;
            let second = second_moment_term(measure, seq.tail_signed_sum(k), seq.tail_sq_sum(k));
            BoundReport::new(k, cr * sup.powf(exponent) * second.sqrt(), FormulaId::RFoldBounded)?
                .assume(format!("||Y_inf||_inf = {sup} (analytic)"))
                .input("sup", sup)
        }
        SupMode::Unbounded => {
            let c4 = measure.c_constant(4)?;
            let cm = measure.c_constant(4 * r - 6)?;
            let value = cr
                * (c4 * cm).powf(0.25)
                * seq.tail_signed_sum(k)
                * seq.total_abs().powf(exponent);
            BoundReport::new(k, value, FormulaId::RFoldUnbounded)?
                .assume(format!("moments of order 4 and {} finite", 4 * r - 6))
                .input("C4", c4)
                .input("C4r-6", cm)
        }
    };
    Ok(report
        .input("r", r as f64)
        .input("c_r", cr)
        .assume("nonnegative coordinates and coefficients")
        .sequence_note(seq))
}

/// Bound for the two-sided `r`-folded Wiener kernel on `ℝ`.
///
/// Tails of `ξ` enter through absolute values, which is conservative for
/// signed sequences and exact for nonnegative ones.
pub fn twosided_bound(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    r: u32,
    mode: SupMode,
) -> Result<BoundReport> {
    let cr = c_r(r)?;
    let exponent = r as f64 - 1.5;
    let tail_abs = seq.tail_abs_sum(k);
    let report = match mode {
        SupMode::Bounded => {
            let sup = sup_abs_sum(measure, seq)?;
            let second = second_moment_term(measure, tail_abs, seq.tail_sq_sum(k));
            BoundReport::new(k, cr * sup.powf(exponent) * second.sqrt(), FormulaId::TwoSidedBounded)?
                .assume(format!("||Y_inf^abs||_inf = {sup} (analytic)"))
                .input("sup", sup)
        }
        SupMode::Unbounded => {
            let c4 = measure.c_constant(4)?;
            let cm = measure.c_constant(4 * r - 6)?;
            let value = cr * (c4 * cm).powf(0.25) * tail_abs * seq.total_abs().powf(exponent);
            BoundReport::new(k, value, FormulaId::TwoSidedUnbounded)?
                .assume(format!("moments of order 4 and {} finite", 4 * r - 6))
                .input("C4", c4)
                .input("C4r-6", cm)
        }
    };
    Ok(report
        .input("r", r as f64)
        .input("c_r", cr)
        .assume("signed tail sums replaced by absolute tail sums")
        .sequence_note(seq))
}

/// `2√2 π C_r (E|Y∞ - Y_k|²)^{1/2}` for the Korobov kernel.
pub fn korobov_bound(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    weight: &WeightFunction,
) -> Result<BoundReport> {
    let cr = weight.korobov_cr()?;
    let m = holder_moment_bound(measure, seq, k, 1.0)?;
    let value = 2.0 * std::f64::consts::SQRT_2 * std::f64::consts::PI * cr * m.value.sqrt();
    Ok(BoundReport::new(k, value, FormulaId::Korobov)?
        .input("C_r", cr)
        .assume(format!("second moment via {}", m.formula_id))
        .sequence_note(seq))
}

/// Absolute constant in the Cramér-type bound `|H_{ℓ-1}(x)| ≤ c ℓ^{-1/12} φ(x)^{-1/2}`
/// for `ℓ ≥ 2`: `2^{1/12} √π`.
pub fn hermite_cramer_c() -> f64 {
    2f64.powf(1.0 / 12.0) * std::f64::consts::PI.sqrt()
}

/// How the Hermite bound controls `e^{(Y∞^abs)²/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HermiteMode {
    /// Use the analytic supremum (bounded coordinates only).
    BoundedExp,
    /// Cauchy–Schwarz split with an estimate of `E e^{(Y∞^abs)²}`.
    SplitExp,
}

/// Bound for the Hermite kernel.
///
/// In `SplitExp` mode the exponential moment comes from Monte Carlo; the
/// estimate plus three standard errors is plugged in, so the result is
/// only as reliable as that estimate.
pub fn hermite_bound(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    weight: &WeightFunction,
    mode: HermiteMode,
    exp_moment: Option<&McEstimate>,
) -> Result<BoundReport> {
    let v = weight.hermite_v()?;
    let c = hermite_cramer_c();
    let root2pi = (2.0 * std::f64::consts::PI).sqrt();
    let report = match mode {
        HermiteMode::BoundedExp => {
            let sup_abs = sup_abs_sum(measure, seq)?;
            let sup = (sup_abs * sup_abs / 2.0).exp();
            let second = holder_moment_bound(measure, seq, k, 1.0)?;
            BoundReport::new(k, c * (root2pi * v * sup * second.value).sqrt(), FormulaId::HermiteBounded)?
                .assume(format!("||exp((Y_abs)^2/2)||_inf = {sup} (analytic)"))
                .input("sup_exp", sup)
        }
        HermiteMode::SplitExp => {
            let est = exp_moment.ok_or_else(|| {
                Error::arg("SplitExp Hermite bound needs an estimate of E exp((Y_abs)^2)")
            })?;
            let plug = est.value + 3.0 * est.std_error;
            let fourth = power_moment_bound(measure, seq, k, 4)?;
            let value = c * (root2pi * v * plug.sqrt() * fourth.sqrt()).sqrt();
            BoundReport::new(k, value, FormulaId::HermiteSplit)?
                .assume(format!(
                    "E exp((Y_abs)^2) <= {plug} (Monte Carlo estimate + 3 se, N={}, K_ref={}; not certified)",
                    est.samples, est.ref_level
                ))
                .input("exp_moment", plug)
        }
    };
    Ok(report
        .input("V", v)
        .input("c", c)
        .assume("Cramer constant c = 2^(1/12) sqrt(pi)")
        .sequence_note(seq))
}

/// Target of a bound or estimate: a kernel or a Hölder class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Target {
    Kernel(KernelSpec),
    Holder(HolderClass),
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Kernel(k) => k.name().to_string(),
            Target::Holder(h) => format!("Holder(C={}, beta={})", h.constant, h.beta),
        }
    }
}

/// Mode selections for targets that have more than one bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOptions {
    pub sup_mode: SupMode,
    pub hermite_mode: HermiteMode,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            sup_mode: SupMode::Bounded,
            hermite_mode: HermiteMode::BoundedExp,
        }
    }
}

/// Dispatches to the bound matching `target`.
pub fn bound_for(
    target: &Target,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    options: &BoundOptions,
    exp_moment: Option<&McEstimate>,
) -> Result<BoundReport> {
    match target {
        Target::Holder(h) => holder_error_bound(h, measure, seq, k),
        Target::Kernel(spec) => match spec {
            KernelSpec::FractionalWiener { beta } => {
                // e(k)² = E|Y∞ - Y_k|^{2β} exactly for this kernel.
                let h = HolderClass::new(1.0, *beta)?;
                Ok(holder_error_bound(&h, measure, seq, k)?
                    .assume("fractional Wiener: e(k)^2 = E|Y_inf - Y_k|^(2 beta)"))
            }
            KernelSpec::RFoldedWiener { r } => rfolded_bound(measure, seq, k, *r, options.sup_mode),
            KernelSpec::TwoSidedRFolded { r } => {
                twosided_bound(measure, seq, k, *r, options.sup_mode)
            }
            KernelSpec::Korobov { weight, .. } => korobov_bound(measure, seq, k, weight),
            KernelSpec::Hermite { weight, .. } => {
                hermite_bound(measure, seq, k, weight, options.hermite_mode, exp_moment)
            }
        },
    }
}

/// Closed-form majorants for power-law coefficients `ξ_j = j^{-a}`, obtained
/// by inserting the integral tail bracket into the bounds above.
pub mod closed_form {
    use super::*;

    /// Hölder bound through `FR1`: `C m₁^β / ((a-1)^β (k+1/2)^{β(a-1)})`.
    pub fn holder_fr1(measure: &MeasureSpec, constant: f64, beta: f64, a: f64, k: usize) -> Result<f64> {
        let m1 = measure.moment_abs(1)?;
        let (_, hi) = tail_bracket(a, k)?;
        Ok(constant * (m1 * hi).powf(beta))
    }

    /// Hölder bound through `ZERO_MEAN`:
    /// `C m₂^{β/2} / ((2a-1)^{β/2} (k+1/2)^{β(a-1/2)})`.
    pub fn holder_zero_mean(measure: &MeasureSpec, constant: f64, beta: f64, a: f64, k: usize) -> Result<f64> {
        let m2 = measure.moment_abs(2)?;
        let (_, hi) = tail_bracket(2.0 * a, k)?;
        Ok(constant * (m2 * hi).powf(beta / 2.0))
    }

    /// `c_{r,a}` for uniform coordinates on `[0, 1]`:
    /// `(r/6)^{1/2} ζ(a)^{r-3/2} / (r-1)! · (1/(a-1)² + 2/(9(2a-1)))^{1/2}`.
    pub fn rfolded_uniform_constant(r: u32, a: f64) -> Result<f64> {
        c_r(r)?;
        let rf = r as f64;
        Ok((rf / 6.0).sqrt() * zeta(a)?.powf(rf - 1.5) / factorial_f64(r - 1)
            * (1.0 / (a - 1.0).powi(2) + 2.0 / (9.0 * (2.0 * a - 1.0))).sqrt())
    }

    /// `c_{r,a} / (k+1/2)^{a-1}`; valid for `k ≥ 1`.
    pub fn rfolded_uniform(r: u32, a: f64, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(Error::arg("the c_{r,a} majorant holds for k >= 1"));
        }
        Ok(rfolded_uniform_constant(r, a)? / (k as f64 + 0.5).powf(a - 1.0))
    }

    /// `c_{r,λ} = 2 r^{1/2} λ^{r-1/2} ((4r-6)!)^{1/4} ζ(a)^{r-3/2} / ((r-1)! (a-1))`
    /// for exponential coordinates with scale `λ`.
    pub fn rfolded_exponential_constant(r: u32, a: f64, scale: f64) -> Result<f64> {
        c_r(r)?;
        let rf = r as f64;
        Ok(2.0 * rf.sqrt() * scale.powf(rf - 0.5) * factorial_f64(4 * r - 6).powf(0.25)
            * zeta(a)?.powf(rf - 1.5)
            / (factorial_f64(r - 1) * (a - 1.0)))
    }

    /// `c_{r,λ} / (k+1/2)^{a-1}`.
    pub fn rfolded_exponential(r: u32, a: f64, scale: f64, k: usize) -> Result<f64> {
        Ok(rfolded_exponential_constant(r, a, scale)? / (k as f64 + 0.5).powf(a - 1.0))
    }

    /// Korobov bound for centered uniform coordinates on `[-1/2, 1/2]`:
    /// `√(2/3) π C_r (Σ_{j>k} ξ_j²)^{1/2}`.
    pub fn korobov_uniform_sym(weight: &WeightFunction, seq: &CoefficientSequence, k: usize) -> Result<f64> {
        Ok((2.0f64 / 3.0).sqrt() * std::f64::consts::PI * weight.korobov_cr()? * seq.tail_sq_sum(k).sqrt())
    }

    /// Korobov bound for centered Gaussian coordinates:
    /// `2√2 π C_r σ (Σ_{j>k} ξ_j²)^{1/2}`.
    pub fn korobov_gaussian(weight: &WeightFunction, variance: f64, seq: &CoefficientSequence, k: usize) -> Result<f64> {
        Ok(2.0 * std::f64::consts::SQRT_2 * std::f64::consts::PI * weight.korobov_cr()? * variance.sqrt()
            * seq.tail_sq_sum(k).sqrt())
    }

    /// Two-sided bound for centered uniform coordinates:
    /// `c_r ((1/2) Σ|ξ_j|)^{r-3/2} ((1/12) Σ_{j>k} ξ_j²)^{1/2}`.
    pub fn twosided_uniform_sym(r: u32, seq: &CoefficientSequence, k: usize) -> Result<f64> {
        Ok(c_r(r)? * (0.5 * seq.total_abs()).powf(r as f64 - 1.5) * (seq.tail_sq_sum(k) / 12.0).sqrt())
    }

    /// Two-sided bound for centered Gaussian coordinates:
    /// `c_r (σ^{4r-2} 3 (4r-7)!!)^{1/4} Σ_{j>k}|ξ_j| (Σ|ξ_j|)^{r-3/2}`.
    pub fn twosided_gaussian(r: u32, variance: f64, seq: &CoefficientSequence, k: usize) -> Result<f64> {
        let sigma = variance.sqrt();
        let df = crate::measures::double_factorial_f64(4 * r - 7);
        Ok(c_r(r)? * (sigma.powi(4 * r as i32 - 2) * 3.0 * df).powf(0.25)
            * seq.tail_abs_sum(k)
            * seq.total_abs().powf(r as f64 - 1.5))
    }

    /// Hermite bound for centered uniform coordinates and `ξ_j = j^{-a}`:
    /// `c̃ e^{ζ(a)²/16} / ((2a-1)^{1/2} (k+1/2)^{a-1/2})`, `c̃ = c (√(2π) V / 12)^{1/2}`.
    pub fn hermite_uniform_sym(weight: &WeightFunction, a: f64, k: usize) -> Result<f64> {
        let v = weight.hermite_v()?;
        let c_tilde = hermite_cramer_c() * ((2.0 * std::f64::consts::PI).sqrt() * v / 12.0).sqrt();
        let z = zeta(a)?;
        Ok(c_tilde * (z * z / 16.0).exp() / ((2.0 * a - 1.0).sqrt() * (k as f64 + 0.5).powf(a - 0.5)))
    }
}

#[cfg(test)]
mod tests {
    use super::closed_form;
    use super::*;

    fn pl(a: f64) -> CoefficientSequence {
        CoefficientSequence::power_law(a).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn holder_moment_examples() {
        let s = pl(2.0);
        for k in [0, 3, 10] {
            let m = holder_moment_bound(&MeasureSpec::UniformSym, &s, k, 1.0).unwrap();
            assert!(rel(m.value, s.tail_sq_sum(k) / 12.0) < 1e-15);
            assert_eq!(m.formula_id, FormulaId::ZeroMean);
        }
        // Uniform01, a=2, k=3, β=1/2: both candidates from the tail oracles.
        let t = 0.283_822_955_737_115_4f64;
        let tsq = s.tail_sq_sum(3);
        let a_cand = 0.5 * t;
        let b_cand = ((0.5 * t).powi(2) + tsq / 12.0).sqrt();
        let m = holder_moment_bound(&MeasureSpec::Uniform01, &s, 3, 0.5).unwrap();
        assert!(rel(m.value, a_cand.min(b_cand)) < 1e-14);
        assert!(holder_moment_bound(&MeasureSpec::Uniform01, &s, 3, 0.0).is_err());
        assert!(holder_moment_bound(&MeasureSpec::Uniform01, &s, 3, 1.5).is_err());
    }

    #[test]
    fn general_candidate_at_beta_one_is_exact_second_moment() {
        let s = pl(1.5);
        for m in [MeasureSpec::Uniform01, MeasureSpec::exponential(2.0).unwrap()] {
            for k in [0, 5, 50] {
                let got = holder_moment_bound(&m, &s, k, 1.0).unwrap();
                let want = (m.mean() * s.tail_signed_sum(k)).powi(2) + m.variance() * s.tail_sq_sum(k);
                assert_eq!(got.value, want);
                assert_eq!(got.formula_id, FormulaId::GenBeta);
            }
        }
    }

    #[test]
    fn empty_tail_gives_zero() {
        let f = CoefficientSequence::finite(vec![0.5, 0.25]).unwrap();
        let h = HolderClass::new(2.0, 0.5).unwrap();
        for m in [MeasureSpec::Uniform01, MeasureSpec::UniformSym, MeasureSpec::gaussian(1.0).unwrap()] {
            assert_eq!(holder_moment_bound(&m, &f, 2, 0.3).unwrap().value, 0.0);
            assert_eq!(holder_error_bound(&h, &m, &f, 2).unwrap().value, 0.0);
            assert_eq!(power_moment_bound(&m, &f, 2, 3).unwrap(), 0.0);
            assert_eq!(twosided_bound(&m, &f, 2, 2, SupMode::Unbounded).unwrap().value, 0.0);
            let w = WeightFunction::GeometricDecay { q: 0.5 };
            assert_eq!(korobov_bound(&m, &f, 2, &w).unwrap().value, 0.0);
        }
        assert_eq!(rfolded_bound(&MeasureSpec::Uniform01, &f, 2, 3, SupMode::Bounded).unwrap().value, 0.0);
        let w = WeightFunction::GeometricDecay { q: 0.5 };
        assert_eq!(
            hermite_bound(&MeasureSpec::UniformSym, &f, 2, &w, HermiteMode::BoundedExp, None).unwrap().value,
            0.0
        );
    }

    #[test]
    fn holder_error_is_linear_in_constant() {
        let s = pl(2.0);
        let g2 = gp_space_params(2.0).unwrap();
        let one = holder_error_bound(&g2, &MeasureSpec::UniformSym, &s, 3).unwrap();
        let m = holder_moment_bound(&MeasureSpec::UniformSym, &s, 3, 0.5).unwrap();
        assert_eq!(one.value, m.value.sqrt());
        let two = holder_error_bound(&HolderClass::new(2.0, 0.5).unwrap(), &MeasureSpec::UniformSym, &s, 3).unwrap();
        assert_eq!(two.value, 2.0 * one.value);
        assert_eq!(one.formula_id, m.formula_id);
    }

    #[test]
    fn gp_params() {
        assert_eq!(gp_space_params(2.0).unwrap(), HolderClass { constant: 1.0, beta: 0.5 });
        assert_eq!(gp_space_params(f64::INFINITY).unwrap(), HolderClass { constant: 1.0, beta: 1.0 });
        assert_eq!(gp_space_params(4.0).unwrap(), HolderClass { constant: 1.0, beta: 0.75 });
        assert!(gp_space_params(1.0).is_err());
        assert!(gp_space_params(0.5).is_err());
    }

    #[test]
    fn power_moment_examples() {
        let s = pl(2.0);
        let z2 = zeta(2.0).unwrap();
        let v = power_moment_bound(&MeasureSpec::Uniform01, &s, 0, 2).unwrap();
        assert!(rel(v, z2 * z2 / 3.0) < 1e-14);
        let e = MeasureSpec::exponential(1.0).unwrap();
        for k in [0, 2, 9] {
            let v = power_moment_bound(&e, &s, k, 3).unwrap();
            assert!(rel(v, 6.0 * s.tail_abs_sum(k).powi(3)) < 1e-14);
        }
    }

    #[test]
    fn c_r_values() {
        assert!((c_r(2).unwrap() - (4.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((c_r(2).unwrap() - 1.154_700_538_379_251_7).abs() < 1e-15);
        assert!((c_r(3).unwrap() - (0.2f64 + 4.0 / 3.0).sqrt() / 2.0).abs() < 1e-15);
        assert!((c_r(3).unwrap() - 0.619_139_187_366_890_3).abs() < 1e-12);
        for r in 2..=12 {
            assert!(c_r(r).unwrap() <= c_r_majorant(r).unwrap());
        }
        assert!(c_r(1).is_err());
    }

    #[test]
    fn rfolded_dominated_by_uniform_closed_form() {
        for r in [2, 3] {
            for a in [2.0, 3.0] {
                let s = pl(a);
                for k in 1..=32 {
                    let b = rfolded_bound(&MeasureSpec::Uniform01, &s, k, r, SupMode::Bounded).unwrap();
                    let cf = closed_form::rfolded_uniform(r, a, k).unwrap();
                    assert!(b.value <= cf, "r={r} a={a} k={k}: {} > {cf}", b.value);
                }
            }
        }
        assert!(closed_form::rfolded_uniform(2, 2.0, 0).is_err());
    }

    #[test]
    fn rfolded_exponential_matches_closed_form_shape() {
        for &lambda in &[0.5, 1.0, 2.0] {
            let e = MeasureSpec::exponential(lambda).unwrap();
            let s = pl(2.0);
            for k in 0..=32 {
                let b = rfolded_bound(&e, &s, k, 3, SupMode::Unbounded).unwrap();
                assert_eq!(b.formula_id, FormulaId::RFoldUnbounded);
                let cf = closed_form::rfolded_exponential(3, 2.0, lambda, k).unwrap();
                assert!(b.value <= cf, "λ={lambda} k={k}");
            }
        }
    }

    #[test]
    fn rfolded_preconditions() {
        let s = pl(2.0);
        assert!(matches!(
            rfolded_bound(&MeasureSpec::UniformSym, &s, 1, 2, SupMode::Unbounded),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            rfolded_bound(&MeasureSpec::exponential(1.0).unwrap(), &s, 1, 2, SupMode::Bounded),
            Err(Error::Refused(_))
        ));
        let signed = CoefficientSequence::finite(vec![1.0, -0.5]).unwrap();
        assert!(rfolded_bound(&MeasureSpec::Uniform01, &signed, 0, 2, SupMode::Bounded).is_err());
        // r = 2 uses C(2) for the 4r-6 moment.
        let b = rfolded_bound(&MeasureSpec::Uniform01, &s, 1, 2, SupMode::Unbounded).unwrap();
        assert_eq!(b.inputs["C4r-6"], MeasureSpec::Uniform01.c_constant_enum(2).unwrap());
    }

    #[test]
    fn twosided_examples() {
        let s = pl(2.0);
        for k in [0, 1, 7] {
            let b = twosided_bound(&MeasureSpec::UniformSym, &s, k, 2, SupMode::Bounded).unwrap();
            let cf = closed_form::twosided_uniform_sym(2, &s, k).unwrap();
            assert!(rel(b.value, cf) < 1e-14);
            let g = MeasureSpec::gaussian(1.0).unwrap();
            let b = twosided_bound(&g, &s, k, 2, SupMode::Unbounded).unwrap();
            let want = c_r(2).unwrap() * 3f64.powf(0.25) * s.tail_abs_sum(k) * s.total_abs().sqrt();
            assert!(rel(b.value, want) < 1e-14);
            let g2 = MeasureSpec::gaussian(2.5).unwrap();
            for r in [2, 3, 4] {
                let b = twosided_bound(&g2, &s, k, r, SupMode::Unbounded).unwrap();
                let cf = closed_form::twosided_gaussian(r, 2.5, &s, k).unwrap();
                assert!(rel(b.value, cf) < 1e-13, "r={r}");
            }
        }
        assert!(matches!(
            twosided_bound(&MeasureSpec::logistic(1.0).unwrap(), &s, 0, 2, SupMode::Bounded),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn korobov_examples() {
        let s = pl(2.0);
        let w = WeightFunction::GeometricDecay { q: 0.5 };
        for k in [0, 4, 16] {
            let b = korobov_bound(&MeasureSpec::UniformSym, &s, k, &w).unwrap();
            assert!(rel(b.value, closed_form::korobov_uniform_sym(&w, &s, k).unwrap()) < 1e-14);
            let g = MeasureSpec::gaussian(3.0).unwrap();
            let b = korobov_bound(&g, &s, k, &w).unwrap();
            assert!(rel(b.value, closed_form::korobov_gaussian(&w, 3.0, &s, k).unwrap()) < 1e-14);
        }
        assert!(korobov_bound(&MeasureSpec::UniformSym, &s, 0, &WeightFunction::PolynomialDecay { alpha: 1.2 }).is_err());
    }

    #[test]
    fn hermite_examples() {
        let s = pl(2.0);
        let w = WeightFunction::GeometricDecay { q: 0.5 };
        for k in 0..=32 {
            let b = hermite_bound(&MeasureSpec::UniformSym, &s, k, &w, HermiteMode::BoundedExp, None).unwrap();
            let cf = closed_form::hermite_uniform_sym(&w, 2.0, k).unwrap();
            assert!(b.value <= cf * (1.0 + 1e-14), "k={k}");
        }
        // Doubling V: weights 2^{-l} vs an explicit doubling through the formula.
        let b = hermite_bound(&MeasureSpec::UniformSym, &s, 3, &w, HermiteMode::BoundedExp, None).unwrap();
        let v = w.hermite_v().unwrap();
        let scaled = b.value * ((2.0 * v) / v).sqrt();
        assert!(rel(scaled, b.value * 2f64.sqrt()) < 1e-15);
        assert!(matches!(
            hermite_bound(&MeasureSpec::UniformSym, &s, 3, &w, HermiteMode::SplitExp, None),
            Err(Error::Argument(_))
        ));
        let est = McEstimate::new(2.0, 0.0, 1000, 1000);
        let split = hermite_bound(&MeasureSpec::UniformSym, &s, 3, &w, HermiteMode::SplitExp, Some(&est)).unwrap();
        let want = hermite_cramer_c()
            * ((2.0 * std::f64::consts::PI).sqrt() * v * 2f64.sqrt()
                * power_moment_bound(&MeasureSpec::UniformSym, &s, 3, 4).unwrap().sqrt())
            .sqrt();
        assert!(rel(split.value, want) < 1e-14);
        assert_eq!(split.formula_id, FormulaId::HermiteSplit);
    }

    #[test]
    fn bounds_are_monotone_in_k() {
        let s = pl(2.0);
        let opts = BoundOptions::default();
        let targets = [
            (Target::Holder(HolderClass::new(1.0, 0.3).unwrap()), MeasureSpec::UniformSym),
            (Target::Kernel(KernelSpec::FractionalWiener { beta: 0.5 }), MeasureSpec::Uniform01),
            (Target::Kernel(KernelSpec::RFoldedWiener { r: 3 }), MeasureSpec::Uniform01),
            (Target::Kernel(KernelSpec::TwoSidedRFolded { r: 2 }), MeasureSpec::UniformSym),
            (Target::Kernel(KernelSpec::korobov(WeightFunction::GeometricDecay { q: 0.3 })), MeasureSpec::UniformSym),
            (Target::Kernel(KernelSpec::hermite(WeightFunction::GeometricDecay { q: 0.3 })), MeasureSpec::UniformSym),
        ];
        for (t, m) in &targets {
            let mut prev = f64::INFINITY;
            for k in 0..=64 {
                let b = bound_for(t, m, &s, k, &opts, None).unwrap();
                assert!(b.value.is_finite() && b.value >= 0.0);
                assert!(b.value <= prev, "{} k={k}", t.name());
                prev = b.value;
            }
        }
    }

    #[test]
    fn formula_ids_serialize_to_registry_names() {
        for f in [FormulaId::Fr1, FormulaId::GenBeta, FormulaId::HermiteSplit, FormulaId::TwoSidedUnbounded] {
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.as_str()));
        }
    }

    #[test]
    fn closed_form_holder_examples_dominate() {
        for m in [MeasureSpec::UniformSym, MeasureSpec::gaussian(1.0).unwrap()] {
            let s = pl(2.0);
            for k in 0..=32 {
                let exact = holder_error_bound(&HolderClass::new(1.0, 0.5).unwrap(), &m, &s, k).unwrap();
                let fr1 = closed_form::holder_fr1(&m, 1.0, 0.5, 2.0, k).unwrap();
                let zm = closed_form::holder_zero_mean(&m, 1.0, 0.5, 2.0, k).unwrap();
                assert!(exact.value <= fr1.min(zm) * (1.0 + 1e-14));
            }
        }
    }
}
