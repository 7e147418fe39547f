//! Seeded Monte Carlo estimates of truncation errors.
//!
//! `Y∞` is replaced by the partial sum at a reference depth `K_ref`. Each
//! estimate carries an analytic bound on the bias this introduces. Sample `i`
//! draws every coordinate from the stream keyed by `(seed, role, i)`, and all
//! reductions run in sample order, so results are bit-identical for any
//! number of worker threads.

use serde::{Deserialize, Serialize};

use crate::bounds::{bound_for, holder_moment_bound, BoundOptions, BoundReport, HolderClass, Target};
use crate::coefficients::CoefficientSequence;
use crate::error::{Error, Result};
use crate::kernels::{Domain, Kernel, KernelSpec};
use crate::measures::MeasureSpec;
use crate::rng::{self, StreamRng, StreamRole};

/// Published estimates must satisfy `bias_bound ≤ BIAS_RATIO · std_error`.
pub const BIAS_RATIO: f64 = 0.1;

/// Minimum sample count.
pub const MIN_SAMPLES: usize = 100;

/// Default reference depth for power-law sequences.
pub const DEFAULT_REF_LEVEL: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: usize,
    pub ref_level: usize,
    pub seed: u64,
    pub k_grid: Vec<usize>,
    /// Worker threads for sampling. Never affects results.
    #[serde(default = "default_workers")]
    pub workers: usize,
}

fn default_workers() -> usize {
    1
}

impl McConfig {
    pub fn new(samples: usize, ref_level: usize, seed: u64, k_grid: Vec<usize>) -> Result<Self> {
        let c = Self {
            samples,
            ref_level,
            seed,
            k_grid,
            workers: 1,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return Err(Error::Config(format!(
                "sample count must be at least {MIN_SAMPLES}, got {}",
                self.samples
            )));
        }
        if self.workers == 0 {
            return Err(Error::Config("worker count must be positive".into()));
        }
        if self.k_grid.is_empty() {
            return Err(Error::Config("k_grid must not be empty".into()));
        }
        if self.k_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!(
                "k_grid must be strictly increasing, got {:?}",
                self.k_grid
            )));
        }
        let kmax = *self.k_grid.last().unwrap();
        if kmax >= self.ref_level {
            return Err(Error::Config(format!(
                "k_grid maximum {kmax} must be below ref_level {}",
                self.ref_level
            )));
        }
        Ok(())
    }

    fn grid_index(&self, k: usize) -> Result<usize> {
        self.k_grid
            .binary_search(&k)
            .map_err(|_| Error::arg(format!("k = {k} is not in k_grid {:?}", self.k_grid)))
    }
}

/// Partial sums of one sampled path.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSums {
    /// `Y_k` for each `k` of the grid.
    pub partial: Vec<f64>,
    /// `Y_{K_ref}`.
    pub full: f64,
    /// `Σ_{j ≤ K_ref} |x_j ξ_j|`.
    pub abs: f64,
}

/// All paths of one run, in sample order.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    pub k_grid: Vec<usize>,
    pub ref_level: usize,
    pub paths: Vec<PathSums>,
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    fn column(&self, k: usize) -> Result<usize> {
        self.k_grid
            .binary_search(&k)
            .map_err(|_| Error::arg(format!("k = {k} is not in k_grid {:?}", self.k_grid)))
    }
}

/// A Monte Carlo estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
    pub ref_level: usize,
    /// Bound on the bias from stopping at `K_ref`; `inf` when unavailable.
    pub bias_bound: f64,
    /// Whether `bias_bound` is certified and subject to the `BIAS_RATIO` rule.
    pub bias_certified: bool,
    /// Set when a negative mean was clamped to zero before the square root.
    pub clamped: bool,
}

impl McEstimate {
    /// An estimate with zero bias, e.g. for a fully resolved sum.
    pub fn new(value: f64, std_error: f64, samples: usize, ref_level: usize) -> Self {
        Self {
            value,
            std_error,
            samples,
            ref_level,
            bias_bound: 0.0,
            bias_certified: true,
            clamped: false,
        }
    }

    /// Enforces the surrogate-bias rule for certified estimates.
    pub fn check_bias(&self) -> Result<()> {
        if self.bias_certified && self.bias_bound > BIAS_RATIO * self.std_error {
            return Err(Error::Config(format!(
                "bias bound {} exceeds {BIAS_RATIO} x std_error {} at K_ref = {}; increase ref_level",
                self.bias_bound, self.std_error, self.ref_level
            )));
        }
        Ok(())
    }

    /// `std_error` relative to `value` (0 when both vanish).
    pub fn rel_std_error(&self) -> f64 {
        if self.value == 0.0 {
            0.0
        } else {
            self.std_error / self.value
        }
    }
}

/// Sample mean and its standard error, accumulated in index order.
fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1.0) / n).sqrt())
}

/// `√m` with the delta-method error `se / (2√m)`. At or below zero the
/// delta method breaks down and `√se` is reported instead.
fn sqrt_estimate(mean: f64, se: f64) -> (f64, f64, bool) {
    if mean <= 0.0 {
        return (0.0, se.sqrt(), mean < 0.0);
    }
    let v = mean.sqrt();
    (v, se / (2.0 * v), false)
}

fn run_parallel<T, F>(workers: usize, n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if workers == 1 {
        return Ok((0..n).map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| (0..n).into_par_iter().map(f).collect()))
}

#[inline(always)]
fn accumulate<D: Fn(&mut StreamRng) -> f64>(
    draw: D,
    rng: &mut StreamRng,
    xi: &[f64],
    grid: &[usize],
) -> PathSums {
    let mut partial = Vec::with_capacity(grid.len());
    let mut y = 0.0;
    let mut a = 0.0;
    let mut start = 0;
    for &stop in grid.iter().chain(std::iter::once(&xi.len())) {
        for &c in &xi[start..stop] {
            let t = draw(rng) * c;
            y += t;
            a += t.abs();
        }
        partial.push(y);
        start = stop;
    }
    partial.pop();
    PathSums {
        partial,
        full: y,
        abs: a,
    }
}

/// Samples `config.samples` paths on the given stream role.
pub fn sample_paths_role(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    config: &McConfig,
    role: StreamRole,
) -> Result<PathSet> {
    config.validate()?;
    measure.validate()?;
    seq.validate()?;
    let xi = seq.prefix(config.ref_level);
    let grid = &config.k_grid;
    let seed = config.seed;
    let one = |i: usize| {
        let mut rng = rng::stream(seed, role, i as u64);
        match *measure {
            MeasureSpec::Uniform01 => accumulate(rng::uniform, &mut rng, &xi, grid),
            MeasureSpec::UniformSym => accumulate(|r| rng::uniform(r) - 0.5, &mut rng, &xi, grid),
            ref m => accumulate(|r| m.draw(r), &mut rng, &xi, grid),
        }
    };
    let paths = run_parallel(config.workers, config.samples, one)?;
    Ok(PathSet {
        k_grid: grid.clone(),
        ref_level: config.ref_level,
        paths,
    })
}

/// Samples paths on the primary stream role.
pub fn sample_paths(measure: &MeasureSpec, seq: &CoefficientSequence, config: &McConfig) -> Result<PathSet> {
    sample_paths_role(measure, seq, config, StreamRole::Path)
}

/// Bound on `|E|A+B|^p - E|A|^p|` where `A = Y_{K_ref} - Y_k` and `B` is the
/// tail beyond `K_ref`, independent of `A`.
fn moment_bias(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    ref_level: usize,
    p: f64,
) -> Result<f64> {
    if seq.support_len().is_some_and(|n| n <= ref_level) {
        return Ok(0.0);
    }
    if p <= 1.0 {
        // ||a+b|^p - |a|^p| ≤ |b|^p for p ≤ 1.
        return Ok(holder_moment_bound(measure, seq, ref_level, p / 2.0)?.value);
    }
    // Minkowski in L_p, with L_p norms bounded through L_M, M = ⌈p⌉.
    let order = p.ceil() as u32;
    let c = measure.c_constant(order)?.powf(1.0 / order as f64);
    let tail_k = seq.tail_abs_sum(k);
    let tail_ref = seq.tail_abs_sum(ref_level);
    let a = c * (tail_k - tail_ref).max(0.0);
    let b = c * tail_ref;
    Ok((a + b).powf(p) - a.powf(p))
}

/// Moment estimate from precomputed paths.
pub fn moment_from_paths(
    paths: &PathSet,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    exponent: f64,
) -> Result<McEstimate> {
    if !(exponent > 0.0 && exponent.is_finite()) {
        return Err(Error::arg(format!("exponent must be positive, got {exponent}")));
    }
    let col = paths.column(k)?;
    let q: Vec<f64> = paths
        .paths
        .iter()
        .map(|p| (p.full - p.partial[col]).abs().powf(exponent))
        .collect();
    let (mean, se) = mean_se(&q);
    if !mean.is_finite() {
        return Err(Error::numeric(format!("moment of order {exponent} overflowed at k = {k}")));
    }
    Ok(McEstimate {
        bias_bound: moment_bias(measure, seq, k, paths.ref_level, exponent)?,
        ..McEstimate::new(mean, se, paths.len(), paths.ref_level)
    })
}

/// Estimate of `E|Y∞ - Y_k|^exponent`.
pub fn estimate_moment(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    exponent: f64,
    config: &McConfig,
) -> Result<McEstimate> {
    config.grid_index(k)?;
    let paths = sample_paths(measure, seq, config)?;
    moment_from_paths(&paths, measure, seq, k, exponent)
}

fn check_kernel_domain(kernel: &Kernel, measure: &MeasureSpec, seq: &CoefficientSequence) -> Result<()> {
    if kernel.domain() == Domain::NonNegative && !(measure.nonnegative_support() && seq.is_nonnegative()) {
        return Err(Error::arg(format!(
            "{} needs nonnegative path sums; {} with {} can go negative",
            kernel.spec().name(),
            measure.name(),
            seq.describe()
        )));
    }
    Ok(())
}

/// Bias bound for the square root of a moment-type mean `m̂` whose own bias is
/// at most `delta`: `|√x - √y| ≤ min(√δ, δ/√y)`, with `y` replaced by the
/// three-sigma lower confidence limit of `m̂`.
fn sqrt_bias(delta: f64, mean: f64, se: f64) -> f64 {
    if delta == 0.0 {
        return 0.0;
    }
    let lower = mean - 3.0 * se;
    let direct = delta.sqrt();
    if lower > 0.0 {
        direct.min(delta / lower.sqrt())
    } else {
        direct
    }
}

/// Kernel truncation error from precomputed paths.
///
/// For the fractional Wiener kernel the bias bound follows from the moment
/// identity. Other kernels report the bound at `K_ref` from [`bound_for`]
/// (the kernel metric's triangle inequality), marked uncertified.
pub fn err_kernel_from_paths(
    kernel: &Kernel,
    paths: &PathSet,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
) -> Result<McEstimate> {
    check_kernel_domain(kernel, measure, seq)?;
    let col = paths.column(k)?;
    let q = paths
        .paths
        .iter()
        .map(|p| kernel.sq_distance(p.full, p.partial[col]))
        .collect::<Result<Vec<f64>>>()?;
    let (mean, se) = mean_se(&q);
    if !mean.is_finite() {
        return Err(Error::numeric(format!("squared distance mean overflowed at k = {k}")));
    }
    let (value, std_error, clamped) = sqrt_estimate(mean, se);
    let mut est = McEstimate {
        clamped,
        ..McEstimate::new(value, std_error, paths.len(), paths.ref_level)
    };
    match kernel.spec() {
        KernelSpec::FractionalWiener { beta } => {
            let delta = moment_bias(measure, seq, k, paths.ref_level, 2.0 * beta)?;
            est.bias_bound = sqrt_bias(delta, mean, se);
        }
        _ => {
            est.bias_certified = false;
            est.bias_bound = if seq.support_len().is_some_and(|n| n <= paths.ref_level) {
                0.0
            } else {
                let target = Target::Kernel(kernel.spec().clone());
                bound_for(&target, measure, seq, paths.ref_level, &BoundOptions::default(), None)
                    .map(|b| b.value)
                    .unwrap_or(f64::INFINITY)
            };
        }
    }
    Ok(est)
}

/// Estimate of the kernel truncation error `e^trnc(k)`.
pub fn estimate_err_kernel(
    kernel: &Kernel,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    config: &McConfig,
) -> Result<McEstimate> {
    config.grid_index(k)?;
    check_kernel_domain(kernel, measure, seq)?;
    let paths = sample_paths(measure, seq, config)?;
    err_kernel_from_paths(kernel, &paths, measure, seq, k)
}

/// `e₁` from paired path sets: the mean over `i` of
/// `K(Y∞ˣ,Y∞ᶻ) - 2K(Y∞ˣ,Y_kᶻ) + K(Y_kˣ,Y_kᶻ)` with `x = xs[i]`, `z = zs[i]`.
pub fn e1_from_paths(
    kernel: &Kernel,
    xs: &PathSet,
    zs: &PathSet,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
) -> Result<McEstimate> {
    check_kernel_domain(kernel, measure, seq)?;
    if xs.len() != zs.len() || xs.k_grid != zs.k_grid {
        return Err(Error::arg("paired path sets must share size and grid"));
    }
    let col = xs.column(k)?;
    let q = xs
        .paths
        .iter()
        .zip(&zs.paths)
        .map(|(x, z)| {
            let (xf, xk, zf, zk) = (x.full, x.partial[col], z.full, z.partial[col]);
            Ok(kernel.eval(xf, zf)? - 2.0 * kernel.eval(xf, zk)? + kernel.eval(xk, zk)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (mean, se) = mean_se(&q);
    if !mean.is_finite() {
        return Err(Error::numeric(format!("e1 bracket mean overflowed at k = {k}")));
    }
    if mean < -3.0 * se {
        return Err(Error::numeric(format!(
            "e1 bracket mean {mean:e} is more than 3 standard errors ({se:e}) below zero at k = {k}"
        )));
    }
    let (value, std_error, clamped) = sqrt_estimate(mean, se);
    Ok(McEstimate {
        clamped,
        bias_bound: if seq.support_len().is_some_and(|n| n <= xs.ref_level) { 0.0 } else { f64::INFINITY },
        bias_certified: false,
        ..McEstimate::new(value, std_error, xs.len(), xs.ref_level)
    })
}

/// Estimate of the double-expectation error `e₁(k)`, with x-paths on the
/// primary stream and z-paths on the paired stream.
pub fn estimate_e1(
    kernel: &Kernel,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
    config: &McConfig,
) -> Result<McEstimate> {
    config.grid_index(k)?;
    check_kernel_domain(kernel, measure, seq)?;
    let xs = sample_paths_role(measure, seq, config, StreamRole::Path)?;
    let zs = sample_paths_role(measure, seq, config, StreamRole::PairedPath)?;
    e1_from_paths(kernel, &xs, &zs, measure, seq, k)
}

/// `E e^{(Y_abs)²}` from precomputed paths.
///
/// The surrogate can only underestimate, so the bias bound is left open.
pub fn exp_abs_sq_from_paths(paths: &PathSet, seq: &CoefficientSequence) -> Result<McEstimate> {
    let mut q = Vec::with_capacity(paths.len());
    for (i, p) in paths.paths.iter().enumerate() {
        let v = (p.abs * p.abs).exp();
        if !v.is_finite() {
            return Err(Error::numeric(format!(
                "exp(Y_abs^2) overflowed on path {i}: Y_abs = {}",
                p.abs
            )));
        }
        q.push(v);
    }
    let (mean, se) = mean_se(&q);
    if !mean.is_finite() {
        return Err(Error::numeric("mean of exp(Y_abs^2) overflowed"));
    }
    Ok(McEstimate {
        bias_bound: if seq.support_len().is_some_and(|n| n <= paths.ref_level) { 0.0 } else { f64::INFINITY },
        bias_certified: false,
        ..McEstimate::new(mean, se, paths.len(), paths.ref_level)
    })
}

/// Estimate of `E e^{(Y∞^abs)²}` at depth `K_ref`.
pub fn estimate_exp_abs_sq(
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    config: &McConfig,
) -> Result<McEstimate> {
    let paths = sample_paths(measure, seq, config)?;
    exp_abs_sq_from_paths(&paths, seq)
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    pub estimate: McEstimate,
    pub bound: BoundReport,
    /// `bound / estimate`; `inf` for a zero estimate under a positive bound
    /// and 1 when both vanish.
    pub ratio: f64,
}

fn ratio(bound: f64, estimate: f64) -> f64 {
    if estimate == 0.0 {
        if bound == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        bound / estimate
    }
}

/// Estimate of the worst-case error `C (E|Y∞ - Y_k|^{2β})^{1/2}` over a Hölder
/// class, from precomputed paths.
pub fn holder_from_paths(
    holder: &HolderClass,
    paths: &PathSet,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    k: usize,
) -> Result<McEstimate> {
    holder.validate()?;
    let m = moment_from_paths(paths, measure, seq, k, 2.0 * holder.beta)?;
    let (v, se, clamped) = sqrt_estimate(m.value, m.std_error);
    Ok(McEstimate {
        value: holder.constant * v,
        std_error: holder.constant * se,
        bias_bound: holder.constant * sqrt_bias(m.bias_bound, m.value, m.std_error),
        clamped,
        ..m
    })
}

/// Estimates and bounds at every `k` of the grid, from precomputed paths.
///
/// Certified estimates must satisfy the surrogate-bias rule.
pub fn sweep_from_paths(
    target: &Target,
    paths: &PathSet,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    options: &BoundOptions,
) -> Result<Vec<SweepRow>> {
    let kernel = match target {
        Target::Kernel(spec) => Some(Kernel::new(spec.clone())?),
        Target::Holder(_) => None,
    };
    let exp_moment = match (target, options.hermite_mode) {
        (Target::Kernel(KernelSpec::Hermite { .. }), crate::bounds::HermiteMode::SplitExp) => {
            Some(exp_abs_sq_from_paths(paths, seq)?)
        }
        _ => None,
    };
    let mut rows = Vec::with_capacity(paths.k_grid.len());
    for &k in &paths.k_grid {
        let estimate = match (target, &kernel) {
            (Target::Holder(h), _) => holder_from_paths(h, paths, measure, seq, k)?,
            (_, Some(kern)) => err_kernel_from_paths(kern, paths, measure, seq, k)?,
            _ => unreachable!("kernel targets always construct a kernel"),
        };
        estimate.check_bias()?;
        let bound = bound_for(target, measure, seq, k, options, exp_moment.as_ref())?;
        rows.push(SweepRow {
            k,
            ratio: ratio(bound.value, estimate.value),
            estimate,
            bound,
        });
    }
    Ok(rows)
}

/// Samples paths once and sweeps the whole grid.
pub fn sweep(
    target: &Target,
    measure: &MeasureSpec,
    seq: &CoefficientSequence,
    config: &McConfig,
    options: &BoundOptions,
) -> Result<Vec<SweepRow>> {
    if let Target::Kernel(spec) = target {
        check_kernel_domain(&Kernel::new(spec.clone())?, measure, seq)?;
    }
    let paths = sample_paths(measure, seq, config)?;
    sweep_from_paths(target, &paths, measure, seq, options)
}

/// Least-squares line through `(ln k, ln estimate)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points: usize,
}

/// Fits `ln y = intercept + slope ln x` to the points with `x, y > 0`.
pub fn fit_log_log(points: &[(f64, f64)]) -> Result<DecayFit> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::arg(format!(
            "decay fit needs at least 3 positive points, got {}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::arg("decay fit needs at least two distinct k"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = pts
        .iter()
        .map(|p| {
            let r = p.1 - intercept - slope * p.0;
            r * r
        })
        .sum();
    Ok(DecayFit {
        slope,
        intercept,
        residual: (rss / n).sqrt(),
        points: pts.len(),
    })
}

/// Fits the decay of the estimates in `rows`.
pub fn fit_decay_rate(rows: &[SweepRow]) -> Result<DecayFit> {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.k as f64, r.estimate.value)).collect();
    fit_log_log(&pts)
}
