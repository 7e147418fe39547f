//! Monte Carlo truncation errors against their bounds for the Korobov kernel.

use dimtrunc::bounds::{BoundOptions, Target};
use dimtrunc::coefficients::CoefficientSequence;
use dimtrunc::estimators::{fit_decay_rate, sweep, McConfig};
use dimtrunc::kernels::{KernelSpec, WeightFunction};
use dimtrunc::measures::MeasureSpec;

fn main() -> dimtrunc::Result<()> {
    let target = Target::Kernel(KernelSpec::korobov(WeightFunction::GeometricDecay { q: 0.5 }));
    let seq = CoefficientSequence::power_law(2.0)?;
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let config = McConfig::new(20_000, 20_000, 1, vec![1, 2, 4, 8, 16, 32])?.with_workers(workers);
    let rows = sweep(&target, &MeasureSpec::UniformSym, &seq, &config, &BoundOptions::default())?;
    println!("{:>3} {:>14} {:>12} {:>14} {:>8}", "k", "estimate", "std_error", "bound", "ratio");
    for r in &rows {
        println!(
            "{:>3} {:>14.6e} {:>12.3e} {:>14.6e} {:>8.4}",
            r.k, r.estimate.value, r.estimate.std_error, r.bound.value, r.ratio
        );
    }
    let fit = fit_decay_rate(&rows)?;
    println!("log-log slope {:.4} (residual {:.2e})", fit.slope, fit.residual);
    Ok(())
}
