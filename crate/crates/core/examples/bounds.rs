//! Bound reports for several targets, with the formula that produced each.

use dimtrunc::bounds::{bound_for, closed_form, BoundOptions, HolderClass, SupMode, Target};
use dimtrunc::coefficients::CoefficientSequence;
use dimtrunc::kernels::{KernelSpec, WeightFunction};
use dimtrunc::measures::MeasureSpec;

fn main() -> dimtrunc::Result<()> {
    let seq = CoefficientSequence::power_law(2.0)?;
    let cases = [
        (Target::Holder(HolderClass::new(1.0, 0.5)?), MeasureSpec::UniformSym, SupMode::Bounded),
        (Target::Kernel(KernelSpec::RFoldedWiener { r: 2 }), MeasureSpec::Uniform01, SupMode::Bounded),
        (Target::Kernel(KernelSpec::RFoldedWiener { r: 2 }), MeasureSpec::exponential(1.0)?, SupMode::Unbounded),
        (Target::Kernel(KernelSpec::TwoSidedRFolded { r: 3 }), MeasureSpec::gaussian(1.0)?, SupMode::Unbounded),
        (
            Target::Kernel(KernelSpec::korobov(WeightFunction::GeometricDecay { q: 0.5 })),
            MeasureSpec::UniformSym,
            SupMode::Bounded,
        ),
        (
            Target::Kernel(KernelSpec::hermite(WeightFunction::GeometricDecay { q: 0.5 })),
            MeasureSpec::UniformSym,
            SupMode::Bounded,
        ),
    ];
    for (target, measure, sup_mode) in cases {
        let opts = BoundOptions { sup_mode, ..BoundOptions::default() };
        println!("{} under {}", target.name(), measure.name());
        for k in [1, 4, 16, 64] {
            let b = bound_for(&target, &measure, &seq, k, &opts, None)?;
            println!("  k={k:<3} {:<11} {}", b.formula_id.as_str(), b.value);
        }
    }

    println!("closed forms for a = 2:");
    for k in [1, 4, 16, 64] {
        println!(
            "  k={k:<3} c_(2,a)/(k+1/2) = {:<24} c_(2,lambda=1)/(k+1/2) = {}",
            closed_form::rfolded_uniform(2, 2.0, k)?,
            closed_form::rfolded_exponential(2, 2.0, 1.0, k)?
        );
    }
    Ok(())
}
