//! Hermite bound for Gaussian coordinates, where the supremum is infinite and
//! an estimate of E exp(Y_abs²) stands in.

use dimtrunc::bounds::{hermite_bound, HermiteMode};
use dimtrunc::coefficients::CoefficientSequence;
use dimtrunc::estimators::{estimate_exp_abs_sq, McConfig};
use dimtrunc::kernels::WeightFunction;
use dimtrunc::measures::MeasureSpec;

fn main() -> dimtrunc::Result<()> {
    let m = MeasureSpec::gaussian(0.04)?;
    let seq = CoefficientSequence::power_law(3.0)?;
    let w = WeightFunction::GeometricDecay { q: 0.5 };
    let config = McConfig::new(20_000, 2_000, 9, vec![1])?;
    let exp_moment = estimate_exp_abs_sq(&m, &seq, &config)?;
    println!("E exp(Y_abs^2) ~ {} +- {}", exp_moment.value, exp_moment.std_error);
    for k in [1, 4, 16, 64] {
        let b = hermite_bound(&m, &seq, k, &w, HermiteMode::SplitExp, Some(&exp_moment))?;
        println!("k={k:<3} {} {}", b.formula_id, b.value);
    }
    let refused = hermite_bound(&m, &seq, 1, &w, HermiteMode::BoundedExp, None);
    println!("bounded mode: {}", refused.unwrap_err());
    Ok(())
}
