//! The double-expectation error e₁ next to the mean-square error e₂.

use dimtrunc::coefficients::CoefficientSequence;
use dimtrunc::estimators::{e1_from_paths, err_kernel_from_paths, sample_paths_role, McConfig};
use dimtrunc::kernels::{Kernel, KernelSpec, WeightFunction};
use dimtrunc::measures::MeasureSpec;
use dimtrunc::rng::StreamRole;

fn main() -> dimtrunc::Result<()> {
    let m = MeasureSpec::UniformSym;
    let seq = CoefficientSequence::power_law(2.0)?;
    let config = McConfig::new(20_000, 5_000, 3, vec![1, 4, 16])?;
    let xs = sample_paths_role(&m, &seq, &config, StreamRole::Path)?;
    let zs = sample_paths_role(&m, &seq, &config, StreamRole::PairedPath)?;
    for spec in [
        KernelSpec::FractionalWiener { beta: 0.5 },
        KernelSpec::korobov(WeightFunction::GeometricDecay { q: 0.5 }),
        KernelSpec::TwoSidedRFolded { r: 2 },
    ] {
        let k = Kernel::new(spec)?;
        println!("{}", k.spec().name());
        for &kk in &config.k_grid {
            let e1 = e1_from_paths(&k, &xs, &zs, &m, &seq, kk)?;
            let e2 = err_kernel_from_paths(&k, &xs, &m, &seq, kk)?;
            println!(
                "  k={kk:<3} e1={:.5e} (+-{:.1e}{})  e2={:.5e} (+-{:.1e})",
                e1.value,
                e1.std_error,
                if e1.clamped { ", clamped" } else { "" },
                e2.value,
                e2.std_error
            );
        }
    }
    Ok(())
}
