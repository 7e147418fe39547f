//! Evaluates each kernel family and the induced squared distance.

use dimtrunc::kernels::{Kernel, KernelSpec, WeightFunction};

fn main() -> dimtrunc::Result<()> {
    let specs = [
        KernelSpec::FractionalWiener { beta: 0.5 },
        KernelSpec::RFoldedWiener { r: 3 },
        KernelSpec::TwoSidedRFolded { r: 2 },
        KernelSpec::korobov(WeightFunction::GeometricDecay { q: 0.5 }),
        KernelSpec::hermite(WeightFunction::PolynomialDecay { alpha: 4.0 }),
    ];
    let points = [(0.3, 0.7), (1.2, 1.25), (0.0, 2.0)];
    for spec in specs {
        let k = Kernel::new(spec)?;
        match k.series_cap() {
            Some(cap) => println!("{} (series cap {cap}, discarded mass {:e})", k.spec().name(), k.discarded_mass()),
            None => println!("{}", k.spec().name()),
        }
        for (x, y) in points {
            println!("  K({x}, {y}) = {:<24} d2 = {}", k.eval(x, y)?, k.sq_distance(x, y)?);
        }
    }
    Ok(())
}
