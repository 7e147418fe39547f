//! Tail sums of ξ_j = j^{-a} next to their integral bracket.

use dimtrunc::coefficients::{tail_bracket, zeta, CoefficientSequence};

fn main() -> dimtrunc::Result<()> {
    for a in [1.5, 2.0, 3.0] {
        let s = CoefficientSequence::power_law(a)?;
        println!("a = {a}, zeta(a) = {}", zeta(a)?);
        for k in [0, 1, 4, 16, 64, 256] {
            let (lo, hi) = tail_bracket(a, k)?;
            println!(
                "  k={k:<4} lo={lo:<24} tail={:<24} hi={hi:<24} tail_sq={}",
                s.tail_abs_sum(k),
                s.tail_sq_sum(k)
            );
        }
    }
    Ok(())
}
