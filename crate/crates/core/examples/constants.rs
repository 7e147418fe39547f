//! Absolute moments and the constants C(M, ω) for every supported measure.

use dimtrunc::measures::MeasureSpec;

fn main() -> dimtrunc::Result<()> {
    let measures = [
        MeasureSpec::Uniform01,
        MeasureSpec::UniformSym,
        MeasureSpec::exponential(1.0)?,
        MeasureSpec::logistic(1.0)?,
        MeasureSpec::gaussian(1.0)?,
    ];
    for m in measures {
        println!("{}  mean={} variance={}", m.name(), m.mean(), m.variance());
        for order in 1..=6 {
            let closed = m.c_constant_closed(order)?;
            println!(
                "  M={order}  m_M={:<22} C_enum={:<22} closed={:?}",
                m.moment_abs(order)?,
                m.c_constant_enum(order)?,
                closed
            );
        }
    }
    Ok(())
}
