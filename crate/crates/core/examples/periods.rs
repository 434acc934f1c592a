//! Periods of a line on the Fermat cubic surface and of a pair of lines on the quintic.

use fermat_periods::indices::ExpVec;
use fermat_periods::linear_cycles::{standard_pair, CycleCombination, LinearCycle};
use fermat_periods::periods::{period_linear, period_vector, PeriodScale};
use fermat_periods::CycloCtx;

fn main() -> fermat_periods::Result<()> {
    let ctx = CycloCtx::new(3)?;
    let line = LinearCycle::new(2, 3, vec![0, 0], vec![0, 1, 2, 3])?;
    let i = ExpVec(vec![1, 0, 1, 0]);
    println!("p_{i}({line}) = {}", period_linear(&ctx, &line, &i, PeriodScale::Exact)?);

    let ctx = CycloCtx::new(5)?;
    let (p, q) = standard_pair(2, 5, 0)?;
    let z = CycleCombination::pair(&p, 1, &q, 2)?;
    let pv = period_vector(&ctx, &z, PeriodScale::Exact);
    println!("P + 2P' on X^5_2: support {} of {}", pv.support_size(), pv.index().len());
    for (i, v) in pv.iter().filter(|(_, v)| !v.is_zero()) {
        println!("  {i}: {v}");
    }
    Ok(())
}
