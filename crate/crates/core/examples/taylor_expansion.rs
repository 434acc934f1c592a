//! Taylor expansion of a period under deformation of the Fermat quintic surface.

use std::sync::Arc;

use fermat_periods::indices::ExpVec;
use fermat_periods::linear_cycles::standard_pair;
use fermat_periods::periods::{period_linear, PeriodScale};
use fermat_periods::taylor_series::{series_arith, taylor_period, DeformFamily, FormIndex, SeriesOp};
use fermat_periods::CycloCtx;

fn main() -> fermat_periods::Result<()> {
    let ctx = CycloCtx::new(5)?;
    let (p, _) = standard_pair(2, 5, 0)?;
    let fam = Arc::new(DeformFamily::full(2, 5));
    println!("{} deformation parameters", fam.len());

    // a top form: the constant term is the period itself
    let top = FormIndex::new(ExpVec(vec![3, 0, 3, 0]), 5)?;
    let s = taylor_period(&ctx, &p, &top, &fam, 1)?;
    println!("constant term {}", s.coeff(&[]).expect("nonzero period"));
    println!("period        {}", period_linear(&ctx, &p, top.beta(), PeriodScale::Exact)?);

    // a form of pole order 1 vanishes at the Fermat point; its linear part is a row of [p_{i+j}]
    let beta = FormIndex::new(ExpVec(vec![1, 0, 0, 0]), 5)?;
    let s = taylor_period(&ctx, &p, &beta, &fam, 2)?;
    println!("{} terms up to order 2:", s.len());
    print!("{}", s.to_text());

    let sq = series_arith(&s, &s, SeriesOp::Mul)?;
    println!("its square truncated at order 2 is zero: {}", sq.is_zero());
    Ok(())
}
