//! Exact arithmetic in Q(ζ_{2d}) and its images in F_p.

use fermat_periods::cyclotomic::ModpEmbedding;
use fermat_periods::{cyclo_arith, ArithOp, CycloCtx, CycloNum};
use num_rational::BigRational;

fn main() -> fermat_periods::Result<()> {
    let ctx = CycloCtx::new(5)?;
    println!("Q(zeta_{}) has degree {}; Phi = {:?}", ctx.order(), ctx.degree(), ctx.phi());

    let z = CycloNum::root(&ctx, 1);
    println!("zeta^5 = {}", z.pow(5));
    println!("zeta^10 = {}", z.pow(10));

    let x = &CycloNum::from_int(&ctx, 2) + &z.pow(3);
    let y = x.inv()?;
    println!("x = {x}");
    println!("1/x = {y}");
    println!("x * (1/x) = {}", cyclo_arith(&x, &y, ArithOp::Mul)?);

    let q = x.scale(&BigRational::new(3.into(), 7.into()));
    println!("3/7 x = {q} ~ {:?}", q.eval_complex());

    for emb in ModpEmbedding::standard(&ctx, 3) {
        println!(
            "p = {}, zeta -> {}, x -> {}, 1/x -> {}",
            emb.prime(),
            emb.root(),
            emb.image(&x)?,
            emb.image(&y)?
        );
    }
    Ok(())
}
