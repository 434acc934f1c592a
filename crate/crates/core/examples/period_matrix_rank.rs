//! Ranks of `[p_{i+j}]`: exact, modular, and the single-cycle closed form.

use fermat_periods::cyclotomic::ModpEmbedding;
use fermat_periods::dimension_formulas::single_cycle_rank;
use fermat_periods::linear_cycles::{standard_pair, CycleCombination};
use fermat_periods::period_matrix::{is_kernel_vector, matrix_of, rank_modp_multi};
use fermat_periods::CycloCtx;

fn main() -> fermat_periods::Result<()> {
    for (n, d) in [(2, 4), (2, 6), (4, 3), (4, 4), (4, 6), (6, 3), (8, 3)] {
        let ctx = CycloCtx::new(d)?;
        let (p, _) = standard_pair(n, d, n as i64 / 2)?;
        let mat = matrix_of(&ctx, &CycleCombination::single(&p));
        let modp: Vec<_> = rank_modp_multi(&mat, &ModpEmbedding::standard(&ctx, 2))
            .into_iter()
            .map(|r| r.map_or(-1, |x| x as i64))
            .collect();
        println!(
            "({n},{d}) {}x{}: rank {} (formula {}), mod p {modp:?}",
            mat.nrows(),
            mat.ncols(),
            mat.rank_exact(),
            single_cycle_rank(n, d)
        );
    }

    let ctx = CycloCtx::new(3)?;
    let (p, q) = standard_pair(6, 3, 1)?;
    let mat = matrix_of(&ctx, &CycleCombination::pair(&p, 1, &q, 1)?);
    let ker = mat.kernel_basis();
    println!(
        "(6,3,1) pair: rank {}, kernel dim {}, all kernel vectors exact: {}",
        mat.rank_exact(),
        ker.len(),
        ker.iter().all(|v| is_kernel_vector(&mat, v))
    );
    Ok(())
}
