//! Rank of `[p_{i+j}(P + x·P')]` as x varies: generic rank and rational drop points.

use fermat_periods::linear_cycles::standard_pair;
use fermat_periods::period_matrix::{constant_rank_scan, ParamMatrix};
use fermat_periods::CycloCtx;

fn main() -> fermat_periods::Result<()> {
    for (n, d) in [(2, 5), (4, 3), (6, 3)] {
        let ctx = CycloCtx::new(d)?;
        for m in -1..=n as i64 / 2 {
            let (p, q) = standard_pair(n, d, m)?;
            let scan = constant_rank_scan(&ParamMatrix::for_pair(&ctx, &p, &q))?;
            let roots: Vec<String> = scan.roots.iter().map(|r| format!("{}:{}", r.x, r.rank)).collect();
            println!(
                "({n},{d},{m}): generic rank {} ({} probes), gcd {}, roots {roots:?}",
                scan.generic_rank, scan.probes, scan.gcd
            );
        }
    }
    Ok(())
}
