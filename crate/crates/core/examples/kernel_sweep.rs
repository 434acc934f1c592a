//! Tests `rank(A*B) > rank A, rank B` for random pairs of sums of two linear cycles.

use fermat_periods::report::{cmd_sweep_kernels, RunConfig};

fn main() -> fermat_periods::Result<()> {
    let cfg = RunConfig {
        n: Some(4),
        d: Some(3),
        samples: 20,
        seed: 2017,
        ..RunConfig::default()
    };
    let rep = cmd_sweep_kernels(&cfg)?;
    for r in &rep.results {
        println!("{} rank A {} rank B {} rank A*B {}", r["sample"], r["rankA"], r["rankB"], r["rankAB"]);
    }
    for d in &rep.diagnostics {
        println!("{d}");
    }
    Ok(())
}
