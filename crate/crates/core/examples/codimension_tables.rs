//! The cubic (H, K) grid, the five-tuples, Hodge numbers and complete-intersection codimensions.
//! Pass `--slow` for the n = 12 rows.

use fermat_periods::report::{cmd_codim_table, cmd_table1, RunConfig};

fn main() -> fermat_periods::Result<()> {
    let cfg = RunConfig {
        slow: std::env::args().any(|a| a == "--slow"),
        ..RunConfig::default()
    };
    let t1 = cmd_table1(&cfg)?;
    print!("{}", t1.to_table());
    let ct = cmd_codim_table(&RunConfig::default())?;
    print!("{}", ct.to_table());
    if t1.failed || ct.failed {
        std::process::exit(1);
    }
    Ok(())
}
