//! Linear cycles on Fermat surfaces and fourfolds, their intersections and bicycles.

use fermat_periods::linear_cycles::{
    bicycles, cycle_count_formula, enumerate_cycles, intersection_dim, intersection_number, m_count, standard_pair,
};
use fermat_periods::CycloCtx;

fn main() -> fermat_periods::Result<()> {
    let ctx = CycloCtx::new(3)?;
    let lines = enumerate_cycles(2, 3)?;
    println!("cubic surface: {} lines (formula {})", lines.len(), cycle_count_formula(2, 3));
    assert!(lines.iter().all(|l| l.lies_on_fermat(&ctx)));

    // each line meets ten others in a point
    let meets = |i: usize| {
        lines
            .iter()
            .enumerate()
            .filter(|&(j, m)| j != i && intersection_dim(&ctx, &lines[i], m) == 0)
            .count()
    };
    println!("line 0 meets {} lines; self-intersection {}", meets(0), intersection_number(3, 1));

    for (n, d) in [(2, 4), (4, 3), (4, 6)] {
        println!("X^{d}_{n}: {} linear cycles", enumerate_cycles(n, d)?.len());
    }

    let ctx = CycloCtx::new(4)?;
    for m in -1..=2 {
        let (p, q) = standard_pair(4, 4, m)?;
        println!("(4,4) standard pair m = {m}: {p} / {q}");
        println!("  intersection dim {}, from bicycles {}", intersection_dim(&ctx, &p, &q), m_count(&p, &q));
        for b in bicycles(&p, &q) {
            println!("  bicycle {:?} conductor {} new {}", b.vertices, b.conductor, b.is_new);
        }
    }
    Ok(())
}
