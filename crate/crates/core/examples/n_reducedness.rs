//! N-reducedness of Hodge loci of r·P + ř·P' for lines on the quintic and planes on the quartic.

use fermat_periods::hodge_locus::{check_n_reduced, Budget, FamilyChoice, LocusProblem};
use fermat_periods::linear_cycles::{standard_pair, CycleCombination};
use fermat_periods::CycloCtx;

fn main() -> fermat_periods::Result<()> {
    let cases = [
        (2, 5, 0, 1, 2, FamilyChoice::Full),
        (2, 5, 0, 1, -1, FamilyChoice::Full),
        (2, 5, -1, 1, 1, FamilyChoice::Full),
        (4, 4, 0, 1, -1, FamilyChoice::Split),
    ];
    for (n, d, m, r, rc, fam) in cases {
        let ctx = CycloCtx::new(d)?;
        let (p, q) = standard_pair(n, d, m)?;
        let z = CycleCombination::pair(&p, r, &q, rc)?;
        let prob = LocusProblem::with_choice(z, fam, 3, Budget::default())?;
        let rep = check_n_reduced(&ctx, &prob)?;
        let obst = rep
            .first_obstruction()
            .map_or("none".to_string(), |(j, b)| format!("stage {j} by form {b}"));
        println!(
            "({n},{d},{m}) r = {r}, r' = {rc}, {} family ({} params): K = {}, reduced up to {}, obstruction {obst}",
            rep.family,
            rep.num_params,
            rep.tangent_codim(),
            rep.reduced_up_to()
        );
    }
    Ok(())
}
