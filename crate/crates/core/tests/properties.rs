use std::sync::Arc;

use fermat_periods::cyclotomic::ModpEmbedding;
use fermat_periods::linear_cycles::{enumerate_cycles, CycleCombination};
use fermat_periods::period_matrix::matrix_of;
use fermat_periods::periods::{period_vector, PeriodScale};
use fermat_periods::taylor_series::{series_arith, DeformFamily, SeriesOp, TruncSeries};
use fermat_periods::{CycloCtx, CycloNum};
use num_rational::BigRational;
use proptest::prelude::*;

fn num(ctx: &Arc<CycloCtx>, c: &[(i64, i64)]) -> CycloNum {
    let coeffs = c
        .iter()
        .take(ctx.degree())
        .map(|&(a, b)| BigRational::new(a.into(), b.into()))
        .collect();
    CycloNum::from_coeffs(ctx, coeffs).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..20, 1i64..9), 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(d in 3u32..8, a in coeffs(), b in coeffs(), c in coeffs()) {
        let ctx = CycloCtx::new(d).unwrap();
        let (x, y, z) = (num(&ctx, &a), num(&ctx, &b), num(&ctx, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn modp_is_a_ring_map(d in 3u32..8, a in coeffs(), b in coeffs()) {
        let ctx = CycloCtx::new(d).unwrap();
        let (x, y) = (num(&ctx, &a), num(&ctx, &b));
        for emb in ModpEmbedding::standard(&ctx, 2) {
            let p = emb.prime() as u128;
            let (ix, iy) = (emb.image(&x).unwrap() as u128, emb.image(&y).unwrap() as u128);
            prop_assert_eq!(emb.image(&(&x * &y)).unwrap() as u128, ix * iy % p);
            prop_assert_eq!(emb.image(&(&x + &y)).unwrap() as u128, (ix + iy) % p);
        }
    }

    #[test]
    fn periods_are_linear(i in 0usize..48, j in 0usize..48, r in -4i64..5, s in -4i64..5) {
        let ctx = CycloCtx::new(4).unwrap();
        let cs = enumerate_cycles(2, 4).unwrap();
        let z = CycleCombination::pair(&cs[i], r, &cs[j], s);
        prop_assume!(z.is_ok());
        let pv = period_vector(&ctx, &z.unwrap(), PeriodScale::Exact);
        let pi = period_vector(&ctx, &CycleCombination::single(&cs[i]), PeriodScale::Exact);
        let pj = period_vector(&ctx, &CycleCombination::single(&cs[j]), PeriodScale::Exact);
        let want = pi.combine(r, &pj, s);
        prop_assert_eq!(pv.values(), want.values());
    }

    #[test]
    fn rank_ignores_nonzero_scaling(i in 0usize..48, k in 1i64..6, neg in any::<bool>()) {
        let ctx = CycloCtx::new(4).unwrap();
        let cs = enumerate_cycles(2, 4).unwrap();
        let z = CycleCombination::single(&cs[i]);
        let k = if neg { -k } else { k };
        prop_assert_eq!(matrix_of(&ctx, &z).rank_exact(), matrix_of(&ctx, &z.scaled(k)).rank_exact());
    }

    #[test]
    fn series_ring_axioms(
        ta in prop::collection::vec((prop::collection::vec(0u32..5, 0..3), -5i64..6), 0..6),
        tb in prop::collection::vec((prop::collection::vec(0u32..5, 0..3), -5i64..6), 0..6),
        tc in prop::collection::vec((prop::collection::vec(0u32..5, 0..3), -5i64..6), 0..6),
    ) {
        let ctx = CycloCtx::new(4).unwrap();
        let fam = Arc::new(DeformFamily::full(2, 4));
        let build = |t: &[(Vec<u32>, i64)]| {
            let mut s = TruncSeries::zero(&ctx, &fam, 3);
            for (m, c) in t {
                let mut m = m.clone();
                m.sort_unstable();
                s.add_term(m, &CycloNum::from_int(&ctx, *c) + &CycloNum::root(&ctx, *c));
            }
            s
        };
        let (a, b, c) = (build(&ta), build(&tb), build(&tc));
        let op = |x: &TruncSeries, y: &TruncSeries, o| series_arith(x, y, o).unwrap();
        prop_assert_eq!(op(&op(&a, &b, SeriesOp::Mul), &c, SeriesOp::Mul), op(&a, &op(&b, &c, SeriesOp::Mul), SeriesOp::Mul));
        prop_assert_eq!(op(&a, &op(&b, &c, SeriesOp::Add), SeriesOp::Mul), op(&op(&a, &b, SeriesOp::Mul), &op(&a, &c, SeriesOp::Mul), SeriesOp::Add));
        prop_assert!(op(&a, &a, SeriesOp::Sub).is_zero());
    }
}
