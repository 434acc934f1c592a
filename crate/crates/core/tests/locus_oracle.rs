//! N-reducedness cross-checked against a direct stacked linear solve modulo a prime.
//!
//! For each stage j the oracle asks whether every `f` lies in `<f_K> + m^{j+1}` by solving
//! `f = Σ g_k f_k` for unknown `g_k` of degree `< j`, and compares with `check_n_reduced`.

use std::collections::HashMap;
use std::sync::Arc;

use fermat_periods::cyclotomic::ModpEmbedding;
use fermat_periods::hodge_locus::{check_n_reduced, LocusProblem};
use fermat_periods::linear_cycles::{standard_pair, CycleCombination};
use fermat_periods::modular::rank_mod_p;
use fermat_periods::taylor_series::{taylor_batch, DeformFamily, TruncSeries};
use fermat_periods::CycloCtx;

fn monomials(p: u32, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for m in &frontier {
            let lo = m.last().copied().unwrap_or(0);
            for v in lo..p {
                let mut m2: Vec<u32> = m.clone();
                m2.push(v);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn merge(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut m = [a, b].concat();
    m.sort_unstable();
    m
}

/// Is `f ≡ Σ g_k basis_k` modulo terms of degree > j, over F_p?
fn member(f: &TruncSeries, basis: &[&TruncSeries], j: u32, emb: &ModpEmbedding, np: u32) -> bool {
    let p = emb.prime();
    let rows_idx: HashMap<Vec<u32>, usize> = monomials(np, j).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mults = monomials(np, j - 1);
    let ncols = basis.len() * mults.len();
    let mut rows = vec![vec![0u64; ncols + 1]; rows_idx.len()];
    for (k, g) in basis.iter().enumerate() {
        for (u, mu) in mults.iter().enumerate() {
            for (nu, c) in g.terms() {
                if mu.len() + nu.len() > j as usize {
                    continue;
                }
                let r = rows_idx[&merge(mu, nu)];
                let cell = &mut rows[r][k * mults.len() + u];
                *cell = (*cell + emb.image(c).unwrap()) % p;
            }
        }
    }
    for (nu, c) in f.terms() {
        if nu.len() <= j as usize {
            rows[rows_idx[nu]][ncols] = emb.image(c).unwrap();
        }
    }
    let lhs: Vec<Vec<u64>> = rows.iter().map(|r| r[..ncols].to_vec()).collect();
    rank_mod_p(lhs, p) == rank_mod_p(rows, p)
}

fn compare(n: u32, d: u32, m: i64, r: i64, rc: i64, keep_every: usize, order: u32) {
    let ctx = CycloCtx::new(d).unwrap();
    let (p, q) = standard_pair(n, d, m).unwrap();
    let z = CycleCombination::pair(&p, r, &q, rc).unwrap();
    let params = DeformFamily::full(n, d).params().iter().step_by(keep_every).cloned().collect();
    let fam = Arc::new(DeformFamily::custom(n, d, params).unwrap());
    let prob = LocusProblem::new(z.clone(), fam.clone(), order).unwrap();
    let rep = check_n_reduced(&ctx, &prob).unwrap();

    let series = taylor_batch(&ctx, &z, prob.forms(), &fam, order).unwrap();
    let basis: Vec<&TruncSeries> = prob
        .forms()
        .iter()
        .zip(&series)
        .filter(|(f, _)| rep.basis_selection.contains(f.beta()))
        .map(|(_, s)| s)
        .collect();
    assert_eq!(basis.len(), rep.basis_selection.len());
    let emb = &ModpEmbedding::standard(&ctx, 1)[0];
    for stage in &rep.stages {
        let oracle = series.iter().all(|f| member(f, &basis, stage.stage, emb, fam.len() as u32));
        assert_eq!(
            oracle, stage.solvable,
            "({n},{d},{m},{r},{rc}) every {keep_every}th parameter, stage {}",
            stage.stage
        );
    }
}

#[test]
fn quintic_pair_reduced_family() {
    compare(2, 5, 0, 1, 2, 3, 3);
}

#[test]
fn quintic_opposite_pair_reduced_family() {
    compare(2, 5, 0, 1, -1, 2, 3);
}

#[test]
fn quintic_disjoint_pair_reduced_family() {
    compare(2, 5, -1, 1, 1, 4, 3);
}

#[test]
fn quintic_pair_half_family() {
    compare(2, 5, 0, 1, 2, 2, 3);
}
