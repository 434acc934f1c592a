//! N-reducedness of Hodge loci at the Fermat point.
//!
//! The locus of `δ₀` is cut out by `f_β = ∫_{δ_t} x^β Ω / f_t^k` for the forms with
//! `k <= n/2`. Pick forms whose linear parts are a basis (the set K); they define a smooth
//! germ, the graph of `t_piv = φ(t_free)`. A remaining `f` lies in `⟨f_K⟩ + m^{N+1}` iff
//! `f(φ(t_free), t_free)` has no term of degree `<= N`, so the first stage that fails is
//! the lowest degree left after substitution.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloCtx, CycloNum};
use crate::error::{Error, Result};
use crate::indices::ExpVec;
use crate::linalg::rref;
use crate::linear_cycles::CycleCombination;
use crate::period_matrix::matrix_of;
use crate::taylor_series::{
    forms_up_to, linear_part, series_arith, taylor_batch, DeformFamily, FamilyKind, FormIndex, Monomial, SeriesOp,
    TruncSeries,
};

/// Which deformation family to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyChoice {
    Full,
    Split,
    /// Full if it fits the budget, split otherwise.
    Auto,
}

impl std::str::FromStr for FamilyChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<FamilyChoice> {
        match s {
            "full" => Ok(FamilyChoice::Full),
            "split" => Ok(FamilyChoice::Split),
            "auto" => Ok(FamilyChoice::Auto),
            _ => Err(Error::InvalidParameters(format!("unknown family {s:?}"))),
        }
    }
}

/// Upper bound on the number of parameter monomials of degree `<= N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_monomials: u128,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { max_monomials: 150_000 }
    }
}

#[derive(Clone, Debug)]
pub struct LocusProblem {
    z: CycleCombination,
    family: Arc<DeformFamily>,
    order: u32,
    forms: Vec<FormIndex>,
}

impl LocusProblem {
    /// Uses every form with `1 <= k <= n/2`, ordered by `k` and then lexicographically.
    pub fn new(z: CycleCombination, family: Arc<DeformFamily>, order: u32) -> Result<LocusProblem> {
        if order == 0 {
            return Err(Error::InvalidParameters("truncation order must be at least 1".into()));
        }
        if family.n() != z.n() || family.d() != z.d() {
            return Err(Error::InvalidParameters("family and cycle live on different hypersurfaces".into()));
        }
        let forms = forms_up_to(z.n(), z.d(), z.n() / 2);
        Ok(LocusProblem {
            z,
            family,
            order,
            forms,
        })
    }

    /// Picks the family from `choice`, refusing anything over `budget`.
    pub fn with_choice(z: CycleCombination, choice: FamilyChoice, order: u32, budget: Budget) -> Result<LocusProblem> {
        let (n, d) = (z.n(), z.d());
        let fits = |f: &DeformFamily| f.monomial_count(order) <= budget.max_monomials;
        let family = match choice {
            FamilyChoice::Full => DeformFamily::full(n, d),
            FamilyChoice::Split => DeformFamily::split(n, d),
            FamilyChoice::Auto => {
                let full = DeformFamily::full(n, d);
                if fits(&full) {
                    full
                } else {
                    DeformFamily::split(n, d)
                }
            }
        };
        if !fits(&family) {
            return Err(Error::ResourceBudget(format!(
                "{} family on X^{d}_{n} has {} parameters, {} monomials up to degree {order} (budget {})",
                family.kind(),
                family.len(),
                family.monomial_count(order),
                budget.max_monomials
            )));
        }
        LocusProblem::new(z, Arc::new(family), order)
    }

    /// Same problem with the form order reversed; the verdict must not change.
    pub fn reversed_forms(&self) -> LocusProblem {
        let mut p = self.clone();
        p.forms.reverse();
        p
    }

    pub fn z(&self) -> &CycleCombination {
        &self.z
    }

    pub fn family(&self) -> &Arc<DeformFamily> {
        &self.family
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn forms(&self) -> &[FormIndex] {
        &self.forms
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageVerdict {
    pub stage: u32,
    pub solvable: bool,
    /// A form whose equation fails at this stage.
    pub obstruction: Option<ExpVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducednessReport {
    pub n: u32,
    pub d: u32,
    pub family: FamilyKind,
    pub num_params: usize,
    pub order: u32,
    pub num_forms: usize,
    /// Forms whose linear parts were taken as the basis.
    pub basis_selection: Vec<ExpVec>,
    pub stages: Vec<StageVerdict>,
}

impl ReducednessReport {
    /// Largest `j <= order` with every stage up to `j` solvable.
    pub fn reduced_up_to(&self) -> u32 {
        self.stages.iter().take_while(|s| s.solvable).count() as u32
    }

    pub fn is_reduced(&self, j: u32) -> bool {
        j <= self.reduced_up_to()
    }

    /// First failing stage and the form responsible.
    pub fn first_obstruction(&self) -> Option<(u32, &ExpVec)> {
        self.stages
            .iter()
            .find(|s| !s.solvable)
            .map(|s| (s.stage, s.obstruction.as_ref().expect("obstructed stage names a form")))
    }

    /// Rank of the linear parts, i.e. the codimension of the Zariski tangent space in the family.
    pub fn tangent_codim(&self) -> usize {
        self.basis_selection.len()
    }
}

/// Greedy choice of forms with independent linear parts (first independent wins).
fn greedy_basis(rows: &[Vec<CycloNum>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<CycloNum>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].inv().expect("nonzero");
            let v: Vec<CycloNum> = v.iter().map(|x| x * &inv).collect();
            basis.push((pc, v));
            picked.push(idx);
        }
    }
    picked
}

struct Graph<'a> {
    ctx: &'a Arc<CycloCtx>,
    slot: Vec<Option<usize>>,
    phi: Vec<TruncSeries>,
    cache: HashMap<Monomial, TruncSeries>,
}

impl Graph<'_> {
    /// `Π φ_c` over a multiset of pivot parameters, truncated at `order`.
    fn product(&mut self, piv: &[u32], order: u32) -> TruncSeries {
        if let Some(s) = self.cache.get(piv) {
            return s.clone();
        }
        let last = self.slot[piv[piv.len() - 1] as usize].expect("pivot");
        let s = if piv.len() == 1 {
            self.phi[last].truncate(order)
        } else {
            let head = self.product(&piv[..piv.len() - 1], order);
            head.mul_trunc(&self.phi[last], order)
        };
        self.cache.insert(piv.to_vec(), s.clone());
        s
    }

    /// `g` with every pivot parameter replaced by its graph series.
    fn substitute(&mut self, g: &TruncSeries, order: u32) -> TruncSeries {
        let mut out = TruncSeries::zero(self.ctx, g.family(), order);
        for (m, c) in g.terms() {
            if m.len() as u32 > order {
                continue;
            }
            let (piv, free): (Vec<u32>, Vec<u32>) = m.iter().partition(|&&j| self.slot[j as usize].is_some());
            if piv.is_empty() {
                out.add_term(free, c.clone());
                continue;
            }
            let room = order - free.len() as u32;
            let prod = self.product(&piv, order);
            for (m2, c2) in prod.terms() {
                if m2.len() as u32 <= room {
                    let mut key = free.clone();
                    key.extend_from_slice(m2);
                    key.sort_unstable();
                    out.add_term(key, c * c2);
                }
            }
        }
        out
    }
}

/// Decides `j`-reducedness for `j = 1..=order`.
pub fn check_n_reduced(ctx: &Arc<CycloCtx>, p: &LocusProblem) -> Result<ReducednessReport> {
    let fam = p.family();
    let order = p.order;
    let series = taylor_batch(ctx, &p.z, &p.forms, fam, order)?;
    let lin: Vec<Vec<CycloNum>> = series.iter().map(linear_part).collect();
    let sel = greedy_basis(&lin);
    let k = sel.len();
    let np = fam.len();

    // RREF of [L_K | I] gives h_i = Σ_j T_ij f_{K_j} with linear part t_{piv_i} + (free terms)
    let mut aug = Vec::with_capacity(k);
    for (i, &s) in sel.iter().enumerate() {
        let mut row = lin[s].clone();
        row.extend((0..k).map(|j| CycloNum::from_int(ctx, (i == j) as i64)));
        aug.push(row);
    }
    let (rows, pivots) = rref(aug);
    if pivots.len() != k || pivots.iter().any(|&c| c >= np) {
        return Err(Error::Invariant("selected linear parts are not independent".into()));
    }
    let mut slot = vec![None; np];
    let mut h = Vec::with_capacity(k);
    for (i, &c) in pivots.iter().enumerate() {
        slot[c] = Some(i);
        let mut acc = TruncSeries::zero(ctx, fam, order);
        for (j, &s) in sel.iter().enumerate() {
            let t = &rows[i][np + j];
            if !t.is_zero() {
                acc = series_arith(&acc, &series[s].scale(t), SeriesOp::Add)?;
            }
        }
        // the equation h_i = 0 reads t_c = −(h_i − t_c)
        acc.add_term(vec![c as u32], CycloNum::from_int(ctx, -1));
        h.push(acc);
    }

    let mut g = Graph {
        ctx,
        slot,
        phi: vec![TruncSeries::zero(ctx, fam, order); k],
        cache: HashMap::new(),
    };
    for j in 1..=order {
        g.cache.clear();
        let next: Vec<TruncSeries> = h.iter().map(|hi| g.substitute(hi, j).scale_int(-1)).collect();
        g.phi = next;
    }
    g.cache.clear();

    let in_basis: Vec<bool> = {
        let mut v = vec![false; series.len()];
        for &s in &sel {
            v[s] = true;
        }
        v
    };
    let mut first: Option<(u32, usize)> = None;
    for (idx, f) in series.iter().enumerate() {
        if in_basis[idx] {
            continue;
        }
        let rest = g.substitute(f, order);
        if let Some(v) = rest.valuation() {
            if v <= 1 {
                return Err(Error::Invariant(format!(
                    "form {} survives at degree {v} after substitution",
                    p.forms[idx].beta()
                )));
            }
            if first.is_none_or(|(w, _)| v < w) {
                first = Some((v, idx));
            }
        }
    }
    let stages = (1..=order)
        .map(|j| match first {
            Some((v, idx)) if j >= v => StageVerdict {
                stage: j,
                solvable: false,
                obstruction: Some(p.forms[idx].beta().clone()),
            },
            _ => StageVerdict {
                stage: j,
                solvable: true,
                obstruction: None,
            },
        })
        .collect();
    Ok(ReducednessReport {
        n: p.z.n(),
        d: p.z.d(),
        family: fam.kind(),
        num_params: np,
        order,
        num_forms: p.forms.len(),
        basis_selection: sel.iter().map(|&s| p.forms[s].beta().clone()).collect(),
        stages,
    })
}

/// Rank of `[p_{i+j}]` for the periods of `z`.
pub fn zariski_tangent_codim(ctx: &Arc<CycloCtx>, p: &LocusProblem) -> usize {
    matrix_of(ctx, &p.z).rank_exact()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear_cycles::{standard_pair, LinearCycle};

    fn pair_problem(n: u32, d: u32, m: i64, r: i64, rc: i64, choice: FamilyChoice, order: u32) -> LocusProblem {
        let (p, q) = standard_pair(n, d, m).unwrap();
        let z = CycleCombination::pair(&p, r, &q, rc).unwrap();
        LocusProblem::with_choice(z, choice, order, Budget::default()).unwrap()
    }

    #[test]
    fn quintic_lines_meeting_in_a_point() {
        let ctx = CycloCtx::new(5).unwrap();
        let p = pair_problem(2, 5, 0, 1, 2, FamilyChoice::Full, 3);
        let rep = check_n_reduced(&ctx, &p).unwrap();
        assert_eq!(rep.family, FamilyKind::Full);
        assert_eq!(rep.num_params, 40);
        assert!(rep.stages[0].solvable);
        assert_eq!(rep.reduced_up_to(), 2);
        assert_eq!(rep.first_obstruction().unwrap().0, 3);
        // tangent codim agrees with the period matrix
        assert_eq!(rep.tangent_codim(), zariski_tangent_codim(&ctx, &p));
    }

    #[test]
    fn disjoint_quintic_lines_are_reduced() {
        let ctx = CycloCtx::new(5).unwrap();
        let p = pair_problem(2, 5, -1, 1, 1, FamilyChoice::Full, 3);
        let rep = check_n_reduced(&ctx, &p).unwrap();
        assert_eq!(rep.reduced_up_to(), 3);
        assert!(rep.first_obstruction().is_none());
    }

    #[test]
    fn verdict_ignores_basis_choice_and_scaling() {
        let ctx = CycloCtx::new(5).unwrap();
        let p = pair_problem(2, 5, 0, 1, -1, FamilyChoice::Full, 3);
        let a = check_n_reduced(&ctx, &p).unwrap();
        let b = check_n_reduced(&ctx, &p.reversed_forms()).unwrap();
        assert_eq!(a.reduced_up_to(), b.reduced_up_to());
        let doubled = LocusProblem::new(p.z().scaled(2), Arc::clone(p.family()), 3).unwrap();
        assert_eq!(check_n_reduced(&ctx, &doubled).unwrap().reduced_up_to(), a.reduced_up_to());
    }

    #[test]
    fn budget_and_auto_fallback() {
        let (p, q) = standard_pair(4, 4, 0).unwrap();
        let z = CycleCombination::pair(&p, 1, &q, -1).unwrap();
        assert!(matches!(
            LocusProblem::with_choice(z.clone(), FamilyChoice::Full, 4, Budget::default()),
            Err(Error::ResourceBudget(_))
        ));
        let full = LocusProblem::with_choice(z.clone(), FamilyChoice::Auto, 3, Budget::default()).unwrap();
        assert_eq!(full.family().kind(), FamilyKind::Full);
        let auto = LocusProblem::with_choice(z, FamilyChoice::Auto, 4, Budget::default()).unwrap();
        assert_eq!(auto.family().kind(), FamilyKind::Split);
        assert_eq!(auto.family().len(), 12);
    }

    #[test]
    fn single_cycle_tangent_codim() {
        let ctx = CycloCtx::new(6).unwrap();
        let c = LinearCycle::new(4, 6, vec![0, 0, 0], (0..6).collect()).unwrap();
        let p = LocusProblem::new(CycleCombination::single(&c), Arc::new(DeformFamily::split(4, 6)), 1).unwrap();
        assert_eq!(zariski_tangent_codim(&ctx, &p), 19);
        let ctx3 = CycloCtx::new(3).unwrap();
        let q = pair_problem(6, 3, 1, 1, 1, FamilyChoice::Split, 1);
        assert_eq!(zariski_tangent_codim(&ctx3, &q), 6);
        let (a, _) = standard_pair(2, 3, 0).unwrap();
        let zero = CycleCombination::pair(&a, 1, &a, -1).unwrap();
        let pz = LocusProblem::new(zero, Arc::new(DeformFamily::full(2, 3)), 1).unwrap();
        assert_eq!(zariski_tangent_codim(&ctx3, &pz), 0);
    }
}
