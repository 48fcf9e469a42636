//! Minimizing Indistinguishable Nodes via Expectation (MINE).
//!
//! Finds the allocation `k` with the smallest total `Σ k_i` such that the
//! collision bound `f(k) ≤ α`. The search seeds itself with a forward then a
//! backward greedy pass and then walks lattice levels downward. Because `f`
//! is non-increasing, once a feasible `k` is found in `S_h`, every point of
//! `S_{h−1}` that precedes `downward(k)` is dominated by an infeasible point
//! of `S_h` and can be skipped.
//!
//! Coordinates are evaluated clamped at the community sizes, which keeps `f`
//! monotone while making allocations beyond `n_i` useless, so an optimum
//! never asks for more nodes than a community has.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{downward, level_points, level_size, next_point, Allocation};
use crate::sbm::{CollisionModel, SbmParams};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MineSolution {
    pub allocation: Allocation,
    pub f_value: f64,
    pub alpha: f64,
    /// Distinct evaluations of f (cache misses).
    pub evaluations: usize,
    pub feasible: bool,
}

impl MineSolution {
    pub fn size(&self) -> u64 {
        self.allocation.level()
    }
}

/// A point the level walk evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkStep {
    pub point: Allocation,
    pub f_value: f64,
    pub feasible: bool,
}

/// Memoized f for one solve.
pub(crate) struct Objective<'m> {
    model: &'m CollisionModel,
    cache: HashMap<Allocation, f64>,
    evaluations: usize,
}

impl<'m> Objective<'m> {
    pub(crate) fn new(model: &'m CollisionModel) -> Self {
        Objective { model, cache: HashMap::new(), evaluations: 0 }
    }

    pub(crate) fn eval(&mut self, k: &Allocation) -> f64 {
        if let Some(&v) = self.cache.get(k) {
            return v;
        }
        self.evaluations += 1;
        let v = self.model.eval_capped(k);
        self.cache.insert(k.clone(), v);
        v
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_nan() {
        return Err(Error::Domain("alpha is NaN".into()));
    }
    Ok(())
}

fn check_feasible(obj: &mut Objective<'_>, alpha: f64) -> Result<()> {
    let full = Allocation::new(obj.model.caps().to_vec());
    let f_full = obj.eval(&full);
    if f_full > alpha {
        return Err(Error::Infeasible { alpha, f_full });
    }
    Ok(())
}

/// Grows from the zero allocation, each step adding the unit vector that
/// lowers f the most (lowest index on ties), until `f ≤ α`.
pub fn forward_greedy(params: &SbmParams, alpha: f64) -> Result<Allocation> {
    check_alpha(alpha)?;
    let model = CollisionModel::new(params);
    let mut obj = Objective::new(&model);
    check_feasible(&mut obj, alpha)?;
    forward_from_zero(&mut obj, alpha)
}

fn forward_from_zero(obj: &mut Objective<'_>, alpha: f64) -> Result<Allocation> {
    let c = obj.model.c();
    let mut x = Allocation::zeros(c);
    let mut fx = obj.eval(&x);
    while fx > alpha {
        let mut best = None;
        let mut best_f = fx;
        for i in 0..c {
            if x[i] >= obj.model.caps()[i] {
                continue;
            }
            let cand = x.plus_unit(i);
            let v = obj.eval(&cand);
            if v < best_f {
                best_f = v;
                best = Some(cand);
            }
        }
        match best {
            Some(next) => {
                x = next;
                fx = best_f;
            }
            // only reachable when the full allocation is infeasible too
            None => return Err(Error::Infeasible { alpha, f_full: fx }),
        }
    }
    Ok(x)
}

/// Repeatedly removes one node from the coordinate whose removal keeps
/// `f ≤ α` while raising f the most, until no removal stays feasible.
pub fn backward_greedy(params: &SbmParams, alpha: f64, x: &Allocation) -> Result<Allocation> {
    check_alpha(alpha)?;
    let model = CollisionModel::new(params);
    if x.len() != model.c() {
        return Err(Error::Domain(format!("allocation has {} entries for {} communities", x.len(), model.c())));
    }
    let mut obj = Objective::new(&model);
    let fx = obj.eval(x);
    if fx > alpha {
        return Err(Error::Domain(format!("starting point has f = {fx} > alpha = {alpha}")));
    }
    Ok(backward_from(&mut obj, alpha, x.clone()))
}

fn backward_from(obj: &mut Objective<'_>, alpha: f64, mut x: Allocation) -> Allocation {
    loop {
        let mut y = x.clone();
        let mut fy = obj.eval(&y);
        let mut moved = false;
        for i in 0..x.len() {
            let Some(cand) = x.minus_unit(i) else { continue };
            let v = obj.eval(&cand);
            if fy < v && v <= alpha {
                y = cand;
                fy = v;
                moved = true;
            }
        }
        if !moved {
            return x;
        }
        x = y;
    }
}

/// Minimum-total allocation with `f(k) ≤ α`.
pub fn mine(params: &SbmParams, alpha: f64) -> Result<MineSolution> {
    let model = CollisionModel::new(params);
    solve(&model, alpha, None)
}

/// Like [`mine`], also returning every point the level walk evaluated.
pub fn mine_traced(params: &SbmParams, alpha: f64) -> Result<(MineSolution, Allocation, Vec<WalkStep>)> {
    let model = CollisionModel::new(params);
    let mut trace = Vec::new();
    let mut seed = None;
    let sol = solve_inner(&model, alpha, Some(&mut trace), &mut seed)?;
    Ok((sol, seed.expect("seed recorded"), trace))
}

pub(crate) fn solve(model: &CollisionModel, alpha: f64, trace: Option<&mut Vec<WalkStep>>) -> Result<MineSolution> {
    solve_inner(model, alpha, trace, &mut None)
}

fn solve_inner(
    model: &CollisionModel,
    alpha: f64,
    mut trace: Option<&mut Vec<WalkStep>>,
    seed_out: &mut Option<Allocation>,
) -> Result<MineSolution> {
    check_alpha(alpha)?;
    let mut obj = Objective::new(model);
    check_feasible(&mut obj, alpha)?;
    let x = forward_from_zero(&mut obj, alpha)?;
    let mut best = backward_from(&mut obj, alpha, x);
    *seed_out = Some(best.clone());

    let c = model.c();
    let h = best.level();
    let mut cursor = (h > 0).then(|| Allocation::first_of_level(c, (h - 1) as u32));
    while let Some(y) = cursor {
        let fy = obj.eval(&y);
        let feasible = fy <= alpha;
        if let Some(t) = trace.as_deref_mut() {
            t.push(WalkStep { point: y.clone(), f_value: fy, feasible });
        }
        if feasible {
            cursor = if y.level() > 0 { Some(downward(&y)?) } else { None };
            best = y;
        } else {
            cursor = next_point(&y);
        }
    }
    let f_value = obj.eval(&best);
    Ok(MineSolution { allocation: best, f_value, alpha, evaluations: obj.evaluations, feasible: f_value <= alpha })
}

/// Enumeration budget for [`exhaustive_min`].
pub const EXHAUSTIVE_POINT_CAP: u64 = 10_000_000;

/// Brute-force reference: scans levels `0, 1, …, level_cap` in full and
/// returns the first feasible point found.
pub fn exhaustive_min(params: &SbmParams, alpha: f64, level_cap: u32) -> Result<MineSolution> {
    check_alpha(alpha)?;
    let c = params.c();
    let mut budget: u64 = 0;
    for h in 0..=level_cap as u64 {
        budget = budget.saturating_add(level_size(c, h));
    }
    if budget > EXHAUSTIVE_POINT_CAP {
        return Err(Error::SizeCap(format!(
            "{budget} lattice points up to level {level_cap} exceed {EXHAUSTIVE_POINT_CAP}"
        )));
    }
    let model = CollisionModel::new(params);
    let mut evaluations = 0;
    for h in 0..=level_cap {
        for point in level_points(c, h) {
            evaluations += 1;
            let v = model.eval_capped(&point);
            if v <= alpha {
                return Ok(MineSolution { allocation: point, f_value: v, alpha, evaluations, feasible: true });
            }
        }
    }
    Err(Error::OracleExhausted(level_cap as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbm::expected_collisions;

    fn one(n: usize, p: f64) -> SbmParams {
        SbmParams::new(vec![n], vec![vec![p]]).unwrap()
    }

    fn diag() -> SbmParams {
        SbmParams::new(vec![2, 2], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn forward_examples() {
        assert_eq!(forward_greedy(&one(4, 0.5), 2.0).unwrap(), Allocation::new(vec![2]));
        assert_eq!(forward_greedy(&one(4, 0.5), 6.0).unwrap(), Allocation::new(vec![0]));
        assert_eq!(forward_greedy(&diag(), 2.0).unwrap(), Allocation::new(vec![1, 0]));
    }

    #[test]
    fn forward_rejects_infeasible() {
        // f(4) = 6 · 0.5⁴ = 0.375 > 0.1
        assert!(matches!(forward_greedy(&one(4, 0.5), 0.1), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn backward_examples() {
        let p = one(4, 0.5);
        assert_eq!(backward_greedy(&p, 2.0, &Allocation::new(vec![3])).unwrap(), Allocation::new(vec![2]));
        assert_eq!(backward_greedy(&p, 2.0, &Allocation::new(vec![2])).unwrap(), Allocation::new(vec![2]));
        // zero coordinates are never decremented
        let q = SbmParams::new(vec![6, 6], vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let y = backward_greedy(&q, 10.0, &Allocation::new(vec![0, 6])).unwrap();
        assert_eq!(y[0], 0);
        assert!(expected_collisions(&q, &y) <= 10.0);
        assert!(backward_greedy(&p, 2.0, &Allocation::new(vec![0])).is_err());
    }

    #[test]
    fn mine_one_dimensional_closed_form() {
        for &(n, p, alpha) in &[(50usize, 0.3, 0.01f64), (200, 0.5, 0.1), (120, 0.1, 1.0), (60, 0.7, 10.0)] {
            let r: f64 = p * p + (1.0 - p) * (1.0 - p);
            let pairs = (n * (n - 1) / 2) as f64;
            let expect = ((alpha.ln() - pairs.ln()) / r.ln()).ceil() as u32;
            let sol = mine(&one(n, p), alpha).unwrap();
            assert_eq!(sol.allocation, Allocation::new(vec![expect]), "n={n} p={p} alpha={alpha}");
            assert!(sol.feasible);
        }
    }

    #[test]
    fn mine_trivial_alpha() {
        let p = SbmParams::new(vec![10, 10], vec![vec![0.3, 0.1], vec![0.1, 0.3]]).unwrap();
        let sol = mine(&p, 1e9).unwrap();
        assert_eq!(sol.allocation, Allocation::zeros(2));
        assert!(matches!(mine(&p, 0.0), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn mine_is_deterministic() {
        let p =
            SbmParams::new(vec![300, 200, 100], vec![vec![0.3, 0.1, 0.2], vec![0.1, 0.4, 0.05], vec![0.2, 0.05, 0.25]])
                .unwrap();
        assert_eq!(mine(&p, 0.05).unwrap(), mine(&p, 0.05).unwrap());
    }

    #[test]
    fn exhaustive_examples() {
        let p = one(4, 0.5);
        assert_eq!(exhaustive_min(&p, 2.0, 10).unwrap().allocation, Allocation::new(vec![2]));
        assert_eq!(exhaustive_min(&diag(), 100.0, 3).unwrap().allocation, Allocation::zeros(2));
        assert!(matches!(exhaustive_min(&p, 0.1, 3), Err(Error::OracleExhausted(3))));
        let big = SbmParams::new(vec![10; 4], vec![vec![0.5; 4]; 4]).unwrap();
        assert!(matches!(exhaustive_min(&big, 0.1, 200), Err(Error::SizeCap(_))));
    }

    #[test]
    fn solution_never_exceeds_community_sizes() {
        // community 0 has two very informative nodes, community 1 is nearly uninformative
        let p = SbmParams::new(vec![2, 200], vec![vec![0.5, 0.5], vec![0.5, 0.02]]).unwrap();
        let sol = mine(&p, 5.0).unwrap();
        assert!(sol.allocation[0] <= 2);
        let oracle = exhaustive_min(&p, 5.0, 1000).unwrap();
        assert_eq!(sol.size(), oracle.size());
    }

    #[test]
    fn skipped_points_are_dominated() {
        // Every point of a walked level that precedes the first evaluated
        // point of that level must be infeasible, and its upward neighbor
        // must be infeasible as well (evaluated or itself skipped).
        let params =
            SbmParams::new(vec![40, 30, 20], vec![vec![0.3, 0.1, 0.6], vec![0.1, 0.5, 0.2], vec![0.6, 0.2, 0.4]])
                .unwrap();
        let model = CollisionModel::new(&params);
        for &alpha in &[0.01, 0.3, 5.0] {
            let (sol, seed, trace) = mine_traced(&params, alpha).unwrap();
            let evaluated: HashMap<Allocation, bool> = trace.iter().map(|s| (s.point.clone(), s.feasible)).collect();
            let top = seed.level() as u32;
            for h in sol.size() as u32..top {
                let points = level_points(3, h);
                let first = points.iter().position(|p| evaluated.contains_key(p)).unwrap();
                for p in &points[..first] {
                    assert!(model.eval_capped(p) > alpha, "{p:?} skipped but feasible");
                    let up = crate::lattice::upward(p);
                    let up_skipped_or_bad = match evaluated.get(&up) {
                        Some(&feasible) => !feasible,
                        None => model.eval_capped(&up) > alpha,
                    };
                    assert!(up_skipped_or_bad, "{p:?} has no infeasible dominator");
                }
            }
            // the level below the answer is infeasible throughout
            if sol.size() > 0 {
                for p in level_points(3, sol.size() as u32 - 1) {
                    assert!(model.eval_capped(&p) > alpha);
                }
            }
        }
    }
}
