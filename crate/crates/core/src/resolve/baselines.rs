//! Node-selection baselines. Each adds vertices one at a time and stops as
//! soon as the chosen set resolves A*.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::partition::AStarPartition;
use super::target::{is_resolving, NodeSet, ResolvingTarget};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sbm::collisions::agreement;
use crate::sbm::{CollisionModel, SbmParams};

/// Member lists for communities laid out as consecutive id ranges, in the
/// order of `params.sizes()`.
pub fn contiguous_members(params: &SbmParams) -> Vec<Vec<u32>> {
    let mut start = 0u32;
    params
        .sizes()
        .iter()
        .map(|&s| {
            let block = (start..start + s as u32).collect();
            start += s as u32;
            block
        })
        .collect()
}

fn check_layout(g: &Graph, params: &SbmParams, communities: &[Vec<u32>]) -> Result<()> {
    if communities.len() != params.c() {
        return Err(Error::InvalidParams(format!(
            "{} communities given for a {}-community model",
            communities.len(),
            params.c()
        )));
    }
    let mut seen = vec![false; g.n()];
    for (i, members) in communities.iter().enumerate() {
        if members.len() != params.sizes()[i] {
            return Err(Error::InvalidParams(format!(
                "community {i} has {} members but the model expects {}",
                members.len(),
                params.sizes()[i]
            )));
        }
        for &v in members {
            match seen.get_mut(v as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::MalformedInput(format!("vertex {v} misplaced in the community layout"))),
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::MalformedInput("community layout does not cover every vertex".into()));
    }
    Ok(())
}

/// Adds vertices to an A* partition until it is discrete.
struct Builder<'g> {
    part: AStarPartition<'g>,
    chosen: Vec<u32>,
}

impl<'g> Builder<'g> {
    fn new(g: &'g Graph) -> Self {
        Builder { part: AStarPartition::new(g), chosen: Vec::new() }
    }

    fn done(&self) -> bool {
        self.part.is_discrete()
    }

    fn push(&mut self, v: u32) {
        self.part.add_column(v as usize);
        self.chosen.push(v);
    }

    fn finish(self, g: &Graph, method: &str) -> Result<NodeSet> {
        if !self.done() {
            return Err(Error::NoResolvingSet(format!("{method} exhausted every vertex")));
        }
        let set = NodeSet::from_unsorted(self.chosen);
        debug_assert!(is_resolving(&ResolvingTarget::ModifiedAdjacency(g), &set));
        Ok(set)
    }
}

/// The community whose next node lowers f the most, skipping exhausted ones.
fn next_community(model: &CollisionModel, counts: &mut [u32], left: &[usize]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for i in (0..counts.len()).filter(|&i| left[i] > 0) {
        counts[i] += 1;
        let value = model.eval(counts);
        counts[i] -= 1;
        if best.map_or(true, |(_, b)| value < b) {
            best = Some((i, value));
        }
    }
    best.map(|(i, _)| i)
}

/// Community chosen by one greedy step on f; the node within it is drawn
/// uniformly from those not yet used.
pub fn greedy_baseline(g: &Graph, params: &SbmParams, communities: &[Vec<u32>], seed: u64) -> Result<NodeSet> {
    check_layout(g, params, communities)?;
    let model = CollisionModel::new(params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pools: Vec<Vec<u32>> = communities.to_vec();
    let mut counts = vec![0u32; params.c()];
    let mut builder = Builder::new(g);
    while !builder.done() {
        let left: Vec<usize> = pools.iter().map(Vec::len).collect();
        let Some(i) = next_community(&model, &mut counts, &left) else { break };
        let pick = rng.gen_range(0..pools[i].len());
        let v = pools[i].swap_remove(pick);
        counts[i] += 1;
        builder.push(v);
    }
    builder.finish(g, "greedy baseline")
}

/// Per-vertex score: f for a single landmark `w`, with the probability that a
/// member of `V_l` is adjacent to `w` replaced by the observed fraction.
pub fn preorder_scores(g: &Graph, params: &SbmParams, communities: &[Vec<u32>]) -> Vec<f64> {
    let c = communities.len();
    let mut label = vec![0usize; g.n()];
    for (l, members) in communities.iter().enumerate() {
        for &v in members {
            label[v as usize] = l;
        }
    }
    let mut hits = vec![0u32; c];
    (0..g.n())
        .map(|w| {
            hits.iter_mut().for_each(|h| *h = 0);
            for &u in g.neighbors(w) {
                hits[label[u as usize]] += 1;
            }
            let q: Vec<f64> = (0..c).map(|l| hits[l] as f64 / communities[l].len().max(1) as f64).collect();
            let mut score = 0.0;
            for a in 0..c {
                for b in a..c {
                    score += params.pair_count(a, b) as f64 * agreement(q[a], q[b]);
                }
            }
            score
        })
        .collect()
}

/// Deterministic: nodes are taken in ascending score order within each
/// community, following the same community schedule as the greedy baseline.
pub fn preorder_baseline(g: &Graph, params: &SbmParams, communities: &[Vec<u32>]) -> Result<NodeSet> {
    check_layout(g, params, communities)?;
    let model = CollisionModel::new(params);
    let scores = preorder_scores(g, params, communities);
    let queues: Vec<Vec<u32>> = communities
        .iter()
        .map(|members| {
            let mut q = members.clone();
            q.sort_by(|&a, &b| scores[a as usize].total_cmp(&scores[b as usize]).then(a.cmp(&b)));
            q
        })
        .collect();
    let mut used = vec![0usize; params.c()];
    let mut counts = vec![0u32; params.c()];
    let mut builder = Builder::new(g);
    while !builder.done() {
        let left: Vec<usize> = queues.iter().zip(&used).map(|(q, &u)| q.len() - u).collect();
        let Some(i) = next_community(&model, &mut counts, &left) else { break };
        builder.push(queues[i][used[i]]);
        used[i] += 1;
        counts[i] += 1;
    }
    builder.finish(g, "preorder baseline")
}

/// Uniform draws without replacement from the whole vertex set.
pub fn random_baseline(g: &Graph, seed: u64) -> Result<NodeSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u32> = (0..g.n() as u32).collect();
    order.shuffle(&mut rng);
    let mut builder = Builder::new(g);
    for v in order {
        if builder.done() {
            break;
        }
        builder.push(v);
    }
    builder.finish(g, "random baseline")
}
