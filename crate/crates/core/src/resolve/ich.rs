//! Entropy-greedy resolving sets.
//!
//! The entropy of a partition of `n` rows with class sizes `m_j` is
//! `ln n − (1/n) Σ m_j ln m_j`, so maximizing it after adding a column is the
//! same as minimizing the change in `Σ m_j ln m_j`. Both code paths score a
//! candidate by that change, summed over the classes it splits.

use std::collections::HashMap;

use super::partition::AStarPartition;
use super::target::{is_resolving, refine_rows, NodeSet, ResolvingTarget};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn xlnx(m: u32) -> f64 {
    if m < 2 {
        0.0
    } else {
        let m = m as f64;
        m * m.ln()
    }
}

/// Scores closer than this are treated as ties, so that summation order
/// never decides between two columns.
fn improves(score: f64, best: f64) -> bool {
    score < best - (1e-9 + 1e-12 * best.abs())
}

/// Greedily adds the column that most increases the entropy of the row
/// partition, lowest id first on ties, until every row is distinguished.
pub fn ich(target: &ResolvingTarget<'_>) -> Result<NodeSet> {
    let set = match target {
        ResolvingTarget::ModifiedAdjacency(g) => ich_modified_adjacency(g),
        _ => ich_generic(target)?,
    };
    if !is_resolving(target, &set) {
        return Err(Error::NoResolvingSet(format!(
            "entropy greedy stopped on a set that does not resolve {}",
            target.kind().label()
        )));
    }
    Ok(set)
}

fn ich_generic(target: &ResolvingTarget<'_>) -> Result<NodeSet> {
    let n = target.n();
    if refine_rows(target, 0..n).1 < n {
        return Err(Error::NoResolvingSet(format!("{} has duplicate rows", target.kind().label())));
    }
    let mut chosen = Vec::new();
    let mut in_set = vec![false; n];
    let (mut class, mut classes) = refine_rows(target, std::iter::empty());
    let mut parts: HashMap<(u32, u32), u32> = HashMap::new();
    let mut sizes = vec![0u32; n];
    while classes < n {
        sizes.iter_mut().for_each(|s| *s = 0);
        for &c in &class {
            sizes[c as usize] += 1;
        }
        let mut best: Option<(usize, f64)> = None;
        for v in (0..n).filter(|&v| !in_set[v]) {
            parts.clear();
            for (row, &c) in class.iter().enumerate() {
                *parts.entry((c, target.entry(row, v))).or_insert(0) += 1;
            }
            let mut cells: Vec<((u32, u32), u32)> = parts.iter().map(|(&k, &m)| (k, m)).collect();
            cells.sort_unstable();
            let mut score = 0.0;
            for group in cells.chunk_by(|a, b| a.0 .0 == b.0 .0) {
                if group.len() > 1 {
                    let split: f64 = group.iter().map(|&(_, m)| xlnx(m)).sum();
                    score += split - xlnx(sizes[group[0].0 .0 as usize]);
                }
            }
            if best.map_or(true, |(_, b)| improves(score, b)) {
                best = Some((v, score));
            }
        }
        let (v, score) = best.expect("a column remains while rows are tied");
        if score == 0.0 {
            return Err(Error::NoResolvingSet("no remaining column splits a class".into()));
        }
        in_set[v] = true;
        chosen.push(v as u32);
        (class, classes) = refine_rows(target, chosen.iter().map(|&u| u as usize));
    }
    Ok(NodeSet::from_unsorted(chosen))
}

/// Sparse version for A*: column `v` splits a class only where it meets
/// `N(v) ∪ {v}`, so a candidate costs `O(deg v)` to score.
fn ich_modified_adjacency(g: &Graph) -> NodeSet {
    let n = g.n();
    let mut part = AStarPartition::new(g);
    let mut chosen = Vec::new();
    let mut in_set = vec![false; n];
    let mut hits: Vec<u32> = vec![0; n];
    let mut touched: Vec<u32> = Vec::new();
    while !part.is_discrete() {
        let class_of = part.class_of();
        let size = part.sizes();
        let mut best: Option<(usize, f64)> = None;
        for v in (0..n).filter(|&v| !in_set[v]) {
            let own = class_of[v];
            for &u in g.neighbors(v) {
                let c = class_of[u as usize];
                if hits[c as usize] == 0 {
                    touched.push(c);
                }
                hits[c as usize] += 1;
            }
            if hits[own as usize] == 0 {
                touched.push(own);
            }
            touched.sort_unstable();
            let mut score = 0.0;
            for &c in &touched {
                let m = size[c as usize];
                let adjacent = hits[c as usize];
                let itself = (c == own) as u32;
                let rest = m - adjacent - itself;
                let pieces = (adjacent > 0) as u32 + itself + (rest > 0) as u32;
                if pieces > 1 {
                    score += xlnx(adjacent) + xlnx(rest) - xlnx(m);
                }
                hits[c as usize] = 0;
            }
            touched.clear();
            if best.map_or(true, |(_, b)| improves(score, b)) {
                best = Some((v, score));
            }
        }
        let (v, _) = best.expect("an unchosen vertex remains while rows are tied");
        in_set[v] = true;
        chosen.push(v as u32);
        part.add_column(v);
    }
    NodeSet::from_unsorted(chosen)
}
