use std::collections::HashMap;

use serde::Serialize;

use super::partition::AStarPartition;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Which matrix a node set has to resolve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TargetKind {
    #[serde(rename = "A")]
    Adjacency,
    #[serde(rename = "A*")]
    ModifiedAdjacency,
    #[serde(rename = "D")]
    Distance,
}

impl TargetKind {
    pub fn label(self) -> &'static str {
        match self {
            TargetKind::Adjacency => "A",
            TargetKind::ModifiedAdjacency => "A*",
            TargetKind::Distance => "D",
        }
    }
}

/// A square matrix whose columns are candidate landmarks.
#[derive(Debug, Clone, Copy)]
pub enum ResolvingTarget<'a> {
    Adjacency(&'a Graph),
    ModifiedAdjacency(&'a Graph),
    Distance(&'a DistanceMatrix),
}

impl ResolvingTarget<'_> {
    pub fn kind(&self) -> TargetKind {
        match self {
            ResolvingTarget::Adjacency(_) => TargetKind::Adjacency,
            ResolvingTarget::ModifiedAdjacency(_) => TargetKind::ModifiedAdjacency,
            ResolvingTarget::Distance(_) => TargetKind::Distance,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ResolvingTarget::Adjacency(g) | ResolvingTarget::ModifiedAdjacency(g) => g.n(),
            ResolvingTarget::Distance(d) => d.n(),
        }
    }

    /// Entry `(row, col)` as a code that is equal exactly when the matrix
    /// entries are equal.
    pub fn entry(&self, row: usize, col: usize) -> u32 {
        match self {
            ResolvingTarget::Adjacency(g) => g.adjacency(row, col) as u32,
            ResolvingTarget::ModifiedAdjacency(g) => g.modified_adjacency().entry(row, col) as u32,
            ResolvingTarget::Distance(d) => d.code(row, col),
        }
    }
}

/// A set of vertex ids, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<u32>);

impl NodeSet {
    pub fn new(mut members: Vec<u32>, n: usize) -> Result<NodeSet> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!("vertex {} listed twice", w[0])));
        }
        if let Some(&bad) = members.last().filter(|&&m| m as usize >= n) {
            return Err(Error::MalformedInput(format!("vertex {bad} outside 0..{n}")));
        }
        Ok(NodeSet(members))
    }

    pub fn empty() -> NodeSet {
        NodeSet(Vec::new())
    }

    pub(crate) fn from_unsorted(mut members: Vec<u32>) -> NodeSet {
        members.sort_unstable();
        members.dedup();
        NodeSet(members)
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&v| v as usize)
    }
}

/// Class id per row after refining the trivial partition by `columns`, and
/// the number of classes. Stops early once every row is alone.
pub(crate) fn refine_rows(target: &ResolvingTarget<'_>, columns: impl IntoIterator<Item = usize>) -> (Vec<u32>, usize) {
    let n = target.n();
    let mut class = vec![0u32; n];
    let mut classes = n.min(1);
    let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
    for col in columns {
        if classes == n {
            break;
        }
        ids.clear();
        for (row, c) in class.iter_mut().enumerate() {
            let key = (*c, target.entry(row, col));
            let next = ids.len() as u32;
            *c = *ids.entry(key).or_insert(next);
        }
        classes = ids.len();
    }
    (class, classes)
}

/// True when the rows restricted to the columns in `r` are pairwise
/// distinct. Rows are compared as exact integer tuples by successive
/// partition refinement, one column at a time.
pub fn is_resolving(target: &ResolvingTarget<'_>, r: &NodeSet) -> bool {
    let n = target.n();
    if n <= 1 {
        return true;
    }
    if let ResolvingTarget::ModifiedAdjacency(g) = target {
        let mut part = AStarPartition::new(g);
        for v in r.iter() {
            part.add_column(v);
            if part.is_discrete() {
                return true;
            }
        }
        return false;
    }
    refine_rows(target, r.iter()).1 == n
}

/// Default vertex limit for exhaustive metric dimension.
pub const BRUTE_FORCE_CAP: usize = 16;

/// Smallest resolving set by enumerating subsets in increasing size; the
/// lexicographically first witness of the minimum size is returned.
pub fn brute_force_beta(target: &ResolvingTarget<'_>, cap: usize) -> Result<(usize, NodeSet)> {
    let n = target.n();
    if n > cap {
        return Err(Error::SizeCap(format!("{n} vertices exceed the brute-force cap of {cap}")));
    }
    if !is_resolving(target, &NodeSet((0..n as u32).collect())) {
        return Err(Error::NoResolvingSet(format!("{} has duplicate rows", target.kind().label())));
    }
    for size in 0..=n {
        let mut combo: Vec<u32> = (0..size as u32).collect();
        loop {
            let candidate = NodeSet(combo.clone());
            if is_resolving(target, &candidate) {
                return Ok((size, candidate));
            }
            // advance to the next size-combination in lexicographic order
            let mut i = size;
            while i > 0 && combo[i - 1] as usize == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    unreachable!("the full vertex set resolves")
}
