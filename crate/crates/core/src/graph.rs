//! Simple undirected graphs and the matrices derived from them.
//!
//! A [`Graph`] is immutable once built. Adjacency is kept twice: as sorted
//! neighbor lists in CSR layout for traversal, and as one bitset row per
//! vertex for constant-time membership probes.

use std::collections::VecDeque;
use std::io::BufRead;
use std::num::NonZeroU32;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Counters for the normalizations applied while building a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

#[derive(Clone)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edge_count()).finish()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.offsets == other.offsets && self.targets == other.targets
    }
}

impl Eq for Graph {}

/// Builds a simple graph from a possibly dirty edge list.
///
/// Self-loops are dropped and repeated pairs (in either orientation) are
/// collapsed; both are counted in the returned [`BuildReport`].
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<(Graph, BuildReport)> {
    if n > u32::MAX as usize {
        return Err(Error::MalformedInput(format!("vertex count {n} too large")));
    }
    let mut report = BuildReport::default();
    let mut pairs = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::MalformedInput(format!("edge ({u}, {v}) references a vertex outside 0..{n}")));
        }
        if u == v {
            report.self_loops += 1;
            continue;
        }
        pairs.push(if u < v { (u as u32, v as u32) } else { (v as u32, u as u32) });
    }
    pairs.sort_unstable();
    let before = pairs.len();
    pairs.dedup();
    report.duplicates = before - pairs.len();
    if report.self_loops > 0 {
        log::warn!("dropped {} self-loop(s)", report.self_loops);
    }
    Ok((Graph::from_sorted_pairs(n, &pairs), report))
}

impl Graph {
    /// `pairs` must be sorted, deduplicated and satisfy `u < v < n`.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)]) -> Graph {
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        // Pairs are sorted by (u, v), so every list comes out sorted: lower
        // neighbors arrive first (as the `v` side), higher ones after.
        for &(u, v) in pairs {
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for &(u, v) in pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
        }
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for &(u, v) in pairs {
            let (u, v) = (u as usize, v as usize);
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        Graph { n, offsets, targets, words, bits }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_sorted_pairs(n, &[])
    }

    pub fn complete(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
        Graph::from_sorted_pairs(n, &pairs)
    }

    pub fn path(n: usize) -> Graph {
        let pairs: Vec<_> = (1..n as u32).map(|v| (v - 1, v)).collect();
        Graph::from_sorted_pairs(n, &pairs)
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut pairs: Vec<_> = (1..n as u32).map(|v| (v - 1, v)).collect();
        pairs.push((0, n as u32 - 1));
        pairs.sort_unstable();
        Graph::from_sorted_pairs(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Sorted neighbors of `u`.
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn bit_row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u).iter().map(|&v| v as usize).filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    /// Entry of the adjacency matrix A.
    pub fn adjacency(&self, u: usize, v: usize) -> u8 {
        self.has_edge(u, v) as u8
    }

    pub fn modified_adjacency(&self) -> ModifiedAdjacency<'_> {
        ModifiedAdjacency { graph: self }
    }

    /// Number of unordered pairs `{u, v}` whose distance exceeds 2,
    /// unreachable pairs included.
    pub fn pairs_beyond_two(&self) -> u64 {
        let n = self.n;
        let reached: u64 = (0..n)
            .into_par_iter()
            .map(|u| self.ball_of_radius_two(u).iter().map(|w| w.count_ones() as u64).sum::<u64>())
            .sum();
        (n as u64 * n as u64 - reached) / 2
    }

    /// True when every pair of vertices is within distance 2.
    pub fn diameter_at_most_two(&self) -> bool {
        let n = self.n;
        (0..n)
            .into_par_iter()
            .all(|u| self.ball_of_radius_two(u).iter().map(|w| w.count_ones() as usize).sum::<usize>() == n)
    }

    fn ball_of_radius_two(&self, u: usize) -> Vec<u64> {
        let mut reach = self.bit_row(u).to_vec();
        for &w in self.neighbors(u) {
            for (r, b) in reach.iter_mut().zip(self.bit_row(w as usize)) {
                *r |= b;
            }
        }
        reach[u / 64] |= 1 << (u % 64);
        reach
    }
}

/// Parses a whitespace-separated `u v` edge list. Blank lines and lines
/// starting with `#` are skipped, except that a `# n = N` line declares the
/// vertex count. Without `n` or such a line, the count is one more than the
/// largest id seen.
pub fn parse_edge_list<R: BufRead>(reader: R, n: Option<usize>) -> Result<(Graph, BuildReport)> {
    let mut edges = Vec::new();
    let mut max_id = None;
    let mut declared = None;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "n" {
                    declared = value.trim().parse().ok();
                }
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let parse = |s: Option<&str>| -> Result<usize> {
            s.and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::MalformedInput(format!("line {}: expected `u v`, got {trimmed:?}", lineno + 1)))
        };
        let u = parse(fields.next())?;
        let v = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(Error::MalformedInput(format!("line {}: trailing fields in {trimmed:?}", lineno + 1)));
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = n.or(declared).unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    build_graph(n, &edges)
}

pub fn write_edge_list<W: std::io::Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# n = {}", g.n())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// A* = A + 2I, viewed through the graph without materializing n² entries.
#[derive(Clone, Copy)]
pub struct ModifiedAdjacency<'a> {
    graph: &'a Graph,
}

impl ModifiedAdjacency<'_> {
    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn entry(&self, u: usize, v: usize) -> u8 {
        if u == v {
            2
        } else {
            self.graph.adjacency(u, v)
        }
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n()).map(|u| (0..self.n()).map(|v| self.entry(u, v)).collect()).collect()
    }
}

pub fn modified_adjacency(g: &Graph) -> ModifiedAdjacency<'_> {
    g.modified_adjacency()
}

/// A hop count, or the tagged absence of any path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Hops(u32),
    Unreachable,
}

impl Distance {
    pub fn hops(self) -> Option<u32> {
        match self {
            Distance::Hops(h) => Some(h),
            Distance::Unreachable => None,
        }
    }

    pub fn is_reachable(self) -> bool {
        matches!(self, Distance::Hops(_))
    }

    pub fn checked_add(self, other: Distance) -> Result<Distance> {
        match (self, other) {
            (Distance::Hops(a), Distance::Hops(b)) => Ok(Distance::Hops(a + b)),
            _ => Err(Error::UnreachableArithmetic),
        }
    }
}

/// All-pairs hop counts. Stored as `hops + 1` so that `None` tags unreachable
/// pairs at no extra space.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<Option<NonZeroU32>>,
}

impl std::fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DistanceMatrix").field("n", &self.n).finish()
    }
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Distance {
        match self.data[u * self.n + v] {
            Some(h) => Distance::Hops(h.get() - 1),
            None => Distance::Unreachable,
        }
    }

    /// Comparable code for an entry: `hops` for reachable pairs and
    /// `u32::MAX` for unreachable ones. Only equality of codes is meaningful.
    pub(crate) fn code(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v].map_or(u32::MAX, |h| h.get() - 1)
    }

    pub fn row(&self, u: usize) -> impl Iterator<Item = Distance> + '_ {
        (0..self.n).map(move |v| self.get(u, v))
    }
}

/// Breadth-first search from every vertex.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut data = vec![None; n * n];
    if n > 0 {
        data.par_chunks_mut(n).enumerate().for_each(|(s, row)| bfs_into(g, s, row));
    }
    DistanceMatrix { n, data }
}

fn bfs_into(g: &Graph, source: usize, row: &mut [Option<NonZeroU32>]) {
    let mut queue = VecDeque::new();
    row[source] = NonZeroU32::new(1);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = NonZeroU32::new(row[u].unwrap().get() + 1);
        for &w in g.neighbors(u) {
            let w = w as usize;
            if row[w].is_none() {
                row[w] = next;
                queue.push_back(w);
            }
        }
    }
}

/// Largest finite entry, or `Unreachable` when some pair is disconnected.
pub fn diameter(d: &DistanceMatrix) -> Distance {
    let mut best = 0;
    for entry in &d.data {
        match entry {
            Some(h) => best = best.max(h.get() - 1),
            None => return Distance::Unreachable,
        }
    }
    Distance::Hops(best)
}
