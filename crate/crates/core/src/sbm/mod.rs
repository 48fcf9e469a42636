//! Stochastic block model parameters and everything that depends only on them.

mod bounds;
pub(crate) mod collisions;
pub mod presets;
mod sample;

pub use bounds::{
    diam2_condition, diam_gt2_condition, er_any_set_size, er_beta_upper, expected_long_pairs, BlockPairCondition,
    Diam2Report, DiamGt2Report, GapCondition, LongPairs,
};
pub use collisions::{expected_collisions, pair_agreement_prob, CollisionModel};
pub use sample::sample;

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Community sizes and the symmetric block edge-probability matrix.
///
/// Communities are laid out contiguously: community 0 owns vertex ids
/// `0..n_0`, community 1 the next `n_1` ids, and so on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct SbmParams {
    community_sizes: Vec<usize>,
    #[serde(rename = "P")]
    p: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawParams {
    community_sizes: Vec<usize>,
    #[serde(rename = "P")]
    p: Vec<Vec<f64>>,
}

impl TryFrom<RawParams> for SbmParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        SbmParams::new(raw.community_sizes, raw.p)
    }
}

impl SbmParams {
    pub fn new(community_sizes: Vec<usize>, p: Vec<Vec<f64>>) -> Result<SbmParams> {
        let c = community_sizes.len();
        if c == 0 {
            return Err(Error::InvalidParams("at least one community is required".into()));
        }
        if let Some(i) = community_sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidParams(format!("community_sizes[{i}] is 0")));
        }
        if p.len() != c || p.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParams(format!("P must be {c}x{c}")));
        }
        for (i, row) in p.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::InvalidParams(format!("P[{i}][{j}] = {x} is outside [0, 1]")));
                }
            }
        }
        for i in 0..c {
            for j in i + 1..c {
                if p[i][j] != p[j][i] {
                    return Err(Error::InvalidParams(format!(
                        "P is not symmetric: P[{i}][{j}] = {} but P[{j}][{i}] = {}",
                        p[i][j], p[j][i]
                    )));
                }
            }
        }
        Ok(SbmParams { community_sizes, p })
    }

    pub fn from_json(text: &str) -> Result<SbmParams> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("params serialize")
    }

    /// Number of communities.
    pub fn c(&self) -> usize {
        self.community_sizes.len()
    }

    pub fn n(&self) -> usize {
        self.community_sizes.iter().sum()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.community_sizes
    }

    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.p[i][j]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.p
    }

    /// First vertex id of each community, plus `n` as a final sentinel.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.c() + 1);
        out.push(0);
        for s in &self.community_sizes {
            out.push(out.last().unwrap() + s);
        }
        out
    }

    /// Community id of every vertex under the contiguous layout.
    pub fn contiguous_labels(&self) -> Vec<u32> {
        self.community_sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat(i as u32).take(s)).collect()
    }

    /// Unordered vertex pairs between communities `i` and `j`: C(n_i, 2) on
    /// the diagonal, n_i·n_j off it.
    pub fn pair_count(&self, i: usize, j: usize) -> u64 {
        let (a, b) = (self.community_sizes[i] as u64, self.community_sizes[j] as u64);
        if i == j {
            a * a.saturating_sub(1) / 2
        } else {
            a * b
        }
    }

    /// Total number of unordered vertex pairs, C(n, 2).
    pub fn total_pairs(&self) -> u64 {
        let n = self.n() as u64;
        n * n.saturating_sub(1) / 2
    }
}

/// A graph together with a community label per vertex.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Graph,
    labels: Vec<u32>,
    c: usize,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labels: Vec<u32>) -> Result<LabeledGraph> {
        if labels.len() != graph.n() {
            return Err(Error::MalformedInput(format!(
                "{} labels for a graph with {} vertices",
                labels.len(),
                graph.n()
            )));
        }
        let c = labels.iter().max().map_or(0, |&m| m as usize + 1);
        let mut seen = vec![false; c];
        for &l in &labels {
            seen[l as usize] = true;
        }
        if let Some(empty) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedInput(format!("community {empty} has no members")));
        }
        Ok(LabeledGraph { graph, labels, c })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// Member lists per community, each sorted by vertex id.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.c];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(v as u32);
        }
        out
    }
}

/// One integer per line; the line index is the vertex id.
pub fn parse_labels<R: BufRead>(reader: R) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        let label = t.parse().map_err(|_| {
            Error::MalformedInput(format!("labels line {}: expected an integer, got {t:?}", lineno + 1))
        })?;
        out.push(label);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct Estimate {
    pub params: SbmParams,
    pub warnings: Vec<String>,
}

/// Block densities: edges between V_i and V_j divided by the number of
/// possible pairs. A singleton community gets a diagonal density of 0.
pub fn estimate_params(lg: &LabeledGraph) -> Result<Estimate> {
    let c = lg.c();
    let mut sizes = vec![0usize; c];
    for &l in lg.labels() {
        sizes[l as usize] += 1;
    }
    let mut counts = vec![vec![0u64; c]; c];
    for (u, v) in lg.graph.edges() {
        let (a, b) = (lg.labels[u] as usize, lg.labels[v] as usize);
        let (a, b) = (a.min(b), a.max(b));
        counts[a][b] += 1;
    }
    let mut warnings = Vec::new();
    let mut p = vec![vec![0.0; c]; c];
    for i in 0..c {
        for j in i..c {
            let pairs = if i == j { (sizes[i] * (sizes[i] - 1) / 2) as u64 } else { (sizes[i] * sizes[j]) as u64 };
            let density = if pairs == 0 {
                warnings.push(format!("community {i} has a single member; P[{i}][{i}] set to 0"));
                0.0
            } else {
                counts[i][j] as f64 / pairs as f64
            };
            p[i][j] = density;
            p[j][i] = density;
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(Estimate { params: SbmParams::new(sizes, p)?, warnings })
}

/// Rescales community sizes to total `n_target`, keeping proportions.
/// Each size is rounded to the nearest integer; any leftover difference
/// is absorbed by the largest community.
pub fn scale_communities(params: &SbmParams, n_target: usize) -> Result<SbmParams> {
    if n_target < params.c() {
        return Err(Error::InvalidParams(format!(
            "target size {n_target} is smaller than the number of communities {}",
            params.c()
        )));
    }
    let total = params.n() as f64;
    let mut sizes: Vec<i64> =
        params.sizes().iter().map(|&s| (n_target as f64 * s as f64 / total).round() as i64).collect();
    let deficit = n_target as i64 - sizes.iter().sum::<i64>();
    if deficit != 0 {
        // first index among ties
        let largest = (0..sizes.len()).rev().max_by_key(|&i| sizes[i]).unwrap();
        sizes[largest] += deficit;
    }
    if let Some(i) = sizes.iter().position(|&s| s <= 0) {
        return Err(Error::DegenerateCommunity { community: i });
    }
    SbmParams::new(sizes.into_iter().map(|s| s as usize).collect(), params.p.clone())
}
