use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{derive_seed, ExperimentConfig, Method};
use crate::error::Result;
use crate::graph::Graph;
use crate::lattice::Allocation;
use crate::mine::mine;
use crate::resolve::{
    contiguous_members, greedy_baseline, ich, is_resolving, preorder_baseline, random_baseline, NodeSet,
    ResolvingTarget,
};
use crate::sbm::{expected_long_pairs, sample, SbmParams};

/// One method run on one sampled graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub network: String,
    pub method: Method,
    pub alpha: Option<f64>,
    pub graph: usize,
    pub replicate: usize,
    pub seed: u64,
    pub size: Option<usize>,
    pub resolving: bool,
    pub seconds: f64,
    pub error: Option<String>,
}

/// Aggregate over all runs of one method (and alpha, for MINE).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub network: String,
    pub method: Method,
    pub alpha: Option<f64>,
    pub runs: usize,
    pub failures: usize,
    pub mean_size: f64,
    pub std_size: f64,
    pub mean_seconds: f64,
    pub std_seconds: f64,
    /// Fraction of runs whose set resolves A*. For MINE this is the
    /// empirical success rate of the random allocation.
    pub validity_rate: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config_hash: String,
    pub base_seed: u64,
    /// Standard deviations divide by the number of runs.
    pub std_divisor: String,
    pub cells: Vec<CellSummary>,
    pub records: Vec<RunRecord>,
}

impl ExperimentReport {
    pub fn empty(config_hash: impl Into<String>, base_seed: u64) -> ExperimentReport {
        ExperimentReport { config_hash: config_hash.into(), base_seed, std_divisor: "N".into(), ..Default::default() }
    }

    pub fn absorb(&mut self, other: ExperimentReport) {
        self.cells.extend(other.cells);
        self.records.extend(other.records);
    }
}

/// Mean and population standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Draws `k[i]` distinct vertices uniformly from each community.
pub fn draw_allocation(communities: &[Vec<u32>], k: &Allocation, seed: u64) -> NodeSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(k.level() as usize);
    for (members, &take) in communities.iter().zip(k.iter()) {
        let take = (take as usize).min(members.len());
        out.extend(rand::seq::index::sample(&mut rng, members.len(), take).into_iter().map(|j| members[j]));
    }
    crate::resolve::NodeSet::new(out, communities.iter().map(Vec::len).sum()).expect("distinct draws")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

struct MinePlan {
    alpha: f64,
    allocation: std::result::Result<Allocation, String>,
    seconds: f64,
}

fn run_graph(cfg: &ExperimentConfig, plans: &[MinePlan], gi: usize) -> Vec<RunRecord> {
    let g: Graph = sample(&cfg.params, derive_seed(cfg.base_seed, "graph", gi, 0));
    let communities = contiguous_members(&cfg.params);
    let target = ResolvingTarget::ModifiedAdjacency(&g);
    let mut out = Vec::new();
    for &method in &cfg.methods {
        for rep in 0..cfg.replicates(method) {
            let seed = derive_seed(cfg.base_seed, method.name(), gi, rep);
            let base = RunRecord {
                network: cfg.network.clone(),
                method,
                alpha: None,
                graph: gi,
                replicate: rep,
                seed,
                size: None,
                resolving: false,
                seconds: 0.0,
                error: None,
            };
            if method == Method::Mine {
                for plan in plans {
                    let mut rec = RunRecord { alpha: Some(plan.alpha), seconds: plan.seconds, ..base.clone() };
                    match &plan.allocation {
                        Ok(k) => {
                            let set = draw_allocation(&communities, k, seed);
                            rec.size = Some(set.len());
                            rec.resolving = is_resolving(&target, &set);
                        }
                        Err(e) => rec.error = Some(e.clone()),
                    }
                    out.push(rec);
                }
                continue;
            }
            let (result, seconds): (Result<NodeSet>, f64) = timed(|| match method {
                Method::Ich => ich(&target),
                Method::Greedy => greedy_baseline(&g, &cfg.params, &communities, seed),
                Method::Preorder => preorder_baseline(&g, &cfg.params, &communities),
                Method::Random => random_baseline(&g, seed),
                Method::Mine => unreachable!(),
            });
            let mut rec = RunRecord { seconds, ..base };
            match result {
                Ok(set) => {
                    rec.size = Some(set.len());
                    rec.resolving = is_resolving(&target, &set);
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            out.push(rec);
        }
    }
    out
}

fn summarize(cfg: &ExperimentConfig, records: &[RunRecord]) -> Vec<CellSummary> {
    let mut keys: Vec<(Method, Option<f64>)> = Vec::new();
    for &m in &cfg.methods {
        if m == Method::Mine {
            keys.extend(cfg.alphas.iter().map(|&a| (m, Some(a))));
        } else {
            keys.push((m, None));
        }
    }
    keys.into_iter()
        .map(|(method, alpha)| {
            let runs: Vec<&RunRecord> = records.iter().filter(|r| r.method == method && r.alpha == alpha).collect();
            let sizes: Vec<f64> = runs.iter().filter_map(|r| r.size.map(|s| s as f64)).collect();
            let secs: Vec<f64> = runs.iter().filter(|r| r.error.is_none()).map(|r| r.seconds).collect();
            let (mean_size, std_size) = mean_std(&sizes);
            let (mean_seconds, std_seconds) = mean_std(&secs);
            let valid = runs.iter().filter(|r| r.resolving).count();
            CellSummary {
                network: cfg.network.clone(),
                method,
                alpha,
                runs: runs.len(),
                failures: runs.iter().filter(|r| r.error.is_some()).count(),
                mean_size,
                std_size,
                mean_seconds,
                std_seconds,
                validity_rate: if runs.is_empty() { f64::NAN } else { valid as f64 / runs.len() as f64 },
            }
        })
        .collect()
}

/// Samples `n_graphs` networks and runs every configured method on each.
/// Method failures are counted in the report rather than aborting.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let plans: Vec<MinePlan> = if cfg.methods.contains(&Method::Mine) {
        cfg.alphas
            .iter()
            .map(|&alpha| {
                let (sol, seconds) = timed(|| mine(&cfg.params, alpha));
                MinePlan { alpha, allocation: sol.map(|s| s.allocation).map_err(|e| e.to_string()), seconds }
            })
            .collect()
    } else {
        Vec::new()
    };
    let per_graph: Vec<Vec<RunRecord>> =
        (0..cfg.n_graphs).into_par_iter().map(|gi| run_graph(cfg, &plans, gi)).collect();
    let mut records: Vec<RunRecord> = per_graph.into_iter().flatten().collect();
    let method_rank = |m: Method| cfg.methods.iter().position(|&x| x == m);
    let alpha_rank = |a: Option<f64>| a.and_then(|a| cfg.alphas.iter().position(|&x| x == a));
    records.sort_by_key(|r| (method_rank(r.method), alpha_rank(r.alpha), r.graph, r.replicate));
    let mut report = ExperimentReport::empty(cfg.hash(), cfg.base_seed);
    report.cells = summarize(cfg, &records);
    report.records = records;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LongPathReport {
    pub network: String,
    pub n: usize,
    pub analytic: f64,
    /// Empty when the graph is too large for the empirical count.
    pub empirical: Vec<f64>,
    pub mean: Option<f64>,
    pub std: Option<f64>,
}

/// Default vertex limit for the empirical distance count.
pub const LONG_PATH_CAP: usize = 5000;

/// Fraction of vertex pairs farther apart than 2, measured on sampled graphs
/// and estimated from the parameters alone.
pub fn long_path_fraction(
    network: &str,
    params: &SbmParams,
    n_graphs: usize,
    base_seed: u64,
    cap: usize,
) -> LongPathReport {
    let analytic = expected_long_pairs(params).fraction;
    let n = params.n();
    let empirical: Vec<f64> = if n <= cap {
        let pairs = (n as f64) * (n as f64 - 1.0) / 2.0;
        (0..n_graphs)
            .map(|gi| {
                let g = sample(params, derive_seed(base_seed, "long-paths", gi, 0));
                if pairs > 0.0 {
                    g.pairs_beyond_two() as f64 / pairs
                } else {
                    0.0
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    let (mean, std) = if empirical.is_empty() {
        (None, None)
    } else {
        let (m, s) = mean_std(&empirical);
        (Some(m), Some(s))
    };
    LongPathReport { network: network.to_string(), n, analytic, empirical, mean, std }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> SbmParams {
        SbmParams::new(vec![n / 2, n - n / 2], vec![vec![1.0; 2]; 2]).unwrap()
    }

    #[test]
    fn complete_graph_random_runs() {
        let mut cfg = ExperimentConfig::new("K", complete(12));
        cfg.methods = vec![Method::Random];
        cfg.n_graphs = 3;
        cfg.replicates.insert(Method::Random, 4);
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.cells.len(), 1);
        let cell = &report.cells[0];
        assert_eq!((cell.runs, cell.failures), (12, 0));
        assert_eq!((cell.mean_size, cell.std_size), (11.0, 0.0));
        assert_eq!(cell.validity_rate, 1.0);
    }

    #[test]
    fn population_std() {
        assert_eq!(mean_std(&[1.0, 3.0]), (2.0, 1.0));
        assert_eq!(mean_std(&[5.0]), (5.0, 0.0));
        assert!(mean_std(&[]).0.is_nan());
    }

    #[test]
    fn reports_are_reproducible() {
        let params = SbmParams::new(vec![30, 20], vec![vec![0.4, 0.1], vec![0.1, 0.3]]).unwrap();
        let mut cfg = ExperimentConfig::new("toy", params);
        cfg.n_graphs = 3;
        cfg.alphas = vec![0.1, 0.5];
        for m in Method::ALL {
            cfg.replicates.insert(m, 2);
        }
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        let strip = |r: &ExperimentReport| {
            r.records
                .iter()
                .map(|x| (x.method, x.alpha, x.graph, x.replicate, x.seed, x.size, x.resolving))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(a.cells.len(), 2 + 4);
        for cell in a.cells.iter().filter(|c| c.method != Method::Mine) {
            assert_eq!(cell.validity_rate, 1.0, "{}", cell.method);
        }
        let mine_cells: Vec<_> = a.cells.iter().filter(|c| c.method == Method::Mine).collect();
        assert_eq!(mine_cells[0].std_size, 0.0);
        assert!(mine_cells[0].mean_size >= mine_cells[1].mean_size);
    }

    #[test]
    fn infeasible_alpha_is_a_failure_not_an_abort() {
        // a single vertex pair can never be pushed below f = 0 with P = 1/2 everywhere
        let params = SbmParams::new(vec![2], vec![vec![0.5]]).unwrap();
        let mut cfg = ExperimentConfig::new("pair", params);
        cfg.methods = vec![Method::Mine];
        cfg.alphas = vec![1e-9];
        cfg.n_graphs = 2;
        cfg.replicates.insert(Method::Mine, 3);
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.cells[0].failures, 6);
        assert!(report.records.iter().all(|r| r.error.is_some()));
    }

    #[test]
    fn allocation_draws_respect_communities() {
        let communities = vec![vec![0, 1, 2], vec![3, 4, 5, 6]];
        let set = draw_allocation(&communities, &Allocation::new(vec![2, 4]), 3);
        assert_eq!(set.len(), 6);
        assert_eq!(set.members().iter().filter(|&&v| v < 3).count(), 2);
    }

    #[test]
    fn long_paths_extremes() {
        let r = long_path_fraction("K", &complete(40), 2, 0, LONG_PATH_CAP);
        assert_eq!(r.analytic, 0.0);
        assert_eq!(r.empirical, vec![0.0, 0.0]);
        let r = long_path_fraction("K", &complete(40), 2, 0, 10);
        assert!(r.empirical.is_empty() && r.mean.is_none());
    }
}
