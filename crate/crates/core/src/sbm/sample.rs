use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::SbmParams;
use crate::graph::Graph;

/// Below this edge probability a row segment is sampled by geometric skips
/// instead of one uniform draw per pair.
const SKIP_THRESHOLD: f64 = 0.01;

/// Draws a graph from SBM(n; C, P) with communities laid out contiguously.
///
/// Row `u` decides the pairs `(u, v)` with `v > u` from its own ChaCha8
/// stream (`stream = u`), so the output depends only on `seed` and not on
/// how rows are scheduled across threads.
pub fn sample(params: &SbmParams, seed: u64) -> Graph {
    let n = params.n();
    let offsets = params.offsets();
    let labels = params.contiguous_labels();
    let rows: Vec<Vec<u32>> =
        (0..n).into_par_iter().map(|u| sample_row(params, &offsets, labels[u] as usize, u, seed)).collect();
    let pairs: Vec<(u32, u32)> =
        rows.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u as u32, v))).collect();
    Graph::from_sorted_pairs(n, &pairs)
}

fn sample_row(params: &SbmParams, offsets: &[usize], a: usize, u: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u as u64);
    let mut out = Vec::new();
    for b in a..params.c() {
        let lo = offsets[b].max(u + 1);
        let hi = offsets[b + 1];
        if lo >= hi {
            continue;
        }
        let p = params.prob(a, b);
        if p <= 0.0 {
            continue;
        }
        if p >= 1.0 {
            out.extend((lo..hi).map(|v| v as u32));
        } else if p < SKIP_THRESHOLD {
            // gap to the next success is Geometric(p)
            let log_q = (-p).ln_1p();
            let mut v = lo;
            loop {
                let r: f64 = 1.0 - rng.gen::<f64>();
                let skip = (r.ln() / log_q).floor();
                if skip >= (hi - v) as f64 {
                    break;
                }
                v += skip as usize;
                out.push(v as u32);
                v += 1;
                if v >= hi {
                    break;
                }
            }
        } else {
            for v in lo..hi {
                if rng.gen::<f64>() < p {
                    out.push(v as u32);
                }
            }
        }
    }
    out
}
