//! Closed-form diameter and resolvability quantities for a parameter set.

use serde::Serialize;

use super::SbmParams;
use crate::error::{Error, Result};

/// Expected number of vertex pairs at distance greater than 2, per block pair.
#[derive(Debug, Clone, Serialize)]
pub struct LongPairs {
    /// `per_block[i][j]` for `i <= j`; entries below the diagonal are 0.
    pub per_block: Vec<Vec<f64>>,
    pub total: f64,
    /// `total / C(n, 2)`.
    pub fraction: f64,
}

/// E(W_ij) = s(i,j)(1 − P_ij) Π_k (1 − P_ik P_kj)^(n_k − [i=k] − [j=k]).
pub fn expected_long_pairs(params: &SbmParams) -> LongPairs {
    let c = params.c();
    let sizes = params.sizes();
    let mut per_block = vec![vec![0.0; c]; c];
    let mut total = 0.0;
    for i in 0..c {
        for j in i..c {
            let pairs = params.pair_count(i, j);
            let miss = 1.0 - params.prob(i, j);
            if pairs == 0 || miss == 0.0 {
                continue;
            }
            let mut log_e = (pairs as f64).ln() + miss.ln();
            for (k, &n_k) in sizes.iter().enumerate() {
                let exponent = n_k - (i == k) as usize - (j == k) as usize;
                if exponent == 0 {
                    continue;
                }
                let x = params.prob(i, k) * params.prob(k, j);
                log_e += exponent as f64 * (-x).ln_1p();
            }
            let e = log_e.exp();
            per_block[i][j] = e;
            total += e;
        }
    }
    let all = params.total_pairs() as f64;
    LongPairs { per_block, total, fraction: if all > 0.0 { total / all } else { 0.0 } }
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockPairCondition {
    pub i: usize,
    pub j: usize,
    /// Whether the pair can have non-adjacent vertex pairs at all,
    /// judged at this finite n by `s(i,j)(1 − P_ij) > 0`.
    pub in_k: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diam2Report {
    pub c_const: f64,
    pub pairs: Vec<BlockPairCondition>,
    pub holds: bool,
    pub note: &'static str,
}

/// Checks `Σ_k n_k P_ik P_kj ≥ C · ln(n_i n_j)` for every block pair that can
/// contain non-adjacent vertices. When it holds with `C > 1` the diameter is
/// at most 2 with high probability.
pub fn diam2_condition(params: &SbmParams, c_const: f64) -> Result<Diam2Report> {
    if !c_const.is_finite() || c_const <= 1.0 {
        return Err(Error::Domain(format!("constant must be > 1, got {c_const}")));
    }
    let c = params.c();
    let sizes = params.sizes();
    let mut pairs = Vec::new();
    for i in 0..c {
        for j in i..c {
            let in_k = params.pair_count(i, j) as f64 * (1.0 - params.prob(i, j)) > 0.0;
            let lhs: f64 = (0..c).map(|k| sizes[k] as f64 * params.prob(i, k) * params.prob(k, j)).sum();
            let rhs = c_const * ((sizes[i] * sizes[j]) as f64).ln();
            pairs.push(BlockPairCondition { i, j, in_k, lhs, rhs, holds: !in_k || lhs >= rhs });
        }
    }
    Ok(Diam2Report {
        c_const,
        holds: pairs.iter().all(|p| p.holds),
        pairs,
        note: "block-pair set approximated at finite n by s(i,j)(1-P(i,j)) > 0",
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GapCondition {
    /// `Σ_k n_k P_ik² ≤ C · ln(n²)`
    SparseSelf,
    /// `Σ_k n_k P_ik P_kj ≤ C · ln(n²) + ln(1 − P_ij)` and `max_k P_kj ≤ 1/2`
    SparseCross,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiamGt2Report {
    pub c_const: f64,
    pub holds: bool,
    pub witness: Option<(usize, usize, GapCondition)>,
}

/// Looks for a block pair satisfying either sparse-regime condition under
/// which the diameter exceeds 2 with high probability (`0 < C < 1`).
pub fn diam_gt2_condition(params: &SbmParams, c_const: f64) -> Result<DiamGt2Report> {
    if !(c_const > 0.0 && c_const < 1.0) {
        return Err(Error::Domain(format!("constant must lie in (0, 1), got {c_const}")));
    }
    let c = params.c();
    let sizes = params.sizes();
    let n = params.n() as f64;
    let budget = c_const * (n * n).ln();
    let mut witness = None;
    'search: for i in 0..c {
        for j in 0..c {
            let self_sum: f64 = (0..c).map(|k| sizes[k] as f64 * params.prob(i, k).powi(2)).sum();
            if self_sum <= budget {
                witness = Some((i, j, GapCondition::SparseSelf));
                break 'search;
            }
            let cross: f64 = (0..c).map(|k| sizes[k] as f64 * params.prob(i, k) * params.prob(k, j)).sum();
            let max_col = (0..c).map(|k| params.prob(k, j)).fold(0.0, f64::max);
            if cross <= budget + (1.0 - params.prob(i, j)).ln() && max_col <= 0.5 {
                witness = Some((i, j, GapCondition::SparseCross));
                break 'search;
            }
        }
    }
    Ok(DiamGt2Report { c_const, holds: witness.is_some(), witness })
}

/// Ceiling that ignores floating-point noise around exact integers.
fn ceil_snapped(x: f64) -> u64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * nearest.abs().max(1.0) {
        nearest.max(0.0) as u64
    } else {
        x.ceil().max(0.0) as u64
    }
}

fn log_agreement(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("edge probability must lie in (0, 1), got {p}")));
    }
    Ok((p * p + (1.0 - p) * (1.0 - p)).ln())
}

/// `⌈−2 ln n / ln(p² + (1−p)²)⌉`: with high probability A* of G(n, p) has a
/// resolving set of at most this size.
pub fn er_beta_upper(n: u64, p: f64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(ceil_snapped(-2.0 * (n as f64).ln() / log_agreement(p)?))
}

/// `⌈−3 ln n / ln(p² + (1−p)²)⌉`: any node set of this size resolves
/// G(n, p) with probability at least `1 − 1/(2n)`.
pub fn er_any_set_size(n: u64, p: f64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(ceil_snapped(-3.0 * (n as f64).ln() / log_agreement(p)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_one() -> SbmParams {
        let sizes = vec![1000, 500, 250, 250];
        let p = (0..4).map(|i| (0..4).map(|j| if i == j { 0.7 } else { 0.3 }).collect()).collect();
        SbmParams::new(sizes, p).unwrap()
    }

    fn uniform(sizes: Vec<usize>, p: f64) -> SbmParams {
        let c = sizes.len();
        SbmParams::new(sizes, vec![vec![p; c]; c]).unwrap()
    }

    #[test]
    fn long_pairs_extremes() {
        let lp = expected_long_pairs(&uniform(vec![3, 4], 1.0));
        assert_eq!(lp.total, 0.0);
        let lp = expected_long_pairs(&uniform(vec![2, 2], 0.0));
        assert_eq!(lp.per_block[0][0], 1.0);
        assert_eq!(lp.per_block[0][1], 4.0);
        assert_eq!(lp.per_block[1][1], 1.0);
        assert_eq!(lp.per_block[1][0], 0.0);
        assert!((lp.fraction - 1.0).abs() < 1e-15);
    }

    #[test]
    fn long_pairs_single_community_closed_form() {
        // one block: C(n,2)(1−p)(1−p²)^(n−2)
        let n = 50usize;
        let p = 0.1f64;
        let lp = expected_long_pairs(&uniform(vec![n], p));
        let expect = (n * (n - 1) / 2) as f64 * (1.0 - p) * (1.0 - p * p).powi(n as i32 - 2);
        assert!((lp.total - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn diam2_examples() {
        assert!(diam2_condition(&uniform(vec![5, 5], 1.0), 2.0).unwrap().holds);
        let r = diam2_condition(&figure_one(), 1.5).unwrap();
        assert!(r.holds);
        assert!(r.pairs.iter().all(|p| p.in_k && p.lhs >= 180.0));
        let r = diam2_condition(&uniform(vec![100, 100], 0.01), 2.0).unwrap();
        assert!(!r.holds);
        assert!((r.pairs[0].lhs - 0.02).abs() < 1e-12);
        assert!((r.pairs[0].rhs - 2.0 * 1e4f64.ln()).abs() < 1e-9);
        assert!(diam2_condition(&figure_one(), 1.0).is_err());
    }

    #[test]
    fn diam_gt2_examples() {
        assert!(!diam_gt2_condition(&uniform(vec![4, 4], 1.0), 0.5).unwrap().holds);
        let r = diam_gt2_condition(&uniform(vec![1000], 0.01), 0.9).unwrap();
        assert!(r.holds);
        assert_eq!(r.witness, Some((0, 0, GapCondition::SparseSelf)));
        assert!(!diam_gt2_condition(&figure_one(), 0.5).unwrap().holds);
        assert!(diam_gt2_condition(&figure_one(), 1.5).is_err());
    }

    #[test]
    fn er_bounds() {
        assert_eq!(er_beta_upper(500, 0.5).unwrap(), 18);
        assert_eq!(er_any_set_size(500, 0.5).unwrap(), 27);
        assert_eq!(er_beta_upper(2, 0.5).unwrap(), 2);
        for &p in &[0.1, 0.3, 0.25, 0.45] {
            for &n in &[2u64, 10, 500, 10_000] {
                assert_eq!(er_beta_upper(n, p).unwrap(), er_beta_upper(n, 1.0 - p).unwrap());
                assert!(er_any_set_size(n, p).unwrap() >= er_beta_upper(n, p).unwrap());
            }
        }
        for n in [8u64, 16, 1000, 1024] {
            let expect = (3.0 * (n as f64).ln() / 2f64.ln()).ceil() as u64;
            let snapped = ceil_snapped(3.0 * (n as f64).ln() / 2f64.ln());
            assert!(snapped == expect || snapped + 1 == expect);
            assert_eq!(er_any_set_size(n, 0.5).unwrap(), snapped);
        }
        assert_eq!(er_any_set_size(1024, 0.5).unwrap(), 30);
        assert!(matches!(er_beta_upper(10, 0.0), Err(Error::Domain(_))));
        assert!(matches!(er_any_set_size(10, 1.0), Err(Error::Domain(_))));
    }
}
