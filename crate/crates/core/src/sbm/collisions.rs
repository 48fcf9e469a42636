use super::SbmParams;

/// Probability that rows of A* for distinct `u ∈ V_i` and `v ∈ V_j` agree
/// in the column of a node from `V_l`.
pub fn pair_agreement_prob(params: &SbmParams, i: usize, j: usize, l: usize) -> f64 {
    agreement(params.prob(i, l), params.prob(j, l))
}

pub(crate) fn agreement(a: f64, b: f64) -> f64 {
    a * b + (1.0 - a) * (1.0 - b)
}

/// Upper bound on the expected number of indistinguishable vertex pairs when
/// `k[l]` random nodes are taken from each community `l`.
pub fn expected_collisions(params: &SbmParams, k: &[u32]) -> f64 {
    CollisionModel::new(params).eval(k)
}

struct Term {
    pairs: f64,
    /// `ln r(i, j, l)` per community; `-inf` where `r = 0`.
    log_r: Vec<f64>,
}

/// Precomputed form of the collision bound f for repeated evaluation.
///
/// Every term is `s(i,j) · exp(Σ_l k_l · ln r(i,j,l))`, so exponents in the
/// thousands do not underflow the intermediate powers. A zero agreement
/// probability with a positive count zeroes its term exactly.
pub struct CollisionModel {
    terms: Vec<Term>,
    caps: Vec<u32>,
    total_pairs: f64,
}

impl CollisionModel {
    pub fn new(params: &SbmParams) -> CollisionModel {
        let c = params.c();
        let mut terms = Vec::with_capacity(c * (c + 1) / 2);
        for i in 0..c {
            for j in i..c {
                let pairs = params.pair_count(i, j);
                if pairs == 0 {
                    continue;
                }
                let log_r = (0..c).map(|l| pair_agreement_prob(params, i, j, l).ln()).collect();
                terms.push(Term { pairs: pairs as f64, log_r });
            }
        }
        CollisionModel {
            terms,
            caps: params.sizes().iter().map(|&s| s.min(u32::MAX as usize) as u32).collect(),
            total_pairs: params.total_pairs() as f64,
        }
    }

    pub fn c(&self) -> usize {
        self.caps.len()
    }

    /// Community sizes, the largest meaningful count per coordinate.
    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    /// C(n, 2), the value at the zero allocation.
    pub fn total_pairs(&self) -> f64 {
        self.total_pairs
    }

    pub fn eval(&self, k: &[u32]) -> f64 {
        assert_eq!(k.len(), self.c(), "allocation length must equal the number of communities");
        self.terms.iter().map(|t| t.value(k.iter().copied())).sum()
    }

    /// f with each coordinate clamped to its community size. Still
    /// non-increasing in every coordinate, and equal to `eval` on the box
    /// `k ≤ sizes`.
    pub fn eval_capped(&self, k: &[u32]) -> f64 {
        assert_eq!(k.len(), self.c(), "allocation length must equal the number of communities");
        let clamped = k.iter().zip(&self.caps).map(|(&x, &cap)| x.min(cap));
        self.terms.iter().map(|t| t.value(clamped.clone())).sum()
    }
}

impl Term {
    fn value(&self, k: impl Iterator<Item = u32>) -> f64 {
        let mut exponent = 0.0;
        for (x, &lr) in k.zip(&self.log_r) {
            if x == 0 {
                continue;
            }
            if lr == f64::NEG_INFINITY {
                return 0.0;
            }
            exponent += x as f64 * lr;
        }
        self.pairs * exponent.exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(sizes: Vec<usize>, p: Vec<Vec<f64>>) -> SbmParams {
        SbmParams::new(sizes, p).unwrap()
    }

    /// Direct evaluation with plain powers, independent of the log-space path.
    fn naive_f(params: &SbmParams, k: &[u32]) -> f64 {
        let c = params.c();
        let mut total = 0.0;
        for i in 0..c {
            for j in i..c {
                let mut term = params.pair_count(i, j) as f64;
                for l in 0..c {
                    term *= pair_agreement_prob(params, i, j, l).powi(k[l] as i32);
                }
                total += term;
            }
        }
        total
    }

    #[test]
    fn agreement_examples() {
        let p = params(vec![2, 2], vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        assert_eq!(pair_agreement_prob(&p, 0, 1, 0), 0.5);
        let p = params(vec![2, 2], vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(pair_agreement_prob(&p, 0, 1, 0), 0.0);
        let p = params(vec![2, 2], vec![vec![0.043, 0.004], vec![0.004, 0.039]]);
        assert!((pair_agreement_prob(&p, 0, 1, 0) - 0.953344).abs() < 1e-12);
    }

    #[test]
    fn f_examples() {
        let p = params(vec![4], vec![vec![0.3]]);
        assert_eq!(expected_collisions(&p, &[0]), 6.0);
        let p = params(vec![4], vec![vec![0.5]]);
        assert!((expected_collisions(&p, &[2]) - 1.5).abs() < 1e-12);
        let p = params(vec![2, 2], vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!((expected_collisions(&p, &[1, 0]) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn f_survives_large_exponents() {
        let p = params(vec![5000, 5000], vec![vec![0.5, 1e-7], vec![1e-7, 0.5]]);
        let v = expected_collisions(&p, &[900, 900]);
        assert!(v.is_finite() && v >= 0.0);
        let v = expected_collisions(&p, &[10, 0]);
        assert!(v > 0.0);
    }

    #[test]
    fn capped_matches_inside_box() {
        let p = params(vec![3, 2], vec![vec![0.4, 0.7], vec![0.7, 0.2]]);
        let m = CollisionModel::new(&p);
        assert_eq!(m.eval(&[2, 1]), m.eval_capped(&[2, 1]));
        assert_eq!(m.eval_capped(&[9, 7]), m.eval(&[3, 2]));
    }

    fn arb_params() -> impl Strategy<Value = SbmParams> {
        (1usize..=3).prop_flat_map(|c| {
            (proptest::collection::vec(1usize..60, c), proptest::collection::vec(0.0f64..=1.0, c * c)).prop_map(
                move |(sizes, raw)| {
                    let mut p = vec![vec![0.0; c]; c];
                    for i in 0..c {
                        for j in i..c {
                            p[i][j] = raw[i * c + j];
                            p[j][i] = raw[i * c + j];
                        }
                    }
                    SbmParams::new(sizes, p).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn f_is_decreasing(p in arb_params(), base in proptest::collection::vec(0u32..20, 3),
                           bump in proptest::collection::vec(0u32..5, 3)) {
            let c = p.c();
            let x: Vec<u32> = base[..c].to_vec();
            let y: Vec<u32> = x.iter().zip(&bump[..c]).map(|(a, b)| a + b).collect();
            let m = CollisionModel::new(&p);
            prop_assert!(m.eval(&y) <= m.eval(&x) * (1.0 + 1e-12));
            prop_assert!(m.eval_capped(&y) <= m.eval_capped(&x) * (1.0 + 1e-12));
        }

        #[test]
        fn f_at_zero_is_total_pairs(p in arb_params()) {
            let zero = vec![0u32; p.c()];
            prop_assert_eq!(expected_collisions(&p, &zero), p.total_pairs() as f64);
        }

        #[test]
        fn f_matches_naive_powers(p in arb_params(), k in proptest::collection::vec(0u32..30, 3)) {
            let k = &k[..p.c()];
            let fast = expected_collisions(&p, k);
            let slow = naive_f(&p, k);
            prop_assert!((fast - slow).abs() <= 1e-9 * slow.max(1e-300) + 1e-300, "{} vs {}", fast, slow);
        }

        #[test]
        fn agreement_in_unit_interval(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let r = agreement(a, b);
            prop_assert!((0.0..=1.0).contains(&r));
            if a == b && (a == 0.0 || a == 1.0) {
                prop_assert_eq!(r, 1.0);
            }
        }
    }

    #[test]
    fn agreement_is_one_only_at_matching_extremes() {
        assert_eq!(agreement(0.0, 0.0), 1.0);
        assert_eq!(agreement(1.0, 1.0), 1.0);
        for &(a, b) in &[(0.0, 1.0), (0.5, 0.5), (0.1, 0.1), (0.9, 0.99), (1.0, 0.999)] {
            assert!(agreement(a, b) < 1.0, "{a} {b}");
        }
    }
}
