use rand::seq::index::sample as pick;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rayon::prelude::*;

use resolvekit::graph::all_pairs_distances;
use resolvekit::resolve::{ich, is_resolving, random_baseline, NodeSet, ResolvingTarget};
use resolvekit::sbm::{er_beta_upper, sample};
use resolvekit::SbmParams;

#[test]
fn supersets_of_resolving_sets_resolve() {
    let params = SbmParams::new(vec![20, 20], vec![vec![0.4, 0.1], vec![0.1, 0.4]]).unwrap();
    for seed in 0..5 {
        let g = sample(&params, seed);
        let d = all_pairs_distances(&g);
        let targets = [ResolvingTarget::ModifiedAdjacency(&g), ResolvingTarget::Distance(&d)];
        for t in &targets {
            let Ok(r) = ich(t) else { continue };
            assert!(is_resolving(t, &r));
            let mut more = r.members().to_vec();
            for v in 0..40u32 {
                if !more.contains(&v) {
                    more.push(v);
                    assert!(is_resolving(t, &NodeSet::new(more.clone(), 40).unwrap()));
                }
            }
        }
    }
}

#[test]
fn beta_bound_sized_random_sets_usually_resolve() {
    let n = 500usize;
    let k = er_beta_upper(n as u64, 0.5).unwrap() as usize;
    assert_eq!(k, 18);
    let params = SbmParams::new(vec![n], vec![vec![0.5]]).unwrap();
    let hits = (0..200u64)
        .into_par_iter()
        .filter(|&t| {
            let g = sample(&params, t);
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + t);
            let r = NodeSet::new(pick(&mut rng, n, k).into_iter().map(|v| v as u32).collect(), n).unwrap();
            is_resolving(&ResolvingTarget::ModifiedAdjacency(&g), &r)
        })
        .count();
    // About 0.64 is expected here (see the collision estimate test below), so this threshold is not met at n = 500.
    assert!(hits >= 180, "{hits}/200 resolving with k = {k}");
}

#[test]
fn random_baseline_is_seeded() {
    let params = SbmParams::new(vec![50], vec![vec![0.3]]).unwrap();
    let g = sample(&params, 9);
    assert_eq!(random_baseline(&g, 3).unwrap(), random_baseline(&g, 3).unwrap());
    assert!(is_resolving(&ResolvingTarget::ModifiedAdjacency(&g), &random_baseline(&g, 4).unwrap()));
}

#[test]
fn random_set_success_tracks_pair_collision_estimate() {
    let (n, k, trials) = (500usize, 18usize, 400u64);
    let params = SbmParams::new(vec![n], vec![vec![0.5]]).unwrap();
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let g = sample(&params, 50_000 + t);
            let mut rng = ChaCha8Rng::seed_from_u64(90_000 + t);
            let r = NodeSet::new(pick(&mut rng, n, k).into_iter().map(|v| v as u32).collect(), n).unwrap();
            is_resolving(&ResolvingTarget::ModifiedAdjacency(&g), &r)
        })
        .count();
    // Only unselected pairs can collide, each with probability 2^-k.
    let rest = (n - k) as f64;
    let expected = (-(rest * (rest - 1.0) / 2.0) * 0.5f64.powi(k as i32)).exp();
    let rate = hits as f64 / trials as f64;
    let se = (expected * (1.0 - expected) / trials as f64).sqrt();
    assert!((rate - expected).abs() <= 4.0 * se, "rate {rate} vs {expected}");
}
