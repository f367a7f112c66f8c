//! Distribution-level invariants of the samplers and the learner: identical
//! marginal laws under any fixed transformation, the pair-variance law,
//! block standard errors against replication spread, and learning-quality
//! trends. Heavier than unit tests, lighter than the acceptance suite.

use ergodic_shapley::analysis::paired_variance;
use ergodic_shapley::{
    apply_transformation, learn_transformation, make_game, marginal_contribution, random_order,
    replicate, rng, Game, GameId, Method, PositionPermutation, SeedPlan,
};

/// Two-sample Kolmogorov-Smirnov distance.
fn ks_distance(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut ia, mut ib) = (0usize, 0usize);
    let mut worst = 0.0f64;
    while ia < a.len() && ib < b.len() {
        let cut = a[ia].min(b[ib]);
        while ia < a.len() && a[ia] <= cut {
            ia += 1;
        }
        while ib < b.len() && b[ib] <= cut {
            ib += 1;
        }
        worst = worst.max((ia as f64 / na - ib as f64 / nb).abs());
    }
    worst
}

/// Contributions of transformed orders follow the same law as those of
/// uniform orders: two-sample KS at significance 0.001.
#[test]
fn transformed_orders_are_identically_distributed() {
    let game = make_game(GameId::Mst, Some(12)).unwrap();
    let transform = PositionPermutation::reversal(12);
    let m = 100_000usize;

    let mut stream = rng::stream(3);
    let direct: Vec<f64> = (0..m)
        .map(|_| {
            let order = random_order(12, &mut stream);
            marginal_contribution(game.as_ref(), &order, 1).unwrap()
        })
        .collect();
    let transformed: Vec<f64> = (0..m)
        .map(|_| {
            let order = random_order(12, &mut stream);
            let moved = apply_transformation(&transform, &order).unwrap();
            marginal_contribution(game.as_ref(), &moved, 1).unwrap()
        })
        .collect();

    let d = ks_distance(direct, transformed);
    // c(0.001) = 1.9495 for the two-sample statistic.
    let critical = 1.9495 * (2.0 / m as f64).sqrt();
    assert!(d < critical, "KS distance {d} exceeds critical value {critical}");
}

fn variance_law_holds(game: &dyn Game, m: u64, m1: u64, r: u64, seed: u64) {
    let summary = replicate(
        game,
        1,
        &Method::OptK2 { learning_size: m1 },
        m,
        r,
        &SeedPlan::Master(seed),
        200_000,
    )
    .unwrap();
    let m2 = summary.m2.unwrap();
    let rho = summary.mean_rho.unwrap();
    let predicted = paired_variance(summary.sigma_hat, rho, m2 as f64).unwrap();
    let observed = summary.sigma_e * summary.sigma_e;
    let relative = (observed - predicted).abs() / predicted.max(1e-30);
    assert!(
        relative < 0.20,
        "variance law off by {relative:.3}: observed {observed:.3e}, predicted {predicted:.3e}"
    );
}

/// The replication variance of the paired estimator matches
/// `sigma^2 (1 + rho) / (2 m2)` within 20% at R = 1000.
#[test]
fn pair_variance_law_square_game() {
    let game = make_game(GameId::Square, Some(20)).unwrap();
    variance_law_holds(game.as_ref(), 50_000, 150, 1_000, 7);
}

#[test]
fn pair_variance_law_shoes_game_full_scale() {
    let game = make_game(GameId::Shoes, None).unwrap();
    variance_law_holds(game.as_ref(), 2_600_000, 1_500, 1_000, 8);
}

/// The block estimator's per-run standard error predicts the spread of its
/// estimates across replications.
#[test]
fn block_standard_error_predicts_replication_spread() {
    let game = make_game(GameId::VotingNs, None).unwrap();
    let transform = PositionPermutation::cyclic_shift(17, 51).unwrap();
    let r = 400;
    let summary = replicate(
        game.as_ref(),
        1,
        &Method::Ergodic { transform, block_len: 3 },
        9_999,
        r,
        &SeedPlan::Master(19),
        100_000,
    )
    .unwrap();
    let relative = (summary.mean_std_error - summary.sigma_e).abs() / summary.sigma_e;
    assert!(
        relative < 0.15,
        "mean per-run SE {} vs replication spread {} (off {relative:.3})",
        summary.mean_std_error,
        summary.sigma_e
    );
}

/// More learning data produces a more negative correlation on games the
/// learner handles well.
#[test]
fn learning_improves_with_sample_size_on_square() {
    let game = make_game(GameId::Square, None).unwrap();
    let mean_rho = |m1: u64, base: u64| -> f64 {
        let total: f64 = (0..20)
            .map(|s| {
                let mut stream = rng::substream(base, s);
                learn_transformation(game.as_ref(), 1, m1, &mut stream)
                    .unwrap()
                    .rho_hat_learning
                    .unwrap()
            })
            .sum();
        total / 20.0
    };
    let coarse = mean_rho(40, 100);
    let fine = mean_rho(1_000, 200);
    assert!(
        fine < coarse,
        "correlation should improve with m1: {fine:.3} (m1=1000) vs {coarse:.3} (m1=40)"
    );
    assert!(fine < -0.9, "m1=1000 should learn a strong pairing, got {fine:.3}");
}

/// At a large learning sample the spanning-tree game's involution
/// approaches the position reversal: the map is strongly order-reversing
/// and its edges hug the anti-diagonal `a + b = n + 1`.
#[test]
fn spanning_tree_learns_the_reversal() {
    let game = make_game(GameId::Mst, None).unwrap();
    let mut rhos = Vec::new();
    let mut near_mirror = 0.0;
    let mut position_corr = 0.0;
    for s in 0..5 {
        let mut stream = rng::substream(77, s);
        let learned = learn_transformation(game.as_ref(), 1, 9_500, &mut stream).unwrap();
        rhos.push(learned.rho_hat_learning.unwrap());

        near_mirror += learned
            .edges
            .iter()
            .filter(|&&(a, b)| ((a + b) as i64 - 101).abs() <= 8)
            .count() as f64
            / learned.edges.len() as f64;

        // Pearson correlation of p against map[p]; an exact reversal
        // scores -1.
        let map = learned.involution.map();
        let mean = 101.0 / 2.0;
        let (mut num, mut den) = (0.0, 0.0);
        for (i, &q) in map.iter().enumerate() {
            let p = i as f64 + 1.0;
            num += (p - mean) * (q as f64 - mean);
            den += (p - mean) * (p - mean);
        }
        position_corr += num / den;
    }
    let mean_rho = rhos.iter().sum::<f64>() / rhos.len() as f64;
    assert!(mean_rho <= -0.9, "mean learned correlation {mean_rho:.3}");
    assert!(
        position_corr / 5.0 <= -0.9,
        "involution should reverse positions, corr {:.3}",
        position_corr / 5.0
    );
    assert!(
        near_mirror / 5.0 > 0.8,
        "edges should hug the anti-diagonal, fraction {:.3}",
        near_mirror / 5.0
    );
}

/// Reference sweep value for the square game at a small learning sample.
#[test]
fn square_game_learning_at_m1_250() {
    let game = make_game(GameId::Square, None).unwrap();
    let total: f64 = (0..20)
        .map(|s| {
            let mut stream = rng::substream(31, s);
            learn_transformation(game.as_ref(), 1, 250, &mut stream)
                .unwrap()
                .rho_hat_learning
                .unwrap()
        })
        .sum();
    let mean = total / 20.0;
    assert!((mean + 0.89).abs() < 0.08, "mean rho {mean:.3} vs -0.89 +- 0.08");
}
