//! The three sampling estimators and a replication harness.
//!
//! All estimators draw arrival orders, evaluate one player's marginal
//! contribution per order, and average. They differ in how orders are
//! produced:
//!
//! - [`simple_mc`]: independent uniform orders, the baseline.
//! - [`ergodic_estimate`]: orders drawn in blocks of length `K`; each block
//!   starts from a fresh uniform order and applies a fixed position
//!   permutation `K - 1` times. Block means are i.i.d., so the estimate
//!   stays unbiased for any bijective transformation while draws inside a
//!   block may be strongly correlated.
//! - [`optk2_estimate`]: spends part of the budget learning an involution
//!   that pairs each order with a negatively correlated partner, then runs
//!   the K = 2 block scheme with it.
//!
//! Budget accounting follows the learning cost model: building the
//! covariance table costs about `m1 * n^2 / 6` contribution evaluations, so
//! a total budget of `m` baseline-equivalent evaluations leaves
//! `m2 = (m - m1 n^2 / 6) / 2` pairs (rounded to nearest).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{marginal_on_arrangement, Game};
use crate::matching;
use crate::order::{shuffle_arrangement, PositionPermutation};
use crate::rng::{self, StreamRng};

/// Outcome of one estimator run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    /// The estimated Shapley value.
    pub estimate: f64,
    /// Total budget in baseline-equivalent contribution evaluations.
    pub m: u64,
    /// Learning sample size (paired estimator only).
    pub m1: Option<u64>,
    /// Number of sampled pairs (paired estimator only).
    pub m2: Option<u64>,
    /// Block length (block estimators only).
    pub k: Option<u32>,
    /// Standard error of the estimate, from i.i.d. block or pair means.
    pub std_error: f64,
    /// Estimated correlation between paired draws, when the scheme pairs.
    pub rho_hat: Option<f64>,
    /// Sample standard deviation of the marginal contributions drawn.
    pub sigma_hat: f64,
}

/// Number of pairs a paired run can afford: `round((m - m1 n^2 / 6) / 2)`.
///
/// Errors when the learning phase would exhaust the budget; the bound names
/// the largest feasible `m1 <= 6m / n^2`.
pub fn paired_budget(m: u64, m1: u64, n: usize) -> Result<u64> {
    let numerator = 6 * m as i128 - (m1 as i128) * (n as i128) * (n as i128);
    // Round to nearest: floor((a + 6) / 12), halves up.
    let m2 = (numerator + 6).div_euclid(12);
    if m2 < 1 {
        return Err(Error::BudgetExhausted {
            m1,
            n,
            m,
            bound: 6.0 * m as f64 / (n as f64 * n as f64),
        });
    }
    Ok(m2 as u64)
}

/// Baseline estimator: the mean marginal contribution over `m` independent
/// uniform orders.
pub fn simple_mc(
    game: &dyn Game,
    player: u32,
    m: u64,
    rng: &mut StreamRng,
) -> Result<EstimateReport> {
    check_player(game, player)?;
    if m < 2 {
        return Err(Error::SampleTooSmall { m, min: 2 });
    }
    let n = game.player_count();
    let mut arrangement: Vec<u32> = (1..=n as u32).collect();
    let mut tracker = game.tracker();

    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..m {
        shuffle_arrangement(&mut arrangement, rng);
        let x = marginal_on_arrangement(tracker.as_mut(), &arrangement, player);
        sum += x;
        sumsq += x * x;
    }

    let sigma_hat = sample_std(m, sum, sumsq);
    Ok(EstimateReport {
        estimate: sum / m as f64,
        m,
        m1: None,
        m2: None,
        k: None,
        std_error: sigma_hat / (m as f64).sqrt(),
        rho_hat: None,
        sigma_hat,
    })
}

/// Block estimator: `m / K` blocks, each a fresh uniform order followed by
/// `K - 1` applications of `transform`. Any bijection on positions is a
/// valid transform; the estimate is unbiased regardless.
pub fn ergodic_estimate(
    game: &dyn Game,
    player: u32,
    transform: &PositionPermutation,
    k: u32,
    m: u64,
    rng: &mut StreamRng,
) -> Result<EstimateReport> {
    check_player(game, player)?;
    let n = game.player_count();
    if transform.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: transform.len() });
    }
    if k < 2 {
        return Err(Error::BlockTooShort { k });
    }
    if m == 0 || !m.is_multiple_of(k as u64) {
        return Err(Error::BlockMismatch { k, m });
    }
    let blocks = m / k as u64;

    let map = transform.map();
    let ku = k as usize;
    let mut current: Vec<u32> = (1..=n as u32).collect();
    let mut next: Vec<u32> = vec![0; n];
    let mut tracker = game.tracker();
    let mut draws = vec![0.0f64; ku];

    let mut grand_sum = 0.0;
    let mut grand_sumsq = 0.0;
    let mut block_mean_sum = 0.0;
    let mut block_mean_sumsq = 0.0;
    // Per-stream and pairwise sums for the correlation estimate.
    let mut stream_sum = vec![0.0f64; ku];
    let mut stream_sumsq = vec![0.0f64; ku];
    let mut cross = vec![0.0f64; ku * (ku - 1) / 2];

    for _ in 0..blocks {
        shuffle_arrangement(&mut current, rng);
        draws[0] = marginal_on_arrangement(tracker.as_mut(), &current, player);
        for draw in draws.iter_mut().skip(1) {
            for p in 0..n {
                next[map[p] as usize - 1] = current[p];
            }
            std::mem::swap(&mut current, &mut next);
            *draw = marginal_on_arrangement(tracker.as_mut(), &current, player);
        }

        let mut block_sum = 0.0;
        let mut pair_idx = 0;
        for (i, &x) in draws.iter().enumerate() {
            block_sum += x;
            grand_sumsq += x * x;
            stream_sum[i] += x;
            stream_sumsq[i] += x * x;
            for &y in &draws[i + 1..] {
                cross[pair_idx] += x * y;
                pair_idx += 1;
            }
        }
        grand_sum += block_sum;
        let bm = block_sum / k as f64;
        block_mean_sum += bm;
        block_mean_sumsq += bm * bm;
    }

    let rho_hat = mean_pairwise_correlation(blocks, &stream_sum, &stream_sumsq, &cross, ku);
    let block_std = sample_std(blocks, block_mean_sum, block_mean_sumsq);
    Ok(EstimateReport {
        estimate: grand_sum / m as f64,
        m,
        m1: None,
        m2: None,
        k: Some(k),
        std_error: block_std / (blocks as f64).sqrt(),
        rho_hat,
        sigma_hat: sample_std(m, grand_sum, grand_sumsq),
    })
}

/// Learned paired estimator: learns an involution from `m1` orders, then
/// draws `m2` seed orders, pairs each with its transform, and averages all
/// `2 m2` marginal contributions.
///
/// The learning sample is not reused in the estimate. With `m2 == 1` the
/// standard error and pair correlation are undefined and reported as 0 and
/// unset.
pub fn optk2_estimate(
    game: &dyn Game,
    player: u32,
    m: u64,
    m1: u64,
    rng: &mut StreamRng,
) -> Result<EstimateReport> {
    check_player(game, player)?;
    let n = game.player_count();
    let m2 = paired_budget(m, m1, n)?;
    let learned = matching::fit(game, player, m1, rng)?;
    let map = learned.involution.map().to_vec();

    let mut seed_arr: Vec<u32> = (1..=n as u32).collect();
    let mut pair_arr: Vec<u32> = vec![0; n];
    let mut tracker = game.tracker();

    let mut total = 0.0;
    let mut total_sq = 0.0;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut pm_sum = 0.0;
    let mut pm_sumsq = 0.0;

    for _ in 0..m2 {
        shuffle_arrangement(&mut seed_arr, rng);
        for p in 0..n {
            pair_arr[map[p] as usize - 1] = seed_arr[p];
        }
        let x = marginal_on_arrangement(tracker.as_mut(), &seed_arr, player);
        let y = marginal_on_arrangement(tracker.as_mut(), &pair_arr, player);
        total += x + y;
        total_sq += x * x + y * y;
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
        let pm = (x + y) / 2.0;
        pm_sum += pm;
        pm_sumsq += pm * pm;
    }

    let draws = 2 * m2;
    let std_error = if m2 >= 2 {
        sample_std(m2, pm_sum, pm_sumsq) / (m2 as f64).sqrt()
    } else {
        0.0
    };
    let rho_hat = if m2 >= 2 { pearson(m2, sx, sy, sxx, syy, sxy) } else { None };
    Ok(EstimateReport {
        estimate: total / draws as f64,
        m,
        m1: Some(m1),
        m2: Some(m2),
        k: Some(2),
        std_error,
        rho_hat,
        sigma_hat: sample_std(draws, total, total_sq),
    })
}

/// Which estimator a replication study runs.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Simple,
    Ergodic { transform: PositionPermutation, block_len: u32 },
    OptK2 { learning_size: u64 },
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Simple => "simple",
            Method::Ergodic { .. } => "ergodic",
            Method::OptK2 { .. } => "optk2",
        }
    }

    fn run(
        &self,
        game: &dyn Game,
        player: u32,
        m: u64,
        rng: &mut StreamRng,
    ) -> Result<EstimateReport> {
        match self {
            Method::Simple => simple_mc(game, player, m, rng),
            Method::Ergodic { transform, block_len } => {
                ergodic_estimate(game, player, transform, *block_len, m, rng)
            }
            Method::OptK2 { learning_size } => optk2_estimate(game, player, m, *learning_size, rng),
        }
    }
}

/// Seeds for a replication study: either one master seed split into indexed
/// substreams, or one explicit seed per replication.
#[derive(Debug, Clone, PartialEq)]
pub enum SeedPlan {
    Master(u64),
    List(Vec<u64>),
}

impl SeedPlan {
    fn replication_stream(&self, index: usize) -> StreamRng {
        match self {
            SeedPlan::Master(seed) => rng::substream(*seed, index as u64),
            SeedPlan::List(seeds) => rng::stream(seeds[index]),
        }
    }

    fn sigma_stream(&self) -> StreamRng {
        let base = match self {
            SeedPlan::Master(seed) => *seed,
            SeedPlan::List(seeds) => seeds[0],
        };
        rng::substream(base, u64::MAX)
    }

    fn check(&self, r: u64) -> Result<()> {
        if let SeedPlan::List(seeds) = self {
            if seeds.len() != r as usize {
                return Err(Error::SeedCountMismatch { expected: r as usize, got: seeds.len() });
            }
        }
        Ok(())
    }
}

/// Replication study: `r` independent runs of one estimator configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationSummary {
    pub r: u64,
    pub m: u64,
    pub m1: Option<u64>,
    pub m2: Option<u64>,
    pub k: Option<u32>,
    /// One estimate per replication, in replication order.
    pub estimates: Vec<f64>,
    pub mean_estimate: f64,
    /// Empirical standard deviation of the replication estimates.
    pub sigma_e: f64,
    /// Analytic baseline: contribution std from a dedicated sample, over
    /// sqrt(m).
    pub sigma_s: f64,
    /// `sigma_e / sigma_s`; below 1 means the method beats the baseline.
    pub ratio: f64,
    /// Mean reported pair correlation across replications, when defined.
    pub mean_rho: Option<f64>,
    /// Mean per-run standard error (the within-run analogue of `sigma_e`).
    pub mean_std_error: f64,
    /// Contribution std from the dedicated baseline sample.
    pub sigma_hat: f64,
}

/// Run `method` `r` times on independent streams and compare the spread of
/// the estimates against the simple-sampling baseline `sigma / sqrt(m)`.
///
/// `sigma_sample` is the size of the dedicated sample used to estimate the
/// marginal-contribution standard deviation. Replications run in parallel;
/// results do not depend on thread count or scheduling.
pub fn replicate(
    game: &dyn Game,
    player: u32,
    method: &Method,
    m: u64,
    r: u64,
    seeds: &SeedPlan,
    sigma_sample: u64,
) -> Result<ReplicationSummary> {
    if r < 2 {
        return Err(Error::TooFewReplications { r });
    }
    seeds.check(r)?;
    check_player(game, player)?;

    let reports: Vec<EstimateReport> = (0..r as usize)
        .into_par_iter()
        .map(|i| {
            let mut stream = seeds.replication_stream(i);
            method.run(game, player, m, &mut stream)
        })
        .collect::<Result<_>>()?;

    let mut sigma_rng = seeds.sigma_stream();
    let baseline = simple_mc(game, player, sigma_sample.max(2), &mut sigma_rng)?;
    let sigma_hat = baseline.sigma_hat;
    let sigma_s = sigma_hat / (m as f64).sqrt();

    let estimates: Vec<f64> = reports.iter().map(|rep| rep.estimate).collect();
    let (mut sum, mut sumsq) = (0.0, 0.0);
    for &e in &estimates {
        sum += e;
        sumsq += e * e;
    }
    let sigma_e = sample_std(r, sum, sumsq);
    let rhos: Vec<f64> = reports.iter().filter_map(|rep| rep.rho_hat).collect();
    let mean_rho = if rhos.is_empty() {
        None
    } else {
        Some(rhos.iter().sum::<f64>() / rhos.len() as f64)
    };
    let mean_std_error = reports.iter().map(|rep| rep.std_error).sum::<f64>() / r as f64;

    let first = &reports[0];
    Ok(ReplicationSummary {
        r,
        m,
        m1: first.m1,
        m2: first.m2,
        k: first.k,
        mean_estimate: sum / r as f64,
        sigma_e,
        sigma_s,
        ratio: sigma_e / sigma_s,
        mean_rho,
        mean_std_error,
        sigma_hat,
        estimates,
    })
}

fn check_player(game: &dyn Game, player: u32) -> Result<()> {
    let n = game.player_count();
    if player == 0 || player as usize > n {
        return Err(Error::PlayerOutOfRange { player, n });
    }
    Ok(())
}

/// Sample standard deviation from count, sum and sum of squares.
pub(crate) fn sample_std(count: u64, sum: f64, sumsq: f64) -> f64 {
    if count < 2 {
        return 0.0;
    }
    let n = count as f64;
    let var = (sumsq - sum * sum / n) / (n - 1.0);
    var.max(0.0).sqrt()
}

/// Pearson correlation from running sums; `None` when either marginal is
/// constant. Clamped to [-1, 1].
pub(crate) fn pearson(
    count: u64,
    sx: f64,
    sy: f64,
    sxx: f64,
    syy: f64,
    sxy: f64,
) -> Option<f64> {
    let n = count as f64;
    let vx = sxx - sx * sx / n;
    let vy = syy - sy * sy / n;
    if vx <= 0.0 || vy <= 0.0 {
        return None;
    }
    let cov = sxy - sx * sy / n;
    Some((cov / (vx * vy).sqrt()).clamp(-1.0, 1.0))
}

fn mean_pairwise_correlation(
    blocks: u64,
    stream_sum: &[f64],
    stream_sumsq: &[f64],
    cross: &[f64],
    k: usize,
) -> Option<f64> {
    if blocks < 2 {
        return None;
    }
    let mut total = 0.0;
    let mut defined = 0u32;
    let mut pair_idx = 0;
    for i in 0..k {
        for j in i + 1..k {
            if let Some(r) = pearson(
                blocks,
                stream_sum[i],
                stream_sum[j],
                stream_sumsq[i],
                stream_sumsq[j],
                cross[pair_idx],
            ) {
                total += r;
                defined += 1;
            }
            pair_idx += 1;
        }
    }
    (defined > 0).then(|| total / defined as f64)
}
