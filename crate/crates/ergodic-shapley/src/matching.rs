//! Learning a pairing transformation from sampled covariances.
//!
//! For a fixed player, every transposition of two positions turns the
//! marginal-contribution stream `X` into a swapped stream `Y`. The learner
//! estimates the covariance of `X` and `Y` for all position pairs from one
//! shared sample of `m1` orders, then greedily assembles a minimum-weight
//! matching over positions. The product of the chosen transpositions is an
//! involution; applying it to fresh orders yields the negatively correlated
//! partner draws used by the paired estimator.
//!
//! A swap only changes the marginal contribution when it straddles the
//! player's own position, so roughly two thirds of the table entries reuse
//! `X` without touching the characteristic function. The straddling entries
//! are evaluated incrementally (one membership exchange instead of a full
//! re-walk), which keeps the learning cost near `m1 * n^2 / 6` evaluations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{marginal_on_arrangement, Game, WorthTracker};
use crate::order::{shuffle_arrangement, PositionPermutation};
use crate::rng::StreamRng;

/// Symmetric table of sampled covariances `beta[r, s]` between the original
/// contribution stream and its `(r, s)`-swapped counterpart, including the
/// loop entries `beta[r, r]`, which equal the sample variance.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceTable {
    n: usize,
    /// Row-major upper triangle, `n (n + 1) / 2` entries.
    beta: Vec<f64>,
}

impl CovarianceTable {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Covariance for the pair `(r, s)`; symmetric in its arguments.
    pub fn beta(&self, r: u32, s: u32) -> f64 {
        let (lo, hi) = if r <= s { (r, s) } else { (s, r) };
        self.beta[cell_index(self.n, lo, hi)]
    }
}

fn cell_index(n: usize, r: u32, s: u32) -> usize {
    debug_assert!(1 <= r && r <= s && s as usize <= n);
    let r = r as usize - 1;
    let s = s as usize - 1;
    // Rows 0..r hold n, n-1, .. cells each.
    r * n - (r * r - r) / 2 + (s - r)
}

/// The learned pairing: matching edges over positions (loops are fixed
/// points), the induced involution, and the correlation the pairing
/// achieves.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingResult {
    pub n: usize,
    /// Edges in greedy pick order, each as `(a, b)` with `a <= b`.
    pub edges: Vec<(u32, u32)>,
    pub involution: PositionPermutation,
    /// Pearson correlation between paired contribution streams under this
    /// involution, measured on a fresh probe sample at learning time. Unset
    /// when produced by [`greedy_min_matching`] directly or when a marginal
    /// is constant.
    pub rho_hat_learning: Option<f64>,
    pub m1: u64,
    /// Master seed, filled in by callers that track one.
    pub seed: Option<u64>,
}

/// Wire format: `{n, edges, rho_hat_learning, m1, seed}`.
#[derive(Serialize, Deserialize)]
struct MatchingFile {
    n: usize,
    edges: Vec<(u32, u32)>,
    rho_hat_learning: Option<f64>,
    m1: u64,
    seed: Option<u64>,
}

impl MatchingResult {
    pub fn to_json(&self) -> Result<String> {
        let file = MatchingFile {
            n: self.n,
            edges: self.edges.clone(),
            rho_hat_learning: self.rho_hat_learning,
            m1: self.m1,
            seed: self.seed,
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatchingFile = serde_json::from_str(text)?;
        let involution = involution_from_edges(file.n, &file.edges)?;
        Ok(MatchingResult {
            n: file.n,
            edges: file.edges,
            involution,
            rho_hat_learning: file.rho_hat_learning,
            m1: file.m1,
            seed: file.seed,
        })
    }
}

/// Build the involution swapping the endpoints of each edge; positions not
/// covered by any edge stay fixed.
pub fn involution_from_edges(n: usize, edges: &[(u32, u32)]) -> Result<PositionPermutation> {
    let mut map: Vec<u32> = (1..=n as u32).collect();
    let mut used = vec![false; n + 1];
    for &(a, b) in edges {
        for pos in [a, b] {
            if pos == 0 || pos as usize > n {
                return Err(Error::PositionOutOfRange { position: pos, n });
            }
        }
        if used[a as usize] || (a != b && used[b as usize]) {
            return Err(Error::InvalidConfig(format!(
                "edges do not form a matching: position repeated in ({a}, {b})"
            )));
        }
        used[a as usize] = true;
        used[b as usize] = true;
        map[a as usize - 1] = b;
        map[b as usize - 1] = a;
    }
    PositionPermutation::from_map(map)
}

struct LearningSample {
    m1: u64,
    n: usize,
    /// `m1` arrangements, flattened.
    arrangements: Vec<u32>,
    /// Contribution of the target player in each order.
    xs: Vec<f64>,
    /// The target player's position in each order.
    ks: Vec<u32>,
}

impl LearningSample {
    fn arrangement(&self, j: usize) -> &[u32] {
        &self.arrangements[j * self.n..(j + 1) * self.n]
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct LearnStats {
    /// Straddling (r, s, order) triples, i.e. contribution re-evaluations.
    pub reevaluations: u64,
    /// All (cell, order) triples.
    pub triples: u64,
}

fn draw_sample(
    game: &dyn Game,
    player: u32,
    m1: u64,
    rng: &mut StreamRng,
) -> LearningSample {
    let n = game.player_count();
    let mut tracker = game.tracker();
    let mut arrangement: Vec<u32> = (1..=n as u32).collect();
    let mut sample = LearningSample {
        m1,
        n,
        arrangements: Vec::with_capacity(m1 as usize * n),
        xs: Vec::with_capacity(m1 as usize),
        ks: Vec::with_capacity(m1 as usize),
    };
    for _ in 0..m1 {
        shuffle_arrangement(&mut arrangement, rng);
        sample.arrangements.extend_from_slice(&arrangement);
        let k = arrangement.iter().position(|&p| p == player).expect("player present") + 1;
        sample.ks.push(k as u32);
        sample.xs.push(marginal_on_arrangement(tracker.as_mut(), &arrangement, player));
    }
    sample
}

/// Contribution of the player if it sat at `position` with everybody else in
/// the same relative order; fills `mc_at` for the cells that swap the player
/// itself, and the exchange buffer for cells that swap two other players
/// across it.
fn swapped_contributions(
    game: &dyn Game,
    tracker: &mut dyn WorthTracker,
    arrangement: &[u32],
    player: u32,
    k: usize,
    mc_at: &mut [f64],
    exchange: &mut [f64],
) {
    let n = game.player_count();
    tracker.clear();

    // Positions r < k: the player moves down to r, displacing nobody ahead
    // of r. Walk forward, probing the player's marginal at each prefix.
    for r in 1..=k {
        let without = tracker.worth();
        tracker.add(player);
        mc_at[r] = tracker.worth() - without;
        tracker.remove(player);
        if r < k {
            tracker.add(arrangement[r - 1]);
        }
    }
    // Tracker now holds the k - 1 predecessors.

    // Cells r < k < s: predecessor set swaps one member out, one in.
    for r in 1..k {
        tracker.remove(arrangement[r - 1]);
        let row = (r - 1) * n;
        for s in k + 1..=n {
            tracker.add(arrangement[s - 1]);
            let without = tracker.worth();
            tracker.add(player);
            exchange[row + s - 1] = tracker.worth() - without;
            tracker.remove(player);
            tracker.remove(arrangement[s - 1]);
        }
        tracker.add(arrangement[r - 1]);
    }

    // Positions s > k: the player moves up to s; everyone up to s joins
    // ahead of it.
    for s in k + 1..=n {
        tracker.add(arrangement[s - 1]);
        let without = tracker.worth();
        tracker.add(player);
        mc_at[s] = tracker.worth() - without;
        tracker.remove(player);
    }
}

fn table_from_sample(
    game: &dyn Game,
    player: u32,
    sample: &LearningSample,
) -> (CovarianceTable, LearnStats) {
    let n = sample.n;
    let m1 = sample.m1;
    let cells = n * (n + 1) / 2;
    let mut sum_y = vec![0.0f64; cells];
    let mut sum_xy = vec![0.0f64; cells];
    let mut mc_at = vec![0.0f64; n + 1];
    let mut exchange = vec![0.0f64; n * n];
    let mut tracker = game.tracker();
    let mut stats = LearnStats::default();

    for j in 0..m1 as usize {
        let arrangement = sample.arrangement(j);
        let x = sample.xs[j];
        let k = sample.ks[j] as usize;
        swapped_contributions(
            game,
            tracker.as_mut(),
            arrangement,
            player,
            k,
            &mut mc_at,
            &mut exchange,
        );
        stats.reevaluations += (k * (n + 1 - k) - 1) as u64;

        let ku = k as u32;
        let mut idx = 0;
        for r in 1..=n as u32 {
            for s in r..=n as u32 {
                let y = if r <= ku && ku <= s && r != s {
                    if s == ku {
                        mc_at[r as usize]
                    } else if r == ku {
                        mc_at[s as usize]
                    } else {
                        exchange[(r as usize - 1) * n + (s as usize - 1)]
                    }
                } else {
                    x
                };
                sum_y[idx] += y;
                sum_xy[idx] += x * y;
                idx += 1;
            }
        }
    }
    stats.triples = m1 * cells as u64;

    let sum_x: f64 = sample.xs.iter().sum();
    let beta = finalize_covariances(m1, sum_x, &sum_xy, &sum_y);
    (CovarianceTable { n, beta }, stats)
}

fn finalize_covariances(m1: u64, sum_x: f64, sum_xy: &[f64], sum_y: &[f64]) -> Vec<f64> {
    let m = m1 as f64;
    sum_xy
        .iter()
        .zip(sum_y)
        .map(|(&sxy, &sy)| (sxy - sum_x * sy / m) / (m - 1.0))
        .collect()
}

/// Estimate the full transposition-covariance table of `player` from `m1`
/// sampled orders.
pub fn covariance_table(
    game: &dyn Game,
    player: u32,
    m1: u64,
    rng: &mut StreamRng,
) -> Result<CovarianceTable> {
    let (table, _) = covariance_table_impl(game, player, m1, rng)?;
    Ok(table)
}

pub(crate) fn covariance_table_impl(
    game: &dyn Game,
    player: u32,
    m1: u64,
    rng: &mut StreamRng,
) -> Result<(CovarianceTable, LearnStats)> {
    let n = game.player_count();
    if player == 0 || player as usize > n {
        return Err(Error::PlayerOutOfRange { player, n });
    }
    if m1 < 2 {
        return Err(Error::SampleTooSmall { m: m1, min: 2 });
    }
    let sample = draw_sample(game, player, m1, rng);
    Ok(table_from_sample(game, player, &sample))
}

/// Whether loop edges win ties against proper edges of equal weight.
/// Loops win by default; the alternative exists for experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LoopTie {
    Prefer,
    #[allow(dead_code)]
    Avoid,
}

/// Greedy minimum-weight matching over the covariance table.
///
/// Edges are scanned in ascending weight; on equal weights loop edges win,
/// with lexicographic `(a, b)` order as the final tie-break so the result is
/// a pure function of the table. Every position ends up covered by a pair
/// or a loop.
pub fn greedy_min_matching(table: &CovarianceTable) -> MatchingResult {
    greedy_min_matching_with(table, LoopTie::Prefer)
}

pub(crate) fn greedy_min_matching_with(table: &CovarianceTable, tie: LoopTie) -> MatchingResult {
    let n = table.n;
    let mut cells: Vec<(u32, u32)> = Vec::with_capacity(n * (n + 1) / 2);
    for r in 1..=n as u32 {
        for s in r..=n as u32 {
            cells.push((r, s));
        }
    }
    cells.sort_by(|&(ar, as_), &(br, bs)| {
        let wa = table.beta[cell_index(n, ar, as_)];
        let wb = table.beta[cell_index(n, br, bs)];
        wa.total_cmp(&wb)
            .then_with(|| {
                let a_loop = ar == as_;
                let b_loop = br == bs;
                match tie {
                    LoopTie::Prefer => b_loop.cmp(&a_loop),
                    LoopTie::Avoid => a_loop.cmp(&b_loop),
                }
            })
            .then_with(|| (ar, as_).cmp(&(br, bs)))
    });

    let mut used = vec![false; n + 1];
    let mut covered = 0usize;
    let mut edges = Vec::new();
    for &(a, b) in &cells {
        if covered == n {
            break;
        }
        if a == b {
            if !used[a as usize] {
                used[a as usize] = true;
                covered += 1;
                edges.push((a, a));
            }
        } else if !used[a as usize] && !used[b as usize] {
            used[a as usize] = true;
            used[b as usize] = true;
            covered += 2;
            edges.push((a, b));
        }
    }

    let involution = involution_from_edges(n, &edges).expect("greedy edges form a matching");
    MatchingResult {
        n,
        edges,
        involution,
        rho_hat_learning: None,
        m1: 0,
        seed: None,
    }
}

/// Pairs drawn to measure the correlation a learned involution achieves.
const PROBE_PAIRS: u64 = 4096;

/// The learning pass proper: sample, build the covariance table, run the
/// greedy matching. No correlation probe; this is the routine the paired
/// estimator calls, so the budget stays at the learning cost.
pub(crate) fn fit(
    game: &dyn Game,
    player: u32,
    m1: u64,
    rng: &mut StreamRng,
) -> Result<MatchingResult> {
    let n = game.player_count();
    if player == 0 || player as usize > n {
        return Err(Error::PlayerOutOfRange { player, n });
    }
    if m1 < 2 {
        return Err(Error::SampleTooSmall { m: m1, min: 2 });
    }
    let sample = draw_sample(game, player, m1, rng);
    let (table, _) = table_from_sample(game, player, &sample);
    let mut result = greedy_min_matching(&table);
    result.m1 = m1;
    Ok(result)
}

/// Full learning pass: fit the involution, then measure the correlation it
/// achieves between paired contribution streams on a fresh probe sample.
///
/// The probe is drawn after (and independently of) the learning orders;
/// evaluating on the learning sample itself would reward overfitting — a
/// two-order sample can always be paired into perfect anti-correlation even
/// though the learned transform duplicates fresh draws almost exactly.
pub fn learn_transformation(
    game: &dyn Game,
    player: u32,
    m1: u64,
    rng: &mut StreamRng,
) -> Result<MatchingResult> {
    let mut result = fit(game, player, m1, rng)?;

    let n = game.player_count();
    let map = result.involution.map();
    let mut arrangement: Vec<u32> = (1..=n as u32).collect();
    let mut transformed = vec![0u32; n];
    let mut tracker = game.tracker();
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..PROBE_PAIRS {
        shuffle_arrangement(&mut arrangement, rng);
        for p in 0..n {
            transformed[map[p] as usize - 1] = arrangement[p];
        }
        let x = marginal_on_arrangement(tracker.as_mut(), &arrangement, player);
        let y = marginal_on_arrangement(tracker.as_mut(), &transformed, player);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    result.rho_hat_learning = crate::estimate::pearson(PROBE_PAIRS, sx, sy, sxx, syy, sxy);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{make_game, AirportGame, GameId, MstGame, PairGame, SquareGame};
    use crate::rng;

    /// Reference implementation: per cell, rebuild and re-walk every swapped
    /// order from scratch.
    fn covariance_table_naive(game: &dyn Game, player: u32, sample: &LearningSample) -> CovarianceTable {
        let n = sample.n;
        let m1 = sample.m1;
        let mut tracker = game.tracker();
        let cells = n * (n + 1) / 2;
        let mut sum_y = vec![0.0f64; cells];
        let mut sum_xy = vec![0.0f64; cells];
        let mut swapped = vec![0u32; n];
        let mut idx = 0;
        for r in 1..=n {
            for s in r..=n {
                for j in 0..m1 as usize {
                    let arrangement = sample.arrangement(j);
                    swapped.copy_from_slice(arrangement);
                    swapped.swap(r - 1, s - 1);
                    let y = marginal_on_arrangement(tracker.as_mut(), &swapped, player);
                    sum_y[idx] += y;
                    sum_xy[idx] += sample.xs[j] * y;
                }
                idx += 1;
            }
        }
        let sum_x: f64 = sample.xs.iter().sum();
        let beta = finalize_covariances(m1, sum_x, &sum_xy, &sum_y);
        CovarianceTable { n, beta }
    }

    fn table_from_fixed(values: &[(u32, u32, f64)], n: usize, fill: f64) -> CovarianceTable {
        let mut beta = vec![fill; n * (n + 1) / 2];
        for &(r, s, v) in values {
            beta[cell_index(n, r, s)] = v;
        }
        CovarianceTable { n, beta }
    }

    #[test]
    fn cell_index_is_dense_and_ordered() {
        let n = 7;
        let mut expected = 0;
        for r in 1..=n as u32 {
            for s in r..=n as u32 {
                assert_eq!(cell_index(n, r, s), expected);
                expected += 1;
            }
        }
        assert_eq!(expected, n * (n + 1) / 2);
    }

    #[test]
    fn loop_cells_hold_the_sample_variance() {
        let game = SquareGame::new(10);
        let mut rng = rng::stream(3);
        let table = covariance_table(&game, 4, 200, &mut rng).unwrap();
        let var = table.beta(1, 1);
        assert!(var > 0.0);
        for r in 2..=10 {
            assert_eq!(table.beta(r, r), var);
        }
    }

    #[test]
    fn skip_optimization_is_bit_exact() {
        let configs: Vec<(Box<dyn Game>, u32)> = vec![
            (Box::new(MstGame::new(12).unwrap()), 1),
            (Box::new(SquareGame::new(11)), 5),
            (Box::new(AirportGame::new(vec![1, 2, 2, 3, 5, 5, 7, 8, 8, 10]).unwrap()), 10),
            (make_game(GameId::Pair, Some(12)).unwrap(), 3),
        ];
        for (game, player) in configs {
            let mut rng = rng::stream(12345);
            let sample = draw_sample(game.as_ref(), player, 150, &mut rng);
            let (fast, _) = table_from_sample(game.as_ref(), player, &sample);
            let naive = covariance_table_naive(game.as_ref(), player, &sample);
            for (a, b) in fast.beta.iter().zip(&naive.beta) {
                assert_eq!(a.to_bits(), b.to_bits(), "covariances diverge");
            }
        }
    }

    #[test]
    fn about_a_third_of_triples_need_reevaluation() {
        let game = SquareGame::new(100);
        let mut rng = rng::stream(8);
        let (_, stats) = covariance_table_impl(&game, 1, 2_000, &mut rng).unwrap();
        let fraction = stats.reevaluations as f64 / stats.triples as f64;
        assert!(
            (fraction - 1.0 / 3.0).abs() < 0.02,
            "straddling fraction {fraction} not near 1/3"
        );
    }

    #[test]
    fn unique_minimum_is_picked_first() {
        let table = table_from_fixed(&[(1, 2, -5.0)], 4, 1.0);
        let result = greedy_min_matching(&table);
        assert_eq!(result.edges[0], (1, 2));
    }

    #[test]
    fn all_equal_weights_yield_identity() {
        let table = table_from_fixed(&[], 5, 0.25);
        let result = greedy_min_matching(&table);
        assert_eq!(result.involution, PositionPermutation::identity(5));
        assert_eq!(result.edges, vec![(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)]);
    }

    #[test]
    fn loop_avoid_switch_pairs_instead() {
        let table = table_from_fixed(&[], 4, 0.25);
        let result = greedy_min_matching_with(&table, LoopTie::Avoid);
        assert!(result.edges.iter().all(|&(a, b)| a != b));
        assert!(result.involution.is_involution());
    }

    #[test]
    fn greedy_output_is_always_an_involution() {
        let mut rng = rng::stream(99);
        use rand::Rng;
        for n in [1usize, 2, 5, 9] {
            let beta: Vec<f64> =
                (0..n * (n + 1) / 2).map(|_| rng.random_range(-1.0..1.0)).collect();
            let table = CovarianceTable { n, beta };
            let result = greedy_min_matching(&table);
            assert!(result.involution.is_involution());
            let covered: usize =
                result.edges.iter().map(|&(a, b)| if a == b { 1 } else { 2 }).sum();
            assert_eq!(covered, n);
        }
    }

    #[test]
    fn greedy_is_deterministic() {
        let game = MstGame::new(20).unwrap();
        let table = covariance_table(&game, 1, 300, &mut rng::stream(4)).unwrap();
        assert_eq!(greedy_min_matching(&table), greedy_min_matching(&table));
    }

    #[test]
    fn pair_game_full_enumeration_learns_a_parity_matching() {
        // Feeding all 24 orders of the 4-player pair game gives exact table
        // entries; covariances of odd-even swaps sit strictly below the
        // variance ties, so the greedy must pick a perfect odd-even pairing
        // and the learned transform anti-correlates the streams exactly.
        let game = PairGame::new(4);
        let mut arrangements = Vec::new();
        let mut xs = Vec::new();
        let mut ks = Vec::new();
        let perms = [
            [1u32, 2, 3, 4], [1, 2, 4, 3], [1, 3, 2, 4], [1, 3, 4, 2], [1, 4, 2, 3], [1, 4, 3, 2],
            [2, 1, 3, 4], [2, 1, 4, 3], [2, 3, 1, 4], [2, 3, 4, 1], [2, 4, 1, 3], [2, 4, 3, 1],
            [3, 1, 2, 4], [3, 1, 4, 2], [3, 2, 1, 4], [3, 2, 4, 1], [3, 4, 1, 2], [3, 4, 2, 1],
            [4, 1, 2, 3], [4, 1, 3, 2], [4, 2, 1, 3], [4, 2, 3, 1], [4, 3, 1, 2], [4, 3, 2, 1],
        ];
        let mut tracker = game.tracker();
        for arr in perms {
            arrangements.extend_from_slice(&arr);
            let k = arr.iter().position(|&p| p == 1).unwrap() + 1;
            ks.push(k as u32);
            xs.push(marginal_on_arrangement(tracker.as_mut(), &arr, 1));
        }
        let sample = LearningSample { m1: 24, n: 4, arrangements, xs: xs.clone(), ks };
        let (table, _) = table_from_sample(&game, 1, &sample);

        // Exact values over the full population (divisor 23): odd-even
        // cells at zero, every same-parity and loop cell at the variance.
        let var = table.beta(1, 1);
        assert!((var - 24.0 / 23.0 * 0.25).abs() < 1e-12);
        for (r, s) in [(1, 2), (1, 4), (2, 3), (3, 4)] {
            assert!(table.beta(r, s).abs() < 1e-12, "odd-even cell ({r},{s})");
        }
        for (r, s) in [(1, 3), (2, 4)] {
            assert!((table.beta(r, s) - var).abs() < 1e-12, "same-parity cell ({r},{s})");
        }

        let result = greedy_min_matching(&table);
        assert_eq!(result.edges, vec![(1, 2), (3, 4)]);

        // The induced pairing flips the parity of the player's position in
        // every order: perfect anti-correlation.
        let map = result.involution.map();
        let mut tracker = game.tracker();
        let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for (j, arr) in perms.iter().enumerate() {
            let mut transformed = [0u32; 4];
            for p in 0..4 {
                transformed[map[p] as usize - 1] = arr[p];
            }
            let y = marginal_on_arrangement(tracker.as_mut(), &transformed, 1);
            let x = xs[j];
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
        }
        let rho = crate::estimate::pearson(24, sx, sy, sxx, syy, sxy).unwrap();
        assert!((rho + 1.0).abs() < 1e-12);
    }

    #[test]
    fn straddle_conditional_covariance_matches_enumeration() {
        // Restricted to the orders where the (1, 2) swap straddles the
        // player (its position is 1 or 2), the pair game's swapped stream is
        // exactly the complement of the original: covariance -1/4.
        let game = PairGame::new(4);
        let mut tracker = game.tracker();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let perms = [
            [1u32, 2, 3, 4], [1, 2, 4, 3], [1, 3, 2, 4], [1, 3, 4, 2], [1, 4, 2, 3], [1, 4, 3, 2],
            [2, 1, 3, 4], [2, 1, 4, 3], [3, 1, 2, 4], [3, 1, 4, 2], [4, 1, 2, 3], [4, 1, 3, 2],
        ];
        for arr in perms {
            let x = marginal_on_arrangement(tracker.as_mut(), &arr, 1);
            let mut swapped = arr;
            swapped.swap(0, 1);
            let y = marginal_on_arrangement(tracker.as_mut(), &swapped, 1);
            xs.push(x);
            ys.push(y);
        }
        let m = xs.len() as f64;
        let mean_x = xs.iter().sum::<f64>() / m;
        let mean_y = ys.iter().sum::<f64>() / m;
        let cov = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (x - mean_x) * (y - mean_y))
            .sum::<f64>()
            / m;
        assert!((cov + 0.25).abs() < 1e-12, "conditional covariance {cov}");
    }

    #[test]
    fn learn_rejects_tiny_samples() {
        let game = SquareGame::new(6);
        assert!(learn_transformation(&game, 1, 1, &mut rng::stream(0)).is_err());
        assert!(covariance_table(&game, 1, 0, &mut rng::stream(0)).is_err());
    }

    #[test]
    fn tiny_learning_sample_duplicates_the_stream() {
        // With m1 = 2 the table is noise: the learned transform moves at
        // most a couple of positions, so fresh paired draws nearly duplicate
        // each other and the measured correlation sits close to +1.
        let game = SquareGame::new(100);
        let mut total = 0.0;
        for seed in 0..10 {
            let result =
                learn_transformation(&game, 1, 2, &mut rng::stream(seed)).unwrap();
            total += result.rho_hat_learning.unwrap_or(1.0);
        }
        assert!(total / 10.0 > 0.8, "mean learned correlation {}", total / 10.0);
    }

    #[test]
    fn json_round_trip_preserves_the_matching() {
        let game = MstGame::new(16).unwrap();
        let mut result = learn_transformation(&game, 1, 200, &mut rng::stream(6)).unwrap();
        result.seed = Some(6);
        let json = result.to_json().unwrap();
        let back = MatchingResult::from_json(&json).unwrap();
        assert_eq!(back, result);
    }

    #[test]
    fn rejects_overlapping_edges() {
        assert!(involution_from_edges(4, &[(1, 2), (2, 3)]).is_err());
        assert!(involution_from_edges(4, &[(0, 1)]).is_err());
        assert!(involution_from_edges(4, &[(1, 5)]).is_err());
    }
}
