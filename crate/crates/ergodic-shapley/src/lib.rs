//! Monte-Carlo estimation of Shapley values by permutation sampling, with a
//! paired, negatively correlated sampling scheme that can cut the estimator's
//! standard deviation well below the independent-sampling baseline at the
//! same evaluation budget.
//!
//! The Shapley value of a player is the average of its marginal
//! contributions over all `n!` arrival orders. Sampling orders uniformly
//! gives the classic unbiased estimator; this crate additionally draws
//! orders in blocks, deriving each block from one random seed order through
//! a fixed position permutation. Block means stay independent and unbiased,
//! while the draws inside a block can be made strongly negatively
//! correlated, which shrinks the variance. A greedy learning phase
//! ([`matching`]) searches for the pairing of positions that minimizes the
//! sampled covariance and produces the involution driving the paired
//! estimator.
//!
//! # Layout
//!
//! - [`game`], [`coalition`], [`order`]: games, coalitions, arrival orders,
//!   position permutations, marginal contributions, exact values on small
//!   games.
//! - [`games`]: the eight built-in benchmark games.
//! - [`estimate`]: the three estimators (independent baseline, block
//!   sampling with an arbitrary transformation, learned paired sampling) and
//!   a replication harness.
//! - [`matching`]: the covariance-table learner and greedy minimum-weight
//!   matching.
//! - [`analysis`]: closed-form variance laws, improvement ratios, budget
//!   bounds, and reference joint distributions.
//! - [`cli`]: the command-line front end behind the `ergodic-shapley`
//!   binary.
//!
//! Every sampling routine takes an explicit random stream from [`rng`];
//! identical seeds give bit-identical results at any thread count. See the
//! `examples/` directory for one runnable walkthrough per capability.

pub mod analysis;
pub mod cli;
pub mod coalition;
pub mod error;
pub mod estimate;
pub mod game;
pub mod games;
pub mod matching;
pub mod order;
pub mod rng;

pub use coalition::Coalition;
pub use error::{Error, Result};
pub use estimate::{
    ergodic_estimate, optk2_estimate, paired_budget, replicate, simple_mc, EstimateReport,
    Method, ReplicationSummary, SeedPlan,
};
pub use game::{brute_force_shapley, marginal_contribution, Game, WorthTracker};
pub use games::{exact_shapley, make_game, GameId};
pub use matching::{
    covariance_table, greedy_min_matching, learn_transformation, CovarianceTable, MatchingResult,
};
pub use order::{apply_transformation, random_order, PlayerOrder, PositionPermutation};
