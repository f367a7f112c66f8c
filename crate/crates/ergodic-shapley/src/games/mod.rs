//! The built-in benchmark games and their exact Shapley values where known.
//!
//! Eight games cover the spectrum the estimators are measured on: two
//! weighted voting games, the shoes (matching-pairs) market, an airport
//! cost-sharing game, a minimum-spanning-tree game on a cycle-plus-hub
//! graph, a bankruptcy game, and two purely cardinality-based games. Each is
//! immutable after construction and safe to evaluate from many threads.

mod airport;
mod bankruptcy;
mod counting;
mod mst;
mod shoes;
mod voting;

use std::fmt;
use std::str::FromStr;

pub use airport::AirportGame;
pub use bankruptcy::BankruptcyGame;
pub use counting::{PairGame, SquareGame};
pub use mst::MstGame;
pub use shoes::ShoesGame;
pub use voting::VotingGame;

use crate::error::{Error, Result};
use crate::game::Game;

/// Stable identifiers for the built-in games; these are the strings the CLI
/// accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameId {
    /// Weighted voting with the fixed 51-member weight profile.
    VotingNs,
    /// Symmetric voting: 100 equal weights, majority quota.
    VotingSym,
    Shoes,
    Airport,
    Mst,
    Bankruptcy,
    Square,
    Pair,
}

impl GameId {
    pub const ALL: [GameId; 8] = [
        GameId::VotingNs,
        GameId::VotingSym,
        GameId::Shoes,
        GameId::Airport,
        GameId::Mst,
        GameId::Bankruptcy,
        GameId::Square,
        GameId::Pair,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GameId::VotingNs => "voting-ns",
            GameId::VotingSym => "voting-sym",
            GameId::Shoes => "shoes",
            GameId::Airport => "airport",
            GameId::Mst => "mst",
            GameId::Bankruptcy => "bankruptcy",
            GameId::Square => "square",
            GameId::Pair => "pair",
        }
    }

    /// Player count of the full-scale instance.
    pub fn default_scale(self) -> usize {
        match self {
            GameId::VotingNs => 51,
            _ => 100,
        }
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GameId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GameId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownGame(s.to_string()))
    }
}

/// The non-symmetric voting weights: 51 entries summing to 538.
pub const VOTING_NS_WEIGHTS: [u32; 51] = [
    45, 41, 27, 26, 26, 25, 21, 17, 17, 14, 13, 13, 12, 12, 12, 11, //
    10, 10, 10, 10, 9, 9, 9, 9, 8, 8, 7, 7, 7, 7, 6, 6, 6, 6, 5, //
    4, 4, 4, 4, 4, 4, 4, 4, 4, 3, 3, 3, 3, 3, 3, 3,
];

/// Airport landing costs: the multiset has 8 ones, 12 twos, 6 threes, 14
/// fours, 8 fives, 9 sixes, 13 sevens, 10 eights, 10 nines and 10 tens.
pub fn airport_costs(n: usize) -> Vec<u32> {
    const COUNTS: [usize; 10] = [8, 12, 6, 14, 8, 9, 13, 10, 10, 10];
    let full: Vec<u32> = COUNTS
        .iter()
        .enumerate()
        .flat_map(|(i, &count)| std::iter::repeat_n(i as u32 + 1, count))
        .collect();
    full.into_iter().take(n).collect()
}

/// Construct a built-in game, optionally at a reduced player count for
/// enumeration-based testing.
///
/// Reduced-scale rules: the cardinality games, shoes and mst shrink
/// structurally (shoes needs an even n; mst keeps hub weight n+1); the
/// symmetric voting game keeps equal weights with a majority quota; airport
/// and bankruptcy truncate their cost/liability vectors to the first n
/// entries, with the bankruptcy estate rescaled to half the total liability,
/// rounded. The non-symmetric voting game exists only at its fixed n = 51.
pub fn make_game(id: GameId, scale: Option<usize>) -> Result<Box<dyn Game>> {
    let n = scale.unwrap_or_else(|| id.default_scale());
    if n == 0 {
        return Err(Error::UnsupportedScale {
            id: id.to_string(),
            scale: n,
            reason: "need at least one player".into(),
        });
    }
    let game: Box<dyn Game> = match id {
        GameId::VotingNs => {
            if n != 51 {
                return Err(Error::UnsupportedScale {
                    id: id.to_string(),
                    scale: n,
                    reason: "the weight profile is fixed at 51 players".into(),
                });
            }
            let weights = VOTING_NS_WEIGHTS.to_vec();
            let quota = weights.iter().map(|&w| w as u64).sum::<u64>() as f64 / 2.0;
            Box::new(VotingGame::new(weights, quota)?)
        }
        GameId::VotingSym => {
            // Equal weights 1/n with quota 1/2, scaled by n so coalition
            // sums stay integral: weights 1, quota n/2.
            Box::new(VotingGame::new(vec![1; n], n as f64 / 2.0)?)
        }
        GameId::Shoes => Box::new(ShoesGame::new(n)?),
        GameId::Airport => Box::new(AirportGame::new(airport_costs(n))?),
        GameId::Mst => Box::new(MstGame::new(n)?),
        GameId::Bankruptcy => {
            let liabilities = airport_costs(n);
            let total: u64 = liabilities.iter().map(|&l| l as u64).sum();
            let estate = if n == 100 { 200 } else { total.div_ceil(2) };
            Box::new(BankruptcyGame::new(estate, liabilities)?)
        }
        GameId::Square => Box::new(SquareGame::new(n)),
        GameId::Pair => Box::new(PairGame::new(n)),
    };
    Ok(game)
}

/// Exact Shapley value of `player` in the full-scale instance, where known:
/// the symmetric games by symmetry and efficiency, airport by the standard
/// cost-sharing formula. `None` for the non-symmetric voting and bankruptcy
/// games.
pub fn exact_shapley(id: GameId, player: u32) -> Result<Option<f64>> {
    let n = id.default_scale();
    if player == 0 || player as usize > n {
        return Err(Error::PlayerOutOfRange { player, n });
    }
    let value = match id {
        GameId::VotingNs | GameId::Bankruptcy => None,
        GameId::VotingSym => Some(1.0 / n as f64),
        GameId::Shoes => Some(0.5),
        GameId::Mst => Some(2.0),
        GameId::Square => Some(n as f64),
        GameId::Pair => Some(0.5),
        GameId::Airport => {
            let game = AirportGame::new(airport_costs(n))?;
            Some(game.exact_shapley(player)?)
        }
    };
    Ok(value)
}
