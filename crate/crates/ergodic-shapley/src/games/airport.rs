//! The airport game: a coalition pays for the longest runway it needs.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{Game, WorthTracker};

/// Each player needs a runway of length `costs[i]`; a coalition's worth is
/// the largest cost among its members.
#[derive(Debug, Clone)]
pub struct AirportGame {
    costs: Vec<u32>,
    max_cost: u32,
}

impl AirportGame {
    pub fn new(costs: Vec<u32>) -> Result<Self> {
        if costs.is_empty() {
            return Err(Error::InvalidConfig("airport game needs at least one player".into()));
        }
        let max_cost = *costs.iter().max().expect("non-empty");
        Ok(AirportGame { costs, max_cost })
    }

    pub fn costs(&self) -> &[u32] {
        &self.costs
    }

    /// Closed-form Shapley value: each cost increment is shared equally by
    /// the players that need at least that much runway.
    pub fn exact_shapley(&self, player: u32) -> Result<f64> {
        let n = self.costs.len();
        if player == 0 || player as usize > n {
            return Err(Error::PlayerOutOfRange { player, n });
        }
        let own = self.costs[player as usize - 1];
        let mut levels: Vec<u32> = self.costs.clone();
        levels.sort_unstable();
        levels.dedup();

        let mut share = 0.0;
        let mut previous = 0u32;
        for &level in &levels {
            if level > own {
                break;
            }
            let needing = self.costs.iter().filter(|&&c| c >= level).count();
            share += (level - previous) as f64 / needing as f64;
            previous = level;
        }
        Ok(share)
    }
}

impl Game for AirportGame {
    fn player_count(&self) -> usize {
        self.costs.len()
    }

    fn value(&self, coalition: &Coalition) -> f64 {
        coalition
            .iter()
            .map(|p| self.costs[p as usize - 1])
            .max()
            .unwrap_or(0) as f64
    }

    fn tracker(&self) -> Box<dyn WorthTracker + '_> {
        Box::new(AirportTracker {
            costs: &self.costs,
            level_counts: vec![0; self.max_cost as usize + 1],
        })
    }
}

struct AirportTracker<'g> {
    costs: &'g [u32],
    /// `level_counts[c]` members with cost exactly `c`.
    level_counts: Vec<u32>,
}

impl WorthTracker for AirportTracker<'_> {
    fn clear(&mut self) {
        self.level_counts.fill(0);
    }

    fn add(&mut self, player: u32) {
        self.level_counts[self.costs[player as usize - 1] as usize] += 1;
    }

    fn remove(&mut self, player: u32) {
        self.level_counts[self.costs[player as usize - 1] as usize] -= 1;
    }

    fn worth(&self) -> f64 {
        for c in (1..self.level_counts.len()).rev() {
            if self.level_counts[c] > 0 {
                return c as f64;
            }
        }
        0.0
    }
}
