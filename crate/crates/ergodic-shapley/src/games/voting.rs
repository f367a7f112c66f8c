//! Weighted voting games.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{Game, WorthTracker};

/// A weighted voting game: a coalition wins (worth 1) when its weight sum
/// strictly exceeds the quota; ties lose.
///
/// Weights are integers so the running weight sum stays exact under any
/// add/remove sequence. Instances with rational weights scale to this form
/// without changing the game.
#[derive(Debug, Clone)]
pub struct VotingGame {
    weights: Vec<u32>,
    quota: f64,
}

impl VotingGame {
    pub fn new(weights: Vec<u32>, quota: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidConfig("voting game needs at least one player".into()));
        }
        if !quota.is_finite() {
            return Err(Error::InvalidConfig("voting quota must be finite".into()));
        }
        Ok(VotingGame { weights, quota })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn quota(&self) -> f64 {
        self.quota
    }

    fn wins(&self, weight_sum: u64) -> f64 {
        (weight_sum as f64 > self.quota) as u32 as f64
    }
}

impl Game for VotingGame {
    fn player_count(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, coalition: &Coalition) -> f64 {
        let sum: u64 = coalition.iter().map(|p| self.weights[p as usize - 1] as u64).sum();
        self.wins(sum)
    }

    fn tracker(&self) -> Box<dyn WorthTracker + '_> {
        Box::new(VotingTracker { game: self, sum: 0 })
    }
}

struct VotingTracker<'g> {
    game: &'g VotingGame,
    sum: u64,
}

impl WorthTracker for VotingTracker<'_> {
    fn clear(&mut self) {
        self.sum = 0;
    }

    fn add(&mut self, player: u32) {
        self.sum += self.game.weights[player as usize - 1] as u64;
    }

    fn remove(&mut self, player: u32) {
        self.sum -= self.game.weights[player as usize - 1] as u64;
    }

    fn worth(&self) -> f64 {
        self.game.wins(self.sum)
    }
}
