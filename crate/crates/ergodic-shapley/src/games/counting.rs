//! Games whose worth depends only on coalition size.

use crate::coalition::Coalition;
use crate::game::{Game, WorthTracker};

/// `v(S) = |S|^2`; marginal contributions are the odd numbers `2k - 1`.
#[derive(Debug, Clone)]
pub struct SquareGame {
    n: usize,
}

impl SquareGame {
    pub fn new(n: usize) -> Self {
        SquareGame { n }
    }
}

impl Game for SquareGame {
    fn player_count(&self) -> usize {
        self.n
    }

    fn value(&self, coalition: &Coalition) -> f64 {
        let s = coalition.len() as f64;
        s * s
    }

    fn tracker(&self) -> Box<dyn WorthTracker + '_> {
        Box::new(CountTracker { count: 0, worth: |c| (c * c) as f64 })
    }
}

/// `v(S) = floor(|S| / 2)`; a player contributes 1 exactly at even positions.
#[derive(Debug, Clone)]
pub struct PairGame {
    n: usize,
}

impl PairGame {
    pub fn new(n: usize) -> Self {
        PairGame { n }
    }
}

impl Game for PairGame {
    fn player_count(&self) -> usize {
        self.n
    }

    fn value(&self, coalition: &Coalition) -> f64 {
        (coalition.len() / 2) as f64
    }

    fn tracker(&self) -> Box<dyn WorthTracker + '_> {
        Box::new(CountTracker { count: 0, worth: |c| (c / 2) as f64 })
    }
}

struct CountTracker {
    count: usize,
    worth: fn(usize) -> f64,
}

impl WorthTracker for CountTracker {
    fn clear(&mut self) {
        self.count = 0;
    }

    fn add(&mut self, _player: u32) {
        self.count += 1;
    }

    fn remove(&mut self, _player: u32) {
        self.count -= 1;
    }

    fn worth(&self) -> f64 {
        (self.worth)(self.count)
    }
}
