//! The shoes game: left-shoe holders must pair with right-shoe holders.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{Game, WorthTracker};

/// Players `1..=n/2` hold left shoes, the rest right shoes; a coalition is
/// worth the number of complete pairs it can form.
#[derive(Debug, Clone)]
pub struct ShoesGame {
    n: usize,
    half: u32,
}

impl ShoesGame {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::UnsupportedScale {
                id: "shoes".into(),
                scale: n,
                reason: "needs an even number of players".into(),
            });
        }
        Ok(ShoesGame { n, half: (n / 2) as u32 })
    }

    pub fn is_left(&self, player: u32) -> bool {
        player <= self.half
    }
}

impl Game for ShoesGame {
    fn player_count(&self) -> usize {
        self.n
    }

    fn value(&self, coalition: &Coalition) -> f64 {
        let left = coalition.iter().filter(|&p| p <= self.half).count();
        let right = coalition.len() - left;
        left.min(right) as f64
    }

    fn tracker(&self) -> Box<dyn WorthTracker + '_> {
        Box::new(ShoesTracker { half: self.half, left: 0, right: 0 })
    }
}

struct ShoesTracker {
    half: u32,
    left: u32,
    right: u32,
}

impl WorthTracker for ShoesTracker {
    fn clear(&mut self) {
        self.left = 0;
        self.right = 0;
    }

    fn add(&mut self, player: u32) {
        if player <= self.half {
            self.left += 1;
        } else {
            self.right += 1;
        }
    }

    fn remove(&mut self, player: u32) {
        if player <= self.half {
            self.left -= 1;
        } else {
            self.right -= 1;
        }
    }

    fn worth(&self) -> f64 {
        self.left.min(self.right) as f64
    }
}
