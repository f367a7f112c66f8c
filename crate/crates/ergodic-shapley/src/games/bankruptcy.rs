//! The bankruptcy game: dividing an estate among claimants.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{Game, WorthTracker};

/// A coalition's worth is what remains of the estate after every outside
/// claimant is paid in full: `v(S) = max(0, estate - sum of outside
/// liabilities)`, equivalently `max(0, inside liabilities - (total -
/// estate))`.
#[derive(Debug, Clone)]
pub struct BankruptcyGame {
    estate: u64,
    liabilities: Vec<u32>,
    total: u64,
}

impl BankruptcyGame {
    pub fn new(estate: u64, liabilities: Vec<u32>) -> Result<Self> {
        if liabilities.is_empty() {
            return Err(Error::InvalidConfig("bankruptcy game needs at least one claimant".into()));
        }
        let total: u64 = liabilities.iter().map(|&l| l as u64).sum();
        if estate > total {
            return Err(Error::InvalidConfig(format!(
                "estate {estate} exceeds total liability {total}; the game would not be zero-normalized"
            )));
        }
        Ok(BankruptcyGame { estate, liabilities, total })
    }

    pub fn estate(&self) -> u64 {
        self.estate
    }

    pub fn liabilities(&self) -> &[u32] {
        &self.liabilities
    }

    fn worth_of_sum(&self, inside: u64) -> f64 {
        (inside + self.estate).saturating_sub(self.total) as f64
    }
}

impl Game for BankruptcyGame {
    fn player_count(&self) -> usize {
        self.liabilities.len()
    }

    fn value(&self, coalition: &Coalition) -> f64 {
        let inside: u64 = coalition.iter().map(|p| self.liabilities[p as usize - 1] as u64).sum();
        self.worth_of_sum(inside)
    }

    fn tracker(&self) -> Box<dyn WorthTracker + '_> {
        Box::new(BankruptcyTracker { game: self, inside: 0 })
    }
}

struct BankruptcyTracker<'g> {
    game: &'g BankruptcyGame,
    inside: u64,
}

impl WorthTracker for BankruptcyTracker<'_> {
    fn clear(&mut self) {
        self.inside = 0;
    }

    fn add(&mut self, player: u32) {
        self.inside += self.game.liabilities[player as usize - 1] as u64;
    }

    fn remove(&mut self, player: u32) {
        self.inside -= self.game.liabilities[player as usize - 1] as u64;
    }

    fn worth(&self) -> f64 {
        self.game.worth_of_sum(self.inside)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worth_formula() {
        // Estate 10, claims (4, 5, 6): total 15, shortfall threshold 5.
        let game = BankruptcyGame::new(10, vec![4, 5, 6]).unwrap();
        assert_eq!(game.value(&Coalition::grand(3)), 10.0);
        assert_eq!(game.value(&Coalition::from_members(3, [1]).unwrap()), 0.0);
        assert_eq!(game.value(&Coalition::from_members(3, [2, 3]).unwrap()), 6.0);
        assert_eq!(game.value(&Coalition::empty(3)), 0.0);
    }

    #[test]
    fn tracker_matches_value() {
        let game = BankruptcyGame::new(10, vec![4, 5, 6]).unwrap();
        let mut t = game.tracker();
        let mut c = Coalition::empty(3);
        for p in [3u32, 1] {
            t.add(p);
            c.insert(p).unwrap();
            assert_eq!(t.worth(), game.value(&c));
        }
        t.remove(3);
        c.remove(3);
        assert_eq!(t.worth(), game.value(&c));
    }

    #[test]
    fn rejects_overfunded_estate() {
        assert!(BankruptcyGame::new(100, vec![1, 2]).is_err());
    }
}
