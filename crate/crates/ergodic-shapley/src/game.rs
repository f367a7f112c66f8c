//! The characteristic-function game interface, marginal contributions, and
//! exact Shapley values by full enumeration on small games.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::order::PlayerOrder;

/// Largest player count accepted by [`brute_force_shapley`].
pub const BRUTE_FORCE_MAX_PLAYERS: usize = 10;

/// A cooperative game with transferable utility, given by the worth it
/// assigns to every coalition. Implementations must be deterministic and
/// assign worth 0 to the empty coalition.
pub trait Game: Send + Sync {
    fn player_count(&self) -> usize;

    /// Worth of a coalition. `coalition.player_count()` must equal
    /// `self.player_count()`.
    fn value(&self, coalition: &Coalition) -> f64;

    /// An incremental evaluator for this game. The default walks a plain
    /// coalition and re-evaluates `value` on every query; games override it
    /// with constant-time membership updates where the structure allows.
    fn tracker(&self) -> Box<dyn WorthTracker + '_> {
        Box::new(CoalitionTracker { coalition: Coalition::empty(self.player_count()), game: self })
    }
}

/// A mutable coalition whose worth is maintained incrementally while players
/// are added and removed one at a time. Used by the estimators, where a full
/// `value` evaluation per query would dominate the running time.
///
/// Callers must not add a player already present or remove an absent one.
pub trait WorthTracker {
    /// Reset to the empty coalition.
    fn clear(&mut self);
    fn add(&mut self, player: u32);
    fn remove(&mut self, player: u32);
    /// Worth of the current coalition.
    fn worth(&self) -> f64;
}

struct CoalitionTracker<'g, G: Game + ?Sized> {
    coalition: Coalition,
    game: &'g G,
}

impl<G: Game + ?Sized> WorthTracker for CoalitionTracker<'_, G> {
    fn clear(&mut self) {
        self.coalition = Coalition::empty(self.game.player_count());
    }

    fn add(&mut self, player: u32) {
        debug_assert!(!self.coalition.contains(player));
        self.coalition.insert(player).expect("player in range");
    }

    fn remove(&mut self, player: u32) {
        debug_assert!(self.coalition.contains(player));
        self.coalition.remove(player);
    }

    fn worth(&self) -> f64 {
        self.game.value(&self.coalition)
    }
}

/// The worth player `i` adds by joining the players that precede it in
/// `order`: `v(Pre(i) + i) - v(Pre(i))`.
pub fn marginal_contribution(game: &dyn Game, order: &PlayerOrder, player: u32) -> Result<f64> {
    let n = game.player_count();
    if player == 0 || player as usize > n {
        return Err(Error::PlayerOutOfRange { player, n });
    }
    if order.player_count() != n {
        return Err(Error::SizeMismatch { expected: n, got: order.player_count() });
    }
    let own = order.position_of(player)?;
    let mut before = Coalition::empty(n);
    for (idx, &pos) in order.positions().iter().enumerate() {
        if pos < own {
            before.insert(idx as u32 + 1)?;
        }
    }
    let without = game.value(&before);
    before.insert(player)?;
    let with = game.value(&before);
    Ok(with - without)
}

/// Marginal contribution along a raw arrangement (`arrangement[p-1]` is the
/// player at position `p`) using an incremental tracker. The tracker is left
/// in an unspecified state. Hot path shared by the estimators.
pub(crate) fn marginal_on_arrangement(
    tracker: &mut dyn WorthTracker,
    arrangement: &[u32],
    player: u32,
) -> f64 {
    tracker.clear();
    for &p in arrangement {
        if p == player {
            break;
        }
        tracker.add(p);
    }
    let without = tracker.worth();
    tracker.add(player);
    tracker.worth() - without
}

/// Exact Shapley value of `player`: the average marginal contribution over
/// all `n!` arrival orders, enumerated with Heap's algorithm. Refuses games
/// with more than [`BRUTE_FORCE_MAX_PLAYERS`] players.
pub fn brute_force_shapley(game: &dyn Game, player: u32) -> Result<f64> {
    let n = game.player_count();
    if n > BRUTE_FORCE_MAX_PLAYERS {
        return Err(Error::TooManyPlayers { n, max: BRUTE_FORCE_MAX_PLAYERS });
    }
    if player == 0 || player as usize > n {
        return Err(Error::PlayerOutOfRange { player, n });
    }

    let mut arrangement: Vec<u32> = (1..=n as u32).collect();
    let mut counters = vec![0usize; n];
    let mut total = 0.0;
    let mut orders = 0u64;

    let mut contribute = |arr: &[u32]| {
        let mut before = Coalition::empty(n);
        for &p in arr {
            if p == player {
                break;
            }
            before.insert(p).expect("player in range");
        }
        let without = game.value(&before);
        before.insert(player).expect("player in range");
        total += game.value(&before) - without;
    };

    contribute(&arrangement);
    orders += 1;
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                arrangement.swap(0, i);
            } else {
                arrangement.swap(counters[i], i);
            }
            contribute(&arrangement);
            orders += 1;
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }

    Ok(total / orders as f64)
}
