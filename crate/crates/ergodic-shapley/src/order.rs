//! Arrival orders of players and permutations acting on positions.
//!
//! An order assigns each player a position in `1..=n`; a position permutation
//! rearranges positions and induces a transformation on orders by
//! post-composition. Involutions (permutations that are their own inverse)
//! describe pairings of positions and drive the paired sampling scheme.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A bijection from players to positions `1..=n` (one arrival order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerOrder {
    /// `positions[i - 1]` is the position of player `i`, 1-based.
    positions: Vec<u32>,
}

impl PlayerOrder {
    /// Build from the player -> position map, validating bijectivity.
    pub fn from_positions(positions: Vec<u32>) -> Result<Self> {
        validate_bijection(&positions, "player order")?;
        Ok(PlayerOrder { positions })
    }

    /// Build from the position -> player map (`arrangement[p - 1]` is the
    /// player at position `p`).
    pub fn from_arrangement(arrangement: &[u32]) -> Result<Self> {
        validate_bijection(arrangement, "arrangement")?;
        let mut positions = vec![0u32; arrangement.len()];
        for (idx, &player) in arrangement.iter().enumerate() {
            positions[player as usize - 1] = idx as u32 + 1;
        }
        Ok(PlayerOrder { positions })
    }

    pub fn player_count(&self) -> usize {
        self.positions.len()
    }

    /// Position of `player`, 1-based.
    pub fn position_of(&self, player: u32) -> Result<u32> {
        self.positions
            .get(player as usize - 1)
            .copied()
            .ok_or(Error::PlayerOutOfRange { player, n: self.positions.len() })
    }

    /// The position -> player view of this order.
    pub fn arrangement(&self) -> Vec<u32> {
        let mut arr = vec![0u32; self.positions.len()];
        for (idx, &pos) in self.positions.iter().enumerate() {
            arr[pos as usize - 1] = idx as u32 + 1;
        }
        arr
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }
}

/// A bijection on positions `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionPermutation {
    /// `map[p - 1]` is the image of position `p`, 1-based.
    map: Vec<u32>,
}

impl PositionPermutation {
    pub fn from_map(map: Vec<u32>) -> Result<Self> {
        validate_bijection(&map, "position permutation")?;
        Ok(PositionPermutation { map })
    }

    pub fn identity(n: usize) -> Self {
        PositionPermutation { map: (1..=n as u32).collect() }
    }

    /// The transposition swapping positions `a` and `b` (`a == b` yields the
    /// identity); always an involution.
    pub fn transposition(a: u32, b: u32, n: usize) -> Result<Self> {
        for pos in [a, b] {
            if pos == 0 || pos as usize > n {
                return Err(Error::PositionOutOfRange { position: pos, n });
            }
        }
        let mut map: Vec<u32> = (1..=n as u32).collect();
        map.swap(a as usize - 1, b as usize - 1);
        Ok(PositionPermutation { map })
    }

    /// Rotation by `shift`: position `p` maps to `((p - 1 + shift) mod n) + 1`.
    pub fn cyclic_shift(shift: u32, n: usize) -> Result<Self> {
        if shift as usize >= n {
            return Err(Error::ShiftOutOfRange { shift, n });
        }
        let map = (0..n as u32).map(|p| (p + shift) % n as u32 + 1).collect();
        Ok(PositionPermutation { map })
    }

    /// The order-reversing involution `p -> n + 1 - p`.
    pub fn reversal(n: usize) -> Self {
        PositionPermutation { map: (1..=n as u32).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Image of position `p`.
    pub fn image_of(&self, position: u32) -> Result<u32> {
        self.map
            .get(position as usize - 1)
            .copied()
            .ok_or(Error::PositionOutOfRange { position, n: self.map.len() })
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn is_involution(&self) -> bool {
        self.map
            .iter()
            .enumerate()
            .all(|(p, &q)| self.map[q as usize - 1] == p as u32 + 1)
    }
}

fn validate_bijection(map: &[u32], what: &'static str) -> Result<()> {
    let n = map.len();
    let mut seen = vec![false; n];
    for &v in map {
        if v == 0 || v as usize > n || seen[v as usize - 1] {
            return Err(Error::NotABijection { what, n });
        }
        seen[v as usize - 1] = true;
    }
    Ok(())
}

/// Apply a position permutation to an order: the result sends player `i` to
/// `perm(order(i))`.
pub fn apply_transformation(
    perm: &PositionPermutation,
    order: &PlayerOrder,
) -> Result<PlayerOrder> {
    if perm.len() != order.player_count() {
        return Err(Error::SizeMismatch { expected: order.player_count(), got: perm.len() });
    }
    let positions = order
        .positions
        .iter()
        .map(|&p| perm.map[p as usize - 1])
        .collect();
    // The composition of two bijections is a bijection.
    Ok(PlayerOrder { positions })
}

/// Draw an order uniformly at random (Fisher-Yates shuffle).
pub fn random_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PlayerOrder {
    let mut arrangement: Vec<u32> = (1..=n as u32).collect();
    arrangement.shuffle(rng);
    PlayerOrder::from_arrangement(&arrangement).expect("shuffle preserves bijectivity")
}

/// Shuffle an arrangement buffer in place; hot-path variant of
/// [`random_order`] that avoids allocation. The buffer must already hold a
/// permutation of `1..=n`.
pub(crate) fn shuffle_arrangement<R: Rng + ?Sized>(arrangement: &mut [u32], rng: &mut R) {
    arrangement.shuffle(rng);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn identity_leaves_orders_unchanged() {
        let order = PlayerOrder::from_positions(vec![2, 3, 1]).unwrap();
        let id = PositionPermutation::identity(3);
        assert_eq!(apply_transformation(&id, &order).unwrap(), order);
    }

    #[test]
    fn transposition_swaps_two_players() {
        // Players A=1 at position 1, B=2 at position 2, C=3 at position 3.
        let order = PlayerOrder::from_positions(vec![1, 2, 3]).unwrap();
        let t = PositionPermutation::transposition(1, 2, 3).unwrap();
        let swapped = apply_transformation(&t, &order).unwrap();
        assert_eq!(swapped.positions(), &[2, 1, 3]);
    }

    #[test]
    fn transposition_is_involution() {
        let t = PositionPermutation::transposition(2, 5, 6).unwrap();
        assert!(t.is_involution());
        let order = random_order(6, &mut rng::stream(3));
        let twice =
            apply_transformation(&t, &apply_transformation(&t, &order).unwrap()).unwrap();
        assert_eq!(twice, order);
    }

    #[test]
    fn degenerate_transposition_is_identity() {
        let t = PositionPermutation::transposition(3, 3, 4).unwrap();
        assert_eq!(t, PositionPermutation::identity(4));
    }

    #[test]
    fn two_element_transposition_map() {
        let t = PositionPermutation::transposition(1, 2, 2).unwrap();
        assert_eq!(t.map(), &[2, 1]);
    }

    #[test]
    fn transposition_rejects_out_of_range() {
        assert!(PositionPermutation::transposition(0, 2, 4).is_err());
        assert!(PositionPermutation::transposition(1, 5, 4).is_err());
    }

    #[test]
    fn cyclic_shift_basics() {
        assert_eq!(
            PositionPermutation::cyclic_shift(0, 5).unwrap(),
            PositionPermutation::identity(5)
        );
        assert_eq!(PositionPermutation::cyclic_shift(1, 3).unwrap().map(), &[2, 3, 1]);
        assert!(PositionPermutation::cyclic_shift(3, 3).is_err());
    }

    #[test]
    fn shift_17_of_51_has_period_three() {
        let t = PositionPermutation::cyclic_shift(17, 51).unwrap();
        let order = random_order(51, &mut rng::stream(11));
        let mut o = order.clone();
        for _ in 0..3 {
            o = apply_transformation(&t, &o).unwrap();
        }
        assert_eq!(o, order);
        // One or two applications do not return to the start.
        let once = apply_transformation(&t, &order).unwrap();
        assert_ne!(once, order);
    }

    #[test]
    fn shift_17_matches_piecewise_rule() {
        // Positions <= 34 move up by 17, the rest wrap down by 34.
        let t = PositionPermutation::cyclic_shift(17, 51).unwrap();
        for p in 1..=51u32 {
            let expected = if p <= 34 { p + 17 } else { p - 34 };
            assert_eq!(t.image_of(p).unwrap(), expected);
        }
    }

    #[test]
    fn reversal_is_involution() {
        let r = PositionPermutation::reversal(100);
        assert!(r.is_involution());
        assert_eq!(r.image_of(1).unwrap(), 100);
        assert_eq!(r.image_of(40).unwrap(), 61);
    }

    #[test]
    fn random_order_single_player() {
        let o = random_order(1, &mut rng::stream(0));
        assert_eq!(o.positions(), &[1]);
    }

    #[test]
    fn random_order_is_deterministic() {
        let a: Vec<PlayerOrder> = {
            let mut r = rng::stream(99);
            (0..20).map(|_| random_order(10, &mut r)).collect()
        };
        let b: Vec<PlayerOrder> = {
            let mut r = rng::stream(99);
            (0..20).map(|_| random_order(10, &mut r)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn random_order_uniform_chi_squared() {
        // 60_000 draws over the 6 orders of n=3; chi-squared, 5 degrees of
        // freedom, critical value 20.515 at significance 0.001.
        let mut rng = rng::stream(2024);
        let mut counts = [0u64; 6];
        let draws = 60_000;
        for _ in 0..draws {
            let o = random_order(3, &mut rng);
            let a = o.arrangement();
            let idx = match (a[0], a[1]) {
                (1, 2) => 0,
                (1, 3) => 1,
                (2, 1) => 2,
                (2, 3) => 3,
                (3, 1) => 4,
                (3, 2) => 5,
                _ => unreachable!(),
            };
            counts[idx] += 1;
        }
        let expected = draws as f64 / 6.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 20.515, "chi-squared {chi2} exceeds critical value");
    }

    #[test]
    fn arrangement_round_trip() {
        let order = random_order(12, &mut rng::stream(5));
        let back = PlayerOrder::from_arrangement(&order.arrangement()).unwrap();
        assert_eq!(back, order);
    }

    #[test]
    fn apply_rejects_size_mismatch() {
        let order = random_order(5, &mut rng::stream(1));
        let perm = PositionPermutation::identity(6);
        assert!(apply_transformation(&perm, &order).is_err());
    }
}
