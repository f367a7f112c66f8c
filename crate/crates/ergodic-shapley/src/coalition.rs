//! Coalitions: subsets of the player set `{1..n}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A subset of the players `{1..n}`.
///
/// Players and positions are 1-based everywhere in the public API. Coalitions
/// over at most 128 players are stored as a bitset; larger player sets fall
/// back to an ordered index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalition {
    n: usize,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Bits(u128),
    Sparse(BTreeSet<u32>),
}

impl Coalition {
    /// The empty coalition over `n` players.
    pub fn empty(n: usize) -> Self {
        let repr = if n <= 128 {
            Repr::Bits(0)
        } else {
            Repr::Sparse(BTreeSet::new())
        };
        Coalition { n, repr }
    }

    /// The grand coalition `{1..n}`.
    pub fn grand(n: usize) -> Self {
        let mut c = Coalition::empty(n);
        for p in 1..=n as u32 {
            c.insert_unchecked(p);
        }
        c
    }

    /// Build a coalition from member indices, validating range and duplicates.
    pub fn from_members<I: IntoIterator<Item = u32>>(n: usize, members: I) -> Result<Self> {
        let mut c = Coalition::empty(n);
        for p in members {
            if p == 0 || p as usize > n {
                return Err(Error::PlayerOutOfRange { player: p, n });
            }
            c.insert_unchecked(p);
        }
        Ok(c)
    }

    /// Number of players the coalition is drawn from.
    pub fn player_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Bits(b) => b.count_ones() as usize,
            Repr::Sparse(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, player: u32) -> bool {
        debug_assert!(player >= 1 && player as usize <= self.n);
        match &self.repr {
            Repr::Bits(b) => b >> (player - 1) & 1 == 1,
            Repr::Sparse(s) => s.contains(&player),
        }
    }

    /// Add a player; no-op if already present.
    pub fn insert(&mut self, player: u32) -> Result<()> {
        if player == 0 || player as usize > self.n {
            return Err(Error::PlayerOutOfRange { player, n: self.n });
        }
        self.insert_unchecked(player);
        Ok(())
    }

    fn insert_unchecked(&mut self, player: u32) {
        match &mut self.repr {
            Repr::Bits(b) => *b |= 1u128 << (player - 1),
            Repr::Sparse(s) => {
                s.insert(player);
            }
        }
    }

    /// Remove a player; no-op if absent.
    pub fn remove(&mut self, player: u32) {
        debug_assert!(player >= 1 && player as usize <= self.n);
        match &mut self.repr {
            Repr::Bits(b) => *b &= !(1u128 << (player - 1)),
            Repr::Sparse(s) => {
                s.remove(&player);
            }
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let (bits, sparse): (Option<u128>, Option<&BTreeSet<u32>>) = match &self.repr {
            Repr::Bits(b) => (Some(*b), None),
            Repr::Sparse(s) => (None, Some(s)),
        };
        let bit_iter = BitIter { bits: bits.unwrap_or(0) };
        let sparse_iter = sparse.into_iter().flatten().copied();
        if bits.is_some() {
            Either::A(bit_iter)
        } else {
            Either::B(sparse_iter)
        }
    }
}

struct BitIter {
    bits: u128,
}

impl Iterator for BitIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.bits == 0 {
            return None;
        }
        let tz = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(tz + 1)
    }
}

enum Either<A, B> {
    A(A),
    B(B),
}

impl<A: Iterator<Item = u32>, B: Iterator<Item = u32>> Iterator for Either<A, B> {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        match self {
            Either::A(a) => a.next(),
            Either::B(b) => b.next(),
        }
    }
}
