//! Minimum-spanning-tree game on a cycle of players plus a central hub.
//!
//! The graph has nodes `{0, 1, .., n}`: node 0 is the hub, connected to each
//! player by an edge of weight `n + 1`; consecutive players around the cycle
//! (including the wraparound edge `(n, 1)`) are connected by edges of
//! weight 1. A coalition's worth is the weight of a minimum spanning tree
//! of the subgraph induced by the coalition and the hub.
//!
//! Members of a coalition form maximal runs of consecutive positions around
//! the cycle. A spanning tree joins each run internally with weight-1 edges
//! and attaches every run to the hub once, so
//! `v(S) = (|S| - runs) + runs * (n + 1) = |S| + runs * n`,
//! with the whole cycle counting as a single run.

use crate::coalition::Coalition;
use crate::error::{Error, Result};
use crate::game::{Game, WorthTracker};

#[derive(Debug, Clone)]
pub struct MstGame {
    n: usize,
}

impl MstGame {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::UnsupportedScale {
                id: "mst".into(),
                scale: n,
                reason: "the cycle needs at least three players".into(),
            });
        }
        Ok(MstGame { n })
    }

    /// Weight of the hub spokes; the cycle edges weigh 1.
    pub fn hub_weight(&self) -> u32 {
        self.n as u32 + 1
    }

    fn neighbors(&self, player: u32) -> (u32, u32) {
        let n = self.n as u32;
        let prev = if player == 1 { n } else { player - 1 };
        let next = if player == n { 1 } else { player + 1 };
        (prev, next)
    }
}

impl Game for MstGame {
    fn player_count(&self) -> usize {
        self.n
    }

    fn value(&self, coalition: &Coalition) -> f64 {
        let size = coalition.len();
        if size == 0 {
            return 0.0;
        }
        let runs = if size == self.n {
            1
        } else {
            // Count run starts: members whose cycle predecessor is absent.
            coalition
                .iter()
                .filter(|&p| !coalition.contains(self.neighbors(p).0))
                .count()
        };
        (size + runs * self.n) as f64
    }

    fn tracker(&self) -> Box<dyn WorthTracker + '_> {
        Box::new(MstTracker { game: self, member: vec![false; self.n + 1], size: 0, runs: 0 })
    }
}

struct MstTracker<'g> {
    game: &'g MstGame,
    /// 1-based membership flags; index 0 unused.
    member: Vec<bool>,
    size: usize,
    runs: usize,
}

impl WorthTracker for MstTracker<'_> {
    fn clear(&mut self) {
        self.member.fill(false);
        self.size = 0;
        self.runs = 0;
    }

    fn add(&mut self, player: u32) {
        let (prev, next) = self.game.neighbors(player);
        let adjacent =
            self.member[prev as usize] as usize + self.member[next as usize] as usize;
        match adjacent {
            0 => self.runs += 1,
            1 => {}
            _ => {
                // Joining two runs, unless both neighbors already belong to
                // the same run; that happens only when this player closes
                // the full cycle.
                if self.size + 1 < self.game.n {
                    self.runs -= 1;
                }
            }
        }
        self.member[player as usize] = true;
        self.size += 1;
    }

    fn remove(&mut self, player: u32) {
        self.member[player as usize] = false;
        self.size -= 1;
        let (prev, next) = self.game.neighbors(player);
        let adjacent =
            self.member[prev as usize] as usize + self.member[next as usize] as usize;
        match adjacent {
            0 => self.runs -= 1,
            1 => {}
            _ => {
                if self.size < self.game.n - 1 {
                    self.runs += 1;
                }
            }
        }
    }

    fn worth(&self) -> f64 {
        (self.size + self.runs * self.game.n) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    /// Generic Kruskal MST on the induced subgraph, used as the oracle for
    /// the run-counting formula.
    fn kruskal_value(n: usize, coalition: &Coalition) -> f64 {
        if coalition.is_empty() {
            return 0.0;
        }
        // Nodes: hub 0 plus the members. Edges: hub spokes (weight n+1) and
        // cycle edges between consecutive members (weight 1).
        let hub_weight = n as u64 + 1;
        let mut edges: Vec<(u64, u32, u32)> = Vec::new();
        for p in coalition.iter() {
            edges.push((hub_weight, 0, p));
            let next = if p == n as u32 { 1 } else { p + 1 };
            if coalition.contains(next) && n > 2 {
                edges.push((1, p, next));
            }
        }
        edges.sort();
        let mut parent: Vec<u32> = (0..=n as u32).collect();
        fn find(parent: &mut [u32], x: u32) -> u32 {
            let mut root = x;
            while parent[root as usize] != root {
                root = parent[root as usize];
            }
            let mut cur = x;
            while parent[cur as usize] != root {
                let next = parent[cur as usize];
                parent[cur as usize] = root;
                cur = next;
            }
            root
        }
        let mut total = 0u64;
        for (w, a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra as usize] = rb;
                total += w;
            }
        }
        total as f64
    }

    #[test]
    fn examples_match_kruskal() {
        let game = MstGame::new(100).unwrap();
        let cases: Vec<(Vec<u32>, f64)> = vec![
            (vec![1, 2, 3], 103.0),
            (vec![1, 3], 202.0),
            (vec![100, 1], 102.0),
            (vec![42], 101.0),
        ];
        for (members, expected) in cases {
            let c = Coalition::from_members(100, members.clone()).unwrap();
            assert_eq!(game.value(&c), expected, "members {members:?}");
            assert_eq!(kruskal_value(100, &c), expected, "kruskal on {members:?}");
        }
        assert_eq!(game.value(&Coalition::grand(100)), 200.0);
        assert_eq!(kruskal_value(100, &Coalition::grand(100)), 200.0);
    }

    #[test]
    fn formula_equals_kruskal_on_random_coalitions() {
        let mut rng = crate::rng::stream(77);
        for &n in &[5usize, 12, 100] {
            let game = MstGame::new(n).unwrap();
            let samples = if n == 100 { 10_000 } else { 2_000 };
            for _ in 0..samples {
                let mut c = Coalition::empty(n);
                for p in 1..=n as u32 {
                    if rng.random::<bool>() {
                        c.insert(p).unwrap();
                    }
                }
                assert_eq!(game.value(&c), kruskal_value(n, &c));
            }
        }
    }

    #[test]
    fn tracker_matches_value_under_churn() {
        let game = MstGame::new(30).unwrap();
        let mut t = game.tracker();
        let mut c = Coalition::empty(30);
        let mut rng = crate::rng::stream(9);
        for _ in 0..2_000 {
            let p = rng.random_range(1..=30u32);
            if c.contains(p) {
                t.remove(p);
                c.remove(p);
            } else {
                t.add(p);
                c.insert(p).unwrap();
            }
            assert_eq!(t.worth(), game.value(&c));
        }
    }

    #[test]
    fn full_cycle_edge_cases() {
        // Adding the last player merges nothing; removing one player from
        // the full cycle splits nothing.
        let game = MstGame::new(10).unwrap();
        let mut t = game.tracker();
        for p in 1..=10 {
            t.add(p);
        }
        assert_eq!(t.worth(), 20.0);
        t.remove(5);
        let c = Coalition::from_members(10, (1..=10u32).filter(|&p| p != 5)).unwrap();
        assert_eq!(t.worth(), game.value(&c));
        t.add(5);
        assert_eq!(t.worth(), 20.0);
    }

    #[test]
    fn rejects_tiny_cycles() {
        assert!(MstGame::new(2).is_err());
    }
}
