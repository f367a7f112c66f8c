//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("player {player} out of range 1..={n}")]
    PlayerOutOfRange { player: u32, n: usize },

    #[error("position {position} out of range 1..={n}")]
    PositionOutOfRange { position: u32, n: usize },

    #[error("shift {shift} out of range 0..{n}")]
    ShiftOutOfRange { shift: u32, n: usize },

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("{what} is not a bijection onto 1..={n}")]
    NotABijection { what: &'static str, n: usize },

    #[error("sample size {m} too small, need at least {min}")]
    SampleTooSmall { m: u64, min: u64 },

    #[error("block length K={k} must be at least 2")]
    BlockTooShort { k: u32 },

    #[error("block length K={k} does not divide sample size m={m}")]
    BlockMismatch { k: u32, m: u64 },

    #[error(
        "learning budget exhausted: m1={m1} leaves no evaluation budget for n={n}, m={m}; \
         need m1 <= 6m/n^2 = {bound:.3}"
    )]
    BudgetExhausted { m1: u64, n: usize, m: u64, bound: f64 },

    #[error("replication count R={r} must be at least 2")]
    TooFewReplications { r: u64 },

    #[error("seed list has {got} entries, expected {expected}")]
    SeedCountMismatch { expected: usize, got: usize },

    #[error("unknown game id '{0}'")]
    UnknownGame(String),

    #[error("game '{id}' does not support scale n={scale}: {reason}")]
    UnsupportedScale { id: String, scale: usize, reason: String },

    #[error("exact enumeration limited to n <= {max}, got n = {n}")]
    TooManyPlayers { n: usize, max: usize },

    #[error("{what} = {value} outside domain {domain}")]
    OutOfDomain { what: &'static str, value: f64, domain: &'static str },

    #[error("degenerate binary distribution: p = {p} has no correlation")]
    DegenerateDistribution { p: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
