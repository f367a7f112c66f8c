//! Seeded random-number streams.
//!
//! All randomness in the crate flows through [`StreamRng`] values created
//! here. A master seed plus a stream index yields an independent generator,
//! so replications can run in parallel on any number of threads and still
//! produce bit-identical results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The deterministic generator used throughout the crate.
pub type StreamRng = ChaCha8Rng;

/// Generator for a master seed (stream 0).
pub fn stream(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent substream `index` of the given master seed.
///
/// Substreams with different indices never overlap; `substream(seed, 0)`
/// equals `stream(seed)`.
pub fn substream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
