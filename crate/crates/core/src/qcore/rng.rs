//! The one generator used everywhere, so every run is replayable from seeds.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Counter-based ChaCha8 stream with a 64-bit seed.
pub type QRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> QRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent child seed (SplitMix64 finaliser over `seed ^ stream`).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
