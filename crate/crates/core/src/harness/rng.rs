//! Seeded random streams.
//!
//! Every generator draws from ChaCha20 (`rand_chacha` 0.3) seeded through
//! `seed_from_u64`. Independent streams for trials and sub-generators are
//! derived with [`stream_seed`], a SplitMix64-based mix, so results do not
//! depend on execution order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub type HarnessRng = ChaCha20Rng;

pub fn rng_from_seed(seed: u64) -> HarnessRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of stream `index` under `base`: `splitmix64(base ^ splitmix64(index))`.
pub fn stream_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(index))
}

/// `n` standard normal draws by the Box–Muller transform, consuming two
/// uniforms per pair.
pub fn standard_normals(rng: &mut HarnessRng, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    while out.len() < n {
        // 1 - U lies in (0, 1], keeping the logarithm finite.
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let t = std::f64::consts::TAU * u2;
        out.push(r * t.cos());
        out.push(r * t.sin());
    }
    out.truncate(n);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_differ_and_repeat() {
        assert_eq!(stream_seed(7, 3), stream_seed(7, 3));
        assert_ne!(stream_seed(7, 3), stream_seed(7, 4));
        assert_ne!(stream_seed(7, 3), stream_seed(8, 3));
    }

    #[test]
    fn odd_count_is_honoured() {
        let mut rng = rng_from_seed(1);
        assert_eq!(standard_normals(&mut rng, 5).len(), 5);
    }
}
