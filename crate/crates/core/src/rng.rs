//! Counter-based deterministic random number generation.
//!
//! Initial-data generation must yield identical bits for a given seed on
//! every platform and in every binding, so instead of a stateful generator
//! we evaluate the splitmix64 output function at `seed + counter`: the value
//! for stream position `ctr` is `mix64(seed + (ctr + 1) · GOLDEN)`. Every
//! draw is addressable, which keeps parallel fills and cross-language
//! reimplementation trivial.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `ctr`-th raw output of the stream identified by `seed`.
#[inline]
pub fn stream_u64(seed: u64, ctr: u64) -> u64 {
    mix64(seed.wrapping_add(ctr.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Uniform draw in `[0, 1)` using the top 53 bits.
#[inline]
pub fn stream_unit(seed: u64, ctr: u64) -> f64 {
    (stream_u64(seed, ctr) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform draw in `[-1, 1]`.
#[inline]
pub fn stream_symmetric(seed: u64, ctr: u64) -> f64 {
    2.0 * stream_unit(seed, ctr) - 1.0
}
