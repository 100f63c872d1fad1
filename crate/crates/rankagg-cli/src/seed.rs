//! Stable seed derivation so parallel execution never changes results.

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a sequence of parts into one seed.
pub fn mix_seeds(parts: &[u64]) -> u64 {
    parts.iter().fold(0, |acc, &p| splitmix64(acc ^ p))
}

/// FNV-1a over bytes; used to hash instance and algorithm names into the
/// per-run seed.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}
