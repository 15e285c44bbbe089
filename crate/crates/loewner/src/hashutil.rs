//! A fast non-cryptographic hasher for packed lattice coordinates.
//!
//! The walk generators do billions of set lookups keyed by small integer
//! pairs; SipHash overhead dominates there, so we use a fixed multiply-mix.

use std::hash::{BuildHasherDefault, Hasher};

#[derive(Default)]
pub struct MixHasher {
    state: u64,
}

impl Hasher for MixHasher {
    #[inline]
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    #[inline]
    fn write_u64(&mut self, v: u64) {
        let mut x = self.state ^ v;
        x = x.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        x ^= x >> 29;
        x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x ^= x >> 32;
        self.state = x;
    }

    #[inline]
    fn finish(&self) -> u64 {
        self.state
    }
}

pub type BuildMixHasher = BuildHasherDefault<MixHasher>;

pub type FastMap<V> = std::collections::HashMap<u64, V, BuildMixHasher>;
pub type FastSet = std::collections::HashSet<u64, BuildMixHasher>;

/// Pack a lattice site into a single map key.
#[inline]
pub fn pack(x: i32, y: i32) -> u64 {
    ((x as u32 as u64) << 32) | (y as u32 as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_is_injective_on_window() {
        let mut set = FastSet::default();
        for x in -50..50 {
            for y in -50..50 {
                assert!(set.insert(pack(x, y)));
            }
        }
    }
}
