use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// A seeded, splittable random stream.
///
/// Each stream is a ChaCha generator keyed by a 64-bit stream key. Child
/// streams are derived from the parent key alone, never from the parent's
/// consumed state, so `stream.split(i)` is the same no matter how many
/// numbers were drawn from `stream` beforehand. This is what makes parallel
/// Monte-Carlo runs reproduce serial ones bit for bit.
#[derive(Clone, Debug)]
pub struct RngStream {
    key: u64,
    rng: ChaCha12Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::from_key(splitmix64(seed))
    }

    fn from_key(key: u64) -> Self {
        RngStream {
            key,
            rng: ChaCha12Rng::seed_from_u64(key),
        }
    }

    /// Child stream number `index`.
    pub fn split(&self, index: u64) -> RngStream {
        Self::from_key(splitmix64(
            self.key ^ splitmix64(index ^ 0x5bd1_e995_0000_0000),
        ))
    }

    /// Child stream identified by a label (FNV-1a hash of the bytes).
    pub fn named(&self, label: &str) -> RngStream {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Self::from_key(splitmix64(self.key.rotate_left(17) ^ h))
    }

    /// Uniform draw from `(0, 1]`.
    pub fn unit_open_closed(&mut self) -> f64 {
        // 53 random mantissa bits, shifted away from zero
        ((self.rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / (1u64 << 53) as f64)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}
