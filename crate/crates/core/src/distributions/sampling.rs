use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A single-owner pseudo-random stream.
///
/// Backed by ChaCha8 keyed by the master seed, with the replicate (or any
/// other) index selecting ChaCha's 64-bit stream id. Streams with different
/// indices never overlap, so replicates can be generated in any order or in
/// parallel and still reproduce the same data. Normal variates use the
/// ziggurat sampler from `rand_distr`.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream);
        RngStream { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }
}

pub fn standard_normal_sample(stream: &mut RngStream) -> f64 {
    stream.normal()
}

pub fn mvn_identity_sample(stream: &mut RngStream, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| stream.normal()).collect()
}

/// SplitMix64 finalizer; derives well-mixed child seeds from a master seed.
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
