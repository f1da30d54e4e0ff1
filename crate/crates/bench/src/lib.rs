//! Input generation shared by the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use su2_factor::{haar_random_with, GeneratorPair, UnitaryGate, Vec3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform components in [-1, 1], re-drawn while nearly dependent.
pub fn sample_pair<R: Rng>(rng: &mut R) -> GeneratorPair {
    loop {
        let alpha = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let beta = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if alpha.cross(&beta).norm() > 1e-2 * alpha.norm() * beta.norm() {
            if let Ok(pair) = GeneratorPair::new(alpha, beta) {
                return pair;
            }
        }
    }
}

/// A fixed batch of (target, pair) problems for stable measurements.
pub fn sample_problems(count: usize, seed: u64) -> Vec<(UnitaryGate, GeneratorPair)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| {
            let target = haar_random_with(&mut rng);
            let pair = sample_pair(&mut rng);
            (target, pair)
        })
        .collect()
}
