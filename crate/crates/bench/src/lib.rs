//! Fixed inputs for the benchmarks.

use mumford_core::corpus::{point_corpus, random_tuple};
use mumford_core::mumford::{MumfordMatrix, SpectralPoly};
use mumford_core::{Poly, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn pairs(n: usize, max_deg: usize) -> Vec<(Poly<Rational>, Poly<Rational>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..n)
        .map(|_| {
            let mut t = random_tuple(&mut rng, 2, max_deg);
            let q = t.pop().unwrap();
            (t.pop().unwrap(), q)
        })
        .collect()
}

pub fn points(n: usize) -> Vec<MumfordMatrix<Rational>> {
    point_corpus(&mut ChaCha8Rng::seed_from_u64(2), n)
}

/// `x³(x−1)²`.
pub fn genus_two_fiber() -> SpectralPoly {
    SpectralPoly::from_i64(&[0, 0, 0, 1, -2, 1]).unwrap()
}
