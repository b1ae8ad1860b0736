//! Seeded random cochains. Each caller owns its generator stream, so results
//! never depend on scheduling.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Cochain, SimplicialComplex};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[-1, 1]`.
pub fn uniform_values<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

pub fn random_cochain<R: Rng + ?Sized>(rng: &mut R, complex: &SimplicialComplex, degree: usize) -> Cochain {
    Cochain::new(degree, uniform_values(rng, complex.count(degree)))
}

/// Independent seed for a sub-stream, e.g. one `(operator, p)` pair.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut state = base;
    for &part in parts {
        state = splitmix(state ^ splitmix(part.wrapping_add(0x9E37_79B9_7F4A_7C15)));
    }
    state
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
