//! Seeded random elements for well-definedness checks.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::int::Int;
use crate::linalg::{reduced, IntMatrix};

pub const DEFAULT_SEED: u64 = 0x5eed_7e2a;

#[derive(Clone, Debug)]
pub struct Perturber {
    rng: ChaCha8Rng,
}

impl Perturber {
    pub fn new(seed: u64) -> Self {
        Perturber { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn coefficient(&mut self, bound: u64) -> Int {
        Int::from((self.rng.next_u64() % bound.max(1)) as i64)
    }

    /// A random combination of the columns of `gens`, reduced by `moduli`.
    pub fn combination(&mut self, gens: &IntMatrix, moduli: &[Int]) -> Vec<Int> {
        let coeffs: Vec<Int> = (0..gens.cols()).map(|_| self.coefficient(16)).collect();
        reduced(&gens.mul_vec(&coeffs), moduli)
    }

    /// Like [`Perturber::combination`], but never the zero vector when a
    /// nonzero combination exists.
    pub fn nonzero_combination(&mut self, gens: &IntMatrix, moduli: &[Int]) -> Vec<Int> {
        for _ in 0..32 {
            let v = self.combination(gens, moduli);
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
        let first = (0..gens.cols()).map(|j| reduced(&gens.column(j), moduli)).find(|v| v.iter().any(|x| !x.is_zero()));
        first.unwrap_or_else(|| alloc::vec![Int::ZERO; moduli.len()])
    }
}
