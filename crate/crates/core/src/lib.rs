//! Polynomial parametrization of `SL2(F_q[T])` by 52 parameters.
//!
//! [`decompose::decompose`] turns a matrix of determinant one into a
//! [`certificate::Certificate`]: nine slots of elementary words and
//! quintuples whose product, [`certificate::omega_eval`], gives the matrix
//! back exactly.

pub mod certificate;
pub mod decompose;
pub mod error;
pub mod families;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod residue;
pub mod selftest;
pub mod words;

pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use matrix::Mat2;
pub use poly::{Poly, PolyRing};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer, used to derive independent sub-seeds.
pub fn mix_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The generator behind every seeded choice in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn rng_for(seed: u64, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix_seed(seed, tag))
}
