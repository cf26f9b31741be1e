//! Seeded random sampling used by the property checks and the verify suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::Scalar;
use crate::diagram::{hom_basis, Mode, Morphism};
use crate::word::{Sign, Word};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut SeededRng, len: usize) -> Word {
    Word::new((0..len).map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }).collect())
}

/// A random combination of up to `max_terms` basis diagrams of
/// `source -> target` with small nonzero integer coefficients.
pub fn random_morphism<K: Scalar>(
    rng: &mut SeededRng,
    source: &Word,
    target: &Word,
    mode: Mode,
    max_terms: usize,
) -> Morphism<K> {
    let mut basis = hom_basis(source, target, mode);
    basis.shuffle(rng);
    let mut m = Morphism::zero(source.clone(), target.clone(), mode);
    let k = if basis.is_empty() { 0 } else { rng.gen_range(1..=max_terms.min(basis.len()).max(1)) };
    for d in basis.into_iter().take(k) {
        let mut c = rng.gen_range(-4i64..=4);
        if c == 0 {
            c = 1;
        }
        m.add_term(d, K::from_i64(c)).expect("basis diagram lies in the hom space");
    }
    m
}
