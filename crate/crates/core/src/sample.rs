//! Seeded pseudo-random words for spot checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::word::{Letter, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_letter(rng: &mut ChaCha8Rng, arity: usize) -> Letter {
    let exp = if rng.gen_bool(0.5) { 1 } else { -1 };
    Letter::var(rng.gen_range(0..arity), exp)
}

/// A word of length at most `max_len` built from `1..=max_len` random
/// letters `x_i^{+-1}`, then freely reduced.
pub fn random_word(rng: &mut ChaCha8Rng, arity: usize, max_len: usize) -> Word {
    assert!(arity > 0 && max_len > 0);
    let len = rng.gen_range(1..=max_len);
    Word::new(arity, (0..len).map(|_| random_letter(rng, arity)))
}

/// A word with every exponent sum zero and length at most `max_len`:
/// random letters together with their inverses, shuffled.
pub fn random_commutator_word(rng: &mut ChaCha8Rng, arity: usize, max_len: usize) -> Word {
    assert!(arity > 0 && max_len >= 2);
    let half = rng.gen_range(1..=max_len / 2);
    let mut letters: Vec<Letter> = (0..half).map(|_| random_letter(rng, arity)).collect();
    let inverses: Vec<Letter> = letters.iter().map(|l| Letter { exp: -l.exp, ..*l }).collect();
    letters.extend(inverses);
    letters.shuffle(rng);
    Word::new(arity, letters)
}

pub fn random_words(seed: u64, count: usize, arity: usize, max_len: usize) -> Vec<Word> {
    let mut r = rng(seed);
    (0..count).map(|_| random_word(&mut r, arity, max_len)).collect()
}

pub fn random_commutator_words(seed: u64, count: usize, arity: usize, max_len: usize) -> Vec<Word> {
    let mut r = rng(seed);
    (0..count).map(|_| random_commutator_word(&mut r, arity, max_len)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        assert_eq!(random_words(7, 20, 2, 8), random_words(7, 20, 2, 8));
        for w in random_words(1, 100, 3, 8) {
            assert!(w.length() <= 8 && w.arity() == 3);
        }
        for c in random_commutator_words(3, 100, 2, 8) {
            assert!(c.is_commutator_word() && c.length() <= 8);
        }
    }
}
