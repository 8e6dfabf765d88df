//! Input builders shared by the benchmarks.

use fawtl::{Letter, Word};

/// The block word `a^n b^n c^n`, the canonical scaling input: every prefix
/// of the run keeps most of the tape translucent, which is the case the
/// indexed engine exists for.
pub fn block_word(n: usize) -> Word {
    let mut letters = Vec::with_capacity(3 * n);
    for c in ['a', 'b', 'c'] {
        let letter = Letter::new(c).expect("letter");
        letters.extend(std::iter::repeat(letter).take(n));
    }
    Word::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fawtl::corpus::anbncn;
    use fawtl::run_fast;

    #[test]
    fn block_words_are_in_the_block_language() {
        for n in [0, 1, 7] {
            let run = run_fast(&anbncn(), &block_word(n), false).unwrap();
            assert!(run.verdict.is_accept(), "n = {n}");
        }
    }
}
