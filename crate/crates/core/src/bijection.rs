//! The run-index encoding of permutations as words and its inverse.
//!
//! `perm_to_word` writes, for each value `c = 1..n`, the index of the run
//! containing `c`. `word_to_perm` lists the positions of each letter in
//! turn. Restricted to a fixed descent count these are mutually inverse
//! order isomorphisms onto words with a fixed maximum letter.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::{is_ahat_member, positions, Word};

pub fn perm_to_word(perm: &Permutation) -> Word {
    let letters = perm.letters();
    let mut run_of_value = vec![0u32; letters.len()];
    let mut run = 1;
    for (i, &v) in letters.iter().enumerate() {
        if i > 0 && letters[i - 1] > v {
            run += 1;
        }
        run_of_value[v as usize - 1] = run;
    }
    Word::from_vec_unchecked(run_of_value)
}

/// Inverse of [`perm_to_word`]. Rejects words outside its image.
pub fn word_to_perm(word: &Word) -> Result<Permutation> {
    if !is_ahat_member(word) {
        return Err(Error::NotInAhat(word.to_string()));
    }
    let letters = (1..=word.max_letter())
        .flat_map(|j| positions(word, j))
        .map(|p| p as u32)
        .collect();
    Ok(Permutation::from_vec_unchecked(letters))
}
