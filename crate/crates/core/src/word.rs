//! Words over the positive integers under subword order, and the subclass
//! of words whose letters behave like the run indices of a permutation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Embedding;
use crate::text;

/// A nonempty word over the positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Empty);
        }
        if letters.contains(&0) {
            return Err(Error::NonPositive("0".into()));
        }
        Ok(Word { letters })
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(!letters.is_empty() && !letters.contains(&0));
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn max_letter(&self) -> u32 {
        *self.letters.iter().max().expect("nonempty word")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_sequence(f, &self.letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    Word::new(text::parse_letters(text)?.letters)
}

/// Subword order by greedy left-to-right matching.
pub fn is_subword(v: &Word, w: &Word) -> bool {
    let mut needle = v.letters.iter().peekable();
    for letter in &w.letters {
        if needle.peek() == Some(&letter) {
            needle.next();
        }
    }
    needle.peek().is_none()
}

/// Generalised subword order over the chain of positive integers: some
/// subsequence of `w` dominates `v` letter by letter.
///
/// Greedy matching is optimal here: taking the first letter that is large
/// enough never removes an option for the rest of `v`.
pub fn is_generalized_subword(v: &Word, w: &Word) -> bool {
    let mut needle = v.letters.iter().peekable();
    for letter in &w.letters {
        if needle.peek().is_some_and(|&&x| x <= *letter) {
            needle.next();
        }
    }
    needle.peek().is_none()
}

/// Increasing 1-based positions of letter `j` in `w`.
pub fn positions(w: &Word, j: u32) -> Vec<usize> {
    w.letters
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x == j)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Every letter `1..=max(w)` occurs, and the rightmost occurrence of each
/// `i < max(w)` has an `i + 1` somewhere to its left.
pub fn is_ahat_member(w: &Word) -> bool {
    let max = w.max_letter() as usize;
    let mut first = vec![usize::MAX; max + 1];
    let mut last = vec![usize::MAX; max + 1];
    for (i, &x) in w.letters.iter().enumerate() {
        let x = x as usize;
        if first[x] == usize::MAX {
            first[x] = i;
        }
        last[x] = i;
    }
    if (1..=max).any(|x| first[x] == usize::MAX) {
        return false;
    }
    (1..max).all(|i| first[i + 1] < last[i])
}

pub fn is_ahat_k_member(w: &Word, k: u32) -> bool {
    w.max_letter() == k && is_ahat_member(w)
}

/// All embeddings of `v` in `w`, with position sets in lexicographic order.
pub fn word_embeddings(v: &Word, w: &Word) -> Vec<Embedding> {
    fn walk(v: &[u32], w: &[u32], pos: usize, chosen: &mut Vec<usize>, out: &mut Vec<Embedding>) {
        let j = chosen.len();
        if j == v.len() {
            out.push(Embedding::from_positions(v, chosen, w.len()));
            return;
        }
        for p in pos..=w.len() - (v.len() - j) {
            if w[p] == v[j] {
                chosen.push(p + 1);
                walk(v, w, p + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    if v.len() <= w.len() {
        walk(&v.letters, &w.letters, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// A maximal factor of one repeated letter, of length at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LetterBlock {
    pub start_pos: usize,
    pub length: usize,
    pub letter: u32,
}

pub fn letter_blocks(w: &Word) -> Vec<LetterBlock> {
    let letters = &w.letters;
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=letters.len() {
        if i < letters.len() && letters[i] == letters[start] {
            continue;
        }
        if i - start >= 2 {
            blocks.push(LetterBlock {
                start_pos: start + 1,
                length: i - start,
                letter: letters[start],
            });
        }
        start = i;
    }
    blocks
}

/// Positions after the first in each block of repeated letters.
pub fn word_tail_positions(w: &Word) -> Vec<usize> {
    letter_blocks(w)
        .iter()
        .flat_map(|b| b.start_pos + 1..b.start_pos + b.length)
        .collect()
}

/// Embeddings of `v` in `w` that are nonzero on every block tail of `w`,
/// counted by a left-to-right subsequence recurrence.
pub fn count_normal_word_embeddings(v: &Word, w: &Word) -> Result<u64> {
    let (v, n) = (&v.letters, w.len());
    if v.len() > n {
        return Ok(0);
    }
    let mut forced = vec![false; n];
    for p in word_tail_positions(w) {
        forced[p - 1] = true;
    }
    // ways[j]: embeddings of v[..j] into the prefix read so far that use
    // every forced position in that prefix.
    let mut ways = vec![0u64; v.len() + 1];
    ways[0] = 1;
    for (i, &letter) in w.letters.iter().enumerate() {
        let mut next = if forced[i] {
            vec![0u64; v.len() + 1]
        } else {
            ways.clone()
        };
        for j in 0..v.len() {
            if v[j] == letter && ways[j] != 0 {
                next[j + 1] = next[j + 1]
                    .checked_add(ways[j])
                    .ok_or(Error::Overflow("normal embedding count"))?;
            }
        }
        ways = next;
    }
    Ok(ways[v.len()])
}

/// All words of length `n` in the class with maximum letter exactly `k`,
/// in lexicographic order. Built by direct search over letters `1..=k`.
pub fn enumerate_ahat_k(k: u32, n: usize) -> Vec<Word> {
    fn walk(k: u32, n: usize, current: &mut Vec<u32>, used: &mut Vec<u32>, out: &mut Vec<Word>) {
        let missing = used[1..].iter().filter(|&&c| c == 0).count();
        if n - current.len() < missing {
            return;
        }
        if current.len() == n {
            let w = Word::from_vec_unchecked(current.clone());
            if is_ahat_member(&w) {
                out.push(w);
            }
            return;
        }
        for letter in 1..=k {
            current.push(letter);
            used[letter as usize] += 1;
            walk(k, n, current, used, out);
            used[letter as usize] -= 1;
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    walk(
        k,
        n,
        &mut Vec::with_capacity(n),
        &mut vec![0; k as usize + 1],
        &mut out,
    );
    out
}
