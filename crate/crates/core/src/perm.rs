//! Permutations in one-line notation and the pattern-containment machinery
//! built on them: descents and runs, occurrences, embeddings, adjacencies
//! and normal embeddings.
//!
//! Positions and values are 1-based everywhere in the public API.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::bijection::perm_to_word;
use crate::error::{Error, Result};
use crate::text;
use crate::word::count_normal_word_embeddings;

/// A permutation of `1..=n` in one-line notation, `n >= 1`.
///
/// Ordering is shortlex: shorter permutations first, then lexicographic.
/// This matches the grading of the pattern poset by length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    letters: Vec<u32>,
}

impl Permutation {
    /// Validates that `letters` is a rearrangement of `1..=n`.
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Empty);
        }
        let n = letters.len();
        let mut seen = vec![false; n];
        for &v in &letters {
            if v == 0 {
                return Err(Error::NonPositive("0".into()));
            }
            let idx = v as usize - 1;
            if idx >= n {
                // Some value in 1..=n must be missing; report the smallest.
                let missing = (1..=n as u32)
                    .find(|m| !letters.contains(m))
                    .unwrap_or(n as u32);
                return Err(Error::Gap { missing, len: n });
            }
            if seen[idx] {
                return Err(Error::Duplicate(v));
            }
            seen[idx] = true;
        }
        Ok(Permutation { letters })
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(letters.clone()).is_ok());
        Permutation { letters }
    }

    /// The increasing permutation `12…n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations have length at least 1");
        Permutation {
            letters: (1..=n as u32).collect(),
        }
    }

    /// The permutation `1`, bottom of the pattern poset.
    pub fn one() -> Self {
        Self::identity(1)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; present for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.letters[i - 1]
    }

    /// 1-based position of value `c`, if `1 <= c <= n`.
    pub fn position_of(&self, c: u32) -> Option<usize> {
        self.letters.iter().position(|&v| v == c).map(|p| p + 1)
    }

    /// Positions `i` with `π_i > π_{i+1}`, increasing.
    pub fn descents(&self) -> Vec<usize> {
        self.letters
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn descent_count(&self) -> usize {
        self.letters.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Index of the run (maximal increasing factor) containing value `c`.
    pub fn run_index(&self, c: u32) -> Result<usize> {
        let pos = self.position_of(c).ok_or(Error::ValueOutOfRange {
            value: c,
            len: self.len(),
        })?;
        Ok(1 + self.letters[..pos]
            .windows(2)
            .filter(|w| w[0] > w[1])
            .count())
    }

    /// `self ⊕ other`: `other` shifted up by `|self|` and appended.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.len() as u32;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&v| v + shift));
        Permutation { letters }
    }

    /// Replaces each letter of a sequence of distinct integers by its rank.
    pub fn standardize(letters: &[u32]) -> Result<Permutation> {
        if letters.is_empty() {
            return Err(Error::Empty);
        }
        let mut order: Vec<usize> = (0..letters.len()).collect();
        order.sort_by_key(|&i| letters[i]);
        if let Some(w) = order.windows(2).find(|w| letters[w[0]] == letters[w[1]]) {
            return Err(Error::Duplicate(letters[w[0]]));
        }
        let mut out = vec![0; letters.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as u32 + 1;
        }
        Ok(Permutation { letters: out })
    }

    /// The permutation with 1-based position `j` deleted and the rest
    /// standardized. Requires `len >= 2`.
    pub fn delete_position(&self, j: usize) -> Permutation {
        debug_assert!(self.len() >= 2 && (1..=self.len()).contains(&j));
        let removed = self.letters[j - 1];
        let letters = self
            .letters
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Permutation { letters }
    }

    /// Pattern containment: does `pattern` occur in `self`?
    pub fn contains(&self, pattern: &Permutation) -> bool {
        if pattern.len() > self.len() {
            return false;
        }
        let matcher = Matcher::new(pattern, self, None);
        let mut found = false;
        matcher.run(&mut |_| {
            found = true;
            false
        });
        found
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.len()];
        for (i, &v) in self.letters.iter().enumerate() {
            out[v as usize - 1] = i as u32 + 1;
        }
        Permutation { letters: out }
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_sequence(f, &self.letters)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses compact digits (`n <= 9`) or a comma/whitespace separated list.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let parsed = text::parse_letters(text)?;
    if parsed.compact && parsed.letters.len() > 9 {
        return Err(Error::CompactTooLong);
    }
    Permutation::new(parsed.letters)
}

/// Backtracking matcher for occurrences of `pattern` in `host`.
///
/// Host positions are visited left to right; each is either taken for the
/// next pattern letter or skipped. Taking before skipping yields position
/// sets in lexicographic order. A position in `forced` may not be skipped.
struct Matcher<'a> {
    pattern: &'a [u32],
    host: &'a [u32],
    /// For pattern index j, the earlier index holding the largest smaller letter.
    below: Vec<Option<usize>>,
    /// For pattern index j, the earlier index holding the smallest larger letter.
    above: Vec<Option<usize>>,
    forced: Vec<bool>,
    /// Number of forced host positions at index >= p.
    forced_suffix: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a Permutation, host: &'a Permutation, forced: Option<&[usize]>) -> Self {
        let pattern = pattern.letters();
        let host_letters = host.letters();
        let mut below = Vec::with_capacity(pattern.len());
        let mut above = Vec::with_capacity(pattern.len());
        for j in 0..pattern.len() {
            let prior = &pattern[..j];
            below.push(
                (0..j)
                    .filter(|&i| prior[i] < pattern[j])
                    .max_by_key(|&i| prior[i]),
            );
            above.push(
                (0..j)
                    .filter(|&i| prior[i] > pattern[j])
                    .min_by_key(|&i| prior[i]),
            );
        }
        let mut forced_mask = vec![false; host_letters.len()];
        for &p in forced.unwrap_or(&[]) {
            forced_mask[p - 1] = true;
        }
        let mut forced_suffix = vec![0; host_letters.len() + 1];
        for p in (0..host_letters.len()).rev() {
            forced_suffix[p] = forced_suffix[p + 1] + usize::from(forced_mask[p]);
        }
        Matcher {
            pattern,
            host: host_letters,
            below,
            above,
            forced: forced_mask,
            forced_suffix,
        }
    }

    /// Calls `visit` with the 0-based host positions of each occurrence
    /// until it returns false.
    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let mut chosen = Vec::with_capacity(self.pattern.len());
        self.step(0, &mut chosen, visit);
    }

    fn fits(&self, chosen: &[usize], pos: usize) -> bool {
        let j = chosen.len();
        let v = self.host[pos];
        self.below[j].is_none_or(|i| self.host[chosen[i]] < v)
            && self.above[j].is_none_or(|i| self.host[chosen[i]] > v)
    }

    fn step(
        &self,
        pos: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let j = chosen.len();
        if j == self.pattern.len() {
            return if self.forced_suffix[pos] == 0 {
                visit(chosen)
            } else {
                true
            };
        }
        if self.host.len() - pos < self.pattern.len() - j
            || self.forced_suffix[pos] > self.pattern.len() - j
        {
            return true;
        }
        if self.fits(chosen, pos) {
            chosen.push(pos);
            let go_on = self.step(pos + 1, chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        if !self.forced[pos] {
            return self.step(pos + 1, chosen, visit);
        }
        true
    }
}

/// All occurrences of `pattern` in `host` as increasing 1-based position
/// lists, in lexicographic order. Empty iff `pattern` is not contained.
pub fn occurrences(pattern: &Permutation, host: &Permutation) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if pattern.len() > host.len() {
        return out;
    }
    Matcher::new(pattern, host, None).run(&mut |pos| {
        out.push(pos.iter().map(|p| p + 1).collect());
        true
    });
    out
}

/// An occurrence padded with zeros to the host's length: removing the
/// zeros leaves the guest, and the nonzero positions are the occurrence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    slots: Vec<u32>,
}

impl Embedding {
    /// Builds the embedding of `guest` at the 1-based `positions` of a host
    /// of length `host_len`.
    pub fn from_positions(guest: &[u32], positions: &[usize], host_len: usize) -> Self {
        debug_assert_eq!(guest.len(), positions.len());
        let mut slots = vec![0; host_len];
        for (&p, &g) in positions.iter().zip(guest) {
            slots[p - 1] = g;
        }
        Embedding { slots }
    }

    pub fn slots(&self) -> &[u32] {
        &self.slots
    }

    /// The guest's letters: the slots with zeros removed.
    pub fn guest_letters(&self) -> Vec<u32> {
        self.slots.iter().copied().filter(|&v| v != 0).collect()
    }

    /// 1-based positions carrying a guest letter.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.slots.len())
            .filter(|&i| self.slots[i - 1] != 0)
            .collect()
    }

    /// 1-based positions that are zero.
    pub fn zero_positions(&self) -> Vec<usize> {
        (1..=self.slots.len())
            .filter(|&i| self.slots[i - 1] == 0)
            .collect()
    }

    /// Nonzero at every listed 1-based position.
    pub fn covers_all(&self, positions: &[usize]) -> bool {
        positions.iter().all(|&p| self.slots[p - 1] != 0)
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_sequence(f, &self.slots)
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({self})")
    }
}

/// One embedding per occurrence, in the same order as [`occurrences`].
pub fn embeddings(pattern: &Permutation, host: &Permutation) -> Vec<Embedding> {
    occurrences(pattern, host)
        .iter()
        .map(|pos| Embedding::from_positions(pattern.letters(), pos, host.len()))
        .collect()
}

/// A maximal run of consecutive values at consecutive increasing positions,
/// e.g. `234` in `52341`. Length is at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjacencyBlock {
    pub start_pos: usize,
    pub length: usize,
    pub start_value: u32,
}

impl AdjacencyBlock {
    /// Positions of every letter but the first.
    pub fn tail_positions(&self) -> impl Iterator<Item = usize> {
        self.start_pos + 1..self.start_pos + self.length
    }
}

/// Maximal increasing adjacencies of `perm`, left to right.
pub fn adjacency_blocks(perm: &Permutation) -> Vec<AdjacencyBlock> {
    let letters = perm.letters();
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=letters.len() {
        if i < letters.len() && letters[i] == letters[i - 1] + 1 {
            continue;
        }
        if i - start >= 2 {
            blocks.push(AdjacencyBlock {
                start_pos: start + 1,
                length: i - start,
                start_value: letters[start],
            });
        }
        start = i;
    }
    blocks
}

/// 1-based positions lying in the tail of some adjacency, increasing.
pub fn tail_positions(perm: &Permutation) -> Vec<usize> {
    adjacency_blocks(perm)
        .iter()
        .flat_map(AdjacencyBlock::tail_positions)
        .collect()
}

/// Total number of letters in adjacency tails.
pub fn tail_total(perm: &Permutation) -> usize {
    adjacency_blocks(perm).iter().map(|b| b.length - 1).sum()
}

/// Number of adjacency pairs, where a block of length `k` counts as `k - 1`.
/// Numerically the same as [`tail_total`].
pub fn adjacency_pairs(perm: &Permutation) -> usize {
    tail_total(perm)
}

/// Number of normal embeddings of `pattern` in `host`: embeddings that are
/// nonzero at every adjacency-tail position of `host`.
///
/// With equal descent counts the count is taken on the word side, where it
/// is a polynomial subsequence count. Otherwise the occurrences are
/// enumerated with tail positions forced.
pub fn count_normal_embeddings(pattern: &Permutation, host: &Permutation) -> Result<u64> {
    if pattern.len() > host.len() {
        return Ok(0);
    }
    if pattern.descent_count() == host.descent_count() {
        return count_normal_word_embeddings(&perm_to_word(pattern), &perm_to_word(host));
    }
    Ok(count_normal_embeddings_by_search(pattern, host))
}

/// Normal-embedding count by backtracking with tail positions forced.
pub fn count_normal_embeddings_by_search(pattern: &Permutation, host: &Permutation) -> u64 {
    if pattern.len() > host.len() {
        return 0;
    }
    let tails = tail_positions(host);
    let mut count = 0u64;
    Matcher::new(pattern, host, Some(&tails)).run(&mut |_| {
        count += 1;
        true
    });
    count
}

/// Standardized single-position deletions of `perm`, deduplicated and
/// sorted. These are exactly the elements `perm` covers.
pub fn deletions(perm: &Permutation) -> Result<Vec<Permutation>> {
    if perm.len() < 2 {
        return Err(Error::TooShort {
            min: 2,
            len: perm.len(),
        });
    }
    let set: BTreeSet<Permutation> = (1..=perm.len()).map(|j| perm.delete_position(j)).collect();
    Ok(set.into_iter().collect())
}

/// All permutations of length `n` in lexicographic order.
pub fn permutations_of_length(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n as u32)
        .permutations(n)
        .map(Permutation::from_vec_unchecked)
}

/// Permutations of length `n` with exactly `k` descents, lexicographic.
pub fn permutations_with_descents(n: usize, k: usize) -> impl Iterator<Item = Permutation> {
    permutations_of_length(n).filter(move |p| p.descent_count() == k)
}

/// All permutations with length in `1..=max_len`, shortlex order.
pub fn permutations_up_to(max_len: usize) -> impl Iterator<Item = Permutation> {
    (1..=max_len).flat_map(permutations_of_length)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("23514").letters(), &[2, 3, 5, 1, 4]);
        assert_eq!(p("1"), Permutation::one());
        assert_eq!(
            parse_permutation("10,2,3,4,5,6,7,8,1,11").err(),
            Some(Error::Gap {
                missing: 9,
                len: 10
            })
        );
        assert_eq!(parse_permutation("1231").err(), Some(Error::Duplicate(1)));
        assert_eq!(parse_permutation("").err(), Some(Error::Empty));
        assert!(matches!(
            parse_permutation("0,1"),
            Err(Error::NonPositive(_))
        ));
        assert_eq!(p("10 9 8 7 6 5 4 3 2 1").len(), 10);
    }

    #[test]
    fn render_is_canonical() {
        assert_eq!(p("23514").to_string(), "23514");
        let long = p("10,2,3,4,5,6,7,8,9,1");
        assert_eq!(long.to_string(), "10,2,3,4,5,6,7,8,9,1");
        assert_eq!(p(&long.to_string()), long);
    }

    #[test]
    fn descent_examples() {
        assert_eq!(p("23154").descents(), vec![2, 4]);
        assert!(p("12345").descents().is_empty());
        assert_eq!(p("3412").descents(), vec![2]);
    }

    #[test]
    fn run_index_examples() {
        let q = p("35241");
        assert_eq!(q.run_index(5).unwrap(), 1);
        assert_eq!(q.run_index(1).unwrap(), 3);
        assert!((1..=5).all(|k| p("12345").run_index(k).unwrap() == 1));
        assert!(matches!(q.run_index(6), Err(Error::ValueOutOfRange { .. })));
        assert!(matches!(q.run_index(0), Err(Error::ValueOutOfRange { .. })));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(p("213").direct_sum(&p("312")), p("213645"));
        assert_eq!(p("1").direct_sum(&p("1")), p("12"));
        assert_eq!(p("21").direct_sum(&p("21")), p("2143"));
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(Permutation::standardize(&[4, 1, 2]).unwrap(), p("312"));
        assert_eq!(Permutation::standardize(&[2, 1, 4]).unwrap(), p("213"));
        assert_eq!(Permutation::standardize(&[7]).unwrap(), p("1"));
        assert_eq!(
            Permutation::standardize(&[3, 5, 3]).err(),
            Some(Error::Duplicate(3))
        );
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(
            occurrences(&p("213"), &p("23514")),
            vec![vec![1, 4, 5], vec![2, 4, 5]]
        );
        let host = p("35142");
        assert_eq!(
            occurrences(&p("1"), &host),
            (1..=5).map(|i| vec![i]).collect::<Vec<_>>()
        );
        // The subsequences 214 and 314.
        let host = p("23514");
        let letters: Vec<Vec<u32>> = occurrences(&p("213"), &host)
            .iter()
            .map(|o| o.iter().map(|&i| host.at(i)).collect())
            .collect();
        assert_eq!(letters, vec![vec![2, 1, 4], vec![3, 1, 4]]);
        assert!(occurrences(&p("456123"), &p("356124")).is_empty());
        assert!(!p("356124").contains(&p("456123")));
    }

    #[test]
    fn embedding_examples() {
        let found: Vec<String> = embeddings(&p("213"), &p("142356"))
            .iter()
            .map(ToString::to_string)
            .collect();
        let mut expected = vec!["021030", "020130", "021003", "020103"];
        let mut sorted = found.clone();
        sorted.sort();
        expected.sort();
        assert_eq!(sorted, expected);

        let full = embeddings(&p("3142"), &p("3142"));
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].to_string(), "3142");

        let e = embeddings(&p("21"), &p("3412"));
        assert_eq!(e.len(), 4);
        for emb in &e {
            assert_eq!(emb.guest_letters(), vec![2, 1]);
        }
    }

    #[test]
    fn adjacency_examples() {
        let blocks = adjacency_blocks(&p("142356"));
        assert_eq!(
            blocks,
            vec![
                AdjacencyBlock {
                    start_pos: 3,
                    length: 2,
                    start_value: 2
                },
                AdjacencyBlock {
                    start_pos: 5,
                    length: 2,
                    start_value: 5
                },
            ]
        );
        // Tail letters are 3 and 6.
        let q = p("142356");
        let tail_letters: Vec<u32> = tail_positions(&q).iter().map(|&i| q.at(i)).collect();
        assert_eq!(tail_letters, vec![3, 6]);
        assert_eq!(tail_total(&q), 2);

        assert!(adjacency_blocks(&p("246135")).is_empty());
        assert_eq!(adjacency_pairs(&p("246135")), 0);

        let triple = adjacency_blocks(&p("23415"));
        assert_eq!(triple.len(), 1);
        assert_eq!(triple[0].length, 3);
        assert_eq!(adjacency_pairs(&p("23415")), 2);
    }

    #[test]
    fn normal_embedding_examples() {
        assert_eq!(count_normal_embeddings(&p("213"), &p("142356")).unwrap(), 1);
        let normal: Vec<String> = embeddings(&p("213"), &p("142356"))
            .into_iter()
            .filter(|e| e.covers_all(&tail_positions(&p("142356"))))
            .map(|e| e.to_string())
            .collect();
        assert_eq!(normal, vec!["020103"]);
        assert_eq!(count_normal_embeddings(&p("2413"), &p("2413")).unwrap(), 1);
        assert_eq!(count_normal_embeddings(&p("21"), &p("3412")).unwrap(), 1);
        assert_eq!(count_normal_embeddings(&p("321"), &p("12")).unwrap(), 0);
        assert_eq!(count_normal_embeddings(&p("12"), &p("21")).unwrap(), 0);
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(deletions(&p("3412")).unwrap(), vec![p("231"), p("312")]);
        assert_eq!(deletions(&p("12")).unwrap(), vec![p("1")]);
        assert_eq!(deletions(&p("21")).unwrap(), vec![p("1")]);
        assert_eq!(
            deletions(&p("1")).err(),
            Some(Error::TooShort { min: 2, len: 1 })
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(permutations_of_length(4).count(), 24);
        assert_eq!(permutations_with_descents(4, 1).count(), 11);
        assert_eq!(
            permutations_with_descents(3, 0).collect::<Vec<_>>(),
            vec![p("123")]
        );
        let first: Vec<_> = permutations_of_length(3).collect();
        assert!(first.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn shortlex_order() {
        assert!(p("21") < p("123"));
        assert!(p("123") < p("132"));
    }
}
