//! Intervals of the pattern poset and the Möbius function on them.
//!
//! [`mobius_recursive`] evaluates the defining recursion over a
//! materialized interval and is the reference for every other route:
//! the signed normal-embedding count for equal descent counts, the
//! structural classifier for `[1, π]` with one descent, and the closed
//! form below the adjacency-free one-descent permutations.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{
    adjacency_blocks, adjacency_pairs, count_normal_embeddings, deletions, occurrences, tail_total,
    Permutation,
};

/// Default refusal threshold for materializing `[σ, π]`, by `|π|`.
pub const DEFAULT_MAX_INTERVAL_TOP_LENGTH: usize = 14;

/// The interval `[bottom, top]` with its Hasse diagram and strict
/// reachability in both directions.
///
/// Elements are stored in shortlex order, so the bottom has index 0, the
/// top has the last index, and every element precedes those above it.
#[derive(Clone)]
pub struct Interval {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

impl Interval {
    pub fn bottom(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn top(&self) -> &Permutation {
        self.elements.last().expect("nonempty interval")
    }

    pub fn top_index(&self) -> usize {
        self.elements.len() - 1
    }

    /// Number of elements, endpoints included.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|top| - |bottom|`.
    pub fn rank(&self) -> usize {
        self.top().len() - self.bottom().len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, perm: &Permutation) -> Option<usize> {
        self.index.get(perm).copied()
    }

    pub fn contains(&self, perm: &Permutation) -> bool {
        self.index.contains_key(perm)
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    /// Elements strictly below element `i`.
    pub fn strictly_below(&self, i: usize) -> &FixedBitSet {
        &self.below[i]
    }

    /// Elements strictly above element `i`.
    pub fn strictly_above(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    /// `a < b` in the interval.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    /// The open interval `(a, b)` as a set of element indices.
    pub fn open_between(&self, a: usize, b: usize) -> FixedBitSet {
        let mut set = self.above[a].clone();
        set.intersect_with(&self.below[b]);
        set
    }

    /// `μ(a, z)` for every element `z`, zero where `a ≰ z`.
    pub fn mobius_from(&self, a: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        mu[a] = 1;
        for z in self.above[a].ones() {
            let sum = self.below[z]
                .ones()
                .try_fold(0i64, |acc, y| acc.checked_add(mu[y]))
                .expect("Möbius value overflow");
            mu[z] = -sum;
        }
        mu
    }

    /// `μ(bottom, top)`.
    pub fn mobius(&self) -> i64 {
        self.mobius_from(0)[self.top_index()]
    }

    /// Saturated chains `bottom = c_0 ⋖ c_1 ⋖ … ⋖ c_r = top`, as index
    /// lists, in lexicographic order of the intermediate elements.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        self.maximal_chains_between(0, self.top_index())
    }

    /// Saturated chains from element `a` up to element `b`; empty unless `a ≤ b`.
    pub fn maximal_chains_between(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        fn walk(iv: &Interval, b: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let last = *current.last().expect("chain starts at a");
            if last == b {
                out.push(current.clone());
                return;
            }
            for &next in &iv.upper_covers[last] {
                if next == b || iv.below[b].contains(next) {
                    current.push(next);
                    walk(iv, b, current, out);
                    current.pop();
                }
            }
        }
        let mut out = Vec::new();
        if self.leq(a, b) {
            walk(self, b, &mut vec![a], &mut out);
        }
        out
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Interval[{}, {}] ({} elements)",
            self.bottom(),
            self.top(),
            self.len()
        )
    }
}

/// Materializes `[bottom, top]` with the default size limit.
pub fn build_interval(bottom: &Permutation, top: &Permutation) -> Result<Interval> {
    build_interval_with_limit(bottom, top, DEFAULT_MAX_INTERVAL_TOP_LENGTH)
}

/// Materializes `[bottom, top]` by repeated deletion from `top`, keeping
/// only elements that still contain `bottom`. Refuses `|top| > limit`.
pub fn build_interval_with_limit(
    bottom: &Permutation,
    top: &Permutation,
    limit: usize,
) -> Result<Interval> {
    if top.len() > limit {
        return Err(Error::SizeLimit {
            what: "interval top",
            len: top.len(),
            limit,
        });
    }
    if !top.contains(bottom) {
        return Err(Error::NotContained {
            pattern: bottom.to_string(),
            host: top.to_string(),
        });
    }

    let mut elements = vec![top.clone()];
    let mut level = vec![top.clone()];
    for _ in bottom.len()..top.len() {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for z in &level {
            for y in deletions(z)? {
                if seen.insert(y.clone()) && y.contains(bottom) {
                    next.push(y);
                }
            }
        }
        elements.extend(next.iter().cloned());
        level = next;
    }
    elements.sort();
    debug_assert_eq!(&elements[0], bottom);

    let index: HashMap<Permutation, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let n = elements.len();
    let mut lower_covers = vec![Vec::new(); n];
    let mut upper_covers = vec![Vec::new(); n];
    for (i, z) in elements.iter().enumerate() {
        if z.len() == bottom.len() {
            continue;
        }
        for y in deletions(z)? {
            if let Some(&j) = index.get(&y) {
                lower_covers[i].push(j);
                upper_covers[j].push(i);
            }
        }
    }
    for covers in upper_covers.iter_mut() {
        covers.sort_unstable();
    }

    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..n {
        let mut set = FixedBitSet::with_capacity(n);
        for &j in &lower_covers[i] {
            set.insert(j);
            set.union_with(&below[j]);
        }
        below[i] = set;
    }
    let mut above = vec![FixedBitSet::with_capacity(n); n];
    for (i, set) in below.iter().enumerate() {
        for j in set.ones() {
            above[j].insert(i);
        }
    }

    Ok(Interval {
        elements,
        index,
        lower_covers,
        upper_covers,
        below,
        above,
    })
}

/// `μ(σ, π)` from the defining recursion `μ(σ, π) = -Σ_{σ ≤ z < π} μ(σ, z)`.
/// Zero when `σ ≰ π`.
pub fn mobius_recursive(bottom: &Permutation, top: &Permutation) -> Result<i64> {
    mobius_recursive_with_limit(bottom, top, DEFAULT_MAX_INTERVAL_TOP_LENGTH)
}

pub fn mobius_recursive_with_limit(
    bottom: &Permutation,
    top: &Permutation,
    limit: usize,
) -> Result<i64> {
    if bottom == top {
        return Ok(1);
    }
    if bottom.len() >= top.len() || !top.contains(bottom) {
        return Ok(0);
    }
    Ok(build_interval_with_limit(bottom, top, limit)?.mobius())
}

fn require_same_descents(bottom: &Permutation, top: &Permutation) -> Result<()> {
    let (b, t) = (bottom.descent_count(), top.descent_count());
    if b != t {
        return Err(Error::DescentMismatch {
            bottom: bottom.to_string(),
            bottom_descents: b,
            top: top.to_string(),
            top_descents: t,
        });
    }
    Ok(())
}

fn require_one_descent(perm: &Permutation) -> Result<usize> {
    let descents = perm.descents();
    if descents.len() != 1 {
        return Err(Error::WrongDescentCount {
            perm: perm.to_string(),
            expected: 1,
            found: descents.len(),
        });
    }
    Ok(descents[0])
}

fn sign(exponent: usize) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `μ(σ, π) = (-1)^{|π|-|σ|}` times the number of normal embeddings, valid
/// when `σ` and `π` have the same number of descents.
pub fn mobius_fixed_descent(bottom: &Permutation, top: &Permutation) -> Result<i64> {
    require_same_descents(bottom, top)?;
    if bottom.len() > top.len() {
        return Ok(0);
    }
    let count = count_normal_embeddings(bottom, top)?;
    let count = i64::try_from(count).map_err(|_| Error::Overflow("Möbius value"))?;
    Ok(sign(top.len() - bottom.len()) * count)
}

/// Sufficient test for `μ(σ, π) = 0` with equal descent counts: more
/// adjacency-tail letters in `π` than letters in `σ`.
pub fn mobius_zero_by_tails(bottom: &Permutation, top: &Permutation) -> Result<bool> {
    require_same_descents(bottom, top)?;
    Ok(tail_total(top) > bottom.len())
}

/// `|μ(σ, π)|` never exceeds the number of occurrences of `σ` in `π`
/// when descent counts agree.
pub fn occurrence_bound_holds(bottom: &Permutation, top: &Permutation) -> Result<bool> {
    let mu = mobius_fixed_descent(bottom, top)?;
    Ok(mu.unsigned_abs() as usize <= occurrences(bottom, top).len())
}

/// Structural cases for `μ(1, π)` when `π` has exactly one descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OneDescentCase {
    #[serde(rename = "begins-12-or-ends-(n-1)n")]
    BeginsOrEndsWithPair,
    #[serde(rename = "triple-adjacency")]
    TripleAdjacency,
    #[serde(rename = "more-than-two-pairs")]
    MoreThanTwoPairs,
    #[serde(rename = "two-pairs-decreasing")]
    TwoPairsDecreasing,
    #[serde(rename = "two-pairs-increasing")]
    TwoPairsIncreasing,
    #[serde(rename = "one-pair-before-descent")]
    OnePairBeforeDescent,
    #[serde(rename = "one-pair-before-descent-starts-1")]
    OnePairBeforeDescentStartsOne,
    #[serde(rename = "one-pair-after-descent")]
    OnePairAfterDescent,
    #[serde(rename = "one-pair-after-descent-ends-n")]
    OnePairAfterDescentEndsN,
    #[serde(rename = "no-adjacency-even-W")]
    NoAdjacencyEvenW,
    #[serde(rename = "no-adjacency-even-M")]
    NoAdjacencyEvenM,
    #[serde(rename = "no-adjacency-odd")]
    NoAdjacencyOdd,
}

impl OneDescentCase {
    pub fn label(self) -> &'static str {
        match self {
            OneDescentCase::BeginsOrEndsWithPair => "begins-12-or-ends-(n-1)n",
            OneDescentCase::TripleAdjacency => "triple-adjacency",
            OneDescentCase::MoreThanTwoPairs => "more-than-two-pairs",
            OneDescentCase::TwoPairsDecreasing => "two-pairs-decreasing",
            OneDescentCase::TwoPairsIncreasing => "two-pairs-increasing",
            OneDescentCase::OnePairBeforeDescent => "one-pair-before-descent",
            OneDescentCase::OnePairBeforeDescentStartsOne => "one-pair-before-descent-starts-1",
            OneDescentCase::OnePairAfterDescent => "one-pair-after-descent",
            OneDescentCase::OnePairAfterDescentEndsN => "one-pair-after-descent-ends-n",
            OneDescentCase::NoAdjacencyEvenW => "no-adjacency-even-W",
            OneDescentCase::NoAdjacencyEvenM => "no-adjacency-even-M",
            OneDescentCase::NoAdjacencyOdd => "no-adjacency-odd",
        }
    }
}

impl fmt::Display for OneDescentCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OneDescentClassification {
    pub case: OneDescentCase,
    pub value: i64,
}

/// Every structural case whose predicate `π` satisfies, each with the
/// value it prescribes, in evaluation order. Cases keyed on the number of
/// adjacency pairs are mutually exclusive; the first two cases may overlap
/// with them.
pub fn matching_cases(perm: &Permutation) -> Result<Vec<OneDescentClassification>> {
    let d = require_one_descent(perm)?;
    let n = perm.len();
    if n <= 2 {
        return Err(Error::TooShort { min: 3, len: n });
    }
    let letters = perm.letters();
    let first = letters[0];
    let last = letters[n - 1];
    let blocks = adjacency_blocks(perm);
    // (position, value) of each adjacency pair; a block of length k holds k - 1.
    let pairs: Vec<(usize, u32)> = blocks
        .iter()
        .flat_map(|b| (0..b.length - 1).map(move |t| (b.start_pos + t, b.start_value + t as u32)))
        .collect();
    let signed = |magnitude: u64| -> i64 {
        let m = magnitude as i64;
        if n % 2 == 1 {
            m
        } else {
            -m
        }
    };

    let mut cases = Vec::new();
    let mut hit = |case, value| cases.push(OneDescentClassification { case, value });

    if (letters[0] == 1 && letters[1] == 2) || (letters[n - 2] == n as u32 - 1 && last == n as u32)
    {
        hit(OneDescentCase::BeginsOrEndsWithPair, 0);
    }
    if blocks.iter().any(|b| b.length >= 3) {
        hit(OneDescentCase::TripleAdjacency, 0);
    }
    match pairs.len() {
        0 => {
            let half = n as u64 / 2;
            if n % 2 == 1 {
                hit(
                    OneDescentCase::NoAdjacencyOdd,
                    signed(binomial(half + 1, 2)),
                );
            } else if first == 1 {
                hit(OneDescentCase::NoAdjacencyEvenW, signed(binomial(half, 2)));
            } else {
                hit(
                    OneDescentCase::NoAdjacencyEvenM,
                    signed(binomial(half + 1, 2)),
                );
            }
        }
        1 => {
            let i = pairs[0].0;
            let (case, magnitude) = if i < d {
                if first != 1 {
                    (OneDescentCase::OnePairBeforeDescent, i)
                } else {
                    (OneDescentCase::OnePairBeforeDescentStartsOne, i - 1)
                }
            } else if last != n as u32 {
                (OneDescentCase::OnePairAfterDescent, n - i)
            } else {
                (OneDescentCase::OnePairAfterDescentEndsN, n - i - 1)
            };
            hit(case, signed(magnitude as u64));
        }
        2 => {
            if pairs[0].1 > pairs[1].1 {
                hit(OneDescentCase::TwoPairsDecreasing, signed(1));
            } else {
                hit(OneDescentCase::TwoPairsIncreasing, 0);
            }
        }
        _ => hit(OneDescentCase::MoreThanTwoPairs, 0),
    }
    Ok(cases)
}

/// `μ(1, π)` for `π` with one descent and `|π| > 2`, read off from the
/// number and placement of adjacencies. The first matching case wins.
pub fn classify_one_descent(perm: &Permutation) -> Result<OneDescentClassification> {
    Ok(matching_cases(perm)?[0])
}

/// `μ(1, π) = -μ(21, π)` for `π` with one descent, with `μ(21, π)` taken
/// from the normal-embedding formula.
pub fn mobius_from_one(perm: &Permutation) -> Result<i64> {
    require_one_descent(perm)?;
    let two_one = Permutation::new(vec![2, 1]).expect("valid");
    Ok(-mobius_fixed_descent(&two_one, perm)?)
}

/// The two adjacency-free one-descent shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TopKind {
    /// `246…135…`: evens, then odds.
    M,
    /// `135…246…`: odds, then evens.
    W,
}

/// `M_n` or `W_n`.
pub fn alternating_top(kind: TopKind, n: usize) -> Permutation {
    let n = n as u32;
    let evens = (2..=n).step_by(2);
    let odds = (1..=n).step_by(2);
    let letters = match kind {
        TopKind::M => evens.chain(odds).collect(),
        TopKind::W => odds.chain(evens).collect(),
    };
    Permutation::from_vec_unchecked(letters)
}

/// Which alternating shape `perm` is, if any.
pub fn alternating_kind(perm: &Permutation) -> Option<TopKind> {
    [TopKind::M, TopKind::W]
        .into_iter()
        .find(|&k| alternating_top(k, perm.len()) == *perm)
}

/// Letter 1 lies on the same side of the descent in both permutations.
/// Both must have exactly one descent.
pub fn related(a: &Permutation, b: &Permutation) -> Result<bool> {
    let side = |p: &Permutation| -> Result<bool> {
        let d = require_one_descent(p)?;
        Ok(p.position_of(1).expect("1 is a letter") <= d)
    };
    Ok(side(a)? == side(b)?)
}

/// `μ(σ, π) = (-1)^{n-m} C(⌊(n + m - i - a) / 2⌋, m)` for `π` the `M_n` or
/// `W_n` shape, `m = |σ|`, `i` the adjacency pairs of `σ`, and `a = 0`
/// exactly when `σ` and `π` are related.
pub fn mobius_bottom_closed_form(bottom: &Permutation, n: usize, kind: TopKind) -> Result<i64> {
    require_one_descent(bottom)?;
    let top = alternating_top(kind, n);
    require_one_descent(&top)?;
    if !top.contains(bottom) {
        return Err(Error::NotContained {
            pattern: bottom.to_string(),
            host: top.to_string(),
        });
    }
    let m = bottom.len();
    let i = adjacency_pairs(bottom);
    let a = usize::from(!related(bottom, &top)?);
    let upper = (n + m).saturating_sub(i + a) / 2;
    let magnitude =
        i64::try_from(binomial(upper as u64, m as u64)).map_err(|_| Error::Overflow("binomial"))?;
    Ok(sign(n - m) * magnitude)
}

/// Whether the largest letter and the letter 1 sit on the same side of the
/// descent. For one-descent `σ` this agrees with `m - i` being odd.
pub fn max_side_parity(perm: &Permutation) -> Result<bool> {
    let d = require_one_descent(perm)?;
    let before = |v: u32| perm.position_of(v).expect("letter present") <= d;
    Ok(before(1) == before(perm.len() as u32))
}

/// Exact binomial coefficient; zero when `k > n`. Panics on overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * u128::from(n - j) / u128::from(j + 1);
    }
    u64::try_from(acc).expect("binomial overflow")
}
