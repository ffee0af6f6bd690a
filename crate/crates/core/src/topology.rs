//! Order complexes of open intervals and their homology.
//!
//! Homology is reduced and taken over the two-element field. The empty
//! complex has the single empty face, so `β̃₋₁ = 1` and `χ̃ = -1`; this is
//! what makes `χ̃(Δ(σ, π)) = μ(σ, π)` hold for intervals of rank one.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moebius::{build_interval, build_interval_with_limit, mobius_fixed_descent, Interval};
use crate::perm::{embeddings, Embedding, Permutation};

/// Default refusal threshold for subinterval scans, by `|π|`.
pub const DEFAULT_MAX_SCAN_TOP_LENGTH: usize = 10;

/// The order complex of an open interval `(σ, π)`.
///
/// Vertices are the interior elements in shortlex order. Faces are the
/// chains among them; only the facets (maximal chains) are stored.
#[derive(Clone)]
pub struct OrderComplex {
    bottom: Permutation,
    top: Permutation,
    vertices: Vec<Permutation>,
    /// Strictly smaller vertices, by vertex index.
    below: Vec<FixedBitSet>,
    /// Lower covers among vertices.
    covers: Vec<Vec<usize>>,
    facets: Vec<Vec<usize>>,
}

impl OrderComplex {
    /// The complex of the interior of a materialized interval of rank >= 1.
    pub fn from_interval(interval: &Interval) -> Result<Self> {
        Self::between(interval, 0, interval.top_index())
    }

    /// The complex of the open subinterval `(a, b)` of a materialized
    /// interval, given by element indices with `a < b`.
    pub fn between(interval: &Interval, a: usize, b: usize) -> Result<Self> {
        if !interval.less(a, b) {
            let rank = interval
                .element(b)
                .len()
                .saturating_sub(interval.element(a).len());
            return Err(Error::RankTooSmall { rank, min: 1 });
        }
        let interior: Vec<usize> = interval.open_between(a, b).ones().collect();
        let nv = interior.len();
        let mut local = HashMap::with_capacity(nv);
        for (k, &i) in interior.iter().enumerate() {
            local.insert(i, k);
        }
        let vertices: Vec<Permutation> = interior
            .iter()
            .map(|&i| interval.element(i).clone())
            .collect();

        let mut below = Vec::with_capacity(nv);
        let mut covers = Vec::with_capacity(nv);
        for &i in &interior {
            let mut set = FixedBitSet::with_capacity(nv);
            set.extend(
                interval
                    .strictly_below(i)
                    .ones()
                    .filter_map(|j| local.get(&j).copied()),
            );
            below.push(set);
            covers.push(
                interval
                    .lower_covers(i)
                    .iter()
                    .filter_map(|j| local.get(j).copied())
                    .collect(),
            );
        }

        let facets = interval
            .maximal_chains_between(a, b)
            .into_iter()
            .map(|chain| chain[1..chain.len() - 1].iter().map(|i| local[i]).collect())
            .collect();

        Ok(OrderComplex {
            bottom: interval.element(a).clone(),
            top: interval.element(b).clone(),
            vertices,
            below,
            covers,
            facets,
        })
    }

    pub fn bottom(&self) -> &Permutation {
        &self.bottom
    }

    pub fn top(&self) -> &Permutation {
        &self.top
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    /// Maximal chains of the open interval as increasing vertex-index
    /// lists, lexicographically ordered. The empty complex has one empty facet.
    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// `|π| - |σ| - 2`; `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        (self.top.len() - self.bottom.len()) as isize - 2
    }

    /// Number of faces in each dimension `-1..=dim`, counted as chains.
    pub fn face_counts(&self) -> Vec<u64> {
        let nv = self.vertices.len();
        let max_size = (self.dimension() + 1).max(0) as usize;
        // chains[v][s]: chains of s + 1 vertices whose top vertex is v.
        let mut chains = vec![vec![0u64; max_size]; nv];
        let mut counts = vec![0u64; max_size + 1];
        counts[0] = 1;
        for v in 0..nv {
            chains[v][0] = 1;
            for u in self.below[v].ones() {
                for s in 1..max_size {
                    chains[v][s] += chains[u][s - 1];
                }
            }
            for s in 0..max_size {
                counts[s + 1] += chains[v][s];
            }
        }
        counts
    }

    /// Every face, grouped by dimension `-1..=dim`. Exponential in size.
    pub fn faces_by_dimension(&self) -> Vec<Vec<Vec<usize>>> {
        fn extend(above: &[FixedBitSet], chain: &mut Vec<usize>, out: &mut [Vec<Vec<usize>>]) {
            out[chain.len()].push(chain.clone());
            let last = *chain.last().expect("nonempty chain");
            for next in above[last].ones() {
                chain.push(next);
                extend(above, chain, out);
                chain.pop();
            }
        }
        let nv = self.vertices.len();
        let mut above = vec![FixedBitSet::with_capacity(nv); nv];
        for (v, set) in self.below.iter().enumerate() {
            for u in set.ones() {
                above[u].insert(v);
            }
        }
        let levels = (self.dimension() + 2).max(1) as usize;
        let mut out = vec![Vec::new(); levels];
        out[0].push(Vec::new());
        for v in 0..nv {
            extend(&above, &mut vec![v], &mut out);
        }
        out
    }

    /// Connectivity of the geometric realization. The empty complex is
    /// reported as disconnected.
    pub fn is_connected(&self) -> bool {
        let all: FixedBitSet = {
            let mut s = FixedBitSet::with_capacity(self.vertices.len());
            s.insert_range(..);
            s
        };
        let mut up = vec![Vec::new(); self.vertices.len()];
        for (v, cs) in self.covers.iter().enumerate() {
            for &u in cs {
                up[u].push(v);
            }
        }
        connected_within(&all, |v| self.covers[v].iter().chain(up[v].iter()).copied())
    }
}

impl fmt::Debug for OrderComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OrderComplex(({}, {}), {} vertices, {} facets)",
            self.bottom,
            self.top,
            self.vertices.len(),
            self.facets.len()
        )
    }
}

/// Whether `members` is nonempty and connected under `neighbours`
/// (neighbours outside `members` are ignored).
fn connected_within<I>(members: &FixedBitSet, neighbours: impl Fn(usize) -> I) -> bool
where
    I: Iterator<Item = usize>,
{
    let Some(start) = members.ones().next() else {
        return false;
    };
    let mut seen = FixedBitSet::with_capacity(members.len());
    seen.insert(start);
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for u in neighbours(v) {
            if members.contains(u) && !seen.put(u) {
                reached += 1;
                stack.push(u);
            }
        }
    }
    reached == members.count_ones(..)
}

/// The order complex `Δ(σ, π)` of the open interval `(σ, π)`.
pub fn order_complex(bottom: &Permutation, top: &Permutation) -> Result<OrderComplex> {
    OrderComplex::from_interval(&build_interval(bottom, top)?)
}

/// `Σ_{i ≥ -1} (-1)^i f_i`, counting the empty face in dimension -1.
pub fn euler_characteristic(complex: &OrderComplex) -> i64 {
    complex
        .face_counts()
        .iter()
        .enumerate()
        .map(|(k, &f)| if k % 2 == 0 { -(f as i64) } else { f as i64 })
        .sum()
}

/// Reduced Betti numbers over GF(2), dimensions `-1..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    /// Always `"GF(2)"`; homology over other fields may differ when torsion is present.
    pub field: &'static str,
    /// `reduced_betti[k]` is `β̃_{k-1}`.
    pub reduced_betti: Vec<u64>,
    pub euler: i64,
}

impl BettiVector {
    /// `β̃_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.reduced_betti.get(k).copied())
            .unwrap_or(0)
    }

    /// Highest stored dimension.
    pub fn dimension(&self) -> isize {
        self.reduced_betti.len() as isize - 2
    }

    /// All homology sits in dimension `d`.
    pub fn concentrated_in(&self, d: isize) -> bool {
        (-1..=self.dimension()).all(|i| i == d || self.get(i) == 0)
    }

    /// `Σ (-1)^i β̃_i`.
    pub fn alternating_sum(&self) -> i64 {
        (-1..=self.dimension())
            .map(|i| {
                if i.rem_euclid(2) == 0 {
                    self.get(i) as i64
                } else {
                    -(self.get(i) as i64)
                }
            })
            .sum()
    }
}

/// GF(2) rank of a sparse matrix given as columns of sorted row indices,
/// by column reduction on the lowest nonzero row.
fn gf2_rank(mut columns: Vec<Vec<usize>>, rows: usize) -> usize {
    let mut owner: Vec<Option<usize>> = vec![None; rows];
    let mut rank = 0;
    for c in 0..columns.len() {
        while let Some(&low) = columns[c].last() {
            match owner[low] {
                Some(o) => {
                    let reduced = symmetric_difference(&columns[c], &columns[o]);
                    columns[c] = reduced;
                }
                None => {
                    owner[low] = Some(c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Reduced Betti numbers from boundary ranks:
/// `β̃_i = f_i - rank ∂_i - rank ∂_{i+1}`.
pub fn betti_gf2(complex: &OrderComplex) -> BettiVector {
    let faces = complex.faces_by_dimension();
    // ranks[k] = rank of the boundary map out of faces[k] (dimension k - 1).
    let mut ranks = vec![0usize; faces.len() + 1];
    for k in 1..faces.len() {
        let index: HashMap<&[usize], usize> = faces[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let columns: Vec<Vec<usize>> = faces[k]
            .iter()
            .map(|face| {
                let mut col: Vec<usize> = (0..face.len())
                    .map(|drop| {
                        let sub: Vec<usize> = face
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != drop)
                            .map(|(_, &v)| v)
                            .collect();
                        index[sub.as_slice()]
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        ranks[k] = gf2_rank(columns, faces[k - 1].len());
    }
    let reduced_betti: Vec<u64> = (0..faces.len())
        .map(|k| (faces[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    let euler = euler_characteristic(complex);
    BettiVector {
        field: "GF(2)",
        reduced_betti,
        euler,
    }
}

/// Connectivity of the open interval `(σ, π)`: interior elements joined
/// when comparable. Requires rank at least 2.
pub fn is_connected_open(bottom: &Permutation, top: &Permutation) -> Result<bool> {
    let interval = build_interval(bottom, top)?;
    if interval.rank() < 2 {
        return Err(Error::RankTooSmall {
            rank: interval.rank(),
            min: 2,
        });
    }
    Ok(open_interval_connected(&interval, 0, interval.top_index()))
}

/// Connectivity of `(a, b)` inside a materialized interval. Comparable
/// interior elements are joined by a saturated chain through the
/// interior, so Hasse edges suffice.
pub fn open_interval_connected(interval: &Interval, a: usize, b: usize) -> bool {
    let members = interval.open_between(a, b);
    connected_within(&members, |v| {
        interval
            .lower_covers(v)
            .iter()
            .chain(interval.upper_covers(v))
            .copied()
    })
}

/// Positions where an embedding is zero, as a bit mask over host positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ZeroSet {
    mask: u64,
}

impl ZeroSet {
    pub fn of(embedding: &Embedding) -> Result<Self> {
        let slots = embedding.slots();
        if slots.len() > 64 {
            return Err(Error::HostTooLong(slots.len()));
        }
        let mask = slots
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == 0)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Ok(ZeroSet { mask })
    }

    /// Union of the zero sets of several embeddings.
    pub fn union_of<'a>(sets: impl IntoIterator<Item = &'a ZeroSet>) -> ZeroSet {
        ZeroSet {
            mask: sets.into_iter().fold(0, |m, z| m | z.mask),
        }
    }

    /// 1-based positions, increasing.
    pub fn positions(&self) -> Vec<usize> {
        (0..64)
            .filter(|i| self.mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    pub fn is_disjoint(&self, other: &ZeroSet) -> bool {
        self.mask & other.mask == 0
    }
}

/// Whether the embeddings of `α` in `β` split into two nonempty groups
/// whose zero-set unions are disjoint. Embeddings with intersecting zero
/// sets must share a group, so this holds iff that intersection graph is
/// disconnected.
pub fn zero_set_partition_exists(alpha: &Permutation, beta: &Permutation) -> Result<bool> {
    if !beta.contains(alpha) {
        return Err(Error::NotContained {
            pattern: alpha.to_string(),
            host: beta.to_string(),
        });
    }
    let zero_sets = embeddings(alpha, beta)
        .iter()
        .map(ZeroSet::of)
        .collect::<Result<Vec<_>>>()?;
    if zero_sets.len() < 2 {
        return Ok(false);
    }
    let mut all = FixedBitSet::with_capacity(zero_sets.len());
    all.insert_range(..);
    let connected = connected_within(&all, |v| {
        let z = zero_sets[v];
        zero_sets
            .iter()
            .enumerate()
            .filter(move |(_, other)| !z.is_disjoint(other))
            .map(|(u, _)| u)
            .collect::<Vec<_>>()
            .into_iter()
    });
    Ok(!connected)
}

/// A subinterval `[α, β]` whose interior is disconnected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisconnectedSubinterval {
    pub bottom: Permutation,
    pub top: Permutation,
    pub rank: usize,
}

/// All `α ≤ β` in `[σ, π]` with `|β| - |α| >= min_rank` and disconnected
/// interior, sorted by `(|β|, β, α)`.
pub fn scan_disconnected_subintervals(
    bottom: &Permutation,
    top: &Permutation,
    min_rank: usize,
) -> Result<Vec<DisconnectedSubinterval>> {
    scan_disconnected_subintervals_with_limit(bottom, top, min_rank, DEFAULT_MAX_SCAN_TOP_LENGTH)
}

pub fn scan_disconnected_subintervals_with_limit(
    bottom: &Permutation,
    top: &Permutation,
    min_rank: usize,
    limit: usize,
) -> Result<Vec<DisconnectedSubinterval>> {
    if top.len() > limit {
        return Err(Error::SizeLimit {
            what: "scan top",
            len: top.len(),
            limit,
        });
    }
    let interval = build_interval_with_limit(bottom, top, limit)?;
    Ok(disconnected_subintervals_of(&interval, min_rank))
}

/// Scan over an already materialized interval.
pub fn disconnected_subintervals_of(
    interval: &Interval,
    min_rank: usize,
) -> Vec<DisconnectedSubinterval> {
    // Rank-1 intervals have an empty interior, which is not a disconnection.
    let min_rank = min_rank.max(2);
    let mut found: Vec<DisconnectedSubinterval> = (0..interval.len())
        .into_par_iter()
        .rev()
        .flat_map_iter(|b| {
            let top_len = interval.element(b).len();
            interval
                .strictly_below(b)
                .ones()
                .filter(move |&a| top_len - interval.element(a).len() >= min_rank)
                .filter(move |&a| !open_interval_connected(interval, a, b))
                .map(move |a| DisconnectedSubinterval {
                    bottom: interval.element(a).clone(),
                    top: interval.element(b).clone(),
                    rank: top_len - interval.element(a).len(),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    found.sort_by(|x, y| x.top.cmp(&y.top).then_with(|| x.bottom.cmp(&y.bottom)));
    found
}

/// The two length-six patterns that force a disconnected rank-3 subinterval.
pub fn obstruction_patterns() -> [Permutation; 2] {
    [
        Permutation::from_vec_unchecked(vec![4, 5, 6, 1, 2, 3]),
        Permutation::from_vec_unchecked(vec![3, 5, 6, 1, 2, 4]),
    ]
}

/// Which obstruction patterns `π` (one descent) contains.
pub fn shellability_obstruction(perm: &Permutation) -> Result<Vec<Permutation>> {
    let found = perm.descent_count();
    if found != 1 {
        return Err(Error::WrongDescentCount {
            perm: perm.to_string(),
            expected: 1,
            found,
        });
    }
    Ok(obstruction_patterns()
        .into_iter()
        .filter(|o| perm.contains(o))
        .collect())
}

/// Betti numbers of `Δ(1, π)` next to those of `Δ(21, π)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuspensionReport {
    pub from_one: BettiVector,
    pub from_two_one: BettiVector,
    /// `β̃_n(Δ(1, π)) = β̃_{n-1}(Δ(21, π))` for every `n >= 0`, and
    /// `β̃₋₁(Δ(1, π)) = 0`.
    pub shift_holds: bool,
    /// `β̃₀(Δ(1, π)) = 0`.
    pub reduced_zero_vanishes: bool,
}

pub fn suspension_report(perm: &Permutation) -> Result<SuspensionReport> {
    let found = perm.descent_count();
    if found != 1 {
        return Err(Error::WrongDescentCount {
            perm: perm.to_string(),
            expected: 1,
            found,
        });
    }
    if perm.len() < 3 {
        return Err(Error::TooShort {
            min: 3,
            len: perm.len(),
        });
    }
    let two_one = Permutation::from_vec_unchecked(vec![2, 1]);
    let from_one = betti_gf2(&order_complex(&Permutation::one(), perm)?);
    let from_two_one = betti_gf2(&order_complex(&two_one, perm)?);
    let top = from_one.dimension().max(from_two_one.dimension() + 1);
    let shift_holds =
        from_one.get(-1) == 0 && (0..=top).all(|n| from_one.get(n) == from_two_one.get(n - 1));
    let reduced_zero_vanishes = from_one.get(0) == 0;
    Ok(SuspensionReport {
        from_one,
        from_two_one,
        shift_holds,
        reduced_zero_vanishes,
    })
}

/// `Δ(1, π)` has the Betti numbers of a suspension of `Δ(21, π)`.
///
/// The comparison runs over the whole reduced range, so for `|π| = 3`,
/// where `Δ(21, π)` is empty, it expects `β̃₀(Δ(1, π)) = 1`.
pub fn suspension_betti_check(perm: &Permutation) -> Result<bool> {
    Ok(suspension_report(perm)?.shift_holds)
}

/// For `σ < π` with equal descent counts: homology vanishes below the top
/// dimension `|π| - |σ| - 2` and the top Betti number equals `|μ(σ, π)|`.
pub fn wedge_check(bottom: &Permutation, top: &Permutation) -> Result<bool> {
    let mu = mobius_fixed_descent(bottom, top)?;
    if bottom.len() >= top.len() {
        return Err(Error::RankTooSmall { rank: 0, min: 1 });
    }
    let complex = order_complex(bottom, top)?;
    let betti = betti_gf2(&complex);
    let d = complex.dimension();
    Ok(betti.concentrated_in(d) && betti.get(d) == mu.unsigned_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::mobius_recursive;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn complex_of_small_interval() {
        let c = order_complex(&p("21"), &p("3412")).unwrap();
        assert_eq!(c.vertices(), &[p("231"), p("312")]);
        assert_eq!(c.facets(), &[vec![0], vec![1]]);
        assert_eq!(c.dimension(), 0);

        let empty = order_complex(&p("21"), &p("231")).unwrap();
        assert!(empty.vertices().is_empty());
        assert_eq!(empty.facets(), &[Vec::<usize>::new()]);
        assert_eq!(euler_characteristic(&empty), -1);
        let b = betti_gf2(&empty);
        assert_eq!(b.reduced_betti, vec![1]);

        let c = order_complex(&Permutation::one(), &p("24513")).unwrap();
        let (x, y) = (
            c.vertices().iter().position(|v| *v == p("21")).unwrap(),
            c.vertices().iter().position(|v| *v == p("2341")).unwrap(),
        );
        assert!(c.facets().iter().any(|f| f.contains(&x) && f.contains(&y)));
        let interval = build_interval(&Permutation::one(), &p("24513")).unwrap();
        assert_eq!(c.facets().len(), interval.maximal_chains().len());
        assert!(c.facets().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn euler_examples() {
        let c = order_complex(&p("21"), &p("3412")).unwrap();
        assert_eq!(euler_characteristic(&c), 1);
        let c = order_complex(&Permutation::one(), &p("246135")).unwrap();
        assert_eq!(euler_characteristic(&c), -6);
    }

    #[test]
    fn face_counts_match_enumeration() {
        let c = order_complex(&Permutation::one(), &p("25314")).unwrap();
        let faces = c.faces_by_dimension();
        let enumerated: Vec<u64> = faces.iter().map(|f| f.len() as u64).collect();
        assert_eq!(enumerated, c.face_counts());
    }

    #[test]
    fn betti_examples() {
        let b = betti_gf2(&order_complex(&p("21"), &p("3412")).unwrap());
        assert_eq!(b.reduced_betti, vec![0, 1]);
        assert_eq!(b.field, "GF(2)");

        // Rank 3, equal descents: concentrated in dimension 1.
        let (s, t) = (p("21"), p("24153"));
        let b = betti_gf2(&order_complex(&s, &t).unwrap());
        let mu = mobius_recursive(&s, &t).unwrap();
        assert!(b.concentrated_in(1));
        assert_eq!(b.get(1), mu.unsigned_abs());

        let b = betti_gf2(&order_complex(&p("123"), &p("456123")).unwrap());
        assert!(b.get(0) >= 1);
        assert_eq!(b.alternating_sum(), b.euler);
    }

    #[test]
    fn connectivity_examples() {
        assert!(!is_connected_open(&p("123"), &p("456123")).unwrap());
        assert!(!is_connected_open(&p("123"), &p("356124")).unwrap());
        assert!(!is_connected_open(&p("21"), &p("3412")).unwrap());
        assert!(is_connected_open(&Permutation::one(), &p("2413")).unwrap());
        assert!(matches!(
            is_connected_open(&p("21"), &p("231")),
            Err(Error::RankTooSmall { rank: 1, min: 2 })
        ));
    }

    #[test]
    fn zero_set_examples() {
        assert!(zero_set_partition_exists(&p("123"), &p("456123")).unwrap());
        assert!(!zero_set_partition_exists(&p("2413"), &p("2413")).unwrap());
        assert!(!zero_set_partition_exists(&p("213"), &p("245136")).unwrap());

        let emb: HashMap<String, ZeroSet> = embeddings(&p("213"), &p("245136"))
            .iter()
            .map(|e| (e.to_string(), ZeroSet::of(e).unwrap()))
            .collect();
        assert_eq!(emb["200130"].positions(), vec![2, 3, 6]);
        assert_eq!(emb["200103"].positions(), vec![2, 3, 5]);
        assert_eq!(emb["020103"].positions(), vec![1, 3, 5]);
        let union = ZeroSet::union_of([&emb["200130"], &emb["200103"], &emb["020103"]]);
        assert_eq!(union.positions(), vec![1, 2, 3, 5, 6]);
    }

    #[test]
    fn scan_examples() {
        let found = scan_disconnected_subintervals(&Permutation::one(), &p("456123"), 3).unwrap();
        assert!(found.contains(&DisconnectedSubinterval {
            bottom: p("123"),
            top: p("456123"),
            rank: 3
        }));
        assert!(
            scan_disconnected_subintervals(&Permutation::one(), &p("13524"), 3)
                .unwrap()
                .is_empty()
        );
        assert!(scan_disconnected_subintervals(&p("12"), &p("3412"), 3)
            .unwrap()
            .is_empty());
        assert!(matches!(
            scan_disconnected_subintervals(&Permutation::one(), &Permutation::identity(11), 3),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn obstruction_examples() {
        assert_eq!(
            shellability_obstruction(&p("456123")).unwrap(),
            vec![p("456123")]
        );
        assert!(shellability_obstruction(&p("13524")).unwrap().is_empty());
        assert_eq!(
            shellability_obstruction(&p("4567123")).unwrap(),
            vec![p("456123")]
        );
        assert!(shellability_obstruction(&p("2143")).is_err());
    }

    #[test]
    fn suspension_examples() {
        let r = suspension_report(&p("3412")).unwrap();
        assert_eq!(r.from_two_one.reduced_betti, vec![0, 1]);
        assert_eq!(r.from_one.reduced_betti, vec![0, 0, 1]);
        assert!(r.shift_holds && r.reduced_zero_vanishes);

        let r = suspension_report(&p("246135")).unwrap();
        assert!(r.shift_holds);
        assert_eq!(r.from_one.get(r.from_one.dimension()), 6);

        // Length three: Δ(21, π) is empty, so its suspension is two points.
        let r = suspension_report(&p("132")).unwrap();
        assert_eq!(r.from_one.reduced_betti, vec![0, 1]);
        assert!(r.shift_holds);
        assert!(!r.reduced_zero_vanishes);
    }

    #[test]
    fn wedge_examples() {
        assert!(wedge_check(&p("21"), &p("3412")).unwrap());
        assert!(wedge_check(&p("21"), &p("231")).unwrap());
        assert!(wedge_check(&p("213"), &p("2143")).is_err());
    }

    #[test]
    fn gf2_rank_small() {
        // Boundary of a triangle's edges onto its vertices has rank 2.
        let cols = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        assert_eq!(gf2_rank(cols, 3), 2);
    }
}
