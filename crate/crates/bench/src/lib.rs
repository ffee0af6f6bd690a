//! Shared inputs for the benchmarks.

use descent_poset::Permutation;

pub fn perm(text: &str) -> Permutation {
    text.parse().expect("benchmark input is a permutation")
}

/// Same-descent pairs of growing size, as `(label, bottom, top)`.
pub fn fixed_descent_pairs() -> Vec<(&'static str, Permutation, Permutation)> {
    [
        ("n6", "213", "142356"),
        ("n7", "21", "2461357"),
        ("n8", "132", "24681357"),
        ("n9", "2143", "351624789"),
    ]
    .into_iter()
    .map(|(label, b, t)| (label, perm(b), perm(t)))
    .collect()
}

/// One-descent tops for the `μ(1, π)` comparisons.
pub fn one_descent_tops() -> Vec<Permutation> {
    ["246135", "2461357", "24681357", "135792468"]
        .into_iter()
        .map(perm)
        .collect()
}
