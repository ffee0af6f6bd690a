//! Exact computations in the poset of permutations ordered by pattern
//! containment, focused on permutations with a fixed number of descents.
//!
//! Permutations with `k` descents correspond, through their run indices,
//! to words with maximum letter `k + 1` under subword order. That
//! correspondence gives a fast Möbius function (a signed count of normal
//! embeddings) which is checked here against the defining recursion, the
//! reduced Euler characteristic of the order complex, and its GF(2) Betti
//! numbers.
//!
//! ```
//! use descent_poset::{classify_one_descent, mobius_recursive, perm_to_word, Permutation};
//!
//! let pi: Permutation = "263415".parse()?;
//! assert_eq!(perm_to_word(&pi).to_string(), "312231");
//!
//! let top: Permutation = "246135".parse()?;
//! assert_eq!(classify_one_descent(&top)?.value, -6);
//! assert_eq!(mobius_recursive(&Permutation::one(), &top)?, -6);
//! # Ok::<(), descent_poset::Error>(())
//! ```

pub mod bijection;
pub mod error;
pub mod moebius;
pub mod perm;
mod text;
pub mod topology;
pub mod verify;
pub mod word;

pub use bijection::{perm_to_word, word_to_perm};
pub use error::{Error, Result};
pub use moebius::{
    build_interval, classify_one_descent, mobius_bottom_closed_form, mobius_fixed_descent,
    mobius_from_one, mobius_recursive, Interval, OneDescentCase, OneDescentClassification, TopKind,
};
pub use perm::{parse_permutation, Embedding, Permutation};
pub use topology::{betti_gf2, euler_characteristic, order_complex, BettiVector, OrderComplex};
pub use word::{parse_word, Word};
