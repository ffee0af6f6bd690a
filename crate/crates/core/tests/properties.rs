use descent_poset::moebius::mobius_recursive;
use descent_poset::perm::{
    count_normal_embeddings, embeddings, occurrences, tail_positions, Permutation,
};
use descent_poset::topology::{betti_gf2, euler_characteristic, order_complex};
use descent_poset::word::{
    count_normal_word_embeddings, is_ahat_member, is_generalized_subword, is_subword,
    word_embeddings, word_tail_positions, Word,
};
use descent_poset::{mobius_fixed_descent, perm_to_word, word_to_perm};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn perm(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|letters| Permutation::new(letters).unwrap())
}

/// A host and one of its patterns, read off a random set of positions.
fn pattern_pair(max: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    perm(max).prop_flat_map(|pi| {
        let n = pi.len();
        (Just(pi), subsequence((0..n).collect::<Vec<_>>(), 1..=n)).prop_map(|(pi, keep)| {
            let sub: Vec<u32> = keep.iter().map(|&i| pi.letters()[i]).collect();
            (Permutation::standardize(&sub).unwrap(), pi)
        })
    })
}

fn word(max_len: usize, max_letter: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=max_letter, 1..=max_len).prop_map(|l| Word::new(l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn permutation_text_round_trips(pi in perm(12)) {
        let text = pi.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), pi);
    }

    #[test]
    fn word_text_round_trips(w in word(12, 12)) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }

    #[test]
    fn encoding_round_trips(pi in perm(10)) {
        let w = perm_to_word(&pi);
        prop_assert!(is_ahat_member(&w));
        prop_assert_eq!(w.max_letter() as usize, pi.descent_count() + 1);
        prop_assert_eq!(word_to_perm(&w).unwrap(), pi);
    }

    #[test]
    fn decoding_accepts_exactly_the_class(w in word(7, 4)) {
        prop_assert_eq!(word_to_perm(&w).is_ok(), is_ahat_member(&w));
    }

    #[test]
    fn patterns_have_no_more_descents((sigma, pi) in pattern_pair(9)) {
        prop_assert!(pi.contains(&sigma));
        prop_assert!(sigma.descent_count() <= pi.descent_count());
        prop_assert!(is_generalized_subword(&perm_to_word(&sigma), &perm_to_word(&pi)));
    }

    #[test]
    fn containment_is_transitive((sigma, tau) in pattern_pair(6), pi in perm(8)) {
        if pi.contains(&tau) {
            prop_assert!(pi.contains(&sigma));
        }
    }

    #[test]
    fn embeddings_match_occurrences((sigma, pi) in pattern_pair(8)) {
        let all = embeddings(&sigma, &pi);
        prop_assert_eq!(all.len(), occurrences(&sigma, &pi).len());
        for e in &all {
            prop_assert_eq!(e.guest_letters(), sigma.letters().to_vec());
            prop_assert_eq!(e.slots().len(), pi.len());
        }
    }

    #[test]
    fn normal_count_matches_filter((sigma, pi) in pattern_pair(9)) {
        let tails = tail_positions(&pi);
        let filtered = embeddings(&sigma, &pi).iter().filter(|e| e.covers_all(&tails)).count();
        prop_assert_eq!(count_normal_embeddings(&sigma, &pi).unwrap(), filtered as u64);
    }

    #[test]
    fn word_normal_count_matches_filter(v in word(4, 3), w in word(8, 3)) {
        let tails = word_tail_positions(&w);
        let filtered = word_embeddings(&v, &w).iter().filter(|e| e.covers_all(&tails)).count();
        prop_assert_eq!(count_normal_word_embeddings(&v, &w).unwrap(), filtered as u64);
    }

    #[test]
    fn subword_order_is_antisymmetric(v in word(6, 3), w in word(6, 3)) {
        if is_subword(&v, &w) && is_subword(&w, &v) {
            prop_assert_eq!(&v, &w);
        }
        if is_subword(&v, &w) {
            prop_assert!(is_generalized_subword(&v, &w));
        }
    }

    #[test]
    fn fast_mobius_matches_recursion((sigma, pi) in pattern_pair(8)) {
        if sigma.descent_count() == pi.descent_count() {
            let fast = mobius_fixed_descent(&sigma, &pi).unwrap();
            prop_assert_eq!(fast, mobius_recursive(&sigma, &pi).unwrap());
        } else {
            prop_assert!(mobius_fixed_descent(&sigma, &pi).is_err());
        }
    }

    #[test]
    fn euler_characteristic_is_mobius((sigma, pi) in pattern_pair(7)) {
        prop_assume!(sigma != pi);
        let complex = order_complex(&sigma, &pi).unwrap();
        let mu = mobius_recursive(&sigma, &pi).unwrap();
        prop_assert_eq!(euler_characteristic(&complex), mu);
        prop_assert_eq!(betti_gf2(&complex).alternating_sum(), mu);
    }
}
