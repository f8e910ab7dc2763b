//! Fast algorithms against the brute-force oracle on random words.

use gapped_repeats::oracle::*;
use gapped_repeats::runs::RunIndex;
use gapped_repeats::word::{
    exponent, longest_periodic_prefix, longest_periodic_suffix, minimal_period,
};
use gapped_repeats::{
    classify_repeat, enumerate_maximal_gapped_repeats, enumerate_runs, extend_to_run,
    sum_of_exponents,
};
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    (2u8..=4).prop_flat_map(move |sigma| {
        prop::collection::vec((0..sigma).prop_map(|x| b'a' + x), 0..=max_len)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn repeats_match_oracle(w in word(48)) {
        prop_assert_eq!(enumerate_maximal_gapped_repeats(&w), naive_maximal_gapped_repeats(&w));
    }

    #[test]
    fn runs_match_oracle(w in word(48)) {
        prop_assert_eq!(enumerate_runs(&w), naive_runs(&w));
        prop_assert_eq!(sum_of_exponents(&w), naive_sum_of_exponents(&w));
    }

    #[test]
    fn periods_match_oracle(w in word(40)) {
        prop_assume!(!w.is_empty());
        prop_assert_eq!(minimal_period(&w).unwrap(), naive_minimal_period(&w).unwrap());
        prop_assert_eq!(exponent(&w).unwrap(), naive_exponent(&w).unwrap());
        prop_assert_eq!(longest_periodic_prefix(&w), naive_longest_periodic_prefix(&w));
        prop_assert_eq!(longest_periodic_suffix(&w), naive_longest_periodic_suffix(&w));
    }

    #[test]
    fn extension_matches_oracle(w in word(40), a in 0usize..40, len in 2usize..20, q in 1usize..10) {
        let beg = a % w.len().max(1) + 1;
        let end = beg + len - 1;
        prop_assume!(end <= w.len() && 2 * q <= len);
        let fast = extend_to_run(&w, beg, end, q).ok();
        prop_assert_eq!(fast, naive_extend(&w, beg, end, q));
    }

    #[test]
    fn major_class_matches_oracle(w in word(32)) {
        let runs = RunIndex::of_word(&w);
        for rep in enumerate_maximal_gapped_repeats(&w) {
            let fast = classify_repeat(&w, &rep, &runs).unwrap();
            prop_assert_eq!(fast.class.major(), naive_major_class(&w, &rep), "{:?}", rep);
        }
    }
}
