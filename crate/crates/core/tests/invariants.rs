//! Structural invariants as properties.

use gapped_repeats::checks::{all_passed, check_word, CheckId};
use gapped_repeats::covering::{covers, to_point, CoverBox};
use gapped_repeats::rational::{int, ratio};
use gapped_repeats::{
    bound_value, class_census, enumerate_constrained, enumerate_maximal_gapped_repeats,
    enumerate_runs, filter_repeats, sum_of_exponents, GapConstraint,
};
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    (2u8..=3).prop_flat_map(move |sigma| {
        prop::collection::vec((0..sigma).prop_map(|x| b'a' + x), 1..=max_len)
    })
}

fn alpha(num: i128, den: i128, n: usize) -> GapConstraint {
    GapConstraint::alpha(ratio(num, den), n as u64).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn repeats_are_valid_and_sorted(w in word(60)) {
        let reps = enumerate_maximal_gapped_repeats(&w);
        prop_assert!(reps.windows(2).all(|p| p[0].sort_key() < p[1].sort_key()));
        for r in &reps {
            prop_assert!(r.is_valid_in(&w));
            prop_assert!(r.period > r.copy_len);
        }
    }

    #[test]
    fn runs_bounds(w in word(120)) {
        let runs = enumerate_runs(&w);
        let n = w.len() as i128;
        prop_assert!(runs.len() as i128 <= n);
        prop_assert!(sum_of_exponents(&w) <= int(3 * n));
        for r in &runs {
            prop_assert!(r.exponent >= int(2));
        }
    }

    #[test]
    fn alpha_filter_is_monotone(w in word(60), a in 1i128..6, b in 1i128..6) {
        let n = w.len();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let small = enumerate_constrained(&w, &alpha(lo + 1, 1, n)).unwrap();
        let large = enumerate_constrained(&w, &alpha(hi + 1, 1, n)).unwrap();
        prop_assert!(small.iter().all(|r| large.contains(r)));
    }

    #[test]
    fn filter_of_all_equals_direct(w in word(60)) {
        let con = GapConstraint::parse("band:1:5", w.len() as u64).unwrap();
        let all = enumerate_maximal_gapped_repeats(&w);
        prop_assert_eq!(filter_repeats(&all, &con).unwrap(), enumerate_constrained(&w, &con).unwrap());
    }

    #[test]
    fn census_reconciles(w in word(60), num in 3i128..9) {
        let census = class_census(&w, &alpha(num, 2, w.len())).unwrap();
        prop_assert!(census.reconciles());
    }

    #[test]
    fn count_within_bound(w in word(80)) {
        let con = alpha(2, 1, w.len());
        let count = enumerate_constrained(&w, &con).unwrap().len() as i128;
        prop_assert!(int(count) <= bound_value(w.len() as u64, &con.stats()));
    }

    #[test]
    fn points_cover_themselves(w in word(40)) {
        for r in enumerate_maximal_gapped_repeats(&w) {
            let p = to_point(&r);
            prop_assert!(covers(&CoverBox::above(p), &p) && covers(&CoverBox::below(p), &p));
        }
    }

    #[test]
    fn lemma_checks_hold(w in word(48), spec in prop::sample::select(vec!["alpha:3/2", "alpha:2", "alpha:4", "band:1:10"])) {
        let con = GapConstraint::parse(spec, w.len() as u64).unwrap();
        let reports = check_word(&w, &con, &CheckId::ALL).unwrap();
        prop_assert!(all_passed(&reports), "{:?}", reports.iter().find(|r| !r.passed()));
    }
}
