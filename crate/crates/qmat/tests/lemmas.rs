mod common;

use common::*;
use proptest::prelude::*;
use qmat_core::QMatroid;

#[test]
fn gaussian_counts_small() {
    for q in [2, 3] {
        for n in 0..=4 {
            gaussian_counts(q, n).unwrap();
        }
    }
}

#[test]
fn complements_small() {
    for f in 0..=3 {
        direct_complements(2, f).unwrap();
        direct_complements(3, f).unwrap();
    }
}

#[test]
fn extend_spaces_small() {
    for (n1, n2) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        extend_spaces(2, n1, n2).unwrap();
        extend_spaces(3, n1, n2).unwrap();
    }
}

#[test]
fn loop_plus_coloop_rank() {
    let m1 = QMatroid::uniform(1, 1, 2).unwrap();
    let m2 = QMatroid::uniform(1, 2, 2).unwrap();
    direct_sum_rank(&m1, &m2).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flock_sizes_random(q in prop::sample::select(vec![2u32, 3]), n in 1u32..=4, k in 0u32..=3, seed: u64) {
        let m = random_represented(q, k.min(n), n, seed);
        prop_assert_eq!(flock_sizes(&m), Ok(()));
    }

    #[test]
    fn restrict_contract_random(n in 1u32..=4, k in 0u32..=3, seed: u64) {
        let m = random_represented(2, k.min(n), n, seed);
        prop_assert_eq!(restrict_contract(&m), Ok(()));
    }

    #[test]
    fn free_and_trivial_summands(q in prop::sample::select(vec![2u32, 3]), n1 in 1u32..=3, n2 in 1u32..=2, k in 0u32..=2, seed: u64) {
        let m1 = random_represented(q, k.min(n1), n1, seed);
        prop_assert_eq!(flats_free_trivial(&m1, n2), Ok(()));
    }

    #[test]
    fn direct_sum_rank_random(n1 in 1u32..=3, n2 in 1u32..=2, k1 in 0u32..=2, k2 in 0u32..=2, seed: u64) {
        let m1 = random_represented(2, k1.min(n1), n1, seed);
        let m2 = random_represented(2, k2.min(n2), n2, seed.wrapping_add(1));
        prop_assert_eq!(direct_sum_rank(&m1, &m2), Ok(()));
    }
}
