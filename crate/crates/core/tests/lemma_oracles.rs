//! Brute-force oracles for the profile-level facts and bounds.

mod common;

use common::forced_by_enumeration;
use gallai_books::bounds::{self, PartProfile};
use gallai_books::lemmas::{check_claim_57_bounds, for_each_partition, forced_book_in_mono_quotient};

#[test]
fn forcing_criterion_matches_enumeration() {
    let mut checked = 0;
    for total in 2..=9 {
        for_each_partition(total, 4, &mut |sizes| {
            if sizes.len() < 2 {
                return;
            }
            for m in 1..=5 {
                let p = PartProfile::new(sizes.to_vec());
                assert_eq!(
                    forced_book_in_mono_quotient(&p, m).unwrap(),
                    forced_by_enumeration(sizes, m),
                    "{sizes:?} m={m}"
                );
                checked += 1;
            }
        });
    }
    assert!(checked > 100);
}

/// Maximum total over all profiles with parts below `m` meeting the per-size
/// caps, by exhaustive search over part counts.
fn brute_profile_max(m: usize) -> usize {
    let r = [0, 6, 10, 14, 18, 21];
    let caps: Vec<usize> = (1..m).map(|i| r[m.div_ceil(i)] - 1).collect();
    let mut best = 0;
    let mut counts = vec![0usize; m];
    fn go(size: usize, m: usize, caps: &[usize], counts: &mut Vec<usize>, best: &mut usize) {
        if size == m {
            let ok = (1..m).all(|i| counts[i..].iter().sum::<usize>() <= caps[i - 1]);
            if ok {
                *best = (*best).max((1..m).map(|s| s * counts[s]).sum());
            }
            return;
        }
        for c in 0..=caps[0] {
            counts[size] = c;
            go(size + 1, m, caps, counts, best);
        }
        counts[size] = 0;
    }
    go(1, m, &caps, &mut counts, &mut best);
    best
}

#[test]
fn profile_maximum_matches_restricted_sum() {
    for m in 2..=5 {
        let (v, profile) = bounds::profile_max_vertices(m).unwrap();
        assert_eq!(v as usize, brute_profile_max(m), "m={m}");
        assert_eq!(v, bounds::r_prime(m).unwrap());
        assert_eq!(profile.total() as u64, v);
        assert!(profile.max_size() < m);
    }
}

#[test]
fn claim_bounds_over_all_small_profiles() {
    // Cross-check the counter arithmetic against direct counting.
    for total in 1..=16 {
        for_each_partition(total, 4, &mut |sizes| {
            let p = PartProfile::new(sizes.to_vec());
            let count = |x| sizes.iter().filter(|&&s| s == x).count();
            let expected = count(4) + count(3) <= 9 && count(4) + count(3) + count(2) <= 12;
            assert_eq!(check_claim_57_bounds(&p).unwrap(), expected);
        });
    }
}
