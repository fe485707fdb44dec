use num_bigint::BigInt;
use proptest::prelude::*;
use repulsion_core::partition::{shared_table, PartitionError, PartitionTable, TableCache};
use repulsion_core::{p_brute, p_brute_parts, p_single, p_table};

#[test]
fn table_matches_enumeration() {
    for b in 1..=6 {
        for n in 0..=40 {
            assert_eq!(p_single(b, n), p_brute(b, n as u64).unwrap(), "B={b} n={n}");
        }
    }
}

#[test]
fn conjugate_count_agrees() {
    for b in 1..=6 {
        for n in 0..=40u64 {
            assert_eq!(p_brute(b, n).unwrap(), p_brute_parts(b, n).unwrap());
        }
    }
}

#[test]
fn brute_force_is_guarded() {
    assert!(matches!(
        p_brute(3, 61),
        Err(PartitionError::BruteForceGuard { .. })
    ));
}

#[test]
fn unrestricted_values() {
    // p(n) once B >= n
    let p: Vec<u64> = vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135];
    for (n, v) in p.iter().enumerate() {
        assert_eq!(p_single(20, n), BigInt::from(*v));
    }
    assert_eq!(p_single(100, 100), "190569292".parse::<BigInt>().unwrap());
}

#[test]
fn machine_width_overflow_is_reported() {
    assert!(matches!(
        PartitionTable::<u8>::try_build(3, 100),
        Err(PartitionError::Overflow { .. })
    ));
    let small = PartitionTable::<u64>::try_build(4, 500).unwrap();
    let exact = p_table(4, 500);
    for n in 0..=500 {
        assert_eq!(BigInt::from(small.values()[n]), exact.values()[n]);
    }
}

#[test]
fn cache_round_trip_and_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let big = cache.load_or_build(5, 300).unwrap();
    assert!(cache.path_for(5, 300).exists());
    let prefix = cache.load_or_build(5, 120).unwrap();
    assert_eq!(prefix.max_index(), 120);
    assert_eq!(prefix.values(), &big.values()[..=120]);
    // no new file for the smaller request
    assert_eq!(cache.entries(5).len(), 1);
}

#[test]
fn tampered_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    cache.load_or_build(3, 50).unwrap();
    let path = cache.path_for(3, 50);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
    lines[20] = "999".to_string();
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    assert!(matches!(
        cache.load_or_build(3, 50),
        Err(PartitionError::Certification { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stabilizes_once_bound_reaches_n(n in 0usize..=60, extra in 0u32..=10) {
        let b = n as u32;
        prop_assert_eq!(p_single(b.max(1) + extra, n), p_single(b.max(1), n));
    }

    #[test]
    fn monotone_in_bound(b in 1u32..=10, n in 0usize..=400) {
        prop_assert!(p_single(b, n) <= p_single(b + 1, n));
    }

    #[test]
    fn layer_recurrence(b in 2u32..=8, n in 0usize..=400) {
        // p_B(n) = p_{B-1}(n) + p_B(n - B)
        let lower = if n >= b as usize { p_single(b, n - b as usize) } else { BigInt::from(0) };
        prop_assert_eq!(p_single(b, n), p_single(b - 1, n) + lower);
    }

    #[test]
    fn shared_and_fresh_tables_agree(b in 1u32..=7, n in 0usize..=300) {
        let shared = shared_table(b, n);
        let fresh = p_table(b, n);
        prop_assert_eq!(&shared.values()[..=n], fresh.values());
        prop_assert!(fresh.certify().is_ok());
    }

    #[test]
    fn serialization_round_trip(b in 1u32..=6, n in 0usize..=200) {
        let t = p_table(b, n);
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let back = PartitionTable::read_from(buf.as_slice()).unwrap();
        prop_assert_eq!(back, t);
    }
}
