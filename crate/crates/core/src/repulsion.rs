//! Distance from `p_B(n)` to the nearest `k`-th power,
//! `min_{m >= 0} |p_B(n) - m^k|`, and scans for indices where it is small.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::partition::{p_single, p_table, PartitionTable};

/// Largest `m >= 0` with `m^k <= v`, checked on both sides.
pub fn ikroot(v: &BigInt, k: u32) -> BigInt {
    assert!(k >= 2, "ikroot needs k >= 2");
    assert!(!v.is_negative(), "ikroot of a negative value");
    let mut m = v.nth_root(k);
    while num_traits::pow(m.clone(), k as usize) > *v {
        m -= 1;
    }
    while num_traits::pow(&m + 1u32, k as usize) <= *v {
        m += 1;
    }
    m
}

/// Base, signed offset `p - m^k` and distance of the nearest `k`-th power
/// to `p >= 0`. Ties go to the smaller base.
pub fn nearest_power(p: &BigInt, k: u32) -> (BigInt, BigInt, BigInt) {
    let lo = ikroot(p, k);
    let lo_pow = num_traits::pow(lo.clone(), k as usize);
    let hi_pow = num_traits::pow(&lo + 1u32, k as usize);
    let below = p - &lo_pow;
    let above = &hi_pow - p;
    if below <= above {
        (lo, below.clone(), below)
    } else {
        (lo + 1u32, -above.clone(), above)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hit {
    #[serde(rename = "B")]
    pub bound: u32,
    pub k: u32,
    pub n: u64,
    #[serde(serialize_with = "decimal")]
    pub p: BigInt,
    #[serde(serialize_with = "decimal")]
    pub m: BigInt,
    #[serde(serialize_with = "decimal")]
    pub t: BigInt,
    #[serde(serialize_with = "decimal")]
    pub delta: BigInt,
}

fn decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Hit {
    /// Distance record for a known value `p = p_B(n)`.
    pub fn new(bound: u32, k: u32, n: u64, p: BigInt) -> Hit {
        let (m, t, delta) = nearest_power(&p, k);
        Hit {
            bound,
            k,
            n,
            p,
            m,
            t,
            delta,
        }
    }

    /// `p - m^k == t` and `|t| == delta`, recomputed from scratch.
    pub fn verify(&self) -> bool {
        let pw = num_traits::pow(self.m.clone(), self.k as usize);
        &self.p - pw == self.t && self.t.abs() == self.delta
    }
}

/// `Δ_k^(B)(n)` together with the achieving base.
pub fn delta(bound: u32, k: u32, n: u64) -> Hit {
    assert!(k >= 2, "exponent must be at least 2");
    Hit::new(bound, k, n, p_single(bound, n as usize))
}

pub const DEFAULT_CHUNK: usize = 4096;

/// Hits with `1 <= n <= horizon` and distance at most `tolerance`, in
/// increasing `n`.
pub fn scan(bound: u32, k: u32, horizon: u64, tolerance: &BigInt) -> Vec<Hit> {
    let table = p_table(bound, horizon as usize);
    scan_table(&table, k, horizon, tolerance, DEFAULT_CHUNK)
}

/// [`scan`] over a prebuilt table, split into `chunk`-sized ranges that are
/// processed in parallel. The output does not depend on `chunk` or on the
/// number of worker threads.
pub fn scan_table(
    table: &PartitionTable,
    k: u32,
    horizon: u64,
    tolerance: &BigInt,
    chunk: usize,
) -> Vec<Hit> {
    assert!(k >= 2, "exponent must be at least 2");
    assert!(
        horizon as usize <= table.max_index(),
        "table ends before the scan horizon"
    );
    let chunk = chunk.max(1) as u64;
    let starts: Vec<u64> = (1..=horizon).step_by(chunk as usize).collect();
    let per_chunk: Vec<Vec<Hit>> = starts
        .into_par_iter()
        .map(|start| {
            let end = (start + chunk - 1).min(horizon);
            (start..=end)
                .filter_map(|n| {
                    let hit = Hit::new(table.bound(), k, n, table.values()[n as usize].clone());
                    (hit.delta <= *tolerance).then_some(hit)
                })
                .collect()
        })
        .collect();
    per_chunk.into_iter().flatten().collect()
}

/// `n = 2(m^k - 1)`, an index with `p_2(n) = m^k`.
pub fn p2_family(m: &BigInt, k: u32) -> BigInt {
    assert!(m >= &BigInt::one() && k >= 2, "needs m >= 1 and k >= 2");
    let power = num_traits::pow(m.clone(), k as usize);
    let n: BigInt = (&power - 1u32) * 2u32;
    // p_2(n) = floor(n/2) + 1
    assert_eq!(&n / 2u32 + 1u32, power);
    if n <= BigInt::from(100_000u32) {
        let small = u64::try_from(&n).expect("checked above") as usize;
        assert_eq!(p_single(2, small), power);
    }
    n
}
