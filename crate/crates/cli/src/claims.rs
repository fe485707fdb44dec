//! The numerical claims re-checked by `repulsion reproduce`, one function
//! per claim. Each returns a short summary on success and the first
//! discrepancy on failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repulsion_core::partition::{PartitionTable, TableCache};
use repulsion_core::quasipoly::leading_coefficient;
use repulsion_core::repulsion::scan_table;
use repulsion_core::shift::theorem_hypotheses;
use repulsion_core::{
    classify_progression, exceptional_shifts, extract, family, int, p_brute, p_brute_parts,
    p_single, qp_eval, rat, Hit, RatPoly, Rational, ShiftClass,
};

type Check = fn(&TableCache) -> Result<String, String>;

#[derive(Clone)]
pub struct Claim {
    pub id: u32,
    pub group: &'static str,
    pub name: &'static str,
    pub limit: Option<Duration>,
    check: Check,
}

#[derive(Debug, Clone)]
pub struct ClaimResult {
    pub id: u32,
    pub group: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl ClaimResult {
    pub fn line(&self) -> String {
        let limit = self
            .limit
            .map(|l| format!(" (limit {:.0}s)", l.as_secs_f64()))
            .unwrap_or_default();
        format!(
            "{} [{:>2}] {:<9} {}: {} [{:.2}s{}]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.group,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64(),
            limit
        )
    }
}

impl Claim {
    pub fn run(&self, cache: &TableCache) -> ClaimResult {
        let start = Instant::now();
        let result = (self.check)(cache);
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if let Some(limit) = self.limit.filter(|&l| passed && elapsed > l) {
            passed = false;
            detail = format!("{detail}; took longer than {:.0}s", limit.as_secs_f64());
        }
        ClaimResult {
            id: self.id,
            group: self.group,
            name: self.name,
            passed,
            detail,
            elapsed,
            limit: self.limit,
        }
    }
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

pub fn all() -> Vec<Claim> {
    let c = |id, group, name, limit, check| Claim {
        id,
        group,
        name,
        limit,
        check,
    };
    vec![
        c(
            1,
            "quasi",
            "B=3 quasipolynomial table",
            secs(1),
            quasi_b3 as Check,
        ),
        c(
            2,
            "partition",
            "p_2(n) = floor(n/2) + 1 up to 10^5",
            secs(5),
            closed_form_b2,
        ),
        c(
            3,
            "quasi",
            "leading coefficients for B = 2..6",
            None,
            leading_coefficients,
        ),
        c(
            4,
            "pell",
            "Pell families for p_3 = m^2",
            secs(10),
            pell_lists,
        ),
        c(
            5,
            "partition",
            "table vs enumeration, B <= 6, n <= 40",
            None,
            oracle_equivalence,
        ),
        c(
            6,
            "quasi",
            "closed form vs table, n <= 10^4",
            secs(30),
            quasi_certification,
        ),
        c(
            7,
            "shift",
            "exceptional shifts on a random corpus",
            None,
            exceptional_shift_suite,
        ),
        c(
            8,
            "shift",
            "classification of B=3 k=2 and B=5 k=3",
            None,
            classification_suite,
        ),
        c(
            9,
            "scan",
            "cubes among p_5(n), n <= 10^5",
            secs(120),
            scan_b5_cubes,
        ),
        c(
            10,
            "pell",
            "square hits of p_3 vs Pell image",
            None,
            scan_vs_pell,
        ),
    ]
}

/// Claims matching `only` (a group name or a claim number), or all.
pub fn select(only: Option<&str>) -> Result<Vec<Claim>, String> {
    let claims = all();
    let Some(key) = only else {
        return Ok(claims);
    };
    let picked: Vec<Claim> = match key.parse::<u32>() {
        Ok(id) => claims.into_iter().filter(|c| c.id == id).collect(),
        Err(_) => claims.into_iter().filter(|c| c.group == key).collect(),
    };
    if picked.is_empty() {
        let groups: BTreeSet<&str> = all().iter().map(|c| c.group).collect();
        return Err(format!(
            "--only: no claim {key:?}; use 1..=10 or one of {}",
            groups.into_iter().collect::<Vec<_>>().join(", ")
        ));
    }
    Ok(picked)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cached(cache: &TableCache, bound: u32, n: usize) -> Result<PartitionTable, String> {
    cache
        .load_or_build(bound, n)
        .map_err(|e| format!("cached table p_{bound} up to {n}: {e}"))
}

fn quasi_b3(_: &TableCache) -> Result<String, String> {
    let expect: [[i64; 3]; 6] = [
        [1, 3, 3],
        [1, 4, 3],
        [2, 5, 3],
        [3, 6, 3],
        [4, 7, 3],
        [5, 8, 3],
    ];
    let q = extract(3).map_err(|e| e.to_string())?;
    ensure(q.period() == 6, || format!("period {}", q.period()))?;
    for (r, c) in expect.iter().enumerate() {
        let want = RatPoly::from_i64s(c);
        ensure(q.component(r) == &want, || {
            format!("Q_{r} = {}, expected {}", q.component(r), want)
        })?;
    }
    Ok("Q_0..Q_5 match".into())
}

fn closed_form_b2(cache: &TableCache) -> Result<String, String> {
    const N: usize = 100_000;
    let t = cached(cache, 2, N)?;
    for (n, v) in t.values().iter().enumerate() {
        ensure(*v == BigInt::from(n / 2 + 1), || format!("p_2({n}) = {v}"))?;
    }
    Ok(format!("{} values", N + 1))
}

fn leading_coefficients(_: &TableCache) -> Result<String, String> {
    for b in 2..=6u32 {
        // L^(B-1) / (B! (B-1)!) in machine integers
        let l = (1..=b as u128).fold(1u128, |acc, i| acc / gcd(acc, i) * i);
        let fact = |n: u32| (1..=n as u128).product::<u128>();
        let alpha = rat_u128(l.pow(b - 1), fact(b) * fact(b - 1));
        ensure(leading_coefficient(b) == alpha, || {
            format!("B={b}: formula gives {alpha}")
        })?;
        let q = extract(b).map_err(|e| e.to_string())?;
        for (r, c) in q.components().iter().enumerate() {
            ensure(c.leading() == Some(&alpha), || {
                format!("B={b} Q_{r} has leading coefficient {:?}", c.leading())
            })?;
        }
    }
    let small: Vec<Rational> = (2..=4).map(leading_coefficient).collect();
    ensure(small == vec![int(1), int(3), int(12)], || {
        format!("B=2,3,4 give {small:?}")
    })?;
    Ok("every component, B = 2..6".into())
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn rat_u128(n: u128, d: u128) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub const PELL_LISTS: [(u32, &[(i64, i64)]); 4] = [
    (0, &[(0, 1), (7, 13), (104, 181), (1455, 2521)]),
    (1, &[(0, 1), (8, 15), (120, 209), (1680, 2911)]),
    (4, &[(0, 2), (15, 28), (224, 390)]),
    (5, &[(1, 4), (31, 56), (449, 780)]),
];

fn pell_lists(cache: &TableCache) -> Result<String, String> {
    const LIMIT: i64 = 20_000;
    let t = cached(cache, 3, LIMIT as usize)?;
    let mut checked = 0;
    for (r, list) in PELL_LISTS {
        let sols = family(r, list.len()).map_err(|e| e.to_string())?;
        let got: Vec<(i64, i64)> = sols
            .iter()
            .map(|s| (s.t.to_i64().unwrap_or(-1), s.m.to_i64().unwrap_or(-1)))
            .collect();
        ensure(got == list, || format!("r={r}: got {got:?}"))?;
        for &(tt, m) in list {
            let n = 6 * tt + r as i64;
            if n <= LIMIT {
                let p = &t.values()[n as usize];
                ensure(*p == BigInt::from(m * m), || {
                    format!("p_3({n}) = {p}, expected {m}^2")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "4 lists match, {checked} entries checked against the table"
    ))
}

fn oracle_equivalence(_: &TableCache) -> Result<String, String> {
    for b in 1..=6u32 {
        for n in 0..=40u64 {
            let dp = p_single(b, n as usize);
            let parts = p_brute(b, n).map_err(|e| e.to_string())?;
            let conj = p_brute_parts(b, n).map_err(|e| e.to_string())?;
            ensure(dp == parts && parts == conj, || {
                format!("B={b} n={n}: table {dp}, enumeration {parts}, conjugate {conj}")
            })?;
        }
    }
    Ok("246 values agree three ways".into())
}

fn quasi_certification(cache: &TableCache) -> Result<String, String> {
    const N: usize = 10_000;
    for b in 2..=6u32 {
        let q = extract(b).map_err(|e| e.to_string())?;
        let t = cached(cache, b, N)?;
        for n in 0..=N {
            let v = qp_eval(&q, n as u64).map_err(|e| e.to_string())?;
            ensure(v == t.values()[n], || {
                format!("B={b} n={n}: closed form {v}")
            })?;
        }
    }
    Ok(format!("5 x {} values", N + 1))
}

pub const CORPUS_SEED: u64 = 0x5eed_2024;
pub const CORPUS_SIZE: usize = 100;

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let v = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        if !nonzero || !v.is_zero() {
            return v;
        }
    }
}

/// `CORPUS_SIZE` polynomials of degree 2..=5 with small rational
/// coefficients, each paired with an exponent in 2..=4.
pub fn random_corpus(seed: u64) -> Vec<(RatPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..CORPUS_SIZE)
        .map(|_| {
            let deg = rng.gen_range(2..=5);
            let mut c: Vec<Rational> = (0..deg).map(|_| random_rational(&mut rng, false)).collect();
            c.push(random_rational(&mut rng, true));
            (RatPoly::new(c), rng.gen_range(2..=4))
        })
        .collect()
}

/// `(Q, k, t, a, R)` with `Q = a R^k + t`, `R` monic, `deg Q <= 6`.
pub fn planted_corpus(seed: u64) -> Vec<(RatPoly, u32, Rational, Rational, RatPoly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
    (0..CORPUS_SIZE)
        .map(|_| {
            let (e, k) = match rng.gen_range(0..3) {
                0 => (1, rng.gen_range(2..=5)),
                1 => (2, 2),
                _ => (2, 3),
            };
            let mut c: Vec<Rational> = (0..e).map(|_| random_rational(&mut rng, false)).collect();
            c.push(int(1));
            let r = RatPoly::new(c);
            let a = random_rational(&mut rng, true);
            let t = random_rational(&mut rng, false);
            let q = &r.pow(k).scale(&a) + &RatPoly::constant(t.clone());
            (q, k, t, a, r)
        })
        .collect()
}

fn exceptional_shift_suite(_: &TableCache) -> Result<String, String> {
    let window = int(1_000_000);
    let mut total = 0;
    for (i, (q, k)) in random_corpus(CORPUS_SEED).into_iter().enumerate() {
        let deg = q.degree().unwrap_or(0);
        let shifts = exceptional_shifts(&q, k, &window).map_err(|e| e.to_string())?;
        ensure(shifts.len() < deg, || {
            format!("#{i} Q = {q}, k = {k}: {} shifts", shifts.len())
        })?;
        for s in &shifts {
            let back = &s.base.pow(k).scale(&s.scale) + &RatPoly::constant(s.t.clone());
            ensure(back == q, || {
                format!("#{i} t = {}: decomposition re-expands to {back}", s.t)
            })?;
        }
        total += shifts.len();
    }
    for (i, (q, k, t, a, r)) in planted_corpus(CORPUS_SEED).into_iter().enumerate() {
        let shifts = exceptional_shifts(&q, k, &window).map_err(|e| e.to_string())?;
        ensure(
            shifts
                .iter()
                .any(|s| s.t == t && s.scale == a && s.base == r),
            || format!("planted #{i}: {q} = ({a}) ({r})^{k} + {t} not found"),
        )?;
    }
    Ok(format!(
        "{CORPUS_SIZE} random ({total} shifts), {CORPUS_SIZE} planted found"
    ))
}

fn classification_suite(_: &TableCache) -> Result<String, String> {
    let b3 = classify_progression(3, 2, 0, None).map_err(|e| e.to_string())?;
    for e in &b3.entries {
        let ok = match e.residue {
            3 => {
                e.class
                    == ShiftClass::PowerShift {
                        scale: int(3),
                        base: RatPoly::from_i64s(&[1, 1]),
                    }
            }
            _ => e.class == ShiftClass::PellConic,
        };
        ensure(ok, || {
            format!("B=3 k=2 residue {} t={}: {:?}", e.residue, e.t, e.class)
        })?;
    }
    let b5 = classify_progression(5, 3, 2, None).map_err(|e| e.to_string())?;
    ensure(b5.power_shifts().is_empty(), || {
        format!("B=5 k=3: {} power shifts", b5.power_shifts().len())
    })?;
    ensure(b5.theorem_hypotheses && theorem_hypotheses(5, 3), || {
        "B=5 k=3 should satisfy the hypotheses".into()
    })?;
    Ok(format!(
        "B=3: PowerShift at residue 3 only; B=5: 0 of {} entries are power shifts",
        b5.entries.len()
    ))
}

/// Scan `table` for exact `k`-th powers inside a dedicated pool.
pub fn scan_with_workers(
    table: &PartitionTable,
    k: u32,
    horizon: u64,
    workers: usize,
    chunk: usize,
) -> Result<Vec<Hit>, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| e.to_string())
        .map(|pool| pool.install(|| scan_table(table, k, horizon, &BigInt::zero(), chunk)))
}

fn scan_b5_cubes(cache: &TableCache) -> Result<String, String> {
    const N: u64 = 100_000;
    let t = cached(cache, 5, N as usize)?;
    let one = scan_with_workers(&t, 3, N, 1, 4096)?;
    let many = scan_with_workers(&t, 3, N, 4, 1000)?;
    ensure(one == many, || {
        "hit lists differ between 1 and 4 workers".into()
    })?;
    for h in &one {
        let cube = num_traits::pow(h.m.clone(), 3);
        ensure(
            h.verify() && h.delta.is_zero() && cube == t.values()[h.n as usize],
            || format!("n = {}: p = {} is not {}^3", h.n, h.p, h.m),
        )?;
    }
    let upper = one.iter().filter(|h| h.n > 10_000).count();
    Ok(format!(
        "hits in [1, 10^5]: {} (all verified), in (10^4, 10^5]: {upper}; identical under 1 and 4 workers",
        one.len()
    ))
}

fn scan_vs_pell(cache: &TableCache) -> Result<String, String> {
    const N: u64 = 10_000;
    let t = cached(cache, 3, N as usize)?;
    let scanned: BTreeSet<u64> = scan_table(&t, 2, N, &BigInt::zero(), 1024)
        .iter()
        .map(|h| h.n)
        .filter(|n| matches!(n % 6, 0 | 1 | 4 | 5))
        .collect();
    let mut image = BTreeSet::new();
    for r in [0u32, 1, 4, 5] {
        let fam = repulsion_core::PellFamily::for_residue(r).map_err(|e| e.to_string())?;
        for s in fam.solutions() {
            let Some(n) = s.n.to_u64().filter(|&n| n <= N) else {
                break;
            };
            if n >= 1 {
                image.insert(n);
            }
        }
    }
    ensure(scanned == image, || {
        let only_scan: Vec<_> = scanned.difference(&image).collect();
        let only_pell: Vec<_> = image.difference(&scanned).collect();
        format!("scan only {only_scan:?}, Pell only {only_pell:?}")
    })?;
    Ok(format!("{} indices agree both ways", scanned.len()))
}
