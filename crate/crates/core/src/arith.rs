//! Integer helpers: lcm of an initial segment, factorization, divisor lists,
//! and the `M = u^k * b0` split into a k-th power and a k-th-power-free part.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// `lcm(1, 2, ..., b)`; `1` for `b <= 1`.
pub fn lcm_upto(b: u32) -> BigUint {
    (1..=b).fold(BigUint::one(), |acc, i| acc.lcm(&BigUint::from(i)))
}

const TRIAL_LIMIT: u32 = 10_000;

/// Prime factorization as ascending `(prime, exponent)` pairs. `0` and `1`
/// factor as the empty product.
///
/// Trial division removes small primes; anything left is split with
/// Pollard's rho (Brent's variant) and Miller-Rabin.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    let push = |p: BigUint, e: u32, out: &mut Vec<(BigUint, u32)>| {
        if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += e;
        } else {
            out.push((p, e));
        }
    };
    let mut d = 2u32;
    while d <= TRIAL_LIMIT {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            e += 1;
        }
        if e > 0 {
            push(dd, e, &mut out);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_probable_prime(&m) {
                push(m, 1, &mut out);
                continue;
            }
            let f = pollard_brent(&m);
            stack.push(&m / &f);
            stack.push(f);
        }
    }
    out.sort();
    out
}

/// All positive divisors in ascending order. `divisors(0)` is empty.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factorize(n) {
        let base = divs.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(base.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}

/// Split `m >= 1` as `m = u^k * b0` with `b0` k-th-power-free.
pub fn kth_power_free_split(m: &BigUint, k: u32) -> (BigUint, BigUint) {
    let mut u = BigUint::one();
    let mut b0 = BigUint::one();
    for (p, e) in factorize(m) {
        u *= p.pow(e / k);
        b0 *= p.pow(e % k);
    }
    (u, b0)
}

const MR_BASES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Miller-Rabin over fixed bases; deterministic below 3.3e24 and
/// probabilistic (with negligible error) beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for b in MR_BASES {
            if small == b as u64 {
                return true;
            }
            if small % b as u64 == 0 {
                return false;
            }
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for b in MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}
