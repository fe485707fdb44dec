//! Restricted partition counts `p_B(n)`: the number of partitions of `n`
//! into parts of size at most `B`, i.e. the coefficients of
//! `prod_{m=1}^{B} 1 / (1 - q^m)`.

mod cache;

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{CheckedAdd, One, Zero};
use thiserror::Error;

pub use cache::TableCache;

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("p_{bound}({n}) overflows the chosen count type")]
    Overflow { bound: u32, n: usize },
    #[error("brute-force enumeration is limited to n <= {limit}, got {n}")]
    BruteForceGuard { n: u64, limit: u64 },
    #[error("table certification failed at n = {n}")]
    Certification { n: usize },
    #[error("cache file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Count types a table can be built in. Overflow is detected, never wrapped.
pub trait PartitionCount: Clone + PartialEq + Zero + One + CheckedAdd + Send + Sync {}
impl<T: Clone + PartialEq + Zero + One + CheckedAdd + Send + Sync> PartitionCount for T {}

/// `p_B(n)` for `0 <= n <= N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable<T = BigInt> {
    bound: u32,
    values: Vec<T>,
}

impl<T: PartitionCount> PartitionTable<T> {
    /// Layered coin-change recurrence `p_b(n) = p_{b-1}(n) + p_b(n - b)`,
    /// one row updated in place for `b = 1..=B`. The last layer is checked
    /// against a copy of layer `B - 1`.
    pub fn try_build(bound: u32, max_index: usize) -> Result<Self, PartitionError> {
        assert!(bound >= 1, "part-size bound must be at least 1");
        let mut values = vec![T::one(); max_index + 1];
        // parts larger than max_index never contribute
        let top = (bound as usize).min(max_index.max(1));
        let mut previous_layer = None;
        for b in 2..=top {
            if b == bound as usize {
                previous_layer = Some(values.clone());
            }
            for n in b..=max_index {
                values[n] = values[n]
                    .checked_add(&values[n - b])
                    .ok_or(PartitionError::Overflow { bound, n })?;
            }
        }
        if let Some(prev) = previous_layer {
            let b = bound as usize;
            for n in b..=max_index {
                if prev[n].checked_add(&values[n - b]).as_ref() != Some(&values[n]) {
                    return Err(PartitionError::Certification { n });
                }
            }
        }
        Ok(PartitionTable { bound, values })
    }
}

impl<T> PartitionTable<T> {
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&T> {
        self.values.get(n)
    }

    /// Keep only `0..=max_index`.
    pub fn truncated(mut self, max_index: usize) -> Self {
        self.values.truncate(max_index + 1);
        self
    }
}

impl PartitionTable<BigInt> {
    /// Check that the values are the series coefficients of the product:
    /// multiplying by `prod_{m=1}^{B} (1 - q^m)` must give exactly `1`.
    /// Independent of the recurrence used to build the table.
    pub fn certify(&self) -> Result<(), PartitionError> {
        let n_max = self.max_index();
        let mut euler: Vec<BigInt> = vec![BigInt::zero(); n_max + 1];
        euler[0] = BigInt::one();
        for m in 1..=(self.bound as usize).min(n_max) {
            for n in (m..=n_max).rev() {
                let lower = euler[n - m].clone();
                euler[n] -= lower;
            }
        }
        let terms: Vec<(usize, BigInt)> = euler
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for n in 0..=n_max {
            let mut acc = BigInt::zero();
            for (j, c) in &terms {
                if *j > n {
                    break;
                }
                acc += c * &self.values[n - j];
            }
            let expect = if n == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if acc != expect {
                return Err(PartitionError::Certification { n });
            }
        }
        Ok(())
    }

    /// Header line `"B N"`, then one decimal value per line.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<(), PartitionError> {
        writeln!(w, "{} {}", self.bound, self.max_index())?;
        for v in &self.values {
            writeln!(w, "{v}")?;
        }
        w.flush()?;
        Ok(())
    }

    /// Parse the format of [`Self::write_to`] and certify the result.
    pub fn read_from<R: BufRead>(r: R) -> Result<Self, PartitionError> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header"))??;
        let mut fields = header.split_whitespace();
        let bound: u32 = next_field(&mut fields, "B")?;
        let max_index: usize = next_field(&mut fields, "N")?;
        if bound == 0 || fields.next().is_some() {
            return Err(parse_err(1, "header must be \"B N\" with B >= 1"));
        }
        let mut values = Vec::with_capacity(max_index + 1);
        for (i, line) in lines.enumerate() {
            let line = line?;
            let v: BigInt = line
                .trim()
                .parse()
                .map_err(|_| parse_err(i + 2, "not a decimal integer"))?;
            values.push(v);
        }
        if values.len() != max_index + 1 {
            return Err(parse_err(
                values.len() + 1,
                &format!("expected {} values, found {}", max_index + 1, values.len()),
            ));
        }
        let table = PartitionTable { bound, values };
        table.certify()?;
        Ok(table)
    }
}

fn parse_err(line: usize, msg: &str) -> PartitionError {
    PartitionError::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn next_field<'a, T: std::str::FromStr>(
    it: &mut impl Iterator<Item = &'a str>,
    name: &str,
) -> Result<T, PartitionError> {
    it.next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(1, &format!("bad or missing {name}")))
}

/// `p_B(n)` for `0 <= n <= max_index`, exact.
pub fn p_table(bound: u32, max_index: usize) -> PartitionTable {
    PartitionTable::try_build(bound, max_index).expect("big-integer table cannot overflow")
}

fn memo() -> &'static Mutex<HashMap<u32, Arc<PartitionTable>>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Arc<PartitionTable>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Shared in-process table for `bound` covering at least `max_index`.
/// Grows geometrically so runs of increasing queries stay linear overall.
pub fn shared_table(bound: u32, max_index: usize) -> Arc<PartitionTable> {
    let mut map = memo().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = map.get(&bound) {
        if t.max_index() >= max_index {
            return Arc::clone(t);
        }
    }
    let current = map.get(&bound).map_or(0, |t| t.max_index());
    let target = max_index.max(current.saturating_mul(2)).max(64);
    let table = Arc::new(p_table(bound, target));
    map.insert(bound, Arc::clone(&table));
    table
}

/// `p_B(n)` through the shared in-process table.
pub fn p_single(bound: u32, n: usize) -> BigInt {
    shared_table(bound, n).values()[n].clone()
}

pub const BRUTE_FORCE_LIMIT: u64 = 60;

/// Direct enumeration of nonincreasing part sequences with parts `<= bound`.
pub fn p_brute(bound: u32, n: u64) -> Result<BigInt, PartitionError> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(PartitionError::BruteForceGuard {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    fn count(rest: u64, max_part: u64) -> u64 {
        if rest == 0 {
            return 1;
        }
        (1..=max_part.min(rest)).map(|p| count(rest - p, p)).sum()
    }
    Ok(BigInt::from(count(n, bound as u64)))
}

/// Enumeration of partitions of `n` into at most `max_parts` parts, the
/// Ferrers conjugate of [`p_brute`].
pub fn p_brute_parts(max_parts: u32, n: u64) -> Result<BigInt, PartitionError> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(PartitionError::BruteForceGuard {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    fn count(rest: u64, max_part: u64, slots: u32) -> u64 {
        if rest == 0 {
            return 1;
        }
        if slots == 0 {
            return 0;
        }
        (1..=max_part.min(rest))
            .map(|p| count(rest - p, p, slots - 1))
            .sum()
    }
    Ok(BigInt::from(count(n, n, max_parts)))
}
