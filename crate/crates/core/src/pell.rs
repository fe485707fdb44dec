//! Infinite families of square values of `p_3`.
//!
//! On the residue classes `r = 0, 1, 4, 5 (mod 6)` the equation
//! `Q_r(t) = m^2` becomes `x^2 - 12 m^2 = N` with `x = 6t + c`. Solutions
//! are generated from a seed by repeated multiplication with the unit
//! `7 + 2*sqrt(12)`, which preserves both the norm and `x mod 6`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::partition::shared_table;

/// `D` in `x^2 - D m^2 = N`.
pub const DISCRIMINANT: i64 = 12;
/// Fundamental unit `7 + 2 sqrt(12)` as `(x, m)`.
pub const UNIT: (i64, i64) = (7, 2);
/// Solutions with `n` up to here are also checked against the partition table.
pub const TABLE_CHECK_LIMIT: u64 = 20_000;
const SEED_SEARCH_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PellError {
    #[error("residue {0} carries no Pell family (expected one of 0, 1, 4, 5)")]
    NoFamily(u32),
    #[error("no seed with x^2 - 12 m^2 = {norm}, x = 6t + {offset}, t < {bound}")]
    SeedNotFound { norm: i64, offset: i64, bound: u64 },
    #[error("solution x = {x}, m = {m} failed verification: {what}")]
    Verification { x: BigInt, m: BigInt, what: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellFamily {
    residue: u32,
    norm: i64,
    offset: i64,
    seed: (BigInt, BigInt),
}

impl PellFamily {
    /// The family for `n = 6t + r`; the seed is rediscovered by search.
    pub fn for_residue(residue: u32) -> Result<Self, PellError> {
        // completing the square in Q_r(t) = m^2
        let (norm, offset) = match residue {
            0 => (-3, 3),
            1 => (4, 4),
            4 => (1, 7),
            5 => (4, 8),
            other => return Err(PellError::NoFamily(other)),
        };
        let seed = find_seed(norm, offset, SEED_SEARCH_LIMIT)?;
        Ok(PellFamily {
            residue,
            norm,
            offset,
            seed,
        })
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn norm(&self) -> i64 {
        self.norm
    }

    /// `c` in `x = 6t + c`.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn seed(&self) -> &(BigInt, BigInt) {
        &self.seed
    }

    /// Unbounded forward orbit of the seed, keeping only `t >= 0`.
    pub fn solutions(&self) -> impl Iterator<Item = PellSolution> + '_ {
        std::iter::successors(Some(self.seed.clone()), |(x, m)| Some(unit_apply(x, m))).filter_map(
            move |(x, m)| {
                let (t, rem) = (&x - self.offset).div_rem(&BigInt::from(6));
                (rem.is_zero() && !t.is_negative()).then(|| PellSolution {
                    n: &t * 6 + self.residue,
                    x,
                    m,
                    t,
                })
            },
        )
    }

    fn verify(&self, s: &PellSolution) -> Result<(), PellError> {
        let fail = |what: &str| {
            Err(PellError::Verification {
                x: s.x.clone(),
                m: s.m.clone(),
                what: what.to_string(),
            })
        };
        if &s.x * &s.x - DISCRIMINANT * &s.m * &s.m != BigInt::from(self.norm) {
            return fail("norm");
        }
        if s.m.is_negative() || s.t.is_negative() {
            return fail("sign");
        }
        if s.x.mod_floor(&BigInt::from(6)) != BigInt::from(self.offset.rem_euclid(6)) {
            return fail("residue of x");
        }
        if let Some(n) = u64::try_from(&s.n).ok().filter(|&n| n <= TABLE_CHECK_LIMIT) {
            let p = shared_table(3, TABLE_CHECK_LIMIT as usize).values()[n as usize].clone();
            if p != &s.m * &s.m {
                return fail("p_3(n) != m^2");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(serialize_with = "decimal")]
    pub t: BigInt,
    #[serde(serialize_with = "decimal")]
    pub n: BigInt,
    #[serde(serialize_with = "decimal")]
    pub m: BigInt,
    #[serde(serialize_with = "decimal")]
    pub x: BigInt,
}

fn decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Multiply `x + m sqrt(12)` by `7 + 2 sqrt(12)`.
pub fn unit_apply(x: &BigInt, m: &BigInt) -> (BigInt, BigInt) {
    let (ux, um) = UNIT;
    (ux * x + DISCRIMINANT * um * m, um * x + ux * m)
}

/// Smallest `x = offset + 6t` (`t = 0, 1, ...`, `t < bound`) for which
/// `(x^2 - norm) / 12` is a perfect square `m^2`; returns `(x, m)`.
pub fn find_seed(norm: i64, offset: i64, bound: u64) -> Result<(BigInt, BigInt), PellError> {
    for t in 0..bound {
        let x = BigInt::from(offset) + BigInt::from(t) * 6;
        let rhs: BigInt = &x * &x - norm;
        if rhs.is_negative() || !(&rhs % DISCRIMINANT).is_zero() {
            continue;
        }
        let sq = rhs / DISCRIMINANT;
        let m = sq.sqrt();
        if &m * &m == sq {
            return Ok((x, m));
        }
    }
    Err(PellError::SeedNotFound {
        norm,
        offset,
        bound,
    })
}

/// The first `count` solutions of the family for residue `r`, in
/// increasing `t`, each verified.
pub fn family(residue: u32, count: usize) -> Result<Vec<PellSolution>, PellError> {
    let fam = PellFamily::for_residue(residue)?;
    let sols: Vec<PellSolution> = fam.solutions().take(count).collect();
    for s in &sols {
        fam.verify(s)?;
    }
    Ok(sols)
}
