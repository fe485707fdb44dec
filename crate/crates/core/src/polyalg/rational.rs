//! Operations that need the integers behind the rationals: content and
//! primitive part, rational root search, text and JSON forms.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Poly, PolyError};
use crate::arith::divisors;

/// Always `"p/q"`, including integers (`"3/1"`).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let bad = || PolyError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Poly<BigRational> {
    /// Least positive integer `M` with `M * self` integral.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `self = content * primitive`, where `primitive` has coprime integer
    /// coefficients and a positive leading coefficient. Zero maps to `(1, 0)`.
    pub fn primitive_part(&self) -> (BigRational, Self) {
        let Some(lc) = self.leading() else {
            return (BigRational::one(), Self::zero());
        };
        let den = self.denominator_lcm();
        let ints: Vec<BigInt> = self
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if lc.is_negative() {
            g = -g;
        }
        let prim = Self::new(
            ints.into_iter()
                .map(|c| BigRational::from_integer(c / &g))
                .collect(),
        );
        (BigRational::new(g, den), prim)
    }

    /// Integer coefficients, or `None` if some coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs()
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    /// Human-readable form with a chosen variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let coef = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("({a})")
            };
            match i {
                0 => out.push_str(&coef),
                _ => {
                    if !a.is_one() {
                        out.push_str(&coef);
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Serialize for Poly<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs().iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for Poly<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
            .map_err(serde::de::Error::custom)
    }
}

/// All rational roots, ascending and without repetition.
///
/// The polynomial is cleared to a primitive integer polynomial; candidates
/// `p/q` have `p` dividing the lowest nonzero coefficient and `q` dividing
/// the leading one, and each is confirmed by exact evaluation.
pub fn rational_roots(f: &Poly<BigRational>) -> Result<Vec<BigRational>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial("rational_roots"));
    }
    let (_, prim) = f.primitive_part();
    let ints = prim.integer_coeffs().expect("primitive part is integral");
    let mut roots = BTreeSet::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.insert(BigRational::zero());
    }
    let reduced = &ints[low..];
    if reduced.len() >= 2 {
        let ps = divisors(&reduced[0].magnitude().clone());
        let qs = divisors(&reduced[reduced.len() - 1].magnitude().clone());
        // f = (q x - p) g with g integral, so (q a - p) | f(a) for integer a
        let probes: Vec<(BigInt, BigInt)> = [1i64, -1, 2, -2]
            .iter()
            .map(|&a| (BigInt::from(a), eval_int(reduced, &BigInt::from(a))))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let pairs: Vec<(BigInt, BigInt)> = qs
            .iter()
            .flat_map(|q| {
                ps.iter()
                    .map(move |p| (BigInt::from(p.clone()), BigInt::from(q.clone())))
            })
            .collect();
        let found: Vec<BigRational> = pairs
            .par_iter()
            .filter(|(p, q)| p.gcd(q).is_one())
            .flat_map_iter(|(p, q)| {
                [p.clone(), -p]
                    .into_iter()
                    .filter(|num| {
                        probes.iter().all(|(a, v)| {
                            let lin = q * a - num;
                            !lin.is_zero() && (v % lin).is_zero()
                        }) && vanishes_at(reduced, num, q)
                    })
                    .map(|num| BigRational::new(num, q.clone()))
                    .collect::<Vec<_>>()
            })
            .collect();
        roots.extend(found);
    }
    Ok(roots.into_iter().collect())
}

fn eval_int(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `sum a_i p^i q^(n-i) == 0`, i.e. `f(p/q) == 0` without fractions.
fn vanishes_at(a: &[BigInt], p: &BigInt, q: &BigInt) -> bool {
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in a.iter().rev() {
        acc = acc * p + c * &qpow;
        qpow *= q;
    }
    acc.is_zero()
}
