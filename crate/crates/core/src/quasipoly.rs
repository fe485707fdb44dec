//! Quasipolynomial structure of `p_B`: with `L = lcm(1..=B)`, each residue
//! class `r mod L` carries a polynomial `Q_r` of degree `B - 1` such that
//! `p_B(L*n + r) = Q_r(n)` for every `n >= 0`.
//!
//! Components are obtained by interpolating `B` samples per residue and are
//! certified against the partition table on a further `2L + 1` samples
//! before a [`Quasipoly`] is handed out.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::partition::p_table;
use crate::polyalg::{format_rational, interpolate};
use crate::{arith, int, RatPoly, Rational};

pub const MAX_BOUND: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasipolyError {
    #[error("bound B = {0} outside the supported range 2..={MAX_BOUND}")]
    UnsupportedBound(u32),
    #[error("residue {residue}: interpolant disagrees with p_B at n = {n}")]
    Certification { residue: usize, n: usize },
    #[error("residue {residue}: {what}")]
    Invariant { residue: usize, what: String },
    #[error("index {0} is negative")]
    NegativeIndex(BigInt),
    #[error("component value at index {0} is not an integer")]
    NonIntegral(BigInt),
}

/// `lcm(1, 2, ..., b)` as a machine integer (exact for `b <= 40`).
pub fn lcm_upto(b: u32) -> u64 {
    arith::lcm_upto(b)
        .to_u64()
        .expect("lcm(1..=b) fits in u64 for b <= 40")
}

/// `L^(B-1) / (B! (B-1)!)`, the common leading coefficient.
pub fn leading_coefficient(bound: u32) -> Rational {
    let l = BigInt::from(lcm_upto(bound));
    let fact = |n: u32| (1..=n).fold(BigInt::one(), |acc, i| acc * i);
    Rational::new(
        num_traits::pow(l, (bound - 1) as usize),
        fact(bound) * fact(bound - 1),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quasipoly {
    bound: u32,
    period: usize,
    alpha: Rational,
    components: Vec<RatPoly>,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct QuasipolyJson<'a> {
    B: u32,
    L: usize,
    alpha: String,
    components: &'a [RatPoly],
}

impl Quasipoly {
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn components(&self) -> &[RatPoly] {
        &self.components
    }

    pub fn component(&self, r: usize) -> &RatPoly {
        &self.components[r]
    }

    /// `{B, L, alpha, components}` with every rational as a `"p/q"` string.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(QuasipolyJson {
            B: self.bound,
            L: self.period,
            alpha: format_rational(&self.alpha),
            components: &self.components,
        })
        .expect("plain data serializes")
    }

    /// `p_B(n)` from the closed form `Q_{n mod L}((n - r) / L)`.
    pub fn eval(&self, n: &BigInt) -> Result<BigInt, QuasipolyError> {
        if n.is_negative() {
            return Err(QuasipolyError::NegativeIndex(n.clone()));
        }
        let (q, r) = n.div_rem(&BigInt::from(self.period));
        let r = r.to_usize().expect("residue below period");
        let v = self.components[r].eval(&Rational::from_integer(q));
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(QuasipolyError::NonIntegral(n.clone()))
        }
    }

    /// Check that every `Q_r(x+1) - Q_r(x)` has degree `B - 2` and leading
    /// coefficient `(B - 1) * alpha`.
    pub fn difference_check(&self) -> Result<Vec<DifferenceEntry>, QuasipolyError> {
        let expect_lc = &self.alpha * int(self.bound as i64 - 1);
        let expect_deg = self.bound as usize - 2;
        self.components
            .iter()
            .enumerate()
            .map(|(r, q)| {
                let diff = &q.shift(&int(1)) - q;
                let ok = diff.degree() == Some(expect_deg) && diff.leading() == Some(&expect_lc);
                if ok {
                    Ok(DifferenceEntry {
                        residue: r,
                        difference: diff,
                    })
                } else {
                    Err(QuasipolyError::Invariant {
                        residue: r,
                        what: format!(
                            "difference {diff} does not have degree {expect_deg} and leading coefficient {expect_lc}"
                        ),
                    })
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceEntry {
    pub residue: usize,
    pub difference: RatPoly,
}

/// Extract and certify the quasipolynomial of `p_B` for `2 <= B <= 8`.
pub fn extract(bound: u32) -> Result<Quasipoly, QuasipolyError> {
    if !(2..=MAX_BOUND).contains(&bound) {
        return Err(QuasipolyError::UnsupportedBound(bound));
    }
    let period = lcm_upto(bound) as usize;
    let samples = bound as usize;
    let horizon = samples + 2 * period;
    let table = p_table(bound, period * horizon + period - 1);
    let values = table.values();
    let alpha = leading_coefficient(bound);

    let components = (0..period)
        .into_par_iter()
        .map(|r| {
            let at = |n: usize| &values[period * n + r];
            let points: Vec<(Rational, Rational)> = (0..samples)
                .map(|n| (int(n as i64), Rational::from_integer(at(n).clone())))
                .collect();
            let q = interpolate(&points);
            check_shape(r, &q, bound, &alpha)?;
            certify_component(r, &q, samples..=horizon, at)?;
            Ok(q)
        })
        .collect::<Result<Vec<_>, QuasipolyError>>()?;

    Ok(Quasipoly {
        bound,
        period,
        alpha,
        components,
    })
}

fn check_shape(r: usize, q: &RatPoly, bound: u32, alpha: &Rational) -> Result<(), QuasipolyError> {
    let bad = |what: String| Err(QuasipolyError::Invariant { residue: r, what });
    if q.degree() != Some(bound as usize - 1) {
        return bad(format!("degree {:?}, expected {}", q.degree(), bound - 1));
    }
    if q.leading() != Some(alpha) {
        return bad(format!(
            "leading coefficient {:?}, expected {alpha}",
            q.leading()
        ));
    }
    Ok(())
}

/// Compare `q(n)` with the table on `ns`. Evaluation is done on the
/// integer polynomial `den * q` to stay in integer arithmetic.
fn certify_component<'a>(
    r: usize,
    q: &RatPoly,
    ns: std::ops::RangeInclusive<usize>,
    at: impl Fn(usize) -> &'a BigInt,
) -> Result<(), QuasipolyError> {
    let den = q.denominator_lcm();
    let scaled: Vec<BigInt> = q
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    for n in ns {
        let x = BigInt::from(n);
        let v = scaled
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &x + c);
        if v != at(n) * &den {
            return Err(QuasipolyError::Certification { residue: r, n });
        }
    }
    Ok(())
}

/// Free-function form of [`Quasipoly::eval`] for a machine-sized index.
pub fn qp_eval(q: &Quasipoly, n: u64) -> Result<BigInt, QuasipolyError> {
    q.eval(&BigInt::from(n))
}

/// Free-function form of [`Quasipoly::difference_check`].
pub fn difference_degree_check(q: &Quasipoly) -> Result<Vec<DifferenceEntry>, QuasipolyError> {
    q.difference_check()
}

/// Interpolate component `r` from the `B` samples starting at `start`
/// instead of at zero. Used to confirm the components do not depend on
/// where the samples are taken.
pub fn reinterpolate(bound: u32, r: usize, start: usize) -> RatPoly {
    let period = lcm_upto(bound) as usize;
    let samples = bound as usize;
    let table = p_table(bound, period * (start + samples) + r);
    let points: Vec<(Rational, Rational)> = (start..start + samples)
        .map(|n| {
            (
                int(n as i64),
                Rational::from_integer(table.values()[period * n + r].clone()),
            )
        })
        .collect();
    interpolate(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn periods() {
        assert_eq!(lcm_upto(1), 1);
        assert_eq!(lcm_upto(3), 6);
        assert_eq!(lcm_upto(4), 12);
    }

    #[test]
    fn b3_components() {
        let q = extract(3).unwrap();
        let expect = [
            [1, 3, 3],
            [1, 4, 3],
            [2, 5, 3],
            [3, 6, 3],
            [4, 7, 3],
            [5, 8, 3],
        ];
        assert_eq!(q.period(), 6);
        for (c, e) in q.components().iter().zip(expect) {
            assert_eq!(*c, RatPoly::from_i64s(&e));
        }
    }

    #[test]
    fn b2_components() {
        let q = extract(2).unwrap();
        assert_eq!(
            q.components(),
            &[RatPoly::from_i64s(&[1, 1]), RatPoly::from_i64s(&[1, 1])]
        );
        assert_eq!(*q.alpha(), int(1));
    }

    #[test]
    fn b4_components() {
        // frozen from an independent sympy interpolation of series coefficients
        let q = extract(4).unwrap();
        assert_eq!(*q.alpha(), int(12));
        assert_eq!(*q.component(0), RatPoly::from_i64s(&[1, 6, 15, 12]));
        assert_eq!(*q.component(7), RatPoly::from_i64s(&[11, 35, 36, 12]));
        assert_eq!(*q.component(11), RatPoly::from_i64s(&[27, 63, 48, 12]));
    }

    #[test]
    fn b5_residue_zero_has_fractions() {
        let q = extract(5).unwrap();
        assert_eq!(
            *q.component(0),
            RatPoly::new(vec![int(1), rat(55, 2), rat(775, 2), int(2250), int(4500)])
        );
    }

    #[test]
    fn closed_form_evaluation() {
        let q = extract(3).unwrap();
        assert_eq!(qp_eval(&q, 42).unwrap(), BigInt::from(169));
        for b in 2..=5 {
            assert_eq!(qp_eval(&extract(b).unwrap(), 0).unwrap(), BigInt::one());
        }
        let q5 = extract(5).unwrap();
        assert_eq!(qp_eval(&q5, 1000).unwrap(), BigInt::from(357_746_987));
        assert!(matches!(
            q.eval(&BigInt::from(-1)),
            Err(QuasipolyError::NegativeIndex(_))
        ));
    }

    #[test]
    fn non_integral_component_value_is_reported() {
        let mut q = extract(2).unwrap();
        q.components[1] = RatPoly::new(vec![rat(1, 2), int(1)]);
        assert!(matches!(
            q.eval(&BigInt::from(3)),
            Err(QuasipolyError::NonIntegral(_))
        ));
    }

    #[test]
    fn differences() {
        let d3 = extract(3).unwrap().difference_check().unwrap();
        assert_eq!(d3[0].difference, RatPoly::from_i64s(&[6, 6]));
        let d2 = extract(2).unwrap().difference_check().unwrap();
        assert!(d2.iter().all(|e| e.difference == RatPoly::one()));
        let d4 = extract(4).unwrap().difference_check().unwrap();
        assert_eq!(d4[0].difference, RatPoly::from_i64s(&[33, 66, 36]));
        assert!(d4.iter().all(|e| e.difference.leading() == Some(&int(36))));
    }

    #[test]
    fn broken_component_fails_difference_check() {
        let mut q = extract(3).unwrap();
        q.components[2] = RatPoly::from_i64s(&[2, 5, 4]);
        match q.difference_check() {
            Err(QuasipolyError::Invariant { residue, .. }) => assert_eq!(residue, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn certification_reports_first_mismatch() {
        let values: Vec<BigInt> = (0..20).map(|n| BigInt::from(n * n)).collect();
        let q = RatPoly::from_i64s(&[0, 0, 1]);
        assert!(certify_component(0, &q, 0..=19, |n| &values[n]).is_ok());
        let q_bad = RatPoly::from_i64s(&[0, 1]);
        assert_eq!(
            certify_component(4, &q_bad, 0..=19, |n| &values[n]),
            Err(QuasipolyError::Certification { residue: 4, n: 2 })
        );
    }

    #[test]
    fn bound_range() {
        assert_eq!(extract(1), Err(QuasipolyError::UnsupportedBound(1)));
        assert_eq!(extract(9), Err(QuasipolyError::UnsupportedBound(9)));
    }

    #[test]
    fn json_shape() {
        let v = extract(3).unwrap().to_json();
        assert_eq!(v["B"], 3);
        assert_eq!(v["L"], 6);
        assert_eq!(v["alpha"], "3/1");
        assert_eq!(v["components"][3], serde_json::json!(["3/1", "6/1", "3/1"]));
    }
}
