//! Diophantine bookkeeping for `Q(x) - t` against `k`-th powers.
//!
//! A shift `t` is exceptional when `Q(x) - t = a R(x)^k`; such `t` are
//! critical values of `Q`, hence roots of `Res_x(Q(x) - t, Q'(x))`, so the
//! exact candidates are the rational roots of that resultant. Every other
//! shift is classified by the number `r_t` of distinct roots of `Q(x) - t`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::arith::kth_power_free_split;
use crate::polyalg::{
    distinct_root_count, format_rational, kth_root, param_resultant, rational_roots, PolyError,
};
use crate::quasipoly::{extract, QuasipolyError};
use crate::repulsion::ikroot;
use crate::{int, RatPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quasipoly(#[from] QuasipolyError),
    #[error("curve polynomial must have integer coefficients")]
    NonIntegralCurve,
    #[error("b0 must be positive")]
    NonPositiveB0,
    #[error("residue {residue} is outside 0..{period}")]
    ResidueOutOfRange { residue: usize, period: usize },
}

/// Hypotheses of the finiteness statement: `B >= 4`, `k >= 3`, `k` does not
/// divide `B - 1`.
pub fn theorem_hypotheses(bound: u32, k: u32) -> bool {
    bound >= 4 && k >= 3 && !(bound - 1).is_multiple_of(k)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalShift {
    pub t: Rational,
    pub scale: Rational,
    pub base: RatPoly,
}

/// All `t` with `|t| <= bound` for which `Q - t = a R^k`, `R` monic and
/// nonconstant, with their decompositions. Ascending in `t`.
pub fn exceptional_shifts(
    q: &RatPoly,
    k: u32,
    bound: &Rational,
) -> Result<Vec<ExceptionalShift>, ShiftError> {
    let d = param_resultant(q)?;
    let mut out = Vec::new();
    for t in rational_roots(&d)? {
        if t.abs() > *bound {
            continue;
        }
        let shifted = q - &RatPoly::constant(t.clone());
        if let Some((scale, base)) = kth_root(&shifted, k) {
            out.push(ExceptionalShift { t, scale, base });
        }
    }
    Ok(out)
}

/// `sign * M * Q = Q_e` with `M >= 1` the least common denominator, `Q_e`
/// integral with positive leading coefficient, and `M = u^k * b0` with `b0`
/// k-th-power-free.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedEquation {
    pub m: BigInt,
    pub sign: i8,
    pub q_e: RatPoly,
    pub u: BigInt,
    pub b0: BigInt,
}

impl ReducedEquation {
    /// Whether `Q_e` is primitive (coefficient gcd 1).
    pub fn is_primitive(&self) -> bool {
        self.q_e.primitive_part().0.is_one()
    }
}

pub fn reduce(q: &RatPoly, k: u32) -> Result<ReducedEquation, ShiftError> {
    let lc = q.leading().ok_or(PolyError::ZeroPolynomial("reduce"))?;
    let m = q.denominator_lcm();
    let sign: i8 = if lc.is_negative() { -1 } else { 1 };
    let q_e = q.scale(&Rational::from_integer(&m * sign));
    let (u, b0) = kth_power_free_split(m.magnitude(), k);
    Ok(ReducedEquation {
        m,
        sign,
        q_e,
        u: u.into(),
        b0: b0.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShiftClass {
    /// `Q - t = scale * base^k`.
    PowerShift {
        scale: Rational,
        base: RatPoly,
    },
    /// `Q - t = c (x - root)^d` with `k` not dividing `d`.
    SingleRoot {
        degree: usize,
        root: Rational,
        exponents_coprime: bool,
    },
    TwoRoots,
    GenusAtLeastOne {
        distinct_roots: usize,
    },
    /// Degree 2 against squares: a Pell-type conic.
    PellConic,
}

impl ShiftClass {
    pub fn label(&self) -> &'static str {
        match self {
            ShiftClass::PowerShift { .. } => "PowerShift",
            ShiftClass::SingleRoot { .. } => "SingleRoot",
            ShiftClass::TwoRoots => "TwoRoots",
            ShiftClass::GenusAtLeastOne { .. } => "GenusAtLeastOne",
            ShiftClass::PellConic => "PellConic",
        }
    }

    pub fn details(&self) -> serde_json::Value {
        match self {
            ShiftClass::PowerShift { scale, base } => json!({
                "a": format_rational(scale),
                "R": base,
            }),
            ShiftClass::SingleRoot {
                degree,
                root,
                exponents_coprime,
            } => json!({
                "degree": degree,
                "root": format_rational(root),
                "root_denominator": root.denom().to_string(),
                "exponents_coprime": exponents_coprime,
            }),
            ShiftClass::TwoRoots => json!({ "r_t": 2 }),
            ShiftClass::GenusAtLeastOne { distinct_roots } => json!({ "r_t": distinct_roots }),
            ShiftClass::PellConic => json!({}),
        }
    }
}

impl fmt::Display for ShiftClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Case split for the level-`t` equation `Q(n) - m^k = t`.
pub fn classify_shift(q: &RatPoly, t: &Rational, k: u32) -> Result<ShiftClass, ShiftError> {
    let deg = match q.degree() {
        Some(d) if d >= 2 => d,
        found => {
            return Err(PolyError::DegreeTooLow {
                op: "classify_shift",
                found,
                required: 2,
            }
            .into())
        }
    };
    assert!(k >= 2, "exponent must be at least 2");
    let shifted = q - &RatPoly::constant(t.clone());
    if let Some((scale, base)) = kth_root(&shifted, k) {
        return Ok(ShiftClass::PowerShift { scale, base });
    }
    if deg == 2 && k == 2 {
        return Ok(ShiftClass::PellConic);
    }
    let red = reduce(q, k)?;
    let level = Rational::from_integer(&red.m * red.sign) * t;
    let curve = &red.q_e - &RatPoly::constant(level);
    Ok(match distinct_root_count(&curve)? {
        1 => {
            // c (x - a)^d: a = -(coefficient of x^{d-1}) / (d * c)
            let root = -curve.coeff(deg - 1) / (curve.leading().unwrap() * int(deg as i64));
            ShiftClass::SingleRoot {
                degree: deg,
                root,
                exponents_coprime: (k as usize).gcd(&deg) == 1,
            }
        }
        2 => ShiftClass::TwoRoots,
        r => ShiftClass::GenusAtLeastOne { distinct_roots: r },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftEntry {
    pub residue: usize,
    pub t: i64,
    pub class: ShiftClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProgressionReport {
    pub bound: u32,
    pub k: u32,
    pub tolerance: u64,
    pub period: usize,
    pub theorem_hypotheses: bool,
    pub entries: Vec<ShiftEntry>,
}

impl ProgressionReport {
    /// Number of entries per class label.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.class.label()).or_insert(0) += 1;
        }
        out
    }

    /// Entries where `Q_r - t` is a scaled k-th power.
    pub fn power_shifts(&self) -> Vec<&ShiftEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.class, ShiftClass::PowerShift { .. }))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "residue": e.residue,
                    "t": e.t,
                    "class": e.class.label(),
                    "details": e.class.details(),
                })
            })
            .collect();
        json!({
            "B": self.bound,
            "k": self.k,
            "d": self.tolerance,
            "L": self.period,
            "theorem_hypotheses": self.theorem_hypotheses,
            "counts": self.counts(),
            "power_shift_count": self.power_shifts().len(),
            "table": table,
        })
    }
}

/// Classify `Q_r - t` for every residue `r` (or just `only`) and every
/// integer `|t| <= tolerance`. Output is ordered by `(r, t)`.
pub fn classify_progression(
    bound: u32,
    k: u32,
    tolerance: u64,
    only: Option<usize>,
) -> Result<ProgressionReport, ShiftError> {
    let qp = extract(bound)?;
    let residues: Vec<usize> = match only {
        Some(r) if r >= qp.period() => {
            return Err(ShiftError::ResidueOutOfRange {
                residue: r,
                period: qp.period(),
            })
        }
        Some(r) => vec![r],
        None => (0..qp.period()).collect(),
    };
    let tol = tolerance as i64;
    let pairs: Vec<(usize, i64)> = residues
        .iter()
        .flat_map(|&r| (-tol..=tol).map(move |t| (r, t)))
        .collect();
    let entries = pairs
        .into_par_iter()
        .map(|(r, t)| {
            classify_shift(qp.component(r), &int(t), k).map(|class| ShiftEntry {
                residue: r,
                t,
                class,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ProgressionReport {
        bound,
        k,
        tolerance,
        period: qp.period(),
        theorem_hypotheses: theorem_hypotheses(bound, k),
        entries,
    })
}

/// Integral points `(X, Y)` on `b0 Y^k = f(X)` with `|X| <= xmax`.
/// For even `k` only `Y >= 0` is reported; for odd `k`, `Y` takes the sign
/// of `f(X)`.
pub fn bounded_points(
    b0: &BigInt,
    f: &RatPoly,
    k: u32,
    xmax: u64,
) -> Result<Vec<(BigInt, BigInt)>, ShiftError> {
    assert!(k >= 2, "exponent must be at least 2");
    if !b0.is_positive() {
        return Err(ShiftError::NonPositiveB0);
    }
    let coeffs = f.integer_coeffs().ok_or(ShiftError::NonIntegralCurve)?;
    let bound = xmax as i64;
    let mut out = Vec::new();
    for x in -bound..=bound {
        let xb = BigInt::from(x);
        let v = coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &xb + c);
        let (w, rem) = v.div_rem(b0);
        if !rem.is_zero() || (k.is_multiple_of(2) && w.is_negative()) {
            continue;
        }
        let root = ikroot(&w.abs(), k);
        if num_traits::pow(root.clone(), k as usize) != w.abs() {
            continue;
        }
        let y = if w.is_negative() { -root } else { root };
        debug_assert_eq!(b0 * num_traits::pow(y.clone(), k as usize), v);
        out.push((xb, y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn hypotheses() {
        assert!(!theorem_hypotheses(4, 3));
        assert!(theorem_hypotheses(5, 3));
        assert!(theorem_hypotheses(4, 4));
        assert!(!theorem_hypotheses(3, 3));
        assert!(!theorem_hypotheses(6, 2));
    }

    #[test]
    fn exceptional_shift_of_residue_zero_quadratic() {
        let s = exceptional_shifts(&p(&[1, 3, 3]), 2, &int(1)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].t, rat(1, 4));
        assert_eq!(s[0].scale, int(3));
        assert_eq!(s[0].base, RatPoly::new(vec![rat(1, 2), int(1)]));
        // outside the window
        assert!(exceptional_shifts(&p(&[1, 3, 3]), 2, &rat(1, 5))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn exceptional_shift_degree_obstruction() {
        assert!(exceptional_shifts(&p(&[1, 3, 3]), 3, &int(10))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn exceptional_shift_of_cube() {
        let s = exceptional_shifts(&p(&[0, 0, 0, 1]), 3, &int(1)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(
            (s[0].t.clone(), s[0].scale.clone(), s[0].base.clone()),
            (int(0), int(1), RatPoly::x())
        );
    }

    #[test]
    fn reductions() {
        let r = reduce(&RatPoly::new(vec![int(0), int(1), rat(3, 2)]), 3).unwrap();
        assert_eq!(
            (r.m.clone(), r.u.clone(), r.b0.clone(), r.sign),
            (b(2), b(1), b(2), 1)
        );
        assert_eq!(r.q_e, p(&[0, 2, 3]));
        assert!(r.is_primitive());

        let r = reduce(&p(&[1, 3, 3]), 3).unwrap();
        assert_eq!((r.m.clone(), r.u.clone(), r.b0.clone()), (b(1), b(1), b(1)));

        let r = reduce(&RatPoly::new(vec![int(1), rat(1, 8)]), 3).unwrap();
        assert_eq!((r.m.clone(), r.u.clone(), r.b0.clone()), (b(8), b(2), b(1)));

        let r = reduce(&RatPoly::new(vec![int(1), rat(-1, 2)]), 2).unwrap();
        assert_eq!(r.sign, -1);
        assert_eq!(r.q_e, p(&[-2, 1]));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_shift(&p(&[0, 0, 0, 1]), &int(0), 3).unwrap(),
            ShiftClass::PowerShift {
                scale: int(1),
                base: RatPoly::x()
            }
        );
        assert_eq!(
            classify_shift(&p(&[1, 3, 3]), &int(0), 2).unwrap(),
            ShiftClass::PellConic
        );
        // residue 0 of B = 5: 4500x^4 + 2250x^3 + (775/2)x^2 + (55/2)x + 1,
        // square-free (gcd with derivative is 1 by sympy)
        let q = RatPoly::new(vec![int(1), rat(55, 2), rat(775, 2), int(2250), int(4500)]);
        assert_eq!(
            classify_shift(&q, &int(0), 3).unwrap(),
            ShiftClass::GenusAtLeastOne { distinct_roots: 4 }
        );
    }

    #[test]
    fn classify_single_and_two_roots() {
        // 2 (x - 1/3)^4 + 5 at t = 5, k = 3
        let base = RatPoly::new(vec![rat(-1, 3), int(1)]);
        let q = &base.pow(4).scale(&int(2)) + &RatPoly::constant(int(5));
        assert_eq!(
            classify_shift(&q, &int(5), 3).unwrap(),
            ShiftClass::SingleRoot {
                degree: 4,
                root: rat(1, 3),
                exponents_coprime: true
            }
        );
        // same with k = 2 is a power shift
        assert!(matches!(
            classify_shift(&q, &int(5), 2).unwrap(),
            ShiftClass::PowerShift { .. }
        ));
        // (x-1)^2 (x+2) = x^3 - 3x + 2 at t = 0
        assert_eq!(
            classify_shift(&p(&[2, -3, 0, 1]), &int(0), 3).unwrap(),
            ShiftClass::TwoRoots
        );
        // quadratic against cubes with a double root
        assert_eq!(
            classify_shift(&p(&[1, 2, 1]), &int(0), 3).unwrap(),
            ShiftClass::SingleRoot {
                degree: 2,
                root: int(-1),
                exponents_coprime: true
            }
        );
        // (x - 2)^6 against fourth powers: gcd(4, 6) = 2
        assert_eq!(
            classify_shift(&p(&[-2, 1]).pow(6), &int(0), 4).unwrap(),
            ShiftClass::SingleRoot {
                degree: 6,
                root: int(2),
                exponents_coprime: false
            }
        );
    }

    #[test]
    fn classify_rejects_linear() {
        assert!(classify_shift(&p(&[1, 1]), &int(0), 2).is_err());
    }

    #[test]
    fn b3_progression() {
        let rep = classify_progression(3, 2, 0, None).unwrap();
        assert_eq!(rep.entries.len(), 6);
        for e in &rep.entries {
            if e.residue == 3 {
                assert_eq!(
                    e.class,
                    ShiftClass::PowerShift {
                        scale: int(3),
                        base: p(&[1, 1])
                    }
                );
            } else {
                assert_eq!(e.class, ShiftClass::PellConic);
            }
        }
        assert!(!rep.theorem_hypotheses);
        let only = classify_progression(3, 2, 0, Some(3)).unwrap();
        assert_eq!(only.entries.len(), 1);
        assert!(classify_progression(3, 2, 0, Some(6)).is_err());
    }

    #[test]
    fn b4_progression_has_no_power_shifts() {
        let rep = classify_progression(4, 4, 0, None).unwrap();
        assert_eq!(rep.entries.len(), 12);
        assert!(rep.power_shifts().is_empty());
        assert!(rep.entries.iter().all(|e| matches!(
            e.class,
            ShiftClass::SingleRoot { .. }
                | ShiftClass::TwoRoots
                | ShiftClass::GenusAtLeastOne { .. }
        )));
        assert!(rep.theorem_hypotheses);
    }

    #[test]
    fn curve_points() {
        let pts = bounded_points(&b(1), &p(&[0, 0, 0, 1]), 3, 5).unwrap();
        assert_eq!(pts, (-5..=5).map(|x| (b(x), b(x))).collect::<Vec<_>>());

        let pts = bounded_points(&b(1), &p(&[1, 3, 3]), 2, 200).unwrap();
        let xs: Vec<BigInt> = pts
            .iter()
            .map(|(x, _)| x.clone())
            .filter(|x| !x.is_negative())
            .collect();
        assert_eq!(xs, vec![b(0), b(7), b(104)]);

        let pts = bounded_points(&b(2), &p(&[0, 0, 2]), 2, 3).unwrap();
        assert_eq!(
            pts,
            (-3..=3)
                .map(|x: i64| (b(x), b(x.abs())))
                .collect::<Vec<_>>()
        );

        assert_eq!(
            bounded_points(&b(0), &p(&[1]), 2, 1),
            Err(ShiftError::NonPositiveB0)
        );
        assert_eq!(
            bounded_points(&b(1), &RatPoly::new(vec![rat(1, 2)]), 2, 1),
            Err(ShiftError::NonIntegralCurve)
        );
    }

    #[test]
    fn report_json() {
        let v = classify_progression(3, 2, 0, None).unwrap().to_json();
        assert_eq!(v["power_shift_count"], 1);
        assert_eq!(v["counts"]["PellConic"], 5);
        assert_eq!(v["table"][3]["class"], "PowerShift");
        assert_eq!(v["table"][3]["details"]["R"], json!(["1/1", "1/1"]));
    }
}
