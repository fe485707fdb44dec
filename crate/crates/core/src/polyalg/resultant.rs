//! Resultants: a Sylvester-determinant route that carries one symbolic
//! parameter `t`, and a scalar Euclidean route used to cross-check it.

use super::{Poly, PolyError};
use crate::scalar::Scalar;

/// Polynomial in `x` whose coefficients are affine in a parameter `t`:
/// the coefficient of `x^i` is `lin[i][0] + lin[i][1] * t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPoly<T> {
    lin: Vec<[T; 2]>,
}

impl<T: Scalar> ParamPoly<T> {
    pub fn new(lin: Vec<[T; 2]>) -> Self {
        ParamPoly { lin }
    }

    /// `q(x) - t`
    pub fn shifted(q: &Poly<T>) -> Self {
        let mut lin: Vec<[T; 2]> = q.coeffs().iter().map(|c| [c.clone(), T::zero()]).collect();
        if lin.is_empty() {
            lin.push([T::zero(), T::zero()]);
        }
        lin[0][1] = -T::one();
        ParamPoly { lin }
    }

    /// Substitute a value for `t`.
    pub fn specialize(&self, t: &T) -> Poly<T> {
        Poly::new(
            self.lin
                .iter()
                .map(|[c0, c1]| c0.clone() + c1.clone() * t.clone())
                .collect(),
        )
    }

    /// Coefficients of `x^i` as polynomials in `t`, constant term first.
    pub fn coefficient_polys(&self) -> Vec<Poly<T>> {
        let mut out: Vec<Poly<T>> = self
            .lin
            .iter()
            .map(|[c0, c1]| Poly::new(vec![c0.clone(), c1.clone()]))
            .collect();
        while out.last().is_some_and(|p| p.is_zero()) {
            out.pop();
        }
        out
    }
}

/// Sylvester matrix of two coefficient sequences (constant term first) whose
/// entries live in the ring of polynomials in `t`.
pub fn sylvester_matrix<T: Scalar>(f: &[Poly<T>], g: &[Poly<T>]) -> Vec<Vec<Poly<T>>> {
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, copies) in [(f, n), (g, m)] {
        for shift in 0..copies {
            let mut row = vec![Poly::zero(); size];
            for (j, c) in src.iter().rev().enumerate() {
                row[shift + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Fraction-free (Bareiss) determinant over `T[t]`. Every intermediate
/// division is exact.
pub fn bareiss_determinant<T: Scalar>(mut m: Vec<Vec<Poly<T>>>) -> Poly<T> {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                let (q, r) = num.div_rem(&prev).expect("Bareiss pivot is nonzero");
                debug_assert!(r.is_zero(), "inexact Bareiss step");
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `D(t) = Res_x(Q(x) - t, Q'(x))` as a polynomial in `t`. Every critical
/// value of `Q` is a root of `D`.
pub fn param_resultant<T: Scalar>(q: &Poly<T>) -> Result<Poly<T>, PolyError> {
    match q.degree() {
        Some(d) if d >= 2 => {}
        found => {
            return Err(PolyError::DegreeTooLow {
                op: "param_resultant",
                found,
                required: 2,
            })
        }
    }
    let f = ParamPoly::shifted(q).coefficient_polys();
    let g: Vec<Poly<T>> = q
        .derivative()
        .coeffs()
        .iter()
        .cloned()
        .map(Poly::constant)
        .collect();
    Ok(bareiss_determinant(sylvester_matrix(&f, &g)))
}

fn pow_scalar<T: Scalar>(base: &T, exp: usize) -> T {
    (0..exp).fold(T::one(), |acc, _| acc * base.clone())
}

/// Scalar resultant by the Euclidean remainder sequence. Same sign
/// convention as the Sylvester determinant.
pub fn resultant<T: Scalar>(f: &Poly<T>, g: &Poly<T>) -> T {
    let mut acc = T::one();
    let (mut a, mut b) = (f.clone(), g.clone());
    loop {
        let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
            return T::zero();
        };
        if n == 0 {
            return acc * pow_scalar(b.leading().unwrap(), m);
        }
        if m == 0 {
            return acc * pow_scalar(a.leading().unwrap(), n);
        }
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        let Some(p) = r.degree() else {
            return T::zero();
        };
        if m % 2 == 1 && n % 2 == 1 {
            acc = -acc;
        }
        acc = acc * pow_scalar(b.leading().unwrap(), m - p);
        a = b;
        b = r;
    }
}
