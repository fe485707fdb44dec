use super::{Poly, PolyError};
use crate::scalar::Scalar;

/// Monic gcd by the Euclidean algorithm over the coefficient field.
pub fn gcd<T: Scalar>(f: &Poly<T>, g: &Poly<T>) -> Result<Poly<T>, PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::GcdOfZeros);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Number of distinct roots over the algebraic closure: `deg f - deg gcd(f, f')`.
pub fn distinct_root_count<T: Scalar>(f: &Poly<T>) -> Result<usize, PolyError> {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        found => {
            return Err(PolyError::DegreeTooLow {
                op: "distinct_root_count",
                found,
                required: 1,
            })
        }
    };
    let g = gcd(f, &f.derivative())?;
    // f' is nonzero here, so g is nonzero
    Ok(deg - g.degree().unwrap_or(0))
}
