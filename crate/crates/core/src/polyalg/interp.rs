use super::Poly;
use crate::scalar::Scalar;

/// Newton divided-difference interpolation through `(x_i, y_i)`, returned in
/// the monomial basis. Nodes must be pairwise distinct.
pub fn interpolate<T: Scalar>(points: &[(T, T)]) -> Poly<T> {
    let n = points.len();
    let mut dd: Vec<T> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = dd[i].clone() - dd[i - 1].clone();
            let den = points[i].0.clone() - points[i - level].0.clone();
            dd[i] = num / den;
        }
    }
    // Horner on the Newton form: c0 + (x - x0)(c1 + (x - x1)(c2 + ...))
    let mut acc = Poly::zero();
    for i in (0..n).rev() {
        let lin = Poly::new(vec![-points[i].0.clone(), T::one()]);
        acc = &(&acc * &lin) + &Poly::constant(dd[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, RatPoly};

    #[test]
    fn recovers_quadratic() {
        let q = RatPoly::from_i64s(&[1, 3, 3]);
        let pts: Vec<_> = (0..3).map(|i| (int(i), q.eval(&int(i)))).collect();
        assert_eq!(interpolate(&pts), q);
    }

    #[test]
    fn empty_and_single() {
        assert_eq!(interpolate::<crate::Rational>(&[]), RatPoly::zero());
        assert_eq!(interpolate(&[(int(4), int(9))]), RatPoly::constant(int(9)));
    }
}
