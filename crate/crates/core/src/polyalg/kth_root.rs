use super::Poly;
use crate::scalar::Scalar;

/// Decompose `f = a * R^k` with `R` monic and nonconstant.
///
/// `a` is the leading coefficient of `f`. `R` is found by matching the top
/// `deg R` coefficients of `f / a` against `R^k` one at a time, then checked
/// by full expansion. Returns `None` when `deg f` is not a positive multiple
/// of `k` or no such `R` exists.
pub fn kth_root<T: Scalar>(f: &Poly<T>, k: u32) -> Option<(T, Poly<T>)> {
    assert!(k >= 2, "kth_root needs k >= 2");
    let deg = f.degree()?;
    let k_us = k as usize;
    if deg == 0 || deg % k_us != 0 {
        return None;
    }
    let e = deg / k_us;
    let a = f.leading()?.clone();
    let target = f.monic();
    let k_t = T::from_i64(k as i64);

    // R = x^e + r_{e-1} x^{e-1} + ... ; the coefficient of x^{deg-j} in R^k is
    // k * r_{e-j} plus terms in the higher r's already fixed.
    let mut r = vec![T::zero(); e + 1];
    r[e] = T::one();
    for j in 1..=e {
        let partial = Poly::new(r.clone()).pow(k);
        let gap = target.coeff(deg - j) - partial.coeff(deg - j);
        r[e - j] = gap / k_t.clone();
    }
    let root = Poly::new(r);
    if root.pow(k).scale(&a) == *f {
        Some((a, root))
    } else {
        None
    }
}
