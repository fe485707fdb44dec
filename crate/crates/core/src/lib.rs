//! Exact computations around restricted partition functions `p_B(n)`: the
//! partition counts themselves, their quasipolynomial structure on residue
//! classes, Pell families of square values of `p_3`, distances to the nearest
//! perfect power, and the Diophantine classification of shifted residue
//! polynomials `Q_r(x) - t`.
//!
//! The polynomial layer is generic over a coefficient field ([`Scalar`]); the
//! rest of the crate works over [`Rational`] and [`BigInt`].

pub mod arith;
pub mod partition;
pub mod pell;
pub mod polyalg;
pub mod quasipoly;
pub mod repulsion;
pub mod scalar;
pub mod shift;

pub use num_bigint::BigInt;

pub use partition::{p_brute, p_brute_parts, p_single, p_table, PartitionTable};
pub use pell::{family, find_seed, unit_apply, PellFamily, PellSolution};
pub use polyalg::{ParamPoly, Poly};
pub use quasipoly::{extract, lcm_upto, qp_eval, Quasipoly};
pub use repulsion::{delta, ikroot, p2_family, scan, Hit};
pub use scalar::Scalar;
pub use shift::{classify_progression, classify_shift, exceptional_shifts, reduce, ShiftClass};

/// Exact rational number; the coefficient field of every polynomial in the
/// exact pipeline.
pub type Rational = num_rational::BigRational;

/// Polynomial over [`Rational`].
pub type RatPoly = Poly<Rational>;

/// Polynomial over `f64`.
pub type F64Poly = Poly<f64>;

/// Build a [`Rational`] from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Build an integral [`Rational`].
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}
