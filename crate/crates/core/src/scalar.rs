//! Scalar fields used by every matrix type in the crate.
//!
//! Two implementations exist. [`Rational`] is exact and is the default
//! everywhere. `f64` is provided for speed comparisons; every sign or
//! equality test on floats goes through [`FLOAT_TOLERANCE`].

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number.
pub type Rational = num_rational::BigRational;

/// Absolute tolerance for every float comparison.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Display + Send + Sync + 'static {
    /// `true` when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Sign of the value; floats within the tolerance of zero are `Equal`.
    fn sign(&self) -> Ordering;

    fn is_negligible(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Tolerance-aware comparison.
    fn compare(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }

    /// Preference for pivot selection in elimination. Exact fields accept
    /// the first nonzero entry, so this returns a constant for them.
    fn pivot_weight(&self) -> f64;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if Signed::is_negative(self) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn pivot_weight(&self) -> f64 {
        1.0
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sign(&self) -> Ordering {
        if self.abs() <= FLOAT_TOLERANCE {
            Ordering::Equal
        } else if *self < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn pivot_weight(&self) -> f64 {
        self.abs()
    }
}

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_f64(v)
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if Signed::is_negative(q) {
        return None;
    }
    let (num, den) = (q.numer(), q.denom());
    let rn = num.sqrt();
    let rd = den.sqrt();
    (&rn * &rn == *num && &rd * &rd == *den).then(|| Rational::new(rn, rd))
}
