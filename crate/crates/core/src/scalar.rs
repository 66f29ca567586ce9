//! Coefficient rings.
//!
//! Every algebraic routine is generic over [`Scalar`]. Exact work uses
//! [`BigRational`]; numeric work uses complex double-double numbers.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use twofloat::TwoFloat;

pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    /// True for exact rings, where zero tests are meaningful.
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;

    /// Absolute value as an `f64`, used for residual norms and pivoting.
    fn magnitude(&self) -> f64;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex<f64> {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        Complex::new(f64::from_rational(q), 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for TwoFloat {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        bigint_to_twofloat(q.numer()) / bigint_to_twofloat(q.denom())
    }

    fn magnitude(&self) -> f64 {
        self.hi().abs()
    }
}

impl Scalar for Complex<TwoFloat> {
    const EXACT: bool = false;

    fn from_rational(q: &BigRational) -> Self {
        Complex::new(TwoFloat::from_rational(q), TwoFloat::zero())
    }

    fn magnitude(&self) -> f64 {
        self.re.hi().hypot(self.im.hi())
    }
}

/// Converts a big integer to double-double, keeping about 106 bits.
pub fn bigint_to_twofloat(n: &BigInt) -> TwoFloat {
    let hi = n.to_f64().unwrap_or(f64::INFINITY);
    if !hi.is_finite() {
        return TwoFloat::from(hi);
    }
    let hi_int: BigInt = num_traits::FromPrimitive::from_f64(hi).unwrap_or_else(BigInt::zero);
    let rest = (n - hi_int).to_f64().unwrap_or(0.0);
    TwoFloat::from(hi) + TwoFloat::from(rest)
}
