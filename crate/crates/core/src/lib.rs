//! Double shuffle and distribution relations for multiple polylogarithms at
//! roots of unity: truncated series over X and Y, the MT group, the DMR
//! varieties and their tangent Lie algebras, a torsor solver producing
//! rational points, and a numeric oracle based on partial sums.

pub mod dmr;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod mt;
pub mod numeric;
pub mod regularize;
pub mod scalar;
pub mod series;
pub mod torsor;
pub mod words;

use num_complex::Complex;
use num_rational::BigRational;
use twofloat::TwoFloat;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use series::{Alphabet, Coproduct, Series, Tensor};
pub use words::{CyclicGroup, Letter, Word, YLetter, YWord};

/// Exact rationals.
pub type Q = BigRational;
/// Double-double reals used by the numeric oracle.
pub type Real = TwoFloat;
/// Double-double complex numbers.
pub type CNum = Complex<TwoFloat>;

pub type QSeries = Series<Q>;
pub type NumSeries = Series<CNum>;
