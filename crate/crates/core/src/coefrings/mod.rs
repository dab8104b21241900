//! Exact scalars and truncated series.
//!
//! Everything is exact: rationals, rational functions of a root `w` of `q`,
//! truncated multivariate series with those coefficients, and Laurent series
//! in `ξ = log q`.

pub mod cyclotomic;
mod laurent;
mod novikov;
mod qcoef;
mod xi;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

pub use laurent::LaurentPoly;
pub use novikov::NovikovSeries;
pub use qcoef::QCoefficient;
pub use xi::{lambda_expand, XiSeries};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoefError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exp needs a series without constant term")]
    ExpConstantTerm,
    #[error("log needs a series with constant term exactly 1")]
    LogConstantTerm,
    #[error("series have different variables or truncation")]
    Incompatible,
    #[error("denominator vanishes to every computed order at w = 1")]
    EssentialDegeneracy,
    #[error("cannot parse coefficient `{0}`")]
    Parse(String),
}

/// Coefficient field for Fock-space computations.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + From<Rational>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Send
        + Sync
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + From<Rational>
{
}

impl Add for QCoefficient {
    type Output = QCoefficient;
    fn add(self, rhs: Self) -> Self {
        QCoefficient::add(&self, &rhs)
    }
}

impl Sub for QCoefficient {
    type Output = QCoefficient;
    fn sub(self, rhs: Self) -> Self {
        QCoefficient::sub(&self, &rhs)
    }
}

impl Mul for QCoefficient {
    type Output = QCoefficient;
    fn mul(self, rhs: Self) -> Self {
        QCoefficient::mul(&self, &rhs)
    }
}

impl Neg for QCoefficient {
    type Output = QCoefficient;
    fn neg(self) -> Self {
        QCoefficient::neg(&self)
    }
}

impl Zero for QCoefficient {
    fn zero() -> Self {
        QCoefficient::zero()
    }
    fn is_zero(&self) -> bool {
        QCoefficient::is_zero(self)
    }
}

impl One for QCoefficient {
    fn one() -> Self {
        QCoefficient::one()
    }
}

/// `a/b` for small integers.
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// Parses `a`, `a/b` or `-a/b`.
pub fn parse_rational(s: &str) -> Result<Rational, CoefError> {
    s.trim().parse::<Rational>().map_err(|_| CoefError::Parse(s.to_string()))
}
