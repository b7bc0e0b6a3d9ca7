use std::fmt;
use std::ops::{AddAssign, MulAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Matrix, NumericsError, RowVec};

/// Exact arbitrary-precision rational. `num-rational` keeps it reduced with a
/// positive denominator after every operation.
pub type Rational = BigRational;

/// Comparison tolerance of the floating-point backend.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float => "float",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = NumericsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(Backend::Rational),
            "float" => Ok(Backend::Float),
            other => Err(NumericsError::UnknownBackend(other.to_string())),
        }
    }
}

/// Field element used for matrix entries, vectors and cut points.
///
/// Each implementor is one backend. Values of different backends never meet in
/// one expression: mixing is a type error rather than a silent conversion.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Signed
    + for<'a> AddAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    const BACKEND: Backend;

    fn mul_ref(&self, other: &Self) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_integer(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    /// Equality: exact for rationals, within [`FLOAT_TOLERANCE`] for floats.
    fn approx_eq(&self, other: &Self) -> bool;

    /// Strict comparison `self > threshold`. Floats must clear the threshold by
    /// more than the tolerance.
    fn exceeds(&self, threshold: &Self) -> bool;

    fn is_nonnegative(&self) -> bool;

    fn to_literal(&self) -> String;

    fn parse_literal(text: &str) -> Result<Self, NumericsError>;

    /// A matrix prepared for repeated `row · M` products.
    type Kernel: Clone + fmt::Debug + Send + Sync;

    fn kernel(m: &Matrix<Self>) -> Self::Kernel;

    /// `row · M`; `row` must have as many entries as `M` has rows.
    fn apply_kernel(row: &RowVec<Self>, kernel: &Self::Kernel) -> RowVec<Self>;
}

/// `M = N / d` with `N` integral, stored by sparse rows. Products against it
/// run in integer arithmetic and reduce once per entry.
#[derive(Clone, Debug)]
pub struct IntegerKernel {
    denom: BigInt,
    cols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

fn common_denominator<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| num_integer::Integer::lcm(&acc, v.denom()))
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn exceeds(&self, threshold: &Self) -> bool {
        self > threshold
    }

    fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    fn to_literal(&self) -> String {
        self.to_string()
    }

    fn parse_literal(text: &str) -> Result<Self, NumericsError> {
        let trimmed = text.trim();
        let invalid = || NumericsError::InvalidLiteral {
            text: text.to_string(),
            backend: Backend::Rational,
        };
        let (numer, denom) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (trimmed, "1"),
        };
        let numer: BigInt = numer.parse().map_err(|_| invalid())?;
        let denom: BigInt = denom.parse().map_err(|_| invalid())?;
        if denom.is_zero() {
            return Err(invalid());
        }
        Ok(Rational::new(numer, denom))
    }

    type Kernel = IntegerKernel;

    fn kernel(m: &Matrix<Self>) -> IntegerKernel {
        let denom = common_denominator(m.entries().iter());
        let rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.numer() * (&denom / v.denom())))
                    .collect()
            })
            .collect();
        IntegerKernel {
            denom,
            cols: m.cols(),
            rows,
        }
    }

    fn apply_kernel(row: &RowVec<Self>, kernel: &IntegerKernel) -> RowVec<Self> {
        let rho = common_denominator(row.0.iter());
        let mut acc = vec![BigInt::zero(); kernel.cols];
        for (a, entries) in row.0.iter().zip(&kernel.rows) {
            if a.is_zero() {
                continue;
            }
            let scaled = a.numer() * (&rho / a.denom());
            for (j, b) in entries {
                acc[*j] += &scaled * b;
            }
        }
        let denom = rho * &kernel.denom;
        RowVec(
            acc.into_iter()
                .map(|n| Rational::new(n, denom.clone()))
                .collect(),
        )
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOLERANCE
    }

    fn exceeds(&self, threshold: &Self) -> bool {
        self - threshold > FLOAT_TOLERANCE
    }

    fn is_nonnegative(&self) -> bool {
        *self >= -FLOAT_TOLERANCE
    }

    fn to_literal(&self) -> String {
        // `{:?}` keeps a trailing `.0` so the literal reads as a float.
        format!("{self:?}")
    }

    fn parse_literal(text: &str) -> Result<Self, NumericsError> {
        let trimmed = text.trim();
        let invalid = || NumericsError::InvalidLiteral {
            text: text.to_string(),
            backend: Backend::Float,
        };
        let value = match trimmed.split_once('/') {
            Some((n, d)) => {
                let n: f64 = n.trim().parse().map_err(|_| invalid())?;
                let d: f64 = d.trim().parse().map_err(|_| invalid())?;
                n / d
            }
            None => trimmed.parse().map_err(|_| invalid())?,
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(invalid())
        }
    }

    type Kernel = Matrix<f64>;

    fn kernel(m: &Matrix<Self>) -> Matrix<f64> {
        m.clone()
    }

    fn apply_kernel(row: &RowVec<Self>, kernel: &Matrix<f64>) -> RowVec<Self> {
        row.mul_matrix(kernel).expect("row length matches the kernel")
    }
}

/// Shorthand for an exact rational `numer/denom`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::from_ratio(numer, denom)
}

/// Smallest integer strictly greater than `value`.
pub fn next_integer_above(value: &Rational) -> Rational {
    value.floor() + Rational::one()
}
