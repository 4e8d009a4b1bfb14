//! Scalar abstraction for the series and linear-algebra layers.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

/// Coefficient type for [`crate::series::TruncatedSeries`] and
/// [`crate::linalg::SparseMatrix`].
///
/// Anything with field-like arithmetic works; the Betti-number pipeline
/// instantiates everything at [`num_rational::BigRational`],
/// which is the only choice for which results are exact. `f32`/`f64` are
/// provided for quick numeric experiments.
pub trait Scalar:
    Num + Clone + Neg<Output = Self> + PartialEq + Debug + Display + Send + Sync + 'static
{
    /// Embed an arbitrary-precision integer.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigint_embedding() {
        let n = BigInt::from(-42);
        assert_eq!(BigRational::from_bigint(&n), BigRational::from_int(-42));
        assert_eq!(f64::from_bigint(&n), -42.0);
    }

    #[test]
    fn huge_integer_is_exact_for_rationals() {
        let n: BigInt = "340282366920938463463374607431768211456".parse().unwrap();
        assert_eq!(BigRational::from_bigint(&n).to_integer(), n);
    }
}
