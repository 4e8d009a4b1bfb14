//! Truncated formal power series in one variable `t`.
//!
//! A series carries its coefficients up to an explicit truncation order;
//! arithmetic results are truncated to the smallest order among the operands.
//! Division only ever happens by powers of `t` (an exact shift, which fails
//! loudly if low-order coefficients are nonzero) or by multiplying with a
//! precomputed geometric series — no general inversion.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use thiserror::Error;

use crate::comb::ext_binom;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("inexact division by t: coefficient of t^{degree} is nonzero")]
    InexactShift { degree: usize },
    #[error("shift by {shift} drops below order zero (truncation {trunc})")]
    ShiftUnderflow { shift: i64, trunc: usize },
    #[error("coefficient of t^{j} is beyond truncation order {trunc}")]
    BeyondTruncation { j: usize, trunc: usize },
}

/// Power series known exactly through `t^trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>, // length trunc + 1
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![T::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(T::one(), 0, trunc)
    }

    /// The series `c * t^exp`.
    pub fn monomial(c: T, exp: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if exp <= trunc {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Build from explicit coefficients `c0, c1, ...`; the truncation order is
    /// `coeffs.len() - 1`. Must be nonempty.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the t^0 coefficient"
        );
        TruncatedSeries { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coefficient(&self, j: usize) -> Result<&T, SeriesError> {
        self.coeffs.get(j).ok_or(SeriesError::BeyondTruncation {
            j,
            trunc: self.trunc(),
        })
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiply by `t^m`. Negative `m` divides and requires the coefficients
    /// of `t^0 ... t^{-m-1}` to vanish. The truncation order moves with the
    /// shift: coefficients of the result are known exactly through
    /// `trunc + m`.
    pub fn shift(&self, m: i64) -> Result<Self, SeriesError> {
        let trunc = self.trunc();
        if m >= 0 {
            let m = m as usize;
            let mut coeffs = vec![T::zero(); trunc + 1 + m];
            for (j, c) in self.coeffs.iter().enumerate() {
                coeffs[j + m] = c.clone();
            }
            return Ok(TruncatedSeries { coeffs });
        }
        let drop = (-m) as usize;
        if drop > trunc {
            return Err(SeriesError::ShiftUnderflow { shift: m, trunc });
        }
        for (degree, c) in self.coeffs.iter().take(drop).enumerate() {
            if !c.is_zero() {
                return Err(SeriesError::InexactShift { degree });
            }
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[drop..].to_vec(),
        })
    }

    /// Re-truncate to a lower order (no-op if already lower).
    pub fn truncate(&self, new_trunc: usize) -> Self {
        let keep = new_trunc.min(self.trunc());
        TruncatedSeries {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    /// Coefficient-wise equality through the smaller of the two truncations.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.trunc().min(other.trunc());
        self.coeffs[..=n] == other.coeffs[..=n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// All coefficients as exact strings, for JSON dumps.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl<T: Scalar> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn add(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let n = self.trunc().min(rhs.trunc());
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|j| self.coeffs[j].clone() + rhs.coeffs[j].clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn sub(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let n = self.trunc().min(rhs.trunc());
        TruncatedSeries {
            coeffs: (0..=n)
                .map(|j| self.coeffs[j].clone() - rhs.coeffs[j].clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    /// Cauchy product through the shared truncation order.
    fn mul(self, rhs: &TruncatedSeries<T>) -> TruncatedSeries<T> {
        let n = self.trunc().min(rhs.trunc());
        let mut coeffs = vec![T::zero(); n + 1];
        for (a, ca) in self.coeffs.iter().enumerate().take(n + 1) {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in rhs.coeffs.iter().enumerate().take(n + 1 - a) {
                if cb.is_zero() {
                    continue;
                }
                coeffs[a + b] = coeffs[a + b].clone() + ca.clone() * cb.clone();
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl<T: Scalar> fmt::Display for TruncatedSeries<T> {
    /// Renders as `c0 + c1*t + c2*t^2 + ...`, skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{j}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `1 / (1 - t)^m` through `t^trunc`; for `m >= 1` the coefficient of `t^j`
/// is `C(m + j - 1, j)`, and `m = 0` is the empty product 1.
pub fn geometric_power<T: Scalar>(m: usize, trunc: usize) -> TruncatedSeries<T> {
    if m == 0 {
        return TruncatedSeries::one(trunc);
    }
    let coeffs = (0..=trunc)
        .map(|j| T::from_bigint(&BigInt::from(ext_binom((m + j) as i64 - 1, j as i64))))
        .collect();
    TruncatedSeries::from_coeffs(coeffs)
}

/// `1 / (1 + t)` through `t^trunc`.
pub fn inv_one_plus_t<T: Scalar>(trunc: usize) -> TruncatedSeries<T> {
    let coeffs = (0..=trunc)
        .map(|j| if j % 2 == 0 { T::one() } else { -T::one() })
        .collect();
    TruncatedSeries::from_coeffs(coeffs)
}

/// Poincaré series `1 / (1 - t)^{2g}` of the free graded-commutative algebra
/// on `g` exterior pairs in degree 1 and `g` polynomial pairs in degree 2.
pub fn x_series<T: Scalar>(g: usize, trunc: usize) -> TruncatedSeries<T> {
    geometric_power(2 * g, trunc)
}

/// Poincaré series `1 / (1 - t^2)^2` of a polynomial algebra on two
/// degree-2 generators.
pub fn s_series<T: Scalar>(trunc: usize) -> TruncatedSeries<T> {
    let mut coeffs = vec![T::zero(); trunc + 1];
    for (l, c) in coeffs.iter_mut().enumerate().filter(|(l, _)| l % 2 == 0) {
        *c = T::from_int((l / 2 + 1) as i64);
    }
    TruncatedSeries::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use proptest::prelude::*;

    type S = TruncatedSeries<Rat>;

    fn series(coeffs: &[i64]) -> S {
        S::from_coeffs(coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    #[test]
    fn product_of_binomials() {
        let a = series(&[1, 1, 0, 0]); // 1 + t
        let b = series(&[1, -1, 0, 0]); // 1 - t
        assert_eq!(&a * &b, series(&[1, 0, -1, 0]));
    }

    #[test]
    fn shift_divides_exactly() {
        let a = series(&[0, 0, 1, 1]); // t^2 + t^3
        assert_eq!(a.shift(-2).unwrap(), series(&[1, 1]));
    }

    #[test]
    fn shift_rejects_nonzero_low_coefficients() {
        let a = series(&[1, 1]);
        assert_eq!(a.shift(-1), Err(SeriesError::InexactShift { degree: 0 }));
    }

    #[test]
    fn shift_tracks_truncation() {
        let a = series(&[1, 2, 3]);
        assert_eq!(a.shift(2).unwrap(), series(&[0, 0, 1, 2, 3]));
        assert_eq!(a.shift(2).unwrap().trunc(), 4);
        assert!(matches!(
            series(&[0, 0, 1]).shift(-4),
            Err(SeriesError::ShiftUnderflow { .. })
        ));
    }

    #[test]
    fn geometric_power_values() {
        assert_eq!(geometric_power::<Rat>(2, 4), series(&[1, 2, 3, 4, 5]));
        assert_eq!(geometric_power::<Rat>(0, 3), series(&[1, 0, 0, 0]));
        // coefficient of t^i in 1/(1-t)^{2g} is C(2g+i-1, i)
        let x3 = x_series::<Rat>(3, 8);
        assert_eq!(
            x3.coefficient(2).unwrap(),
            &Rat::from_int(i64::try_from(ext_binom(7, 2)).unwrap_or(21))
        );
    }

    #[test]
    fn s_series_values() {
        assert_eq!(s_series::<Rat>(6), series(&[1, 0, 2, 0, 3, 0, 4]));
    }

    #[test]
    fn x_series_low_genus() {
        assert_eq!(x_series::<Rat>(0, 4), series(&[1, 0, 0, 0, 0]));
        assert_eq!(x_series::<Rat>(1, 4), series(&[1, 2, 3, 4, 5]));
    }

    #[test]
    fn coefficient_beyond_truncation_errors() {
        let a = series(&[1, 2]);
        assert_eq!(a.coefficient(1).unwrap(), &Rat::from_int(2));
        assert_eq!(
            a.coefficient(2),
            Err(SeriesError::BeyondTruncation { j: 2, trunc: 1 })
        );
    }

    #[test]
    fn inv_one_plus_t_is_inverse() {
        let a = inv_one_plus_t::<Rat>(6);
        let one_plus_t = series(&[1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(&a * &one_plus_t, S::one(6));
    }

    #[test]
    fn display_skips_zero_terms() {
        assert_eq!(series(&[1, 0, 2]).to_string(), "1 + 2*t^2");
        assert_eq!(S::zero(3).to_string(), "0");
        assert_eq!(series(&[0, 1]).to_string(), "1*t");
    }

    fn arb_series(max_len: usize) -> impl Strategy<Value = S> {
        proptest::collection::vec((-9i64..10, 1i64..5), 1..=max_len).prop_map(|pairs| {
            S::from_coeffs(
                pairs
                    .into_iter()
                    .map(|(n, d)| Rat::new(n.into(), d.into()))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn mul_commutes(a in arb_series(8), b in arb_series(8)) {
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn mul_associates(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn one_is_a_unit(a in arb_series(8)) {
            let one = S::one(a.trunc());
            prop_assert_eq!(&a * &one, a.clone());
        }

        #[test]
        fn truncation_is_min_of_operands(a in arb_series(8), b in arb_series(8)) {
            let n = a.trunc().min(b.trunc());
            prop_assert_eq!((&a + &b).trunc(), n);
            prop_assert_eq!((&a * &b).trunc(), n);
        }
    }
}
