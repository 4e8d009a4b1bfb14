//! Arbitrary-precision binomial and trinomial coefficients with the extended
//! conventions used by the closed-form Betti formulas.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)` for `0 <= k <= n`.
pub fn binom_u(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i; // exact: every prefix product of a binomial is an integer
    }
    acc
}

/// Extended binomial coefficient over all integer arguments.
///
/// Equals the standard `C(n, k)` for `0 <= k <= n`, equals 1 at the single
/// exceptional point `(-1, -1)`, and vanishes everywhere else. In particular
/// `ext_binom(n, 0) = 0` for every `n < 0`; the generalized-binomial value 1
/// would contradict the homology oracle.
pub fn ext_binom(n: i64, k: i64) -> BigUint {
    if n == -1 && k == -1 {
        return BigUint::one();
    }
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    binom_u(n as u64, k as u64)
}

/// Trinomial coefficient `N! / (k1! k2! (N - k1 - k2)!)`.
///
/// Vanishes unless `N`, `k1`, `k2`, and `N - k1 - k2` are all nonnegative.
pub fn trinomial(n: i64, k1: i64, k2: i64) -> BigUint {
    if n < 0 || k1 < 0 || k2 < 0 || n - k1 - k2 < 0 {
        return BigUint::zero();
    }
    binom_u(n as u64, k1 as u64) * binom_u((n - k1) as u64, k2 as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn standard_values() {
        assert_eq!(ext_binom(4, 2), big(6));
        assert_eq!(ext_binom(3, 5), big(0));
        assert_eq!(ext_binom(0, 0), big(1));
        assert_eq!(ext_binom(10, 0), big(1));
        assert_eq!(binom_u(52, 26), "495918532948104".parse().unwrap());
    }

    #[test]
    fn extended_convention() {
        assert_eq!(ext_binom(-1, -1), big(1));
        assert_eq!(ext_binom(-2, 0), big(0));
        assert_eq!(ext_binom(-2, -2), big(0));
        assert_eq!(ext_binom(-1, 0), big(0));
        assert_eq!(ext_binom(5, -1), big(0));
        assert_eq!(ext_binom(-3, -1), big(0));
    }

    #[test]
    fn trinomial_values() {
        assert_eq!(trinomial(4, 1, 2), big(12));
        assert_eq!(trinomial(2, 0, 3), big(0));
        assert_eq!(trinomial(1, 0, 1), big(1));
        assert_eq!(trinomial(-1, 0, 0), big(0));
        assert_eq!(trinomial(6, 2, 2), big(90));
    }

    proptest! {
        #[test]
        fn pascal_identity(n in 1i64..40, k in 1i64..40) {
            prop_assume!(k <= n);
            prop_assert_eq!(
                ext_binom(n, k),
                ext_binom(n - 1, k - 1) + ext_binom(n - 1, k)
            );
        }

        #[test]
        fn trinomial_symmetric(n in -10i64..30, k1 in -10i64..30, k2 in -10i64..30) {
            prop_assert_eq!(trinomial(n, k1, k2), trinomial(n, k2, k1));
        }

        #[test]
        fn trinomial_is_binomial_product(n in 0i64..30, a in 0i64..30, b in 0i64..30) {
            let k1 = a % (n + 1);
            let k2 = b % (n - k1 + 1);
            prop_assert_eq!(
                trinomial(n, k1, k2),
                ext_binom(n, k1) * ext_binom(n - k1, k2)
            );
        }
    }
}
