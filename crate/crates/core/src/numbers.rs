//! Exact integer helpers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::Serializer;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    // the running product stays integral at every step
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// `(-1)^e` as a `BigInt`.
pub fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Order of the automorphism group of `L_n`: `2^n · n!`.
pub fn hyperoctahedral_order(n: usize) -> BigUint {
    pow2(n) * factorial(n)
}

/// Serializes an integer as a plain number when it fits in `i128`, and as
/// a decimal string beyond that.
pub fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i128() {
        Some(v) => s.serialize_i128(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub fn serialize_opt_bigint<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => serialize_bigint(v, s),
        None => s.serialize_none(),
    }
}

pub fn serialize_biguint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match x.to_u128() {
        Some(v) => s.serialize_u128(v),
        None => s.serialize_str(&x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 3), BigUint::default());
        assert_eq!(hyperoctahedral_order(3), BigUint::from(48u32));
        assert_eq!(sign(3), -BigInt::one());
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 1..20 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }
}
