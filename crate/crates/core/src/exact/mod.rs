//! Exact rational and capped-precision p-adic arithmetic.
//!
//! Scalars are either exact rationals ([`Rational`], unbounded) or p-adic
//! classes known modulo a power of p ([`PadicScalar`]). Absolute values
//! live in the discrete value group {0} ∪ p^Z and are represented by
//! exponents ([`AbsValue`]), so every norm comparison is an integer
//! comparison.

mod scalar;
mod series;

pub use scalar::{PadicScalar, DEFAULT_PRECISION};
pub use series::{residue_iso_check, series_sum, series_sum_monotone, ResidueIsoReport};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational number: unbounded, always reduced, positive denominator.
pub type Rational = num_rational::BigRational;

/// A p-adic absolute value: zero or an integer power p^{-exp} of the prime.
///
/// Larger exponent means smaller value; zero is below every power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbsValue {
    Zero,
    /// The value p^{-exp}.
    Finite {
        exp: i64,
    },
}

impl AbsValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, AbsValue::Zero)
    }

    /// Multiply two absolute values (|xy|_p = |x|_p |y|_p).
    pub fn mul(self, other: AbsValue) -> AbsValue {
        match (self, other) {
            (AbsValue::Zero, _) | (_, AbsValue::Zero) => AbsValue::Zero,
            (AbsValue::Finite { exp: a }, AbsValue::Finite { exp: b }) => {
                AbsValue::Finite { exp: a + b }
            }
        }
    }

    /// n-th power.
    pub fn pow(self, n: i64) -> AbsValue {
        match self {
            AbsValue::Zero => AbsValue::Zero,
            AbsValue::Finite { exp } => AbsValue::Finite { exp: exp * n },
        }
    }

    /// The exact rational p^{-exp} (0 for zero).
    pub fn to_rational(self, p: u64) -> Rational {
        match self {
            AbsValue::Zero => Rational::zero(),
            AbsValue::Finite { exp } => {
                let pw = BigInt::from(p).pow(exp.unsigned_abs() as u32);
                if exp >= 0 {
                    Rational::new(BigInt::one(), pw)
                } else {
                    Rational::from(pw)
                }
            }
        }
    }
}

impl PartialOrd for AbsValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AbsValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (AbsValue::Zero, AbsValue::Zero) => Ordering::Equal,
            (AbsValue::Zero, _) => Ordering::Less,
            (_, AbsValue::Zero) => Ordering::Greater,
            // p^{-a} < p^{-b} iff a > b
            (AbsValue::Finite { exp: a }, AbsValue::Finite { exp: b }) => b.cmp(a),
        }
    }
}

impl std::fmt::Display for AbsValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AbsValue::Zero => write!(f, "0"),
            AbsValue::Finite { exp } => write!(f, "p^{}", -exp),
        }
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

/// p-adic valuation of a nonzero integer: the exact power of p dividing it.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut m = n.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a nonzero rational.
pub fn rational_valuation(x: &Rational, p: u64) -> i64 {
    int_valuation(x.numer(), p) - int_valuation(x.denom(), p)
}

/// The p-adic absolute value |x|_p of a rational: p^{-j} where
/// x = p^j a/b with p dividing neither a nor b, and 0 for x = 0.
pub fn rational_padic_abs(x: &Rational, p: u64) -> Result<AbsValue> {
    check_prime(p)?;
    if x.is_zero() {
        return Ok(AbsValue::Zero);
    }
    Ok(AbsValue::Finite {
        exp: rational_valuation(x, p),
    })
}

/// p^k as an unbounded integer.
pub(crate) fn prime_power(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(7919));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(561)); // Carmichael
        assert!(is_prime(18446744073709551557)); // largest u64 prime
    }

    #[test]
    fn abs_of_zero_is_zero() {
        assert_eq!(
            rational_padic_abs(&Rational::zero(), 5).unwrap(),
            AbsValue::Zero
        );
    }

    #[test]
    fn abs_of_48_at_2() {
        // 48 = 2^4 * 3, so |48|_2 = 2^{-4} = 1/16.
        let a = rational_padic_abs(&Rational::from_i64(48).unwrap(), 2).unwrap();
        assert_eq!(a, AbsValue::Finite { exp: 4 });
        assert_eq!(a.to_rational(2), rat(1, 16));
    }

    #[test]
    fn abs_of_neg_three_eighths_at_2() {
        // 3/8 = 2^{-3} * 3, so |−3/8|_2 = 2^3 = 8.
        let a = rational_padic_abs(&rat(-3, 8), 2).unwrap();
        assert_eq!(a, AbsValue::Finite { exp: -3 });
        assert_eq!(a.to_rational(2), rat(8, 1));
    }

    #[test]
    fn abs_rejects_composite_p() {
        assert_eq!(
            rational_padic_abs(&rat(1, 1), 6),
            Err(Error::InvalidPrime(6))
        );
    }

    #[test]
    fn abs_value_order() {
        // zero < p^{-2} < p^{-1} < 1 < p
        let z = AbsValue::Zero;
        let pm2 = AbsValue::Finite { exp: 2 };
        let pm1 = AbsValue::Finite { exp: 1 };
        let one = AbsValue::Finite { exp: 0 };
        let p = AbsValue::Finite { exp: -1 };
        assert!(z < pm2 && pm2 < pm1 && pm1 < one && one < p);
        assert_eq!(pm1.mul(pm1), pm2);
        assert_eq!(p.mul(pm1), one);
    }
}
