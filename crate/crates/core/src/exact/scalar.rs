//! Capped-precision p-adic scalars.
//!
//! A scalar is one of:
//! - exact zero,
//! - a class p^v * u known modulo p^{v+k} (valuation v, unit u with
//!   p ∤ u, relative precision k ≥ 1),
//! - a cancellation marker "≡ 0 mod p^m": nothing is known below p^m, so
//!   the absolute value is *not* defined for it and asking for it is an
//!   error rather than 0.
//!
//! Canonical text form, little-endian base-p digits:
//! `p:<prime>;v:<valuation>;d:[d0,d1,...];k:<precision>` for a unit class,
//! `p:<prime>;zero` for exact zero, and `p:<prime>;O:<m>` for the
//! cancellation marker known to vanish mod p^m.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

use super::{check_prime, int_valuation, prime_power, AbsValue, Rational};

/// Default relative precision (base-p digits) when none is requested.
pub const DEFAULT_PRECISION: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    ExactZero,
    /// Known to be ≡ 0 mod p^abs; true valuation unknown beyond that.
    ZeroToPrecision {
        abs: i64,
    },
    /// The class p^val * unit mod p^{val+prec}, with unit in [1, p^prec)
    /// and p ∤ unit.
    Unit {
        val: i64,
        unit: BigUint,
        prec: u32,
    },
}

/// An element of Q_p known to finite (relative) precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    prime: u64,
    repr: Repr,
}

impl PadicScalar {
    /// The exact zero of Q_p.
    pub fn zero(p: u64) -> Self {
        PadicScalar {
            prime: p,
            repr: Repr::ExactZero,
        }
    }

    /// The cancellation marker: ≡ 0 mod p^abs, nothing else known.
    pub fn zero_to_precision(p: u64, abs: i64) -> Self {
        PadicScalar {
            prime: p,
            repr: Repr::ZeroToPrecision { abs },
        }
    }

    /// Build from valuation + unit; the unit is reduced mod p^prec.
    /// Panics if the reduced unit is divisible by p (not a unit).
    pub fn from_unit(p: u64, val: i64, unit: BigUint, prec: u32) -> Self {
        assert!(prec >= 1, "relative precision must be at least 1");
        let m = prime_power(p, prec);
        let u = unit % &m;
        assert!(
            !(&u % p).is_zero() && !u.is_zero(),
            "unit digits must start with a nonzero digit"
        );
        PadicScalar {
            prime: p,
            repr: Repr::Unit { val, unit: u, prec },
        }
    }

    /// Encode an integer to relative precision k.
    pub fn from_integer(n: &BigInt, p: u64, k: u32) -> Result<Self> {
        check_prime(p)?;
        if n.is_zero() {
            return Ok(Self::zero(p));
        }
        let v = int_valuation(n, p);
        let unit_int = n / BigInt::from(p).pow(v as u32);
        let m = BigInt::from(prime_power(p, k));
        let u = unit_int.mod_floor(&m).to_biguint().expect("nonnegative");
        Ok(Self::from_unit(p, v, u, k))
    }

    /// Encode a rational to relative precision k: the result is the class
    /// of x mod p^{v+k}, where v is the p-adic valuation of x. The prime
    /// part of the denominator is extracted into the valuation and the
    /// remaining unit denominator is inverted mod p^k.
    pub fn from_rational(x: &Rational, p: u64, k: u32) -> Result<Self> {
        check_prime(p)?;
        if k < 1 {
            return Err(Error::InsufficientPrecision(
                "relative precision must be at least 1".into(),
            ));
        }
        if x.is_zero() {
            return Ok(Self::zero(p));
        }
        let vn = int_valuation(x.numer(), p);
        let vd = int_valuation(x.denom(), p);
        let num_unit = x.numer() / BigInt::from(p).pow(vn as u32);
        let den_unit = x.denom() / BigInt::from(p).pow(vd as u32);
        let m = BigInt::from(prime_power(p, k));
        let nu = num_unit.mod_floor(&m).to_biguint().expect("nonnegative");
        let du = den_unit.mod_floor(&m).to_biguint().expect("nonnegative");
        let u = (nu * unit_inverse(&du, p, k)) % prime_power(p, k);
        Ok(Self::from_unit(p, vn - vd, u, k))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::ExactZero)
    }

    /// True for the cancellation marker.
    pub fn is_indistinguishable_from_zero(&self) -> bool {
        matches!(self.repr, Repr::ZeroToPrecision { .. })
    }

    /// Exact valuation, when it is determined by the stored data.
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { val, .. } => Some(*val),
            _ => None,
        }
    }

    /// Relative precision (digit count) of a unit class.
    pub fn rel_precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Unit { prec, .. } => Some(*prec),
            _ => None,
        }
    }

    /// The scalar is known modulo p^(this); None means known exactly.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::ExactZero => None,
            Repr::ZeroToPrecision { abs } => Some(*abs),
            Repr::Unit { val, prec, .. } => Some(val + *prec as i64),
        }
    }

    /// |x|_p as an exact exponent. Errors on the cancellation marker: the
    /// stored data only bounds the value, it does not determine the norm.
    pub fn abs(&self) -> Result<AbsValue> {
        match &self.repr {
            Repr::ExactZero => Ok(AbsValue::Zero),
            Repr::ZeroToPrecision { .. } => Err(Error::IndistinguishableFromZero),
            Repr::Unit { val, .. } => Ok(AbsValue::Finite { exp: *val }),
        }
    }

    /// Little-endian base-p digits of the unit part (length = precision).
    pub fn unit_digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Unit { unit, prec, .. } => {
                let mut digits = Vec::with_capacity(*prec as usize);
                let p = BigUint::from(self.prime);
                let mut u = unit.clone();
                for _ in 0..*prec {
                    let (q, r) = u.div_rem(&p);
                    digits.push(r.to_u64().expect("digit fits"));
                    u = q;
                }
                digits
            }
            _ => Vec::new(),
        }
    }

    /// Negation, exact on the stored class.
    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::ExactZero | Repr::ZeroToPrecision { .. } => self.clone(),
            Repr::Unit { val, unit, prec } => {
                let m = prime_power(self.prime, *prec);
                PadicScalar::from_unit(self.prime, *val, &m - unit, *prec)
            }
        }
    }

    /// Addition. The result is correct mod p^m with
    /// m = min of the operands' absolute precisions; full cancellation of
    /// every known digit yields the zero-to-precision marker.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixed primes");
        let p = self.prime;
        match (&self.repr, &other.repr) {
            (Repr::ExactZero, _) => other.clone(),
            (_, Repr::ExactZero) => self.clone(),
            (Repr::ZeroToPrecision { abs: m1 }, Repr::ZeroToPrecision { abs: m2 }) => {
                Self::zero_to_precision(p, *m1.min(m2))
            }
            (Repr::ZeroToPrecision { abs }, Repr::Unit { .. }) => other.truncate_abs(*abs),
            (Repr::Unit { .. }, Repr::ZeroToPrecision { abs }) => self.truncate_abs(*abs),
            (
                Repr::Unit {
                    val: va,
                    unit: ua,
                    prec: ka,
                },
                Repr::Unit {
                    val: vb,
                    unit: ub,
                    prec: kb,
                },
            ) => {
                let m = (va + *ka as i64).min(vb + *kb as i64);
                let v0 = (*va).min(*vb);
                let width = (m - v0) as u32; // ≥ 1 always
                let modulus = prime_power(p, width);
                let lift_a = ua * prime_power(p, (va - v0) as u32) % &modulus;
                let lift_b = ub * prime_power(p, (vb - v0) as u32) % &modulus;
                let s = (lift_a + lift_b) % &modulus;
                if s.is_zero() {
                    return Self::zero_to_precision(p, m);
                }
                let d = biguint_valuation(&s, p);
                let val = v0 + d as i64;
                let unit = s / prime_power(p, d);
                Self::from_unit(p, val, unit, (m - val) as u32)
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplication: valuations add, relative precision is the min,
    /// exact zero absorbs.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixed primes");
        let p = self.prime;
        match (&self.repr, &other.repr) {
            (Repr::ExactZero, _) | (_, Repr::ExactZero) => Self::zero(p),
            (Repr::ZeroToPrecision { abs: m1 }, Repr::ZeroToPrecision { abs: m2 }) => {
                Self::zero_to_precision(p, m1 + m2)
            }
            (Repr::ZeroToPrecision { abs }, Repr::Unit { val, .. })
            | (Repr::Unit { val, .. }, Repr::ZeroToPrecision { abs }) => {
                Self::zero_to_precision(p, abs + val)
            }
            (
                Repr::Unit {
                    val: va,
                    unit: ua,
                    prec: ka,
                },
                Repr::Unit {
                    val: vb,
                    unit: ub,
                    prec: kb,
                },
            ) => {
                let k = (*ka).min(*kb);
                let unit = ua * ub % prime_power(p, k);
                Self::from_unit(p, va + vb, unit, k)
            }
        }
    }

    /// Multiplicative inverse: a * inv(a) ≡ 1 mod p^k. The valuation
    /// negates and the relative precision is preserved.
    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::ExactZero => Err(Error::DivisionByZero),
            Repr::ZeroToPrecision { .. } => Err(Error::IndistinguishableFromZero),
            Repr::Unit { val, unit, prec } => Ok(Self::from_unit(
                self.prime,
                -val,
                unit_inverse(unit, self.prime, *prec),
                *prec,
            )),
        }
    }

    /// Multiply by an integer (repeated addition in the ring sense).
    pub fn int_mul(&self, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(self.prime);
        }
        let k = self.rel_precision().unwrap_or(DEFAULT_PRECISION);
        let scalar = Self::from_integer(n, self.prime, k).expect("prime already validated");
        self.mul(&scalar)
    }

    /// Multiply by an exact rational (exact scaling of the class).
    pub fn mul_rational(&self, q: &Rational) -> Result<Self> {
        if q.is_zero() {
            return Ok(Self::zero(self.prime));
        }
        let k = self.rel_precision().unwrap_or(DEFAULT_PRECISION);
        let scalar = Self::from_rational(q, self.prime, k)?;
        Ok(self.mul(&scalar))
    }

    /// Integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = match self.rel_precision() {
            Some(k) => Self::from_integer(&BigInt::one(), self.prime, k).expect("valid"),
            None => {
                Self::from_integer(&BigInt::one(), self.prime, DEFAULT_PRECISION).expect("valid")
            }
        };
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Forget information below p^m.
    pub fn truncate_abs(&self, m: i64) -> Self {
        match &self.repr {
            Repr::ExactZero => Self::zero_to_precision(self.prime, m),
            Repr::ZeroToPrecision { abs } => Self::zero_to_precision(self.prime, (*abs).min(m)),
            Repr::Unit { val, unit, prec } => {
                let abs = val + *prec as i64;
                if abs <= m {
                    return self.clone();
                }
                if *val >= m {
                    return Self::zero_to_precision(self.prime, m);
                }
                let new_prec = (m - val) as u32;
                let u = unit % prime_power(self.prime, new_prec);
                Self::from_unit(self.prime, *val, u, new_prec)
            }
        }
    }

    /// Reduce mod p^j into Z/p^j (requires the scalar to lie in Z_p and to
    /// be known at least mod p^j).
    pub fn to_residue(&self, j: u32) -> Result<BigUint> {
        let modulus = prime_power(self.prime, j);
        match &self.repr {
            Repr::ExactZero => Ok(BigUint::zero()),
            Repr::ZeroToPrecision { abs } => {
                if *abs >= j as i64 {
                    Ok(BigUint::zero())
                } else {
                    Err(Error::InsufficientPrecision(format!(
                        "known mod p^{abs}, need mod p^{j}"
                    )))
                }
            }
            Repr::Unit { val, unit, prec } => {
                if *val < 0 {
                    return Err(Error::OutsideIntegralDomain(format!(
                        "valuation {val} is negative"
                    )));
                }
                if (val + *prec as i64) < (j as i64) {
                    return Err(Error::InsufficientPrecision(format!(
                        "known mod p^{}, need mod p^{j}",
                        val + *prec as i64
                    )));
                }
                Ok(unit * prime_power(self.prime, *val as u32) % modulus)
            }
        }
    }

    /// An exact rational representative of the stored class
    /// (p^val * unit; differs from the true value by O(p^{val+prec})).
    pub fn representative(&self) -> Rational {
        match &self.repr {
            Repr::ExactZero | Repr::ZeroToPrecision { .. } => Rational::zero(),
            Repr::Unit { val, unit, .. } => {
                let u = BigInt::from(unit.clone());
                let pw = BigInt::from(self.prime).pow(val.unsigned_abs() as u32);
                if *val >= 0 {
                    Rational::from(u * pw)
                } else {
                    Rational::new(u, pw)
                }
            }
        }
    }

    /// Do the two scalars agree as p-adic classes on their common
    /// precision? (Exact zeros agree with anything bounded by their
    /// precision; distinct valuations below the common precision do not.)
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.prime != other.prime {
            return false;
        }
        let m = match (self.abs_precision(), other.abs_precision()) {
            (None, None) => {
                return self.is_exact_zero() && other.is_exact_zero();
            }
            (Some(m), None) | (None, Some(m)) => m,
            (Some(a), Some(b)) => a.min(b),
        };
        let class = |s: &Self| -> Option<(i64, BigUint)> {
            // the value mod p^m, normalized as (valuation, unit mod p^{m-val})
            match &s.repr {
                Repr::ExactZero | Repr::ZeroToPrecision { .. } => None,
                Repr::Unit { val, unit, .. } => {
                    if *val >= m {
                        None // indistinguishable from zero at this precision
                    } else {
                        let width = (m - val) as u32;
                        Some((*val, unit % prime_power(s.prime, width)))
                    }
                }
            }
        };
        class(self) == class(other)
    }

    fn write_canonical(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.repr {
            Repr::ExactZero => write!(f, "p:{};zero", self.prime),
            Repr::ZeroToPrecision { abs } => write!(f, "p:{};O:{}", self.prime, abs),
            Repr::Unit { val, prec, .. } => {
                let digits: Vec<String> =
                    self.unit_digits().iter().map(|d| d.to_string()).collect();
                write!(
                    f,
                    "p:{};v:{};d:[{}];k:{}",
                    self.prime,
                    val,
                    digits.join(","),
                    prec
                )
            }
        }
    }

    /// Parse the canonical text form.
    pub fn parse(s: &str) -> Result<Self> {
        let err = |m: &str| Error::ParseError(format!("{m}: {s:?}"));
        let mut fields = std::collections::HashMap::new();
        for part in s.split(';') {
            match part.split_once(':') {
                Some((k, v)) => {
                    fields.insert(k.trim().to_string(), v.trim().to_string());
                }
                None => {
                    fields.insert(part.trim().to_string(), String::new());
                }
            }
        }
        let p: u64 = fields
            .get("p")
            .ok_or_else(|| err("missing prime"))?
            .parse()
            .map_err(|_| err("bad prime"))?;
        check_prime(p)?;
        if fields.contains_key("zero") {
            return Ok(Self::zero(p));
        }
        if let Some(m) = fields.get("O") {
            let abs: i64 = m.parse().map_err(|_| err("bad O bound"))?;
            return Ok(Self::zero_to_precision(p, abs));
        }
        let val: i64 = fields
            .get("v")
            .ok_or_else(|| err("missing valuation"))?
            .parse()
            .map_err(|_| err("bad valuation"))?;
        let k: u32 = fields
            .get("k")
            .ok_or_else(|| err("missing precision"))?
            .parse()
            .map_err(|_| err("bad precision"))?;
        let dstr = fields.get("d").ok_or_else(|| err("missing digits"))?;
        let inner = dstr
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| err("digits not bracketed"))?;
        let mut unit = BigUint::zero();
        let mut digits = Vec::new();
        if !inner.trim().is_empty() {
            for d in inner.split(',') {
                let d: u64 = d.trim().parse().map_err(|_| err("bad digit"))?;
                if d >= p {
                    return Err(err("digit out of range"));
                }
                digits.push(d);
            }
        }
        if digits.len() != k as usize {
            return Err(err("digit count does not match precision"));
        }
        for d in digits.iter().rev() {
            unit = unit * p + *d;
        }
        if (&unit % p).is_zero() {
            return Err(err("leading digit must be nonzero"));
        }
        Ok(Self::from_unit(p, val, unit, k))
    }
}

impl std::fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.write_canonical(f)
    }
}

fn biguint_valuation(n: &BigUint, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigUint::from(p);
    let mut v = 0u32;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// Inverse of a unit mod p^k by Newton-Hensel lifting seeded with the
/// Fermat inverse mod p.
pub(crate) fn unit_inverse(u: &BigUint, p: u64, k: u32) -> BigUint {
    let pb = BigUint::from(p);
    debug_assert!(!(u % &pb).is_zero(), "not a unit");
    let mut c = if p == 2 {
        BigUint::one()
    } else {
        (u % &pb).modpow(&BigUint::from(p - 2), &pb)
    };
    let mut prec = 1u32;
    while prec < k {
        prec = (prec * 2).min(k);
        let m = prime_power(p, prec);
        let r = u * &c % &m;
        // c <- c (2 - u c) mod p^prec
        let two_minus = (BigUint::from(2u32) + &m - r) % &m;
        c = c * two_minus % &m;
    }
    c
}
