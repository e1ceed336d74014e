//! Pluggable commutative rings and matrix bilinear forms.
//!
//! Groups and polynomials elsewhere in the crate are generic over a
//! runtime ring descriptor: Z, Q, Z/m (including its stride subrings
//! d·Z/m·Z, which need not have a multiplicative identity), and the
//! p-adic scalars. Elements carry their descriptor and a payload.

mod form;
mod hom;
mod subring;

pub use form::{matrix_from_form, standard_symplectic, BilinearForm};
pub use hom::RingHom;
pub use subring::{square_subring, SquareSubring};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{PadicScalar, Rational};
use crate::{Error, Result};

/// Which commutative ring a descriptor denotes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    /// The carrier stride·Z / modulus·Z inside Z/modulus. stride = 1 is
    /// the full Z/m; stride > 1 gives subrings that may lack an identity
    /// (2Z/8Z has none).
    Modular {
        modulus: u64,
        stride: u64,
    },
    /// Capped-precision p-adic scalars; `integral` restricts membership
    /// to Z_p (valuation ≥ 0).
    Padic {
        prime: u64,
        precision: u32,
        integral: bool,
    },
}

/// A commutative ring, chosen at runtime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    kind: RingKind,
}

impl RingDescriptor {
    pub fn integers() -> Self {
        RingDescriptor {
            kind: RingKind::Integers,
        }
    }

    pub fn rationals() -> Self {
        RingDescriptor {
            kind: RingKind::Rationals,
        }
    }

    /// Z/m.
    pub fn modular(m: u64) -> Self {
        assert!(m >= 1);
        RingDescriptor {
            kind: RingKind::Modular {
                modulus: m,
                stride: 1,
            },
        }
    }

    /// The subring d·Z/m·Z of Z/m (requires d | m).
    pub fn modular_subring(m: u64, d: u64) -> Result<Self> {
        if d == 0 || !m.is_multiple_of(d) {
            return Err(Error::ParseError(format!("stride {d} does not divide {m}")));
        }
        Ok(RingDescriptor {
            kind: RingKind::Modular {
                modulus: m,
                stride: d,
            },
        })
    }

    /// Q_p at relative precision k.
    pub fn padic(p: u64, k: u32) -> Result<Self> {
        if !crate::exact::is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(RingDescriptor {
            kind: RingKind::Padic {
                prime: p,
                precision: k.max(1),
                integral: false,
            },
        })
    }

    /// Z_p at relative precision k.
    pub fn padic_integers(p: u64, k: u32) -> Result<Self> {
        let mut r = Self::padic(p, k)?;
        if let RingKind::Padic { integral, .. } = &mut r.kind {
            *integral = true;
        }
        Ok(r)
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    /// Number of elements when the ring is finite.
    pub fn finite_order(&self) -> Option<u64> {
        match self.kind {
            RingKind::Modular { modulus, stride } => Some(modulus / stride),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_order().is_some()
    }

    /// Does the ring have a multiplicative identity? Stride subrings are
    /// scanned for one (they are small by construction).
    pub fn has_one(&self) -> bool {
        match self.kind {
            RingKind::Modular { stride: 1, .. } => true,
            RingKind::Modular { modulus, stride } => {
                let count = modulus / stride;
                (0..count).any(|e| {
                    let ev = e * stride % modulus;
                    (0..count).all(|x| {
                        let xv = x * stride % modulus;
                        (ev as u128 * xv as u128) % modulus as u128 == xv as u128
                    })
                })
            }
            _ => true,
        }
    }

    /// The additive identity.
    pub fn zero(&self) -> RingElem {
        let payload = match &self.kind {
            RingKind::Integers => Payload::Int(BigInt::zero()),
            RingKind::Rationals => Payload::Rat(Rational::zero()),
            RingKind::Modular { .. } => Payload::Res(0),
            RingKind::Padic { prime, .. } => Payload::Padic(PadicScalar::zero(*prime)),
        };
        RingElem {
            ring: self.clone(),
            payload,
        }
    }

    /// The multiplicative identity, when one exists.
    pub fn one(&self) -> Result<RingElem> {
        match self.kind {
            RingKind::Integers => Ok(self.from_int(1)),
            RingKind::Rationals => Ok(self.from_int(1)),
            RingKind::Modular { stride: 1, .. } => Ok(self.from_int(1)),
            RingKind::Modular { modulus, stride } => {
                let count = modulus / stride;
                for e in 0..count {
                    let ev = e * stride % modulus;
                    if (0..count).all(|x| {
                        let xv = x * stride % modulus;
                        (ev as u128 * xv as u128) % modulus as u128 == xv as u128
                    }) {
                        return Ok(RingElem {
                            ring: self.clone(),
                            payload: Payload::Res(ev),
                        });
                    }
                }
                Err(Error::RequiresIdentity)
            }
            RingKind::Padic {
                prime, precision, ..
            } => Ok(RingElem {
                ring: self.clone(),
                payload: Payload::Padic(
                    PadicScalar::from_integer(&BigInt::one(), prime, precision)
                        .expect("prime validated"),
                ),
            }),
        }
    }

    /// Embed a small integer (reduction for modular rings; membership is
    /// not checked against stride subrings — use for full rings).
    pub fn from_int(&self, n: i64) -> RingElem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> RingElem {
        let payload = match &self.kind {
            RingKind::Integers => Payload::Int(n.clone()),
            RingKind::Rationals => Payload::Rat(Rational::from(n.clone())),
            RingKind::Modular { modulus, .. } => {
                let m = BigInt::from(*modulus);
                Payload::Res(n.mod_floor(&m).to_u64().expect("reduced"))
            }
            RingKind::Padic {
                prime, precision, ..
            } => Payload::Padic(
                PadicScalar::from_integer(n, *prime, *precision).expect("prime validated"),
            ),
        };
        RingElem {
            ring: self.clone(),
            payload,
        }
    }

    /// Embed an exact rational. Errors for rings where the denominator is
    /// not invertible.
    pub fn from_rational(&self, q: &Rational) -> Result<RingElem> {
        match &self.kind {
            RingKind::Integers => {
                if q.denom().is_one() {
                    Ok(self.from_bigint(q.numer()))
                } else {
                    Err(Error::ParseError(format!("{q} is not an integer")))
                }
            }
            RingKind::Rationals => Ok(RingElem {
                ring: self.clone(),
                payload: Payload::Rat(q.clone()),
            }),
            RingKind::Modular { modulus, .. } => {
                let m = BigInt::from(*modulus);
                let d = q.denom().mod_floor(&m);
                let g = num_integer::gcd(d.clone(), m.clone());
                if !g.is_one() {
                    return Err(Error::ParseError(format!(
                        "denominator of {q} is not invertible mod {modulus}"
                    )));
                }
                let dinv = mod_inverse(&d, &m);
                let n = (q.numer().mod_floor(&m) * dinv).mod_floor(&m);
                Ok(RingElem {
                    ring: self.clone(),
                    payload: Payload::Res(n.to_u64().expect("reduced")),
                })
            }
            RingKind::Padic {
                prime,
                precision,
                integral,
            } => {
                let s = PadicScalar::from_rational(q, *prime, *precision)?;
                if *integral && s.valuation().is_some_and(|v| v < 0) {
                    return Err(Error::OutsideIntegralDomain(format!(
                        "{q} has negative valuation at p={prime}"
                    )));
                }
                Ok(RingElem {
                    ring: self.clone(),
                    payload: Payload::Padic(s),
                })
            }
        }
    }

    /// Wrap a p-adic scalar (must match the descriptor's prime).
    pub fn from_padic(&self, s: PadicScalar) -> Result<RingElem> {
        match &self.kind {
            RingKind::Padic {
                prime, integral, ..
            } => {
                if s.prime() != *prime {
                    return Err(Error::RingMismatch(format!(
                        "scalar prime {} vs ring prime {}",
                        s.prime(),
                        prime
                    )));
                }
                if *integral && s.valuation().is_some_and(|v| v < 0) {
                    return Err(Error::OutsideIntegralDomain(
                        "negative valuation in Z_p ring".into(),
                    ));
                }
                Ok(RingElem {
                    ring: self.clone(),
                    payload: Payload::Padic(s),
                })
            }
            _ => Err(Error::RingMismatch("not a p-adic ring".into())),
        }
    }

    /// The i-th element of a finite ring.
    pub fn elem_from_index(&self, i: u64) -> Result<RingElem> {
        match self.kind {
            RingKind::Modular { modulus, stride } => {
                let count = modulus / stride;
                if i >= count {
                    return Err(Error::ParseError(format!("index {i} out of range")));
                }
                Ok(RingElem {
                    ring: self.clone(),
                    payload: Payload::Res(i * stride % modulus),
                })
            }
            _ => Err(Error::RequiresFiniteRing),
        }
    }

    /// Index of an element of a finite ring.
    pub fn index_of(&self, x: &RingElem) -> Result<u64> {
        match (&self.kind, &x.payload) {
            (RingKind::Modular { stride, .. }, Payload::Res(r)) => Ok(r / stride),
            _ => Err(Error::RequiresFiniteRing),
        }
    }

    /// All elements of a finite ring.
    pub fn elements(&self) -> Result<Vec<RingElem>> {
        let n = self.finite_order().ok_or(Error::RequiresFiniteRing)?;
        (0..n).map(|i| self.elem_from_index(i)).collect()
    }

    /// Random element (uniform for finite rings; bounded otherwise).
    pub fn sample(&self, rng: &mut rand_chacha::ChaCha8Rng) -> RingElem {
        use rand::Rng;
        match &self.kind {
            RingKind::Integers => self.from_int(rng.gen_range(-50..=50)),
            RingKind::Rationals => RingElem {
                ring: self.clone(),
                payload: Payload::Rat(crate::sample::rational(rng, 20)),
            },
            RingKind::Modular { modulus, stride } => {
                let count = modulus / stride;
                self.elem_from_index(rng.gen_range(0..count))
                    .expect("in range")
            }
            RingKind::Padic {
                prime,
                precision,
                integral,
            } => {
                let s = if *integral {
                    crate::sample::padic_integral(rng, *prime, *precision)
                } else {
                    crate::sample::padic(rng, *prime, *precision)
                };
                RingElem {
                    ring: self.clone(),
                    payload: Payload::Padic(s),
                }
            }
        }
    }
}

impl std::fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::Modular { modulus, stride: 1 } => write!(f, "Z/{modulus}"),
            RingKind::Modular { modulus, stride } => write!(f, "{stride}Z/{modulus}"),
            RingKind::Padic {
                prime,
                precision,
                integral: true,
            } => {
                write!(f, "Zp:{prime}:{precision}")
            }
            RingKind::Padic {
                prime,
                precision,
                integral: false,
            } => {
                write!(f, "Qp:{prime}:{precision}")
            }
        }
    }
}

/// Payload of a ring element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Payload {
    Int(BigInt),
    Rat(Rational),
    /// Canonical residue in [0, modulus).
    Res(u64),
    Padic(PadicScalar),
}

/// An element of a runtime-chosen ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: RingDescriptor,
    payload: Payload,
}

impl RingElem {
    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Int(n) => n.is_zero(),
            Payload::Rat(q) => q.is_zero(),
            Payload::Res(r) => *r == 0,
            Payload::Padic(s) => s.is_exact_zero(),
        }
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            self.ring, other.ring,
            "ring elements from different rings: {} vs {}",
            self.ring, other.ring
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let payload = match (&self.payload, &other.payload) {
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(a + b),
            (Payload::Rat(a), Payload::Rat(b)) => Payload::Rat(a + b),
            (Payload::Res(a), Payload::Res(b)) => {
                let m = self.modulus();
                Payload::Res(((*a as u128 + *b as u128) % m as u128) as u64)
            }
            (Payload::Padic(a), Payload::Padic(b)) => Payload::Padic(a.add(b)),
            _ => unreachable!("payload/descriptor mismatch"),
        };
        RingElem {
            ring: self.ring.clone(),
            payload,
        }
    }

    pub fn neg(&self) -> Self {
        let payload = match &self.payload {
            Payload::Int(a) => Payload::Int(-a),
            Payload::Rat(a) => Payload::Rat(-a),
            Payload::Res(a) => {
                let m = self.modulus();
                Payload::Res(if *a == 0 { 0 } else { m - a })
            }
            Payload::Padic(a) => Payload::Padic(a.neg()),
        };
        RingElem {
            ring: self.ring.clone(),
            payload,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let payload = match (&self.payload, &other.payload) {
            (Payload::Int(a), Payload::Int(b)) => Payload::Int(a * b),
            (Payload::Rat(a), Payload::Rat(b)) => Payload::Rat(a * b),
            (Payload::Res(a), Payload::Res(b)) => {
                let m = self.modulus();
                Payload::Res(((*a as u128 * *b as u128) % m as u128) as u64)
            }
            (Payload::Padic(a), Payload::Padic(b)) => Payload::Padic(a.mul(b)),
            _ => unreachable!("payload/descriptor mismatch"),
        };
        RingElem {
            ring: self.ring.clone(),
            payload,
        }
    }

    /// n-fold sum (the Z-module action every abelian group carries).
    pub fn int_mul(&self, n: &BigInt) -> Self {
        let payload = match &self.payload {
            Payload::Int(a) => Payload::Int(a * n),
            Payload::Rat(a) => Payload::Rat(a * Rational::from(n.clone())),
            Payload::Res(a) => {
                let m = BigInt::from(self.modulus());
                let v = (BigInt::from(*a) * n).mod_floor(&m);
                Payload::Res(v.to_u64().expect("reduced"))
            }
            Payload::Padic(a) => Payload::Padic(a.int_mul(n)),
        };
        RingElem {
            ring: self.ring.clone(),
            payload,
        }
    }

    /// Exact division by a positive integer, when it is possible in the
    /// ring; used by the ODE integrator.
    pub fn div_exact_by_int(&self, n: u32) -> Result<Self> {
        assert!(n >= 1);
        let payload = match &self.payload {
            Payload::Int(a) => {
                let nn = BigInt::from(n);
                let (q, r) = a.div_rem(&nn);
                if !r.is_zero() {
                    return Err(Error::NonInvertibleDegree(n));
                }
                Payload::Int(q)
            }
            Payload::Rat(a) => Payload::Rat(a / Rational::from(BigInt::from(n))),
            Payload::Res(a) => {
                let m = self.modulus();
                if num_integer::gcd(n as u64, m) != 1 {
                    return Err(Error::NonInvertibleDegree(n));
                }
                let inv = mod_inverse(&BigInt::from(n), &BigInt::from(m));
                let v = (BigInt::from(*a) * inv).mod_floor(&BigInt::from(m));
                Payload::Res(v.to_u64().expect("reduced"))
            }
            Payload::Padic(a) => {
                let q = Rational::new(BigInt::one(), BigInt::from(n));
                Payload::Padic(a.mul_rational(&q)?)
            }
        };
        Ok(RingElem {
            ring: self.ring.clone(),
            payload,
        })
    }

    /// Equality of the underlying values on the common precision: exact
    /// for Z, Q, Z/m; congruence for p-adic payloads.
    pub fn agrees(&self, other: &Self) -> bool {
        if self.ring != other.ring {
            return false;
        }
        match (&self.payload, &other.payload) {
            (Payload::Padic(a), Payload::Padic(b)) => a.agrees_with(b),
            (a, b) => a == b,
        }
    }

    fn modulus(&self) -> u64 {
        match self.ring.kind {
            RingKind::Modular { modulus, .. } => modulus,
            _ => unreachable!("not modular"),
        }
    }

    /// Residue payload of a modular element.
    pub fn residue(&self) -> Option<u64> {
        match &self.payload {
            Payload::Res(r) => Some(*r),
            _ => None,
        }
    }

    /// p-adic payload, when there is one.
    pub fn as_padic(&self) -> Option<&PadicScalar> {
        match &self.payload {
            Payload::Padic(s) => Some(s),
            _ => None,
        }
    }

    /// The p-adic valuation of the element viewed inside Q_p (exact for
    /// integers and rationals; the stored valuation for scalars).
    pub fn padic_valuation(&self, p: u64) -> Result<Option<i64>> {
        match &self.payload {
            Payload::Int(n) => Ok(if n.is_zero() {
                None
            } else {
                Some(crate::exact::int_valuation(n, p))
            }),
            Payload::Rat(q) => Ok(if q.is_zero() {
                None
            } else {
                Some(crate::exact::rational_valuation(q, p))
            }),
            Payload::Padic(s) => {
                if s.is_exact_zero() {
                    Ok(None)
                } else if s.is_indistinguishable_from_zero() {
                    Err(Error::IndistinguishableFromZero)
                } else {
                    Ok(s.valuation())
                }
            }
            Payload::Res(_) => Err(Error::RingMismatch(
                "no p-adic valuation on residue rings".into(),
            )),
        }
    }
}

impl std::fmt::Display for RingElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.payload {
            Payload::Int(n) => write!(f, "{n}"),
            Payload::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{q}")
                }
            }
            Payload::Res(r) => write!(f, "{r}"),
            Payload::Padic(s) => write!(f, "{s}"),
        }
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    // extended Euclid; callers guarantee gcd(a, m) = 1
    let (mut r0, mut r1) = (a.mod_floor(m), m.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    debug_assert!(r0.is_one(), "not invertible");
    s0.mod_floor(m)
}

/// Spot-check the commutative-ring axioms on random triples.
pub fn check_ring_axioms(ring: &RingDescriptor, triples: u64, seed: u64) -> Result<()> {
    let mut rng = crate::sample::rng_for(seed, 0x41c5);
    for i in 0..triples {
        let a = ring.sample(&mut rng);
        let b = ring.sample(&mut rng);
        let c = ring.sample(&mut rng);
        let fail = |law: &str| {
            Err(Error::InvariantViolated(format!(
                "{law} fails in {ring} at sample {i}: a={a}, b={b}, c={c}"
            )))
        };
        if !a.add(&b).agrees(&b.add(&a)) {
            return fail("additive commutativity");
        }
        if !a.add(&b).add(&c).agrees(&a.add(&b.add(&c))) {
            return fail("additive associativity");
        }
        if !a.mul(&b).agrees(&b.mul(&a)) {
            return fail("multiplicative commutativity");
        }
        if !a.mul(&b).mul(&c).agrees(&a.mul(&b.mul(&c))) {
            return fail("multiplicative associativity");
        }
        if !a.mul(&b.add(&c)).agrees(&a.mul(&b).add(&a.mul(&c))) {
            return fail("distributivity");
        }
        if !a.add(&a.neg()).is_zero_like() {
            return fail("additive inverse");
        }
        if !a.add(&ring.zero()).agrees(&a) {
            return fail("additive identity");
        }
    }
    Ok(())
}

impl RingElem {
    /// Zero, counting p-adic cancellation markers as zero-like.
    pub fn is_zero_like(&self) -> bool {
        match &self.payload {
            Payload::Padic(s) => s.is_exact_zero() || s.is_indistinguishable_from_zero(),
            _ => self.is_zero(),
        }
    }
}
