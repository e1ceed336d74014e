//! Canonical ring homomorphisms between the shipped descriptors.

use num_bigint::BigInt;

use crate::{Error, Result};

use super::{Payload, RingDescriptor, RingElem, RingKind};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Rule {
    Identity,
    /// Z -> Z/m, Z -> Q, Z -> Q_p/Z_p, Z_p -> Z/p^j, Z/m -> Z/m' (m'|m),
    /// dZ/m -> Z/m: all determined by (source, target).
    Canonical,
    Compose(Box<RingHom>, Box<RingHom>),
}

/// A homomorphism of commutative rings, applied elementwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHom {
    source: RingDescriptor,
    target: RingDescriptor,
    rule: Rule,
}

impl RingHom {
    pub fn identity(ring: RingDescriptor) -> Self {
        RingHom {
            source: ring.clone(),
            target: ring,
            rule: Rule::Identity,
        }
    }

    /// The canonical map source -> target (reduction or inclusion), when
    /// one exists.
    pub fn canonical(source: RingDescriptor, target: RingDescriptor) -> Result<Self> {
        if source == target {
            return Ok(Self::identity(source));
        }
        let ok = match (source.kind(), target.kind()) {
            (RingKind::Integers, RingKind::Rationals) => true,
            (RingKind::Integers, RingKind::Modular { stride: 1, .. }) => true,
            (RingKind::Integers, RingKind::Padic { .. }) => true,
            (
                RingKind::Padic {
                    prime, precision, ..
                },
                RingKind::Modular { modulus, stride: 1 },
            ) => {
                // Z_p -> Z/p^j needs p^j | p^precision
                let (pj, j) = prime_power_split(*modulus);
                pj == Some(*prime) && j <= *precision
            }
            (
                RingKind::Modular {
                    modulus: m,
                    stride: 1,
                },
                RingKind::Modular {
                    modulus: m1,
                    stride: 1,
                },
            ) => m % m1 == 0,
            (
                RingKind::Modular { modulus: m, stride },
                RingKind::Modular {
                    modulus: m1,
                    stride: 1,
                },
            ) => *stride > 1 && m == m1, // subring inclusion
            _ => false,
        };
        if ok {
            Ok(RingHom {
                source,
                target,
                rule: Rule::Canonical,
            })
        } else {
            Err(Error::HomDomainError(format!(
                "no canonical homomorphism {source} -> {target}"
            )))
        }
    }

    pub fn compose(outer: RingHom, inner: RingHom) -> Result<Self> {
        if inner.target != outer.source {
            return Err(Error::HomDomainError(format!(
                "cannot compose {} -> {} with {} -> {}",
                inner.source, inner.target, outer.source, outer.target
            )));
        }
        Ok(RingHom {
            source: inner.source.clone(),
            target: outer.target.clone(),
            rule: Rule::Compose(Box::new(outer), Box::new(inner)),
        })
    }

    pub fn source(&self) -> &RingDescriptor {
        &self.source
    }

    pub fn target(&self) -> &RingDescriptor {
        &self.target
    }

    /// Apply the homomorphism to an element of the source ring.
    pub fn apply(&self, x: &RingElem) -> Result<RingElem> {
        if x.ring() != &self.source {
            return Err(Error::HomDomainError(format!(
                "element of {} fed to homomorphism from {}",
                x.ring(),
                self.source
            )));
        }
        match &self.rule {
            Rule::Identity => Ok(x.clone()),
            Rule::Compose(outer, inner) => outer.apply(&inner.apply(x)?),
            Rule::Canonical => self.apply_canonical(x),
        }
    }

    fn apply_canonical(&self, x: &RingElem) -> Result<RingElem> {
        match (x.payload(), self.target.kind()) {
            (Payload::Int(n), _) => Ok(self.target.from_bigint(n)),
            (Payload::Padic(s), RingKind::Modular { modulus, stride: 1 }) => {
                let (_, j) = prime_power_split(*modulus);
                let r = s.to_residue(j)?;
                Ok(self.target.from_bigint(&BigInt::from(r)))
            }
            (Payload::Res(r), RingKind::Modular { modulus: m1, .. }) => {
                Ok(self.target.from_bigint(&BigInt::from(r % m1)))
            }
            _ => Err(Error::HomDomainError(format!(
                "unsupported payload for {} -> {}",
                self.source, self.target
            ))),
        }
    }

    /// Kernel of the map on a finite source: elements sent to zero.
    pub fn kernel(&self) -> Result<Vec<RingElem>> {
        let elems = self.source.elements()?;
        let mut ker = Vec::new();
        for e in elems {
            if self.apply(&e)?.is_zero() {
                ker.push(e);
            }
        }
        Ok(ker)
    }
}

/// If m = p^j for a prime p, return (Some(p), j); else (None, 0).
fn prime_power_split(m: u64) -> (Option<u64>, u32) {
    if m < 2 {
        return (None, 0);
    }
    let mut p = 0u64;
    for q in 2..=m {
        if m.is_multiple_of(q) {
            p = q;
            break;
        }
    }
    let mut j = 0u32;
    let mut rest = m;
    while rest.is_multiple_of(p) {
        rest /= p;
        j += 1;
    }
    if rest == 1 && crate::exact::is_prime(p) {
        (Some(p), j)
    } else {
        (None, 0)
    }
}
