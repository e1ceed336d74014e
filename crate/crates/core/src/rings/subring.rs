//! Subring closure and the square subring R2 (finite sums of products of
//! at least two elements of R1).

use std::collections::BTreeSet;

use crate::{Error, Result};

use super::{RingDescriptor, RingElem};

/// R1 (the closure of the generators) together with its square subring
/// R2, which is an ideal of R1.
#[derive(Debug, Clone)]
pub struct SquareSubring {
    pub r1: Vec<RingElem>,
    pub r2: Vec<RingElem>,
}

const CLOSURE_CAP: usize = 10_000;

fn close_under_ops(
    ring: &RingDescriptor,
    seed: &BTreeSet<u64>,
    include_products: bool,
) -> Result<BTreeSet<u64>> {
    // indices into the finite ring; closure under +, negation, and
    // (optionally) multiplication
    let mut set = seed.clone();
    set.insert(ring.index_of(&ring.zero())?);
    loop {
        let mut fresh = Vec::new();
        let members: Vec<RingElem> = set
            .iter()
            .map(|&i| ring.elem_from_index(i))
            .collect::<Result<_>>()?;
        for a in &members {
            let n = ring.index_of(&a.neg())?;
            if !set.contains(&n) {
                fresh.push(n);
            }
            for b in &members {
                let s = ring.index_of(&a.add(b))?;
                if !set.contains(&s) {
                    fresh.push(s);
                }
                if include_products {
                    let p = ring.index_of(&a.mul(b))?;
                    if !set.contains(&p) {
                        fresh.push(p);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return Ok(set);
        }
        set.extend(fresh);
        if set.len() > CLOSURE_CAP {
            return Err(Error::TooLargeToEnumerate(format!(
                "subring closure exceeded {CLOSURE_CAP} elements"
            )));
        }
    }
}

/// Close the generators into a subring R1, then return R2: the additive
/// closure of all products of two elements of R1 (products of three or
/// more factor through these, since R1 is multiplicatively closed).
/// The ideal property of R2 in R1 is verified before returning.
pub fn square_subring(ring: &RingDescriptor, generators: &[RingElem]) -> Result<SquareSubring> {
    if !ring.is_finite() {
        return Err(Error::RequiresFiniteRing);
    }
    for g in generators {
        if g.ring() != ring {
            return Err(Error::RingMismatch(format!(
                "generator in {} for subring of {}",
                g.ring(),
                ring
            )));
        }
    }
    let seed: BTreeSet<u64> = generators
        .iter()
        .map(|g| ring.index_of(g))
        .collect::<Result<_>>()?;
    let r1_idx = close_under_ops(ring, &seed, true)?;
    let r1: Vec<RingElem> = r1_idx
        .iter()
        .map(|&i| ring.elem_from_index(i))
        .collect::<Result<_>>()?;

    let mut products = BTreeSet::new();
    for a in &r1 {
        for b in &r1 {
            products.insert(ring.index_of(&a.mul(b))?);
        }
    }
    let r2_idx = close_under_ops(ring, &products, false)?;
    let r2: Vec<RingElem> = r2_idx
        .iter()
        .map(|&i| ring.elem_from_index(i))
        .collect::<Result<_>>()?;

    // Ideal property: R2 is closed under addition/negation (by
    // construction) and under multiplication by R1.
    for a in &r1 {
        for x in &r2 {
            if !r2_idx.contains(&ring.index_of(&a.mul(x))?) {
                return Err(Error::InvariantViolated(format!(
                    "R2 not an ideal of R1: {a} * {x} escapes"
                )));
            }
        }
    }
    Ok(SquareSubring { r1, r2 })
}
