//! Counting measures on finite quotients: exact subset counts on
//! H over Z/p^k with translation-invariance checks, dilation images,
//! and the residue-counting oracle that cross-checks cell measures.

use num_bigint::BigInt;

use crate::exact::Rational;
use crate::heis::{HeisGroup, HeisPoint};
use crate::rings::RingElem;
use crate::{exec, Error, Result};

use super::Cell;

/// Exact count with its normalization by the group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCount {
    pub count: u64,
    pub group_order: u64,
    /// count / group_order, the normalized counting measure.
    pub normalized: Rational,
}

fn normalized(count: u64, order: u64) -> Rational {
    Rational::new(BigInt::from(count), BigInt::from(order))
}

const ORDER_CAP: u64 = 10_000_000;

fn group_order(group: &HeisGroup) -> Result<u64> {
    let order = group.size().ok_or(Error::RequiresFiniteModel)?;
    if order > ORDER_CAP {
        return Err(Error::TooLargeToEnumerate(format!(
            "{order} group elements"
        )));
    }
    Ok(order)
}

fn member_bitset(group: &HeisGroup, subset: &[HeisPoint], order: u64) -> Result<Vec<bool>> {
    let mut bits = vec![false; order as usize];
    for p in subset {
        bits[group.index_of_point(p)? as usize] = true;
    }
    Ok(bits)
}

/// Count a subset of a finite model exactly and verify that every left
/// and right ◇-translate has the same count (exhaustively over all
/// translators for small groups, on seeded samples otherwise).
pub fn finite_quotient_count(group: &HeisGroup, subset: &[HeisPoint]) -> Result<QuotientCount> {
    finite_quotient_count_impl(group, subset, true)
}

/// Sequential twin of [`finite_quotient_count`].
pub fn finite_quotient_count_seq(group: &HeisGroup, subset: &[HeisPoint]) -> Result<QuotientCount> {
    finite_quotient_count_impl(group, subset, false)
}

fn finite_quotient_count_impl(
    group: &HeisGroup,
    subset: &[HeisPoint],
    parallel: bool,
) -> Result<QuotientCount> {
    let order = group_order(group)?;
    let bits = member_bitset(group, subset, order)?;
    let count = bits.iter().filter(|&&b| b).count() as u64;

    let members: Vec<HeisPoint> = bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| group.point_from_index(i as u64))
        .collect::<Result<_>>()?;

    let translators: Vec<u64> = if order <= 2_000 {
        (0..order).collect()
    } else {
        let mut rng = crate::sample::rng_for(0x7a15, 0);
        use rand::Rng;
        (0..64).map(|_| rng.gen_range(0..order)).collect()
    };

    let check_one = |gi: &u64| -> Result<()> {
        let g = group.point_from_index(*gi)?;
        let mut left = 0u64;
        let mut seen = vec![false; order as usize];
        for m in &members {
            let idx = group.index_of_point(&group.mul(&g, m)?)? as usize;
            if !seen[idx] {
                seen[idx] = true;
                left += 1;
            }
        }
        let mut right = 0u64;
        let mut seen_r = vec![false; order as usize];
        for m in &members {
            let idx = group.index_of_point(&group.mul(m, &g)?)? as usize;
            if !seen_r[idx] {
                seen_r[idx] = true;
                right += 1;
            }
        }
        if left != count || right != count {
            return Err(Error::InvariantViolated(format!(
                "translation by index {gi} changes the count: left {left}, right {right}, \
                 original {count}"
            )));
        }
        Ok(())
    };

    if parallel {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            translators
                .par_iter()
                .map(check_one)
                .collect::<Result<Vec<()>>>()?;
        }
        #[cfg(not(feature = "parallel"))]
        for gi in &translators {
            check_one(gi)?;
        }
    } else {
        for gi in &translators {
            check_one(gi)?;
        }
    }

    Ok(QuotientCount {
        count,
        group_order: order,
        normalized: normalized(count, order),
    })
}

/// Count the image of δ_r over the whole finite group.
pub fn dilation_image_count(group: &HeisGroup, r: &RingElem) -> Result<QuotientCount> {
    let order = group_order(group)?;
    let indices = exec::map_collect(order, |i| {
        let p = group.point_from_index(i).expect("in range");
        let image = group.dilate(r, &p).expect("dilation on validated point");
        group.index_of_point(&image).expect("in range")
    });
    let mut seen = vec![false; order as usize];
    let mut count = 0u64;
    for idx in indices {
        if !seen[idx as usize] {
            seen[idx as usize] = true;
            count += 1;
        }
    }
    Ok(QuotientCount {
        count,
        group_order: order,
        normalized: normalized(count, order),
    })
}

/// Residue-counting oracle for cell measures: enumerate all of
/// (Z/p^k)^n and count the tuples lying in the cell, testing the
/// congruence x_i ≡ c_i mod p^{j_i} directly. The normalized count
/// equals μ(cell) whenever every radius exponent is in [0, k].
pub fn cell_residue_count(cell: &Cell, k: u32) -> Result<QuotientCount> {
    let p = cell.prime();
    let n = cell.dim();
    let modulus = (p as u128)
        .checked_pow(k)
        .ok_or_else(|| Error::TooLargeToEnumerate(format!("p^{k} residues")))?;
    let total = modulus
        .checked_pow(n as u32)
        .ok_or_else(|| Error::TooLargeToEnumerate(format!("p^{}k residues", n)))?;
    if total > ORDER_CAP as u128 {
        return Err(Error::TooLargeToEnumerate(format!(
            "{total} residue tuples"
        )));
    }
    let modulus = modulus as u64;
    // per-coordinate congruence data
    let mut congruences = Vec::with_capacity(n);
    for b in cell.balls() {
        let j = b.radius_exp();
        if j < 0 || j as u32 > k {
            return Err(Error::InsufficientPrecision(format!(
                "radius exponent {j} outside [0, {k}]"
            )));
        }
        let pj = p.pow(j as u32);
        let scalar = crate::exact::PadicScalar::from_rational(b.center(), p, k.max(1))
            .map_err(|_| Error::OutsideIntegralDomain(format!("center {}", b.center())))?;
        let residue = if b.center() == &Rational::from(BigInt::from(0)) {
            0
        } else {
            let r = scalar.to_residue(j as u32)?;
            let digits = r.to_u64_digits();
            match digits.as_slice() {
                [] => 0,
                [d] => *d,
                _ => unreachable!("residue below p^k fits in u64"),
            }
        };
        congruences.push((pj, residue));
    }
    let count = exec::count_where(total as u64, |mut idx| {
        for (pj, residue) in &congruences {
            let x = idx % modulus;
            idx /= modulus;
            if x % pj != *residue {
                return false;
            }
        }
        true
    });
    let order = total as u64;
    Ok(QuotientCount {
        count,
        group_order: order,
        normalized: normalized(count, order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{standard_symplectic, RingDescriptor};
    use num_traits::One;

    fn z9_group() -> HeisGroup {
        let r = RingDescriptor::modular(9);
        HeisGroup::bilinear(standard_symplectic(1, &r).unwrap())
    }

    #[test]
    fn whole_group_has_measure_one() {
        let g = z9_group();
        let all = g.enumerate().unwrap();
        let q = finite_quotient_count(&g, &all).unwrap();
        assert_eq!(q.count, 729);
        assert_eq!(q.normalized, Rational::one());
    }

    #[test]
    fn dilation_image_counts() {
        // N=2, p=3, k=2: image of δ_3 has 3^2 points, normalized 3^{-4}
        let g = z9_group();
        let r3 = g.base_ring().from_int(3);
        let q = dilation_image_count(&g, &r3).unwrap();
        assert_eq!(q.count, 9);
        assert_eq!(q.normalized, Rational::new(BigInt::one(), BigInt::from(81)));
    }

    #[test]
    fn random_subsets_survive_translation() {
        let g = z9_group();
        let mut rng = crate::sample::rng_for(0xbeef, 0);
        use rand::Rng;
        let subset: Vec<HeisPoint> = (0..40)
            .map(|_| g.point_from_index(rng.gen_range(0..729)).unwrap())
            .collect();
        let q = finite_quotient_count(&g, &subset).unwrap();
        assert!(q.count <= 40);
        assert_eq!(q, finite_quotient_count_seq(&g, &subset).unwrap());
    }

    #[test]
    fn infinite_groups_are_rejected() {
        let g = HeisGroup::standard(1, &RingDescriptor::integers()).unwrap();
        assert_eq!(
            finite_quotient_count(&g, &[g.identity()]).unwrap_err(),
            Error::RequiresFiniteModel
        );
    }

    #[test]
    fn residue_count_matches_cell_measure() {
        // counting measure on (Z/p^k)^n equals the product formula
        let p = 3u64;
        let k = 3u32;
        let cell = Cell::from_coords(
            p,
            &[
                (Rational::from(BigInt::from(4)), 2),
                (Rational::from(BigInt::from(1)), 0),
            ],
        )
        .unwrap();
        let q = cell_residue_count(&cell, k).unwrap();
        assert_eq!(q.normalized, cell.measure());
        // 3^{k-2} * 3^k tuples = 3 * 27
        assert_eq!(q.count, 81);
    }

    #[test]
    fn residue_count_rejects_too_fine_cells() {
        let cell = Cell::from_coords(3, &[(Rational::from(BigInt::from(0)), 5)]).unwrap();
        assert!(matches!(
            cell_residue_count(&cell, 2),
            Err(Error::InsufficientPrecision(_))
        ));
    }
}
