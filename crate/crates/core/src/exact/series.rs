//! Certified finite summation of p-adic terms and the residue-ring check
//! Z_p / p^j Z_p ≅ Z / p^j Z.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::Rng;

use crate::{Error, Result};

use super::{check_prime, prime_power, PadicScalar};

/// Sum a finite list of terms, returning a value correct mod p^k.
///
/// Terms whose valuation is ≥ k contribute nothing mod p^k and are
/// skipped, so the result does not depend on the order of the slice.
/// Every term must itself be known at least mod p^k; a cancellation
/// marker with a weaker bound cannot be placed and is an error.
pub fn series_sum(p: u64, terms: &[PadicScalar], k: i64) -> Result<PadicScalar> {
    check_prime(p)?;
    if terms.is_empty() {
        return Ok(PadicScalar::zero(p));
    }
    let mut acc = PadicScalar::zero(p);
    for t in terms {
        if t.prime() != p {
            return Err(Error::RingMismatch(format!(
                "term prime {} differs from {}",
                t.prime(),
                p
            )));
        }
        match (t.valuation(), t.abs_precision()) {
            (_, None) => {} // exact zero
            (Some(v), _) if v >= k => continue,
            (Some(_), Some(abs)) if abs >= k => acc = acc.add(t),
            (_, Some(abs)) => {
                if abs >= k {
                    continue; // marker bounded below the target: contributes 0
                }
                return Err(Error::InsufficientPrecision(format!(
                    "term known mod p^{abs}, need mod p^{k}"
                )));
            }
        }
    }
    Ok(acc.truncate_abs(k))
}

/// Sum a generated sequence of terms whose valuations grow monotonically.
///
/// Consumes terms while their valuation is below k and stops at the first
/// term with valuation ≥ k: under the monotone contract the entire tail
/// is then ≡ 0 mod p^k. A decrease in the observed valuations (or a
/// missing tail within 10^6 terms) means no tail bound is derivable.
pub fn series_sum_monotone(
    p: u64,
    terms: impl IntoIterator<Item = PadicScalar>,
    k: i64,
) -> Result<PadicScalar> {
    check_prime(p)?;
    const CAP: usize = 1_000_000;
    let mut acc = PadicScalar::zero(p);
    let mut last_val: Option<i64> = None;
    for (count, t) in terms.into_iter().enumerate() {
        if count >= CAP {
            return Err(Error::CannotCertifyConvergence(format!(
                "no term reached valuation {k} within {CAP} terms"
            )));
        }
        let v = match t.valuation() {
            Some(v) => v,
            None => {
                if t.is_exact_zero() {
                    continue;
                }
                return Err(Error::InsufficientPrecision(
                    "generated term is a cancellation marker".into(),
                ));
            }
        };
        if let Some(prev) = last_val {
            if v < prev {
                return Err(Error::CannotCertifyConvergence(format!(
                    "valuation dropped from {prev} to {v}; growth is not monotone"
                )));
            }
        }
        last_val = Some(v);
        if v >= k {
            return Ok(acc.truncate_abs(k));
        }
        if t.abs_precision().is_some_and(|abs| abs < k) {
            return Err(Error::InsufficientPrecision(format!(
                "term known mod p^{}, need mod p^{k}",
                t.abs_precision().unwrap()
            )));
        }
        acc = acc.add(&t);
    }
    Ok(acc.truncate_abs(k))
}

/// Outcome of the Z_p/p^j ≅ Z/p^j verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueIsoReport {
    pub prime: u64,
    pub exponent: u32,
    /// p^j residue classes, all realized by integer lifts.
    pub classes: u64,
    /// Random homomorphism checks performed (addition and multiplication).
    pub samples_checked: u64,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Verify that reduction Z_p -> Z/p^j is a surjective ring homomorphism.
///
/// Surjectivity is exhaustive: every residue 0..p^j is realized from an
/// integer lift and reduces back to itself. The homomorphism laws are
/// checked on `samples` random pairs of p-adic integers carried at
/// relative precision `precision` (default j+2).
pub fn residue_iso_check(
    p: u64,
    j: u32,
    samples: u64,
    seed: u64,
    precision: Option<u32>,
) -> Result<ResidueIsoReport> {
    check_prime(p)?;
    let prec = precision.unwrap_or(j + 2).max(1);
    if (prec as i64) < j as i64 {
        return Err(Error::InsufficientPrecision(format!(
            "precision {prec} < quotient exponent {j}"
        )));
    }
    let modulus = prime_power(p, j);
    let class_count = match modulus.to_u64_digits().as_slice() {
        [] => 0,
        [n] => *n,
        _ => {
            return Err(Error::TooLargeToEnumerate(format!(
                "p^{j} residue classes exceed u64"
            )))
        }
    };
    // Surjectivity by construction from integer lifts.
    let mut lift = BigUint::zero();
    while lift < modulus {
        let x = PadicScalar::from_integer(&BigInt::from(lift.clone()), p, prec)
            .expect("prime validated");
        if x.to_residue(j)? != lift {
            return Ok(ResidueIsoReport {
                prime: p,
                exponent: j,
                classes: class_count.max(1),
                samples_checked: 0,
                pass: false,
                witness: Some(format!("lift {lift} does not reduce to itself")),
            });
        }
        lift += 1u32;
    }
    // Homomorphism on random samples.
    let mut rng = crate::sample::rng_for(seed, 0x7e51);
    let span = 1i64 << 40;
    let mut checked = 0;
    for _ in 0..samples {
        let a = BigInt::from(rng.gen_range(-span..span));
        let b = BigInt::from(rng.gen_range(-span..span));
        let xa = PadicScalar::from_integer(&a, p, prec).expect("prime validated");
        let xb = PadicScalar::from_integer(&b, p, prec).expect("prime validated");
        let red = |s: &PadicScalar| s.to_residue(j);
        let sum_then_reduce = red(&xa.add(&xb))?;
        let reduce_then_sum = (red(&xa)? + red(&xb)?) % &modulus;
        if sum_then_reduce != reduce_then_sum {
            return Ok(ResidueIsoReport {
                prime: p,
                exponent: j,
                classes: class_count.max(1),
                samples_checked: checked,
                pass: false,
                witness: Some(format!("addition fails at ({a}, {b})")),
            });
        }
        let mul_then_reduce = red(&xa.mul(&xb))?;
        let reduce_then_mul = (red(&xa)? * red(&xb)?) % &modulus;
        if mul_then_reduce != reduce_then_mul {
            return Ok(ResidueIsoReport {
                prime: p,
                exponent: j,
                classes: class_count.max(1),
                samples_checked: checked,
                pass: false,
                witness: Some(format!("multiplication fails at ({a}, {b})")),
            });
        }
        checked += 1;
    }
    Ok(ResidueIsoReport {
        prime: p,
        exponent: j,
        classes: class_count.max(1),
        samples_checked: checked,
        pass: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use num_traits::One;

    #[test]
    fn geometric_sum_at_two() {
        // terms 2^l, l = 0..: partial sum mod 2^5 is 31 = -1 mod 32,
        // matching 1/(1-2) = -1.
        let terms: Vec<_> = (0..8)
            .map(|l| PadicScalar::from_integer(&BigInt::from(1i64 << l), 2, 8).unwrap())
            .collect();
        let s = series_sum(2, &terms, 5).unwrap();
        assert_eq!(s.to_residue(5).unwrap(), BigUint::from(31u32));
        let inv = PadicScalar::from_rational(&Rational::from(BigInt::from(-1)), 2, 5).unwrap();
        assert!(s.agrees_with(&inv));
    }

    #[test]
    fn empty_sum_is_exact_zero() {
        assert!(series_sum(5, &[], 4).unwrap().is_exact_zero());
    }

    #[test]
    fn geometric_series_matches_modular_inverse() {
        // Σ (3·1)^l truncated at k=4 equals 1/(1-3) = 40 mod 81.
        let terms: Vec<_> = (0..6)
            .map(|l| PadicScalar::from_integer(&BigInt::from(3i64).pow(l), 3, 6).unwrap())
            .collect();
        let s = series_sum(3, &terms, 4).unwrap();
        assert_eq!(s.to_residue(4).unwrap(), BigUint::from(40u32));
    }

    #[test]
    fn sum_is_permutation_invariant() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut terms: Vec<_> = (0..10)
            .map(|l| {
                PadicScalar::from_integer(&BigInt::from(5i64.pow(l % 5) * (l as i64 + 2)), 5, 9)
                    .unwrap()
            })
            .collect();
        let base = series_sum(5, &terms, 6).unwrap();
        for _ in 0..10 {
            terms.shuffle(&mut rng);
            assert_eq!(series_sum(5, &terms, 6).unwrap(), base);
        }
    }

    #[test]
    fn monotone_generator_stops_at_target() {
        let s = series_sum_monotone(
            2,
            (0..).map(|l| PadicScalar::from_integer(&BigInt::from(1i64 << l), 2, 8).unwrap()),
            5,
        )
        .unwrap();
        assert_eq!(s.to_residue(5).unwrap(), BigUint::from(31u32));
    }

    #[test]
    fn non_monotone_generator_is_rejected() {
        let terms = vec![
            PadicScalar::from_integer(&BigInt::from(4), 2, 8).unwrap(),
            PadicScalar::from_integer(&BigInt::from(1), 2, 8).unwrap(),
        ];
        match series_sum_monotone(2, terms, 5) {
            Err(Error::CannotCertifyConvergence(_)) => {}
            other => panic!("expected CannotCertifyConvergence, got {other:?}"),
        }
    }

    #[test]
    fn residue_iso_small_cases() {
        let r = residue_iso_check(3, 2, 500, 7, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.classes, 9);

        // j = 0: the trivial ring.
        let r = residue_iso_check(2, 0, 10, 7, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.classes, 1);

        let r = residue_iso_check(5, 1, 100, 7, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.classes, 5);
    }

    #[test]
    fn residue_iso_rejects_low_precision() {
        assert!(matches!(
            residue_iso_check(3, 4, 10, 7, Some(2)),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn residue_of_one_is_one() {
        let one = PadicScalar::from_integer(&BigInt::from(1), 3, 4).unwrap();
        assert!(one.to_residue(2).unwrap().is_one());
    }
}
