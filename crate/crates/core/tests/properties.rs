//! Property tests over generated inputs: round-trips and algebraic laws
//! that should hold for arbitrary well-formed values, not just seeded
//! samples.

use num_bigint::BigInt;
use proptest::prelude::*;

use padic_heis::exact::{rational_padic_abs, series_sum, PadicScalar, Rational};
use padic_heis::measure::Cell;
use padic_heis::metric::{seq_distance, SeqPoint};

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11])
}

fn rational() -> impl Strategy<Value = Rational> {
    (-2000i64..2000, 1i64..2000).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

prop_compose! {
    fn padic_scalar()(p in small_prime(), val in -6i64..6, k in 1u32..10, seed in any::<u64>())
        -> PadicScalar
    {
        let mut rng = padic_heis::sample::rng_for(seed, 0);
        let _ = k;
        let mut unit = num_bigint::BigUint::default();
        use rand::Rng;
        for _ in 0..k {
            unit = unit * p + rng.gen_range(0..p);
        }
        if (&unit % p) == num_bigint::BigUint::default() {
            unit += 1u64 + rng.gen_range(0..p - 1);
        }
        PadicScalar::from_unit(p, val, unit, k)
    }
}

proptest! {
    #[test]
    fn canonical_text_round_trips(x in padic_scalar()) {
        let text = x.to_string();
        let back = PadicScalar::parse(&text).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn norm_is_multiplicative_on_rationals(
        a in rational(),
        b in rational(),
        p in small_prime(),
    ) {
        let ab = &a * &b;
        let lhs = rational_padic_abs(&ab, p).unwrap();
        let rhs = rational_padic_abs(&a, p).unwrap().mul(rational_padic_abs(&b, p).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn norm_is_ultrametric_on_rationals(
        a in rational(),
        b in rational(),
        p in small_prime(),
    ) {
        let sum = &a + &b;
        let na = rational_padic_abs(&a, p).unwrap();
        let nb = rational_padic_abs(&b, p).unwrap();
        let ns = rational_padic_abs(&sum, p).unwrap();
        prop_assert!(ns <= na.max(nb));
        if na != nb {
            prop_assert_eq!(ns, na.max(nb));
        }
    }

    #[test]
    fn from_rational_is_additive_and_multiplicative(
        a in rational(),
        b in rational(),
        p in small_prime(),
        k in 2u32..10,
    ) {
        let fa = PadicScalar::from_rational(&a, p, k).unwrap();
        let fb = PadicScalar::from_rational(&b, p, k).unwrap();
        let sum = PadicScalar::from_rational(&(&a + &b), p, k).unwrap();
        let prod = PadicScalar::from_rational(&(&a * &b), p, k).unwrap();
        prop_assert!(fa.add(&fb).agrees_with(&sum));
        prop_assert!(fa.mul(&fb).agrees_with(&prod));
    }

    #[test]
    fn series_sum_is_permutation_invariant(
        perm in prop::sample::subsequence((0..12usize).collect::<Vec<_>>(), 12),
        p in small_prime(),
    ) {
        // terms c_l p^{l mod 4} for a fixed deterministic family
        let terms: Vec<PadicScalar> = (0..12u32)
            .map(|l| {
                PadicScalar::from_integer(
                    &(BigInt::from(l + 1) * BigInt::from(p).pow(l % 4)),
                    p,
                    10,
                )
                .unwrap()
            })
            .collect();
        let base = series_sum(p, &terms, 4).unwrap();
        let mut shuffled: Vec<PadicScalar> = perm.iter().map(|&i| terms[i].clone()).collect();
        for (i, t) in terms.iter().enumerate() {
            if !perm.contains(&i) {
                shuffled.push(t.clone());
            }
        }
        let again = series_sum(p, &shuffled, 4).unwrap();
        prop_assert_eq!(base, again);
    }

    #[test]
    fn inverse_is_two_sided(x in padic_scalar()) {
        let inv = x.inv().unwrap();
        let k = x.rel_precision().unwrap();
        let one = (x.mul(&inv), inv.mul(&x));
        // p^{v} u * p^{-v} u^{-1} has valuation 0 and unit 1 mod p^k
        prop_assert_eq!(one.0.to_residue(k).ok(), one.1.to_residue(k).ok());
        prop_assert!(one.0.to_residue(k).unwrap() == 1u32.into());
    }

    #[test]
    fn cell_decomposition_is_additive(
        p in prop::sample::select(vec![2u64, 3]),
        j1 in -2i64..2,
        j2 in -2i64..2,
        refine in 0i64..3,
        c1 in -40i64..40,
        c2 in -40i64..40,
    ) {
        let j = j1.max(j2).max(refine);
        let cell = Cell::from_coords(
            p,
            &[
                (Rational::from(BigInt::from(c1)), j1),
                (Rational::from(BigInt::from(c2)), j2),
            ],
        )
        .unwrap();
        let parts = cell.decompose(j).unwrap();
        prop_assert_eq!(parts.measure(), cell.measure());
        let expected: u64 = p.pow((j - j1) as u32) * p.pow((j - j2) as u32);
        prop_assert_eq!(parts.len() as u64, expected);
    }

    #[test]
    fn sequence_metric_strong_triangle(
        x in prop::collection::vec(0u32..3, 8),
        y in prop::collection::vec(0u32..3, 8),
        z in prop::collection::vec(0u32..3, 8),
    ) {
        let rho = Rational::new(BigInt::from(1), BigInt::from(2));
        let a = SeqPoint::new(3, x).unwrap();
        let b = SeqPoint::new(3, y).unwrap();
        let c = SeqPoint::new(3, z).unwrap();
        let dab = seq_distance(&a, &b, &rho).unwrap();
        let dbc = seq_distance(&b, &c, &rho).unwrap();
        let dac = seq_distance(&a, &c, &rho).unwrap();
        prop_assert!(dac <= dab.clone().max(dbc.clone()));
    }
}
