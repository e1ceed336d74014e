#![allow(clippy::needless_range_loop)]

//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every check is exact (zero tolerance); the random ones are
//! seeded and deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use padic_heis::calculus::{
    convergence_certify, dilation_pullback, horizontal_ode_solve, invariant_derivative,
    is_delta_homogeneous, left_translate_symbolic, series_eval, symbolic_power, translate_curve,
    DilationScalar, GrowthWitness, HeisVars, MultiSeries, Trunc,
};
use padic_heis::exact::{
    rational_padic_abs, residue_iso_check, series_sum, AbsValue, PadicScalar, Rational,
};
use padic_heis::heis::{
    cocycle_verify, h2_enumerate, h2_enumerate_seq, Coboundary, CocycleTable, HeisGroup,
};
use padic_heis::measure::{
    cell_residue_count, dilate_measure, finite_quotient_count, Cell, DilationMode,
};
use padic_heis::metric::{
    gauge, integral_distance, left_invariant_distance, ultrametric_check, GaugeValue,
};
use padic_heis::rings::{standard_symplectic, BilinearForm, RingDescriptor, RingElem};
use padic_heis::sample;

const SEED: u64 = 0xace;

fn report(criterion: u32, name: &str) {
    println!("[acceptance] criterion {criterion} ({name}): PASS");
}

/// Independent oracle: extended-gcd modular inverse.
fn ext_gcd_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    fn ext_gcd(a: BigInt, b: BigInt) -> (BigInt, BigInt, BigInt) {
        if b.is_zero() {
            (a, BigInt::one(), BigInt::zero())
        } else {
            let (g, x, y) = ext_gcd(b.clone(), a.mod_floor(&b));
            let q = a.div_floor(&b);
            (g, y.clone(), x - q * y)
        }
    }
    let (g, x, _) = ext_gcd(a.mod_floor(m), m.clone());
    assert!(g.is_one(), "not invertible");
    x.mod_floor(m)
}

#[test]
fn criterion_01_padic_field_laws() {
    for &p in &[2u64, 3, 5, 7] {
        let mut rng = sample::rng_for(SEED, p);
        for i in 0..10_000u64 {
            let x = sample::padic(&mut rng, p, 10);
            let y = sample::padic(&mut rng, p, 10);
            let ax = x.abs().unwrap();
            let ay = y.abs().unwrap();
            assert_eq!(
                x.mul(&y).abs().unwrap(),
                ax.mul(ay),
                "|xy| = |x||y| fails at p={p}, sample {i}"
            );
            match x.add(&y).abs() {
                Ok(asum) => {
                    assert!(asum <= ax.max(ay), "|x+y| ≤ max fails at p={p}, sample {i}");
                    if ax != ay {
                        assert_eq!(asum, ax.max(ay), "equality case fails at p={p}, sample {i}");
                    }
                }
                Err(_) => {
                    // cancellation below precision requires equal norms
                    assert_eq!(ax, ay, "cancellation with |x| ≠ |y| at p={p}, sample {i}");
                }
            }
            // the rational model agrees: |x|_p computed on rationals
            let q = sample::rational_nonzero(&mut rng, 500);
            let s = PadicScalar::from_rational(&q, p, 10).unwrap();
            assert_eq!(s.abs().unwrap(), rational_padic_abs(&q, p).unwrap());
        }
    }
    report(1, "p-adic field laws, 10^4 pairs per p in {2,3,5,7}");
}

#[test]
fn criterion_02_quotient_isomorphism() {
    for &p in &[2u64, 3, 5] {
        for j in 1..=3u32 {
            let modulus = BigInt::from(p).pow(j);
            let classes = p.pow(j);
            // surjectivity by construction: every residue is realized
            // and reduces to itself
            let lifts: Vec<PadicScalar> = (0..classes)
                .map(|r| PadicScalar::from_integer(&BigInt::from(r), p, j + 2).unwrap())
                .collect();
            for (r, x) in lifts.iter().enumerate() {
                assert_eq!(x.to_residue(j).unwrap(), (r as u64).into());
            }
            // ring homomorphism exhaustively on all pairs of lifts
            for a in 0..classes {
                for b in 0..classes {
                    let xa = &lifts[a as usize];
                    let xb = &lifts[b as usize];
                    let sum = BigInt::from(xa.add(xb).to_residue(j).unwrap());
                    let prod = BigInt::from(xa.mul(xb).to_residue(j).unwrap());
                    assert_eq!(sum, (BigInt::from(a) + BigInt::from(b)).mod_floor(&modulus));
                    assert_eq!(
                        prod,
                        (BigInt::from(a) * BigInt::from(b)).mod_floor(&modulus)
                    );
                }
            }
            // and the randomized checker agrees
            let rep = residue_iso_check(p, j, 200, SEED, None).unwrap();
            assert!(rep.pass, "{:?}", rep.witness);
            assert_eq!(rep.classes, classes);
        }
    }
    report(2, "Z_p/p^j Z_p ≅ Z/p^j, exhaustive for p in {2,3,5}, j ≤ 3");
}

#[test]
fn criterion_03_geometric_series_inversion() {
    use rand::Rng;
    for &p in &[2u64, 3, 5] {
        let mut rng = sample::rng_for(SEED, 0x30 + p);
        for _ in 0..100 {
            let e = BigInt::from(rng.gen_range(-10_000i64..10_000));
            let k = rng.gen_range(1..=16u32);
            let pe = BigInt::from(p) * &e;
            let mut terms = Vec::new();
            let mut power = BigInt::one();
            for _ in 0..k {
                terms.push(PadicScalar::from_integer(&power, p, k).unwrap());
                power *= &pe;
            }
            let partial = series_sum(p, &terms, k as i64).unwrap();
            let inv = PadicScalar::from_rational(&Rational::from(BigInt::one() - pe), p, k)
                .unwrap()
                .inv()
                .unwrap();
            assert!(
                partial.agrees_with(&inv),
                "Σ(pe)^l ≢ (1-pe)^{{-1}} mod {p}^{k} at e={e}"
            );
        }
    }
    report(3, "geometric-series inversion mod p^k, 100 draws per p");
}

#[test]
fn criterion_04_group_axioms() {
    // exhaustive for H (N=2) over Z/2
    let z2 = RingDescriptor::modular(2);
    let g2 = HeisGroup::bilinear(standard_symplectic(1, &z2).unwrap());
    let all = g2.enumerate().unwrap();
    let e = g2.identity();
    for a in &all {
        assert_eq!(g2.mul(&e, a).unwrap(), *a);
        assert_eq!(g2.mul(a, &e).unwrap(), *a);
        let inv = g2.inv(a).unwrap();
        assert_eq!(g2.mul(a, &inv).unwrap(), e);
        assert_eq!(g2.mul(&inv, a).unwrap(), e);
        for b in &all {
            for c in &all {
                assert_eq!(
                    g2.mul(&g2.mul(a, b).unwrap(), c).unwrap(),
                    g2.mul(a, &g2.mul(b, c).unwrap()).unwrap()
                );
            }
        }
    }
    // 10^4 sampled triples over Z/3
    let z3 = RingDescriptor::modular(3);
    let g3 = HeisGroup::bilinear(standard_symplectic(1, &z3).unwrap());
    let mut rng = sample::rng_for(SEED, 0x40);
    for _ in 0..10_000 {
        let a = g3.sample_point(&mut rng);
        let b = g3.sample_point(&mut rng);
        let c = g3.sample_point(&mut rng);
        assert_eq!(
            g3.mul(&g3.mul(&a, &b).unwrap(), &c).unwrap(),
            g3.mul(&a, &g3.mul(&b, &c).unwrap()).unwrap()
        );
        let inv = g3.inv(&a).unwrap();
        assert_eq!(g3.mul(&a, &inv).unwrap(), g3.identity());
    }
    // 10^3 sampled triples over Z, Q, Q_p
    let rings = [
        RingDescriptor::integers(),
        RingDescriptor::rationals(),
        RingDescriptor::padic(5, 10).unwrap(),
    ];
    for ring in rings {
        let g = HeisGroup::bilinear(standard_symplectic(1, &ring).unwrap());
        let ge = g.identity();
        for _ in 0..1_000 {
            let a = g.sample_point(&mut rng);
            let b = g.sample_point(&mut rng);
            let c = g.sample_point(&mut rng);
            let assoc_l = g.mul(&g.mul(&a, &b).unwrap(), &c).unwrap();
            let assoc_r = g.mul(&a, &g.mul(&b, &c).unwrap()).unwrap();
            assert!(
                g.points_agree(&assoc_l, &assoc_r),
                "associativity over {ring}"
            );
            let inv = g.inv(&a).unwrap();
            assert!(g.points_agree(&g.mul(&a, &inv).unwrap(), &ge));
            assert!(g.points_agree(&g.mul(&inv, &a).unwrap(), &ge));
        }
    }
    report(
        4,
        "group axioms: exhaustive Z/2, 10^4 triples Z/3, 10^3 over Z, Q, Q_p",
    );
}

#[test]
fn criterion_05_cocycle_machinery() {
    use rand::Rng;
    for m in [2u64, 3] {
        let space_pairs = m * m; // (Z/m)^1 pairs
                                 // every biadditive form b*w*z (all matrix entries b)
        for b in 0..m {
            let r = RingDescriptor::modular(m);
            let form = BilinearForm::from_matrix(r.clone(), 1, vec![r.from_int(b as i64)]).unwrap();
            let table = CocycleTable::from_form(&form, m, m).unwrap();
            let verdict = cocycle_verify(m, 1, m, table.values()).unwrap();
            assert!(verdict.ok && verdict.endpoints_constant);
        }
        // every generated coboundary (all functions b: Z/m -> Z/m)
        let functions = m.pow(m as u32);
        for code in 0..functions {
            let mut c = code;
            let values: Vec<u64> = (0..m)
                .map(|_| {
                    let v = c % m;
                    c /= m;
                    v
                })
                .collect();
            let cb = Coboundary::new(m, 1, m, values).unwrap();
            let table = cb.induced_table().unwrap();
            assert!(cocycle_verify(m, 1, m, table.values()).unwrap().ok);
        }
        // un-normalized law: random valid cocycles keep the displayed
        // identity and inverse, checked exhaustively over the group
        let mut rng = sample::rng_for(SEED, 0x50 + m);
        let mut tested = 0;
        while tested < 20 {
            let values: Vec<u64> = (0..space_pairs).map(|_| rng.gen_range(0..m)).collect();
            let Ok(table) = CocycleTable::new(m, 1, m, values) else {
                continue;
            };
            tested += 1;
            let b00 = table.value_at_origin();
            let g = HeisGroup::cocycle(table);
            let e = g.identity();
            assert!(e.t.agrees(&b00.neg()), "identity is (0, -B(0,0))");
            for a in g.enumerate().unwrap() {
                let inv = g.inv(&a).unwrap();
                assert_eq!(g.mul(&a, &inv).unwrap(), e);
                assert_eq!(g.mul(&inv, &a).unwrap(), e);
                assert_eq!(g.mul(&e, &a).unwrap(), a);
                assert_eq!(g.mul(&a, &e).unwrap(), a);
            }
        }
    }
    report(5, "cocycle machinery over Z/2 and Z/3, N = 1, exhaustive");
}

#[test]
fn criterion_06_h2_brute_force() {
    // both readings of the criterion: N = 1 (2^4 tables) and N = 2
    // (2^16 tables)
    for n in [1usize, 2] {
        let a = h2_enumerate(2, n, 2).unwrap();
        let b = h2_enumerate(2, n, 2).unwrap();
        let c = h2_enumerate_seq(2, n, 2).unwrap();
        assert_eq!(a, b, "unstable across runs");
        assert_eq!(a, c, "parallel and sequential scans disagree");
        assert_eq!(a.cocycles % a.coboundaries, 0, "divisibility fails");
        assert_eq!(a.h2_order, a.cocycles / a.coboundaries);
        if n == 2 {
            assert_eq!(a.tables, 1 << 16);
        }
        println!(
            "[acceptance]   h2(Z/2, N={n}): {} tables, {} cocycles, {} coboundaries, |H^2| = {}",
            a.tables, a.cocycles, a.coboundaries, a.h2_order
        );
    }
    report(
        6,
        "H^2 brute force over 2^16 tables, divisibility and stability",
    );
}

#[test]
fn criterion_07_haar_measure() {
    use rand::Rng;
    // μ(p^j Z_p) = p^{-j}, j in [-3, 5]
    for &p in &[2u64, 3, 5] {
        for j in -3..=5i64 {
            let cell = Cell::from_coords(p, &[(Rational::zero(), j)]).unwrap();
            assert_eq!(cell.measure(), (AbsValue::Finite { exp: j }).to_rational(p));
        }
    }
    // counting measure matches cell_measure on 100 random cells
    let mut rng = sample::rng_for(SEED, 0x70);
    for i in 0..100 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let n = rng.gen_range(1..=3usize);
        let k = rng.gen_range(1..=3u32);
        let coords: Vec<(Rational, i64)> = (0..n)
            .map(|_| {
                (
                    Rational::from(BigInt::from(rng.gen_range(0..50))),
                    rng.gen_range(0..=k as i64),
                )
            })
            .collect();
        let cell = Cell::from_coords(p, &coords).unwrap();
        let q = cell_residue_count(&cell, k).unwrap();
        assert_eq!(q.normalized, cell.measure(), "cell {i}: {cell}");
    }
    // left and right ◇-translations preserve counts exhaustively on H
    // over Z/9 with N = 2 (finite_quotient_count checks all 729
    // translators on both sides)
    let r9 = RingDescriptor::modular(9);
    let g = HeisGroup::bilinear(standard_symplectic(1, &r9).unwrap());
    let whole = g.enumerate().unwrap();
    let q = finite_quotient_count(&g, &whole).unwrap();
    assert_eq!(q.count, 729);
    assert_eq!(q.normalized, Rational::one());
    let subset: Vec<_> = (0..150)
        .map(|_| g.point_from_index(rng.gen_range(0..729)).unwrap())
        .collect();
    finite_quotient_count(&g, &subset).unwrap();
    report(
        7,
        "Haar: μ(p^j Z_p), counting oracle on 100 cells, bi-invariance on H(Z/9)",
    );
}

#[test]
fn criterion_08_dilation_scaling() {
    use rand::Rng;
    let mut rng = sample::rng_for(SEED, 0x80);
    for &n in &[1usize, 2, 4] {
        for _ in 0..100 {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let coords: Vec<(Rational, i64)> = (0..=n)
                .map(|_| {
                    (
                        Rational::from(BigInt::from(rng.gen_range(-100..100))),
                        rng.gen_range(-3..=4i64),
                    )
                })
                .collect();
            let cell = Cell::from_coords(p, &coords).unwrap();
            for val in [1i64, 2, -1] {
                // r with |r|_p = p^{-val}
                let r_rat = (AbsValue::Finite { exp: -val }).to_rational(p);
                let r = PadicScalar::from_rational(&r_rat, p, 40).unwrap();
                let res = dilate_measure(&cell, &r, DilationMode::Parabolic).unwrap();
                // |r|^{N+2} μ(E)
                let factor = (AbsValue::Finite {
                    exp: val * (n as i64 + 2),
                })
                .to_rational(p);
                assert_eq!(res.predicted_measure, factor * cell.measure());
                assert_eq!(res.predicted_measure, res.image_measure);
            }
        }
    }
    report(
        8,
        "parabolic dilation scaling |r|^{N+2}, N in {1,2,4}, 100 cells each",
    );
}

#[test]
fn criterion_09_metric_suite() {
    let p = 3u64;
    let ring = RingDescriptor::padic(p, 10).unwrap();
    let g = HeisGroup::bilinear(standard_symplectic(1, &ring).unwrap());
    let mut rng = sample::rng_for(SEED, 0x90);
    let p_elem = ring.from_int(p as i64);
    for _ in 0..1_000 {
        let a = g.sample_point(&mut rng);
        let b = g.sample_point(&mut rng);
        let c = g.sample_point(&mut rng);
        let na = gauge(&g, &a).unwrap();
        let nb = gauge(&g, &b).unwrap();
        // subadditivity and inverse symmetry
        assert!(gauge(&g, &g.mul(&a, &b).unwrap()).unwrap() <= na.max(nb));
        assert_eq!(gauge(&g, &g.inv(&a).unwrap()).unwrap(), na);
        // strong triangle inequality
        let dab = left_invariant_distance(&g, &a, &b).unwrap();
        let dbc = left_invariant_distance(&g, &b, &c).unwrap();
        let dac = left_invariant_distance(&g, &a, &c).unwrap();
        assert!(dac <= dab.max(dbc));
        // left invariance
        assert_eq!(
            left_invariant_distance(&g, &g.mul(&c, &a).unwrap(), &g.mul(&c, &b).unwrap()).unwrap(),
            dab
        );
        // δ_r scaling by |r|_p
        let da = left_invariant_distance(
            &g,
            &g.dilate(&p_elem, &a).unwrap(),
            &g.dilate(&p_elem, &b).unwrap(),
        )
        .unwrap();
        assert_eq!(da, dab.scale_by_abs(AbsValue::Finite { exp: 1 }));
    }
    // right invariance of the integral ultranorm metric
    let zring = RingDescriptor::padic_integers(p, 10).unwrap();
    let zg = HeisGroup::bilinear(standard_symplectic(1, &zring).unwrap());
    for _ in 0..1_000 {
        let a = zg.sample_point(&mut rng);
        let b = zg.sample_point(&mut rng);
        let c = zg.sample_point(&mut rng);
        let d0 = integral_distance(&zg, &a, &b).unwrap();
        assert_eq!(
            integral_distance(&zg, &zg.mul(&a, &c).unwrap(), &zg.mul(&b, &c).unwrap()).unwrap(),
            d0
        );
        assert_eq!(
            integral_distance(&zg, &zg.mul(&c, &a).unwrap(), &zg.mul(&c, &b).unwrap()).unwrap(),
            d0
        );
    }
    // and the generic ultrametric checker on gauge samples
    let pts: Vec<_> = (0..10).map(|_| g.sample_point(&mut rng)).collect();
    let verdict = ultrametric_check(
        |x, y| left_invariant_distance(&g, x, y),
        GaugeValue::Zero,
        &pts,
        |x, y| x == y,
    )
    .unwrap();
    assert!(verdict.ok, "{:?}", verdict.failure);
    report(
        9,
        "metric suite: 10^3 samples per law, exact exponent comparisons",
    );
}

#[test]
fn criterion_10_calculus_identities() {
    use rand::Rng;
    let mut rng = sample::rng_for(SEED, 0xa0);
    let mut mismatches = 0u64;
    for ring in [RingDescriptor::rationals(), RingDescriptor::modular(7)] {
        for n in [1usize, 2] {
            let vars = HeisVars::standard(n);
            // space: z_1..z_n, t, w, s, w', s', r
            let big = 3 * (n + 1) + 1;
            let w1 = n + 1;
            let s1 = w1 + n;
            let w2 = s1 + 1;
            let s2 = w2 + n;
            let r_idx = big - 1;
            for _ in 0..4 {
                let entries: Vec<RingElem> = (0..n * n).map(|_| ring.sample(&mut rng)).collect();
                let form = BilinearForm::from_matrix(ring.clone(), n, entries).unwrap();
                // random f of degree ≤ 4 in (z, t)
                let mut terms = Vec::new();
                for _ in 0..10 {
                    let mut alpha = vec![0u32; big];
                    let mut budget = 4u32;
                    for v in 0..n {
                        let e = rng.gen_range(0..=budget);
                        alpha[v] = e;
                        budget -= e;
                    }
                    alpha[vars.t_index] = rng.gen_range(0..=budget / 2);
                    terms.push((alpha, ring.sample(&mut rng)));
                }
                let f = MultiSeries::from_terms(ring.clone(), big, terms, Trunc::Exact).unwrap();

                // D_l commutes with left translation
                for l in 1..=n {
                    let lhs = invariant_derivative(
                        &form,
                        &left_translate_symbolic(&form, &f, vars, w1, s1).unwrap(),
                        l,
                        vars,
                    )
                    .unwrap();
                    let rhs = left_translate_symbolic(
                        &form,
                        &invariant_derivative(&form, &f, l, vars).unwrap(),
                        vars,
                        w1,
                        s1,
                    )
                    .unwrap();
                    if lhs != rhs {
                        mismatches += 1;
                    }
                    // dilation intertwining with symbolic r
                    let lhs2 = invariant_derivative(
                        &form,
                        &dilation_pullback(&f, &DilationScalar::Symbolic(r_idx), vars).unwrap(),
                        l,
                        vars,
                    )
                    .unwrap();
                    let rhs2 = MultiSeries::var(&ring, big, r_idx)
                        .unwrap()
                        .mul(
                            &dilation_pullback(
                                &invariant_derivative(&form, &f, l, vars).unwrap(),
                                &DilationScalar::Symbolic(r_idx),
                                vars,
                            )
                            .unwrap(),
                        )
                        .unwrap();
                    if lhs2 != rhs2 {
                        mismatches += 1;
                    }
                }

                // composition law with two fully symbolic translations
                let nested = left_translate_symbolic(
                    &form,
                    &left_translate_symbolic(&form, &f, vars, w1, s1).unwrap(),
                    vars,
                    w2,
                    s2,
                )
                .unwrap();
                let composed = {
                    let base = left_translate_symbolic(&form, &f, vars, w1, s1).unwrap();
                    let var = |i: usize| MultiSeries::var(&ring, big, i).unwrap();
                    let mut images: Vec<MultiSeries> = (0..big).map(var).collect();
                    // (w', s') ◇ (w, s) = (w' + w, s' + s + B(w', w))
                    for j in 0..n {
                        images[w1 + j] = var(w2 + j).add(&var(w1 + j)).unwrap();
                    }
                    let mut s_img = var(s2).add(&var(s1)).unwrap();
                    for j in 0..n {
                        for l in 0..n {
                            let b = form.entry(j, l);
                            if b.is_zero() {
                                continue;
                            }
                            s_img = s_img
                                .add(&var(w2 + j).mul(&var(w1 + l)).unwrap().scale(b).unwrap())
                                .unwrap();
                        }
                    }
                    images[s1] = s_img;
                    base.substitute(&images).unwrap()
                };
                if nested != composed {
                    mismatches += 1;
                }

                // δ-homogeneity: a random δ-homogeneous polynomial obeys
                // δ_r^* h = r^d h identically in r
                let d = rng.gen_range(2..=5u64);
                let mut hterms = Vec::new();
                for _ in 0..6 {
                    let mut alpha = vec![0u32; big];
                    let t_exp = rng.gen_range(0..=(d / 2)) as u32;
                    let mut rem = (d - 2 * t_exp as u64) as u32;
                    alpha[vars.t_index] = t_exp;
                    for v in 0..n {
                        let e = if v + 1 == n {
                            rem
                        } else {
                            rng.gen_range(0..=rem)
                        };
                        alpha[v] = e;
                        rem -= e;
                    }
                    hterms.push((alpha, ring.sample(&mut rng)));
                }
                let h = MultiSeries::from_terms(ring.clone(), big, hterms, Trunc::Exact).unwrap();
                assert!(is_delta_homogeneous(&h, d, vars).unwrap());
                let pulled = dilation_pullback(&h, &DilationScalar::Symbolic(r_idx), vars).unwrap();
                let rd = symbolic_power(&ring, big, r_idx, d).unwrap();
                if pulled != rd.mul(&h).unwrap() {
                    mismatches += 1;
                }
            }
        }
    }
    assert_eq!(
        mismatches, 0,
        "coefficient mismatches in symbolic identities"
    );
    report(
        10,
        "calculus identities, fully symbolic, N in {1,2} over Q and Z/7",
    );
}

#[test]
fn criterion_11_horizontal_ode() {
    use rand::Rng;
    let order = 12u32;
    // over Q, and over Q_p with p = 13 and p = 17 (p > 12 divides no
    // integrated degree)
    let rings = vec![
        RingDescriptor::rationals(),
        RingDescriptor::padic(13, 16).unwrap(),
        RingDescriptor::padic(17, 16).unwrap(),
    ];
    for ring in rings {
        let mut rng = sample::rng_for(SEED, 0xb0);
        let form = standard_symplectic(1, &ring).unwrap();
        for _ in 0..5 {
            // random polynomial inputs of degree ≤ 4
            let phi: Vec<MultiSeries> = (0..2)
                .map(|_| {
                    MultiSeries::from_terms(
                        ring.clone(),
                        1,
                        (0..=4u32).map(|d| (vec![d], ring.sample(&mut rng))),
                        Trunc::Exact,
                    )
                    .unwrap()
                })
                .collect();
            let t0 = ring.sample(&mut rng);
            let curve = horizontal_ode_solve(&form, &phi, t0, order).unwrap();
            assert!(
                curve.satisfies_ode().unwrap(),
                "solver output fails the ODE"
            );
            // chain rule for random polynomial f
            for _ in 0..3 {
                let mut terms = Vec::new();
                for _ in 0..8 {
                    let a = rng.gen_range(0..=2u32);
                    let b = rng.gen_range(0..=2u32);
                    let c = rng.gen_range(0..=1u32);
                    terms.push((vec![a, b, c], ring.sample(&mut rng)));
                }
                let f = MultiSeries::from_terms(ring.clone(), 3, terms, Trunc::Exact).unwrap();
                assert!(curve.chain_rule_check(&f).unwrap(), "chain rule fails");
            }
            // left-translated solutions remain solutions
            let w = vec![ring.sample(&mut rng), ring.sample(&mut rng)];
            let s = ring.sample(&mut rng);
            let shifted = translate_curve(&curve, &w, &s).unwrap();
            assert!(
                shifted.satisfies_ode().unwrap(),
                "translated curve fails the ODE"
            );
        }
    }
    report(11, "horizontal ODE through order 12 over Q, Q_13, Q_17");
}

#[test]
fn criterion_12_convergent_evaluation() {
    use rand::Rng;
    // series_eval of Σ p^j x^j at x = 1 equals the extended-gcd modular
    // inverse of (1 - p) mod p^m for m ≤ 20
    for &p in &[2u64, 3, 5] {
        let ring = RingDescriptor::padic(p, 30).unwrap();
        let f = MultiSeries::from_terms(
            ring.clone(),
            1,
            (0..=24u32).map(|j| (vec![j], ring.from_bigint(&BigInt::from(p).pow(j)))),
            Trunc::Order(24),
        )
        .unwrap();
        let cert = convergence_certify(&f, &[0], GrowthWitness::new(1, 0).unwrap()).unwrap();
        let one = PadicScalar::from_integer(&BigInt::one(), p, 30).unwrap();
        for m in 1..=20u32 {
            let value = series_eval(&cert, std::slice::from_ref(&one), m as i64).unwrap();
            let modulus = BigInt::from(p).pow(m);
            let oracle = ext_gcd_inverse(&(BigInt::one() - BigInt::from(p)), &modulus);
            assert_eq!(
                BigInt::from(value.to_residue(m).unwrap()),
                oracle,
                "Σ p^j ≠ (1-p)^{{-1}} mod {p}^{m}"
            );
        }
    }
    // multiplicativity mod p^m on 100 certified pairs
    let mut rng = sample::rng_for(SEED, 0xc0);
    let p = 3u64;
    let ring = RingDescriptor::padic(p, 30).unwrap();
    for i in 0..100 {
        let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
            let deg = rng.gen_range(4..=10u32);
            MultiSeries::from_terms(
                ring.clone(),
                1,
                (0..=deg).map(|j| {
                    let c = rng.gen_range(1..50i64);
                    (
                        vec![j],
                        ring.from_bigint(&(BigInt::from(c) * BigInt::from(p).pow(j))),
                    )
                }),
                Trunc::Order(deg),
            )
            .unwrap()
        };
        let f = mk(&mut rng);
        let g = mk(&mut rng);
        let cf = convergence_certify(&f, &[0], GrowthWitness::new(1, 0).unwrap()).unwrap();
        let cg = convergence_certify(&g, &[0], GrowthWitness::new(1, 0).unwrap()).unwrap();
        let prod = cf.mul(&cg).unwrap();
        let x = PadicScalar::from_integer(&BigInt::from(rng.gen_range(0..81)), p, 30).unwrap();
        let m = rng.gen_range(2..=4i64);
        let lhs = series_eval(&prod, std::slice::from_ref(&x), m).unwrap();
        let rhs = series_eval(&cf, std::slice::from_ref(&x), m)
            .unwrap()
            .mul(&series_eval(&cg, &[x], m).unwrap());
        assert_eq!(
            lhs.to_residue(m as u32).unwrap(),
            rhs.to_residue(m as u32).unwrap(),
            "multiplicativity fails at pair {i}"
        );
    }
    report(
        12,
        "convergent evaluation: geometric series mod p^m, 100 product pairs",
    );
}
