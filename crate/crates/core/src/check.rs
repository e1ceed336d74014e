//! Seeded, deterministic property suites over every module. These back
//! the `check` CLI subcommand; each suite reports pass/fail with a
//! witness string on failure. All randomness flows from the caller's
//! seed through independent ChaCha streams, so identical inputs
//! reproduce identical runs.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::calculus::{
    dilation_pullback, horizontal_ode_solve, invariant_derivative, left_translate_symbolic,
    translate_curve, DilationScalar, HeisVars, MultiSeries, Trunc,
};
use crate::exact::{series_sum, AbsValue, PadicScalar, Rational};
use crate::heis::{h2_enumerate, h2_enumerate_seq, Coboundary, CocycleTable, HeisGroup};
use crate::measure::{dilate_measure, Cell, CellUnion, DilationMode};
use crate::metric::{gauge, integral_distance, left_invariant_distance, ultrametric_check};
use crate::rings::{standard_symplectic, RingDescriptor, RingElem};
use crate::sample;

/// One named verdict.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub details: String,
}

impl Check {
    fn pass(name: &str, details: String) -> Self {
        Check {
            name: name.to_string(),
            pass: true,
            witness: None,
            details,
        }
    }

    fn fail(name: &str, witness: String) -> Self {
        Check {
            name: name.to_string(),
            pass: false,
            witness: Some(witness),
            details: String::new(),
        }
    }
}

/// |xy| = |x||y| and |x+y| ≤ max(|x|,|y|) with equality when the norms
/// differ, on seeded random pairs.
pub fn padic_norm_laws(p: u64, samples: u64, seed: u64) -> Check {
    let name = format!("padic-norm-laws(p={p})");
    let mut rng = sample::rng_for(seed, 0x100 + p);
    for i in 0..samples {
        let x = sample::padic(&mut rng, p, 12);
        let y = sample::padic(&mut rng, p, 12);
        let ax = x.abs().expect("unit");
        let ay = y.abs().expect("unit");
        let prod = x.mul(&y).abs().expect("unit product");
        if prod != ax.mul(ay) {
            return Check::fail(&name, format!("|xy| ≠ |x||y| at sample {i}: x={x}, y={y}"));
        }
        let sum = x.add(&y);
        match sum.abs() {
            Ok(asum) => {
                if asum > ax.max(ay) {
                    return Check::fail(&name, format!("|x+y| > max at sample {i}: x={x}, y={y}"));
                }
                if ax != ay && asum != ax.max(ay) {
                    return Check::fail(
                        &name,
                        format!("equality case fails at sample {i}: x={x}, y={y}"),
                    );
                }
            }
            Err(_) => {
                // full cancellation: only allowed when |x| = |y|
                if ax != ay {
                    return Check::fail(
                        &name,
                        format!("cancellation with unequal norms at sample {i}"),
                    );
                }
            }
        }
    }
    Check::pass(&name, format!("{samples} pairs"))
}

/// Σ_{l<k}(pe)^l ≡ (1-pe)^{-1} mod p^k: geometric partial sums against
/// the Hensel-lifted inverse.
pub fn geometric_inversion(p: u64, samples: u64, seed: u64) -> Check {
    let name = format!("geometric-inversion(p={p})");
    let mut rng = sample::rng_for(seed, 0x200 + p);
    use rand::Rng;
    for i in 0..samples {
        let e = BigInt::from(rng.gen_range(-1000i64..1000));
        let k = rng.gen_range(2..=16u32);
        let pe = BigInt::from(p) * &e;
        let mut terms = Vec::new();
        let mut power = BigInt::one();
        for _ in 0..k {
            match PadicScalar::from_integer(&power, p, k) {
                Ok(t) => terms.push(t),
                Err(_) => unreachable!("prime validated"),
            }
            power *= &pe;
        }
        let lhs = match series_sum(p, &terms, k as i64) {
            Ok(v) => v,
            Err(e) => return Check::fail(&name, format!("series_sum failed: {e}")),
        };
        let one_minus = Rational::from(BigInt::one() - pe);
        let rhs = PadicScalar::from_rational(&one_minus, p, k)
            .expect("unit denominator")
            .inv()
            .expect("unit");
        if !lhs.agrees_with(&rhs.truncate_abs(k as i64)) {
            return Check::fail(
                &name,
                format!("sample {i}: e={e}, k={k}: Σ(pe)^l = {lhs} vs inv = {rhs}"),
            );
        }
    }
    Check::pass(&name, format!("{samples} (e, k) pairs"))
}

/// Reduction Z_p -> Z/p^j is a surjective ring homomorphism.
pub fn residue_isomorphism(p: u64, j: u32, samples: u64, seed: u64) -> Check {
    let name = format!("residue-isomorphism(p={p}, j={j})");
    match crate::exact::residue_iso_check(p, j, samples, seed, None) {
        Ok(rep) if rep.pass => Check::pass(
            &name,
            format!(
                "{} classes, {} sampled pairs",
                rep.classes, rep.samples_checked
            ),
        ),
        Ok(rep) => Check::fail(&name, rep.witness.unwrap_or_default()),
        Err(e) => Check::fail(&name, e.to_string()),
    }
}

/// Ring axioms on random triples for all shipped descriptors.
pub fn ring_axioms(triples: u64, seed: u64) -> Check {
    let name = "ring-axioms";
    let rings = [
        RingDescriptor::integers(),
        RingDescriptor::rationals(),
        RingDescriptor::modular(6),
        RingDescriptor::modular_subring(8, 2).expect("2 | 8"),
        RingDescriptor::padic(3, 10).expect("prime"),
        RingDescriptor::padic_integers(5, 8).expect("prime"),
    ];
    for r in rings {
        if let Err(e) = crate::rings::check_ring_axioms(&r, triples, seed) {
            return Check::fail(name, e.to_string());
        }
    }
    Check::pass(name, format!("{triples} triples per ring"))
}

/// Group axioms on a given group: exhaustive for small finite models,
/// sampled triples otherwise.
pub fn group_axioms(group: &HeisGroup, triples: u64, seed: u64) -> Check {
    let name = format!(
        "group-axioms({}^{} x {})",
        group.base_ring(),
        group.dim(),
        group.codomain_ring()
    );
    let e = group.identity();
    let run = |a: &crate::heis::HeisPoint,
               b: &crate::heis::HeisPoint,
               c: &crate::heis::HeisPoint|
     -> Option<String> {
        let ab_c = group.mul(&group.mul(a, b).ok()?, c).ok()?;
        let a_bc = group.mul(a, &group.mul(b, c).ok()?).ok()?;
        if !group.points_agree(&ab_c, &a_bc) {
            return Some(format!("associativity fails at ({a}, {b}, {c})"));
        }
        if !group.points_agree(&group.mul(&e, a).ok()?, a) {
            return Some(format!("left identity fails at {a}"));
        }
        let inv = group.inv(a).ok()?;
        if !group.points_agree(&group.mul(a, &inv).ok()?, &e)
            || !group.points_agree(&group.mul(&inv, a).ok()?, &e)
        {
            return Some(format!("inverse fails at {a}"));
        }
        None
    };
    match group.size() {
        Some(order) if order <= 32 => {
            for i in 0..order {
                for j in 0..order {
                    for k in 0..order {
                        let a = group.point_from_index(i).expect("in range");
                        let b = group.point_from_index(j).expect("in range");
                        let c = group.point_from_index(k).expect("in range");
                        if let Some(w) = run(&a, &b, &c) {
                            return Check::fail(&name, w);
                        }
                    }
                }
            }
            Check::pass(&name, format!("exhaustive over {order}^3 triples"))
        }
        _ => {
            let mut rng = sample::rng_for(seed, 0x300);
            for _ in 0..triples {
                let a = group.sample_point(&mut rng);
                let b = group.sample_point(&mut rng);
                let c = group.sample_point(&mut rng);
                if let Some(w) = run(&a, &b, &c) {
                    return Check::fail(&name, w);
                }
            }
            Check::pass(&name, format!("{triples} sampled triples"))
        }
    }
}

/// δ_r laws: endomorphism, semigroup composition, identity at r = 1.
pub fn dilation_laws(group: &HeisGroup, samples: u64, seed: u64) -> Check {
    let name = format!("dilation-laws({})", group.base_ring());
    let mut rng = sample::rng_for(seed, 0x400);
    let one = match group.base_ring().one() {
        Ok(o) => o,
        Err(e) => return Check::fail(&name, e.to_string()),
    };
    for i in 0..samples {
        let a = group.sample_point(&mut rng);
        let b = group.sample_point(&mut rng);
        let r = group.base_ring().sample(&mut rng);
        let r2 = group.base_ring().sample(&mut rng);
        let lhs = group
            .dilate(&r, &group.mul(&a, &b).expect("valid"))
            .expect("dilation");
        let rhs = group
            .mul(
                &group.dilate(&r, &a).expect("dilation"),
                &group.dilate(&r, &b).expect("dilation"),
            )
            .expect("valid");
        if !group.points_agree(&lhs, &rhs) {
            return Check::fail(&name, format!("endomorphism fails at sample {i}"));
        }
        let compose = group
            .dilate(&r, &group.dilate(&r2, &a).expect("dilation"))
            .expect("dilation");
        let direct = group.dilate(&r.mul(&r2), &a).expect("dilation");
        if !group.points_agree(&compose, &direct) {
            return Check::fail(&name, format!("semigroup law fails at sample {i}"));
        }
        let fixed = group.dilate(&one, &a).expect("dilation");
        if !group.points_agree(&fixed, &a) {
            return Check::fail(&name, format!("δ_1 moves {a}"));
        }
    }
    Check::pass(&name, format!("{samples} samples"))
}

/// Biadditive tables and generated coboundaries pass cocycle_verify;
/// the un-normalized group has identity (0, -B(0,0)) and the displayed
/// inverse, exhaustively over Z/2 and Z/3 with N = 1.
pub fn cocycle_suite(seed: u64) -> Check {
    let name = "cocycle-suite";
    let mut rng = sample::rng_for(seed, 0x500);
    use rand::Rng;
    for m in [2u64, 3] {
        // biadditive multiplication table w*z is a cocycle
        let r = RingDescriptor::modular(m);
        let mul_form = crate::rings::BilinearForm::from_matrix(r.clone(), 1, vec![r.from_int(1)])
            .expect("1x1 matrix");
        if CocycleTable::from_form(&mul_form, m, m).is_err() {
            return Check::fail(name, format!("biadditive table over Z/{m} rejected"));
        }
        // random coboundaries are cocycles
        for _ in 0..50 {
            let values: Vec<u64> = (0..m).map(|_| rng.gen_range(0..m)).collect();
            let cb = Coboundary::new(m, 1, m, values).expect("sized");
            if cb.induced_table().is_err() {
                return Check::fail(name, format!("coboundary over Z/{m} rejected"));
            }
        }
        // un-normalized constant cocycle: identity and inverse laws
        for c in 0..m {
            let table = CocycleTable::constant(m, 1, m, c).expect("constant is a cocycle");
            let g = HeisGroup::cocycle(table);
            let e = g.identity();
            let expect = (m - c) % m;
            if e.t.residue() != Some(expect) {
                return Check::fail(
                    name,
                    format!("identity of constant-{c} cocycle group is {e}, expected t={expect}"),
                );
            }
            let all = match g.enumerate() {
                Ok(a) => a,
                Err(err) => return Check::fail(name, err.to_string()),
            };
            for a in &all {
                let inv = g.inv(a).expect("valid");
                let li = g.mul(&inv, a).expect("valid");
                let ri = g.mul(a, &inv).expect("valid");
                if li != e || ri != e {
                    return Check::fail(name, format!("inverse law fails at {a} over Z/{m}"));
                }
            }
        }
    }
    Check::pass(name, "Z/2 and Z/3, N=1, exhaustive".into())
}

/// The H^2 brute force terminates, coboundary count divides cocycle
/// count, and the parallel and sequential scans agree.
pub fn h2_stability() -> Check {
    let name = "h2-enumeration";
    for (m, n) in [(2u64, 1usize), (2, 2)] {
        let a = match h2_enumerate(m, n, m) {
            Ok(r) => r,
            Err(e) => return Check::fail(name, e.to_string()),
        };
        let b = h2_enumerate_seq(m, n, m).expect("same bounds");
        if a != b {
            return Check::fail(
                name,
                format!("parallel vs sequential differ at m={m}, n={n}"),
            );
        }
        if a.cocycles % a.coboundaries != 0 {
            return Check::fail(name, format!("divisibility fails at m={m}, n={n}"));
        }
    }
    Check::pass(
        name,
        "Z/2 with N=1 (2^4 tables) and N=2 (2^16 tables)".into(),
    )
}

/// The metric suite: gauge laws, invariances, and the strong triangle
/// inequality on seeded samples.
pub fn metric_suite(p: u64, samples: u64, seed: u64) -> Check {
    let name = format!("metric-suite(p={p})");
    let ring = RingDescriptor::padic(p, 10).expect("prime");
    let g = HeisGroup::bilinear(standard_symplectic(1, &ring).expect("has one"));
    let mut rng = sample::rng_for(seed, 0x600 + p);
    let p_elem = ring.from_int(p as i64);
    for i in 0..samples {
        let a = g.sample_point(&mut rng);
        let b = g.sample_point(&mut rng);
        let c = g.sample_point(&mut rng);
        let na = match gauge(&g, &a) {
            Ok(v) => v,
            Err(e) => return Check::fail(&name, e.to_string()),
        };
        let nb = gauge(&g, &b).expect("sampled points are decided");
        let nab = gauge(&g, &g.mul(&a, &b).expect("valid")).expect("decided");
        if nab > na.max(nb) {
            return Check::fail(&name, format!("gauge subadditivity fails at sample {i}"));
        }
        if gauge(&g, &g.inv(&a).expect("valid")).expect("decided") != na {
            return Check::fail(&name, format!("gauge inverse symmetry fails at sample {i}"));
        }
        let d0 = left_invariant_distance(&g, &a, &b).expect("decided");
        let d1 = left_invariant_distance(
            &g,
            &g.mul(&c, &a).expect("valid"),
            &g.mul(&c, &b).expect("valid"),
        )
        .expect("decided");
        if d0 != d1 {
            return Check::fail(&name, format!("left invariance fails at sample {i}"));
        }
        let da = left_invariant_distance(
            &g,
            &g.dilate(&p_elem, &a).expect("valid"),
            &g.dilate(&p_elem, &b).expect("valid"),
        )
        .expect("decided");
        if da != d0.scale_by_abs(AbsValue::Finite { exp: 1 }) {
            return Check::fail(&name, format!("dilation scaling fails at sample {i}"));
        }
    }
    // strong triangle inequality via the generic checker on a fresh set
    let pts: Vec<crate::heis::HeisPoint> = (0..12).map(|_| g.sample_point(&mut rng)).collect();
    let verdict = ultrametric_check(
        |x, y| left_invariant_distance(&g, x, y),
        crate::metric::GaugeValue::Zero,
        &pts,
        |x, y| x == y,
    );
    match verdict {
        Ok(v) if v.ok => {}
        Ok(v) => return Check::fail(&name, v.failure.unwrap_or_default()),
        Err(e) => return Check::fail(&name, e.to_string()),
    }
    // right invariance of the integral metric
    let zring = RingDescriptor::padic_integers(p, 10).expect("prime");
    let zg = HeisGroup::bilinear(standard_symplectic(1, &zring).expect("has one"));
    for i in 0..samples {
        let a = zg.sample_point(&mut rng);
        let b = zg.sample_point(&mut rng);
        let c = zg.sample_point(&mut rng);
        let d0 = integral_distance(&zg, &a, &b).expect("integral points");
        let dr = integral_distance(
            &zg,
            &zg.mul(&a, &c).expect("valid"),
            &zg.mul(&b, &c).expect("valid"),
        )
        .expect("integral points");
        if d0 != dr {
            return Check::fail(&name, format!("right invariance fails at sample {i}"));
        }
    }
    Check::pass(&name, format!("{samples} samples per law"))
}

/// Haar measure suite: μ(p^j Z_p), counting-oracle agreement on random
/// cells, and parabolic dilation scaling.
pub fn measure_suite(seed: u64) -> Check {
    let name = "measure-suite";
    use rand::Rng;
    for &p in &[2u64, 3, 5] {
        for j in -3..=5i64 {
            let cell = Cell::from_coords(p, &[(Rational::zero(), j)]).expect("valid");
            let expect = AbsValue::Finite { exp: j }.to_rational(p);
            if cell.measure() != expect {
                return Check::fail(name, format!("μ(p^{j} Z_{p}) ≠ p^-{j}"));
            }
        }
    }
    let mut rng = sample::rng_for(seed, 0x700);
    // counting oracle
    for i in 0..30 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let n = rng.gen_range(1..=2usize);
        let k = rng.gen_range(1..=3u32);
        let coords: Vec<(Rational, i64)> = (0..n)
            .map(|_| {
                (
                    Rational::from(BigInt::from(rng.gen_range(0..30))),
                    rng.gen_range(0..=k as i64),
                )
            })
            .collect();
        let cell = Cell::from_coords(p, &coords).expect("valid");
        let q = crate::measure::cell_residue_count(&cell, k).expect("in range");
        if q.normalized != cell.measure() {
            return Check::fail(
                name,
                format!("counting oracle disagrees with μ at sample {i}: {cell}"),
            );
        }
    }
    // parabolic scaling on random cells
    for i in 0..30 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3usize);
        let coords: Vec<(Rational, i64)> = (0..=n)
            .map(|_| {
                (
                    Rational::from(BigInt::from(rng.gen_range(-20..20))),
                    rng.gen_range(-2..=3i64),
                )
            })
            .collect();
        let cell = Cell::from_coords(p, &coords).expect("valid");
        for val in [1i64, 2, -1] {
            let r =
                PadicScalar::from_rational(&AbsValue::Finite { exp: -val }.to_rational(p), p, 30)
                    .expect("power of p");
            let res = dilate_measure(&cell, &r, DilationMode::Parabolic).expect("cell");
            if res.predicted_measure != res.image_measure {
                return Check::fail(
                    name,
                    format!("dilation scaling fails at sample {i}, |r| = p^{val}"),
                );
            }
        }
    }
    // shear invariance and ◇-translation invariance on cells
    {
        use crate::measure::{heis_translate_cells, shear_invariance_check, Side};
        let q = RingDescriptor::rationals();
        let phi = MultiSeries::from_terms(
            q.clone(),
            1,
            vec![(vec![1], q.from_int(1)), (vec![2], q.from_int(3))],
            Trunc::Exact,
        )
        .expect("terms");
        let cells = CellUnion::new(vec![Cell::unit(3, 2).expect("unit")]).expect("single");
        match shear_invariance_check(&cells, 0, &phi, None) {
            Ok(rep) if rep.invariant => {}
            Ok(_) => return Check::fail(name, "shear changed the measure".into()),
            Err(e) => return Check::fail(name, e.to_string()),
        }
        let form = standard_symplectic(1, &q).expect("has one");
        let box3 = CellUnion::new(vec![Cell::from_coords(
            3,
            &[
                (Rational::from(BigInt::from(1)), 1),
                (Rational::zero(), 0),
                (Rational::from(BigInt::from(2)), 2),
            ],
        )
        .expect("cell")])
        .expect("single");
        let w = vec![
            Rational::from(BigInt::from(2)),
            Rational::from(BigInt::from(4)),
        ];
        let t_shift = Rational::from(BigInt::from(7));
        for side in [Side::Left, Side::Right] {
            match heis_translate_cells(&form, &w, &t_shift, &box3, side) {
                Ok(img) if img.measure() == box3.measure() => {}
                Ok(_) => {
                    return Check::fail(name, format!("{side:?} translation changed the measure"))
                }
                Err(e) => return Check::fail(name, e.to_string()),
            }
        }
    }
    // decomposition additivity
    let cell = Cell::unit(3, 2).expect("valid");
    let parts = cell.decompose(2).expect("refinement");
    if parts.measure() != cell.measure() {
        return Check::fail(name, "decomposition does not preserve measure".into());
    }
    let union = CellUnion::new(parts.cells().to_vec()).expect("disjoint");
    if union.len() != parts.len() {
        return Check::fail(name, "decomposition produced nested cells".into());
    }
    Check::pass(
        name,
        "μ(p^j Z_p), counting oracle, parabolic scaling".into(),
    )
}

/// The calculus identity suite with fully symbolic parameters.
pub fn calculus_suite(seed: u64) -> Check {
    let name = "calculus-suite";
    let mut rng = sample::rng_for(seed, 0x800);
    use rand::Rng;
    for ring in [RingDescriptor::rationals(), RingDescriptor::modular(7)] {
        for n in [1usize, 2] {
            let vars = HeisVars::standard(n);
            let entries: Vec<RingElem> = (0..n * n).map(|_| ring.sample(&mut rng)).collect();
            let form = match crate::rings::BilinearForm::from_matrix(ring.clone(), n, entries) {
                Ok(f) => f,
                Err(e) => return Check::fail(name, e.to_string()),
            };
            // space: z_1..z_n, t, w_1..w_n, s, r
            let big = 2 * (n + 1) + 1;
            let w_start = n + 1;
            let s_index = 2 * n + 1;
            let r_index = big - 1;
            // random polynomial of degree ≤ 4 in (z, t)
            let mut terms = Vec::new();
            for _ in 0..12 {
                let mut alpha = vec![0u32; big];
                let mut budget = 4u32;
                for v in 0..=n {
                    let e = rng.gen_range(0..=budget);
                    alpha[if v < n { v } else { vars.t_index }] = e;
                    budget -= e;
                }
                terms.push((alpha, ring.sample(&mut rng)));
            }
            let f = MultiSeries::from_terms(ring.clone(), big, terms, Trunc::Exact)
                .expect("consistent terms");
            for l in 1..=n {
                let lhs = invariant_derivative(
                    &form,
                    &left_translate_symbolic(&form, &f, vars, w_start, s_index).expect("translate"),
                    l,
                    vars,
                )
                .expect("derive");
                let rhs = left_translate_symbolic(
                    &form,
                    &invariant_derivative(&form, &f, l, vars).expect("derive"),
                    vars,
                    w_start,
                    s_index,
                )
                .expect("translate");
                if lhs != rhs {
                    return Check::fail(
                        name,
                        format!("D_{l} does not commute with L over {ring}, n={n}"),
                    );
                }
                // intertwining with symbolic r
                let dl = invariant_derivative(&form, &f, l, vars).expect("derive");
                let lhs2 = invariant_derivative(
                    &form,
                    &dilation_pullback(&f, &DilationScalar::Symbolic(r_index), vars)
                        .expect("pullback"),
                    l,
                    vars,
                )
                .expect("derive");
                let rvar = MultiSeries::var(&ring, big, r_index).expect("in range");
                let rhs2 = rvar
                    .mul(
                        &dilation_pullback(&dl, &DilationScalar::Symbolic(r_index), vars)
                            .expect("pullback"),
                    )
                    .expect("mul");
                if lhs2 != rhs2 {
                    return Check::fail(
                        name,
                        format!("dilation intertwining fails over {ring}, n={n}, l={l}"),
                    );
                }
            }
        }
    }
    // horizontal ODE + chain rule over Q through order 12
    let r = RingDescriptor::rationals();
    let form = standard_symplectic(1, &r).expect("has one");
    let phi2 = MultiSeries::from_terms(
        r.clone(),
        1,
        vec![(vec![2], r.from_int(1)), (vec![1], r.from_int(3))],
        Trunc::Exact,
    )
    .expect("terms");
    let x = MultiSeries::var(&r, 1, 0).expect("in range");
    let curve = match horizontal_ode_solve(&form, &[x, phi2], r.from_int(1), 12) {
        Ok(c) => c,
        Err(e) => return Check::fail(name, e.to_string()),
    };
    if !curve.satisfies_ode().expect("residual") {
        return Check::fail(name, "ODE solver output fails its own equation".into());
    }
    let shifted =
        translate_curve(&curve, &[r.from_int(2), r.from_int(-1)], &r.from_int(4)).expect("sizes");
    if !shifted.satisfies_ode().expect("residual") {
        return Check::fail(name, "translated solution fails the ODE".into());
    }
    Check::pass(name, "symbolic identities over Q and Z/7, n ∈ {1,2}".into())
}

/// Everything, with one seed.
pub fn run_all(seed: u64, samples: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for &p in &[2u64, 3, 5, 7] {
        checks.push(padic_norm_laws(p, samples, seed));
    }
    for &p in &[2u64, 3, 5] {
        checks.push(geometric_inversion(p, samples.min(100), seed));
        for j in 1..=3 {
            checks.push(residue_isomorphism(p, j, samples, seed));
        }
    }
    checks.push(ring_axioms(samples, seed));
    let z3 = RingDescriptor::modular(3);
    checks.push(group_axioms(
        &HeisGroup::bilinear(standard_symplectic(1, &z3).expect("has one")),
        samples,
        seed,
    ));
    let q = RingDescriptor::rationals();
    checks.push(group_axioms(
        &HeisGroup::bilinear(standard_symplectic(2, &q).expect("has one")),
        samples,
        seed,
    ));
    let qp = RingDescriptor::padic(5, 10).expect("prime");
    let qp_group = HeisGroup::bilinear(standard_symplectic(1, &qp).expect("has one"));
    checks.push(group_axioms(&qp_group, samples, seed));
    checks.push(dilation_laws(&qp_group, samples, seed));
    checks.push(cocycle_suite(seed));
    checks.push(h2_stability());
    checks.push(metric_suite(3, samples, seed));
    checks.push(measure_suite(seed));
    checks.push(calculus_suite(seed));
    checks
}
