//! Formal multivariate polynomials and truncated power series over any
//! ring descriptor, with the group-adapted operations: invariant
//! derivations, left translations, dilation pullbacks, the horizontal
//! curve ODE, and certified convergent evaluation over Q_p.
//!
//! Coefficients live in a sparse map from multi-indices. A series is
//! either exact (a genuine polynomial) or truncated at order T, meaning
//! the coefficients of every monomial with |α| ≤ T are known and nothing
//! is claimed above. Operations propagate the tightest valid truncation,
//! so multiplying by a monomial does not discard knowledge.

mod converge;
mod ode;
mod ops;
mod parse;

pub use converge::{convergence_certify, series_eval, ConvergentSeries, GrowthWitness};
pub use ode::{horizontal_ode_solve, translate_curve, HorizontalCurve};
pub use ops::{
    delta_degree, dilation_pullback, first_order_expansion_check, invariant_derivative,
    is_delta_homogeneous, left_translate_concrete, left_translate_symbolic, min_power_in_vars,
    symbolic_power, DilationScalar, HeisVars,
};
pub use parse::parse_rational as parse_rational_text;
pub use parse::{heis_var_names, parse_poly, parse_series_file, series_file_text};

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::rings::{RingDescriptor, RingElem};
use crate::{Error, Result};

/// Exponent vector of a monomial.
pub type MultiIndex = Vec<u32>;

/// |α| = Σ α_j.
pub fn total_degree(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// Truncation order: `Order(T)` means coefficients are known exactly for
/// every |α| ≤ T; `Exact` is a polynomial with all coefficients known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trunc {
    Order(u32),
    Exact,
}

impl Trunc {
    pub fn min(self, other: Trunc) -> Trunc {
        std::cmp::min(self, other)
    }

    /// Does a monomial of degree d carry known information?
    pub fn covers(&self, d: u32) -> bool {
        match self {
            Trunc::Exact => true,
            Trunc::Order(t) => d <= *t,
        }
    }

    fn plus(self, d: u64) -> Trunc {
        match self {
            Trunc::Exact => Trunc::Exact,
            Trunc::Order(t) => Trunc::Order((t as u64 + d).min(u32::MAX as u64) as u32),
        }
    }
}

/// A sparse multivariate polynomial / truncated power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    ring: RingDescriptor,
    nvars: usize,
    coeffs: BTreeMap<MultiIndex, RingElem>,
    trunc: Trunc,
}

impl MultiSeries {
    pub fn zero(ring: RingDescriptor, nvars: usize) -> Self {
        MultiSeries {
            ring,
            nvars,
            coeffs: BTreeMap::new(),
            trunc: Trunc::Exact,
        }
    }

    pub fn constant(c: RingElem, nvars: usize) -> Self {
        let ring = c.ring().clone();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(vec![0; nvars], c);
        }
        MultiSeries {
            ring,
            nvars,
            coeffs,
            trunc: Trunc::Exact,
        }
    }

    /// The variable x_i (0-based).
    pub fn var(ring: &RingDescriptor, nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::DimensionError {
                expected: nvars,
                got: i + 1,
            });
        }
        let one = ring.one()?;
        let mut alpha = vec![0u32; nvars];
        alpha[i] = 1;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(alpha, one);
        Ok(MultiSeries {
            ring: ring.clone(),
            nvars,
            coeffs,
            trunc: Trunc::Exact,
        })
    }

    /// Build from explicit terms (repeated indices are summed).
    pub fn from_terms(
        ring: RingDescriptor,
        nvars: usize,
        terms: impl IntoIterator<Item = (MultiIndex, RingElem)>,
        trunc: Trunc,
    ) -> Result<Self> {
        let mut s = MultiSeries {
            ring,
            nvars,
            coeffs: BTreeMap::new(),
            trunc,
        };
        for (alpha, c) in terms {
            if alpha.len() != nvars {
                return Err(Error::DimensionError {
                    expected: nvars,
                    got: alpha.len(),
                });
            }
            if c.ring() != &s.ring {
                return Err(Error::RingMismatch(format!(
                    "coefficient in {}, series over {}",
                    c.ring(),
                    s.ring
                )));
            }
            if !s.trunc.covers(total_degree(&alpha)) {
                continue;
            }
            let entry = match s.coeffs.remove(&alpha) {
                Some(old) => old.add(&c),
                None => c,
            };
            if !entry.is_zero() {
                s.coeffs.insert(alpha, entry);
            }
        }
        Ok(s)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, RingElem> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, alpha: &[u32]) -> RingElem {
        self.coeffs
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Largest stored total degree.
    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|a| total_degree(a)).max()
    }

    /// Lower bound for the total degree of any (stored or unknown)
    /// nonzero term: unknown terms start above the truncation order.
    fn min_degree_bound(&self) -> Option<u64> {
        let stored = self.coeffs.keys().map(|a| total_degree(a) as u64).min();
        match (stored, self.trunc) {
            (Some(s), Trunc::Order(t)) => Some(s.min(t as u64 + 1)),
            (Some(s), Trunc::Exact) => Some(s),
            (None, Trunc::Order(t)) => Some(t as u64 + 1),
            (None, Trunc::Exact) => None, // exactly zero
        }
    }

    /// Forget coefficients above order T.
    pub fn truncate(&self, t: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(a, _)| total_degree(a) <= t)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        MultiSeries {
            ring: self.ring.clone(),
            nvars: self.nvars,
            coeffs,
            trunc: Trunc::Order(t).min(self.trunc),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "series over {} and {}",
                self.ring, other.ring
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionError {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut coeffs: BTreeMap<MultiIndex, RingElem> = BTreeMap::new();
        for (a, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if !trunc.covers(total_degree(a)) {
                continue;
            }
            let entry = match coeffs.remove(a) {
                Some(old) => old.add(c),
                None => c.clone(),
            };
            if !entry.is_zero() {
                coeffs.insert(a.clone(), entry);
            }
        }
        Ok(MultiSeries {
            ring: self.ring.clone(),
            nvars: self.nvars,
            coeffs,
            trunc,
        })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(a, c)| (a.clone(), c.neg()))
            .collect();
        MultiSeries {
            ring: self.ring.clone(),
            nvars: self.nvars,
            coeffs,
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Cauchy product. The result order is the tightest valid one:
    /// min(T_f + mindeg(g), T_g + mindeg(f)).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let trunc = match (self.min_degree_bound(), other.min_degree_bound()) {
            // one factor is exactly zero
            (None, _) | (_, None) => {
                return Ok(MultiSeries::zero(self.ring.clone(), self.nvars));
            }
            (Some(mf), Some(mg)) => self.trunc.plus(mg).min(other.trunc.plus(mf)),
        };
        let mut coeffs: BTreeMap<MultiIndex, RingElem> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let deg = total_degree(a) + total_degree(b);
                if !trunc.covers(deg) {
                    continue;
                }
                let idx: MultiIndex = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let prod = ca.mul(cb);
                let entry = match coeffs.remove(&idx) {
                    Some(old) => old.add(&prod),
                    None => prod,
                };
                if !entry.is_zero() {
                    coeffs.insert(idx, entry);
                }
            }
        }
        Ok(MultiSeries {
            ring: self.ring.clone(),
            nvars: self.nvars,
            coeffs,
            trunc,
        })
    }

    /// Multiply every coefficient by a ring element.
    pub fn scale(&self, c: &RingElem) -> Result<Self> {
        if c.ring() != &self.ring {
            return Err(Error::RingMismatch(format!(
                "scalar in {}, series over {}",
                c.ring(),
                self.ring
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(a, x)| {
                let v = x.mul(c);
                if v.is_zero() {
                    None
                } else {
                    Some((a.clone(), v))
                }
            })
            .collect();
        Ok(MultiSeries {
            ring: self.ring.clone(),
            nvars: self.nvars,
            coeffs,
            trunc: self.trunc,
        })
    }

    /// Integer scaling (n-fold sums, defined in every ring).
    pub fn int_scale(&self, n: &BigInt) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(a, x)| {
                let v = x.int_mul(n);
                if v.is_zero() {
                    None
                } else {
                    Some((a.clone(), v))
                }
            })
            .collect();
        MultiSeries {
            ring: self.ring.clone(),
            nvars: self.nvars,
            coeffs,
            trunc: self.trunc,
        }
    }

    /// Formal partial derivative in variable l: the coefficient at
    /// α'(l) picks up α_l · a_α. Knowledge drops by one order.
    pub fn partial_derivative(&self, l: usize) -> Result<Self> {
        if l >= self.nvars {
            return Err(Error::DimensionError {
                expected: self.nvars,
                got: l + 1,
            });
        }
        let mut coeffs = BTreeMap::new();
        for (a, c) in &self.coeffs {
            if a[l] == 0 {
                continue;
            }
            let mut idx = a.clone();
            idx[l] -= 1;
            let v = c.int_mul(&BigInt::from(a[l]));
            if !v.is_zero() {
                coeffs.insert(idx, v);
            }
        }
        let trunc = match self.trunc {
            Trunc::Exact => Trunc::Exact,
            Trunc::Order(0) => Trunc::Order(0),
            Trunc::Order(t) => Trunc::Order(t - 1),
        };
        Ok(MultiSeries {
            ring: self.ring.clone(),
            nvars: self.nvars,
            coeffs,
            trunc,
        })
    }

    /// Substitute images[i] for variable i. Every image must live in one
    /// common variable space over the same ring. Substitution into a
    /// truncated series requires every image to have zero constant term
    /// (otherwise each output coefficient would draw on unknown
    /// coefficients); polynomials compose freely.
    pub fn substitute(&self, images: &[MultiSeries]) -> Result<MultiSeries> {
        if images.len() != self.nvars {
            return Err(Error::DimensionError {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let (target_ring, target_nvars) = match images.first() {
            Some(im) => (im.ring.clone(), im.nvars),
            None => (self.ring.clone(), 0),
        };
        for im in images {
            if im.ring != target_ring || im.nvars != target_nvars {
                return Err(Error::RingMismatch(
                    "substitution images live in different spaces".into(),
                ));
            }
        }
        let mut image_trunc = Trunc::Exact;
        for im in images {
            image_trunc = image_trunc.min(im.trunc);
        }
        if self.trunc != Trunc::Exact {
            for im in images {
                if !im.coeff(&vec![0; target_nvars]).is_zero() {
                    return Err(Error::NonZeroConstantTerm);
                }
            }
        }
        let result_trunc = self.trunc.min(image_trunc);

        // memoized powers of each image
        let one = target_ring.one().unwrap_or_else(|_| target_ring.zero());
        let mut powers: Vec<Vec<MultiSeries>> = images
            .iter()
            .map(|im| vec![MultiSeries::constant(one.clone(), target_nvars), im.clone()])
            .collect();

        let mut acc = MultiSeries::zero(target_ring.clone(), target_nvars);
        for (alpha, c) in &self.coeffs {
            let mut term = MultiSeries::constant(c.clone(), target_nvars);
            for (i, &e) in alpha.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("non-empty").mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            if c.ring() != &target_ring {
                return Err(Error::RingMismatch(format!(
                    "coefficient in {}, images over {}",
                    c.ring(),
                    target_ring
                )));
            }
            acc = acc.add(&term)?;
        }
        // the accumulated trunc can be overly optimistic term by term;
        // clamp to the derived bound
        acc.trunc = acc.trunc.min(result_trunc);
        Ok(acc)
    }

    /// Evaluate at a point (all variables bound to ring elements).
    pub fn eval(&self, point: &[RingElem]) -> Result<RingElem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionError {
                expected: self.nvars,
                got: point.len(),
            });
        }
        for c in point {
            if c.ring() != &self.ring {
                return Err(Error::RingMismatch(format!(
                    "point coordinate in {}, series over {}",
                    c.ring(),
                    self.ring
                )));
            }
        }
        let mut acc = self.ring.zero();
        for (alpha, c) in &self.coeffs {
            let mut term = c.clone();
            for (i, &e) in alpha.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&point[i]);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Coefficientwise agreement (classes compared at their common
    /// precision for p-adic rings), over the jointly covered orders.
    pub fn agrees(&self, other: &Self) -> bool {
        if self.ring != other.ring || self.nvars != other.nvars {
            return false;
        }
        let trunc = self.trunc.min(other.trunc);
        let keys: std::collections::BTreeSet<&MultiIndex> =
            self.coeffs.keys().chain(other.coeffs.keys()).collect();
        for a in keys {
            if !trunc.covers(total_degree(a)) {
                continue;
            }
            if !self.coeff(a).agrees(&other.coeff(a)) {
                return false;
            }
        }
        true
    }

    /// Render with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (alpha, c) in &self.coeffs {
            let mut factors = Vec::new();
            let cs = c.to_string();
            if cs != "1" || alpha.iter().all(|&e| e == 0) {
                factors.push(cs);
            }
            for (i, &e) in alpha.iter().enumerate() {
                let name = names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            parts.push(factors.join("*"));
        }
        let mut out = parts.join(" + ");
        if let Trunc::Order(t) = self.trunc {
            out.push_str(&format!(" + O(deg {})", t + 1));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::RingDescriptor;

    fn q() -> RingDescriptor {
        RingDescriptor::rationals()
    }

    fn poly(ring: &RingDescriptor, terms: &[(&[u32], i64)]) -> MultiSeries {
        MultiSeries::from_terms(
            ring.clone(),
            terms[0].0.len(),
            terms.iter().map(|(a, c)| (a.to_vec(), ring.from_int(*c))),
            Trunc::Exact,
        )
        .unwrap()
    }

    #[test]
    fn difference_of_squares() {
        // (1 + px)(1 - px) = 1 - p^2 x^2 with p = 5 over Q
        let r = q();
        let f = poly(&r, &[(&[0], 1), (&[1], 5)]);
        let g = poly(&r, &[(&[0], 1), (&[1], -5)]);
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod, poly(&r, &[(&[0], 1), (&[2], -25)]));
    }

    #[test]
    fn mul_matches_brute_force_convolution() {
        // dense random degree-≤6 pairs over Z/7 against a double loop
        let r = RingDescriptor::modular(7);
        let mut rng = crate::sample::rng_for(37, 0);
        for _ in 0..50 {
            let f = random_dense(&r, 6, &mut rng);
            let g = random_dense(&r, 6, &mut rng);
            let fast = f.mul(&g).unwrap();
            for n in 0..=12u32 {
                let mut expect = r.zero();
                for j in 0..=n {
                    expect = expect.add(&f.coeff(&[j]).mul(&g.coeff(&[n - j])));
                }
                assert_eq!(fast.coeff(&[n]), expect, "coefficient {n}");
            }
        }
    }

    fn random_dense(
        r: &RingDescriptor,
        deg: u32,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> MultiSeries {
        MultiSeries::from_terms(
            r.clone(),
            1,
            (0..=deg).map(|j| (vec![j], r.sample(rng))),
            Trunc::Exact,
        )
        .unwrap()
    }

    #[test]
    fn add_zero_is_identity() {
        let r = q();
        let f = poly(&r, &[(&[2, 0], 3), (&[0, 1], -1)]);
        let z = MultiSeries::zero(r.clone(), 2);
        assert_eq!(f.add(&z).unwrap(), f);
    }

    #[test]
    fn derivative_of_cube() {
        let r = q();
        let f = poly(&r, &[(&[3], 1)]);
        assert_eq!(f.partial_derivative(0).unwrap(), poly(&r, &[(&[2], 3)]));
    }

    #[test]
    fn product_rule_on_random_pairs() {
        let r = q();
        let mut rng = crate::sample::rng_for(41, 0);
        for _ in 0..40 {
            let f = random_bivariate(&r, 3, &mut rng);
            let g = random_bivariate(&r, 3, &mut rng);
            for l in 0..2 {
                let lhs = f.mul(&g).unwrap().partial_derivative(l).unwrap();
                let rhs = f
                    .partial_derivative(l)
                    .unwrap()
                    .mul(&g)
                    .unwrap()
                    .add(&f.mul(&g.partial_derivative(l).unwrap()).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    fn random_bivariate(
        r: &RingDescriptor,
        deg: u32,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> MultiSeries {
        use rand::Rng;
        let mut terms = Vec::new();
        for i in 0..=deg {
            for j in 0..=(deg - i) {
                if rng.gen_bool(0.7) {
                    terms.push((vec![i, j], r.sample(rng)));
                }
            }
        }
        MultiSeries::from_terms(r.clone(), 2, terms, Trunc::Exact).unwrap()
    }

    #[test]
    fn taylor_split_in_one_variable() {
        // f(x + h) = f(x) + f'(x) h + g(x,h) h^2, reconstructed exactly
        // for random degree-≤5 f over Q.
        let r = q();
        let mut rng = crate::sample::rng_for(43, 0);
        for _ in 0..30 {
            let f = random_dense(&r, 5, &mut rng);
            let x_plus_h = MultiSeries::var(&r, 2, 0)
                .unwrap()
                .add(&MultiSeries::var(&r, 2, 1).unwrap())
                .unwrap();
            let shifted = f.substitute(&[x_plus_h]).unwrap();
            let x = MultiSeries::var(&r, 2, 0).unwrap();
            let fx = f.substitute(std::slice::from_ref(&x)).unwrap();
            let fpx = f.partial_derivative(0).unwrap().substitute(&[x]).unwrap();
            let h = MultiSeries::var(&r, 2, 1).unwrap();
            let linear = fx.add(&fpx.mul(&h).unwrap()).unwrap();
            let remainder = shifted.sub(&linear).unwrap();
            // the remainder must be divisible by h^2
            for (alpha, c) in remainder.coeffs() {
                assert!(
                    alpha[1] >= 2,
                    "term {alpha:?} with coefficient {c} breaks the h^2 split"
                );
            }
        }
    }

    #[test]
    fn truncation_discipline() {
        let r = q();
        // f known to order 2, multiplied by x (mindeg 1): result order 3
        let f = MultiSeries::from_terms(
            r.clone(),
            1,
            vec![(vec![0], r.from_int(1)), (vec![2], r.from_int(4))],
            Trunc::Order(2),
        )
        .unwrap();
        let x = MultiSeries::var(&r, 1, 0).unwrap();
        let shifted = f.mul(&x).unwrap();
        assert_eq!(shifted.trunc(), Trunc::Order(3));
        // adding an exact polynomial keeps the min
        let g = poly(&r, &[(&[5], 1)]);
        assert_eq!(shifted.add(&g).unwrap().trunc(), Trunc::Order(3));
        // derivative drops one order
        assert_eq!(f.partial_derivative(0).unwrap().trunc(), Trunc::Order(1));
    }

    #[test]
    fn truncated_composition_needs_zero_constant() {
        let r = q();
        let f = MultiSeries::from_terms(
            r.clone(),
            1,
            vec![(vec![1], r.from_int(1))],
            Trunc::Order(3),
        )
        .unwrap();
        let bad = poly(&r, &[(&[0], 1), (&[1], 1)]); // 1 + x
        assert_eq!(
            f.substitute(&[bad]).unwrap_err(),
            Error::NonZeroConstantTerm
        );
        let good = poly(&r, &[(&[1], 1)]);
        f.substitute(&[good]).unwrap();
    }

    #[test]
    fn eval_polynomial() {
        let r = q();
        // 3 z^2 t - z + 7 at (z, t) = (2, 5)
        let f = poly(&r, &[(&[2, 1], 3), (&[1, 0], -1), (&[0, 0], 7)]);
        let v = f.eval(&[r.from_int(2), r.from_int(5)]).unwrap();
        assert_eq!(v, r.from_int(3 * 4 * 5 - 2 + 7));
    }
}
