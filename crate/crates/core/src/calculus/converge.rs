//! Certified convergent power series over Q_p: a stored (truncated)
//! coefficient map plus a monotone valuation-growth witness that bounds
//! the tail on a polydisc |x_j|_p ≤ p^{-k_j}.

use crate::exact::{series_sum, PadicScalar};
use crate::rings::{BilinearForm, RingElem, RingKind};
use crate::{Error, Result};

use super::{total_degree, HeisVars, MultiSeries, Trunc};

/// A linear lower bound g(L) = slope·L + offset, slope ≥ 1, asserting
/// v_p(a_α) + α·k ≥ g(|α|) for every coefficient. Since g is monotone
/// and unbounded, the terms a_α x^α tend to zero on the domain, which in
/// an ultrametric field is exactly convergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthWitness {
    pub slope: i64,
    pub offset: i64,
}

impl GrowthWitness {
    pub fn new(slope: i64, offset: i64) -> Result<Self> {
        if slope < 1 {
            return Err(Error::CannotCertifyConvergence(format!(
                "witness slope {slope} is not monotone-increasing"
            )));
        }
        Ok(GrowthWitness { slope, offset })
    }

    pub fn at(&self, degree: u64) -> i64 {
        self.slope * degree as i64 + self.offset
    }

    /// Smallest degree L with g(L') ≥ target for all L' ≥ L.
    pub fn degree_reaching(&self, target: i64) -> u64 {
        if self.offset >= target {
            return 0;
        }
        let need = target - self.offset;
        need.div_euclid(self.slope) as u64 + u64::from(need % self.slope != 0)
    }

    /// Witness valid for the product of two certified series.
    pub fn product(&self, other: &GrowthWitness) -> GrowthWitness {
        GrowthWitness {
            slope: self.slope.min(other.slope),
            offset: self.offset + other.offset,
        }
    }
}

/// A series over Q_p certified convergent on Π {|x_j|_p ≤ p^{-k_j}}.
#[derive(Debug, Clone)]
pub struct ConvergentSeries {
    pub series: MultiSeries,
    pub domain: Vec<i64>,
    pub witness: GrowthWitness,
}

fn padic_prime(ring: &crate::rings::RingDescriptor) -> Result<u64> {
    match ring.kind() {
        RingKind::Padic { prime, .. } => Ok(*prime),
        _ => Err(Error::RingMismatch(
            "certification needs a p-adic coefficient ring".into(),
        )),
    }
}

fn coeff_valuation(c: &RingElem, p: u64) -> Result<Option<i64>> {
    c.padic_valuation(p)
}

/// Check the witness against every stored coefficient and wrap the
/// series. A violation means the series cannot be certified on the
/// requested domain with this witness.
pub fn convergence_certify(
    series: &MultiSeries,
    domain: &[i64],
    witness: GrowthWitness,
) -> Result<ConvergentSeries> {
    let p = padic_prime(series.ring())?;
    if domain.len() != series.nvars() {
        return Err(Error::DimensionError {
            expected: series.nvars(),
            got: domain.len(),
        });
    }
    for (alpha, c) in series.coeffs() {
        let v = match coeff_valuation(c, p)? {
            None => continue, // exact zero coefficient
            Some(v) => v,
        };
        let weighted: i64 = alpha.iter().zip(domain).map(|(&a, &k)| a as i64 * k).sum();
        let need = witness.at(total_degree(alpha) as u64);
        if v + weighted < need {
            return Err(Error::NotConvergentOnDomain(format!(
                "coefficient at {alpha:?} has v + α·k = {} < g(|α|) = {need}",
                v + weighted
            )));
        }
    }
    Ok(ConvergentSeries {
        series: series.clone(),
        domain: domain.to_vec(),
        witness,
    })
}

impl ConvergentSeries {
    /// The formal derivative in variable l is certified on the same
    /// domain: |j|_p ≤ 1 for every integer j, so coefficient valuations
    /// can only go up while their α·k weight drops by k_l.
    pub fn derivative(&self, l: usize) -> Result<ConvergentSeries> {
        let d = self.series.partial_derivative(l)?;
        // shifting α by one in slot l costs at most slope + k_l in g
        let witness = GrowthWitness {
            slope: self.witness.slope,
            offset: self.witness.offset - self.witness.slope - self.domain[l].max(0),
        };
        convergence_certify(&d, &self.domain, witness)
    }

    /// Sum of certified series on the same domain (coefficient
    /// valuations can only go up under addition).
    pub fn add(&self, other: &ConvergentSeries) -> Result<ConvergentSeries> {
        if self.domain != other.domain {
            return Err(Error::OutsideDomain(
                "certified sum needs matching domains".into(),
            ));
        }
        let sum = self.series.add(&other.series)?;
        let witness = GrowthWitness {
            slope: self.witness.slope.min(other.witness.slope),
            offset: self.witness.offset.min(other.witness.offset),
        };
        convergence_certify(&sum, &self.domain, witness)
    }

    /// Product of certified series on the same domain.
    pub fn mul(&self, other: &ConvergentSeries) -> Result<ConvergentSeries> {
        if self.domain != other.domain {
            return Err(Error::OutsideDomain(
                "certified product needs matching domains".into(),
            ));
        }
        let prod = self.series.mul(&other.series)?;
        convergence_certify(&prod, &self.domain, self.witness.product(&other.witness))
    }

    /// Left translation by a concrete group element of the subgroup
    /// polydisc (k, ..., k, 2k): the stored truncation is translated as
    /// a polynomial, so the result is correct mod p^m only when the
    /// discarded tail is invisible at that precision, i.e. when
    /// g(T+1) ≥ m for the stored truncation order T.
    pub fn left_translate(
        &self,
        form: &BilinearForm,
        w: &[RingElem],
        s: &RingElem,
        target_precision: i64,
    ) -> Result<ConvergentSeries> {
        let vars = HeisVars::standard(w.len());
        if let Trunc::Order(t) = self.series.trunc() {
            let tail = self.witness.at(t as u64 + 1);
            if tail < target_precision {
                return Err(Error::InsufficientPrecision(format!(
                    "stored order {t} leaves a tail at p^{tail}, need p^{target_precision}"
                )));
            }
        }
        // check (w, s) lies in the subgroup polydisc
        let p = padic_prime(self.series.ring())?;
        for (j, c) in w.iter().enumerate() {
            if let Some(v) = coeff_valuation(c, p)? {
                if v < self.domain[j] {
                    return Err(Error::OutsideDomain(format!(
                        "w_{} has valuation {v} < k = {}",
                        j + 1,
                        self.domain[j]
                    )));
                }
            }
        }
        if let Some(v) = coeff_valuation(s, p)? {
            let kt = self.domain[vars.t_index];
            if v < kt {
                return Err(Error::OutsideDomain(format!(
                    "s has valuation {v} < 2k = {kt}"
                )));
            }
        }
        let mut as_poly = self.series.clone();
        as_poly = MultiSeries::from_terms(
            as_poly.ring().clone(),
            as_poly.nvars(),
            as_poly.coeffs().iter().map(|(a, c)| (a.clone(), c.clone())),
            Trunc::Exact,
        )?;
        let translated = super::left_translate_concrete(form, &as_poly, w, s, vars)?;
        let restored = MultiSeries::from_terms(
            translated.ring().clone(),
            translated.nvars(),
            translated
                .coeffs()
                .iter()
                .map(|(a, c)| (a.clone(), c.clone())),
            self.series.trunc(),
        )?;
        convergence_certify(&restored, &self.domain, self.witness)
    }
}

/// Evaluate a certified series at a point of its polydisc, correct mod
/// p^m: sums every term with valuation below m through `series_sum`, so
/// the result is independent of the term order.
pub fn series_eval(f: &ConvergentSeries, x: &[PadicScalar], m: i64) -> Result<PadicScalar> {
    let p = padic_prime(f.series.ring())?;
    if x.len() != f.series.nvars() {
        return Err(Error::DimensionError {
            expected: f.series.nvars(),
            got: x.len(),
        });
    }
    for (i, xi) in x.iter().enumerate() {
        if xi.prime() != p {
            return Err(Error::RingMismatch("point prime mismatch".into()));
        }
        let inside = match (xi.valuation(), xi.abs_precision()) {
            (Some(v), _) => v >= f.domain[i],
            (None, None) => true, // exact zero
            (None, Some(bound)) => bound >= f.domain[i],
        };
        if !inside {
            return Err(Error::OutsideDomain(format!(
                "|x_{}| exceeds p^-{}",
                i + 1,
                f.domain[i]
            )));
        }
    }
    // degrees above L are invisible mod p^m
    let needed = f.witness.degree_reaching(m);
    if !f.series.trunc().covers(needed.min(u32::MAX as u64) as u32) {
        return Err(Error::InsufficientPrecision(format!(
            "evaluation mod p^{m} needs coefficients through degree {needed}, stored {:?}",
            f.series.trunc()
        )));
    }
    let ring = f.series.ring().clone();
    let mut terms = Vec::new();
    for (alpha, c) in f.series.coeffs() {
        if total_degree(alpha) as u64 > needed {
            continue;
        }
        let mut term = c.clone();
        for (i, &e) in alpha.iter().enumerate() {
            let xe = ring.from_padic(x[i].clone())?;
            for _ in 0..e {
                term = term.mul(&xe);
            }
        }
        let scalar = term
            .as_padic()
            .ok_or_else(|| Error::RingMismatch("expected p-adic term".into()))?
            .clone();
        terms.push(scalar);
    }
    series_sum(p, &terms, m)
}
