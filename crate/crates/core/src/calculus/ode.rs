//! The horizontal-curve differential equation
//! φ'_{N+1}(x) = Σ_{j,l} b_{j,l} φ_j(x) φ'_l(x),
//! solved by formal integration through a requested order. The solution
//! class is closed under left translation by group elements.

use crate::rings::{BilinearForm, RingElem};
use crate::{Error, Result};

use super::{invariant_derivative, HeisVars, MultiSeries, Trunc};

/// An (N+1)-tuple of single-variable series satisfying the horizontal
/// ODE through its truncation order.
#[derive(Debug, Clone)]
pub struct HorizontalCurve {
    pub components: Vec<MultiSeries>,
    pub form: BilinearForm,
    pub order: u32,
}

impl HorizontalCurve {
    pub fn dim(&self) -> usize {
        self.components.len() - 1
    }

    /// The ODE residual φ'_{N+1} - Σ b_{j,l} φ_j φ'_l, truncated to
    /// order - 1 (derivatives lose one order).
    pub fn ode_residual(&self) -> Result<MultiSeries> {
        let n = self.dim();
        let ring = self.components[0].ring().clone();
        let mut rhs = MultiSeries::zero(ring, 1);
        for j in 0..n {
            for l in 0..n {
                let b = &self.form.entries()[j * n + l];
                if b.is_zero() {
                    continue;
                }
                let term = self.components[j]
                    .mul(&self.components[l].partial_derivative(0)?)?
                    .scale(b)?;
                rhs = rhs.add(&term)?;
            }
        }
        self.components[n].partial_derivative(0)?.sub(&rhs)
    }

    /// Does the stored tuple satisfy the ODE through order - 1? Over
    /// Q_p a coefficient that cancels to working precision counts as
    /// zero (the residual is checked mod p^k).
    pub fn satisfies_ode(&self) -> Result<bool> {
        let res = self.ode_residual()?;
        let cutoff = self.order.saturating_sub(1);
        Ok(res
            .coeffs()
            .iter()
            .all(|(a, c)| a[0] > cutoff || c.is_zero_like()))
    }

    /// d/dx f(φ(x)) = Σ_l φ'_l(x) (D_l f)(φ(x)) through order - 1, for a
    /// polynomial f in the (z, t) variables.
    pub fn chain_rule_check(&self, f: &MultiSeries) -> Result<bool> {
        let n = self.dim();
        if f.nvars() != n + 1 {
            return Err(Error::DimensionError {
                expected: n + 1,
                got: f.nvars(),
            });
        }
        if f.trunc() != Trunc::Exact {
            return Err(Error::InvariantViolated(
                "chain-rule check needs a polynomial".into(),
            ));
        }
        let vars = HeisVars::standard(n);
        let lhs = f.substitute(&self.components)?.partial_derivative(0)?;
        let ring = self.components[0].ring().clone();
        let mut rhs = MultiSeries::zero(ring, 1);
        for l in 1..=n {
            let dl = invariant_derivative(&self.form, f, l, vars)?;
            let term = self.components[l - 1]
                .partial_derivative(0)?
                .mul(&dl.substitute(&self.components)?)?;
            rhs = rhs.add(&term)?;
        }
        let diff = lhs.sub(&rhs)?;
        let cutoff = self.order.saturating_sub(1);
        Ok(diff
            .coeffs()
            .iter()
            .all(|(a, c)| a[0] > cutoff || c.is_zero_like()))
    }
}

/// Integrate the horizontal ODE: given φ_1..φ_N and the constant term
/// t0 of φ_{N+1}, produce the unique curve with
/// φ'_{N+1} = Σ b_{j,l} φ_j φ'_l through order T. Every degree
/// m ∈ [1, T] must admit exact division in the coefficient ring.
pub fn horizontal_ode_solve(
    form: &BilinearForm,
    phis: &[MultiSeries],
    t0: RingElem,
    order: u32,
) -> Result<HorizontalCurve> {
    let n = form.dim();
    if phis.len() != n {
        return Err(Error::DimensionError {
            expected: n,
            got: phis.len(),
        });
    }
    for phi in phis {
        if phi.nvars() != 1 {
            return Err(Error::DimensionError {
                expected: 1,
                got: phi.nvars(),
            });
        }
        if phi.ring() != form.scalar_ring() {
            return Err(Error::RingMismatch(format!(
                "component over {}, form over {}",
                phi.ring(),
                form.scalar_ring()
            )));
        }
        if !phi.trunc().covers(order) {
            return Err(Error::InsufficientPrecision(format!(
                "component known only to {:?}, need order {order}",
                phi.trunc()
            )));
        }
    }
    if t0.ring() != form.codomain() {
        return Err(Error::RingMismatch(format!(
            "t0 in {}, form codomain {}",
            t0.ring(),
            form.codomain()
        )));
    }
    let ring = form.scalar_ring().clone();
    let mut rhs = MultiSeries::zero(ring.clone(), 1);
    for j in 0..n {
        for l in 0..n {
            let b = &form.entries()[j * n + l];
            if b.is_zero() {
                continue;
            }
            let term = phis[j]
                .truncate(order)
                .mul(&phis[l].truncate(order).partial_derivative(0)?)?
                .scale(b)?;
            rhs = rhs.add(&term)?;
        }
    }
    // integrate: coefficient at x^m is rhs coefficient at x^{m-1} over m
    let mut terms = vec![(vec![0u32], t0)];
    for m in 1..=order {
        let c = rhs.coeff(&[m - 1]);
        if c.is_zero() {
            continue;
        }
        let integrated = c.div_exact_by_int(m)?;
        terms.push((vec![m], integrated));
    }
    let last = MultiSeries::from_terms(ring, 1, terms, Trunc::Order(order))?;
    let mut components: Vec<MultiSeries> = phis.iter().map(|p| p.truncate(order)).collect();
    components.push(last);
    Ok(HorizontalCurve {
        components,
        form: form.clone(),
        order,
    })
}

/// ψ(x) = (w, s) ◇ φ(x): ψ_j = w_j + φ_j and
/// ψ_{N+1} = s + φ_{N+1} + Σ b_{j,l} w_j φ_l. Solutions stay solutions.
pub fn translate_curve(
    curve: &HorizontalCurve,
    w: &[RingElem],
    s: &RingElem,
) -> Result<HorizontalCurve> {
    let n = curve.dim();
    if w.len() != n {
        return Err(Error::DimensionError {
            expected: n,
            got: w.len(),
        });
    }
    let mut components = Vec::with_capacity(n + 1);
    for j in 0..n {
        let c = MultiSeries::constant(w[j].clone(), 1);
        components.push(curve.components[j].add(&c)?);
    }
    let mut last = curve.components[n].add(&MultiSeries::constant(s.clone(), 1))?;
    for j in 0..n {
        for l in 0..n {
            let b = &curve.form.entries()[j * n + l];
            if b.is_zero() {
                continue;
            }
            last = last.add(&curve.components[l].scale(&b.mul(&w[j]))?)?;
        }
    }
    components.push(last);
    Ok(HorizontalCurve {
        components,
        form: curve.form.clone(),
        order: curve.order,
    })
}
