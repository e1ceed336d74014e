//! Group-adapted operations on series in the variables (z_1..z_N, t),
//! possibly embedded in a larger variable space carrying symbolic
//! translation parameters (w_1..w_N, s) and a symbolic dilation scalar r.

use crate::rings::{BilinearForm, RingElem};
use crate::{Error, Result};

use super::{MultiSeries, Trunc};

/// Where the group variables sit inside a series' variable space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisVars {
    /// N, the number of z-variables.
    pub n: usize,
    /// Index of z_1 (z_j is `z_start + j - 1`).
    pub z_start: usize,
    /// Index of the central variable t.
    pub t_index: usize,
}

impl HeisVars {
    /// The standard layout: variables (z_1..z_N, t) at the front.
    pub fn standard(n: usize) -> Self {
        HeisVars {
            n,
            z_start: 0,
            t_index: n,
        }
    }

    fn z(&self, j: usize) -> usize {
        self.z_start + j
    }

    fn validate(&self, nvars: usize) -> Result<()> {
        if self.z_start + self.n > nvars || self.t_index >= nvars {
            return Err(Error::DimensionError {
                expected: self.z_start + self.n,
                got: nvars,
            });
        }
        Ok(())
    }
}

fn form_entries_in<'a>(form: &'a BilinearForm, f: &MultiSeries) -> Result<&'a [RingElem]> {
    if form.scalar_ring() != f.ring() || form.codomain() != f.ring() {
        return Err(Error::RingMismatch(format!(
            "form over {}, series over {}",
            form.scalar_ring(),
            f.ring()
        )));
    }
    Ok(form.entries())
}

/// The left-invariant derivation
/// D_l(f) = ∂f/∂z_l + (Σ_j b_{j,l} z_j) ∂f/∂t  (l is 1-based).
pub fn invariant_derivative(
    form: &BilinearForm,
    f: &MultiSeries,
    l: usize,
    vars: HeisVars,
) -> Result<MultiSeries> {
    vars.validate(f.nvars())?;
    if l == 0 || l > vars.n || form.dim() != vars.n {
        return Err(Error::DimensionError {
            expected: vars.n,
            got: l,
        });
    }
    let entries = form_entries_in(form, f)?;
    let dz = f.partial_derivative(vars.z(l - 1))?;
    let dt = f.partial_derivative(vars.t_index)?;
    // Σ_j b_{j,l} z_j as a series in f's variable space
    let mut coefficient = MultiSeries::zero(f.ring().clone(), f.nvars());
    for j in 0..vars.n {
        let b = &entries[j * vars.n + (l - 1)];
        if b.is_zero() {
            continue;
        }
        let zj = MultiSeries::var(f.ring(), f.nvars(), vars.z(j))?;
        coefficient = coefficient.add(&zj.scale(b)?)?;
    }
    dz.add(&coefficient.mul(&dt)?)
}

/// Substitution images realizing (z, t) ↦ (w, s)^{-1} ◇ (z, t) with the
/// translation parameters taken from dedicated variables: z_j ↦ z_j - w_j
/// and t ↦ t - s + B(w, w) - B(w, z).
pub fn left_translate_symbolic(
    form: &BilinearForm,
    f: &MultiSeries,
    vars: HeisVars,
    w_start: usize,
    s_index: usize,
) -> Result<MultiSeries> {
    vars.validate(f.nvars())?;
    let w_vars = HeisVars {
        n: vars.n,
        z_start: w_start,
        t_index: s_index,
    };
    w_vars.validate(f.nvars())?;
    let entries = form_entries_in(form, f)?;
    let ring = f.ring().clone();
    let nv = f.nvars();
    let var = |i: usize| MultiSeries::var(&ring, nv, i);

    let mut images = Vec::with_capacity(nv);
    for i in 0..nv {
        images.push(var(i)?);
    }
    for j in 0..vars.n {
        images[vars.z(j)] = var(vars.z(j))?.sub(&var(w_vars.z(j))?)?;
    }
    // B(w, w) - B(w, z) as polynomials in the big space
    let mut shift = var(vars.t_index)?.sub(&var(s_index)?)?;
    for j in 0..vars.n {
        for l in 0..vars.n {
            let b = &entries[j * vars.n + l];
            if b.is_zero() {
                continue;
            }
            let wj = var(w_vars.z(j))?;
            let wl = var(w_vars.z(l))?;
            let zl = var(vars.z(l))?;
            shift = shift.add(&wj.mul(&wl)?.scale(b)?)?;
            shift = shift.sub(&wj.mul(&zl)?.scale(b)?)?;
        }
    }
    images[vars.t_index] = shift;
    f.substitute(&images)
}

/// Left translation by a concrete point (w, s) of the group over the
/// series' coefficient ring.
pub fn left_translate_concrete(
    form: &BilinearForm,
    f: &MultiSeries,
    w: &[RingElem],
    s: &RingElem,
    vars: HeisVars,
) -> Result<MultiSeries> {
    vars.validate(f.nvars())?;
    if w.len() != vars.n {
        return Err(Error::DimensionError {
            expected: vars.n,
            got: w.len(),
        });
    }
    let entries = form_entries_in(form, f)?;
    let ring = f.ring().clone();
    let nv = f.nvars();
    let var = |i: usize| MultiSeries::var(&ring, nv, i);

    let mut images = Vec::with_capacity(nv);
    for i in 0..nv {
        images.push(var(i)?);
    }
    for j in 0..vars.n {
        let c = MultiSeries::constant(w[j].neg(), nv);
        images[vars.z(j)] = var(vars.z(j))?.add(&c)?;
    }
    // t - s + B(w, w) - Σ_l (Σ_j b_{j,l} w_j) z_l
    let mut b_ww = ring.zero();
    for j in 0..vars.n {
        for l in 0..vars.n {
            b_ww = b_ww.add(&entries[j * vars.n + l].mul(&w[j]).mul(&w[l]));
        }
    }
    let mut shift = var(vars.t_index)?.add(&MultiSeries::constant(b_ww.sub(s), nv))?;
    for l in 0..vars.n {
        let mut coeff = ring.zero();
        for j in 0..vars.n {
            coeff = coeff.add(&entries[j * vars.n + l].mul(&w[j]));
        }
        if !coeff.is_zero() {
            shift = shift.sub(&var(vars.z(l))?.scale(&coeff)?)?;
        }
    }
    images[vars.t_index] = shift;
    f.substitute(&images)
}

/// How δ_r enters a pullback: a dedicated variable or a ring constant.
#[derive(Debug, Clone)]
pub enum DilationScalar {
    Symbolic(usize),
    Concrete(RingElem),
}

/// The dilation pullback δ_r^*(f)((z,t)) = f((r z, r^2 t)).
pub fn dilation_pullback(
    f: &MultiSeries,
    r: &DilationScalar,
    vars: HeisVars,
) -> Result<MultiSeries> {
    vars.validate(f.nvars())?;
    let ring = f.ring().clone();
    let nv = f.nvars();
    let var = |i: usize| MultiSeries::var(&ring, nv, i);
    let r_series = match r {
        DilationScalar::Symbolic(idx) => {
            if *idx >= nv {
                return Err(Error::DimensionError {
                    expected: nv,
                    got: idx + 1,
                });
            }
            var(*idx)?
        }
        DilationScalar::Concrete(c) => MultiSeries::constant(c.clone(), nv),
    };
    let r_squared = r_series.mul(&r_series)?;
    let mut images = Vec::with_capacity(nv);
    for i in 0..nv {
        images.push(var(i)?);
    }
    for j in 0..vars.n {
        images[vars.z(j)] = r_series.mul(&var(vars.z(j))?)?;
    }
    images[vars.t_index] = r_squared.mul(&var(vars.t_index)?)?;
    f.substitute(&images)
}

/// |α|_δ = Σ_{j≤N} α_j + 2 α_{N+1} for the standard (z_1..z_N, t)
/// layout: z-exponents count once, the t-exponent twice.
pub fn delta_degree(alpha: &[u32], vars: HeisVars) -> Result<u64> {
    if vars.z_start + vars.n > alpha.len() || vars.t_index >= alpha.len() {
        return Err(Error::DimensionError {
            expected: vars.n + 1,
            got: alpha.len(),
        });
    }
    let mut d = 0u64;
    for j in 0..vars.n {
        d += alpha[vars.z(j)] as u64;
    }
    d += 2 * alpha[vars.t_index] as u64;
    Ok(d)
}

/// Does every stored monomial have |α|_δ = d? When it does, the
/// substitution identity f(r z, r^2 t) = r^d f(z, t) holds identically.
pub fn is_delta_homogeneous(f: &MultiSeries, d: u64, vars: HeisVars) -> Result<bool> {
    vars.validate(f.nvars())?;
    for alpha in f.coeffs().keys() {
        if delta_degree(alpha, vars)? != d {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scale degrees for remainder analysis: largest power of the chosen
/// variables dividing a series (minimum of the summed exponents).
pub fn min_power_in_vars(f: &MultiSeries, var_indices: &[usize]) -> Option<u32> {
    f.coeffs()
        .keys()
        .map(|alpha| var_indices.iter().map(|&i| alpha[i]).sum::<u32>())
        .min()
}

/// First-order expansion data of f((z,t) ◇ (h, 0)): the value, the
/// invariant derivatives, and the proof obligation that the remainder is
/// divisible by degree-2 monomials in h.
pub fn first_order_expansion_check(
    form: &BilinearForm,
    f: &MultiSeries,
    vars: HeisVars,
) -> Result<bool> {
    vars.validate(f.nvars())?;
    if f.trunc() != Trunc::Exact {
        return Err(Error::InvariantViolated(
            "first-order expansion check needs a polynomial".into(),
        ));
    }
    let ring = f.ring().clone();
    let n = vars.n;
    // extend the space with h_1..h_N at the end
    let nv = f.nvars();
    let big = nv + n;
    let var = |i: usize| MultiSeries::var(&ring, big, i);
    let entries = form_entries_in(form, f)?;

    // images for f((z,t) ◇ (h,0)) = f(z + h, t + B(z, h))
    let mut images = Vec::with_capacity(nv);
    for i in 0..nv {
        images.push(var(i)?);
    }
    for j in 0..n {
        images[vars.z(j)] = var(vars.z(j))?.add(&var(nv + j)?)?;
    }
    let mut t_img = var(vars.t_index)?;
    for j in 0..n {
        for l in 0..n {
            let b = &entries[j * n + l];
            if b.is_zero() {
                continue;
            }
            t_img = t_img.add(&var(vars.z(j))?.mul(&var(nv + l)?)?.scale(b)?)?;
        }
    }
    images[vars.t_index] = t_img;
    let expanded = f.substitute(&images)?;

    // f((z,t)) + Σ_l D_l(f) h_l in the big space
    let embed = |g: &MultiSeries| -> Result<MultiSeries> {
        let mut imgs = Vec::with_capacity(nv);
        for i in 0..nv {
            imgs.push(var(i)?);
        }
        g.substitute(&imgs)
    };
    let mut linear = embed(f)?;
    for l in 1..=n {
        let dl = invariant_derivative(form, f, l, vars)?;
        linear = linear.add(&embed(&dl)?.mul(&var(nv + l - 1)?)?)?;
    }
    let remainder = expanded.sub(&linear)?;
    let h_indices: Vec<usize> = (nv..big).collect();
    Ok(remainder.is_zero() || min_power_in_vars(&remainder, &h_indices) >= Some(2))
}

/// r^d as a series in the symbolic dilation variable.
pub fn symbolic_power(
    ring: &crate::rings::RingDescriptor,
    nvars: usize,
    var_index: usize,
    d: u64,
) -> Result<MultiSeries> {
    let one = ring.one()?;
    let mut alpha = vec![0u32; nvars];
    alpha[var_index] =
        u32::try_from(d).map_err(|_| Error::TooLargeToEnumerate(format!("degree {d}")))?;
    MultiSeries::from_terms(ring.clone(), nvars, vec![(alpha, one)], Trunc::Exact)
}
