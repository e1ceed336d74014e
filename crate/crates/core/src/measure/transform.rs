//! Measure transformation laws: parabolic/scalar dilations, shears in a
//! chosen coordinate, and ◇-translations of cell unions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::calculus::MultiSeries;
use crate::exact::{rational_valuation, PadicScalar, Rational};
use crate::rings::{BilinearForm, RingKind};
use crate::{Error, Result};

use super::{Ball, Cell, CellUnion};

/// Scalar dilation of Q_p^n versus the parabolic δ_r on Q_p^N x Q_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DilationMode {
    /// r E with coordinatewise scaling: μ scales by |r|_p^n.
    Scalar,
    /// δ_r((z, t)) = (r z, r^2 t): μ scales by |r|_p^{N+2}.
    Parabolic,
}

/// Outcome of a dilation: the predicted measure and the image cell, so
/// the scaling law can be cross-checked against the direct measure.
#[derive(Debug, Clone)]
pub struct DilationResult {
    pub predicted_measure: Rational,
    pub image: Option<Cell>,
    pub image_measure: Rational,
}

fn abs_pow(p: u64, exp: i64) -> Rational {
    // p^{-exp}
    let pw = Rational::from(BigInt::from(p).pow(exp.unsigned_abs() as u32));
    if exp >= 0 {
        Rational::one() / pw
    } else {
        pw
    }
}

/// Scale one ball by an exact representative of r (valuation v_r): the
/// image of c + p^j Z_p is rc + p^{j + v_r} Z_p. The scalar must carry
/// enough digits for rc to be determined mod p^{j + v_r}.
fn scale_ball(ball: &Ball, r: &PadicScalar, power: u32) -> Result<Ball> {
    let p = r.prime();
    let v_r = r.valuation().ok_or(Error::IndistinguishableFromZero)?;
    let k = r.rel_precision().expect("unit scalar") as i64;
    let new_exp = ball.radius_exp() + power as i64 * v_r;
    let c = ball.center();
    if !c.is_zero() {
        let v_c = rational_valuation(c, p);
        // r^power * c is known mod p^{power·v_r + k + v_c}; we need it
        // mod p^{new_exp}
        if power as i64 * v_r + k + v_c < new_exp {
            return Err(Error::InsufficientPrecision(format!(
                "scalar carries {k} digits; scaling a center of valuation {v_c} to \
                 radius exponent {new_exp} needs more"
            )));
        }
    }
    let mut rep = Rational::one();
    for _ in 0..power {
        rep *= r.representative();
    }
    Ball::new(p, &(rep * c), new_exp)
}

/// Dilate a cell and return both the predicted measure (the scaling law)
/// and the exact image cell with its directly computed measure.
pub fn dilate_measure(cell: &Cell, r: &PadicScalar, mode: DilationMode) -> Result<DilationResult> {
    if r.prime() != cell.prime() {
        return Err(Error::RingMismatch(format!(
            "scalar at p={}, cell at p={}",
            r.prime(),
            cell.prime()
        )));
    }
    if r.is_exact_zero() {
        // the image collapses to a point
        return Ok(DilationResult {
            predicted_measure: Rational::zero(),
            image: None,
            image_measure: Rational::zero(),
        });
    }
    let v_r = r.valuation().ok_or(Error::IndistinguishableFromZero)?;
    let p = cell.prime();
    let n = cell.dim();
    let (exponent, image) = match mode {
        DilationMode::Scalar => {
            let balls: Vec<Ball> = cell
                .balls()
                .iter()
                .map(|b| scale_ball(b, r, 1))
                .collect::<Result<_>>()?;
            (n as i64, Cell::new(p, balls)?)
        }
        DilationMode::Parabolic => {
            if n < 2 {
                return Err(Error::DimensionError {
                    expected: 2,
                    got: n,
                });
            }
            let mut balls = Vec::with_capacity(n);
            for (i, b) in cell.balls().iter().enumerate() {
                let power = if i + 1 == n { 2 } else { 1 };
                balls.push(scale_ball(b, r, power)?);
            }
            ((n - 1) as i64 + 2, Cell::new(p, balls)?)
        }
    };
    let predicted = abs_pow(p, v_r * exponent) * cell.measure();
    let image_measure = image.measure();
    Ok(DilationResult {
        predicted_measure: predicted,
        image: Some(image),
        image_measure,
    })
}

/// Report of a shear-invariance verification.
#[derive(Debug, Clone)]
pub struct ShearReport {
    pub refinement: i64,
    pub pieces: usize,
    pub measure_before: Rational,
    pub measure_after: Rational,
    pub invariant: bool,
}

fn require_integral_poly(phi: &MultiSeries, p: u64) -> Result<()> {
    for (alpha, c) in phi.coeffs() {
        match c.padic_valuation(p)? {
            None => {}
            Some(v) if v >= 0 => {}
            Some(v) => {
                return Err(Error::RefinementTooCoarse(format!(
                    "coefficient at {alpha:?} has valuation {v} < 0; the shear does not \
                     map cells to cells at any finite refinement"
                )))
            }
        }
    }
    Ok(())
}

/// Image of a cell union under the shear
/// Φ(x) = (..., x_target + φ(other coordinates), ...).
///
/// All cells must lie in Z_p^n; trailing coordinates are refined to the
/// target coordinate's radius exponent so that φ is constant mod
/// p^{j_target} on every piece. An explicitly requested refinement below
/// that bound is an error.
pub fn shear_image(
    cells: &CellUnion,
    target: usize,
    phi: &MultiSeries,
    refine_to: Option<i64>,
) -> Result<CellUnion> {
    if cells.is_empty() {
        return Ok(cells.clone());
    }
    let dim = cells.cells()[0].dim();
    let p = cells.cells()[0].prime();
    if target >= dim {
        return Err(Error::DimensionError {
            expected: dim,
            got: target + 1,
        });
    }
    if phi.nvars() != dim - 1 {
        return Err(Error::DimensionError {
            expected: dim - 1,
            got: phi.nvars(),
        });
    }
    match phi.ring().kind() {
        RingKind::Rationals => {
            for (alpha, c) in phi.coeffs() {
                if let Some(v) = c.padic_valuation(p)? {
                    if v < 0 {
                        return Err(Error::RefinementTooCoarse(format!(
                            "coefficient at {alpha:?} has negative valuation"
                        )));
                    }
                }
            }
        }
        RingKind::Integers => {}
        RingKind::Padic { prime, .. } if *prime == p => require_integral_poly(phi, p)?,
        _ => {
            return Err(Error::RingMismatch(
                "shear polynomial must have integral coefficients".into(),
            ))
        }
    }

    let mut images = Vec::new();
    for cell in cells.cells() {
        for b in cell.balls() {
            if b.radius_exp() < 0 || rational_valuation_safe(b.center(), p) < 0 {
                return Err(Error::OutsideIntegralDomain(format!(
                    "cell {cell} leaves Z_p^n"
                )));
            }
        }
        let j_target = cell.balls()[target].radius_exp();
        let needed = cell
            .balls()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != target)
            .map(|(_, b)| b.radius_exp())
            .max()
            .unwrap_or(0)
            .max(j_target);
        let refinement = match refine_to {
            Some(r) => {
                if r < j_target {
                    return Err(Error::RefinementTooCoarse(format!(
                        "requested refinement {r} is coarser than the target radius {j_target}"
                    )));
                }
                r
            }
            None => needed,
        };
        // refine the non-target coordinates to `refinement`
        let mut coarse = Vec::with_capacity(dim);
        for (i, b) in cell.balls().iter().enumerate() {
            if i == target {
                coarse.push(b.clone());
            } else {
                coarse.push(Ball::new(p, b.center(), b.radius_exp())?);
            }
        }
        let pieces = refine_except(&Cell::new(p, coarse)?, target, refinement)?;
        for piece in pieces {
            let others: Vec<Rational> = piece
                .balls()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != target)
                .map(|(_, b)| b.center().clone())
                .collect();
            let ring = phi.ring();
            let args: Vec<crate::rings::RingElem> = others
                .iter()
                .map(|c| ring.from_rational(c))
                .collect::<Result<_>>()?;
            let shift_elem = phi.eval(&args)?;
            let shift = ring_elem_to_rational(&shift_elem)?;
            let mut balls = piece.balls().to_vec();
            balls[target] = Ball::new(
                p,
                &(balls[target].center() + &shift),
                balls[target].radius_exp(),
            )?;
            images.push(Cell::new(p, balls)?);
        }
    }
    CellUnion::new(images)
}

fn rational_valuation_safe(c: &Rational, p: u64) -> i64 {
    if c.is_zero() {
        i64::MAX
    } else {
        rational_valuation(c, p)
    }
}

fn ring_elem_to_rational(e: &crate::rings::RingElem) -> Result<Rational> {
    match e.payload() {
        crate::rings::Payload::Int(n) => Ok(Rational::from(n.clone())),
        crate::rings::Payload::Rat(q) => Ok(q.clone()),
        crate::rings::Payload::Padic(s) => Ok(s.representative()),
        crate::rings::Payload::Res(_) => Err(Error::RingMismatch(
            "residue values cannot shift p-adic centers".into(),
        )),
    }
}

/// Split a cell into subcells where every coordinate except `target` has
/// radius exponent exactly `j`.
fn refine_except(cell: &Cell, target: usize, j: i64) -> Result<Vec<Cell>> {
    let p = cell.prime();
    let mut axis_children: Vec<Vec<Ball>> = Vec::with_capacity(cell.dim());
    let mut count: u128 = 1;
    for (i, b) in cell.balls().iter().enumerate() {
        if i == target || b.radius_exp() >= j {
            axis_children.push(vec![b.clone()]);
            continue;
        }
        let single = Cell::new(p, vec![b.clone()])?;
        let parts = single.decompose(j)?;
        count *= parts.len() as u128;
        if count > 1_000_000 {
            return Err(Error::TooLargeToEnumerate(format!("{count} shear pieces")));
        }
        axis_children.push(parts.cells().iter().map(|c| c.balls()[0].clone()).collect());
    }
    let mut cells = Vec::new();
    let mut index = vec![0usize; cell.dim()];
    'outer: loop {
        let balls: Vec<Ball> = index
            .iter()
            .enumerate()
            .map(|(i, &k)| axis_children[i][k].clone())
            .collect();
        cells.push(Cell::new(p, balls)?);
        let mut axis = 0;
        loop {
            if axis == cell.dim() {
                break 'outer;
            }
            index[axis] += 1;
            if index[axis] < axis_children[axis].len() {
                break;
            }
            index[axis] = 0;
            axis += 1;
        }
    }
    Ok(cells)
}

/// Verify μ(Φ(E)) = μ(E) for the shear Φ, exactly.
pub fn shear_invariance_check(
    cells: &CellUnion,
    target: usize,
    phi: &MultiSeries,
    refine_to: Option<i64>,
) -> Result<ShearReport> {
    let before = cells.measure();
    let image = shear_image(cells, target, phi, refine_to)?;
    let after = image.measure();
    Ok(ShearReport {
        refinement: refine_to.unwrap_or(-1),
        pieces: image.len(),
        measure_before: before.clone(),
        measure_after: after.clone(),
        invariant: before == after,
    })
}

/// Which side a group translation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The image of a cell union under ◇-translation by (w, s) on the
/// chosen side, for a form with p-adic-integral rational entries and an
/// integral translator. Left: (w,s) ◇ (z,t) = (w + z, s + t + B(w, z));
/// right: (z,t) ◇ (w,s) = (z + w, t + s + B(z, w)). The z-part is a
/// plain translation; the t-part shifts by a z-affine amount, handled by
/// refining z to the t-radius.
pub fn heis_translate_cells(
    form: &BilinearForm,
    w: &[Rational],
    s: &Rational,
    cells: &CellUnion,
    side: Side,
) -> Result<CellUnion> {
    if cells.is_empty() {
        return Ok(cells.clone());
    }
    let p = cells.cells()[0].prime();
    let n = form.dim();
    let dim = cells.cells()[0].dim();
    if dim != n + 1 {
        return Err(Error::DimensionError {
            expected: n + 1,
            got: dim,
        });
    }
    if w.len() != n {
        return Err(Error::DimensionError {
            expected: n,
            got: w.len(),
        });
    }
    // entries and translator must be p-integral for cells to map to cells
    let ring = form.scalar_ring().clone();
    match ring.kind() {
        RingKind::Rationals | RingKind::Integers => {}
        _ => {
            return Err(Error::RingMismatch(
                "cell translation expects a form over Q or Z".into(),
            ))
        }
    }
    for e in form.entries() {
        let q = ring_elem_to_rational(e)?;
        if rational_valuation_safe(&q, p) < 0 {
            return Err(Error::OutsideIntegralDomain(format!(
                "form entry {q} is not p-integral"
            )));
        }
    }
    for c in w.iter().chain(std::iter::once(s)) {
        if rational_valuation_safe(c, p) < 0 {
            return Err(Error::OutsideIntegralDomain(format!(
                "translator coordinate {c} is not p-integral"
            )));
        }
    }
    let b_entries: Vec<Rational> = form
        .entries()
        .iter()
        .map(ring_elem_to_rational)
        .collect::<Result<_>>()?;

    let mut images = Vec::new();
    for cell in cells.cells() {
        let t_exp = cell.balls()[n].radius_exp();
        // the affine t-shift varies with z mod p^{t_exp}: refine z there
        let pieces = refine_except_z(cell, n, t_exp)?;
        for piece in pieces {
            let z_centers: Vec<Rational> =
                (0..n).map(|i| piece.balls()[i].center().clone()).collect();
            // B(w, z) or B(z, w) with the piece's z-representative
            let mut bval = Rational::zero();
            for j in 0..n {
                for l in 0..n {
                    let b = &b_entries[j * n + l];
                    if b.is_zero() {
                        continue;
                    }
                    let (wj, zl) = match side {
                        Side::Left => (&w[j], &z_centers[l]),
                        Side::Right => (&z_centers[j], &w[l]),
                    };
                    bval += b * wj * zl;
                }
            }
            let mut shifts: Vec<Rational> = w.to_vec();
            shifts.push(s + bval);
            images.push(piece.translate(&shifts)?);
        }
    }
    CellUnion::new(images)
}

/// Refine only the leading `z_count` coordinates to exponent ≥ j.
fn refine_except_z(cell: &Cell, z_count: usize, j: i64) -> Result<Vec<Cell>> {
    let p = cell.prime();
    let mut axis_children: Vec<Vec<Ball>> = Vec::with_capacity(cell.dim());
    let mut count: u128 = 1;
    for (i, b) in cell.balls().iter().enumerate() {
        if i >= z_count || b.radius_exp() >= j {
            axis_children.push(vec![b.clone()]);
            continue;
        }
        let single = Cell::new(p, vec![b.clone()])?;
        let parts = single.decompose(j)?;
        count *= parts.len() as u128;
        if count > 1_000_000 {
            return Err(Error::TooLargeToEnumerate(format!(
                "{count} translation pieces"
            )));
        }
        axis_children.push(parts.cells().iter().map(|c| c.balls()[0].clone()).collect());
    }
    let mut cells = Vec::new();
    let mut index = vec![0usize; cell.dim()];
    'outer: loop {
        let balls: Vec<Ball> = index
            .iter()
            .enumerate()
            .map(|(i, &k)| axis_children[i][k].clone())
            .collect();
        cells.push(Cell::new(p, balls)?);
        let mut axis = 0;
        loop {
            if axis == cell.dim() {
                break 'outer;
            }
            index[axis] += 1;
            if index[axis] < axis_children[axis].len() {
                break;
            }
            index[axis] = 0;
            axis += 1;
        }
    }
    Ok(cells)
}
