//! Exact Haar measure on the cell algebra of p-adic boxes.
//!
//! A cell is a product of balls c_i + p^{j_i} Z_p with canonical centers
//! (digits below p^{j_i} only). Measures are exact rationals normalized
//! by μ(Z_p) = 1, so μ(cell) = Π p^{-j_i}; translation invariance is
//! built in because centers never enter the measure.

mod counting;
mod transform;

pub use counting::{
    cell_residue_count, dilation_image_count, finite_quotient_count, finite_quotient_count_seq,
    QuotientCount,
};
pub use transform::{
    dilate_measure, heis_translate_cells, shear_image, shear_invariance_check, DilationMode,
    DilationResult, ShearReport, Side,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{rational_valuation, Rational};
use crate::{Error, Result};

/// A ball c + p^j Z_p with the center reduced mod p^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    center: Rational,
    exp: i64,
}

/// Reduce a rational (denominator prime to p after extracting the
/// p-power) to its canonical representative mod p^j: the finite digit
/// expansion Σ_{v ≤ i < j} d_i p^i.
pub fn canonical_center(c: &Rational, p: u64, j: i64) -> Result<Rational> {
    if c.is_zero() {
        return Ok(Rational::zero());
    }
    let v = rational_valuation(c, p);
    if v >= j {
        return Ok(Rational::zero());
    }
    let width = (j - v) as u32;
    let scalar = crate::exact::PadicScalar::from_rational(c, p, width)?;
    Ok(scalar.representative())
}

impl Ball {
    pub fn new(p: u64, center: &Rational, exp: i64) -> Result<Self> {
        Ok(Ball {
            center: canonical_center(center, p, exp)?,
            exp,
        })
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn radius_exp(&self) -> i64 {
        self.exp
    }

    /// Balls in an ultrametric either nest or are disjoint: they meet
    /// iff |c1 - c2|_p ≤ p^{-min(j1, j2)}.
    pub fn intersects(&self, other: &Ball, p: u64) -> bool {
        let d = &self.center - &other.center;
        if d.is_zero() {
            return true;
        }
        rational_valuation(&d, p) >= self.exp.min(other.exp)
    }

    pub fn contains_ball(&self, other: &Ball, p: u64) -> bool {
        other.exp >= self.exp && self.intersects(other, p)
    }

    pub fn contains_point(&self, x: &Rational, p: u64) -> bool {
        let d = x - &self.center;
        d.is_zero() || rational_valuation(&d, p) >= self.exp
    }
}

/// A box Π (c_i + p^{j_i} Z_p) in Q_p^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    prime: u64,
    balls: Vec<Ball>,
}

impl Cell {
    pub fn new(prime: u64, balls: Vec<Ball>) -> Result<Self> {
        if !crate::exact::is_prime(prime) {
            return Err(Error::InvalidPrime(prime));
        }
        if balls.is_empty() {
            return Err(Error::DimensionError {
                expected: 1,
                got: 0,
            });
        }
        Ok(Cell { prime, balls })
    }

    /// The unit box Z_p^n.
    pub fn unit(prime: u64, dim: usize) -> Result<Self> {
        let balls = (0..dim)
            .map(|_| Ball::new(prime, &Rational::zero(), 0))
            .collect::<Result<_>>()?;
        Cell::new(prime, balls)
    }

    /// Box from (center, exponent) pairs.
    pub fn from_coords(prime: u64, coords: &[(Rational, i64)]) -> Result<Self> {
        let balls = coords
            .iter()
            .map(|(c, j)| Ball::new(prime, c, *j))
            .collect::<Result<_>>()?;
        Cell::new(prime, balls)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.balls.len()
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    /// μ(cell) = Π p^{-j_i}, an exact rational; centers never enter.
    pub fn measure(&self) -> Rational {
        let mut acc = Rational::one();
        let p = BigInt::from(self.prime);
        for b in &self.balls {
            let pw = Rational::from(p.pow(b.exp.unsigned_abs() as u32));
            if b.exp >= 0 {
                acc /= pw;
            } else {
                acc *= pw;
            }
        }
        acc
    }

    pub fn intersects(&self, other: &Cell) -> bool {
        self.balls
            .iter()
            .zip(&other.balls)
            .all(|(a, b)| a.intersects(b, self.prime))
    }

    pub fn contains(&self, other: &Cell) -> bool {
        self.balls
            .iter()
            .zip(&other.balls)
            .all(|(a, b)| a.contains_ball(b, self.prime))
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        x.len() == self.dim()
            && self
                .balls
                .iter()
                .zip(x)
                .all(|(b, c)| b.contains_point(c, self.prime))
    }

    /// Translate by y (exact; canonical centers are recomputed).
    pub fn translate(&self, y: &[Rational]) -> Result<Cell> {
        if y.len() != self.dim() {
            return Err(Error::DimensionError {
                expected: self.dim(),
                got: y.len(),
            });
        }
        let balls = self
            .balls
            .iter()
            .zip(y)
            .map(|(b, shift)| Ball::new(self.prime, &(&b.center + shift), b.exp))
            .collect::<Result<_>>()?;
        Cell::new(self.prime, balls)
    }

    /// Partition into congruent subcells of coordinate radius p^{-j}.
    /// The count is p^{Σ (j - j_i)} and their measures sum to μ(cell).
    pub fn decompose(&self, j: i64) -> Result<CellUnion> {
        let mut log_count = 0u32;
        for b in &self.balls {
            if j < b.exp {
                return Err(Error::NotARefinement {
                    current: b.exp,
                    got: j,
                });
            }
            log_count += (j - b.exp) as u32;
        }
        let total = (self.prime as u128).checked_pow(log_count);
        match total {
            Some(t) if t <= 1_000_000 => {}
            _ => {
                return Err(Error::TooLargeToEnumerate(format!(
                    "p^{log_count} subcells"
                )))
            }
        }
        let p_big = BigInt::from(self.prime);
        // per-coordinate lists of child centers
        let mut axis_children: Vec<Vec<Rational>> = Vec::with_capacity(self.dim());
        for b in &self.balls {
            let steps = (self.prime as u128).pow((j - b.exp) as u32) as u64;
            let scale = Rational::from(p_big.pow(b.exp.unsigned_abs() as u32));
            let step = if b.exp >= 0 {
                scale
            } else {
                Rational::one() / scale
            };
            let mut centers = Vec::with_capacity(steps as usize);
            let mut offset = Rational::zero();
            for _ in 0..steps {
                centers.push(&b.center + &offset);
                offset += &step;
            }
            axis_children.push(centers);
        }
        let mut cells = Vec::new();
        let mut index = vec![0usize; self.dim()];
        loop {
            let balls: Vec<Ball> = index
                .iter()
                .enumerate()
                .map(|(i, &k)| Ball::new(self.prime, &axis_children[i][k], j))
                .collect::<Result<_>>()?;
            cells.push(Cell::new(self.prime, balls)?);
            // odometer
            let mut axis = 0;
            loop {
                if axis == self.dim() {
                    return Ok(CellUnion::from_disjoint(cells));
                }
                index[axis] += 1;
                if index[axis] < axis_children[axis].len() {
                    break;
                }
                index[axis] = 0;
                axis += 1;
            }
        }
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .balls
            .iter()
            .map(|b| format!("ball({},{})", b.center, b.exp))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A finite disjoint union of cells. Construction canonicalizes: nested
/// cells merge into the coarser one; a genuine partial overlap (possible
/// for boxes when coordinates nest in opposite directions) is rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellUnion {
    cells: Vec<Cell>,
}

impl CellUnion {
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        if cells.is_empty() {
            return Ok(CellUnion { cells });
        }
        let p = cells[0].prime;
        let dim = cells[0].dim();
        for c in &cells {
            if c.prime != p || c.dim() != dim {
                return Err(Error::RingMismatch(
                    "cells with mixed primes or dimensions".into(),
                ));
            }
        }
        let mut kept: Vec<Cell> = Vec::new();
        for cell in cells {
            let mut absorbed = false;
            kept.retain(|existing| {
                if absorbed {
                    return true;
                }
                if existing.contains(&cell) {
                    absorbed = true;
                    return true;
                }
                // drop existing cells nested inside the new one
                !cell.contains(existing)
            });
            if absorbed {
                continue;
            }
            for existing in &kept {
                if existing.intersects(&cell) {
                    return Err(Error::OverlapError(format!(
                        "{existing} and {cell} overlap without nesting"
                    )));
                }
            }
            kept.push(cell);
        }
        Ok(CellUnion { cells: kept })
    }

    /// Wrap cells that are disjoint by construction (partitions,
    /// bijective images); skips the quadratic canonicalization.
    pub(crate) fn from_disjoint(cells: Vec<Cell>) -> Self {
        debug_assert!(
            cells.len() >= 64
                || cells
                    .iter()
                    .enumerate()
                    .all(|(i, a)| cells.iter().skip(i + 1).all(|b| !a.intersects(b))),
            "from_disjoint with overlapping cells"
        );
        CellUnion { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Additive measure over the disjoint parts.
    pub fn measure(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.cells {
            acc += c.measure();
        }
        acc
    }
}

/// Parse the cell grammar `ball(c,j) x ball(c,j) x ...` with rational
/// centers.
pub fn parse_cell(text: &str, prime: u64) -> Result<Cell> {
    let mut balls = Vec::new();
    for part in text.split('x') {
        let part = part.trim();
        let inner = part
            .strip_prefix("ball(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::ParseError(format!("expected ball(c,j), got {part:?}")))?;
        let (c, j) = inner
            .rsplit_once(',')
            .ok_or_else(|| Error::ParseError(format!("expected ball(c,j), got {part:?}")))?;
        let center = crate::calculus::parse_rational_text(c)?;
        let exp: i64 = j
            .trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("bad exponent {j:?}")))?;
        balls.push(Ball::new(prime, &center, exp)?);
    }
    Cell::new(prime, balls)
}
