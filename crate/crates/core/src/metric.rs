//! The ultrametrics of the artifact: the sequence-space metric ρ^n, the
//! standard ultranorm on Q_p^n, the homogeneous gauge
//! max(|z_1|_p, ..., |z_N|_p, |t|_p^{1/2}) with its left-invariant
//! distance, and a generic ultrametric checker.
//!
//! Gauge values live in {0} ∪ p^{Z/2} and are stored as half-integer
//! exponents, so every comparison is an exact integer comparison.

use num_traits::{One, Zero};

use crate::exact::{AbsValue, PadicScalar, Rational};
use crate::heis::{HeisGroup, HeisPoint};
use crate::rings::RingKind;
use crate::{Error, Result};

/// A value in {0} ∪ p^{Z/2}: `Finite { half }` means p^{-half/2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GaugeValue {
    Zero,
    Finite { half: i64 },
}

impl GaugeValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, GaugeValue::Zero)
    }

    /// |x|_p viewed in the half-exponent scale (p^{-j} = p^{-2j/2}).
    pub fn from_abs(a: AbsValue) -> Self {
        match a {
            AbsValue::Zero => GaugeValue::Zero,
            AbsValue::Finite { exp } => GaugeValue::Finite { half: 2 * exp },
        }
    }

    /// |t|_p^{1/2} (p^{-j} square-roots to p^{-j/2}).
    pub fn sqrt_of_abs(a: AbsValue) -> Self {
        match a {
            AbsValue::Zero => GaugeValue::Zero,
            AbsValue::Finite { exp } => GaugeValue::Finite { half: exp },
        }
    }

    /// Scale by |r|_p (multiplies by p^{-exp}, i.e. adds 2 exp halves).
    pub fn scale_by_abs(self, r: AbsValue) -> Self {
        match (self, r) {
            (GaugeValue::Zero, _) | (_, AbsValue::Zero) => GaugeValue::Zero,
            (GaugeValue::Finite { half }, AbsValue::Finite { exp }) => GaugeValue::Finite {
                half: half + 2 * exp,
            },
        }
    }
}

impl PartialOrd for GaugeValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GaugeValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (GaugeValue::Zero, GaugeValue::Zero) => Ordering::Equal,
            (GaugeValue::Zero, _) => Ordering::Less,
            (_, GaugeValue::Zero) => Ordering::Greater,
            // p^{-a/2} < p^{-b/2} iff a > b
            (GaugeValue::Finite { half: a }, GaugeValue::Finite { half: b }) => b.cmp(a),
        }
    }
}

impl std::fmt::Display for GaugeValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GaugeValue::Zero => write!(f, "0"),
            GaugeValue::Finite { half } => {
                if half % 2 == 0 {
                    write!(f, "p^({})", -half / 2)
                } else {
                    write!(f, "p^({}/2)", -half)
                }
            }
        }
    }
}

/// A point of the sequence space A^infinity, stored as a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPoint {
    alphabet: u32,
    prefix: Vec<u32>,
}

impl SeqPoint {
    pub fn new(alphabet: u32, prefix: Vec<u32>) -> Result<Self> {
        if alphabet < 2 {
            return Err(Error::ParseError(
                "sequence alphabet needs at least two symbols".into(),
            ));
        }
        if let Some(&bad) = prefix.iter().find(|&&s| s >= alphabet) {
            return Err(Error::ParseError(format!(
                "symbol {bad} outside alphabet of size {alphabet}"
            )));
        }
        Ok(SeqPoint { alphabet, prefix })
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    /// Extend the stored prefix (sequences are lazily materialized).
    pub fn extend(&mut self, more: &[u32]) -> Result<()> {
        if let Some(&bad) = more.iter().find(|&&s| s >= self.alphabet) {
            return Err(Error::ParseError(format!("symbol {bad} outside alphabet")));
        }
        self.prefix.extend_from_slice(more);
        Ok(())
    }
}

/// d_ρ(x, y) = ρ^{n(x,y)} with n the common-prefix length. Distance 0 is
/// returned only for flagged-equal points: identical stored prefixes of
/// equal length. Agreement through the full overlap with different
/// stored lengths is undecidable from the stored data.
pub fn seq_distance(x: &SeqPoint, y: &SeqPoint, rho: &Rational) -> Result<Rational> {
    if x.alphabet != y.alphabet {
        return Err(Error::RingMismatch("sequence alphabets differ".into()));
    }
    if rho <= &Rational::zero() || rho >= &Rational::one() {
        return Err(Error::ParseError(format!("ρ = {rho} must lie in (0, 1)")));
    }
    let overlap = x.prefix.len().min(y.prefix.len());
    for i in 0..overlap {
        if x.prefix[i] != y.prefix[i] {
            return Ok(pow_rational(rho, i as u32));
        }
    }
    if x.prefix.len() == y.prefix.len() {
        return Ok(Rational::zero()); // flagged equal
    }
    Err(Error::NeedMorePrefix)
}

fn pow_rational(q: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= q;
    }
    acc
}

/// The standard ultranorm max_j |v_j|_p. A cancellation marker whose
/// bound p^{-m} could still dominate the decided coordinates cannot be
/// placed and is an error.
pub fn ultranorm(v: &[PadicScalar]) -> Result<AbsValue> {
    let mut max = AbsValue::Zero;
    let mut weakest_marker: Option<i64> = None;
    for c in v {
        if c.is_exact_zero() {
            continue;
        }
        if c.is_indistinguishable_from_zero() {
            let bound = c.abs_precision().expect("marker carries bound");
            weakest_marker = Some(weakest_marker.map_or(bound, |w: i64| w.min(bound)));
            continue;
        }
        max = max.max(c.abs()?);
    }
    if let Some(m) = weakest_marker {
        // the marker coordinate has |x| ≤ p^{-m}; it is invisible only if
        // some decided coordinate already reaches that bound
        if max < (AbsValue::Finite { exp: m }) {
            return Err(Error::InsufficientPrecision(format!(
                "coordinate known only to be ≤ p^-{m} could dominate the norm"
            )));
        }
    }
    Ok(max)
}

fn padic_ring_prime(g: &HeisGroup) -> Result<u64> {
    match (g.base_ring().kind(), g.codomain_ring().kind()) {
        (RingKind::Padic { prime: p1, .. }, RingKind::Padic { prime: p2, .. }) if p1 == p2 => {
            Ok(*p1)
        }
        _ => Err(Error::RingMismatch(
            "gauge metrics need a group over p-adic scalars".into(),
        )),
    }
}

fn require_integral_form(g: &HeisGroup) -> Result<()> {
    let form = g.form().ok_or(Error::UnsupportedForCocycleLaw)?;
    for e in form.entries() {
        let s = e
            .as_padic()
            .ok_or_else(|| Error::RingMismatch("form entries must be p-adic".into()))?;
        if s.is_indistinguishable_from_zero() {
            return Err(Error::GaugeRequiresIntegralForm);
        }
        if let Some(v) = s.valuation() {
            if v < 0 {
                return Err(Error::GaugeRequiresIntegralForm);
            }
        }
    }
    Ok(())
}

/// The homogeneous gauge ‖(z, t)‖ = max(|z_1|_p, ..., |z_N|_p, |t|_p^{1/2}).
/// Requires form entries in Z_p, which makes the gauge sub-multiplicative
/// under ◇.
pub fn gauge(g: &HeisGroup, a: &HeisPoint) -> Result<GaugeValue> {
    padic_ring_prime(g)?;
    require_integral_form(g)?;
    g.validate(a)?;
    let mut best = GaugeValue::Zero;
    let mut weakest_half: Option<i64> = None;
    for c in &a.z {
        let s = c.as_padic().expect("validated p-adic");
        if s.is_exact_zero() {
            continue;
        }
        if s.is_indistinguishable_from_zero() {
            let half = 2 * s.abs_precision().expect("marker bound");
            weakest_half = Some(weakest_half.map_or(half, |w: i64| w.min(half)));
            continue;
        }
        best = best.max(GaugeValue::from_abs(s.abs()?));
    }
    let t = a.t.as_padic().expect("validated p-adic");
    if t.is_indistinguishable_from_zero() {
        let half = t.abs_precision().expect("marker bound");
        weakest_half = Some(weakest_half.map_or(half, |w: i64| w.min(half)));
    } else if !t.is_exact_zero() {
        best = best.max(GaugeValue::sqrt_of_abs(t.abs()?));
    }
    if let Some(h) = weakest_half {
        if best < (GaugeValue::Finite { half: h }) {
            return Err(Error::InsufficientPrecision(
                "a coordinate known only near zero could dominate the gauge".into(),
            ));
        }
    }
    Ok(best)
}

/// The left-invariant ultrametric d(a, b) = ‖a^{-1} ◇ b‖.
///
/// Scalars are capped-precision classes, so equality of points is
/// structural; identical stored points are at distance 0 without
/// computing the (fully cancelling) difference.
pub fn left_invariant_distance(g: &HeisGroup, a: &HeisPoint, b: &HeisPoint) -> Result<GaugeValue> {
    if a == b {
        g.validate(a)?;
        return Ok(GaugeValue::Zero);
    }
    gauge(g, &g.mul(&g.inv(a)?, b)?)
}

fn require_integral_point(g: &HeisGroup, a: &HeisPoint) -> Result<()> {
    g.validate(a)?;
    for c in a.z.iter().chain(std::iter::once(&a.t)) {
        let s = c
            .as_padic()
            .ok_or_else(|| Error::RingMismatch("expected p-adic coordinate".into()))?;
        if let Some(v) = s.valuation() {
            if v < 0 {
                return Err(Error::OutsideIntegralDomain(format!("coordinate {c}")));
            }
        }
    }
    Ok(())
}

/// The bi-invariant ultrametric on Z_p^N x Z_p:
/// d(a, b) = ‖a^{-1} ◇ b‖_p with the standard ultranorm on all N+1
/// coordinates. Right-invariance comes from conjugation invariance of
/// the ultranorm over integral points.
pub fn integral_distance(g: &HeisGroup, a: &HeisPoint, b: &HeisPoint) -> Result<AbsValue> {
    padic_ring_prime(g)?;
    require_integral_form(g)?;
    require_integral_point(g, a)?;
    require_integral_point(g, b)?;
    if a == b {
        return Ok(AbsValue::Zero);
    }
    let diff = g.mul(&g.inv(a)?, b)?;
    let coords: Vec<PadicScalar> = diff
        .z
        .iter()
        .chain(std::iter::once(&diff.t))
        .map(|c| c.as_padic().expect("p-adic").clone())
        .collect();
    ultranorm(&coords)
}

/// Outcome of the finite-sample ultrametric test.
#[derive(Debug, Clone)]
pub struct UltrametricVerdict {
    pub ok: bool,
    pub failure: Option<String>,
    pub triples_checked: u64,
}

/// Verify symmetry, identity of indiscernibles, and the strong triangle
/// inequality d(x,z) ≤ max(d(x,y), d(y,z)) on every triple of the sample.
/// The distance is an oracle returning any totally ordered value type.
pub fn ultrametric_check<P, V, D, E>(
    distance: D,
    zero: V,
    points: &[P],
    eq: E,
) -> Result<UltrametricVerdict>
where
    V: Ord + Clone + std::fmt::Debug,
    D: Fn(&P, &P) -> Result<V>,
    E: Fn(&P, &P) -> bool,
{
    let n = points.len();
    let fail = |msg: String, triples: u64| {
        Ok(UltrametricVerdict {
            ok: false,
            failure: Some(msg),
            triples_checked: triples,
        })
    };
    for i in 0..n {
        for j in 0..n {
            let dij = distance(&points[i], &points[j])?;
            let dji = distance(&points[j], &points[i])?;
            if dij != dji {
                return fail(format!("symmetry fails at ({i}, {j})"), 0);
            }
            let equal = eq(&points[i], &points[j]);
            if equal && dij != zero {
                return fail(format!("d({i},{j}) = {dij:?} ≠ 0 on equal points"), 0);
            }
            if !equal && dij == zero {
                return fail(format!("d({i},{j}) = 0 on distinct points"), 0);
            }
        }
    }
    let mut triples = 0u64;
    for i in 0..n {
        for j in 0..n {
            let dij = distance(&points[i], &points[j])?;
            for k in 0..n {
                let djk = distance(&points[j], &points[k])?;
                let dik = distance(&points[i], &points[k])?;
                if dik > dij.clone().max(djk.clone()) {
                    return fail(
                        format!(
                            "strong triangle fails at ({i},{j},{k}): {dik:?} > max({dij:?}, {djk:?})"
                        ),
                        triples,
                    );
                }
                triples += 1;
            }
        }
    }
    Ok(UltrametricVerdict {
        ok: true,
        failure: None,
        triples_checked: triples,
    })
}

/// |x - y| on rationals (the Archimedean metric; fails the strong
/// triangle inequality and serves as the checker's negative control).
pub fn euclidean_rational_distance(x: &Rational, y: &Rational) -> Rational {
    let d = x - y;
    if d < Rational::zero() {
        -d
    } else {
        d
    }
}
