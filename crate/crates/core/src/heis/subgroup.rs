//! Subgroup and normality verdicts on finite models, pushforwards along
//! ring homomorphisms, and the change-of-variables isomorphism.

use std::collections::BTreeSet;

use crate::rings::{BilinearForm, RingElem, RingHom};
use crate::{Error, Result};

use super::{HeisGroup, HeisPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupMode {
    Subgroup,
    Normal,
}

/// Outcome of a closure scan, with a violating witness on failure.
#[derive(Debug, Clone)]
pub struct SubgroupVerdict {
    pub ok: bool,
    /// (offending pair) — for normality the first component is the
    /// conjugating group element.
    pub witness: Option<(HeisPoint, HeisPoint)>,
}

/// Check that S is a subgroup (closure under ◇ and inverse), and in
/// `Normal` mode additionally closed under conjugation by every group
/// element. Requires finite carrier rings.
pub fn check_subgroup(
    group: &HeisGroup,
    subset: &[HeisPoint],
    mode: SubgroupMode,
) -> Result<SubgroupVerdict> {
    if group.size().is_none() {
        return Err(Error::RequiresFiniteModel);
    }
    let mut index_set = BTreeSet::new();
    for p in subset {
        group.validate(p)?;
        index_set.insert(group.index_of_point(p)?);
    }
    let members: Vec<HeisPoint> = index_set
        .iter()
        .map(|&i| group.point_from_index(i))
        .collect::<Result<_>>()?;
    for a in &members {
        let inv = group.inv(a)?;
        if !index_set.contains(&group.index_of_point(&inv)?) {
            return Ok(SubgroupVerdict {
                ok: false,
                witness: Some((a.clone(), inv)),
            });
        }
        for b in &members {
            let prod = group.mul(a, b)?;
            if !index_set.contains(&group.index_of_point(&prod)?) {
                return Ok(SubgroupVerdict {
                    ok: false,
                    witness: Some((a.clone(), b.clone())),
                });
            }
        }
    }
    if mode == SubgroupMode::Normal {
        let order = group.size().expect("finite checked");
        for gi in 0..order {
            let g = group.point_from_index(gi)?;
            for a in &members {
                let conj = group.conj(&g, a)?;
                if !index_set.contains(&group.index_of_point(&conj)?) {
                    return Ok(SubgroupVerdict {
                        ok: false,
                        witness: Some((g, a.clone())),
                    });
                }
            }
        }
    }
    Ok(SubgroupVerdict {
        ok: true,
        witness: None,
    })
}

/// Report of a verified pushforward Φ((z,t)) = (Φ1(z), φ(t)).
#[derive(Debug, Clone)]
pub struct PushforwardReport {
    /// Pairs on which compatibility and multiplicativity were verified.
    pub pairs_checked: u64,
    /// Kernel size, for finite sources.
    pub kernel_size: Option<u64>,
    /// Whether the kernel equals A0^N x A0 with A0 = ker φ (finite case).
    pub kernel_is_a0_block: Option<bool>,
}

/// Verify B1(Φ1(w), Φ1(z)) = φ(B(w, z)) and that Φ is a homomorphism
/// onto the target group; compute the kernel exactly on finite models.
///
/// Compatibility failures surface as [`Error::NotCompatible`] with the
/// offending pair.
pub fn pushforward(
    group: &HeisGroup,
    phi: &RingHom,
    target_form: &BilinearForm,
    samples: u64,
    seed: u64,
) -> Result<PushforwardReport> {
    let form = group.form().ok_or(Error::UnsupportedForCocycleLaw)?;
    if form.codomain() != phi.source() || group.base_ring() != phi.source() {
        return Err(Error::HomDomainError(format!(
            "homomorphism source {} does not match group rings {}",
            phi.source(),
            group.base_ring()
        )));
    }
    if target_form.scalar_ring() != phi.target() {
        return Err(Error::HomDomainError(format!(
            "target form over {}, homomorphism lands in {}",
            target_form.scalar_ring(),
            phi.target()
        )));
    }
    if target_form.dim() != group.dim() {
        return Err(Error::DimensionError {
            expected: group.dim(),
            got: target_form.dim(),
        });
    }
    let target = HeisGroup::bilinear(target_form.clone());
    let map_point = |p: &HeisPoint| -> Result<HeisPoint> {
        let z =
            p.z.iter()
                .map(|c| phi.apply(c))
                .collect::<Result<Vec<_>>>()?;
        Ok(HeisPoint {
            z,
            t: phi.apply(&p.t)?,
        })
    };

    // Compatibility B1(Φ1 w, Φ1 z) = φ(B(w, z)) on coordinate-vector
    // pairs: exhaustive when the coordinate module is small, sampled
    // otherwise.
    let map_coords =
        |z: &[RingElem]| -> Result<Vec<RingElem>> { z.iter().map(|c| phi.apply(c)).collect() };
    let check_compat = |w: &[RingElem], z: &[RingElem]| -> Result<()> {
        let lhs = target_form.eval(&map_coords(w)?, &map_coords(z)?)?;
        let rhs = phi.apply(&form.eval(w, z)?)?;
        if !lhs.agrees(&rhs) {
            return Err(Error::NotCompatible(format!(
                "w = ({}), z = ({})",
                w.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                z.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            )));
        }
        Ok(())
    };
    let mut pairs_checked = 0u64;
    let coord_count = group
        .base_ring()
        .finite_order()
        .and_then(|b| b.checked_pow(group.dim() as u32));
    match coord_count {
        Some(c) if c * c <= 100_000 => {
            let decode = |mut i: u64| -> Result<Vec<RingElem>> {
                let b = group.base_ring().finite_order().expect("finite");
                let mut v = vec![group.base_ring().zero(); group.dim()];
                for j in (0..group.dim()).rev() {
                    v[j] = group.base_ring().elem_from_index(i % b)?;
                    i /= b;
                }
                Ok(v)
            };
            for i in 0..c {
                let w = decode(i)?;
                for j in 0..c {
                    check_compat(&w, &decode(j)?)?;
                    pairs_checked += 1;
                }
            }
        }
        _ => {
            let mut rng = crate::sample::rng_for(seed, 0x9f0);
            for _ in 0..samples {
                let w: Vec<RingElem> = (0..group.dim())
                    .map(|_| group.base_ring().sample(&mut rng))
                    .collect();
                let z: Vec<RingElem> = (0..group.dim())
                    .map(|_| group.base_ring().sample(&mut rng))
                    .collect();
                check_compat(&w, &z)?;
                pairs_checked += 1;
            }
        }
    }

    // Multiplicativity of Φ on group-element pairs.
    let mut check_pair = |a: &HeisPoint, b: &HeisPoint| -> Result<()> {
        let hom_lhs = map_point(&group.mul(a, b)?)?;
        let hom_rhs = target.mul(&map_point(a)?, &map_point(b)?)?;
        if !target.points_agree(&hom_lhs, &hom_rhs) {
            return Err(Error::NotCompatible(format!(
                "Φ not multiplicative at ({a}, {b})"
            )));
        }
        pairs_checked += 1;
        Ok(())
    };
    match group.size() {
        Some(order) if order * order <= 100_000 => {
            for i in 0..order {
                for j in 0..order {
                    check_pair(&group.point_from_index(i)?, &group.point_from_index(j)?)?;
                }
            }
        }
        _ => {
            let mut rng = crate::sample::rng_for(seed, 0x9f1);
            for _ in 0..samples.max(1) {
                let a = group.sample_point(&mut rng);
                let b = group.sample_point(&mut rng);
                check_pair(&a, &b)?;
            }
        }
    }

    // Exact kernel on finite models: compare with A0^N x A0.
    let (kernel_size, kernel_is_a0_block) = if group.size().is_some() {
        let order = group.size().expect("finite");
        let target_id = target.identity();
        let mut kernel = BTreeSet::new();
        for i in 0..order {
            let p = group.point_from_index(i)?;
            if target.points_agree(&map_point(&p)?, &target_id) {
                kernel.insert(i);
            }
        }
        let a0: Vec<RingElem> = phi.kernel()?;
        let a0_idx: BTreeSet<u64> = a0
            .iter()
            .map(|e| group.base_ring().index_of(e))
            .collect::<Result<_>>()?;
        let mut block = BTreeSet::new();
        let a0_count = a0_idx.len() as u64;
        let n = group.dim() as u32;
        let total = a0_count.pow(n) * a0_count;
        for code in 0..total {
            let mut c = code;
            let t_pos = c % a0_count;
            c /= a0_count;
            let a0_vec: Vec<u64> = a0_idx.iter().copied().collect();
            let t = group
                .codomain_ring()
                .elem_from_index(a0_vec[t_pos as usize])?;
            let mut z = Vec::with_capacity(group.dim());
            for _ in 0..group.dim() {
                z.push(
                    group
                        .base_ring()
                        .elem_from_index(a0_vec[(c % a0_count) as usize])?,
                );
                c /= a0_count;
            }
            z.reverse();
            block.insert(group.index_of_point(&HeisPoint { z, t })?);
        }
        (Some(kernel.len() as u64), Some(kernel == block))
    } else {
        (None, None)
    };

    Ok(PushforwardReport {
        pairs_checked,
        kernel_size,
        kernel_is_a0_block,
    })
}

/// The twisted group of B̃ = B + C + C^T together with the isomorphism
/// φ((z,t)) = (z, t + C(z,z)) from the original group onto it.
#[derive(Debug, Clone)]
pub struct ChangeOfVariables {
    pub original: HeisGroup,
    pub twisted: HeisGroup,
    shift: BilinearForm,
}

impl ChangeOfVariables {
    /// φ((z, t)) = (z, t + C(z, z)).
    pub fn map(&self, p: &HeisPoint) -> Result<HeisPoint> {
        self.original.validate(p)?;
        Ok(HeisPoint {
            z: p.z.clone(),
            t: p.t.add(&self.shift.eval(&p.z, &p.z)?),
        })
    }

    /// The inverse map (z, t) ↦ (z, t - C(z, z)).
    pub fn unmap(&self, p: &HeisPoint) -> Result<HeisPoint> {
        self.twisted.validate(p)?;
        Ok(HeisPoint {
            z: p.z.clone(),
            t: p.t.sub(&self.shift.eval(&p.z, &p.z)?),
        })
    }

    /// Verify the isomorphism: multiplicative (exhaustively on finite
    /// models, on `samples` random pairs otherwise) and bijective.
    pub fn verify(&self, samples: u64, seed: u64) -> Result<u64> {
        let mut checked = 0u64;
        let mut check_pair = |a: &HeisPoint, b: &HeisPoint| -> Result<()> {
            let lhs = self.map(&self.original.mul(a, b)?)?;
            let rhs = self.twisted.mul(&self.map(a)?, &self.map(b)?)?;
            if !self.twisted.points_agree(&lhs, &rhs) {
                return Err(Error::InvariantViolated(format!(
                    "change of variables not multiplicative at ({a}, {b})"
                )));
            }
            checked += 1;
            Ok(())
        };
        if let Some(order) = self.original.size() {
            for i in 0..order {
                let a = self.original.point_from_index(i)?;
                for j in 0..order {
                    check_pair(&a, &self.original.point_from_index(j)?)?;
                }
            }
            // bijectivity: the image must exhaust the twisted group
            let mut image = BTreeSet::new();
            for i in 0..order {
                let p = self.original.point_from_index(i)?;
                image.insert(self.twisted.index_of_point(&self.map(&p)?)?);
            }
            if image.len() as u64 != order {
                return Err(Error::InvariantViolated(
                    "change of variables is not injective".into(),
                ));
            }
        } else {
            let mut rng = crate::sample::rng_for(seed, 0xc07);
            for _ in 0..samples {
                let a = self.original.sample_point(&mut rng);
                let b = self.original.sample_point(&mut rng);
                check_pair(&a, &b)?;
                let round = self.unmap(&self.map(&a)?)?;
                if !self.original.points_agree(&round, &a) {
                    return Err(Error::InvariantViolated("unmap does not invert map".into()));
                }
            }
        }
        Ok(checked)
    }
}

/// Build the changed-variables pair for a biadditive C on the same
/// coordinate module.
pub fn change_of_variables(group: &HeisGroup, c_form: &BilinearForm) -> Result<ChangeOfVariables> {
    let form = group.form().ok_or(Error::UnsupportedForCocycleLaw)?;
    if c_form.dim() != form.dim() {
        return Err(Error::DimensionError {
            expected: form.dim(),
            got: c_form.dim(),
        });
    }
    if c_form.scalar_ring() != form.scalar_ring() || c_form.codomain() != form.codomain() {
        return Err(Error::RingMismatch("C must share the form's rings".into()));
    }
    let twisted_form = form.add(&c_form.add(&c_form.transpose())?)?;
    Ok(ChangeOfVariables {
        original: group.clone(),
        twisted: HeisGroup::bilinear(twisted_form),
        shift: c_form.clone(),
    })
}
