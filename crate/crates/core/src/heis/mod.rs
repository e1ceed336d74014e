//! Heisenberg-type groups on A^N x A' with the twisted law
//! (w, s) ◇ (z, t) = (w + z, s + t + B(w, z)).
//!
//! B is either a matrix bilinear form (possibly composed with a ring
//! homomorphism so the values land in a different ring) or a finite
//! 2-cocycle table; the cocycle law keeps B(0,0) explicit, so the
//! identity is (0, -B(0,0)) and the inverse carries the B(w,-w) term.

mod cocycle;
mod h2;
mod subgroup;

pub use cocycle::{cocycle_verify, Coboundary, CocycleTable, CocycleVerdict};
pub use h2::{h2_enumerate, h2_enumerate_seq, H2Report};
pub use subgroup::{
    change_of_variables, check_subgroup, pushforward, ChangeOfVariables, PushforwardReport,
    SubgroupMode, SubgroupVerdict,
};

use crate::rings::{BilinearForm, RingDescriptor, RingElem};
use crate::{Error, Result};

/// A point (z, t) with z in the base ring power and t in the codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisPoint {
    pub z: Vec<RingElem>,
    pub t: RingElem,
}

impl std::fmt::Display for HeisPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let coords: Vec<String> = self.z.iter().map(|c| c.to_string()).collect();
        write!(f, "({};{})", coords.join(","), self.t)
    }
}

/// Which twisted law the group carries.
#[derive(Debug, Clone)]
pub enum GroupLaw {
    Bilinear(BilinearForm),
    Cocycle(CocycleTable),
}

/// A group A^N x A' with the ◇ law.
#[derive(Debug, Clone)]
pub struct HeisGroup {
    dim: usize,
    base: RingDescriptor,
    codomain: RingDescriptor,
    law: GroupLaw,
}

impl HeisGroup {
    /// Group from a bilinear form; B's coordinate ring is the base and
    /// its (possibly hom-shifted) codomain carries t.
    pub fn bilinear(form: BilinearForm) -> Self {
        HeisGroup {
            dim: form.dim(),
            base: form.scalar_ring().clone(),
            codomain: form.codomain().clone(),
            law: GroupLaw::Bilinear(form),
        }
    }

    /// The standard Heisenberg group H_n(R): N = 2n with the symplectic
    /// form.
    pub fn standard(n: usize, ring: &RingDescriptor) -> Result<Self> {
        Ok(Self::bilinear(crate::rings::standard_symplectic(n, ring)?))
    }

    /// Group from a verified 2-cocycle table (no normalization applied).
    pub fn cocycle(table: CocycleTable) -> Self {
        HeisGroup {
            dim: table.dim(),
            base: table.base_ring().clone(),
            codomain: table.value_ring().clone(),
            law: GroupLaw::Cocycle(table),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base_ring(&self) -> &RingDescriptor {
        &self.base
    }

    pub fn codomain_ring(&self) -> &RingDescriptor {
        &self.codomain
    }

    pub fn law(&self) -> &GroupLaw {
        &self.law
    }

    pub fn form(&self) -> Option<&BilinearForm> {
        match &self.law {
            GroupLaw::Bilinear(b) => Some(b),
            GroupLaw::Cocycle(_) => None,
        }
    }

    /// Assemble and validate a point of this group.
    pub fn point(&self, z: Vec<RingElem>, t: RingElem) -> Result<HeisPoint> {
        let p = HeisPoint { z, t };
        self.validate(&p)?;
        Ok(p)
    }

    pub fn validate(&self, p: &HeisPoint) -> Result<()> {
        if p.z.len() != self.dim {
            return Err(Error::GroupMismatch(format!(
                "point has {} coordinates, group dimension is {}",
                p.z.len(),
                self.dim
            )));
        }
        for c in &p.z {
            if c.ring() != &self.base {
                return Err(Error::GroupMismatch(format!(
                    "z-coordinate in {}, base ring is {}",
                    c.ring(),
                    self.base
                )));
            }
        }
        if p.t.ring() != &self.codomain {
            return Err(Error::GroupMismatch(format!(
                "t-coordinate in {}, codomain is {}",
                p.t.ring(),
                self.codomain
            )));
        }
        Ok(())
    }

    /// B(w, z) for coordinate vectors.
    pub fn law_value(&self, w: &[RingElem], z: &[RingElem]) -> Result<RingElem> {
        match &self.law {
            GroupLaw::Bilinear(form) => form.eval(w, z),
            GroupLaw::Cocycle(table) => table.eval_coords(w, z),
        }
    }

    /// The ◇ identity: (0, 0) for a bilinear law, (0, -B(0,0)) for an
    /// un-normalized cocycle law.
    pub fn identity(&self) -> HeisPoint {
        let zeros = vec![self.base.zero(); self.dim];
        let t = match &self.law {
            GroupLaw::Bilinear(_) => self.codomain.zero(),
            GroupLaw::Cocycle(table) => table.value_at_origin().neg(),
        };
        HeisPoint { z: zeros, t }
    }

    /// The group law (w,s) ◇ (z,t) = (w + z, s + t + B(w, z)).
    pub fn mul(&self, a: &HeisPoint, b: &HeisPoint) -> Result<HeisPoint> {
        self.validate(a)?;
        self.validate(b)?;
        let z: Vec<RingElem> = a.z.iter().zip(&b.z).map(|(x, y)| x.add(y)).collect();
        let t = a.t.add(&b.t).add(&self.law_value(&a.z, &b.z)?);
        Ok(HeisPoint { z, t })
    }

    /// Inverse: (-z, -t + B(z, z)) for a bilinear law;
    /// (-w, -s - B(w, -w) - B(0,0)) for a cocycle law.
    pub fn inv(&self, a: &HeisPoint) -> Result<HeisPoint> {
        self.validate(a)?;
        let z: Vec<RingElem> = a.z.iter().map(|x| x.neg()).collect();
        let t = match &self.law {
            GroupLaw::Bilinear(form) => a.t.neg().add(&form.eval(&a.z, &a.z)?),
            GroupLaw::Cocycle(table) => {
                let b_w_negw = table.eval_coords(&a.z, &z)?;
                a.t.neg().sub(&b_w_negw).sub(&table.value_at_origin())
            }
        };
        Ok(HeisPoint { z, t })
    }

    /// Closed-form conjugation w ◇ z ◇ w^{-1} = (z, t + B(w,z) - B(z,w)).
    /// Only the bilinear law admits the closed form.
    pub fn conj_closed(&self, w: &HeisPoint, z: &HeisPoint) -> Result<HeisPoint> {
        match &self.law {
            GroupLaw::Cocycle(_) => Err(Error::UnsupportedForCocycleLaw),
            GroupLaw::Bilinear(form) => {
                self.validate(w)?;
                self.validate(z)?;
                let shift = form.eval(&w.z, &z.z)?.sub(&form.eval(&z.z, &w.z)?);
                Ok(HeisPoint {
                    z: z.z.clone(),
                    t: z.t.add(&shift),
                })
            }
        }
    }

    /// Conjugation computed through mul and inv; works for every law.
    pub fn conj(&self, w: &HeisPoint, z: &HeisPoint) -> Result<HeisPoint> {
        self.mul(&self.mul(w, z)?, &self.inv(w)?)
    }

    /// Parabolic dilation δ_r((z, t)) = (r z, r^2 t). For a form with a
    /// codomain homomorphism φ the t-part scales by φ(r)^2, which keeps
    /// δ_r an endomorphism since B' = φ ∘ B.
    pub fn dilate(&self, r: &RingElem, a: &HeisPoint) -> Result<HeisPoint> {
        let form = match &self.law {
            GroupLaw::Bilinear(form) => form,
            GroupLaw::Cocycle(_) => return Err(Error::UnsupportedForCocycleLaw),
        };
        self.validate(a)?;
        if r.ring() != &self.base {
            return Err(Error::GroupMismatch(format!(
                "dilation scalar in {}, base ring is {}",
                r.ring(),
                self.base
            )));
        }
        let z: Vec<RingElem> = a.z.iter().map(|x| r.mul(x)).collect();
        let r_in_codomain = match form.codomain_hom() {
            Some(h) => h.apply(r)?,
            None => r.clone(),
        };
        let t = r_in_codomain.mul(&r_in_codomain).mul(&a.t);
        Ok(HeisPoint { z, t })
    }

    /// Embed the center: t ↦ (0, t) for bilinear laws, and the shifted
    /// copy t ↦ (0, t - B(0,0)) for un-normalized cocycle laws.
    pub fn center_embed(&self, t: &RingElem) -> Result<HeisPoint> {
        if t.ring() != &self.codomain {
            return Err(Error::GroupMismatch(format!(
                "center element in {}, codomain is {}",
                t.ring(),
                self.codomain
            )));
        }
        let zeros = vec![self.base.zero(); self.dim];
        let tt = match &self.law {
            GroupLaw::Bilinear(_) => t.clone(),
            GroupLaw::Cocycle(table) => t.sub(&table.value_at_origin()),
        };
        Ok(HeisPoint { z: zeros, t: tt })
    }

    /// Project onto A^N (a homomorphism onto the abelian group, kernel
    /// {0} x A').
    pub fn project(&self, a: &HeisPoint) -> Vec<RingElem> {
        a.z.clone()
    }

    /// Structural equality on the underlying classes (congruence for
    /// p-adic coordinates).
    pub fn points_agree(&self, a: &HeisPoint, b: &HeisPoint) -> bool {
        a.z.len() == b.z.len() && a.z.iter().zip(&b.z).all(|(x, y)| x.agrees(y)) && a.t.agrees(&b.t)
    }

    /// Number of elements, for finite models.
    pub fn size(&self) -> Option<u64> {
        let zb = self.base.finite_order()?;
        let tb = self.codomain.finite_order()?;
        zb.checked_pow(self.dim as u32)?.checked_mul(tb)
    }

    /// Decode the i-th point of a finite group (z-coordinates are the
    /// high digits, t the lowest).
    pub fn point_from_index(&self, mut i: u64) -> Result<HeisPoint> {
        let zb = self.base.finite_order().ok_or(Error::RequiresFiniteModel)?;
        let tb = self
            .codomain
            .finite_order()
            .ok_or(Error::RequiresFiniteModel)?;
        let t = self.codomain.elem_from_index(i % tb)?;
        i /= tb;
        let mut z = vec![self.base.zero(); self.dim];
        for j in (0..self.dim).rev() {
            z[j] = self.base.elem_from_index(i % zb)?;
            i /= zb;
        }
        Ok(HeisPoint { z, t })
    }

    pub fn index_of_point(&self, p: &HeisPoint) -> Result<u64> {
        let zb = self.base.finite_order().ok_or(Error::RequiresFiniteModel)?;
        let tb = self
            .codomain
            .finite_order()
            .ok_or(Error::RequiresFiniteModel)?;
        let mut i = 0u64;
        for c in &p.z {
            i = i * zb + self.base.index_of(c)?;
        }
        Ok(i * tb + self.codomain.index_of(&p.t)?)
    }

    /// All points of a finite group.
    pub fn enumerate(&self) -> Result<Vec<HeisPoint>> {
        let n = self.size().ok_or(Error::RequiresFiniteModel)?;
        if n > 10_000_000 {
            return Err(Error::TooLargeToEnumerate(format!("{n} group elements")));
        }
        (0..n).map(|i| self.point_from_index(i)).collect()
    }

    /// Random point with coordinates drawn from the rings' samplers.
    pub fn sample_point(&self, rng: &mut rand_chacha::ChaCha8Rng) -> HeisPoint {
        let z = (0..self.dim).map(|_| self.base.sample(rng)).collect();
        let t = self.codomain.sample(rng);
        HeisPoint { z, t }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::standard_symplectic;

    fn z_group() -> HeisGroup {
        HeisGroup::standard(1, &RingDescriptor::integers()).unwrap()
    }

    fn pt(g: &HeisGroup, z: &[i64], t: i64) -> HeisPoint {
        let zs = z.iter().map(|&c| g.base_ring().from_int(c)).collect();
        g.point(zs, g.codomain_ring().from_int(t)).unwrap()
    }

    #[test]
    fn symplectic_product() {
        let g = z_group();
        let a = pt(&g, &[1, 0], 0);
        let b = pt(&g, &[0, 1], 0);
        assert_eq!(g.mul(&a, &b).unwrap(), pt(&g, &[1, 1], 1));
    }

    #[test]
    fn identity_laws() {
        let g = z_group();
        let e = g.identity();
        let a = pt(&g, &[3, -2], 5);
        assert_eq!(g.mul(&e, &a).unwrap(), a);
        assert_eq!(g.mul(&a, &e).unwrap(), a);
        assert_eq!(g.inv(&e).unwrap(), e);
    }

    #[test]
    fn inverse_with_symmetric_form() {
        // N=1, B(w,z) = wz over Z: (2,5)^{-1} = (-2, -1).
        let z = RingDescriptor::integers();
        let form =
            crate::rings::BilinearForm::from_matrix(z.clone(), 1, vec![z.from_int(1)]).unwrap();
        let g = HeisGroup::bilinear(form);
        let a = pt(&g, &[2], 5);
        let inv = g.inv(&a).unwrap();
        assert_eq!(inv, pt(&g, &[-2], -1));
        assert_eq!(g.mul(&a, &inv).unwrap(), g.identity());
        assert_eq!(g.mul(&inv, &a).unwrap(), g.identity());
    }

    #[test]
    fn antisymmetric_inverse_is_negation() {
        let g = z_group();
        let a = pt(&g, &[4, 7], -3);
        assert_eq!(g.inv(&a).unwrap(), pt(&g, &[-4, -7], 3));
    }

    #[test]
    fn commutator_of_generators() {
        // [ (1,0;0), (0,1;0) ] = (0,0;2) for the symplectic form on Z^2.
        let g = z_group();
        let a = pt(&g, &[1, 0], 0);
        let b = pt(&g, &[0, 1], 0);
        let aba = g.conj_closed(&a, &b).unwrap();
        let comm = g.mul(&aba, &g.inv(&b).unwrap()).unwrap();
        assert_eq!(comm, pt(&g, &[0, 0], 2));
    }

    #[test]
    fn conjugation_routes_agree() {
        let g = z_group();
        let mut rng = crate::sample::rng_for(5, 9);
        for _ in 0..200 {
            let w = g.sample_point(&mut rng);
            let z = g.sample_point(&mut rng);
            let closed = g.conj_closed(&w, &z).unwrap();
            let composed = g.conj(&w, &z).unwrap();
            assert!(g.points_agree(&closed, &composed));
        }
    }

    #[test]
    fn conjugation_by_center_fixes_everything() {
        let g = z_group();
        let c = g.center_embed(&g.codomain_ring().from_int(9)).unwrap();
        let mut rng = crate::sample::rng_for(6, 10);
        for _ in 0..100 {
            let z = g.sample_point(&mut rng);
            assert!(g.points_agree(&g.conj_closed(&c, &z).unwrap(), &z));
            // and the center commutes: (w,s) ◇ (0,t) = (0,t) ◇ (w,s)
            let lr = g.mul(&z, &c).unwrap();
            let rl = g.mul(&c, &z).unwrap();
            assert!(g.points_agree(&lr, &rl));
        }
    }

    #[test]
    fn symmetric_form_has_trivial_conjugation() {
        let z = RingDescriptor::integers();
        let form =
            crate::rings::BilinearForm::from_matrix(z.clone(), 1, vec![z.from_int(1)]).unwrap();
        let g = HeisGroup::bilinear(form);
        let mut rng = crate::sample::rng_for(7, 11);
        for _ in 0..100 {
            let w = g.sample_point(&mut rng);
            let a = g.sample_point(&mut rng);
            assert!(g.points_agree(&g.conj_closed(&w, &a).unwrap(), &a));
        }
    }

    #[test]
    fn center_embed_and_project_are_homomorphisms() {
        let g = z_group();
        let r = g.codomain_ring();
        let mut rng = crate::sample::rng_for(8, 12);
        for _ in 0..100 {
            let s = r.sample(&mut rng);
            let t = r.sample(&mut rng);
            let lhs = g
                .mul(&g.center_embed(&s).unwrap(), &g.center_embed(&t).unwrap())
                .unwrap();
            assert!(g.points_agree(&lhs, &g.center_embed(&s.add(&t)).unwrap()));
            let a = g.sample_point(&mut rng);
            let b = g.sample_point(&mut rng);
            let proj_mul = g.project(&g.mul(&a, &b).unwrap());
            let mul_proj: Vec<_> = a.z.iter().zip(&b.z).map(|(x, y)| x.add(y)).collect();
            assert_eq!(proj_mul, mul_proj);
        }
    }

    #[test]
    fn dilation_laws() {
        let g = z_group();
        let r3 = g.base_ring().from_int(3);
        // ((1,2),1) -> ((3,6),9)
        let a = pt(&g, &[1, 2], 1);
        assert_eq!(g.dilate(&r3, &a).unwrap(), pt(&g, &[3, 6], 9));
        // δ_1 = id
        let one = g.base_ring().from_int(1);
        assert_eq!(g.dilate(&one, &a).unwrap(), a);
        // δ_r is an endomorphism and δ_2 ∘ δ_3 = δ_6
        let mut rng = crate::sample::rng_for(9, 13);
        let r2 = g.base_ring().from_int(2);
        let r6 = g.base_ring().from_int(6);
        for _ in 0..100 {
            let x = g.sample_point(&mut rng);
            let y = g.sample_point(&mut rng);
            let d_mul = g.dilate(&r3, &g.mul(&x, &y).unwrap()).unwrap();
            let mul_d = g
                .mul(&g.dilate(&r3, &x).unwrap(), &g.dilate(&r3, &y).unwrap())
                .unwrap();
            assert!(g.points_agree(&d_mul, &mul_d));
            let two_three = g.dilate(&r2, &g.dilate(&r3, &x).unwrap()).unwrap();
            assert!(g.points_agree(&two_three, &g.dilate(&r6, &x).unwrap()));
        }
    }

    #[test]
    fn characteristic_two_symmetric_form_is_commutative() {
        // Over Z/2 any antisymmetric B is symmetric; H must be abelian,
        // exhaustively.
        let r = RingDescriptor::modular(2);
        let g = HeisGroup::bilinear(standard_symplectic(1, &r).unwrap());
        let all = g.enumerate().unwrap();
        for a in &all {
            for b in &all {
                assert_eq!(g.mul(a, b).unwrap(), g.mul(b, a).unwrap());
            }
        }
    }

    #[test]
    fn exhaustive_group_axioms_mod_2_and_3() {
        for m in [2u64, 3] {
            let r = RingDescriptor::modular(m);
            let g = HeisGroup::bilinear(standard_symplectic(1, &r).unwrap());
            let all = g.enumerate().unwrap();
            let e = g.identity();
            for a in &all {
                assert_eq!(g.mul(&e, a).unwrap(), *a);
                let ai = g.inv(a).unwrap();
                assert_eq!(g.mul(a, &ai).unwrap(), e);
                assert_eq!(g.mul(&ai, a).unwrap(), e);
                for b in &all {
                    for c in &all {
                        let left = g.mul(&g.mul(a, b).unwrap(), c).unwrap();
                        let right = g.mul(a, &g.mul(b, c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let r = RingDescriptor::modular(3);
        let g = HeisGroup::bilinear(standard_symplectic(1, &r).unwrap());
        let n = g.size().unwrap();
        assert_eq!(n, 27);
        for i in 0..n {
            let p = g.point_from_index(i).unwrap();
            assert_eq!(g.index_of_point(&p).unwrap(), i);
        }
    }

    #[test]
    fn heterogeneous_codomain_group() {
        // A^N x A' with B' = φ ∘ B, φ: Z -> Z/4: z-coordinates in Z,
        // the center in Z/4.
        let z = RingDescriptor::integers();
        let z4 = RingDescriptor::modular(4);
        let phi = crate::rings::RingHom::canonical(z.clone(), z4.clone()).unwrap();
        let form = standard_symplectic(1, &z)
            .unwrap()
            .with_codomain_hom(phi)
            .unwrap();
        let g = HeisGroup::bilinear(form);
        assert_eq!(g.base_ring(), &z);
        assert_eq!(g.codomain_ring(), &z4);
        let a = g
            .point(vec![z.from_int(1), z.from_int(0)], z4.from_int(3))
            .unwrap();
        let b = g
            .point(vec![z.from_int(0), z.from_int(1)], z4.from_int(2))
            .unwrap();
        // t-part: 3 + 2 + φ(B((1,0),(0,1))) = 5 + 1 ≡ 2 mod 4
        let ab = g.mul(&a, &b).unwrap();
        assert_eq!(ab.t.residue(), Some(2));
        // inverse and identity still work
        let e = g.identity();
        assert_eq!(g.mul(&a, &g.inv(&a).unwrap()).unwrap(), e);
        // dilation scales t through φ(r)^2
        let r = z.from_int(3);
        let da = g.dilate(&r, &a).unwrap();
        assert_eq!(da.z, vec![z.from_int(3), z.from_int(0)]);
        // φ(3)^2 * 3 = 9 * 3 = 27 ≡ 3 mod 4
        assert_eq!(da.t.residue(), Some(3));
        // δ_r is still an endomorphism
        let mut rng = crate::sample::rng_for(21, 3);
        for _ in 0..100 {
            let x = g.sample_point(&mut rng);
            let y = g.sample_point(&mut rng);
            let lhs = g.dilate(&r, &g.mul(&x, &y).unwrap()).unwrap();
            let rhs = g
                .mul(&g.dilate(&r, &x).unwrap(), &g.dilate(&r, &y).unwrap())
                .unwrap();
            assert!(g.points_agree(&lhs, &rhs));
        }
        // the center embeds into the codomain and commutes
        let c = g.center_embed(&z4.from_int(1)).unwrap();
        let prod = g.mul(&a, &c).unwrap();
        assert!(g.points_agree(&prod, &g.mul(&c, &a).unwrap()));
    }

    #[test]
    fn cocycle_group_with_distinct_value_ring() {
        // 2-cocycle on Z/2 with values in Z/4: the constant table c = 3
        let t = CocycleTable::constant(2, 1, 4, 3).unwrap();
        let g = HeisGroup::cocycle(t);
        assert_eq!(g.base_ring(), &RingDescriptor::modular(2));
        assert_eq!(g.codomain_ring(), &RingDescriptor::modular(4));
        let e = g.identity();
        assert_eq!(e.t.residue(), Some(1)); // -3 ≡ 1 mod 4
        for a in g.enumerate().unwrap() {
            let inv = g.inv(&a).unwrap();
            assert_eq!(g.mul(&a, &inv).unwrap(), e);
            assert_eq!(g.mul(&inv, &a).unwrap(), e);
        }
    }

    #[test]
    fn mismatched_points_are_rejected() {
        let g = z_group();
        let q = RingDescriptor::rationals();
        let bad = HeisPoint {
            z: vec![q.from_int(1), q.from_int(0)],
            t: q.from_int(0),
        };
        assert!(matches!(g.mul(&bad, &bad), Err(Error::GroupMismatch(_))));
    }
}
