//! Matrix-defined bilinear forms B(w, z) = Σ_jl b_jl w_j z_l, optionally
//! composed with a ring homomorphism so the values land in a different
//! ring (B' = φ ∘ B).

use crate::{Error, Result};

use super::{RingDescriptor, RingElem, RingHom};

/// A bilinear form on R^N given by its coefficient matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    dim: usize,
    scalar: RingDescriptor,
    entries: Vec<RingElem>, // row-major N x N, in `scalar`
    hom: Option<RingHom>,   // applied to the evaluated sum
}

impl BilinearForm {
    /// Build from a row-major N x N matrix of entries in `ring`.
    pub fn from_matrix(ring: RingDescriptor, dim: usize, entries: Vec<RingElem>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionError {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        for e in &entries {
            if e.ring() != &ring {
                return Err(Error::RingMismatch(format!(
                    "matrix entry in {} for form over {}",
                    e.ring(),
                    ring
                )));
            }
        }
        Ok(BilinearForm {
            dim,
            scalar: ring,
            entries,
            hom: None,
        })
    }

    /// The zero form.
    pub fn zero(ring: RingDescriptor, dim: usize) -> Self {
        let entries = (0..dim * dim).map(|_| ring.zero()).collect();
        BilinearForm {
            dim,
            scalar: ring,
            entries,
            hom: None,
        }
    }

    /// Compose with a homomorphism: the returned form evaluates to
    /// φ(B(w, z)) in the homomorphism's target ring.
    pub fn with_codomain_hom(mut self, hom: RingHom) -> Result<Self> {
        if hom.source() != &self.scalar {
            return Err(Error::HomDomainError(format!(
                "homomorphism from {} applied to form over {}",
                hom.source(),
                self.scalar
            )));
        }
        self.hom = Some(hom);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The ring of the coordinates (and of the matrix entries).
    pub fn scalar_ring(&self) -> &RingDescriptor {
        &self.scalar
    }

    /// The ring the values land in (the hom target when present).
    pub fn codomain(&self) -> &RingDescriptor {
        match &self.hom {
            Some(h) => h.target(),
            None => &self.scalar,
        }
    }

    pub fn entry(&self, j: usize, l: usize) -> &RingElem {
        &self.entries[j * self.dim + l]
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    pub fn codomain_hom(&self) -> Option<&RingHom> {
        self.hom.as_ref()
    }

    /// Evaluate B(w, z) = Σ_j Σ_l b_jl w_j z_l (then apply the codomain
    /// homomorphism when one is attached).
    pub fn eval(&self, w: &[RingElem], z: &[RingElem]) -> Result<RingElem> {
        if w.len() != self.dim {
            return Err(Error::DimensionError {
                expected: self.dim,
                got: w.len(),
            });
        }
        if z.len() != self.dim {
            return Err(Error::DimensionError {
                expected: self.dim,
                got: z.len(),
            });
        }
        let mut acc = self.scalar.zero();
        for j in 0..self.dim {
            for l in 0..self.dim {
                acc = acc.add(&self.entry(j, l).mul(&w[j]).mul(&z[l]));
            }
        }
        match &self.hom {
            Some(h) => h.apply(&acc),
            None => Ok(acc),
        }
    }

    /// Is the matrix antisymmetric (b_jl = -b_lj for all j, l)?
    pub fn is_antisymmetric(&self) -> bool {
        for j in 0..self.dim {
            for l in 0..self.dim {
                if !self.entry(j, l).agrees(&self.entry(l, j).neg()) {
                    return false;
                }
            }
        }
        true
    }

    /// Transpose-of-matrix form (B^T(w,z) = B(z,w)).
    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.dim * self.dim);
        for j in 0..self.dim {
            for l in 0..self.dim {
                entries.push(self.entry(l, j).clone());
            }
        }
        BilinearForm {
            dim: self.dim,
            scalar: self.scalar.clone(),
            entries,
            hom: self.hom.clone(),
        }
    }

    /// Entrywise sum of two forms over the same ring.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionError {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.scalar != other.scalar || self.hom != other.hom {
            return Err(Error::RingMismatch("forms over different rings".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(BilinearForm {
            dim: self.dim,
            scalar: self.scalar.clone(),
            entries,
            hom: self.hom.clone(),
        })
    }
}

/// The standard symplectic form on R^{2n}: block matrix [[0, I], [-I, 0]],
/// evaluating to Σ_j (x_j y'_j - x'_j y_j) on z = (x, y).
pub fn standard_symplectic(n: usize, ring: &RingDescriptor) -> Result<BilinearForm> {
    let one = ring.one()?;
    let dim = 2 * n;
    let mut entries = vec![ring.zero(); dim * dim];
    for j in 0..n {
        entries[j * dim + (n + j)] = one.clone();
        entries[(n + j) * dim + j] = one.neg();
    }
    BilinearForm::from_matrix(ring.clone(), dim, entries)
}

/// Recover the matrix of a black-box biadditive, R-bilinear function from
/// its values on the standard basis vectors: b_jl = B(e_j, e_l).
/// Requires the ring to have a multiplicative identity.
pub fn matrix_from_form<F>(black_box: F, dim: usize, ring: &RingDescriptor) -> Result<BilinearForm>
where
    F: Fn(&[RingElem], &[RingElem]) -> RingElem,
{
    let one = ring.one().map_err(|_| Error::RequiresIdentity)?;
    let basis: Vec<Vec<RingElem>> = (0..dim)
        .map(|j| {
            (0..dim)
                .map(|i| if i == j { one.clone() } else { ring.zero() })
                .collect()
        })
        .collect();
    let mut entries = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        for l in 0..dim {
            entries.push(black_box(&basis[j], &basis[l]));
        }
    }
    BilinearForm::from_matrix(ring.clone(), dim, entries)
}
