//! Rook matrices over a monomial spanning semigroup: matrices with at most
//! one nonzero entry per row and column, entries drawn from the basis of a
//! monomial algebra.

use super::build::MatrixAlgebra;
use super::{AlgebraElement, Combination, FiniteBasisAlgebra};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::semigroup::PartialBijection;
use num_traits::One;
use std::sync::Arc;

/// A rook matrix: a partial bijection σ on rows/columns together with one
/// spanning-semigroup entry s_j at each position (σ(j), j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RookMatrix {
    pub size: usize,
    /// σ as a partial bijection on {0..size-1}.
    pub sigma: PartialBijection,
    /// entries[j] = Some(basis index) exactly when σ(j) is defined.
    pub entries: Vec<Option<usize>>,
    /// Basis of the spanning semigroup (a monomial algebra).
    pub algebra: Arc<FiniteBasisAlgebra>,
}

impl RookMatrix {
    pub fn new(
        algebra: &Arc<FiniteBasisAlgebra>,
        size: usize,
        sigma: PartialBijection,
        entries: Vec<Option<usize>>,
    ) -> Result<Self> {
        if !algebra.is_monomial() {
            return Err(Error::Precondition(
                "rook matrices need a monomial spanning semigroup".into(),
            ));
        }
        if sigma.degree() != size || entries.len() != size {
            return Err(Error::Invalid("rook matrix shape mismatch".into()));
        }
        for j in 0..size {
            if sigma.apply(j).is_some() != entries[j].is_some() {
                return Err(Error::Invalid(format!(
                    "entry at column {j} inconsistent with the partial bijection"
                )));
            }
            if let Some(s) = entries[j] {
                if s >= algebra.dim() {
                    return Err(Error::Invalid("entry index out of range".into()));
                }
            }
        }
        Ok(RookMatrix {
            size,
            sigma,
            entries,
            algebra: Arc::clone(algebra),
        })
    }

    /// Identity-shaped rook matrix with the same entry on the diagonal.
    pub fn diagonal(algebra: &Arc<FiniteBasisAlgebra>, size: usize, entry: usize) -> Result<Self> {
        RookMatrix::new(
            algebra,
            size,
            PartialBijection::identity(size),
            vec![Some(entry); size],
        )
    }

    /// B* has partial bijection σ⁻¹ and starred entries.
    pub fn star(&self) -> RookMatrix {
        let inv = self.sigma.invert();
        let mut entries = vec![None; self.size];
        for j in 0..self.size {
            if let (Some(i), Some(s)) = (self.sigma.apply(j), self.entries[j]) {
                entries[i] = Some(self.algebra.star_of_basis(s));
            }
        }
        RookMatrix {
            size: self.size,
            sigma: inv,
            entries,
            algebra: Arc::clone(&self.algebra),
        }
    }

    /// The embedding Σ_j s_j E_{σ(j) j} into M_n(A).
    pub fn embed(&self, matrix: &MatrixAlgebra) -> Result<AlgebraElement> {
        if matrix.n != self.size || *matrix.inner != *self.algebra {
            return Err(Error::ContextMismatch);
        }
        let mut comb: Combination = Vec::new();
        for j in 0..self.size {
            if let (Some(i), Some(s)) = (self.sigma.apply(j), self.entries[j]) {
                comb.push((matrix.basis_index(i, j, s), GaussianRational::one()));
            }
        }
        comb.sort_by_key(|(i, _)| *i);
        Ok(AlgebraElement::from_combination(&matrix.algebra, comb))
    }
}

/// BC = Σ_{j ∈ dom(στ)} s_{τ(j)} t_j E_{στ(j) j}; positions whose entry
/// product vanishes in the spanning semigroup drop out of the domain.
pub fn rook_product(b: &RookMatrix, c: &RookMatrix) -> Result<RookMatrix> {
    if b.size != c.size || *b.algebra != *c.algebra {
        return Err(Error::ContextMismatch);
    }
    let size = b.size;
    let sigma_tau = b.sigma.compose(&c.sigma);
    let mut map = vec![None; size];
    let mut entries = vec![None; size];
    for j in 0..size {
        let Some(tj) = c.sigma.apply(j) else { continue };
        if b.sigma.apply(tj).is_none() {
            continue;
        }
        let s = b.entries[tj].expect("entry present on domain");
        let t = c.entries[j].expect("entry present on domain");
        if let Some(st) = b.algebra.monomial_product(s, t) {
            map[j] = sigma_tau.apply(j);
            entries[j] = Some(st);
        }
    }
    let sigma = PartialBijection::new(map).expect("restriction of a partial bijection");
    RookMatrix::new(&b.algebra, size, sigma, entries)
}
