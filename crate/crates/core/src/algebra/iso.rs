//! Verified isomorphisms and homomorphisms: KS ≅ K𝒢(S), restriction to a
//! closed invariant object set, and the orbit ↦ matrix-algebra isomorphism.

use super::build::{groupoid_algebra, matrix_algebra, semigroup_algebra, GroupoidAlgebra, MatrixAlgebra};
use super::{AlgebraElement, FiniteBasisAlgebra};
use crate::error::{Error, Result};
use crate::groupoid::{orbits_and_isotropy, restrict, universal_groupoid, FiniteGroupoid};
use crate::semigroup::{natural_order, FiniteInverseSemigroup, FiniteSemigroup};
use std::collections::HashMap;
use std::sync::Arc;

/// The verified isomorphism KS → K𝒢(S) sending s to the sum of δ_t over the
/// natural-order ideal below s, with its inverse computed by recursive
/// order-inversion.
#[derive(Debug, Clone)]
pub struct SemigroupGroupoidIso {
    pub semigroup_algebra: Arc<FiniteBasisAlgebra>,
    pub groupoid_algebra: GroupoidAlgebra,
    /// Image of the semigroup basis element s (arrow indices coincide with
    /// element indices in the universal groupoid).
    pub forward_images: Vec<AlgebraElement>,
    /// Image of the arrow basis element δ_t back in KS.
    pub inverse_images: Vec<AlgebraElement>,
}

impl SemigroupGroupoidIso {
    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        if !Arc::ptr_eq(f.algebra(), &self.semigroup_algebra)
            && **f.algebra() != *self.semigroup_algebra
        {
            return Err(Error::ContextMismatch);
        }
        let mut acc = AlgebraElement::zero(&self.groupoid_algebra.algebra);
        for (i, c) in f.coeffs() {
            acc = acc.add(&self.forward_images[*i].scale(c))?;
        }
        Ok(acc)
    }

    pub fn apply_inverse(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        if !Arc::ptr_eq(f.algebra(), &self.groupoid_algebra.algebra)
            && **f.algebra() != *self.groupoid_algebra.algebra
        {
            return Err(Error::ContextMismatch);
        }
        let mut acc = AlgebraElement::zero(&self.semigroup_algebra);
        for (i, c) in f.coeffs() {
            acc = acc.add(&self.inverse_images[*i].scale(c))?;
        }
        Ok(acc)
    }
}

/// Builds s ↦ Σ_{t ≤ s} δ_t and verifies it is multiplicative and
/// star-preserving on all basis pairs, with an exact two-sided inverse.
/// Any failure here is a construction bug, reported as a verification error.
pub fn iso_semigroup_to_groupoid(s: &FiniteInverseSemigroup) -> Result<SemigroupGroupoidIso> {
    let ks = semigroup_algebra(s)?;
    let g = universal_groupoid(s);
    let kg = groupoid_algebra(&g)?;
    let ord = natural_order(s)?;
    let n = s.size();

    let forward_images: Vec<AlgebraElement> = (0..n)
        .map(|x| {
            let comb = ord
                .below(x)
                .into_iter()
                .map(|t| (t, num_traits::One::one()))
                .collect();
            AlgebraElement::from_combination(&kg.algebra, comb)
        })
        .collect();

    // Recursive order-inversion (Möbius inversion over the order ideal):
    // ψ(δ_x) = x − Σ_{t<x} ψ(δ_t).
    let mut inverse_images: Vec<Option<AlgebraElement>> = vec![None; n];
    fn build_inverse(
        x: usize,
        ord: &crate::semigroup::NaturalOrder,
        ks: &Arc<FiniteBasisAlgebra>,
        memo: &mut Vec<Option<AlgebraElement>>,
    ) -> AlgebraElement {
        if let Some(e) = &memo[x] {
            return e.clone();
        }
        let mut acc = AlgebraElement::basis(ks, x);
        for t in ord.strictly_below(x) {
            let sub = build_inverse(t, ord, ks, memo);
            acc = acc.sub(&sub).expect("same algebra");
        }
        memo[x] = Some(acc.clone());
        acc
    }
    for x in 0..n {
        build_inverse(x, &ord, &ks, &mut inverse_images);
    }
    let inverse_images: Vec<AlgebraElement> =
        inverse_images.into_iter().map(|e| e.unwrap()).collect();

    let iso = SemigroupGroupoidIso {
        semigroup_algebra: ks,
        groupoid_algebra: kg,
        forward_images,
        inverse_images,
    };

    // Multiplicative and star-preserving on all basis pairs.
    for a in 0..n {
        for b in 0..n {
            let lhs = iso.forward_images[s.mul(a, b)].clone();
            let rhs = iso.forward_images[a].mul(&iso.forward_images[b])?;
            if lhs != rhs {
                return Err(Error::Verification(format!(
                    "iso not multiplicative at ({}, {})",
                    s.label(a),
                    s.label(b)
                )));
            }
        }
        if iso.forward_images[s.star(a)] != iso.forward_images[a].star() {
            return Err(Error::Verification(format!(
                "iso not star-preserving at {}",
                s.label(a)
            )));
        }
    }
    // Two-sided inverse on basis elements.
    for x in 0..n {
        let fwd = &iso.forward_images[x];
        if iso.apply_inverse(fwd)? != AlgebraElement::basis(&iso.semigroup_algebra, x) {
            return Err(Error::Verification(format!(
                "inverse ∘ forward misses basis {}",
                s.label(x)
            )));
        }
        let back = &iso.inverse_images[x];
        if iso.apply(back)? != AlgebraElement::basis(&iso.groupoid_algebra.algebra, x) {
            return Err(Error::Verification(format!(
                "forward ∘ inverse misses arrow {}",
                s.label(x)
            )));
        }
    }
    Ok(iso)
}

/// The restriction homomorphism K𝒢 → K𝒢|_O for an invariant object set,
/// verified multiplicative on all basis pairs.
#[derive(Debug, Clone)]
pub struct RestrictionHom {
    pub source: GroupoidAlgebra,
    pub target: GroupoidAlgebra,
    /// source arrow → target arrow, None when the arrow leaves the set.
    pub arrow_map: Vec<Option<usize>>,
}

impl RestrictionHom {
    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        if !Arc::ptr_eq(f.algebra(), &self.source.algebra)
            && **f.algebra() != *self.source.algebra
        {
            return Err(Error::ContextMismatch);
        }
        let comb = f
            .coeffs()
            .iter()
            .filter_map(|(i, c)| self.arrow_map[*i].map(|j| (j, c.clone())))
            .collect();
        Ok(AlgebraElement::from_combination(&self.target.algebra, comb))
    }
}

pub fn restriction_hom(ga: &GroupoidAlgebra, objects: &[usize]) -> Result<RestrictionHom> {
    let (restricted, _object_map, arrow_map_vec) = restrict(&ga.groupoid, objects)?;
    let target = groupoid_algebra(&restricted)?;
    let mut arrow_map = vec![None; ga.groupoid.arrow_count()];
    for (new, &old) in arrow_map_vec.iter().enumerate() {
        arrow_map[old] = Some(new);
    }
    let hom = RestrictionHom {
        source: ga.clone(),
        target,
        arrow_map,
    };
    // Ring homomorphism on all basis pairs.
    let n = ga.groupoid.arrow_count();
    for a in 0..n {
        for b in 0..n {
            let da = ga.delta(a);
            let db = ga.delta(b);
            let lhs = hom.apply(&da.mul(&db)?)?;
            let rhs = hom.apply(&da)?.mul(&hom.apply(&db)?)?;
            if lhs != rhs {
                return Err(Error::Verification(format!(
                    "restriction not multiplicative at arrows ({a}, {b})"
                )));
            }
        }
    }
    Ok(hom)
}

/// The verified isomorphism K𝒢|_O ≅ M_O(K G_x0) for a single discrete
/// orbit O with basepoint isotropy group G_x0.
#[derive(Debug, Clone)]
pub struct OrbitMatrixIso {
    /// The restriction of the input algebra to the orbit.
    pub source: GroupoidAlgebra,
    pub target: MatrixAlgebra,
    pub isotropy: FiniteSemigroup,
    /// source arrow → target basis index (a bijection).
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

impl OrbitMatrixIso {
    pub fn apply(&self, f: &AlgebraElement) -> Result<AlgebraElement> {
        if !Arc::ptr_eq(f.algebra(), &self.source.algebra)
            && **f.algebra() != *self.source.algebra
        {
            return Err(Error::ContextMismatch);
        }
        let comb = f
            .coeffs()
            .iter()
            .map(|(i, c)| (self.forward[*i], c.clone()))
            .collect();
        Ok(AlgebraElement::from_combination(&self.target.algebra, comb))
    }
}

pub fn orbit_matrix_iso(ga: &GroupoidAlgebra, orbit: &[usize]) -> Result<OrbitMatrixIso> {
    let g = &ga.groupoid;
    let orb = orbits_and_isotropy(g);
    let mut sorted = orbit.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let Some(orbit_id) = (0..orb.orbits.len()).find(|&i| orb.orbits[i] == sorted) else {
        return Err(Error::Precondition(
            "object set is not a single orbit".into(),
        ));
    };
    let members = &orb.orbits[orbit_id];
    let iso_group = &orb.isotropy[orbit_id];
    let pos_of: HashMap<usize, usize> = members.iter().enumerate().map(|(p, &x)| (x, p)).collect();

    let (restricted, object_map, arrow_map_vec) = restrict(g, members)?;
    let source = groupoid_algebra(&restricted)?;

    let inner = super::build::star_semigroup_algebra(&iso_group.group)?;
    let target = matrix_algebra(&inner, members.len())?;

    let group_index_of_arrow: HashMap<usize, usize> = iso_group
        .arrow_ids
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i))
        .collect();

    // Forward on restricted arrows: γ: y→z ↦ E_{pos(z), pos(y)} ⊗ λ_z⁻¹ γ λ_y.
    let mut forward = vec![usize::MAX; restricted.arrow_count()];
    for (new_a, &old_a) in arrow_map_vec.iter().enumerate() {
        let y = g.dom(old_a);
        let z = g.ran(old_a);
        let lam_y = orb.transversal[y];
        let lam_z_inv = g.invert(orb.transversal[z]);
        let core = g
            .compose(lam_z_inv, g.compose(old_a, lam_y).expect("composable"))
            .expect("composable");
        let gi = *group_index_of_arrow
            .get(&core)
            .ok_or_else(|| Error::Verification("conjugated arrow is not isotropy".into()))?;
        forward[new_a] = target.basis_index(pos_of[&z], pos_of[&y], gi);
    }
    // Bijectivity on basis.
    if restricted.arrow_count() != target.algebra.dim() {
        return Err(Error::Verification(format!(
            "orbit algebra dimension {} != matrix algebra dimension {}",
            restricted.arrow_count(),
            target.algebra.dim()
        )));
    }
    let mut backward = vec![usize::MAX; target.algebra.dim()];
    for (a, &m) in forward.iter().enumerate() {
        if backward[m] != usize::MAX {
            return Err(Error::Verification("orbit matrix map not injective".into()));
        }
        backward[m] = a;
    }
    let iso = OrbitMatrixIso {
        source,
        target,
        isotropy: iso_group.group.clone(),
        forward,
        backward,
    };
    // Multiplicative on all basis pairs of the restricted algebra.
    let n = restricted.arrow_count();
    for a in 0..n {
        for b in 0..n {
            let da = iso.source.delta(a);
            let db = iso.source.delta(b);
            let lhs = iso.apply(&da.mul(&db)?)?;
            let rhs = iso.apply(&da)?.mul(&iso.apply(&db)?)?;
            if lhs != rhs {
                return Err(Error::Verification(format!(
                    "orbit matrix iso not multiplicative at ({a}, {b})"
                )));
            }
        }
    }
    let _ = object_map;
    Ok(iso)
}
