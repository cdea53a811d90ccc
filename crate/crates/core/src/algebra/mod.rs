//! Finite-basis *-algebras over the Gaussian rationals: semigroup algebras,
//! contracted algebras, groupoid convolution algebras, matrix algebras, the
//! KS ≅ K𝒢(S) isomorphism, rook matrices, and Dedekind-infiniteness witness
//! checking.

mod build;
mod iso;
mod rook;

pub use build::{
    contracted_algebra, groupoid_algebra, matrix_algebra, semigroup_algebra,
    star_semigroup_algebra, GroupoidAlgebra, MatrixAlgebra,
};
pub use iso::{
    iso_semigroup_to_groupoid, orbit_matrix_iso, restriction_hom, OrbitMatrixIso, RestrictionHom,
    SemigroupGroupoidIso,
};
pub use rook::{rook_product, RookMatrix};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A finitely supported scalar combination of basis indices, sorted by index
/// with no zero coefficients.
pub type Combination = Vec<(usize, GaussianRational)>;

/// Dimension bound up to which associativity and the star axioms are checked
/// on all basis triples/pairs; above it a seeded random sample is used.
const EXHAUSTIVE_DIM: usize = 200;
const RANDOM_TRIPLES: usize = 10_000;

/// A *-algebra with a distinguished finite basis on which the product is
/// given by structure constants and the star permutes basis elements.
pub struct FiniteBasisAlgebra {
    name: String,
    labels: Vec<String>,
    /// Flattened dim × dim table of basis products.
    product: Vec<Combination>,
    star: Vec<usize>,
    unit: Option<Combination>,
}

impl fmt::Debug for FiniteBasisAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteBasisAlgebra({}, dim {})", self.name, self.dim())
    }
}

impl PartialEq for FiniteBasisAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.product == other.product
            && self.star == other.star
            && self.unit == other.unit
    }
}

impl Eq for FiniteBasisAlgebra {}

impl FiniteBasisAlgebra {
    /// Builds an algebra and verifies associativity on basis triples
    /// (exhaustively up to dimension 200, on 10 000 seeded random triples
    /// above) plus the star axioms and the unit law.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        product: Vec<Combination>,
        star: Vec<usize>,
        unit: Option<Combination>,
    ) -> Result<Arc<Self>> {
        let dim = labels.len();
        if product.len() != dim * dim {
            return Err(Error::Invalid("product table has wrong size".into()));
        }
        if star.len() != dim {
            return Err(Error::Invalid("star map has wrong size".into()));
        }
        let alg = FiniteBasisAlgebra {
            name: name.into(),
            labels,
            product,
            star,
            unit,
        };
        alg.verify_axioms()?;
        Ok(Arc::new(alg))
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Combination {
        &self.product[i * self.dim() + j]
    }

    pub fn star_of_basis(&self, i: usize) -> usize {
        self.star[i]
    }

    pub fn unit_combination(&self) -> Option<&Combination> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// True when every basis product is a single basis element with
    /// coefficient 1, or zero (semigroup and groupoid algebras).
    pub fn is_monomial(&self) -> bool {
        use num_traits::One;
        self.product
            .iter()
            .all(|c| c.is_empty() || (c.len() == 1 && c[0].1.is_one()))
    }

    /// The single basis index of a monomial product, if any.
    pub fn monomial_product(&self, i: usize, j: usize) -> Option<usize> {
        use num_traits::One;
        let c = self.basis_product(i, j);
        match c.as_slice() {
            [(k, coeff)] if coeff.is_one() => Some(*k),
            _ => None,
        }
    }

    fn mul_combination(&self, a: &[(usize, GaussianRational)], b: &[(usize, GaussianRational)]) -> Combination {
        let mut acc: BTreeMap<usize, GaussianRational> = BTreeMap::new();
        for (i, ci) in a {
            for (j, cj) in b {
                let cij = ci * cj;
                for (k, s) in self.basis_product(*i, *j) {
                    let entry = acc.entry(*k).or_insert_with(GaussianRational::zero);
                    *entry += &(&cij * s);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn star_combination(&self, a: &[(usize, GaussianRational)]) -> Combination {
        let mut out: Combination = a
            .iter()
            .map(|(i, c)| (self.star[*i], c.conj()))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    fn verify_axioms(&self) -> Result<()> {
        let dim = self.dim();
        for &s in &self.star {
            if s >= dim {
                return Err(Error::Invalid("star image out of range".into()));
            }
        }
        for c in &self.product {
            for (k, coeff) in c {
                if *k >= dim {
                    return Err(Error::Invalid("product entry out of range".into()));
                }
                if coeff.is_zero() {
                    return Err(Error::Invalid("stored zero coefficient in product".into()));
                }
            }
            if c.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::Invalid("product combination not sorted".into()));
            }
        }
        // SA3 on basis.
        for i in 0..dim {
            if self.star[self.star[i]] != i {
                return Err(Error::Verification(format!(
                    "star not involutive at basis {}",
                    self.labels[i]
                )));
            }
        }
        use num_traits::One;
        let single = |i: usize| vec![(i, GaussianRational::one())];
        if dim <= EXHAUSTIVE_DIM {
            for i in 0..dim {
                for j in 0..dim {
                    let ij = self.basis_product(i, j).clone();
                    // SA2 on basis pairs.
                    let lhs = self.star_combination(&ij);
                    let rhs = self.mul_combination(&single(self.star[j]), &single(self.star[i]));
                    if lhs != rhs {
                        return Err(Error::Verification(format!(
                            "(ab)* != b*a* at basis pair ({}, {})",
                            self.labels[i], self.labels[j]
                        )));
                    }
                    for k in 0..dim {
                        let left = self.mul_combination(&ij, &single(k));
                        let right =
                            self.mul_combination(&single(i), self.basis_product(j, k));
                        if left != right {
                            return Err(Error::Verification(format!(
                                "associativity fails at basis triple ({}, {}, {})",
                                self.labels[i], self.labels[j], self.labels[k]
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xF1D0);
            for _ in 0..RANDOM_TRIPLES {
                let i = rng.gen_range(0..dim);
                let j = rng.gen_range(0..dim);
                let k = rng.gen_range(0..dim);
                let left = self.mul_combination(self.basis_product(i, j), &single(k));
                let right = self.mul_combination(&single(i), self.basis_product(j, k));
                if left != right {
                    return Err(Error::Verification(format!(
                        "associativity fails at basis triple ({i}, {j}, {k})"
                    )));
                }
                let lhs = self.star_combination(self.basis_product(i, j));
                let rhs = self.mul_combination(&single(self.star[j]), &single(self.star[i]));
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "(ab)* != b*a* at basis pair ({i}, {j})"
                    )));
                }
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..dim {
                let left = self.mul_combination(u, &single(i));
                let right = self.mul_combination(&single(i), u);
                if left != single(i) || right != single(i) {
                    return Err(Error::Verification(format!(
                        "claimed unit fails at basis {}",
                        self.labels[i]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// An element of a [`FiniteBasisAlgebra`]: a finitely supported coefficient
/// map with zero coefficients pruned; equality is structural.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Arc<FiniteBasisAlgebra>,
    coeffs: BTreeMap<usize, GaussianRational>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{}", self.algebra.label(*i))?;
            first = false;
        }
        Ok(())
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coeffs == other.coeffs
    }
}

impl AlgebraElement {
    pub fn zero(algebra: &Arc<FiniteBasisAlgebra>) -> Self {
        AlgebraElement {
            algebra: Arc::clone(algebra),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(algebra: &Arc<FiniteBasisAlgebra>, i: usize) -> Self {
        use num_traits::One;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, GaussianRational::one());
        AlgebraElement {
            algebra: Arc::clone(algebra),
            coeffs,
        }
    }

    pub fn unit(algebra: &Arc<FiniteBasisAlgebra>) -> Option<Self> {
        algebra
            .unit_combination()
            .map(|u| Self::from_combination(algebra, u.clone()))
    }

    pub fn from_combination(algebra: &Arc<FiniteBasisAlgebra>, comb: Combination) -> Self {
        let coeffs: BTreeMap<usize, GaussianRational> = comb
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        AlgebraElement {
            algebra: Arc::clone(algebra),
            coeffs,
        }
    }

    pub fn algebra(&self) -> &Arc<FiniteBasisAlgebra> {
        &self.algebra
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, GaussianRational> {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GaussianRational {
        self.coeffs.get(&i).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.values().all(|c| c.is_real())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        let mut coeffs = self.coeffs.clone();
        for (i, c) in &other.coeffs {
            let e = coeffs.entry(*i).or_insert_with(GaussianRational::zero);
            *e += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        let mut coeffs = self.coeffs.clone();
        for (i, c) in &other.coeffs {
            let e = coeffs.entry(*i).or_insert_with(GaussianRational::zero);
            *e -= c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.algebra);
        }
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_same(other)?;
        let a: Combination = self.coeffs.iter().map(|(i, c)| (*i, c.clone())).collect();
        let b: Combination = other.coeffs.iter().map(|(i, c)| (*i, c.clone())).collect();
        let prod = self.algebra.mul_combination(&a, &b);
        Ok(Self::from_combination(&self.algebra, prod))
    }

    pub fn star(&self) -> Self {
        let a: Combination = self.coeffs.iter().map(|(i, c)| (*i, c.clone())).collect();
        let s = self.algebra.star_combination(&a);
        Self::from_combination(&self.algebra, s)
    }

    fn require_same(&self, other: &Self) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

/// max over the support of |coefficient|², reported squared so the value is
/// rational; 0 iff f = 0.
pub fn sup_norm_squared(f: &AlgebraElement) -> Rational {
    f.coeffs
        .values()
        .map(|c| c.abs_squared())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// A deterministic pseudo-random element with at most `max_terms` basis
/// terms and numerators/denominators bounded by 9/4.
pub fn random_element(
    algebra: &Arc<FiniteBasisAlgebra>,
    rng: &mut ChaCha8Rng,
    max_terms: usize,
    gaussian: bool,
) -> AlgebraElement {
    use crate::scalar::rat;
    let dim = algebra.dim();
    if dim == 0 {
        return AlgebraElement::zero(algebra);
    }
    let terms = rng.gen_range(0..=max_terms);
    let mut coeffs: BTreeMap<usize, GaussianRational> = BTreeMap::new();
    for _ in 0..terms {
        let i = rng.gen_range(0..dim);
        let re = rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4));
        let im = if gaussian {
            rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))
        } else {
            Rational::zero()
        };
        let c = GaussianRational::new(re, im);
        let e = coeffs.entry(i).or_insert_with(GaussianRational::zero);
        *e += &c;
    }
    coeffs.retain(|_, c| !c.is_zero());
    AlgebraElement {
        algebra: Arc::clone(algebra),
        coeffs,
    }
}

/// Ring elements the Dedekind-infiniteness witness check applies to.
pub trait StarRingElement: Clone + PartialEq + Sized {
    fn try_mul(&self, other: &Self) -> Result<Self>;
}

impl StarRingElement for AlgebraElement {
    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct WitnessReport {
    pub e_idempotent: bool,
    pub a_in_corner: bool,
    pub b_in_corner: bool,
    pub ab_equals_e: bool,
    pub ba_equals_e: bool,
    /// ab = e with ba ≠ e certifies that e is not a finite idempotent.
    pub valid_infiniteness_witness: bool,
}

/// Verifies e² = e, eae = a, ebe = b and ab = e, then reports whether
/// ba = e.  A failing precondition is an error naming each failed check.
pub fn witness_check<T: StarRingElement>(e: &T, a: &T, b: &T) -> Result<WitnessReport> {
    let e_idempotent = e.try_mul(e)? == *e;
    let a_in_corner = e.try_mul(a)?.try_mul(e)? == *a;
    let b_in_corner = e.try_mul(b)?.try_mul(e)? == *b;
    let ab_equals_e = a.try_mul(b)? == *e;
    if !(e_idempotent && a_in_corner && b_in_corner && ab_equals_e) {
        let mut failed = Vec::new();
        if !e_idempotent {
            failed.push("e^2 = e");
        }
        if !a_in_corner {
            failed.push("eae = a");
        }
        if !b_in_corner {
            failed.push("ebe = b");
        }
        if !ab_equals_e {
            failed.push("ab = e");
        }
        return Err(Error::Precondition(format!(
            "witness preconditions failed: {}",
            failed.join(", ")
        )));
    }
    let ba_equals_e = b.try_mul(a)? == *e;
    Ok(WitnessReport {
        e_idempotent,
        a_in_corner,
        b_in_corner,
        ab_equals_e,
        ba_equals_e,
        valid_infiniteness_witness: !ba_equals_e,
    })
}
