//! Appendix machinery for general finite semigroups: J-order navigation,
//! ideal complements, and the left Schützenberger representation by
//! monomial matrices over a maximal subgroup, with its kernel
//! characterization.

use crate::algebra::{
    matrix_algebra, star_semigroup_algebra, AlgebraElement, MatrixAlgebra,
};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;
use crate::semigroup::{
    green, j_class_classify_with, maximal_subgroup_at, FiniteSemigroup, GreenStructure,
    JClassKind, MaximalSubgroup,
};
use num_traits::Zero;
use serde::Serialize;

/// I = {s ∈ S | J ≰_J J_s}: the elements whose principal ideal does not
/// reach J.  Verified to be a two-sided ideal with J ∪ I an ideal too.
pub fn ideal_complement(s: &FiniteSemigroup, gr: &GreenStructure, j_class: usize) -> Result<Vec<usize>> {
    if j_class >= gr.j_classes.len() {
        return Err(Error::Invalid(format!("no J-class {j_class}")));
    }
    let ideal: Vec<usize> = (0..s.size())
        .filter(|&x| !gr.j_leq[j_class][gr.j_class_of[x]])
        .collect();
    let in_ideal = |x: usize| !gr.j_leq[j_class][gr.j_class_of[x]];
    for &x in &ideal {
        for y in 0..s.size() {
            if !in_ideal(s.mul(x, y)) || !in_ideal(s.mul(y, x)) {
                return Err(Error::Verification(format!(
                    "complement of {} is not an ideal",
                    s.label(x)
                )));
            }
        }
    }
    // J ∪ I absorbs multiplication as well.
    let in_union = |x: usize| in_ideal(x) || gr.j_class_of[x] == j_class;
    for x in 0..s.size() {
        if !in_union(x) {
            continue;
        }
        for y in 0..s.size() {
            if !in_union(s.mul(x, y)) || !in_union(s.mul(y, x)) {
                return Err(Error::Verification("J ∪ I is not an ideal".into()));
            }
        }
    }
    Ok(ideal)
}

/// A J-class maximal in the J-order among those meeting the support; ties
/// broken by least class index.
pub fn maximal_jclass_meeting(gr: &GreenStructure, support: &[usize]) -> Result<usize> {
    if support.is_empty() {
        return Err(Error::Precondition("empty support".into()));
    }
    let mut touched: Vec<usize> = support.iter().map(|&x| gr.j_class_of[x]).collect();
    touched.sort_unstable();
    touched.dedup();
    let maximal: Vec<usize> = touched
        .iter()
        .copied()
        .filter(|&c| {
            touched
                .iter()
                .all(|&d| d == c || !(gr.j_leq[c][d] && !gr.j_leq[d][c]))
        })
        .collect();
    Ok(maximal[0])
}

/// The left Schützenberger representation of S at an idempotent f, as
/// monomial matrices over the maximal subgroup H_f, verified multiplicative
/// on all pairs.
#[derive(Debug, Clone)]
pub struct SchutzRep {
    /// The semigroup the representation was built on; equals the input or
    /// its opposite (see `opposite`).
    pub semigroup: FiniteSemigroup,
    /// True when the input J-class had fewer L- than R-classes, so the
    /// construction ran on the opposite semigroup and ρ is an
    /// antihomomorphism of the input.
    pub opposite: bool,
    pub idempotent: usize,
    pub j_class: usize,
    /// Number of R-classes of the J-class (matrix size).
    pub n: usize,
    pub subgroup: MaximalSubgroup,
    /// Least-index element of each H-class inside L_f, in least-element
    /// order; column/row index space of the matrices.
    pub transversal: Vec<usize>,
    pub matrix: MatrixAlgebra,
    /// ρ(s) for every ambient element s.
    pub images: Vec<AlgebraElement>,
    /// The ideal I = {s | J ≰ J_s} used by the kernel characterization.
    pub ideal: Vec<usize>,
    green: GreenStructure,
}

pub fn schutzenberger_rep(input: &FiniteSemigroup, f: usize) -> Result<SchutzRep> {
    if !input.is_idempotent(f) {
        return Err(Error::Precondition(format!(
            "{} is not an idempotent",
            input.label(f)
        )));
    }
    let gr_in = green(input);
    let j = gr_in.j_class_of[f];
    match j_class_classify_with(input, &gr_in)[j] {
        JClassKind::Regular { .. } => {}
        JClassKind::Null => {
            return Err(Error::Precondition(
                "the J-class of f is null, not regular".into(),
            ));
        }
    }
    let r_count = count_distinct(gr_in.j_classes[j].iter().map(|&x| gr_in.r_class_of[x]));
    let l_count = count_distinct(gr_in.j_classes[j].iter().map(|&x| gr_in.l_class_of[x]));
    // Fewer L-classes than R-classes: work in the opposite semigroup, where
    // the roles swap and the matrix stays as small as possible.
    let opposite = l_count < r_count;
    let (s, gr) = if opposite {
        let op = input.opposite();
        let g = green(&op);
        (op, g)
    } else {
        (input.clone(), gr_in)
    };
    let j = gr.j_class_of[f];
    let subgroup = maximal_subgroup_at(&s, &gr, f)?;

    // H-classes inside L_f, ordered by least element; x_j = least element.
    let lf: Vec<usize> = gr.l_classes[gr.l_class_of[f]].clone();
    let mut h_class_ids: Vec<usize> = lf.iter().map(|&x| gr.h_class_of[x]).collect();
    h_class_ids.sort_unstable();
    h_class_ids.dedup();
    let transversal: Vec<usize> = h_class_ids
        .iter()
        .map(|&h| *gr.h_classes[h].iter().min().unwrap())
        .collect();
    let n = transversal.len();
    let row_of_h_class = |h: usize| h_class_ids.iter().position(|&x| x == h);

    let inner = star_semigroup_algebra(&subgroup.group)?;
    let matrix = matrix_algebra(&inner, n)?;

    // Each column has at most one entry by construction.  Left translation
    // can merge H-classes of L_f (two columns sharing a row), so the
    // matrices are column-monomial; they are rook matrices exactly when the
    // translations act injectively, as they do for inverse semigroups.
    let mut images = Vec::with_capacity(s.size());
    for a in 0..s.size() {
        let mut comb = Vec::new();
        for (col, &xj) in transversal.iter().enumerate() {
            let t = s.mul(a, xj);
            if gr.j_class_of[t] != j {
                continue;
            }
            // Stability forces t into L_f.
            let Some(row) = row_of_h_class(gr.h_class_of[t]) else {
                return Err(Error::Verification(format!(
                    "product {} left L_f despite staying in J",
                    s.label(t)
                )));
            };
            // Unique h in H_f with x_row · h = t (free right action).
            let h = (0..subgroup.members.len())
                .find(|&h| s.mul(transversal[row], subgroup.members[h]) == t)
                .ok_or_else(|| {
                    Error::Verification("free action failed to produce the entry".into())
                })?;
            comb.push((matrix.basis_index(row, col, h), num_traits::One::one()));
        }
        comb.sort_by_key(|(i, _): &(usize, GaussianRational)| *i);
        images.push(AlgebraElement::from_combination(&matrix.algebra, comb));
    }

    let ideal = ideal_complement(&s, &gr, j)?;
    let rep = SchutzRep {
        semigroup: s,
        opposite,
        idempotent: f,
        j_class: j,
        n,
        subgroup,
        transversal,
        matrix,
        images,
        ideal,
        green: gr,
    };
    rep.verify_multiplicative()?;
    Ok(rep)
}

impl SchutzRep {
    /// ρ(st) = ρ(s)ρ(t) over all pairs of the (possibly opposite) semigroup.
    fn verify_multiplicative(&self) -> Result<()> {
        let s = &self.semigroup;
        for a in 0..s.size() {
            for b in 0..s.size() {
                let lhs = &self.images[s.mul(a, b)];
                let rhs = self.images[a].mul(&self.images[b])?;
                if *lhs != rhs {
                    return Err(Error::Verification(format!(
                        "ρ not multiplicative at ({}, {})",
                        s.label(a),
                        s.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Linear extension of ρ to a coefficient vector over the semigroup.
    pub fn apply(&self, coeffs: &[(usize, GaussianRational)]) -> AlgebraElement {
        let mut acc = AlgebraElement::zero(&self.matrix.algebra);
        for (i, c) in coeffs {
            acc = acc.add(&self.images[*i].scale(c)).expect("same algebra");
        }
        acc
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelCheck {
    pub matrix_image_zero: bool,
    pub annihilates_l_class_module: bool,
    pub annihilates_j_module: bool,
    pub agree: bool,
}

/// Evaluates ρ(x) = 0, π(x)·R L_f = 0 and π(x)·R J = 0 independently and
/// asserts the three verdicts coincide.
pub fn rep_kernel_check(rep: &SchutzRep, coeffs: &[(usize, GaussianRational)]) -> Result<KernelCheck> {
    let s = &rep.semigroup;
    let gr = &rep.green;
    let in_ideal = {
        let mut v = vec![false; s.size()];
        for &x in &rep.ideal {
            v[x] = true;
        }
        v
    };
    let matrix_image_zero = rep.apply(coeffs).is_zero();

    // Action of π(x) on the left of the span of a basis set: for each basis
    // vector y, the product must vanish in the contracted algebra.
    let annihilates = |basis: &[usize]| -> bool {
        for &y in basis {
            let mut acc: std::collections::BTreeMap<usize, GaussianRational> =
                Default::default();
            for (a, c) in coeffs {
                let p = s.mul(*a, y);
                if in_ideal[p] {
                    continue;
                }
                let e = acc.entry(p).or_insert_with(GaussianRational::zero);
                *e += c;
            }
            if acc.values().any(|c| !c.is_zero()) {
                return false;
            }
        }
        true
    };
    let lf = &gr.l_classes[gr.l_class_of[rep.idempotent]];
    let annihilates_l = annihilates(lf);
    let annihilates_j = annihilates(&gr.j_classes[rep.j_class]);
    let agree = matrix_image_zero == annihilates_l && annihilates_l == annihilates_j;
    if !agree {
        return Err(Error::Verification(
            "kernel characterizations disagree".into(),
        ));
    }
    Ok(KernelCheck {
        matrix_image_zero,
        annihilates_l_class_module: annihilates_l,
        annihilates_j_module: annihilates_j,
        agree,
    })
}

fn count_distinct(it: impl Iterator<Item = usize>) -> usize {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixClassEntry {
    pub j_class: usize,
    pub regular: bool,
    pub r_class_count: usize,
    pub l_class_count: usize,
    pub subgroup_order: Option<usize>,
    pub representation_size: Option<usize>,
    pub built_on_opposite: Option<bool>,
    pub multiplicativity_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixReport {
    pub classes: Vec<AppendixClassEntry>,
    pub maximal_subgroup_orders: Vec<usize>,
    pub reduction: String,
    /// The matrix-level bootstrap the reduction rides on.
    pub matrix_bootstrap: String,
    pub stably_finite_char_zero: bool,
}

/// Per regular J-class: shape data and a verified Schützenberger
/// representation; globally, the reduction of stable finiteness of RS to
/// the maximal subgroups.
pub fn appendix_verdict(s: &FiniteSemigroup) -> Result<AppendixReport> {
    let gr = green(s);
    let kinds = j_class_classify_with(s, &gr);
    let mut classes = Vec::new();
    let mut orders = Vec::new();
    for (j, kind) in kinds.iter().enumerate() {
        let members = &gr.j_classes[j];
        let r_count = count_distinct(members.iter().map(|&x| gr.r_class_of[x]));
        let l_count = count_distinct(members.iter().map(|&x| gr.l_class_of[x]));
        match kind {
            JClassKind::Null => {
                classes.push(AppendixClassEntry {
                    j_class: j,
                    regular: false,
                    r_class_count: r_count,
                    l_class_count: l_count,
                    subgroup_order: None,
                    representation_size: None,
                    built_on_opposite: None,
                    multiplicativity_verified: false,
                });
            }
            JClassKind::Regular { .. } => {
                let f = *members
                    .iter()
                    .find(|&&x| s.is_idempotent(x))
                    .expect("regular class contains an idempotent");
                let rep = schutzenberger_rep(s, f)?;
                orders.push(rep.subgroup.group.size());
                classes.push(AppendixClassEntry {
                    j_class: j,
                    regular: true,
                    r_class_count: r_count,
                    l_class_count: l_count,
                    subgroup_order: Some(rep.subgroup.group.size()),
                    representation_size: Some(rep.n),
                    built_on_opposite: Some(rep.opposite),
                    multiplicativity_verified: true,
                });
            }
        }
    }
    Ok(AppendixReport {
        classes,
        maximal_subgroup_orders: orders,
        reduction:
            "RS stably finite iff RG stably finite for each listed maximal subgroup G (R unital)"
                .to_string(),
        matrix_bootstrap: "R[S x B_n] = M_n(RS) x RS lifts Dedekind finiteness to all matrix levels"
            .to_string(),
        stably_finite_char_zero: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use num_traits::One;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ideal_complement_examples() {
        let s = corpus::brandt(2);
        let gr = green(s.base());
        let e11 = s.index_of("E11").unwrap();
        let zero = s.index_of("0").unwrap();
        let i = ideal_complement(s.base(), &gr, gr.j_class_of[e11]).unwrap();
        assert_eq!(i, vec![zero]);
        let g = corpus::cyclic_group(3);
        let gg = green(g.base());
        assert!(ideal_complement(g.base(), &gg, 0).unwrap().is_empty());
        let n = corpus::null_semigroup_with_zero();
        let gn = green(&n);
        let x = n.index_of("x").unwrap();
        let i = ideal_complement(&n, &gn, gn.j_class_of[x]).unwrap();
        assert_eq!(i, vec![n.index_of("0").unwrap()]);
    }

    #[test]
    fn maximal_jclass_examples() {
        let s = corpus::brandt(2);
        let gr = green(s.base());
        let e11 = s.index_of("E11").unwrap();
        let zero = s.index_of("0").unwrap();
        let c = maximal_jclass_meeting(&gr, &[zero, e11]).unwrap();
        assert_eq!(c, gr.j_class_of[e11]);
        let c = maximal_jclass_meeting(&gr, &[zero]).unwrap();
        assert_eq!(c, gr.j_class_of[zero]);
        let t3 = corpus::full_transformation_monoid_t3();
        let gt = green(&t3);
        let ident = t3.identity().unwrap();
        assert_eq!(
            maximal_jclass_meeting(&gt, &[ident]).unwrap(),
            gt.j_class_of[ident]
        );
    }

    #[test]
    fn group_representation_is_one_by_one() {
        let g = corpus::symmetric_group_s3();
        let ident = g.identity().unwrap();
        let rep = schutzenberger_rep(g.base(), ident).unwrap();
        assert_eq!(rep.n, 1);
        assert_eq!(rep.subgroup.group.size(), 6);
        assert!(!rep.opposite);
    }

    #[test]
    fn b2_representation_is_zero_one_matrix_units() {
        let s = corpus::brandt(2);
        let e11 = s.index_of("E11").unwrap();
        let rep = schutzenberger_rep(s.base(), e11).unwrap();
        assert_eq!(rep.n, 2);
        assert_eq!(rep.subgroup.group.size(), 1);
        // ρ(0) = 0 and ρ(E_ij) is the single matrix unit.
        let zero = s.index_of("0").unwrap();
        assert!(rep.images[zero].is_zero());
        for i in 1..=2 {
            for j in 1..=2 {
                let x = s.index_of(&format!("E{i}{j}")).unwrap();
                assert_eq!(rep.images[x].coeffs().len(), 1);
            }
        }
    }

    #[test]
    fn i3_rank_one_idempotent_gives_three_by_three() {
        let c = corpus::symmetric_inverse_monoid(3);
        let s = &c.semigroup;
        let f = (0..s.size())
            .find(|&x| s.is_idempotent(x) && c.maps[x].rank() == 1)
            .unwrap();
        let rep = schutzenberger_rep(s.base(), f).unwrap();
        assert_eq!(rep.n, 3);
        assert_eq!(rep.subgroup.group.size(), 1);
    }

    #[test]
    fn t3_rank_two_idempotent_has_z2_subgroup() {
        let t3 = corpus::full_transformation_monoid_t3();
        // "010" maps 0,1,2 to 0,1,0: an idempotent of rank 2.
        let f = t3.index_of("010").unwrap();
        assert!(t3.is_idempotent(f));
        let rep = schutzenberger_rep(&t3, f).unwrap();
        assert_eq!(rep.subgroup.group.size(), 2);
        assert_eq!(rep.n, 3);
    }

    #[test]
    fn subgroup_embeds_as_its_own_block() {
        let s = corpus::symmetric_inverse_monoid(2).semigroup;
        let ident = s.identity().unwrap();
        let rep = schutzenberger_rep(s.base(), ident).unwrap();
        // The H-class of the identity maps to a single diagonal block
        // faithfully.
        let block: Vec<_> = rep
            .subgroup
            .members
            .iter()
            .map(|&m| rep.images[m].clone())
            .collect();
        for (i, b) in block.iter().enumerate() {
            assert_eq!(b.coeffs().len(), 1);
            for (j, c) in block.iter().enumerate() {
                if i != j {
                    assert_ne!(b, c);
                }
            }
        }
    }

    #[test]
    fn kernel_check_examples() {
        let s = corpus::brandt(2);
        let e11 = s.index_of("E11").unwrap();
        let e22 = s.index_of("E22").unwrap();
        let zero = s.index_of("0").unwrap();
        let rep = schutzenberger_rep(s.base(), e11).unwrap();
        // Elements of the ideal map to zero both ways.
        let chk = rep_kernel_check(&rep, &[(zero, GaussianRational::one())]).unwrap();
        assert!(chk.matrix_image_zero && chk.agree);
        // E11 + E22 maps to the identity matrix: nonzero both ways.
        let chk = rep_kernel_check(
            &rep,
            &[(e11, GaussianRational::one()), (e22, GaussianRational::one())],
        )
        .unwrap();
        assert!(!chk.matrix_image_zero && chk.agree);
        // The zero element of the algebra.
        let chk = rep_kernel_check(&rep, &[]).unwrap();
        assert!(chk.matrix_image_zero && chk.agree);
    }

    #[test]
    fn kernel_check_on_random_elements() {
        let corpus_items: Vec<(FiniteSemigroup, usize)> = vec![
            (
                corpus::brandt(2).base().clone(),
                corpus::brandt(2).index_of("E11").unwrap(),
            ),
            (
                corpus::full_transformation_monoid_t3(),
                corpus::full_transformation_monoid_t3()
                    .index_of("010")
                    .unwrap(),
            ),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (s, f) in corpus_items {
            let rep = schutzenberger_rep(&s, f).unwrap();
            for _ in 0..200 {
                let terms = rng.gen_range(0..4usize);
                let coeffs: Vec<(usize, GaussianRational)> = (0..terms)
                    .map(|_| {
                        (
                            rng.gen_range(0..s.size()),
                            GaussianRational::from_parts(
                                rng.gen_range(-3i64..=3),
                                1,
                                rng.gen_range(-2i64..=2),
                                1,
                            ),
                        )
                    })
                    .collect();
                let chk = rep_kernel_check(&rep, &coeffs).unwrap();
                assert!(chk.agree);
            }
        }
    }

    #[test]
    fn appendix_verdict_for_t3() {
        let t3 = corpus::full_transformation_monoid_t3();
        let rep = appendix_verdict(&t3).unwrap();
        assert_eq!(rep.classes.len(), 3);
        assert!(rep.classes.iter().all(|c| c.regular));
        let mut orders = rep.maximal_subgroup_orders.clone();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 6]);
    }

    #[test]
    fn appendix_verdict_matches_d_class_report_on_inverse_corpus() {
        for s in corpus::inverse_corpus() {
            let a = appendix_verdict(s.base()).unwrap();
            let d = crate::semigroup::d_class_report(&s).unwrap();
            let mut lhs = a.maximal_subgroup_orders.clone();
            let mut rhs = d.maximal_subgroup_orders.clone();
            lhs.sort_unstable();
            rhs.sort_unstable();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn left_zero_semigroup_uses_the_opposite_fallback() {
        // Left-zero on 2 elements: one J-class, 2 R-classes... in fact
        // xy = x gives L-classes {x, y} together? x L y iff Sx ∪ {x} =
        // Sy ∪ {y}: Sx = {x, y}... xy = x means products fix the left
        // factor: S¹x = {x}, so L-classes are singletons and R-classes
        // merge: 1 R-class, 2 L-classes. The dual right-zero semigroup
        // has 2 R-classes and 1 L-class and must trigger the fallback.
        let right_zero = corpus::left_zero_semigroup().opposite();
        let gr = green(&right_zero);
        assert_eq!(gr.j_classes.len(), 1);
        let f = (0..2).find(|&x| right_zero.is_idempotent(x)).unwrap();
        let rep = schutzenberger_rep(&right_zero, f).unwrap();
        assert!(rep.opposite);
        assert_eq!(rep.n, 1);
    }
}
