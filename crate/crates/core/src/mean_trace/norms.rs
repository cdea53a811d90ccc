//! The ℓ¹ seminorm induced by the bisection spanning semigroup (an exact
//! linear program), the trace inner product, exact orthogonal projection,
//! and the Passman-style inequality checks.
//!
//! Every comparison is between rationals: trace norms are kept squared and
//! ℓ¹ values are genuine rationals for real-coefficient elements.

use super::TraceFunctional;
use crate::algebra::{AlgebraElement, GroupoidAlgebra};
use crate::error::{Error, Result};
use crate::groupoid::enumerate_bisections;
use crate::scalar::{GaussianRational, Rational};
use crate::simplex::{solve, LinearProgram, LpOutcome};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub const DEFAULT_ELL1_ARROW_LIMIT: usize = 16;

/// |a| = inf { Σ|c_U| : a = Σ c_U 1_U } over all bisection indicators,
/// computed as an exact rational LP with split positive/negative variables.
/// Restricted to real rational coefficients so the objective stays in ℚ.
pub fn ell1_seminorm(ga: &GroupoidAlgebra, f: &AlgebraElement, max_arrows: usize) -> Result<Rational> {
    if !f.is_real() {
        return Err(Error::Precondition(
            "ℓ¹ seminorm is exact only for real rational coefficients; use ell1_bounds".into(),
        ));
    }
    let g = &ga.groupoid;
    let n = g.arrow_count();
    if n > max_arrows {
        return Err(Error::SizeLimit {
            what: "ℓ¹ seminorm LP",
            actual: n,
            limit: max_arrows,
        });
    }
    let bisections: Vec<Vec<usize>> = enumerate_bisections(g, max_arrows)?
        .into_iter()
        .filter(|u| !u.is_empty())
        .map(|u| u.arrows().collect())
        .collect();
    let b = bisections.len();
    // Variables: c⁺_U then c⁻_U; one equality row per arrow.
    let mut rows = Vec::with_capacity(n);
    for arrow in 0..n {
        let mut row = vec![Rational::zero(); 2 * b];
        for (ui, u) in bisections.iter().enumerate() {
            if u.contains(&arrow) {
                row[ui] = Rational::one();
                row[b + ui] = -Rational::one();
            }
        }
        rows.push((row, f.coeff(arrow).re));
    }
    let lp = LinearProgram {
        objective: vec![Rational::one(); 2 * b],
        rows,
    };
    match solve(&lp) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        // Singleton bisections always give a representation, and the
        // objective is bounded below by zero.
        other => Err(Error::Verification(format!(
            "ℓ¹ LP must be solvable, got {other:?}"
        ))),
    }
}

/// Certified rational bounds on |f|² for Gaussian coefficients: the real
/// and imaginary parts are real elements, |f| ≥ max(|Re f|, |Im f|) and
/// |f| ≤ |Re f| + |Im f|; the sup-norm lower bound |f|∞² ≤ |f|² is joined
/// in.  For real f both bounds collapse to the exact value.
#[derive(Debug, Clone, Serialize)]
pub struct Ell1Bounds {
    #[serde(with = "crate::io::serde_rational")]
    pub lower_squared: Rational,
    #[serde(with = "crate::io::serde_rational")]
    pub upper_squared: Rational,
    /// Present exactly when f is real, in which case |f| itself is rational.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub exact: Option<Rational>,
}

fn serialize_opt_rational<S: serde::Serializer>(
    v: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => crate::io::rational_to_value(r).serialize(s),
        None => s.serialize_none(),
    }
}

pub fn ell1_bounds(ga: &GroupoidAlgebra, f: &AlgebraElement, max_arrows: usize) -> Result<Ell1Bounds> {
    let re_part = AlgebraElement::from_combination(
        &ga.algebra,
        f.coeffs()
            .iter()
            .map(|(i, c)| (*i, GaussianRational::from_rational(c.re.clone())))
            .collect(),
    );
    let im_part = AlgebraElement::from_combination(
        &ga.algebra,
        f.coeffs()
            .iter()
            .map(|(i, c)| (*i, GaussianRational::from_rational(c.im.clone())))
            .collect(),
    );
    let re_norm = ell1_seminorm(ga, &re_part, max_arrows)?;
    if im_part.is_zero() {
        return Ok(Ell1Bounds {
            lower_squared: &re_norm * &re_norm,
            upper_squared: &re_norm * &re_norm,
            exact: Some(re_norm),
        });
    }
    let im_norm = ell1_seminorm(ga, &im_part, max_arrows)?;
    let split_lower = re_norm.clone().max(im_norm.clone());
    let lower_squared = (&split_lower * &split_lower).max(crate::algebra::sup_norm_squared(f));
    let upper = &re_norm + &im_norm;
    Ok(Ell1Bounds {
        lower_squared,
        upper_squared: &upper * &upper,
        exact: None,
    })
}

/// The inner product (a, b) = τ(ab*) of a faithful trace, with all norms
/// kept squared.
#[derive(Debug, Clone)]
pub struct InnerProductSpace {
    pub trace: TraceFunctional,
}

impl InnerProductSpace {
    pub fn new(trace: TraceFunctional) -> Self {
        InnerProductSpace { trace }
    }

    pub fn inner(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<GaussianRational> {
        Ok(self.trace.evaluate(&a.mul(&b.star())?))
    }

    /// ‖a‖² = τ(aa*), a nonnegative rational for a trace.
    pub fn norm_sq(&self, a: &AlgebraElement) -> Result<Rational> {
        let v = self.inner(a, a)?;
        if !v.is_real() || v.re.is_negative() {
            return Err(Error::Precondition(format!(
                "τ(aa*) = {v} is not a nonnegative rational; not a trace"
            )));
        }
        Ok(v.re)
    }
}

/// d(c, span L)² = ‖c‖² − ‖proj c‖², by exact Gram–Schmidt in the trace
/// inner product.  Zero exactly when c lies in the span (for faithful τ).
pub fn distance_sq_to_subspace(
    space: &InnerProductSpace,
    c: &AlgebraElement,
    l: &[AlgebraElement],
) -> Result<Rational> {
    // Orthogonalize l, dropping dependent vectors (norm² = 0 forces the
    // orthogonalized vector to vanish under a faithful trace).
    let mut basis: Vec<(AlgebraElement, Rational)> = Vec::new();
    for v in l {
        let mut u = v.clone();
        for (w, wsq) in &basis {
            let coeff = space.inner(&u, w)?;
            let scale = GaussianRational::new(&coeff.re / wsq, &coeff.im / wsq);
            u = u.sub(&w.scale(&scale))?;
        }
        let usq = space.norm_sq(&u)?;
        if usq.is_positive() {
            basis.push((u, usq));
        }
    }
    let mut dist = space.norm_sq(c)?;
    for (u, usq) in &basis {
        let coeff = space.inner(c, u)?;
        dist -= coeff.abs_squared() / usq;
    }
    if dist.is_negative() {
        return Err(Error::Verification(
            "negative squared distance; trace is not positive".into(),
        ));
    }
    Ok(dist)
}

#[derive(Debug, Clone, Serialize)]
pub struct PassmanReport {
    /// ‖ab‖² ≤ ‖a‖²·|b|².
    pub norm_product_right: bool,
    /// ‖ab‖² ≤ |a|²·‖b‖².
    pub norm_product_left: bool,
    /// For the normalized trace: ‖1‖ = 1, ‖x‖² ≤ |x|² and |τ(x)|² ≤ ‖x‖²
    /// on the supplied elements.
    pub normalized_chain: bool,
    /// |(b, a−c)|² ≤ ‖b‖²(‖a−c‖² − d(c, span{a,b})²).
    pub projection_bound: bool,
    /// τ(e)·|e|² ≥ ‖e‖² > 0 for the supplied nonzero idempotent.
    pub idempotent_bound: bool,
    pub all_pass: bool,
}

/// Evaluates the Passman-style inequalities exactly, in squared and
/// cleared-denominator form.  `a`, `b` and `e` need real coefficients where
/// the ℓ¹ LP is invoked; `e` must be a nonzero idempotent; τ must be a
/// faithful trace on a unital groupoid algebra.
pub fn passman_checks(
    ga: &GroupoidAlgebra,
    trace: &TraceFunctional,
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
    e: &AlgebraElement,
    max_arrows: usize,
) -> Result<PassmanReport> {
    if e.is_zero() || e.mul(e)? != *e {
        return Err(Error::Precondition(
            "e must be a nonzero idempotent".into(),
        ));
    }
    let space = InnerProductSpace::new(trace.clone());

    // (1) ‖ab‖² ≤ ‖a‖²·|b|² and the mirrored form.
    let ab = a.mul(b)?;
    let ab_sq = space.norm_sq(&ab)?;
    let b_l1 = ell1_seminorm(ga, b, max_arrows)?;
    let a_l1 = ell1_seminorm(ga, a, max_arrows)?;
    let norm_product_right = ab_sq <= space.norm_sq(a)? * (&b_l1 * &b_l1);
    let norm_product_left = ab_sq <= (&a_l1 * &a_l1) * space.norm_sq(b)?;

    // (2) Normalized chain on a, b, c, e.
    let normalized = trace.normalized()?;
    let nspace = InnerProductSpace::new(normalized.clone());
    let mut normalized_chain = {
        let one = AlgebraElement::unit(&ga.algebra)
            .ok_or_else(|| Error::Precondition("algebra is not unital".into()))?;
        nspace.norm_sq(&one)? == Rational::one()
    };
    for x in [a, b, c, e] {
        let nsq = nspace.norm_sq(x)?;
        let tau = normalized.evaluate(x);
        if tau.abs_squared() > nsq {
            normalized_chain = false;
        }
        if x.is_real() {
            let l1 = ell1_seminorm(ga, x, max_arrows)?;
            if nsq > &l1 * &l1 {
                normalized_chain = false;
            }
        }
    }

    // (3) Projection bound with L = span{a, b}.
    let l = vec![a.clone(), b.clone()];
    let amc = a.sub(c)?;
    let lhs = space.inner(b, &amc)?.abs_squared();
    let d_sq = distance_sq_to_subspace(&space, c, &l)?;
    let rhs = space.norm_sq(b)? * (space.norm_sq(&amc)? - d_sq);
    let projection_bound = lhs <= rhs;

    // (4) τ(e)·|e|² ≥ ‖e‖² > 0.
    let e_l1 = ell1_seminorm(ga, e, max_arrows)?;
    let tau_e = trace.evaluate(e);
    let e_norm_sq = space.norm_sq(e)?;
    let idempotent_bound = tau_e.is_real()
        && tau_e.re.is_positive()
        && tau_e.re * (&e_l1 * &e_l1) >= e_norm_sq
        && e_norm_sq.is_positive();

    let all_pass =
        norm_product_right && norm_product_left && normalized_chain && projection_bound && idempotent_bound;
    Ok(PassmanReport {
        norm_product_right,
        norm_product_left,
        normalized_chain,
        projection_bound,
        idempotent_bound,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{groupoid_algebra, random_element, sup_norm_squared};
    use crate::corpus;
    use crate::groupoid::{universal_groupoid, FiniteGroupoid};
    use crate::mean_trace::{canonical_trace, trace_from_mean, InvariantMean};
    use crate::scalar::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pair2() -> GroupoidAlgebra {
        groupoid_algebra(&FiniteGroupoid::pair_groupoid(2)).unwrap()
    }

    #[test]
    fn ell1_of_a_single_arrow_indicator_is_one() {
        let ga = pair2();
        for a in 0..4 {
            let f = ga.delta(a);
            assert_eq!(ell1_seminorm(&ga, &f, 16).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn ell1_of_a_two_unit_indicator_is_one() {
        // δ_id_x + δ_id_y is the indicator of one bisection.
        let ga = pair2();
        let g = &ga.groupoid;
        let f = ga.unit_indicator(&[0, 1]);
        assert_eq!(ell1_seminorm(&ga, &f, 16).unwrap(), rat(1, 1));
        let _ = g;
    }

    #[test]
    fn ell1_of_zero_is_zero_and_gaussians_are_rejected() {
        let ga = pair2();
        let zero = AlgebraElement::zero(&ga.algebra);
        assert!(ell1_seminorm(&ga, &zero, 16).unwrap().is_zero());
        let f = ga.delta(0).scale(&GaussianRational::i());
        assert!(matches!(
            ell1_seminorm(&ga, &f, 16),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ell1_size_gate() {
        let ga = groupoid_algebra(&FiniteGroupoid::pair_groupoid(5)).unwrap();
        let f = ga.delta(0);
        assert!(matches!(
            ell1_seminorm(&ga, &f, 16),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn ell1_dominates_sup_norm_on_random_real_elements() {
        let ga = pair2();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..60 {
            let f = random_element(&ga.algebra, &mut rng, 4, false);
            let l1 = ell1_seminorm(&ga, &f, 16).unwrap();
            assert!(sup_norm_squared(&f) <= &l1 * &l1, "f = {f:?}");
        }
    }

    #[test]
    fn ell1_is_subadditive_and_submultiplicative_on_samples() {
        let ga = pair2();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let f = random_element(&ga.algebra, &mut rng, 3, false);
            let h = random_element(&ga.algebra, &mut rng, 3, false);
            let nf = ell1_seminorm(&ga, &f, 16).unwrap();
            let nh = ell1_seminorm(&ga, &h, 16).unwrap();
            let sum = ell1_seminorm(&ga, &f.add(&h).unwrap(), 16).unwrap();
            assert!(sum <= &nf + &nh);
            let prod = ell1_seminorm(&ga, &f.mul(&h).unwrap(), 16).unwrap();
            assert!(prod <= &nf * &nh);
            // N5: |f*| = |f|.
            let star = ell1_seminorm(&ga, &f.star(), 16).unwrap();
            assert_eq!(star, nf);
        }
    }

    #[test]
    fn gaussian_bounds_bracket_the_truth() {
        let ga = pair2();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let f = random_element(&ga.algebra, &mut rng, 4, true);
            let bounds = ell1_bounds(&ga, &f, 16).unwrap();
            assert!(bounds.lower_squared <= bounds.upper_squared);
            assert!(sup_norm_squared(&f) <= bounds.upper_squared);
            if f.is_real() {
                assert!(bounds.exact.is_some());
                assert_eq!(bounds.lower_squared, bounds.upper_squared);
            }
        }
    }

    #[test]
    fn inner_product_adjoint_laws() {
        let s = corpus::brandt(2);
        let ga = groupoid_algebra(&universal_groupoid(&s)).unwrap();
        let tr = canonical_trace(&ga);
        let space = InnerProductSpace::new(tr);
        let dim = ga.algebra.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let a = AlgebraElement::basis(&ga.algebra, i);
                    let b = AlgebraElement::basis(&ga.algebra, j);
                    let c = AlgebraElement::basis(&ga.algebra, k);
                    // (ab, c) = (b, a*c) and (a, bc) = (ac*, b).
                    let lhs = space.inner(&a.mul(&b).unwrap(), &c).unwrap();
                    let rhs = space.inner(&b, &a.star().mul(&c).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                    let lhs = space.inner(&a, &b.mul(&c).unwrap()).unwrap();
                    let rhs = space.inner(&a.mul(&c.star()).unwrap(), &b).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn norm_of_unit_arrow_indicator_is_its_weight() {
        let s = corpus::brandt(2);
        let ga = groupoid_algebra(&universal_groupoid(&s)).unwrap();
        let mean = crate::mean_trace::canonical_mean(&ga.groupoid);
        let tr = trace_from_mean(&ga, &mean).unwrap();
        let space = InnerProductSpace::new(tr);
        for x in 0..ga.groupoid.object_count() {
            let f = ga.delta(ga.groupoid.identity_at(x));
            assert_eq!(space.norm_sq(&f).unwrap(), mean.weights[x]);
        }
    }

    #[test]
    fn star_preserves_the_trace_norm_on_random_elements() {
        let s = corpus::symmetric_inverse_monoid(2).semigroup;
        let ga = groupoid_algebra(&universal_groupoid(&s)).unwrap();
        let tr = canonical_trace(&ga);
        let space = InnerProductSpace::new(tr);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..200 {
            let f = random_element(&ga.algebra, &mut rng, 5, true);
            assert_eq!(
                space.norm_sq(&f).unwrap(),
                space.norm_sq(&f.star()).unwrap()
            );
        }
    }

    #[test]
    fn distance_examples() {
        // Z/2 with the standard trace: c = identity, L = span{g} gives 1.
        let g = FiniteGroupoid::from_group(corpus::cyclic_group(2).base()).unwrap();
        let ga = groupoid_algebra(&g).unwrap();
        let mean = InvariantMean::new(vec![Rational::one()]).unwrap();
        let tr = trace_from_mean(&ga, &mean).unwrap();
        let space = InnerProductSpace::new(tr);
        let ident = ga.delta(0);
        let gen = ga.delta(1);
        let d = distance_sq_to_subspace(&space, &ident, &[gen.clone()]).unwrap();
        assert_eq!(d, rat(1, 1));
        // Membership gives distance zero.
        assert!(distance_sq_to_subspace(&space, &gen, &[gen.clone()])
            .unwrap()
            .is_zero());
        // Empty list: ‖c‖².
        assert_eq!(
            distance_sq_to_subspace(&space, &ident, &[]).unwrap(),
            space.norm_sq(&ident).unwrap()
        );
        // Dependent spanning lists are tolerated.
        let d2 = distance_sq_to_subspace(&space, &ident, &[gen.clone(), gen.clone()]).unwrap();
        assert_eq!(d2, rat(1, 1));
    }

    #[test]
    fn passman_report_passes_on_canonical_data() {
        let s = corpus::brandt(2);
        let ga = groupoid_algebra(&universal_groupoid(&s)).unwrap();
        let tr = canonical_trace(&ga);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let one = AlgebraElement::unit(&ga.algebra).unwrap();
        for _ in 0..20 {
            let a = random_element(&ga.algebra, &mut rng, 4, false);
            let b = random_element(&ga.algebra, &mut rng, 4, false);
            let c = random_element(&ga.algebra, &mut rng, 4, false);
            let rep = passman_checks(&ga, &tr, &a, &b, &c, &one, 16).unwrap();
            assert!(rep.all_pass, "{rep:?}");
        }
        // Unit-arrow idempotent: τ(e) = μ(x) with |e| = 1.
        let e = ga.delta(ga.groupoid.identity_at(0));
        let rep = passman_checks(&ga, &tr, &e, &e, &e, &e, 16).unwrap();
        assert!(rep.idempotent_bound);
    }

    #[test]
    fn passman_rejects_non_idempotents() {
        let ga = pair2();
        let tr = canonical_trace(&ga);
        let x = ga.delta(1);
        assert!(matches!(
            passman_checks(&ga, &tr, &x, &x, &x, &x, 16),
            Err(Error::Precondition(_))
        ));
    }
}
