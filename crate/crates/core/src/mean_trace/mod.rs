//! Invariant means on unit spaces, traces by integration against them, the
//! exact verification suite for the trace axioms, and contractivity checks.

mod norms;

pub use norms::{
    distance_sq_to_subspace, ell1_bounds, ell1_seminorm, passman_checks, Ell1Bounds,
    InnerProductSpace, PassmanReport, DEFAULT_ELL1_ARROW_LIMIT,
};

use crate::algebra::{
    matrix_algebra, random_element, AlgebraElement, FiniteBasisAlgebra, GroupoidAlgebra,
    MatrixAlgebra,
};
use crate::error::{Error, Result};
use crate::groupoid::{
    enumerate_bisections, orbits_and_isotropy, Bisection, FiniteGroupoid,
    DEFAULT_BISECTION_ARROW_LIMIT,
};
use crate::scalar::{GaussianRational, Rational};
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

/// A finitely additive nonnegative weighting of the (discrete) unit space.
/// Invariance means μ(U⁻¹U) = μ(UU⁻¹) for every bisection U, which at
/// finite scale is equivalent to the weights being constant on orbits.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantMean {
    pub weights: Vec<Rational>,
}

impl InvariantMean {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::Precondition("mean weights must be nonnegative".into()));
        }
        Ok(InvariantMean { weights })
    }

    pub fn measure_of(&self, objects: impl IntoIterator<Item = usize>) -> Rational {
        objects
            .into_iter()
            .map(|x| self.weights[x].clone())
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }

    pub fn total_mass(&self) -> Rational {
        self.weights
            .iter()
            .fold(Rational::zero(), |a, b| a + b.clone())
    }
}

/// The canonical strictly positive invariant mean: with orbits O_1..O_k in
/// order of least object index, a point of O_i weighs 1/(2^i |O_i|).
pub fn canonical_mean(g: &FiniteGroupoid) -> InvariantMean {
    let orb = orbits_and_isotropy(g);
    let mut weights = vec![Rational::zero(); g.object_count()];
    for (i, orbit) in orb.orbits.iter().enumerate() {
        let denom = Rational::from_integer((1i64 << (i + 1) as i64).into())
            * Rational::from_integer((orbit.len() as i64).into());
        let w = Rational::one() / denom;
        for &x in orbit {
            weights[x] = w.clone();
        }
    }
    InvariantMean { weights }
}

#[derive(Debug, Clone, Serialize)]
pub enum InvarianceCertificate {
    /// A bisection whose dom- and ran-measures differ (arrow indices).
    Bisection { arrows: Vec<usize> },
    /// Two objects in one orbit with different weights.
    OrbitPair { a: usize, b: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct MeanInvarianceReport {
    /// Verdict of the exhaustive bisection scan; None when gated out by the
    /// arrow limit.
    pub bisection_verdict: Option<bool>,
    pub orbit_constancy_verdict: bool,
    pub invariant: bool,
    /// The two verdicts must coincide whenever both ran.
    pub verdicts_agree: bool,
    pub certificate: Option<InvarianceCertificate>,
}

/// Decides invariance two independent ways: μ(U⁻¹U) = μ(UU⁻¹) over all
/// bisections (when the arrow count is within the gate) and constancy on
/// orbits; the verdicts are asserted to agree.
pub fn is_invariant_mean(
    mean: &InvariantMean,
    g: &FiniteGroupoid,
    max_arrows: usize,
) -> Result<MeanInvarianceReport> {
    if mean.weights.len() != g.object_count() {
        return Err(Error::Invalid(format!(
            "mean has {} weights for {} objects",
            mean.weights.len(),
            g.object_count()
        )));
    }
    if mean.weights.iter().any(|w| w.is_negative()) {
        return Err(Error::Precondition("mean weights must be nonnegative".into()));
    }
    let mut certificate = None;

    let orb = orbits_and_isotropy(g);
    let mut orbit_ok = true;
    'orbits: for orbit in &orb.orbits {
        for &y in orbit {
            if mean.weights[y] != mean.weights[orbit[0]] {
                orbit_ok = false;
                certificate = Some(InvarianceCertificate::OrbitPair { a: orbit[0], b: y });
                break 'orbits;
            }
        }
    }

    let bisection_verdict = if g.arrow_count() <= max_arrows {
        let mut ok = true;
        for u in enumerate_bisections(g, max_arrows)? {
            let dom_measure = mean.measure_of(u.arrows().map(|a| g.dom(a)));
            let ran_measure = mean.measure_of(u.arrows().map(|a| g.ran(a)));
            if dom_measure != ran_measure {
                ok = false;
                if certificate.is_none() {
                    certificate = Some(InvarianceCertificate::Bisection {
                        arrows: u.arrows().collect(),
                    });
                }
                break;
            }
        }
        Some(ok)
    } else {
        None
    };

    let verdicts_agree = bisection_verdict.map_or(true, |b| b == orbit_ok);
    if !verdicts_agree {
        return Err(Error::Verification(
            "bisection and orbit-constancy verdicts disagree".into(),
        ));
    }
    Ok(MeanInvarianceReport {
        bisection_verdict,
        orbit_constancy_verdict: orbit_ok,
        invariant: orbit_ok,
        verdicts_agree,
        certificate,
    })
}

/// A linear functional given by its values on the basis of a finite-basis
/// algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFunctional {
    algebra: Arc<FiniteBasisAlgebra>,
    values: Vec<GaussianRational>,
}

impl TraceFunctional {
    pub fn new(algebra: &Arc<FiniteBasisAlgebra>, values: Vec<GaussianRational>) -> Result<Self> {
        if values.len() != algebra.dim() {
            return Err(Error::Invalid("value vector has wrong length".into()));
        }
        Ok(TraceFunctional {
            algebra: Arc::clone(algebra),
            values,
        })
    }

    pub fn algebra(&self) -> &Arc<FiniteBasisAlgebra> {
        &self.algebra
    }

    pub fn basis_value(&self, i: usize) -> &GaussianRational {
        &self.values[i]
    }

    pub fn evaluate(&self, f: &AlgebraElement) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (i, c) in f.coeffs() {
            acc += &(c * &self.values[*i]);
        }
        acc
    }

    /// τ(1), when the algebra is unital.
    pub fn unit_value(&self) -> Option<GaussianRational> {
        let u = AlgebraElement::unit(&self.algebra)?;
        Some(self.evaluate(&u))
    }

    /// τ / τ(1) for unital algebras with τ(1) a positive rational.
    pub fn normalized(&self) -> Result<TraceFunctional> {
        let Some(t) = self.unit_value() else {
            return Err(Error::Precondition("algebra is not unital".into()));
        };
        if !t.is_real() || !t.re.is_positive() {
            return Err(Error::Precondition(format!(
                "τ(1) = {t} is not a positive rational"
            )));
        }
        let inv = t.inv().expect("nonzero");
        let values = self.values.iter().map(|v| v * &inv).collect();
        TraceFunctional::new(&self.algebra, values)
    }
}

/// τ(f) = Σ_x f(id_x) μ(x): integration of f restricted to the unit space.
/// The mean must be invariant (checked by orbit constancy).
pub fn trace_from_mean(ga: &GroupoidAlgebra, mean: &InvariantMean) -> Result<TraceFunctional> {
    let g = &ga.groupoid;
    let report = is_invariant_mean(mean, g, 0)?;
    if !report.invariant {
        return Err(Error::Precondition("mean is not invariant".into()));
    }
    let mut values = vec![GaussianRational::zero(); ga.algebra.dim()];
    for x in 0..g.object_count() {
        values[g.identity_at(x)] = GaussianRational::from_rational(mean.weights[x].clone());
    }
    TraceFunctional::new(&ga.algebra, values)
}

/// μ(x) = τ(δ_{id_x}); errors when a weight is not a nonnegative rational.
pub fn mean_from_trace(ga: &GroupoidAlgebra, trace: &TraceFunctional) -> Result<InvariantMean> {
    let g = &ga.groupoid;
    let mut weights = Vec::with_capacity(g.object_count());
    for x in 0..g.object_count() {
        let v = trace.basis_value(g.identity_at(x));
        if !v.is_real() || v.re.is_negative() {
            return Err(Error::Precondition(format!(
                "weight τ(δ_id_{}) = {v} is not a nonnegative rational; input was not a trace",
                g.object_label(x)
            )));
        }
        weights.push(v.re.clone());
    }
    let mean = InvariantMean { weights };
    let report = is_invariant_mean(&mean, g, 0)?;
    if !report.invariant {
        return Err(Error::Precondition(
            "unit weights of the functional are not invariant".into(),
        ));
    }
    Ok(mean)
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceVerifyReport {
    /// τ(ab) = τ(ba) on all basis pairs.
    pub t1_all_basis_pairs: bool,
    pub t1_certificate: Option<(String, String)>,
    /// τ(a*) = conj τ(a) on basis and random elements.
    pub t2: bool,
    /// τ(aa*) ≥ 0 (exactly, as a rational) on basis and random elements.
    pub t3: bool,
    /// (f∗f*)(id_x) = Σ_{ran γ = x} |f(γ)|² pointwise on random elements,
    /// plus supp((f∗f*)|units) = ran(supp f).
    pub unit_restriction_identity: bool,
    /// Faithfulness, decided exactly via positivity of the associated mean.
    pub t4_faithful: Option<bool>,
    pub random_samples: usize,
    pub all_pass: bool,
}

/// Runs the full trace-axiom suite: T1 exhaustively on basis pairs, T2/T3
/// on basis and seeded random elements, the unit-restriction identity of
/// f∗f*, and faithfulness via the associated mean.
pub fn verify_trace(
    ga: &GroupoidAlgebra,
    trace: &TraceFunctional,
    seed: u64,
    samples: usize,
) -> TraceVerifyReport {
    let alg = &ga.algebra;
    let g = &ga.groupoid;
    let n = alg.dim();
    let mut t1 = true;
    let mut t1_cert = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let ab = AlgebraElement::basis(alg, a)
                .mul(&AlgebraElement::basis(alg, b))
                .expect("same algebra");
            let ba = AlgebraElement::basis(alg, b)
                .mul(&AlgebraElement::basis(alg, a))
                .expect("same algebra");
            if trace.evaluate(&ab) != trace.evaluate(&ba) {
                t1 = false;
                t1_cert = Some((alg.label(a).to_string(), alg.label(b).to_string()));
                break 'outer;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t2 = true;
    let mut t3 = true;
    let mut conv_ok = true;
    let mut check_element = |f: &AlgebraElement, t2: &mut bool, t3: &mut bool, conv: &mut bool| {
        if trace.evaluate(&f.star()) != trace.evaluate(f).conj() {
            *t2 = false;
        }
        let ffs = f.mul(&f.star()).expect("same algebra");
        let v = trace.evaluate(&ffs);
        if !v.is_real() || v.re.is_negative() {
            *t3 = false;
        }
        // Pointwise unit-restriction identity and its support equality.
        let mut ran_support: Vec<usize> = f.support().map(|a| g.ran(a)).collect();
        ran_support.sort_unstable();
        ran_support.dedup();
        for x in 0..g.object_count() {
            let lhs = ffs.coeff(g.identity_at(x));
            let mut rhs = Rational::zero();
            for (arrow, c) in f.coeffs() {
                if g.ran(*arrow) == x {
                    rhs += c.abs_squared();
                }
            }
            if lhs != GaussianRational::from_rational(rhs.clone()) {
                *conv = false;
            }
            if rhs.is_positive() != ran_support.binary_search(&x).is_ok() {
                *conv = false;
            }
        }
    };
    for i in 0..n {
        let f = AlgebraElement::basis(alg, i);
        check_element(&f, &mut t2, &mut t3, &mut conv_ok);
    }
    for _ in 0..samples {
        let f = random_element(alg, &mut rng, 6, true);
        check_element(&f, &mut t2, &mut t3, &mut conv_ok);
    }
    let t4 = mean_from_trace(ga, trace)
        .ok()
        .map(|m| m.is_strictly_positive());
    let all = t1 && t2 && t3 && conv_ok;
    TraceVerifyReport {
        t1_all_basis_pairs: t1,
        t1_certificate: t1_cert,
        t2,
        t3,
        unit_restriction_identity: conv_ok,
        t4_faithful: t4,
        random_samples: samples,
        all_pass: all,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractivityReport {
    pub right_contractive: bool,
    pub left_contractive: bool,
    /// The two directions are equivalent for a trace; the verdicts must
    /// coincide.
    pub verdicts_agree: bool,
    pub bisections_checked: usize,
    pub certificate: Option<(String, String)>,
}

/// Checks τ((as)(as)*) ≤ τ(aa*) and τ((sa)(sa)*) ≤ τ(aa*) exactly, for s
/// ranging over arrow indicators (and all bisection indicators when within
/// the gate), and a over the basis plus seeded random elements.
pub fn contractivity_check(
    ga: &GroupoidAlgebra,
    trace: &TraceFunctional,
    max_arrows: usize,
    seed: u64,
    samples: usize,
) -> Result<ContractivityReport> {
    let alg = &ga.algebra;
    let g = &ga.groupoid;
    let mut spanning: Vec<AlgebraElement> =
        (0..alg.dim()).map(|i| AlgebraElement::basis(alg, i)).collect();
    let mut bisections_checked = 0usize;
    if g.arrow_count() <= max_arrows.min(DEFAULT_BISECTION_ARROW_LIMIT) {
        let bs: Vec<Bisection> = enumerate_bisections(g, max_arrows)?;
        for u in bs {
            if !u.is_empty() {
                let arrows: Vec<usize> = u.arrows().collect();
                spanning.push(ga.indicator(&arrows));
                bisections_checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test_elements: Vec<AlgebraElement> =
        (0..alg.dim()).map(|i| AlgebraElement::basis(alg, i)).collect();
    for _ in 0..samples {
        test_elements.push(random_element(alg, &mut rng, 6, true));
    }
    let real_value = |f: &AlgebraElement| -> Result<Rational> {
        let v = trace.evaluate(f);
        if !v.is_real() {
            return Err(Error::Precondition(
                "functional takes non-real values on positives; not a trace".into(),
            ));
        }
        Ok(v.re)
    };
    let mut right = true;
    let mut left = true;
    let mut certificate = None;
    for a in &test_elements {
        let norm = real_value(&a.mul(&a.star()).expect("same algebra"))?;
        for s in &spanning {
            let as_ = a.mul(s).expect("same algebra");
            let lhs = real_value(&as_.mul(&as_.star()).expect("same algebra"))?;
            if lhs > norm {
                right = false;
                if certificate.is_none() {
                    certificate = Some((format!("{a:?}"), format!("{s:?}")));
                }
            }
            let sa = s.mul(a).expect("same algebra");
            let lhs = real_value(&sa.mul(&sa.star()).expect("same algebra"))?;
            if lhs > norm {
                left = false;
                if certificate.is_none() {
                    certificate = Some((format!("{a:?}"), format!("{s:?}")));
                }
            }
        }
    }
    Ok(ContractivityReport {
        right_contractive: right,
        left_contractive: left,
        verdicts_agree: right == left,
        bisections_checked,
        certificate,
    })
}

/// τ_n on M_n(A): the sum of τ over the diagonal entries.
pub fn trace_amplify(trace: &TraceFunctional, matrix: &MatrixAlgebra) -> Result<TraceFunctional> {
    if *matrix.inner != **trace.algebra() {
        return Err(Error::ContextMismatch);
    }
    let d = matrix.inner.dim();
    let mut values = vec![GaussianRational::zero(); matrix.algebra.dim()];
    for i in 0..matrix.n {
        for b in 0..d {
            values[matrix.basis_index(i, i, b)] = trace.basis_value(b).clone();
        }
    }
    TraceFunctional::new(&matrix.algebra, values)
}

/// Convenience: the canonical trace of a groupoid algebra.
pub fn canonical_trace(ga: &GroupoidAlgebra) -> TraceFunctional {
    let mean = canonical_mean(&ga.groupoid);
    trace_from_mean(ga, &mean).expect("canonical mean is invariant")
}
