//! External JSON interfaces: input schemas for semigroups, groupoids,
//! graphs, means/traces and algebra elements, plus exact serialization of
//! rationals.
//!
//! Rationals travel as [num, den] pairs and Gaussian rationals as
//! [re_num, re_den, im_num, im_den]; integers are emitted as JSON numbers
//! when they fit in i64 and as decimal strings otherwise, and both forms
//! are accepted on input.

use crate::algebra::{
    contracted_algebra, groupoid_algebra, semigroup_algebra, AlgebraElement, FiniteBasisAlgebra,
    GroupoidAlgebra,
};
use crate::error::{Error, Result};
use crate::groupoid::{universal_groupoid, FiniteGroupoid};
use crate::leavitt::DirectedGraph;
use crate::scalar::{GaussianRational, Rational};
use crate::semigroup::{
    closure, validate_inverse, FiniteInverseSemigroup, FiniteSemigroup, PartialBijection,
    DEFAULT_CLOSURE_LIMIT,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::sync::Arc;

pub fn bigint_to_value(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(i) => json!(i),
        None => json!(b.to_string()),
    }
}

pub fn bigint_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Invalid(format!("integer out of range: {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| Error::Invalid(format!("not an integer: {s:?}"))),
        other => Err(Error::Invalid(format!("expected integer, got {other}"))),
    }
}

pub fn rational_to_value(r: &Rational) -> Value {
    Value::Array(vec![bigint_to_value(r.numer()), bigint_to_value(r.denom())])
}

pub fn rational_from_value(v: &Value) -> Result<Rational> {
    let Value::Array(parts) = v else {
        return Err(Error::Invalid(format!("expected [num, den], got {v}")));
    };
    if parts.len() != 2 {
        return Err(Error::Invalid("rational must be [num, den]".into()));
    }
    let num = bigint_from_value(&parts[0])?;
    let den = bigint_from_value(&parts[1])?;
    if den == BigInt::from(0) {
        return Err(Error::Invalid("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

pub fn gaussian_to_value(c: &GaussianRational) -> Value {
    Value::Array(vec![
        bigint_to_value(c.re.numer()),
        bigint_to_value(c.re.denom()),
        bigint_to_value(c.im.numer()),
        bigint_to_value(c.im.denom()),
    ])
}

pub fn gaussian_from_value(v: &Value) -> Result<GaussianRational> {
    let Value::Array(parts) = v else {
        return Err(Error::Invalid(
            "expected [re_num, re_den, im_num, im_den]".into(),
        ));
    };
    if parts.len() != 4 {
        return Err(Error::Invalid(
            "Gaussian rational must be [re_num, re_den, im_num, im_den]".into(),
        ));
    }
    let re_n = bigint_from_value(&parts[0])?;
    let re_d = bigint_from_value(&parts[1])?;
    let im_n = bigint_from_value(&parts[2])?;
    let im_d = bigint_from_value(&parts[3])?;
    let zero = BigInt::from(0);
    if re_d == zero || im_d == zero {
        return Err(Error::Invalid("zero denominator".into()));
    }
    Ok(GaussianRational::new(
        Rational::new(re_n, re_d),
        Rational::new(im_n, im_d),
    ))
}

/// Serde adapter for `Rational` struct fields.
pub mod serde_rational {
    use super::*;
    use serde::de::Error as DeError;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_to_value(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Rational, D::Error> {
        let v = Value::deserialize(d)?;
        rational_from_value(&v).map_err(|e| D::Error::custom(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Semigroup files

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SemigroupSpec {
    #[serde(rename = "partial_bijections")]
    PartialBijections {
        degree: usize,
        generators: Vec<Vec<Option<usize>>>,
    },
    #[serde(rename = "table")]
    Table {
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        star: Option<Vec<usize>>,
    },
}

/// Result of loading a semigroup file: the table semigroup, plus the
/// inverse-semigroup upgrade when one exists.
#[derive(Debug, Clone)]
pub struct LoadedSemigroup {
    pub semigroup: FiniteSemigroup,
    pub inverse: Option<FiniteInverseSemigroup>,
}

pub fn load_semigroup(spec: &SemigroupSpec, max_closure: usize) -> Result<LoadedSemigroup> {
    match spec {
        SemigroupSpec::PartialBijections { degree, generators } => {
            if generators.is_empty() {
                return Err(Error::Precondition("empty generator list".into()));
            }
            let gens: Vec<PartialBijection> = generators
                .iter()
                .map(|m| {
                    if m.len() != *degree {
                        return Err(Error::Invalid(format!(
                            "generator has length {} but degree is {degree}",
                            m.len()
                        )));
                    }
                    PartialBijection::new(m.clone())
                })
                .collect::<Result<_>>()?;
            let c = closure(&gens, max_closure)?;
            Ok(LoadedSemigroup {
                semigroup: c.semigroup.base().clone(),
                inverse: Some(c.semigroup),
            })
        }
        SemigroupSpec::Table {
            labels,
            table,
            star,
        } => {
            let s = FiniteSemigroup::from_table(labels.clone(), table.clone(), star.clone())?;
            let inverse = validate_inverse(s.clone()).ok();
            Ok(LoadedSemigroup {
                semigroup: s,
                inverse,
            })
        }
    }
}

pub fn require_inverse(loaded: &LoadedSemigroup) -> Result<&FiniteInverseSemigroup> {
    loaded.inverse.as_ref().ok_or_else(|| {
        Error::NotInverse("this operation needs an inverse semigroup".into())
    })
}

pub const fn default_closure_limit() -> usize {
    DEFAULT_CLOSURE_LIMIT
}

// ---------------------------------------------------------------------------
// Groupoid files

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidArrowSpec {
    pub dom: usize,
    pub ran: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semigroup_element: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidSpec {
    pub objects: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object_labels: Option<Vec<String>>,
    pub arrows: Vec<GroupoidArrowSpec>,
    pub compose: Vec<(usize, usize, usize)>,
}

pub fn load_groupoid(spec: &GroupoidSpec) -> Result<FiniteGroupoid> {
    let object_labels: Vec<String> = match &spec.object_labels {
        Some(ls) => {
            if ls.len() != spec.objects {
                return Err(Error::Invalid("object_labels length mismatch".into()));
            }
            ls.clone()
        }
        None => (0..spec.objects).map(|i| i.to_string()).collect(),
    };
    let provisional: Vec<(usize, usize, String)> = spec
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            (
                a.dom,
                a.ran,
                a.label.clone().unwrap_or_else(|| format!("a{i}")),
            )
        })
        .collect();
    let g = FiniteGroupoid::from_raw(object_labels.clone(), provisional, &spec.compose)?;
    // Default identity-arrow labels to their object label so weight files
    // can reference units naturally.
    let relabeled: Vec<(usize, usize, String)> = (0..g.arrow_count())
        .map(|a| {
            let label = if spec.arrows[a].label.is_none() && g.is_identity(a) {
                g.object_label(g.dom(a)).to_string()
            } else {
                g.arrow(a).label.clone()
            };
            (g.dom(a), g.ran(a), label)
        })
        .collect();
    FiniteGroupoid::from_raw(object_labels, relabeled, &spec.compose)
}

/// Emits a groupoid in the file schema; `semigroup_elements` attaches the
/// per-arrow labels of a universal groupoid.
pub fn groupoid_to_spec(g: &FiniteGroupoid, semigroup_elements: bool) -> GroupoidSpec {
    let arrows = (0..g.arrow_count())
        .map(|a| GroupoidArrowSpec {
            dom: g.dom(a),
            ran: g.ran(a),
            label: Some(g.arrow(a).label.clone()),
            semigroup_element: semigroup_elements.then(|| g.arrow(a).label.clone()),
        })
        .collect();
    let mut compose = Vec::new();
    for a in 0..g.arrow_count() {
        for b in 0..g.arrow_count() {
            if let Some(c) = g.compose(a, b) {
                compose.push((a, b, c));
            }
        }
    }
    GroupoidSpec {
        objects: g.object_count(),
        object_labels: Some(g.object_labels().to_vec()),
        arrows,
        compose,
    }
}

pub fn universal_groupoid_spec(s: &FiniteInverseSemigroup) -> GroupoidSpec {
    groupoid_to_spec(&universal_groupoid(s), true)
}

// ---------------------------------------------------------------------------
// Graph files

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphEdgeSpec {
    pub name: String,
    pub dom: String,
    pub ran: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<GraphEdgeSpec>,
    /// Relative Cohn vertex set; defaults to all regular vertices (the
    /// Leavitt case).
    #[serde(default, rename = "X", skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
}

pub fn load_graph(spec: &GraphSpec) -> Result<(DirectedGraph, Vec<usize>)> {
    let edges: Vec<(&str, &str, &str)> = spec
        .edges
        .iter()
        .map(|e| (e.name.as_str(), e.dom.as_str(), e.ran.as_str()))
        .collect();
    let g = DirectedGraph::new(spec.vertices.clone(), edges)?;
    let x = match &spec.x {
        Some(names) => {
            let mut xs = Vec::new();
            for name in names {
                let v = g
                    .vertex_index(name)
                    .ok_or_else(|| Error::Invalid(format!("unknown vertex {name:?} in X")))?;
                xs.push(v);
            }
            xs.sort_unstable();
            xs.dedup();
            xs
        }
        None => g.regular_vertices(),
    };
    Ok((g, x))
}

// ---------------------------------------------------------------------------
// Weights (means and unit-supported traces)

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightsSpec {
    /// [label, num, den] triples; labels are object labels (for means) or
    /// arrow labels (for trace files; an object label denotes its identity
    /// arrow).
    pub weights: Vec<(String, Value, Value)>,
}

impl WeightsSpec {
    pub fn from_mean(g: &FiniteGroupoid, weights: &[Rational]) -> Self {
        WeightsSpec {
            weights: (0..g.object_count())
                .map(|x| {
                    (
                        g.object_label(x).to_string(),
                        bigint_to_value(weights[x].numer()),
                        bigint_to_value(weights[x].denom()),
                    )
                })
                .collect(),
        }
    }

    /// Resolve against object labels; unlisted objects get weight 0.
    pub fn as_mean(&self, g: &FiniteGroupoid) -> Result<Vec<Rational>> {
        let mut weights = vec![Rational::from_integer(0.into()); g.object_count()];
        for (label, num, den) in &self.weights {
            let x = (0..g.object_count())
                .find(|&x| g.object_label(x) == label)
                .ok_or_else(|| Error::Invalid(format!("unknown object {label:?}")))?;
            weights[x] =
                Rational::new(bigint_from_value(num)?, bigint_from_value(den)?);
        }
        Ok(weights)
    }

    /// Resolve against arrow labels (object labels fall back to the
    /// identity arrow); unlisted arrows get value 0.
    pub fn as_functional_values(&self, g: &FiniteGroupoid) -> Result<Vec<GaussianRational>> {
        use num_traits::Zero;
        let mut values = vec![GaussianRational::zero(); g.arrow_count()];
        for (label, num, den) in &self.weights {
            let arrow = g.arrow_index(label).or_else(|| {
                (0..g.object_count())
                    .find(|&x| g.object_label(x) == label)
                    .map(|x| g.identity_at(x))
            });
            let Some(a) = arrow else {
                return Err(Error::Invalid(format!("unknown arrow {label:?}")));
            };
            values[a] = GaussianRational::from_rational(Rational::new(
                bigint_from_value(num)?,
                bigint_from_value(den)?,
            ));
        }
        Ok(values)
    }
}

// ---------------------------------------------------------------------------
// Algebras and elements

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AlgebraSpec {
    #[serde(rename = "semigroup_algebra")]
    Semigroup { semigroup: SemigroupSpec },
    #[serde(rename = "contracted_semigroup_algebra")]
    Contracted {
        semigroup: SemigroupSpec,
        ideal: Vec<String>,
    },
    #[serde(rename = "groupoid_algebra")]
    Groupoid { groupoid: GroupoidSpec },
    #[serde(rename = "universal_groupoid_algebra")]
    UniversalGroupoid { semigroup: SemigroupSpec },
}

#[derive(Debug, Clone)]
pub struct LoadedAlgebra {
    pub algebra: Arc<FiniteBasisAlgebra>,
    /// Present when the algebra is a groupoid convolution algebra.
    pub groupoid: Option<GroupoidAlgebra>,
}

pub fn load_algebra(spec: &AlgebraSpec, max_closure: usize) -> Result<LoadedAlgebra> {
    match spec {
        AlgebraSpec::Semigroup { semigroup } => {
            let loaded = load_semigroup(semigroup, max_closure)?;
            let inv = require_inverse(&loaded)?;
            Ok(LoadedAlgebra {
                algebra: semigroup_algebra(inv)?,
                groupoid: None,
            })
        }
        AlgebraSpec::Contracted { semigroup, ideal } => {
            let loaded = load_semigroup(semigroup, max_closure)?;
            let ids: Vec<usize> = ideal
                .iter()
                .map(|l| {
                    loaded
                        .semigroup
                        .index_of(l)
                        .ok_or_else(|| Error::Invalid(format!("unknown element {l:?}")))
                })
                .collect::<Result<_>>()?;
            Ok(LoadedAlgebra {
                algebra: contracted_algebra(&loaded.semigroup, &ids)?,
                groupoid: None,
            })
        }
        AlgebraSpec::Groupoid { groupoid } => {
            let g = load_groupoid(groupoid)?;
            let ga = groupoid_algebra(&g)?;
            Ok(LoadedAlgebra {
                algebra: ga.algebra.clone(),
                groupoid: Some(ga),
            })
        }
        AlgebraSpec::UniversalGroupoid { semigroup } => {
            let loaded = load_semigroup(semigroup, max_closure)?;
            let inv = require_inverse(&loaded)?;
            let ga = groupoid_algebra(&universal_groupoid(inv))?;
            Ok(LoadedAlgebra {
                algebra: ga.algebra.clone(),
                groupoid: Some(ga),
            })
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementSpec {
    pub algebra: AlgebraSpec,
    /// [label, [re_num, re_den, im_num, im_den]] pairs.
    pub coeffs: Vec<(String, Value)>,
}

pub fn element_from_coeffs(
    algebra: &Arc<FiniteBasisAlgebra>,
    coeffs: &[(String, Value)],
) -> Result<AlgebraElement> {
    let mut comb = Vec::new();
    for (label, v) in coeffs {
        let i = algebra
            .index_of(label)
            .ok_or_else(|| Error::Invalid(format!("unknown basis label {label:?}")))?;
        comb.push((i, gaussian_from_value(v)?));
    }
    comb.sort_by_key(|(i, _)| *i);
    Ok(AlgebraElement::from_combination(algebra, comb))
}

pub fn element_to_coeffs(f: &AlgebraElement) -> Vec<(String, Value)> {
    f.coeffs()
        .iter()
        .map(|(i, c)| (f.algebra().label(*i).to_string(), gaussian_to_value(c)))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessFileSpec {
    pub algebra: AlgebraSpec,
    pub e: Vec<(String, Value)>,
    pub a: Vec<(String, Value)>,
    pub b: Vec<(String, Value)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::rat;

    #[test]
    fn rational_round_trip_with_big_integers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let r = Rational::new(big.clone(), BigInt::from(7));
        let v = rational_to_value(&r);
        assert_eq!(rational_from_value(&v).unwrap(), r);
        // Big numerators serialize as strings, small ones as numbers.
        assert!(v[0].is_string());
        let small = rational_to_value(&rat(3, 4));
        assert!(small[0].is_number());
    }

    #[test]
    fn semigroup_table_spec_round_trip() {
        let s = corpus::brandt(2);
        let spec = SemigroupSpec::Table {
            labels: s.labels().to_vec(),
            table: (0..s.size())
                .map(|i| (0..s.size()).map(|j| s.mul(i, j)).collect())
                .collect(),
            star: Some((0..s.size()).map(|i| s.star(i)).collect()),
        };
        let loaded = load_semigroup(&spec, 1000).unwrap();
        assert!(loaded.inverse.is_some());
        assert_eq!(loaded.semigroup.size(), 5);
    }

    #[test]
    fn partial_bijection_spec_builds_i2() {
        let spec = SemigroupSpec::PartialBijections {
            degree: 2,
            generators: vec![
                vec![Some(1), Some(0)],
                vec![Some(0), None],
            ],
        };
        let loaded = load_semigroup(&spec, 1000).unwrap();
        assert_eq!(loaded.semigroup.size(), 7);
    }

    #[test]
    fn groupoid_spec_round_trip_preserves_structure() {
        let s = corpus::brandt(2);
        let spec = universal_groupoid_spec(&s);
        let g = load_groupoid(&spec).unwrap();
        assert_eq!(g.object_count(), 3);
        assert_eq!(g.arrow_count(), 5);
        assert!(g.arrow_index("E12").is_some());
    }

    #[test]
    fn default_identity_labels_fall_back_to_object_labels() {
        let spec = GroupoidSpec {
            objects: 1,
            object_labels: None,
            arrows: vec![GroupoidArrowSpec {
                dom: 0,
                ran: 0,
                label: None,
                semigroup_element: None,
            }],
            compose: vec![(0, 0, 0)],
        };
        let g = load_groupoid(&spec).unwrap();
        assert_eq!(g.arrow(0).label, "0");
    }

    #[test]
    fn graph_spec_defaults_x_to_regular_vertices() {
        let spec = GraphSpec {
            vertices: vec!["v".into(), "w".into()],
            edges: vec![GraphEdgeSpec {
                name: "e".into(),
                dom: "v".into(),
                ran: "w".into(),
            }],
            x: None,
        };
        let (g, x) = load_graph(&spec).unwrap();
        assert_eq!(x, vec![g.vertex_index("v").unwrap()]);
    }

    #[test]
    fn element_spec_loads_against_semigroup_algebra() {
        let spec = AlgebraSpec::Semigroup {
            semigroup: SemigroupSpec::Table {
                labels: vec!["e".into(), "0".into()],
                table: vec![vec![0, 1], vec![1, 1]],
                star: None,
            },
        };
        let loaded = load_algebra(&spec, 1000).unwrap();
        let elt = element_from_coeffs(
            &loaded.algebra,
            &[("e".to_string(), json!([1, 2, 0, 1]))],
        )
        .unwrap();
        assert_eq!(elt.coeff(0), GaussianRational::from_parts(1, 2, 0, 1));
        let coeffs = element_to_coeffs(&elt);
        assert_eq!(coeffs.len(), 1);
        assert_eq!(coeffs[0].0, "e");
    }
}
