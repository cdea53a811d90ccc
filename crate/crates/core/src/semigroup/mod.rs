//! Finite semigroups with multiplication tables, *-semigroups, and finite
//! inverse semigroups: validation, the natural partial order, maximal
//! subgroups, and the D-class stable-finiteness verdict.

mod green;
mod pbij;
mod verdict;

pub use green::{green, GreenStructure};
pub use pbij::{closure, ClosureResult, PartialBijection, DEFAULT_CLOSURE_LIMIT};
pub use verdict::{
    d_class_report, is_stable, j_class_classify, j_class_classify_with, DClassEntry, DClassReport,
    JClassKind, StabilityReport,
};

use crate::error::{Error, Result};
use std::ops::Deref;

/// A finite semigroup given by a full multiplication table, with an optional
/// involution making it a *-semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    labels: Vec<String>,
    table: Vec<usize>,
    star: Option<Vec<usize>>,
}

impl FiniteSemigroup {
    /// Validates associativity on all triples and, when a star is given, the
    /// involution laws (st)* = t*s* and s** = s.
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        star: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("empty semigroup".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::Invalid(format!("duplicate label {l:?}")));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("table is not {n}x{n}")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&v| v >= n) {
            return Err(Error::Invalid(format!("table entry {bad} out of range")));
        }
        if let Some(ref st) = star {
            if st.len() != n || st.iter().any(|&v| v >= n) {
                return Err(Error::Invalid("star map is not a self-map".into()));
            }
        }
        let s = FiniteSemigroup {
            labels,
            table: flat,
            star,
        };
        s.check_associativity()?;
        s.check_star_axioms()?;
        Ok(s)
    }

    /// Construction path for tables that are associative by construction
    /// (closures of transformation semigroups, direct products, opposites).
    pub(crate) fn from_parts_trusted(
        labels: Vec<String>,
        table: Vec<usize>,
        star: Option<Vec<usize>>,
    ) -> Self {
        FiniteSemigroup {
            labels,
            table,
            star,
        }
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_star_axioms(&self) -> Result<()> {
        let Some(ref st) = self.star else {
            return Ok(());
        };
        let n = self.size();
        for s in 0..n {
            if st[st[s]] != s {
                return Err(Error::Invalid(format!(
                    "star is not involutive at {}",
                    self.labels[s]
                )));
            }
            for t in 0..n {
                if st[self.mul(s, t)] != self.mul(st[t], st[s]) {
                    return Err(Error::Invalid(format!(
                        "(st)* != t*s* at ({}, {})",
                        self.labels[s], self.labels[t]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size() + j]
    }

    pub fn star_map(&self) -> Option<&[usize]> {
        self.star.as_deref()
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.mul(i, i) == i
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.is_idempotent(i)).collect()
    }

    /// Two-sided identity, when present.
    pub fn identity(&self) -> Option<usize> {
        (0..self.size()).find(|&e| {
            (0..self.size()).all(|s| self.mul(e, s) == s && self.mul(s, e) == s)
        })
    }

    pub fn is_monoid(&self) -> bool {
        self.identity().is_some()
    }

    /// The opposite semigroup (transposed table).  A star map carries over
    /// unchanged.
    pub fn opposite(&self) -> FiniteSemigroup {
        let n = self.size();
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.mul(j, i);
            }
        }
        FiniteSemigroup {
            labels: self.labels.clone(),
            table,
            star: self.star.clone(),
        }
    }

    /// Product of a slice of elements, left to right.
    pub fn product(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mul(acc, x)))
    }
}

/// A finite inverse semigroup: every element has a unique weak inverse, and
/// idempotents commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInverseSemigroup {
    base: FiniteSemigroup,
    idempotents: Vec<usize>,
}

impl Deref for FiniteInverseSemigroup {
    type Target = FiniteSemigroup;
    fn deref(&self) -> &FiniteSemigroup {
        &self.base
    }
}

impl FiniteInverseSemigroup {
    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn idempotent_set(&self) -> &[usize] {
        &self.idempotents
    }

    #[inline]
    pub fn star(&self, i: usize) -> usize {
        self.base.star.as_ref().expect("inverse semigroup has star")[i]
    }

    /// dom(s) = s*s as an idempotent index.
    pub fn dom(&self, s: usize) -> usize {
        self.mul(self.star(s), s)
    }

    /// ran(s) = ss* as an idempotent index.
    pub fn ran(&self, s: usize) -> usize {
        self.mul(s, self.star(s))
    }
}

/// Checks that every element has a unique weak inverse and that idempotents
/// commute, then records the involution and the idempotent set.
pub fn validate_inverse(s: FiniteSemigroup) -> Result<FiniteInverseSemigroup> {
    let n = s.size();
    let mut star = vec![0usize; n];
    for a in 0..n {
        let mut inverses = (0..n).filter(|&b| {
            s.mul(s.mul(a, b), a) == a && s.mul(s.mul(b, a), b) == b
        });
        let Some(first) = inverses.next() else {
            return Err(Error::NotRegular(format!(
                "element {} has no weak inverse",
                s.label(a)
            )));
        };
        if let Some(second) = inverses.next() {
            return Err(Error::NotInverse(format!(
                "element {} has multiple weak inverses ({} and {})",
                s.label(a),
                s.label(first),
                s.label(second)
            )));
        }
        star[a] = first;
    }
    let idempotents: Vec<usize> = (0..n).filter(|&i| s.is_idempotent(i)).collect();
    for &e in &idempotents {
        for &f in &idempotents {
            if s.mul(e, f) != s.mul(f, e) {
                return Err(Error::NotInverse(format!(
                    "idempotents {} and {} do not commute",
                    s.label(e),
                    s.label(f)
                )));
            }
        }
    }
    if let Some(given) = s.star_map() {
        if given != star.as_slice() {
            return Err(Error::Invalid(
                "provided star map differs from the unique inverse map".into(),
            ));
        }
    }
    let base = FiniteSemigroup {
        labels: s.labels,
        table: s.table,
        star: Some(star),
    };
    base.check_star_axioms()?;
    Ok(FiniteInverseSemigroup { base, idempotents })
}

/// The natural partial order on an inverse semigroup: s ≤ t iff s = te for
/// some idempotent e.
#[derive(Debug, Clone)]
pub struct NaturalOrder {
    n: usize,
    leq: Vec<bool>,
}

impl NaturalOrder {
    #[inline]
    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.leq[s * self.n + t]
    }

    /// Elements strictly below s, in index order.
    pub fn strictly_below(&self, s: usize) -> Vec<usize> {
        (0..self.n).filter(|&t| t != s && self.leq(t, s)).collect()
    }

    /// The order ideal {t : t ≤ s}, in index order.
    pub fn below(&self, s: usize) -> Vec<usize> {
        (0..self.n).filter(|&t| self.leq(t, s)).collect()
    }
}

pub fn natural_order(s: &FiniteInverseSemigroup) -> Result<NaturalOrder> {
    let n = s.size();
    let idems = s.idempotent_set();
    let mut leq = vec![false; n * n];
    for b in 0..n {
        for &e in idems {
            leq[s.mul(b, e) * n + b] = true;
        }
    }
    let order = NaturalOrder { n, leq };
    for a in 0..n {
        if !order.leq(a, a) {
            return Err(Error::Verification(format!(
                "natural order not reflexive at {}",
                s.label(a)
            )));
        }
        for b in 0..n {
            if a != b && order.leq(a, b) && order.leq(b, a) {
                return Err(Error::Verification(format!(
                    "natural order not antisymmetric at ({}, {})",
                    s.label(a),
                    s.label(b)
                )));
            }
            for c in 0..n {
                if order.leq(a, b) && order.leq(b, c) && !order.leq(a, c) {
                    return Err(Error::Verification(format!(
                        "natural order not transitive at ({}, {}, {})",
                        s.label(a),
                        s.label(b),
                        s.label(c)
                    )));
                }
            }
        }
    }
    Ok(order)
}

/// A maximal subgroup together with its embedding into the ambient semigroup.
#[derive(Debug, Clone)]
pub struct MaximalSubgroup {
    pub group: FiniteSemigroup,
    /// members[i] is the ambient index of group element i.
    pub members: Vec<usize>,
}

/// The maximal subgroup at an idempotent e of an inverse semigroup: all s
/// with ss* = e = s*s.
pub fn maximal_subgroup(s: &FiniteInverseSemigroup, e: usize) -> Result<MaximalSubgroup> {
    if !s.is_idempotent(e) {
        return Err(Error::Precondition(format!(
            "{} is not an idempotent",
            s.label(e)
        )));
    }
    let members: Vec<usize> = (0..s.size())
        .filter(|&x| s.ran(x) == e && s.dom(x) == e)
        .collect();
    subgroup_from_members(s.base(), e, members)
}

/// The H-class of an idempotent in an arbitrary finite semigroup, verified to
/// be a group.  Used by the Schützenberger machinery where the ambient
/// semigroup need not be inverse.
pub fn maximal_subgroup_at(
    s: &FiniteSemigroup,
    g: &GreenStructure,
    e: usize,
) -> Result<MaximalSubgroup> {
    if !s.is_idempotent(e) {
        return Err(Error::Precondition(format!(
            "{} is not an idempotent",
            s.label(e)
        )));
    }
    let members = g.h_classes[g.h_class_of[e]].clone();
    subgroup_from_members(s, e, members)
}

fn subgroup_from_members(
    s: &FiniteSemigroup,
    e: usize,
    members: Vec<usize>,
) -> Result<MaximalSubgroup> {
    let m = members.len();
    let pos = |x: usize| members.iter().position(|&y| y == x);
    let mut table = vec![0usize; m * m];
    for i in 0..m {
        for j in 0..m {
            let p = s.mul(members[i], members[j]);
            let Some(k) = pos(p) else {
                return Err(Error::Verification(format!(
                    "H-class of {} is not closed under multiplication",
                    s.label(e)
                )));
            };
            table[i * m + j] = k;
        }
    }
    let labels: Vec<String> = members.iter().map(|&x| s.label(x).to_string()).collect();
    // Group inverse of each member, found inside the subgroup.
    let ident = pos(e).ok_or_else(|| {
        Error::Verification(format!("idempotent {} missing from its H-class", s.label(e)))
    })?;
    let mut star = vec![0usize; m];
    for i in 0..m {
        let Some(inv) = (0..m).find(|&j| table[i * m + j] == ident && table[j * m + i] == ident)
        else {
            return Err(Error::Verification(format!(
                "H-class member {} has no inverse",
                labels[i]
            )));
        };
        star[i] = inv;
    }
    let group = FiniteSemigroup::from_parts_trusted(labels, table, Some(star));
    Ok(MaximalSubgroup { group, members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn two_element_semilattice_is_inverse_with_identity_star() {
        let s = corpus::chain_semilattice(2);
        assert_eq!(s.size(), 2);
        for i in 0..2 {
            assert_eq!(s.star(i), i);
        }
    }

    #[test]
    fn left_zero_semigroup_is_not_inverse() {
        let table = vec![vec![0, 0], vec![1, 1]];
        let s = FiniteSemigroup::from_table(vec!["x".into(), "y".into()], table, None).unwrap();
        match validate_inverse(s) {
            Err(Error::NotInverse(_)) => {}
            other => panic!("expected NotInverse, got {other:?}"),
        }
    }

    #[test]
    fn b2_is_inverse_and_star_swaps_matrix_units() {
        let s = corpus::brandt(2);
        let e12 = s.index_of("E12").unwrap();
        let e21 = s.index_of("E21").unwrap();
        assert_eq!(s.star(e12), e21);
        assert_eq!(s.idempotent_set().len(), 3);
    }

    #[test]
    fn natural_order_on_b2_puts_zero_below_everything() {
        let s = corpus::brandt(2);
        let ord = natural_order(&s).unwrap();
        let zero = s.index_of("0").unwrap();
        for x in 0..s.size() {
            assert!(ord.leq(zero, x));
        }
        let e12 = s.index_of("E12").unwrap();
        let e21 = s.index_of("E21").unwrap();
        let e11 = s.index_of("E11").unwrap();
        assert!(!ord.leq(e12, e21) && !ord.leq(e21, e12));
        assert!(!ord.leq(e11, e12) && !ord.leq(e12, e11));
    }

    #[test]
    fn natural_order_on_a_group_is_trivial() {
        let g = corpus::cyclic_group(3);
        let ord = natural_order(&g).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(ord.leq(a, b), a == b);
            }
        }
    }

    #[test]
    fn maximal_subgroup_of_i2_at_identity_has_order_two() {
        let s = corpus::symmetric_inverse_monoid(2).semigroup;
        let e = s.identity().unwrap();
        let sub = maximal_subgroup(&s, e).unwrap();
        assert_eq!(sub.group.size(), 2);
    }

    #[test]
    fn maximal_subgroup_at_b2_idempotent_is_trivial() {
        let s = corpus::brandt(2);
        let e11 = s.index_of("E11").unwrap();
        let sub = maximal_subgroup(&s, e11).unwrap();
        assert_eq!(sub.group.size(), 1);
    }

    #[test]
    fn maximal_subgroup_rejects_non_idempotent() {
        let s = corpus::brandt(2);
        let e12 = s.index_of("E12").unwrap();
        assert!(maximal_subgroup(&s, e12).is_err());
    }

    #[test]
    fn conjugation_gives_isomorphic_subgroups_across_d_class() {
        // e D f via s with s*s = e, ss* = f; then x -> s x s* maps H_e to H_f.
        let s = corpus::symmetric_inverse_monoid(3).semigroup;
        let g = green(s.base());
        let idems = s.idempotent_set().to_vec();
        for &e in &idems {
            for &f in &idems {
                if g.d_class_of[e] != g.d_class_of[f] {
                    continue;
                }
                let conj = (0..s.size())
                    .find(|&x| s.dom(x) == e && s.ran(x) == f)
                    .expect("D-equivalent idempotents are connected");
                let he = maximal_subgroup(&s, e).unwrap();
                let hf = maximal_subgroup(&s, f).unwrap();
                assert_eq!(he.group.size(), hf.group.size());
                // x -> conj x conj* is a bijection H_e -> H_f preserving products.
                let image: Vec<usize> = he
                    .members
                    .iter()
                    .map(|&x| s.mul(s.mul(conj, x), s.star(conj)))
                    .collect();
                for &y in &image {
                    assert!(hf.members.contains(&y));
                }
                for (i, &x) in he.members.iter().enumerate() {
                    for (j, &y) in he.members.iter().enumerate() {
                        let xy = he.group.mul(i, j);
                        let lhs = s.mul(s.mul(conj, s.mul(x, y)), s.star(conj));
                        let rhs = s.mul(image[i], image[j]);
                        assert_eq!(lhs, rhs);
                        let _ = xy;
                    }
                }
            }
        }
    }
}
