//! Finite discrete groupoids: validation, orbits and isotropy, bisections as
//! an inverse monoid, the universal groupoid of a finite inverse semigroup,
//! and restriction to invariant object sets.
//!
//! At finite scale the unit space is discrete, every subset is compact open,
//! and the groupoid is automatically ample and Hausdorff; no topology is
//! represented because all topological hypotheses hold by default.

use crate::error::{Error, Result};
use crate::semigroup::{FiniteInverseSemigroup, FiniteSemigroup};
use std::collections::HashMap;

pub const DEFAULT_BISECTION_ARROW_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub dom: usize,
    pub ran: usize,
    pub label: String,
}

/// A finite groupoid: objects 0..k, arrows with explicit partial composition
/// and inversion.  `compose(a, b)` is "a after b" and is defined exactly when
/// dom(a) = ran(b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    object_labels: Vec<String>,
    arrows: Vec<Arrow>,
    /// Flattened arrow-count × arrow-count table of compositions.
    compose: Vec<Option<usize>>,
    invert: Vec<usize>,
    /// identity arrow at each object.
    identity: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn object_count(&self) -> usize {
        self.object_labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.object_labels[x]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.object_labels
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn dom(&self, a: usize) -> usize {
        self.arrows[a].dom
    }

    pub fn ran(&self, a: usize) -> usize {
        self.arrows[a].ran
    }

    /// a∘b, defined when dom(a) = ran(b).
    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose[a * self.arrows.len() + b]
    }

    pub fn invert(&self, a: usize) -> usize {
        self.invert[a]
    }

    pub fn identity_at(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identity[self.arrows[a].dom] == a
    }

    /// Builds and fully validates a groupoid from raw data.  The composition
    /// is given as triples (a, b, a∘b); identities and inverses are derived
    /// and all category and inverse axioms are checked exhaustively.
    pub fn from_raw(
        object_labels: Vec<String>,
        arrows: Vec<(usize, usize, String)>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let k = object_labels.len();
        let n = arrows.len();
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(dom, ran, label)| Arrow { dom, ran, label })
            .collect();
        for (i, a) in arrows.iter().enumerate() {
            if a.dom >= k || a.ran >= k {
                return Err(Error::Invalid(format!(
                    "arrow {i} has endpoint out of range"
                )));
            }
        }
        let mut table = vec![None; n * n];
        for &(a, b, c) in compositions {
            if a >= n || b >= n || c >= n {
                return Err(Error::Invalid(format!(
                    "composition entry ({a},{b},{c}) out of range"
                )));
            }
            if arrows[a].dom != arrows[b].ran {
                return Err(Error::Invalid(format!(
                    "compose({a},{b}) declared but dom(arrow {a}) != ran(arrow {b})"
                )));
            }
            if table[a * n + b].is_some() {
                return Err(Error::Invalid(format!("compose({a},{b}) declared twice")));
            }
            if arrows[c].dom != arrows[b].dom || arrows[c].ran != arrows[a].ran {
                return Err(Error::Invalid(format!(
                    "compose({a},{b}) = {c} has wrong endpoints"
                )));
            }
            table[a * n + b] = Some(c);
        }
        // Totality on composable pairs.
        for a in 0..n {
            for b in 0..n {
                if arrows[a].dom == arrows[b].ran && table[a * n + b].is_none() {
                    return Err(Error::Invalid(format!(
                        "composable pair ({a},{b}) has no declared composite"
                    )));
                }
            }
        }
        let g = Self::assemble(object_labels, arrows, table)?;
        g.validate()?;
        Ok(g)
    }

    /// Internal constructor for groupoids built programmatically; derives
    /// identities and inverses and runs the same validation.
    pub(crate) fn from_compose_table(
        object_labels: Vec<String>,
        arrows: Vec<Arrow>,
        compose: Vec<Option<usize>>,
    ) -> Result<Self> {
        let g = Self::assemble(object_labels, arrows, compose)?;
        g.validate()?;
        Ok(g)
    }

    fn assemble(
        object_labels: Vec<String>,
        arrows: Vec<Arrow>,
        compose: Vec<Option<usize>>,
    ) -> Result<Self> {
        let k = object_labels.len();
        let n = arrows.len();
        // Identities: at each object x an arrow e: x→x neutral on both sides.
        let mut identity = vec![usize::MAX; k];
        for e in 0..n {
            if arrows[e].dom != arrows[e].ran {
                continue;
            }
            let x = arrows[e].dom;
            let neutral = (0..n).all(|a| {
                (arrows[a].dom != x || compose[a * n + e] == Some(a))
                    && (arrows[a].ran != x || compose[e * n + a] == Some(a))
            });
            if neutral {
                identity[x] = e;
            }
        }
        if let Some(x) = (0..k).find(|&x| identity[x] == usize::MAX) {
            return Err(Error::Invalid(format!("object {x} has no identity arrow")));
        }
        // Inverses.
        let mut invert = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n).find(|&b| {
                compose[a * n + b] == Some(identity[arrows[a].ran])
                    && compose[b * n + a] == Some(identity[arrows[a].dom])
            });
            match inv {
                Some(b) => invert[a] = b,
                None => {
                    return Err(Error::Invalid(format!("arrow {a} has no inverse")));
                }
            }
        }
        Ok(FiniteGroupoid {
            object_labels,
            arrows,
            compose,
            invert,
            identity,
        })
    }

    /// Exhaustive category and inverse axioms.
    fn validate(&self) -> Result<()> {
        let n = self.arrows.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.compose(a, b);
                if (self.arrows[a].dom == self.arrows[b].ran) != ab.is_some() {
                    return Err(Error::Invalid(format!(
                        "composition of ({a},{b}) defined on the wrong domain"
                    )));
                }
                if let Some(c) = ab {
                    if self.arrows[c].dom != self.arrows[b].dom
                        || self.arrows[c].ran != self.arrows[a].ran
                    {
                        return Err(Error::Invalid(format!(
                            "compose({a},{b}) has wrong endpoints"
                        )));
                    }
                }
                for c in 0..n {
                    let left = ab.and_then(|x| self.compose(x, c));
                    let right = self.compose(b, c).and_then(|y| self.compose(a, y));
                    if left != right {
                        return Err(Error::Invalid(format!(
                            "associativity fails on arrows ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            let inv = self.invert[a];
            if self.arrows[inv].dom != self.arrows[a].ran
                || self.arrows[inv].ran != self.arrows[a].dom
            {
                return Err(Error::Invalid(format!(
                    "inverse of arrow {a} has wrong endpoints"
                )));
            }
            if self.compose(inv, a) != Some(self.identity[self.arrows[a].dom])
                || self.compose(a, inv) != Some(self.identity[self.arrows[a].ran])
            {
                return Err(Error::Invalid(format!("arrow {a} fails the inverse law")));
            }
        }
        Ok(())
    }

    /// One-object groupoid from a finite group.
    pub fn from_group(group: &FiniteSemigroup) -> Result<Self> {
        let Some(ident) = group.identity() else {
            return Err(Error::Precondition("not a monoid".into()));
        };
        let n = group.size();
        for a in 0..n {
            if !(0..n).any(|b| group.mul(a, b) == ident && group.mul(b, a) == ident) {
                return Err(Error::Precondition(format!(
                    "{} has no inverse; not a group",
                    group.label(a)
                )));
            }
        }
        let arrows: Vec<Arrow> = (0..n)
            .map(|i| Arrow {
                dom: 0,
                ran: 0,
                label: group.label(i).to_string(),
            })
            .collect();
        let mut compose = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                compose[a * n + b] = Some(group.mul(a, b));
            }
        }
        FiniteGroupoid::from_compose_table(vec!["*".to_string()], arrows, compose)
    }

    /// The pair groupoid on k objects: arrows (i ← j) with composition
    /// (i ← j)(j ← l) = (i ← l).
    pub fn pair_groupoid(k: usize) -> Self {
        let object_labels: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        for i in 0..k {
            for j in 0..k {
                arrows.push(Arrow {
                    dom: j,
                    ran: i,
                    label: format!("({i}<-{j})"),
                });
            }
        }
        let n = k * k;
        let idx = |i: usize, j: usize| i * k + j;
        let mut compose = vec![None; n * n];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    compose[idx(i, j) * n + idx(j, l)] = Some(idx(i, l));
                }
            }
        }
        FiniteGroupoid::from_compose_table(object_labels, arrows, compose)
            .expect("pair groupoid is a groupoid")
    }

    /// Disjoint union with relabelled objects and arrows.
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let k1 = self.object_count();
        let n1 = self.arrow_count();
        let mut object_labels: Vec<String> = self
            .object_labels
            .iter()
            .map(|l| format!("L:{l}"))
            .collect();
        object_labels.extend(other.object_labels.iter().map(|l| format!("R:{l}")));
        let mut arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| Arrow {
                dom: a.dom,
                ran: a.ran,
                label: format!("L:{}", a.label),
            })
            .collect();
        arrows.extend(other.arrows.iter().map(|a| Arrow {
            dom: a.dom + k1,
            ran: a.ran + k1,
            label: format!("R:{}", a.label),
        }));
        let n = arrows.len();
        let mut compose = vec![None; n * n];
        for a in 0..n1 {
            for b in 0..n1 {
                compose[a * n + b] = self.compose(a, b);
            }
        }
        for a in 0..other.arrow_count() {
            for b in 0..other.arrow_count() {
                compose[(a + n1) * n + (b + n1)] = other.compose(a, b).map(|c| c + n1);
            }
        }
        FiniteGroupoid::from_compose_table(object_labels, arrows, compose)
            .expect("disjoint union of groupoids is a groupoid")
    }
}

/// Orbit partition with basepoints, transversal arrows, and isotropy groups.
#[derive(Debug, Clone)]
pub struct OrbitDecomposition {
    pub orbit_of: Vec<usize>,
    /// Orbits in order of least object index; members sorted.
    pub orbits: Vec<Vec<usize>>,
    /// Per orbit, the least object.
    pub basepoints: Vec<usize>,
    /// transversal[x] is an arrow basepoint(orbit of x) → x.
    pub transversal: Vec<usize>,
    pub isotropy: Vec<IsotropyGroup>,
}

/// Isotropy group at an orbit basepoint, as a group table plus the arrow ids
/// realizing its elements.
#[derive(Debug, Clone)]
pub struct IsotropyGroup {
    pub group: FiniteSemigroup,
    pub arrow_ids: Vec<usize>,
}

pub fn orbits_and_isotropy(g: &FiniteGroupoid) -> OrbitDecomposition {
    let k = g.object_count();
    let mut orbit_of = vec![usize::MAX; k];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut basepoints = Vec::new();
    let mut transversal = vec![usize::MAX; k];
    for x in 0..k {
        if orbit_of[x] != usize::MAX {
            continue;
        }
        let orbit_id = orbits.len();
        let mut members = vec![x];
        orbit_of[x] = orbit_id;
        transversal[x] = g.identity_at(x);
        let mut queue = std::collections::VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for a in 0..g.arrow_count() {
                if g.dom(a) == y {
                    let z = g.ran(a);
                    if orbit_of[z] == usize::MAX {
                        orbit_of[z] = orbit_id;
                        transversal[z] = g
                            .compose(a, transversal[y])
                            .expect("transversal arrows compose");
                        members.push(z);
                        queue.push_back(z);
                    }
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
        basepoints.push(x);
    }
    let mut isotropy = Vec::new();
    for &bp in &basepoints {
        let arrow_ids: Vec<usize> = (0..g.arrow_count())
            .filter(|&a| g.dom(a) == bp && g.ran(a) == bp)
            .collect();
        let m = arrow_ids.len();
        let pos = |a: usize| arrow_ids.iter().position(|&b| b == a).unwrap();
        let mut table = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                let c = g
                    .compose(arrow_ids[i], arrow_ids[j])
                    .expect("isotropy arrows compose");
                table[i * m + j] = pos(c);
            }
        }
        let labels: Vec<String> = arrow_ids
            .iter()
            .map(|&a| g.arrow(a).label.clone())
            .collect();
        let star: Vec<usize> = arrow_ids.iter().map(|&a| pos(g.invert(a))).collect();
        let group = FiniteSemigroup::from_parts_trusted(labels, table, Some(star));
        debug_assert!(group.identity().is_some());
        isotropy.push(IsotropyGroup { group, arrow_ids });
    }
    OrbitDecomposition {
        orbit_of,
        orbits,
        basepoints,
        transversal,
        isotropy,
    }
}

/// A bisection: a set of arrows on which dom and ran are both injective,
/// stored as a bitmask over arrow indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bisection(pub u32);

impl Bisection {
    pub fn arrows(self) -> impl Iterator<Item = usize> {
        (0..32u32)
            .filter(move |i| self.0 >> i & 1 == 1)
            .map(|i| i as usize)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 >> a & 1 == 1
    }
}

/// Checks the defining injectivity conditions.
pub fn is_bisection(g: &FiniteGroupoid, arrows: &[usize]) -> bool {
    let mut doms = std::collections::HashSet::new();
    let mut rans = std::collections::HashSet::new();
    arrows
        .iter()
        .all(|&a| doms.insert(g.dom(a)) && rans.insert(g.ran(a)))
}

/// All bisections of g, ascending as bitmasks.  Gated because the count is
/// exponential in the number of arrows.
pub fn enumerate_bisections(g: &FiniteGroupoid, max_arrows: usize) -> Result<Vec<Bisection>> {
    let n = g.arrow_count();
    if n > max_arrows || n > 32 {
        return Err(Error::SizeLimit {
            what: "bisection enumeration",
            actual: n,
            limit: max_arrows.min(32),
        });
    }
    fn recurse(
        g: &FiniteGroupoid,
        next: usize,
        mask: u32,
        dom_used: &mut Vec<bool>,
        ran_used: &mut Vec<bool>,
        out: &mut Vec<Bisection>,
    ) {
        out.push(Bisection(mask));
        for a in next..g.arrow_count() {
            let (d, r) = (g.dom(a), g.ran(a));
            if !dom_used[d] && !ran_used[r] {
                dom_used[d] = true;
                ran_used[r] = true;
                recurse(g, a + 1, mask | 1 << a, dom_used, ran_used, out);
                dom_used[d] = false;
                ran_used[r] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut dom_used = vec![false; g.object_count()];
    let mut ran_used = vec![false; g.object_count()];
    recurse(g, 0, 0, &mut dom_used, &mut ran_used, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Setwise product UV = {αβ | α∈U, β∈V, composable}.
pub fn bisection_product(g: &FiniteGroupoid, u: Bisection, v: Bisection) -> Bisection {
    let mut mask = 0u32;
    for a in u.arrows() {
        for b in v.arrows() {
            if let Some(c) = g.compose(a, b) {
                mask |= 1 << c;
            }
        }
    }
    Bisection(mask)
}

pub fn bisection_inverse(g: &FiniteGroupoid, u: Bisection) -> Bisection {
    let mut mask = 0u32;
    for a in u.arrows() {
        mask |= 1 << g.invert(a);
    }
    Bisection(mask)
}

/// Verifies the inverse-monoid laws on an enumerated bisection list:
/// closure under product and inverse, U U⁻¹ U = U, (U⁻¹)⁻¹ = U, the dom/ran
/// identities, and associativity (exhaustive up to `assoc_bound` bisections,
/// on a deterministic stride sample above).
pub fn verify_bisection_monoid(
    g: &FiniteGroupoid,
    bisections: &[Bisection],
    assoc_bound: usize,
) -> Result<()> {
    let set: std::collections::HashSet<Bisection> = bisections.iter().copied().collect();
    for &u in bisections {
        let inv = bisection_inverse(g, u);
        if !set.contains(&inv) {
            return Err(Error::Verification(format!(
                "bisection set not closed under inverse at {u:?}"
            )));
        }
        if bisection_inverse(g, inv) != u {
            return Err(Error::Verification("(U⁻¹)⁻¹ != U".into()));
        }
        let uiu = bisection_product(g, bisection_product(g, u, inv), u);
        if uiu != u {
            return Err(Error::Verification(format!("U U⁻¹ U != U at {u:?}")));
        }
        let dom_mask: u32 = u
            .arrows()
            .fold(0u32, |m, a| m | 1 << g.identity_at(g.dom(a)));
        let ran_mask: u32 = u
            .arrows()
            .fold(0u32, |m, a| m | 1 << g.identity_at(g.ran(a)));
        if bisection_product(g, inv, u) != Bisection(dom_mask) {
            return Err(Error::Verification("U⁻¹U != dom(U)".into()));
        }
        if bisection_product(g, u, inv) != Bisection(ran_mask) {
            return Err(Error::Verification("UU⁻¹ != ran(U)".into()));
        }
    }
    for &u in bisections {
        for &v in bisections {
            if !set.contains(&bisection_product(g, u, v)) {
                return Err(Error::Verification(
                    "bisection set not closed under product".into(),
                ));
            }
        }
    }
    let stride = if bisections.len() <= assoc_bound {
        1
    } else {
        bisections.len() / assoc_bound + 1
    };
    let sample: Vec<Bisection> = bisections.iter().copied().step_by(stride).collect();
    for &u in &sample {
        for &v in &sample {
            let uv = bisection_product(g, u, v);
            for &w in &sample {
                if bisection_product(g, uv, w) != bisection_product(g, u, bisection_product(g, v, w))
                {
                    return Err(Error::Verification(
                        "bisection product not associative".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// The universal groupoid of a finite inverse semigroup: objects are the
/// idempotents (every character of a finite semilattice is principal),
/// arrows are the semigroup elements with dom(s) = s*s and ran(s) = ss*,
/// and s·t = st exactly when s*s = tt*.  A zero of S is treated as an
/// ordinary element; its principal character is a singleton orbit.
pub fn universal_groupoid(s: &FiniteInverseSemigroup) -> FiniteGroupoid {
    let idems = s.idempotent_set().to_vec();
    let object_of: HashMap<usize, usize> =
        idems.iter().enumerate().map(|(o, &e)| (e, o)).collect();
    let object_labels: Vec<String> = idems.iter().map(|&e| s.label(e).to_string()).collect();
    let n = s.size();
    let arrows: Vec<Arrow> = (0..n)
        .map(|x| Arrow {
            dom: object_of[&s.dom(x)],
            ran: object_of[&s.ran(x)],
            label: s.label(x).to_string(),
        })
        .collect();
    let mut compose = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            if s.dom(a) == s.ran(b) {
                compose[a * n + b] = Some(s.mul(a, b));
            }
        }
    }
    FiniteGroupoid::from_compose_table(object_labels, arrows, compose)
        .expect("universal groupoid axioms hold for a finite inverse semigroup")
}

/// Full subgroupoid on an invariant set of objects.  Returns the groupoid
/// plus the object and arrow index maps (new → old).
pub fn restrict(
    g: &FiniteGroupoid,
    objects: &[usize],
) -> Result<(FiniteGroupoid, Vec<usize>, Vec<usize>)> {
    let orb = orbits_and_isotropy(g);
    let mut keep = vec![false; g.object_count()];
    for &x in objects {
        if x >= g.object_count() {
            return Err(Error::Invalid(format!("object {x} out of range")));
        }
        keep[x] = true;
    }
    for &x in objects {
        for &y in &orb.orbits[orb.orbit_of[x]] {
            if !keep[y] {
                return Err(Error::NotInvariant(format!(
                    "object {} is in the orbit of {} but not in the set",
                    g.object_label(y),
                    g.object_label(x)
                )));
            }
        }
    }
    let object_map: Vec<usize> = (0..g.object_count()).filter(|&x| keep[x]).collect();
    let new_object: HashMap<usize, usize> =
        object_map.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let arrow_map: Vec<usize> = (0..g.arrow_count())
        .filter(|&a| keep[g.dom(a)] && keep[g.ran(a)])
        .collect();
    let new_arrow: HashMap<usize, usize> =
        arrow_map.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let arrows: Vec<Arrow> = arrow_map
        .iter()
        .map(|&a| Arrow {
            dom: new_object[&g.dom(a)],
            ran: new_object[&g.ran(a)],
            label: g.arrow(a).label.clone(),
        })
        .collect();
    let n = arrows.len();
    let mut compose = vec![None; n * n];
    for (i, &a) in arrow_map.iter().enumerate() {
        for (j, &b) in arrow_map.iter().enumerate() {
            if let Some(c) = g.compose(a, b) {
                compose[i * n + j] = Some(new_arrow[&c]);
            }
        }
    }
    let object_labels: Vec<String> = object_map
        .iter()
        .map(|&x| g.object_label(x).to_string())
        .collect();
    let restricted = FiniteGroupoid::from_compose_table(object_labels, arrows, compose)?;
    Ok((restricted, object_map, arrow_map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn group_as_one_object_groupoid() {
        let g = FiniteGroupoid::from_group(corpus::cyclic_group(3).base()).unwrap();
        assert_eq!(g.object_count(), 1);
        assert_eq!(g.arrow_count(), 3);
        let orb = orbits_and_isotropy(&g);
        assert_eq!(orb.orbits.len(), 1);
        assert_eq!(orb.isotropy[0].group.size(), 3);
    }

    #[test]
    fn pair_groupoid_is_one_orbit_trivial_isotropy() {
        let g = FiniteGroupoid::pair_groupoid(2);
        assert_eq!(g.arrow_count(), 4);
        let orb = orbits_and_isotropy(&g);
        assert_eq!(orb.orbits.len(), 1);
        assert_eq!(orb.isotropy[0].group.size(), 1);
        for x in 0..2 {
            let t = orb.transversal[x];
            assert_eq!(g.dom(t), orb.basepoints[0]);
            assert_eq!(g.ran(t), x);
        }
    }

    #[test]
    fn raw_data_with_endpoint_mismatch_is_rejected() {
        let err = FiniteGroupoid::from_raw(
            vec!["x".into(), "y".into()],
            vec![(0, 0, "ex".into()), (1, 1, "ey".into())],
            &[(0, 0, 0), (1, 1, 1), (0, 1, 0)],
        )
        .unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("compose(0,1)"), "unexpected message {msg}");
    }

    #[test]
    fn group_bundle_orbits_are_singletons() {
        let z2 = FiniteGroupoid::from_group(corpus::cyclic_group(2).base()).unwrap();
        let z3 = FiniteGroupoid::from_group(corpus::cyclic_group(3).base()).unwrap();
        let bundle = z2.disjoint_union(&z3);
        assert!((0..bundle.arrow_count()).all(|a| bundle.dom(a) == bundle.ran(a)));
        let orb = orbits_and_isotropy(&bundle);
        assert_eq!(orb.orbits.len(), bundle.object_count());
    }

    #[test]
    fn bisections_of_tiny_groupoids() {
        let one = FiniteGroupoid::from_group(corpus::cyclic_group(1).base()).unwrap();
        let bs = enumerate_bisections(&one, 20).unwrap();
        assert_eq!(bs.len(), 2); // empty set and the identity arrow
        let pair = FiniteGroupoid::pair_groupoid(2);
        let bs = enumerate_bisections(&pair, 20).unwrap();
        // Empty set, four singletons, two perfect matchings.
        assert_eq!(bs.len(), 7);
        verify_bisection_monoid(&pair, &bs, 100).unwrap();
    }

    #[test]
    fn bisection_monoid_laws_on_universal_groupoids() {
        for s in [corpus::brandt(2), corpus::chain_semilattice(3)] {
            let g = universal_groupoid(&s);
            let bs = enumerate_bisections(&g, 20).unwrap();
            verify_bisection_monoid(&g, &bs, 60).unwrap();
        }
    }

    #[test]
    fn identity_arrow_set_is_its_own_dom_and_ran() {
        let g = FiniteGroupoid::pair_groupoid(3);
        let mask = (0..3).fold(0u32, |m, x| m | 1 << g.identity_at(x));
        let u = Bisection(mask);
        assert_eq!(bisection_product(&g, u, bisection_inverse(&g, u)), u);
        assert_eq!(bisection_product(&g, bisection_inverse(&g, u), u), u);
    }

    #[test]
    fn universal_groupoid_of_b2() {
        let s = corpus::brandt(2);
        let g = universal_groupoid(&s);
        assert_eq!(g.object_count(), 3);
        assert_eq!(g.arrow_count(), 5);
        let e12 = g.arrow_index("E12").unwrap();
        assert_eq!(g.object_label(g.dom(e12)), "E22");
        assert_eq!(g.object_label(g.ran(e12)), "E11");
        let orb = orbits_and_isotropy(&g);
        assert_eq!(orb.orbits.len(), 2);
        let sizes: Vec<usize> = orb.orbits.iter().map(|o| o.len()).collect();
        assert!(sizes.contains(&1) && sizes.contains(&2));
        assert!(orb.isotropy.iter().all(|iso| iso.group.size() == 1));
    }

    #[test]
    fn universal_groupoid_arrow_and_object_counts_match_s() {
        for s in corpus::inverse_corpus() {
            let g = universal_groupoid(&s);
            assert_eq!(g.arrow_count(), s.size());
            assert_eq!(g.object_count(), s.idempotent_set().len());
        }
    }

    #[test]
    fn universal_groupoid_of_chain_has_only_identities() {
        let s = corpus::chain_semilattice(2);
        let g = universal_groupoid(&s);
        assert_eq!(g.object_count(), 2);
        assert_eq!(g.arrow_count(), 2);
        assert!((0..2).all(|a| g.is_identity(a)));
    }

    #[test]
    fn restrict_to_all_objects_is_identity() {
        let g = FiniteGroupoid::pair_groupoid(2);
        let (h, _, _) = restrict(&g, &[0, 1]).unwrap();
        assert_eq!(h.arrow_count(), g.arrow_count());
    }

    #[test]
    fn restrict_universal_b2_to_zero_orbit() {
        let s = corpus::brandt(2);
        let g = universal_groupoid(&s);
        let zero_obj = (0..g.object_count())
            .find(|&x| g.object_label(x) == "0")
            .unwrap();
        let (h, _, _) = restrict(&g, &[zero_obj]).unwrap();
        assert_eq!(h.object_count(), 1);
        assert_eq!(h.arrow_count(), 1);
    }

    #[test]
    fn restrict_to_non_invariant_set_errors() {
        let g = FiniteGroupoid::pair_groupoid(2);
        match restrict(&g, &[0]) {
            Err(Error::NotInvariant(_)) => {}
            other => panic!("expected NotInvariant, got {other:?}"),
        }
    }

    #[test]
    fn orbits_commute_with_restriction() {
        let s = corpus::brandt(2);
        let g = universal_groupoid(&s);
        let orb = orbits_and_isotropy(&g);
        for orbit in &orb.orbits {
            let (h, object_map, _) = restrict(&g, orbit).unwrap();
            let sub = orbits_and_isotropy(&h);
            assert_eq!(sub.orbits.len(), 1);
            let mapped: Vec<usize> = sub.orbits[0].iter().map(|&x| object_map[x]).collect();
            assert_eq!(&mapped, orbit);
        }
    }
}
