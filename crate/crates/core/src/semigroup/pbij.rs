//! Partial bijections of {0..n-1} and breadth-first closure of a generating
//! set under composition and inversion.

use super::{FiniteInverseSemigroup, FiniteSemigroup};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

pub const DEFAULT_CLOSURE_LIMIT: usize = 100_000;

/// An injective partial self-map of {0..n-1}.  `map[x] = Some(y)` means
/// x ↦ y; `None` means undefined at x.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    map: Vec<Option<usize>>,
}

impl PartialBijection {
    pub fn new(map: Vec<Option<usize>>) -> Result<Self> {
        let n = map.len();
        let mut hit = vec![false; n];
        for &t in map.iter().flatten() {
            if t >= n {
                return Err(Error::Invalid(format!("target {t} out of range 0..{n}")));
            }
            if hit[t] {
                return Err(Error::Invalid(format!("target {t} repeated: not injective")));
            }
            hit[t] = true;
        }
        Ok(PartialBijection { map })
    }

    pub fn identity(n: usize) -> Self {
        PartialBijection {
            map: (0..n).map(Some).collect(),
        }
    }

    /// Partial identity on the given domain subset.
    pub fn partial_identity(n: usize, domain: &[usize]) -> Result<Self> {
        let mut map = vec![None; n];
        for &x in domain {
            if x >= n {
                return Err(Error::Invalid(format!("domain point {x} out of range")));
            }
            map[x] = Some(x);
        }
        Ok(PartialBijection { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn rank(&self) -> usize {
        self.map.iter().flatten().count()
    }

    pub fn entries(&self) -> &[Option<usize>] {
        &self.map
    }

    /// Function composition: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &PartialBijection) -> PartialBijection {
        debug_assert_eq!(self.degree(), other.degree());
        PartialBijection {
            map: other
                .map
                .iter()
                .map(|t| t.and_then(|y| self.map[y]))
                .collect(),
        }
    }

    pub fn invert(&self) -> PartialBijection {
        let mut map = vec![None; self.degree()];
        for (x, t) in self.map.iter().enumerate() {
            if let Some(y) = *t {
                map[y] = Some(x);
            }
        }
        PartialBijection { map }
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (x, t) in self.map.iter().enumerate() {
            if let Some(y) = t {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{x}->{y}")?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}

/// Result of [`closure`]: the inverse semigroup plus the concrete partial
/// bijection realizing each element, aligned with element indices.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub semigroup: FiniteInverseSemigroup,
    pub maps: Vec<PartialBijection>,
}

/// Smallest set of partial bijections containing the generators and closed
/// under composition and inversion, materialized with its multiplication
/// table.  Element order is breadth-first discovery order, ties broken by
/// generator index; labels are the discovering words.
pub fn closure(generators: &[PartialBijection], max_size: usize) -> Result<ClosureResult> {
    if generators.is_empty() {
        return Err(Error::Precondition("empty generator list".into()));
    }
    let degree = generators[0].degree();
    if generators.iter().any(|g| g.degree() != degree) {
        return Err(Error::Precondition(
            "generators have differing degrees".into(),
        ));
    }

    // Alphabet: the generators followed by their inverses.
    let mut alphabet: Vec<(PartialBijection, String)> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        alphabet.push((g.clone(), format!("g{i}")));
    }
    for (i, g) in generators.iter().enumerate() {
        alphabet.push((g.invert(), format!("g{i}*")));
    }

    let mut index: HashMap<PartialBijection, usize> = HashMap::new();
    let mut maps: Vec<PartialBijection> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let add = |maps: &mut Vec<PartialBijection>,
                   labels: &mut Vec<String>,
                   index: &mut HashMap<PartialBijection, usize>,
                   m: PartialBijection,
                   word: String|
     -> Option<usize> {
        if index.contains_key(&m) {
            return None;
        }
        let id = maps.len();
        index.insert(m.clone(), id);
        maps.push(m);
        labels.push(word);
        Some(id)
    };

    for (m, w) in &alphabet {
        add(&mut maps, &mut labels, &mut index, m.clone(), w.clone());
    }
    let mut next = 0usize;
    while next < maps.len() {
        let current = maps[next].clone();
        let word = labels[next].clone();
        for (m, w) in &alphabet {
            let prod = current.compose(m);
            // Word reads left to right: "u v" denotes u∘v with v applied first.
            let new_word = format!("{word} {w}");
            if add(&mut maps, &mut labels, &mut index, prod, new_word).is_some()
                && maps.len() > max_size
            {
                return Err(Error::SizeLimit {
                    what: "closure",
                    actual: maps.len(),
                    limit: max_size,
                });
            }
        }
        next += 1;
    }

    let n = maps.len();
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index[&maps[i].compose(&maps[j])];
        }
    }
    let star: Vec<usize> = maps.iter().map(|m| index[&m.invert()]).collect();
    let idempotents: Vec<usize> = (0..n).filter(|&i| table[i * n + i] == i).collect();
    let base = FiniteSemigroup::from_parts_trusted(labels, table, Some(star));
    Ok(ClosureResult {
        semigroup: FiniteInverseSemigroup { base, idempotents },
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pb(entries: &[Option<usize>]) -> PartialBijection {
        PartialBijection::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn identity_generates_trivial_monoid() {
        let c = closure(&[PartialBijection::identity(2)], 100).unwrap();
        assert_eq!(c.semigroup.size(), 1);
    }

    #[test]
    fn partial_identities_and_swap_generate_i2() {
        // All restrictions of the identity on {0,1} plus the transposition.
        let gens = vec![
            pb(&[None, None]),
            pb(&[Some(0), None]),
            pb(&[None, Some(1)]),
            PartialBijection::identity(2),
            pb(&[Some(1), Some(0)]),
        ];
        let c = closure(&gens, 100).unwrap();
        assert_eq!(c.semigroup.size(), 7);
    }

    #[test]
    fn i3_has_34_elements() {
        // Transposition (01), 3-cycle, and one rank-2 partial identity
        // generate the symmetric inverse monoid I_3.
        let gens = vec![
            pb(&[Some(1), Some(0), Some(2)]),
            pb(&[Some(1), Some(2), Some(0)]),
            pb(&[Some(0), Some(1), None]),
        ];
        let c = closure(&gens, 1000).unwrap();
        // Oracle: |I_n| = sum_k C(n,k)^2 k!; for n = 3 this is 1+9+18+6 = 34.
        assert_eq!(c.semigroup.size(), 34);
    }

    #[test]
    fn closure_agrees_with_naive_fixpoint_enumeration() {
        use std::collections::HashSet;
        let gens = vec![
            pb(&[Some(1), Some(0), Some(2)]),
            pb(&[Some(1), Some(2), Some(0)]),
            pb(&[Some(0), Some(1), None]),
        ];
        // Independent oracle: saturate under pairwise composition + inversion.
        let mut set: HashSet<PartialBijection> = gens.iter().cloned().collect();
        loop {
            let mut fresh: Vec<PartialBijection> = Vec::new();
            for a in &set {
                let inv = a.invert();
                if !set.contains(&inv) {
                    fresh.push(inv);
                }
                for b in &set {
                    let p = a.compose(b);
                    if !set.contains(&p) {
                        fresh.push(p);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            set.extend(fresh);
        }
        let c = closure(&gens, 1000).unwrap();
        assert_eq!(c.semigroup.size(), set.len());
        for m in &c.maps {
            assert!(set.contains(m));
        }
    }

    #[test]
    fn closure_size_limit_aborts() {
        let gens = vec![
            pb(&[Some(1), Some(0), Some(2)]),
            pb(&[Some(1), Some(2), Some(0)]),
            pb(&[Some(0), Some(1), None]),
        ];
        match closure(&gens, 10) {
            Err(Error::SizeLimit { .. }) => {}
            other => panic!("expected size limit, got {other:?}"),
        }
    }

    fn arb_pbij() -> impl Strategy<Value = PartialBijection> {
        // Random injective partial maps on 5 points, built from a shuffled
        // image list with a definedness mask.
        (proptest::sample::subsequence((0..5usize).collect::<Vec<_>>(), 0..=5), Just(()))
            .prop_flat_map(|(dom, _)| {
                let k = dom.len();
                (Just(dom), proptest::sample::subsequence((0..5usize).collect::<Vec<_>>(), k..=k)
                    .prop_shuffle())
            })
            .prop_map(|(dom, img)| {
                let mut map = vec![None; 5];
                for (x, y) in dom.into_iter().zip(img) {
                    map[x] = Some(y);
                }
                PartialBijection::new(map).unwrap()
            })
    }

    proptest! {
        #[test]
        fn compose_with_inverse_fixes_domain(a in arb_pbij()) {
            let back = a.invert().compose(&a);
            for x in 0..5 {
                match a.apply(x) {
                    Some(_) => prop_assert_eq!(back.apply(x), Some(x)),
                    None => prop_assert_eq!(back.apply(x), None),
                }
            }
        }

        #[test]
        fn composition_is_associative(a in arb_pbij(), b in arb_pbij(), c in arb_pbij()) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }

        #[test]
        fn inverse_reverses_products(a in arb_pbij(), b in arb_pbij()) {
            prop_assert_eq!(a.compose(&b).invert(), b.invert().compose(&a.invert()));
        }
    }
}
