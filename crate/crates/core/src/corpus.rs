//! Standard small semigroups, groups and graphs used by the examples, the
//! CLI docs and the test suites.

use crate::leavitt::DirectedGraph;
use crate::semigroup::{
    closure, validate_inverse, ClosureResult, FiniteInverseSemigroup, FiniteSemigroup,
    PartialBijection,
};

/// Chain meet-semilattice with n elements, top first and a bottom labelled
/// "0".  Product is the lower of the two.
pub fn chain_semilattice(n: usize) -> FiniteInverseSemigroup {
    assert!(n >= 1);
    let labels: Vec<String> = (0..n)
        .map(|i| {
            if i == n - 1 {
                "0".to_string()
            } else if n == 2 {
                "e".to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect();
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = i.max(j);
        }
    }
    let base = FiniteSemigroup::from_parts_trusted(labels, table, Some((0..n).collect()));
    validate_inverse(base).expect("chain semilattice is inverse")
}

/// The Brandt semigroup B_n of n×n matrix units together with a zero.
/// E_ij · E_kl = E_il when j = k, else 0.
pub fn brandt(n: usize) -> FiniteInverseSemigroup {
    assert!(n >= 1);
    let mut labels: Vec<String> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            labels.push(format!("E{i}{j}"));
        }
    }
    labels.push("0".to_string());
    let m = n * n + 1;
    let zero = m - 1;
    let unit = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut table = vec![zero; m * m];
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if j == k {
                        table[unit(i, j) * m + unit(k, l)] = unit(i, l);
                    }
                }
            }
        }
    }
    let mut star = vec![zero; m];
    for i in 1..=n {
        for j in 1..=n {
            star[unit(i, j)] = unit(j, i);
        }
    }
    let base = FiniteSemigroup::from_parts_trusted(labels, table, Some(star));
    validate_inverse(base).expect("Brandt semigroup is inverse")
}

/// Cyclic group of order n with elements g0..g{n-1}.
pub fn cyclic_group(n: usize) -> FiniteInverseSemigroup {
    assert!(n >= 1);
    let labels: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = (i + j) % n;
        }
    }
    let star: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let base = FiniteSemigroup::from_parts_trusted(labels, table, Some(star));
    validate_inverse(base).expect("cyclic group is inverse")
}

/// The symmetric group S_3 as a permutation composition table.
pub fn symmetric_group_s3() -> FiniteInverseSemigroup {
    let perms: Vec<([usize; 3], &str)> = vec![
        ([0, 1, 2], "e"),
        ([1, 0, 2], "(01)"),
        ([2, 1, 0], "(02)"),
        ([0, 2, 1], "(12)"),
        ([1, 2, 0], "(012)"),
        ([2, 0, 1], "(021)"),
    ];
    let n = perms.len();
    let compose = |f: &[usize; 3], g: &[usize; 3]| -> [usize; 3] { [f[g[0]], f[g[1]], f[g[2]]] };
    let find = |p: &[usize; 3]| perms.iter().position(|(q, _)| q == p).unwrap();
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = find(&compose(&perms[i].0, &perms[j].0));
        }
    }
    let labels = perms.iter().map(|(_, l)| l.to_string()).collect();
    let base = FiniteSemigroup::from_parts_trusted(labels, table, None);
    validate_inverse(base).expect("S_3 is inverse")
}

/// The symmetric inverse monoid I_n, generated as a closure of partial
/// bijections: the transposition (01), the n-cycle, and the rank n-1
/// partial identity.
pub fn symmetric_inverse_monoid(n: usize) -> ClosureResult {
    assert!(n >= 2);
    let mut swap: Vec<Option<usize>> = (0..n).map(Some).collect();
    swap[0] = Some(1);
    swap[1] = Some(0);
    let cycle: Vec<Option<usize>> = (0..n).map(|i| Some((i + 1) % n)).collect();
    let mut pid: Vec<Option<usize>> = (0..n).map(Some).collect();
    pid[n - 1] = None;
    let gens = vec![
        PartialBijection::new(swap).unwrap(),
        PartialBijection::new(cycle).unwrap(),
        PartialBijection::new(pid).unwrap(),
    ];
    closure(&gens, 1_000_000).expect("I_n closure")
}

/// The full transformation monoid T_3: all 27 self-maps of {0,1,2} under
/// composition, labelled by their image strings.
pub fn full_transformation_monoid_t3() -> FiniteSemigroup {
    let mut maps: Vec<[usize; 3]> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                maps.push([a, b, c]);
            }
        }
    }
    let n = maps.len();
    let find = |p: &[usize; 3]| maps.iter().position(|q| q == p).unwrap();
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let f = &maps[i];
            let g = &maps[j];
            table[i * n + j] = find(&[f[g[0]], f[g[1]], f[g[2]]]);
        }
    }
    let labels = maps
        .iter()
        .map(|m| format!("{}{}{}", m[0], m[1], m[2]))
        .collect();
    FiniteSemigroup::from_parts_trusted(labels, table, None)
}

/// Two-element null semigroup with zero: x·x = 0 and everything else 0.
pub fn null_semigroup_with_zero() -> FiniteSemigroup {
    FiniteSemigroup::from_table(
        vec!["x".to_string(), "0".to_string()],
        vec![vec![1, 1], vec![1, 1]],
        None,
    )
    .expect("null semigroup")
}

/// Two-element left-zero semigroup: xy = x.
pub fn left_zero_semigroup() -> FiniteSemigroup {
    FiniteSemigroup::from_table(
        vec!["x".to_string(), "y".to_string()],
        vec![vec![0, 0], vec![1, 1]],
        None,
    )
    .expect("left-zero semigroup")
}

/// The inverse-semigroup corpus used throughout the acceptance checks.
pub fn inverse_corpus() -> Vec<FiniteInverseSemigroup> {
    vec![
        brandt(2),
        brandt(3),
        symmetric_inverse_monoid(2).semigroup,
        symmetric_inverse_monoid(3).semigroup,
        chain_semilattice(2),
        chain_semilattice(3),
        cyclic_group(2),
        cyclic_group(3),
        symmetric_group_s3(),
    ]
}

/// Names aligned with [`inverse_corpus`].
pub fn inverse_corpus_names() -> Vec<&'static str> {
    vec![
        "B_2", "B_3", "I_2", "I_3", "chain_2", "chain_3", "Z_2", "Z_3", "S_3",
    ]
}

/// A mixed bag of small semigroups (inverse and not) for Green-structure
/// invariants.
pub fn mixed_semigroup_corpus() -> Vec<FiniteSemigroup> {
    let mut v: Vec<FiniteSemigroup> = vec![
        full_transformation_monoid_t3(),
        null_semigroup_with_zero(),
        left_zero_semigroup(),
    ];
    for s in inverse_corpus() {
        v.push(s.base().clone());
    }
    v
}

/// Single vertex with one loop edge.
pub fn loop_graph() -> DirectedGraph {
    DirectedGraph::new(vec!["v"], vec![("p", "v", "v")]).unwrap()
}

/// Loop at v plus an exit edge v → w.
pub fn loop_with_exit() -> DirectedGraph {
    DirectedGraph::new(vec!["v", "w"], vec![("p", "v", "v"), ("x", "v", "w")]).unwrap()
}

/// Rose with k loops at a single vertex.
pub fn rose(k: usize) -> DirectedGraph {
    let names: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
    let edges: Vec<(&str, &str, &str)> = names.iter().map(|n| (n.as_str(), "v", "v")).collect();
    DirectedGraph::new(vec!["v"], edges).unwrap()
}

/// A single edge v → w with w a sink.
pub fn single_edge_graph() -> DirectedGraph {
    DirectedGraph::new(vec!["v", "w"], vec![("e", "v", "w")]).unwrap()
}
