//! Directed graphs, graph inverse semigroup arithmetic on pq* monomials,
//! relative Cohn/Leavitt path algebras, and the finite path groupoid with
//! its isomorphism check.

// TODO: re-export cohn and groupoid submodules once written.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub dom: usize,
    pub ran: usize,
}

/// A finite directed graph with named vertices and edges; loops and multiple
/// edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
}

impl DirectedGraph {
    pub fn new<V: Into<String>>(vertices: Vec<V>, edges: Vec<(&str, &str, &str)>) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::Invalid(format!("duplicate vertex name {v:?}")));
            }
        }
        let vid = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Invalid(format!("unknown vertex {name:?}")))
        };
        let mut enames = std::collections::HashSet::new();
        let mut es = Vec::new();
        for (name, d, r) in edges {
            if !enames.insert(name.to_string()) {
                return Err(Error::Invalid(format!("duplicate edge name {name:?}")));
            }
            es.push(Edge {
                name: name.to_string(),
                dom: vid(d)?,
                ran: vid(r)?,
            });
        }
        let mut out = vec![Vec::new(); vertices.len()];
        for (i, e) in es.iter().enumerate() {
            out[e.dom].push(i);
        }
        Ok(DirectedGraph {
            vertices,
            edges: es,
            out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Out-edges of v in edge-index order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// reach[v][w]: there is a path of length >= 1 from v to w.
    pub fn positive_reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut reach = vec![vec![false; n]; n];
        for e in &self.edges {
            reach[e.dom][e.ran] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        reach
    }

    /// Vertices lying on at least one cycle.
    pub fn cycle_vertices(&self) -> Vec<usize> {
        let reach = self.positive_reachability();
        (0..self.vertex_count()).filter(|&v| reach[v][v]).collect()
    }

    /// Vertices that are not sinks (every vertex of a finite graph emits
    /// finitely many edges, so this is the full regularity condition).
    pub fn regular_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.out_degree(v) >= 1)
            .collect()
    }

    /// All paths of length <= max_len, in (dom, length, edge-lex) order.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = (0..self.vertex_count()).map(Path::empty).collect();
        let mut frontier = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.ran(self)) {
                    next.push(p.extended(self, e).unwrap());
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }
}

/// A finite path: an empty path at a base vertex, or a composable edge list
/// (paths compose left to right).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    base: usize,
    edges: Vec<usize>,
}

impl Path {
    pub fn empty(v: usize) -> Self {
        Path {
            base: v,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(g: &DirectedGraph, edges: Vec<usize>) -> Result<Self> {
        let Some(&first) = edges.first() else {
            return Err(Error::Invalid("edge list is empty; use Path::empty".into()));
        };
        let mut at = g.edge(first).dom;
        for &e in &edges {
            if g.edge(e).dom != at {
                return Err(Error::Invalid(format!(
                    "edges do not compose at {:?}",
                    g.edge(e).name
                )));
            }
            at = g.edge(e).ran;
        }
        Ok(Path {
            base: g.edge(first).dom,
            edges,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn dom(&self) -> usize {
        self.base
    }

    pub fn ran(&self, g: &DirectedGraph) -> usize {
        self.edges
            .last()
            .map_or(self.base, |&e| g.edge(e).ran)
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edges
    }

    pub fn last_edge(&self) -> Option<usize> {
        self.edges.last().copied()
    }

    pub fn extended(&self, g: &DirectedGraph, e: usize) -> Result<Self> {
        if g.edge(e).dom != self.ran(g) {
            return Err(Error::Invalid(format!(
                "edge {:?} does not extend path",
                g.edge(e).name
            )));
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        Ok(Path {
            base: self.base,
            edges,
        })
    }

    pub fn concat(&self, g: &DirectedGraph, other: &Path) -> Result<Self> {
        if other.dom() != self.ran(g) {
            return Err(Error::Invalid("paths do not compose".into()));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            base: self.base,
            edges,
        })
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.base == other.base
            && self.edges.len() <= other.edges.len()
            && other.edges[..self.edges.len()] == self.edges[..]
    }

    /// other = self · u; returns u when self is a prefix.
    pub fn strip_prefix(&self, g: &DirectedGraph, other: &Path) -> Option<Path> {
        if !self.is_prefix_of(other) {
            return None;
        }
        let rest = other.edges[self.edges.len()..].to_vec();
        Some(if rest.is_empty() {
            Path::empty(self.ran(g))
        } else {
            Path {
                base: g.edge(rest[0]).dom,
                edges: rest,
            }
        })
    }

    /// Shorten from the left: the suffix after the first k edges.
    pub fn suffix_from(&self, g: &DirectedGraph, k: usize) -> Path {
        let rest = self.edges[k..].to_vec();
        if rest.is_empty() {
            Path::empty(self.ran(g))
        } else {
            Path {
                base: g.edge(rest[0]).dom,
                edges: rest,
            }
        }
    }

    pub fn display<'a>(&'a self, g: &'a DirectedGraph) -> PathDisplay<'a> {
        PathDisplay { path: self, g }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    g: &'a DirectedGraph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return write!(f, "{}", self.g.vertex_label(self.path.base));
        }
        let names: Vec<&str> = self
            .path
            .edges
            .iter()
            .map(|&e| self.g.edge(e).name.as_str())
            .collect();
        write!(f, "{}", names.join("."))
    }
}

/// An element of the graph inverse semigroup P_E: zero, or pq* with p and q
/// paths ending at the same vertex (the partial bijection qx ↦ px).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PEMonomial {
    Zero,
    Pair(Path, Path),
}

impl PEMonomial {
    pub fn vertex(v: usize) -> Self {
        PEMonomial::Pair(Path::empty(v), Path::empty(v))
    }

    pub fn path(g: &DirectedGraph, p: Path) -> Self {
        let v = p.ran(g);
        PEMonomial::Pair(p, Path::empty(v))
    }

    pub fn star_path(g: &DirectedGraph, q: Path) -> Self {
        let v = q.ran(g);
        PEMonomial::Pair(Path::empty(v), q)
    }

    pub fn pair(g: &DirectedGraph, p: Path, q: Path) -> Result<Self> {
        if p.ran(g) != q.ran(g) {
            return Err(Error::Invalid(
                "pq* requires ran(p) = ran(q)".into(),
            ));
        }
        Ok(PEMonomial::Pair(p, q))
    }

    pub fn star(&self) -> Self {
        match self {
            PEMonomial::Zero => PEMonomial::Zero,
            PEMonomial::Pair(p, q) => PEMonomial::Pair(q.clone(), p.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PEMonomial::Zero)
    }

    /// |p| + |q|.
    pub fn total_length(&self) -> usize {
        match self {
            PEMonomial::Zero => 0,
            PEMonomial::Pair(p, q) => p.len() + q.len(),
        }
    }

    pub fn display<'a>(&'a self, g: &'a DirectedGraph) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, g }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a PEMonomial,
    g: &'a DirectedGraph,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            PEMonomial::Zero => write!(f, "zero"),
            PEMonomial::Pair(p, q) => {
                if q.is_empty() {
                    write!(f, "{}", p.display(self.g))
                } else if p.is_empty() {
                    write!(f, "({})*", q.display(self.g))
                } else {
                    write!(f, "{}({})*", p.display(self.g), q.display(self.g))
                }
            }
        }
    }
}

/// Product in P_E: (pq*)(rs*) = (pu)s* if r = qu, p(su)* if q = ru, else 0.
pub fn pe_multiply(g: &DirectedGraph, m1: &PEMonomial, m2: &PEMonomial) -> PEMonomial {
    let (PEMonomial::Pair(p, q), PEMonomial::Pair(r, s)) = (m1, m2) else {
        return PEMonomial::Zero;
    };
    if let Some(u) = q.strip_prefix(g, r) {
        let pu = p.concat(g, &u).expect("ran(p)=ran(q)=dom(u)");
        PEMonomial::Pair(pu, s.clone())
    } else if let Some(u) = r.strip_prefix(g, q) {
        let su = s.concat(g, &u).expect("ran(s)=ran(r)=dom(u)");
        PEMonomial::Pair(p.clone(), su)
    } else {
        PEMonomial::Zero
    }
}

/// Witness that a graph fails the no-exit condition: a cycle and an edge
/// exiting it.
#[derive(Debug, Clone)]
pub struct ExitWitness {
    pub cycle: Path,
    pub exit_edge: usize,
}

/// True iff every vertex lying on a cycle has out-degree exactly 1; returns
/// a (cycle, exiting edge) witness otherwise.
pub fn is_no_exit(g: &DirectedGraph) -> (bool, Option<ExitWitness>) {
    let reach = g.positive_reachability();
    for v in 0..g.vertex_count() {
        if reach[v][v] && g.out_degree(v) > 1 {
            let cycle = cycle_through(g, v).expect("v lies on a cycle");
            let first = cycle.edge_ids()[0];
            let exit = g
                .out_edges(v)
                .iter()
                .copied()
                .find(|&e| e != first)
                .expect("out-degree > 1");
            return (
                false,
                Some(ExitWitness {
                    cycle,
                    exit_edge: exit,
                }),
            );
        }
    }
    (true, None)
}

/// A shortest cycle through v: BFS over vertices from the successors of v
/// back to v.
pub fn cycle_through(g: &DirectedGraph, v: usize) -> Option<Path> {
    let reach = g.positive_reachability();
    if !reach[v][v] {
        return None;
    }
    // First out-edge whose target reaches back to v (or is v itself).
    let &e0 = g
        .out_edges(v)
        .iter()
        .find(|&&e| g.edge(e).ran == v || reach[g.edge(e).ran][v])?;
    let start = g.edge(e0).ran;
    if start == v {
        return Path::from_edges(g, vec![e0]).ok();
    }
    // BFS shortest edge-path start -> v.
    let n = g.vertex_count();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    let mut seen = vec![false; n];
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for &e in g.out_edges(u) {
            let w = g.edge(e).ran;
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    let mut edges = vec![];
    let mut at = v;
    while at != start {
        let (u, e) = prev[at]?;
        edges.push(e);
        at = u;
    }
    edges.push(e0);
    edges.reverse();
    Path::from_edges(g, edges).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn regular_vertices_examples() {
        let isolated = DirectedGraph::new(vec!["v"], vec![]).unwrap();
        assert!(isolated.regular_vertices().is_empty());
        assert_eq!(corpus::loop_graph().regular_vertices(), vec![0]);
        let g = corpus::single_edge_graph();
        assert_eq!(g.regular_vertices(), vec![g.vertex_index("v").unwrap()]);
    }

    #[test]
    fn no_exit_examples() {
        assert!(is_no_exit(&corpus::loop_graph()).0);
        let acyclic = corpus::single_edge_graph();
        assert!(is_no_exit(&acyclic).0);
        let (ok, witness) = is_no_exit(&corpus::loop_with_exit());
        assert!(!ok);
        let w = witness.unwrap();
        let g = corpus::loop_with_exit();
        assert_eq!(w.cycle.dom(), w.cycle.ran(&g));
        assert_ne!(Some(w.exit_edge), w.cycle.last_edge());
    }

    #[test]
    fn pe_relations_from_the_presentation() {
        let g = corpus::single_edge_graph();
        let e = Path::from_edges(&g, vec![0]).unwrap();
        let e_mon = PEMonomial::path(&g, e.clone());
        let estar = e_mon.star();
        // e*·e = ran(e) as a vertex monomial.
        let w = g.vertex_index("w").unwrap();
        assert_eq!(pe_multiply(&g, &estar, &e_mon), PEMonomial::vertex(w));
        // e·e* stays a nontrivial idempotent monomial.
        assert_eq!(
            pe_multiply(&g, &e_mon, &estar),
            PEMonomial::Pair(e.clone(), e)
        );
    }

    #[test]
    fn distinct_edges_annihilate() {
        let g = corpus::rose(2);
        let p0 = PEMonomial::path(&g, Path::from_edges(&g, vec![0]).unwrap());
        let p1 = PEMonomial::path(&g, Path::from_edges(&g, vec![1]).unwrap());
        assert_eq!(pe_multiply(&g, &p0.star(), &p1), PEMonomial::Zero);
    }

    #[test]
    fn shared_prefix_cancels() {
        // (pq*)(qs*) = ps*.
        let g = corpus::rose(2);
        let p = Path::from_edges(&g, vec![0]).unwrap();
        let q = Path::from_edges(&g, vec![1]).unwrap();
        let s = Path::from_edges(&g, vec![0, 0]).unwrap();
        let m1 = PEMonomial::pair(&g, p.clone(), q.clone()).unwrap();
        let m2 = PEMonomial::pair(&g, q.clone(), s.clone()).unwrap();
        assert_eq!(
            pe_multiply(&g, &m1, &m2),
            PEMonomial::pair(&g, p, s).unwrap()
        );
    }

    /// Independent oracle: evaluate monomials as partial maps on concrete
    /// paths and compose the maps.
    fn act(g: &DirectedGraph, m: &PEMonomial, x: &Path) -> Option<Path> {
        match m {
            PEMonomial::Zero => None,
            PEMonomial::Pair(p, q) => {
                let z = q.strip_prefix(g, x)?;
                Some(p.concat(g, &z).unwrap())
            }
        }
    }

    #[test]
    fn pe_multiply_agrees_with_partial_map_composition() {
        let graphs = vec![
            corpus::loop_graph(),
            corpus::loop_with_exit(),
            corpus::rose(2),
            corpus::single_edge_graph(),
            DirectedGraph::new(
                vec!["a", "b", "c"],
                vec![("e", "a", "b"), ("f", "b", "c"), ("h", "b", "b"), ("k", "a", "c")],
            )
            .unwrap(),
        ];
        for g in &graphs {
            let paths = g.paths_up_to(3);
            let mut monomials = vec![PEMonomial::Zero];
            for p in &paths {
                for q in &paths {
                    if p.ran(g) == q.ran(g) {
                        monomials.push(PEMonomial::Pair(p.clone(), q.clone()));
                    }
                }
            }
            let test_paths = g.paths_up_to(6);
            for m1 in &monomials {
                for m2 in &monomials {
                    let prod = pe_multiply(g, m1, m2);
                    for x in &test_paths {
                        let via_product = act(g, &prod, x);
                        let via_composition = act(g, m2, x).and_then(|y| act(g, m1, &y));
                        assert_eq!(via_product, via_composition);
                    }
                }
            }
        }
    }

    #[test]
    fn star_reverses_products() {
        let g = corpus::loop_with_exit();
        let paths = g.paths_up_to(2);
        let mut monomials = vec![PEMonomial::Zero];
        for p in &paths {
            for q in &paths {
                if p.ran(&g) == q.ran(&g) {
                    monomials.push(PEMonomial::Pair(p.clone(), q.clone()));
                }
            }
        }
        for m1 in &monomials {
            for m2 in &monomials {
                assert_eq!(
                    pe_multiply(&g, m1, m2).star(),
                    pe_multiply(&g, &m2.star(), &m1.star())
                );
            }
        }
    }
}
