//! Labeled simple graphs with a canonical edge order, the index of
//! independent edge pairs, and the subgraph families that carry parity
//! constraints on crossing sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::BitVector;

pub const MAX_EDGES: usize = 64;
pub const MAX_PAIRS: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) names a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("{0} edges exceeds the limit of {MAX_EDGES}")]
    TooManyEdges(usize),
    #[error("{0} independent pairs exceeds the limit of {MAX_PAIRS}")]
    TooManyPairs(usize),
    #[error("{0} labels given for {1} vertices")]
    LabelCount(usize, usize),
    #[error("invalid parameter for {family}: {detail}")]
    BadParameter { family: &'static str, detail: String },
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("crossing set refers to {0}")]
    UnknownPair(String),
    #[error("crossing set has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// A finite simple graph. Edges are stored as `(u, v)` with `u < v`, sorted
/// lexicographically; the position of an edge in that list is its index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph, normalising each edge to `(min, max)` and sorting.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        if list.len() > MAX_EDGES {
            return Err(GraphError::TooManyEdges(list.len()));
        }
        let g = Graph { n, edges: list, labels: None };
        let pairs = g.count_independent_pairs();
        if pairs > MAX_PAIRS {
            return Err(GraphError::TooManyPairs(pairs));
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount(labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a vertex: its label if present, otherwise the index.
    pub fn vertex_name(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Edge indices incident with `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| {
                let (a, b) = self.edges[i];
                a == v || b == v
            })
            .collect()
    }

    pub fn is_incident(&self, e: usize, v: usize) -> bool {
        let (a, b) = self.edges[e];
        a == v || b == v
    }

    /// Two distinct edges sharing no endpoint.
    pub fn independent(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        e != f && a != c && a != d && b != c && b != d
    }

    fn count_independent_pairs(&self) -> usize {
        let m = self.edges.len();
        (0..m).map(|e| (e + 1..m).filter(|&f| self.independent(e, f)).count()).sum()
    }

    /// Image of the graph under a vertex relabelling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    // Named families.

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        positive("complete", n)?;
        Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }

    /// `K_{m,n}` with parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
        positive("complete-bipartite", m)?;
        positive("complete-bipartite", n)?;
        Graph::new(m + n, (0..m).flat_map(|a| (m..m + n).map(move |b| (a, b))))
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::BadParameter { family: "cycle", detail: format!("need n >= 3, got {n}") });
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        positive("path", n)?;
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// `k` disjoint edges `(2i, 2i+1)`.
    pub fn matching(k: usize) -> Result<Graph, GraphError> {
        positive("matching", k)?;
        Graph::new(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1)))
    }

    /// Parses names such as `K6`, `K3,3`, `K_{2,3}`, `C5`, `P4`, `M_4`.
    pub fn from_name(name: &str) -> Result<Graph, GraphError> {
        let unknown = || GraphError::UnknownName(name.to_string());
        let cleaned: String = name.chars().filter(|c| !matches!(c, '_' | '{' | '}' | ' ')).collect();
        let mut chars = cleaned.chars();
        let head = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let rest = chars.as_str();
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        match head {
            'K' => match rest.split_once(',') {
                Some((a, b)) => Graph::complete_bipartite(num(a)?, num(b)?),
                None => Graph::complete(num(rest)?),
            },
            'C' => Graph::cycle(num(rest)?),
            'P' => Graph::path(num(rest)?),
            'M' => Graph::matching(num(rest)?),
            _ => Err(unknown()),
        }
    }

    /// Canonical JSON form `{"n": .., "edges": [[u, v], ..]}` (labels included
    /// only when present).
    pub fn to_file(&self) -> GraphFile {
        GraphFile { n: self.n, edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(), labels: self.labels.clone() }
    }

    pub fn from_file(file: GraphFile) -> Result<Graph, GraphError> {
        let g = Graph::new(file.n, file.edges.iter().map(|e| (e[0], e[1])))?;
        match file.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

fn positive(family: &'static str, k: usize) -> Result<(), GraphError> {
    if k == 0 {
        Err(GraphError::BadParameter { family, detail: "parameter must be positive".into() })
    } else {
        Ok(())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, m={})", self.n, self.edges.len())
    }
}

/// On-disk graph representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// The set of unordered pairs of independent edges, indexed canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairIndex {
    edges: Vec<(usize, usize)>,
    pairs: Vec<(usize, usize)>,
    // m x m table of pair indices, u32::MAX where not independent.
    lookup: Vec<u32>,
}

impl PairIndex {
    pub fn new(g: &Graph) -> Self {
        let m = g.edge_count();
        let mut pairs = Vec::new();
        let mut lookup = vec![u32::MAX; m * m];
        for e in 0..m {
            for f in e + 1..m {
                if g.independent(e, f) {
                    lookup[e * m + f] = pairs.len() as u32;
                    lookup[f * m + e] = pairs.len() as u32;
                    pairs.push((e, f));
                }
            }
        }
        PairIndex { edges: g.edges().to_vec(), pairs, lookup }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Edge indices `(e, f)` with `e < f` of pair `i`.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Index of the pair `{e, f}` (either order), if independent.
    pub fn index_of(&self, e: usize, f: usize) -> Option<usize> {
        let m = self.edges.len();
        if e >= m || f >= m {
            return None;
        }
        match self.lookup[e * m + f] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Index of the pair of edges given by their endpoints.
    pub fn index_of_vertices(&self, a: (usize, usize), b: (usize, usize)) -> Option<usize> {
        let find = |(u, v): (usize, usize)| self.edges.binary_search(&(u.min(v), u.max(v))).ok();
        self.index_of(find(a)?, find(b)?)
    }

    /// Endpoint form `((a, b), (c, d))` of pair `i`.
    pub fn pair_vertices(&self, i: usize) -> ((usize, usize), (usize, usize)) {
        let (e, f) = self.pairs[i];
        (self.edges[e], self.edges[f])
    }
}

/// A subset of the independent pairs of a graph, one bit per pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingSet {
    bits: BitVector,
}

/// Serialized crossing set: sorted list of `[[a, b], [c, d]]` edge pairs.
pub type CrossingSetFile = Vec<[[usize; 2]; 2]>;

impl CrossingSet {
    pub fn empty(idx: &PairIndex) -> Self {
        CrossingSet { bits: BitVector::zeros(idx.len()) }
    }

    pub fn full(idx: &PairIndex) -> Self {
        CrossingSet { bits: BitVector::ones(idx.len()) }
    }

    pub fn from_bits(bits: BitVector) -> Self {
        CrossingSet { bits }
    }

    pub fn from_indices(idx: &PairIndex, members: impl IntoIterator<Item = usize>) -> Self {
        CrossingSet { bits: BitVector::from_indices(idx.len(), members) }
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, pair: usize) -> bool {
        self.bits.get(pair)
    }

    pub fn cardinality(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn symmetric_difference(&self, other: &CrossingSet) -> CrossingSet {
        CrossingSet { bits: &self.bits ^ &other.bits }
    }

    pub fn check_len(&self, idx: &PairIndex) -> Result<(), GraphError> {
        if self.len() == idx.len() {
            Ok(())
        } else {
            Err(GraphError::LengthMismatch { expected: idx.len(), found: self.len() })
        }
    }

    pub fn to_file(&self, idx: &PairIndex) -> CrossingSetFile {
        self.members()
            .map(|i| {
                let ((a, b), (c, d)) = idx.pair_vertices(i);
                [[a, b], [c, d]]
            })
            .collect()
    }

    pub fn from_file(idx: &PairIndex, file: &CrossingSetFile) -> Result<Self, GraphError> {
        let mut bits = BitVector::zeros(idx.len());
        for &[[a, b], [c, d]] in file {
            let i = idx
                .index_of_vertices((a, b), (c, d))
                .ok_or_else(|| GraphError::UnknownPair(format!("[[{a},{b}],[{c},{d}]]")))?;
            bits.set(i, true);
        }
        Ok(CrossingSet { bits })
    }
}

/// Pairs with both edges inside `edge_set`.
fn pairs_within(idx: &PairIndex, inside: impl Fn(usize) -> bool) -> CrossingSet {
    CrossingSet::from_indices(
        idx,
        (0..idx.len()).filter(|&i| {
            let (e, f) = idx.pair(i);
            inside(e) && inside(f)
        }),
    )
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// For each pair of disjoint vertex sets `X` (`|X| = a`) and `Y` (`|Y| = b`)
/// with every `X`-`Y` edge present, the independent pairs whose edges both
/// run between `X` and `Y`. When `a == b` each unordered `{X, Y}` is listed
/// once.
pub fn enumerate_bipartition_subgraphs(g: &Graph, idx: &PairIndex, a: usize, b: usize) -> Vec<CrossingSet> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if a == 0 || b == 0 || a + b > n {
        return out;
    }
    for xs in k_subsets(n, a) {
        let rest: Vec<usize> = (0..n).filter(|v| !xs.contains(v)).collect();
        for ys_local in k_subsets(rest.len(), b) {
            let ys: Vec<usize> = ys_local.iter().map(|&i| rest[i]).collect();
            if a == b && ys[0] < xs[0] {
                continue;
            }
            if !xs.iter().all(|&x| ys.iter().all(|&y| g.has_edge(x, y))) {
                continue;
            }
            out.push(pairs_within(idx, |e| {
                let (u, v) = g.edge(e);
                (xs.contains(&u) && ys.contains(&v)) || (xs.contains(&v) && ys.contains(&u))
            }));
        }
    }
    out
}

/// All cycles of length `len`, each as its sorted edge-index list.
pub fn cycles_of_length(g: &Graph, len: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut found = BTreeSet::new();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&w| g.has_edge(v, w)).collect()).collect();
    // Each cycle is rooted at its smallest vertex.
    fn extend(
        g: &Graph,
        adj: &[Vec<usize>],
        root: usize,
        len: usize,
        path: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        if path.len() == len {
            if g.has_edge(last, root) {
                let mut es: Vec<usize> = path
                    .windows(2)
                    .map(|w| g.edge_index(w[0], w[1]).unwrap())
                    .chain(std::iter::once(g.edge_index(last, root).unwrap()))
                    .collect();
                es.sort_unstable();
                found.insert(es);
            }
            return;
        }
        for &w in &adj[last] {
            if w > root && !path.contains(&w) {
                path.push(w);
                extend(g, adj, root, len, path, found);
                path.pop();
            }
        }
    }
    if len >= 3 {
        for root in 0..n {
            let mut path = vec![root];
            extend(g, &adj, root, len, &mut path, &mut found);
        }
    }
    found.into_iter().collect()
}

/// For each unordered pair of vertex-disjoint `len`-cycles, the pairs
/// `{e, f}` with `e` on one cycle and `f` on the other.
pub fn enumerate_disjoint_cycle_pairs(g: &Graph, idx: &PairIndex, len: usize) -> Vec<CrossingSet> {
    let cycles = cycles_of_length(g, len);
    let vertex_sets: Vec<BTreeSet<usize>> = cycles
        .iter()
        .map(|c| {
            c.iter()
                .flat_map(|&e| {
                    let (a, b) = g.edge(e);
                    [a, b]
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if !vertex_sets[i].is_disjoint(&vertex_sets[j]) {
                continue;
            }
            let members = cycles[i]
                .iter()
                .flat_map(|&e| cycles[j].iter().map(move |&f| (e, f)))
                .filter_map(|(e, f)| idx.index_of(e, f));
            out.push(CrossingSet::from_indices(idx, members));
        }
    }
    out
}

/// For each `k`-clique, the pairs with all four endpoints in the clique.
pub fn enumerate_complete_subgraphs(g: &Graph, idx: &PairIndex, k: usize) -> Vec<CrossingSet> {
    let n = g.vertex_count();
    if k > n {
        return Vec::new();
    }
    k_subsets(n, k)
        .into_iter()
        .filter(|vs| vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v))))
        .map(|vs| {
            pairs_within(idx, |e| {
                let (u, v) = g.edge(e);
                vs.contains(&u) && vs.contains(&v)
            })
        })
        .collect()
}
