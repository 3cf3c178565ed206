//! The deleted product `G*` of a graph (cells of `G x G` avoiding the
//! diagonal) and its quotient by the coordinate swap.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, PairIndex};

/// Largest vertex count accepted by [`find_surface_graphs`].
pub const MAX_SURFACE_SCAN: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex has no 2-cells")]
    NoFaces,
    #[error("surface scan limited to {MAX_SURFACE_SCAN} vertices, got {0}")]
    ScanTooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A 1-cell of the ordered deleted product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OrderedEdgeCell {
    /// `v x e`
    VertexEdge { vertex: usize, edge: usize },
    /// `e x v`
    EdgeVertex { edge: usize, vertex: usize },
}

impl OrderedEdgeCell {
    pub fn swap(self) -> Self {
        match self {
            Self::VertexEdge { vertex, edge } => Self::EdgeVertex { edge, vertex },
            Self::EdgeVertex { edge, vertex } => Self::VertexEdge { vertex, edge },
        }
    }
}

/// Cells of `G*` with the 1-cell to 2-cell incidence and the swap involution
/// on each dimension.
#[derive(Debug, Clone)]
pub struct OrderedComplex {
    pub cells0: Vec<(usize, usize)>,
    pub cells1: Vec<OrderedEdgeCell>,
    pub cells2: Vec<(usize, usize)>,
    /// For each 1-cell, the indices of the 2-cells containing it.
    pub incidence: Vec<Vec<usize>>,
    pub swap0: Vec<usize>,
    pub swap1: Vec<usize>,
    pub swap2: Vec<usize>,
}

/// Cells of `G*` modulo the swap. Faces are indexed exactly like the graph's
/// [`PairIndex`].
#[derive(Debug, Clone)]
pub struct SymmetricComplex {
    /// `{u, v}` with `u < v`.
    pub vertices: Vec<(usize, usize)>,
    /// Orbit `{(v, e), (e, v)}` stored as `(v, e)`.
    pub edges: Vec<(usize, usize)>,
    /// Orbit `{(e, f), (f, e)}` stored as `(e, f)` with `e < f`.
    pub faces: Vec<(usize, usize)>,
    /// For each symmetric edge, its faces (ascending, no repeats).
    pub incidence: Vec<Vec<usize>>,
}

/// Number of cells in each dimension.
pub trait CellCounts {
    fn cell_counts(&self) -> [usize; 3];
}

impl CellCounts for OrderedComplex {
    fn cell_counts(&self) -> [usize; 3] {
        [self.cells0.len(), self.cells1.len(), self.cells2.len()]
    }
}

impl CellCounts for SymmetricComplex {
    fn cell_counts(&self) -> [usize; 3] {
        [self.vertices.len(), self.edges.len(), self.faces.len()]
    }
}

pub fn euler_characteristic(c: &impl CellCounts) -> i64 {
    let [v, e, f] = c.cell_counts();
    v as i64 - e as i64 + f as i64
}

pub fn build_deleted_product(g: &Graph) -> OrderedComplex {
    let n = g.vertex_count();
    let m = g.edge_count();

    let cells0: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    let swap0 = cells0.iter().map(|&(u, v)| cells0.binary_search(&(v, u)).unwrap()).collect();

    let mut cells1 = Vec::new();
    for vertex in 0..n {
        for edge in 0..m {
            if !g.is_incident(edge, vertex) {
                cells1.push(OrderedEdgeCell::VertexEdge { vertex, edge });
            }
        }
    }
    for edge in 0..m {
        for vertex in 0..n {
            if !g.is_incident(edge, vertex) {
                cells1.push(OrderedEdgeCell::EdgeVertex { edge, vertex });
            }
        }
    }
    cells1.sort_unstable();
    let swap1 = cells1.iter().map(|c| cells1.binary_search(&c.swap()).unwrap()).collect();

    let cells2: Vec<(usize, usize)> =
        (0..m).flat_map(|e| (0..m).filter(move |&f| g.independent(e, f)).map(move |f| (e, f))).collect();
    let swap2 = cells2.iter().map(|&(e, f)| cells2.binary_search(&(f, e)).unwrap()).collect();

    // v x e lies in e' x e for each e' at v; e x v lies in e x e'.
    let incidence = cells1
        .iter()
        .map(|&c| {
            let mut faces: Vec<usize> = match c {
                OrderedEdgeCell::VertexEdge { vertex, edge } => g
                    .incident_edges(vertex)
                    .into_iter()
                    .filter(|&e2| g.independent(e2, edge))
                    .map(|e2| cells2.binary_search(&(e2, edge)).unwrap())
                    .collect(),
                OrderedEdgeCell::EdgeVertex { edge, vertex } => g
                    .incident_edges(vertex)
                    .into_iter()
                    .filter(|&e2| g.independent(edge, e2))
                    .map(|e2| cells2.binary_search(&(edge, e2)).unwrap())
                    .collect(),
            };
            faces.sort_unstable();
            faces
        })
        .collect();

    OrderedComplex { cells0, cells1, cells2, incidence, swap0, swap1, swap2 }
}

pub fn symmetric_quotient(c: &OrderedComplex) -> SymmetricComplex {
    let vertices: Vec<(usize, usize)> = c.cells0.iter().copied().filter(|&(u, v)| u < v).collect();
    let faces: Vec<(usize, usize)> = c.cells2.iter().copied().filter(|&(e, f)| e < f).collect();
    let mut edges = Vec::new();
    let mut incidence = Vec::new();
    for (i, cell) in c.cells1.iter().enumerate() {
        if let OrderedEdgeCell::VertexEdge { vertex, edge } = *cell {
            edges.push((vertex, edge));
            let mut fs: Vec<usize> = c.incidence[i]
                .iter()
                .map(|&k| {
                    let (e, f) = c.cells2[k];
                    faces.binary_search(&(e.min(f), e.max(f))).unwrap()
                })
                .collect();
            fs.sort_unstable();
            fs.dedup();
            incidence.push(fs);
        }
    }
    SymmetricComplex { vertices, edges, faces, incidence }
}

impl SymmetricComplex {
    pub fn from_graph(g: &Graph) -> Self {
        symmetric_quotient(&build_deleted_product(g))
    }

    /// Faces agree with the canonical pair index of the graph.
    pub fn faces_match(&self, idx: &PairIndex) -> bool {
        self.faces == idx.pairs()
    }
}

/// Every symmetric edge lies on exactly two faces.
pub fn is_closed_surface(c: &SymmetricComplex) -> Result<bool, ComplexError> {
    if c.faces.is_empty() {
        return Err(ComplexError::NoFaces);
    }
    Ok(c.incidence.iter().all(|fs| fs.len() == 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SurfaceStatus {
    ClosedSurface,
    NotSurface,
    /// No independent edge pairs, so no 2-cells at all.
    NoFaces,
}

pub fn surface_status(c: &SymmetricComplex) -> SurfaceStatus {
    match is_closed_surface(c) {
        Ok(true) => SurfaceStatus::ClosedSurface,
        Ok(false) => SurfaceStatus::NotSurface,
        Err(_) => SurfaceStatus::NoFaces,
    }
}

/// An edge `e` and a vertex `v` off it, where the number of edges at `v`
/// independent of `e` is not two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarViolation {
    pub edge: usize,
    pub vertex: usize,
    pub count: usize,
}

/// All failures of the local surface condition, ordered by (edge, vertex).
pub fn star_condition_violations(g: &Graph) -> Vec<StarViolation> {
    let mut out = Vec::new();
    for edge in 0..g.edge_count() {
        for vertex in 0..g.vertex_count() {
            if g.is_incident(edge, vertex) {
                continue;
            }
            let count = g.incident_edges(vertex).into_iter().filter(|&f| g.independent(edge, f)).count();
            if count != 2 {
                out.push(StarViolation { edge, vertex, count });
            }
        }
    }
    out
}

/// Canonical form of a graph on at most 8 vertices: the smallest edge bitmask
/// over all relabellings. Equal forms mean isomorphic graphs.
pub fn canonical_form(g: &Graph) -> Option<u64> {
    let n = g.vertex_count();
    if n > 8 {
        return None;
    }
    let mut adj = vec![0u8; n];
    for &(a, b) in g.edges() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    Some(canonical_mask(n, &adj))
}

fn canonical_mask(n: usize, adj: &[u8]) -> u64 {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut mask = 0u64;
        for (bit, &(a, b)) in slots.iter().enumerate() {
            if adj[perm[a]] >> perm[b] & 1 == 1 {
                mask |= 1 << bit;
            }
        }
        best = best.min(mask);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All graphs on at most `max_n` vertices, without isolated vertices and
/// with at least one independent pair, whose deleted product is a closed
/// surface; one per isomorphism class, ordered by (vertex count, canonical
/// mask).
pub fn find_surface_graphs(max_n: usize) -> Result<Vec<Graph>, ComplexError> {
    if max_n > MAX_SURFACE_SCAN {
        return Err(ComplexError::ScanTooLarge(max_n));
    }
    let mut found = Vec::new();
    for n in 4..=max_n {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut classes = std::collections::BTreeSet::new();
        let mut adj = vec![0u8; n];
        for mask in 0u64..1 << slots.len() {
            adj.iter_mut().for_each(|a| *a = 0);
            for (bit, &(a, b)) in slots.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
            if adj.contains(&0) || !satisfies_star_condition(n, &slots, mask, &adj) {
                continue;
            }
            classes.insert(canonical_mask(n, &adj));
        }
        for mask in classes {
            let edges = slots.iter().enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).map(|(_, &e)| e);
            found.push(Graph::new(n, edges)?);
        }
    }
    Ok(found)
}

fn satisfies_star_condition(n: usize, slots: &[(usize, usize)], mask: u64, adj: &[u8]) -> bool {
    let mut any_pair = false;
    for (bit, &(a, b)) in slots.iter().enumerate() {
        if mask >> bit & 1 == 0 {
            continue;
        }
        let ends = (1u8 << a) | (1u8 << b);
        for (v, &nbrs) in adj.iter().enumerate().take(n) {
            if ends >> v & 1 == 1 {
                continue;
            }
            match (nbrs & !ends).count_ones() {
                2 => any_pair = true,
                _ => return false,
            }
        }
    }
    any_pair
}
