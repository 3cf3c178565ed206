//! Deciding which crossing sets some plane drawing realises up to parity.
//!
//! A set `A` of independent pairs is realisable exactly when it lies in the
//! coset `phi + Im(d)`, where `phi` is the parity cocycle of any one drawing
//! and `d` is the symmetric differential from 1-cochains to 2-cochains of the
//! deleted product. We take `phi` from the convex straight-line drawing with
//! vertices in label order, computed combinatorially.

use serde::Serialize;
use thiserror::Error;

use crate::complex::SymmetricComplex;
use crate::gf2::{self, AffineSubspace, BitMatrix, BitVector, Echelon, Gf2Error, WeightHistogram};
use crate::graph::{
    enumerate_bipartition_subgraphs, enumerate_complete_subgraphs, enumerate_disjoint_cycle_pairs, CrossingSet, Graph,
    GraphError, PairIndex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealiseError {
    #[error("vertex order is not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("bound is stated for n >= 6, got {0}")]
    BoundDomain(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Parity cocycle of the straight-line drawing with vertices in convex
/// position in the cyclic order `order` (`order[k]` is the k-th vertex). Two
/// independent chords cross exactly when their endpoints interleave.
pub fn convex_reference_cocycle(g: &Graph, idx: &PairIndex, order: &[usize]) -> Result<CrossingSet, RealiseError> {
    let n = g.vertex_count();
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return Err(RealiseError::NotPermutation(n));
    }
    for (k, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(RealiseError::NotPermutation(n));
        }
        pos[v] = k;
    }
    let members = (0..idx.len()).filter(|&i| {
        let ((a, b), (c, d)) = idx.pair_vertices(i);
        let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
        let inside = |x: usize| lo < pos[x] && pos[x] < hi;
        inside(c) != inside(d)
    });
    Ok(CrossingSet::from_indices(idx, members))
}

/// Rows are symmetric 1-cells `{v, e}` in the order of
/// [`SymmetricComplex::edges`]; columns are independent pairs.
pub fn differential_matrix(g: &Graph) -> BitMatrix {
    differential_of(&SymmetricComplex::from_graph(g))
}

fn differential_of(c: &SymmetricComplex) -> BitMatrix {
    let cols = c.faces.len();
    let rows = c.incidence.iter().map(|fs| BitVector::from_indices(cols, fs.iter().copied())).collect();
    BitMatrix::new(cols, rows).expect("incidence lists index faces")
}

/// Everything needed to decide realisability for one graph.
#[derive(Debug, Clone)]
pub struct ObstructionModel {
    graph: Graph,
    pairs: PairIndex,
    complex: SymmetricComplex,
    differential: BitMatrix,
    reference: CrossingSet,
    coset: AffineSubspace,
    solver: Echelon,
}

/// Outcome of a realisability query. The witness lists symmetric 1-cells
/// (indices into the complex's edges) whose differentials sum to
/// `A + reference`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realisability {
    pub realisable: bool,
    pub witness: Option<Vec<usize>>,
}

impl ObstructionModel {
    pub fn new(g: &Graph) -> Self {
        let pairs = PairIndex::new(g);
        let complex = SymmetricComplex::from_graph(g);
        debug_assert!(complex.faces_match(&pairs));
        let differential = differential_of(&complex);
        let order: Vec<usize> = (0..g.vertex_count()).collect();
        let reference = convex_reference_cocycle(g, &pairs, &order).expect("identity order");
        let solver = Echelon::from_matrix(&differential);
        let coset = AffineSubspace::new(reference.bits().clone(), solver.basis().to_vec())
            .expect("echelon rows are independent");
        ObstructionModel { graph: g.clone(), pairs, complex, differential, reference, coset, solver }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pairs(&self) -> &PairIndex {
        &self.pairs
    }

    pub fn complex(&self) -> &SymmetricComplex {
        &self.complex
    }

    pub fn differential(&self) -> &BitMatrix {
        &self.differential
    }

    pub fn reference(&self) -> &CrossingSet {
        &self.reference
    }

    pub fn coset(&self) -> &AffineSubspace {
        &self.coset
    }

    pub fn coset_dimension(&self) -> usize {
        self.coset.dimension()
    }

    /// Dimension of the second symmetric cohomology group.
    pub fn cohomology_dimension(&self) -> usize {
        self.pairs.len() - self.coset.dimension()
    }

    /// Whether `v` is a coboundary, i.e. lies in `Im(d)`.
    pub fn is_exact(&self, v: &BitVector) -> Result<bool, RealiseError> {
        Ok(self.solver.contains(v)?)
    }

    pub fn is_two_realisable(&self, a: &CrossingSet) -> Result<Realisability, RealiseError> {
        a.check_len(&self.pairs)?;
        let target = a.bits() ^ self.reference.bits();
        let witness = self.solver.solve(&target)?.map(|c| c.iter_ones().collect::<Vec<_>>());
        Ok(Realisability { realisable: witness.is_some(), witness })
    }

    /// Symmetric 1-cell `(v, e)` for a witness entry.
    pub fn one_cell(&self, i: usize) -> (usize, usize) {
        self.complex.edges[i]
    }
}

pub fn obstruction_model(g: &Graph) -> ObstructionModel {
    ObstructionModel::new(g)
}

/// Cardinality histogram of all realisable sets.
pub fn realisable_spectrum(m: &ObstructionModel, workers: usize) -> Result<WeightHistogram, RealiseError> {
    Ok(gf2::weight_histogram(&m.coset, workers)?)
}

/// Provenance of a parity constraint row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// Pairs inside a 5-clique; odd.
    Clique,
    /// Pairs of a complete bipartite `K_{3,3}` on a vertex bipartition; odd.
    Bipartition,
    /// Pairs between two disjoint triangles; even.
    DisjointCycles,
}

/// Rows `S` with required parity of `|A ∩ S|`.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub rows: BitMatrix,
    pub parities: BitVector,
    pub provenance: Vec<ConstraintKind>,
}

impl ConstraintSystem {
    pub fn len(&self) -> usize {
        self.provenance.len()
    }

    pub fn is_empty(&self) -> bool {
        self.provenance.is_empty()
    }

    pub fn rank(&self) -> usize {
        gf2::rank(&self.rows)
    }

    pub fn is_satisfied(&self, a: &CrossingSet) -> Result<bool, RealiseError> {
        Ok(self.rows.mul_vec(a.bits())? == self.parities)
    }

    /// The affine solution set, or `None` if the constraints contradict.
    pub fn solution_space(&self) -> Result<Option<AffineSubspace>, RealiseError> {
        Ok(gf2::solve_linear_system(&self.rows, &self.parities)?)
    }

    /// Same rows, every required parity negated.
    pub fn flipped(&self) -> ConstraintSystem {
        ConstraintSystem {
            rows: self.rows.clone(),
            parities: &self.parities ^ &BitVector::ones(self.parities.len()),
            provenance: self.provenance.clone(),
        }
    }
}

/// 5-cliques (odd), `K_{3,3}` bipartitions (odd), then disjoint triangle
/// pairs (even).
pub fn parity_constraint_system(g: &Graph) -> ConstraintSystem {
    let idx = PairIndex::new(g);
    let mut rows = Vec::new();
    let mut parity = Vec::new();
    let mut provenance = Vec::new();
    let families = [
        (enumerate_complete_subgraphs(g, &idx, 5), ConstraintKind::Clique, true),
        (enumerate_bipartition_subgraphs(g, &idx, 3, 3), ConstraintKind::Bipartition, true),
        (enumerate_disjoint_cycle_pairs(g, &idx, 3), ConstraintKind::DisjointCycles, false),
    ];
    for (sets, kind, odd) in families {
        for s in sets {
            rows.push(s.into_bits());
            parity.push(odd);
            provenance.push(kind);
        }
    }
    ConstraintSystem {
        rows: BitMatrix::new(idx.len(), rows).expect("rows sized to the pair index"),
        parities: BitVector::from_bools(&parity),
        provenance,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterisationReport {
    /// The constraint solution set equals the realisable coset.
    pub holds: bool,
    pub pair_count: usize,
    pub constraint_count: usize,
    pub constraint_rank: usize,
    pub coset_dim: usize,
    /// The reference cocycle meets every required parity.
    pub basepoint_ok: bool,
    /// `constraint_rank + coset_dim == pair_count`.
    pub rank_ok: bool,
    /// Every coboundary has even intersection with every constraint row.
    pub orthogonal_ok: bool,
}

pub fn verify_condition_characterisation(g: &Graph) -> CharacterisationReport {
    let model = ObstructionModel::new(g);
    verify_characterisation_with(&model, &parity_constraint_system(g))
}

/// The three checks against an arbitrary constraint system. Together they
/// say the constraints cut out exactly the realisable coset: the basepoint
/// satisfies them, the coset directions are invisible to them, and the
/// dimensions agree.
pub fn verify_characterisation_with(model: &ObstructionModel, system: &ConstraintSystem) -> CharacterisationReport {
    let coset = model.coset();
    let basepoint_ok = system.rows.mul_vec(coset.basepoint()).map(|p| p == system.parities).unwrap_or(false);
    let orthogonal_ok = coset.basis().iter().all(|b| system.rows.rows().iter().all(|r| !r.dot(b)));
    let constraint_rank = system.rank();
    let coset_dim = coset.dimension();
    let pair_count = model.pairs().len();
    let rank_ok = constraint_rank + coset_dim == pair_count;
    CharacterisationReport {
        holds: basepoint_ok && orthogonal_ok && rank_ok,
        pair_count,
        constraint_count: system.len(),
        constraint_rank,
        coset_dim,
        basepoint_ok,
        rank_ok,
        orthogonal_ok,
    }
}

/// `floor(8/3 * C(n, 4))`, an upper bound on realisable set size for `K_n`.
pub fn max_realisable_bound(n: usize) -> Result<u64, RealiseError> {
    if n < 6 {
        return Err(RealiseError::BoundDomain(n));
    }
    let n = n as u128;
    let c4 = n * (n - 1) * (n - 2) * (n - 3) / 24;
    Ok((8 * c4 / 3) as u64)
}

/// The empty crossing set is realisable exactly for planar graphs.
pub fn planarity_crosscheck(g: &Graph) -> bool {
    let m = ObstructionModel::new(g);
    m.is_two_realisable(&CrossingSet::empty(m.pairs())).map(|r| r.realisable).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    #[test]
    fn convex_reference_examples() {
        let k4 = k(4);
        let idx = PairIndex::new(&k4);
        let r = convex_reference_cocycle(&k4, &idx, &[0, 1, 2, 3]).unwrap();
        assert_eq!(r.members().collect::<Vec<_>>(), vec![idx.index_of_vertices((0, 2), (1, 3)).unwrap()]);

        let k5 = k(5);
        let idx5 = PairIndex::new(&k5);
        for order in [[0, 1, 2, 3, 4], [3, 1, 4, 0, 2], [4, 3, 2, 1, 0]] {
            assert_eq!(convex_reference_cocycle(&k5, &idx5, &order).unwrap().cardinality(), 5);
        }

        let p = Graph::path(6).unwrap();
        let idxp = PairIndex::new(&p);
        assert_eq!(convex_reference_cocycle(&p, &idxp, &[0, 1, 2, 3, 4, 5]).unwrap().cardinality(), 0);
    }

    #[test]
    fn convex_reference_k33_brute_force() {
        // x1 x2 x3 y1 y2 y3 around the circle; chords x_i y_j, x_k y_l with
        // i != k, j != l cross iff (i < k) == (j < l).
        let g = Graph::complete_bipartite(3, 3).unwrap();
        let idx = PairIndex::new(&g);
        let r = convex_reference_cocycle(&g, &idx, &[0, 1, 2, 3, 4, 5]).unwrap();
        let mut expected = 0;
        for i in 0..3 {
            for k in 0..3 {
                for j in 0..3 {
                    for l in 0..3 {
                        if i < k && j != l && (j < l) == (i < k) {
                            expected += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(expected, 9);
        assert_eq!(r.cardinality(), expected);
    }

    #[test]
    fn convex_reference_rejects_bad_order() {
        let g = k(4);
        let idx = PairIndex::new(&g);
        assert!(convex_reference_cocycle(&g, &idx, &[0, 1, 1, 3]).is_err());
        assert!(convex_reference_cocycle(&g, &idx, &[0, 1, 2]).is_err());
        assert!(convex_reference_cocycle(&g, &idx, &[0, 1, 2, 7]).is_err());
    }

    #[test]
    fn differential_rows_follow_definition() {
        for g in [k(5), k(6), Graph::complete_bipartite(2, 3).unwrap()] {
            let q = SymmetricComplex::from_graph(&g);
            let idx = PairIndex::new(&g);
            let d = differential_matrix(&g);
            for (r, &(v, e)) in q.edges.iter().enumerate() {
                let expected = BitVector::from_indices(
                    idx.len(),
                    g.incident_edges(v).into_iter().filter_map(|f| idx.index_of(e, f)),
                );
                assert_eq!(d.row(r), &expected);
            }
        }
    }

    #[test]
    fn differential_ranks() {
        let d6 = differential_matrix(&k(6));
        assert_eq!((d6.row_count(), d6.col_count()), (60, 45));
        assert_eq!(gf2::rank(&d6), 35);
        let d23 = differential_matrix(&Graph::complete_bipartite(2, 3).unwrap());
        assert_eq!((d23.row_count(), d23.col_count()), (18, 6));
        assert_eq!(gf2::rank(&d23), 6);
        for kk in 1..=6 {
            let d = differential_matrix(&Graph::matching(kk).unwrap());
            assert_eq!(gf2::rank(&d), kk * (kk - 1) / 2);
        }
    }

    #[test]
    fn coset_dimensions() {
        assert_eq!(obstruction_model(&k(5)).coset_dimension(), 14);
        assert_eq!(obstruction_model(&Graph::complete_bipartite(3, 3).unwrap()).coset_dimension(), 17);
        assert_eq!(obstruction_model(&k(6)).coset_dimension(), 35);
        assert_eq!(obstruction_model(&k(6)).cohomology_dimension(), 10);
    }

    #[test]
    fn realisability_examples() {
        let m5 = obstruction_model(&k(5));
        for i in 0..15 {
            let a = CrossingSet::from_indices(m5.pairs(), [i]);
            assert!(m5.is_two_realisable(&a).unwrap().realisable);
        }
        let empty = m5.is_two_realisable(&CrossingSet::empty(m5.pairs())).unwrap();
        assert_eq!(empty, Realisability { realisable: false, witness: None });

        let m6 = obstruction_model(&k(6));
        let r = m6.is_two_realisable(m6.reference()).unwrap();
        assert_eq!(r.witness, Some(vec![]));

        let m4 = obstruction_model(&k(4));
        for mask in 0..8u64 {
            let a = CrossingSet::from_bits(BitVector::from_u64(3, mask));
            assert!(m4.is_two_realisable(&a).unwrap().realisable);
        }
    }

    #[test]
    fn witness_reproduces_set() {
        let m = obstruction_model(&k(6));
        let a = m.coset().point(&BitVector::from_u64(35, 0x5_1234_abcd)).unwrap();
        let r = m.is_two_realisable(&CrossingSet::from_bits(a.clone())).unwrap();
        let mut sum = m.reference().bits().clone();
        for &cell in r.witness.as_ref().unwrap() {
            sum ^= m.differential().row(cell);
        }
        assert_eq!(sum, a);
    }

    #[test]
    fn size_mismatch_is_error() {
        let m = obstruction_model(&k(5));
        let a = CrossingSet::from_bits(BitVector::zeros(3));
        assert!(matches!(m.is_two_realisable(&a), Err(RealiseError::Graph(GraphError::LengthMismatch { .. }))));
    }

    #[test]
    fn constraint_systems() {
        let s6 = parity_constraint_system(&k(6));
        assert_eq!(s6.len(), 26);
        let kinds: Vec<_> = s6.provenance.clone();
        assert!(kinds[..6].iter().all(|&c| c == ConstraintKind::Clique));
        assert!(kinds[6..16].iter().all(|&c| c == ConstraintKind::Bipartition));
        assert!(kinds[16..].iter().all(|&c| c == ConstraintKind::DisjointCycles));
        assert_eq!(s6.parities.count_ones(), 16);

        let s5 = parity_constraint_system(&k(5));
        assert_eq!((s5.len(), s5.provenance[0], s5.parities.get(0)), (1, ConstraintKind::Clique, true));
        let s33 = parity_constraint_system(&Graph::complete_bipartite(3, 3).unwrap());
        assert_eq!((s33.len(), s33.provenance[0]), (1, ConstraintKind::Bipartition));
    }

    #[test]
    fn characterisation_reports() {
        let r6 = verify_condition_characterisation(&k(6));
        assert!(r6.holds);
        assert_eq!((r6.constraint_rank, r6.coset_dim), (10, 35));
        let r5 = verify_condition_characterisation(&k(5));
        assert!(r5.holds);
        assert_eq!((r5.constraint_rank, r5.coset_dim), (1, 14));

        let m6 = obstruction_model(&k(6));
        let flipped = verify_characterisation_with(&m6, &parity_constraint_system(&k(6)).flipped());
        assert!(!flipped.holds);
        assert!(!flipped.basepoint_ok);
        assert!(flipped.orthogonal_ok && flipped.rank_ok);
    }

    #[test]
    fn bound_values() {
        assert_eq!(max_realisable_bound(6), Ok(40));
        assert_eq!(max_realisable_bound(7), Ok(93));
        assert_eq!(max_realisable_bound(8), Ok(186));
        assert_eq!(max_realisable_bound(5), Err(RealiseError::BoundDomain(5)));
    }

    #[test]
    fn planarity_examples() {
        assert!(planarity_crosscheck(&k(4)));
        assert!(!planarity_crosscheck(&k(5)));
        assert!(!planarity_crosscheck(&Graph::complete_bipartite(3, 3).unwrap()));
        assert!(planarity_crosscheck(&Graph::cycle(5).unwrap()));
        assert!(planarity_crosscheck(&Graph::complete_bipartite(2, 3).unwrap()));
    }
}
