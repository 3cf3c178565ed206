//! Automorphism groups acting on independent pairs, with Burnside counting
//! and canonical orbit representatives for crossing sets of fixed size.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{CrossingSet, Graph, PairIndex};

/// Largest vertex count for automorphism search.
pub const MAX_AUTOMORPHISM_VERTICES: usize = 10;
/// Largest group we materialise.
pub const MAX_GROUP_ORDER: usize = 40_320;
/// Largest number of k-subsets orbit enumeration will walk.
pub const MAX_SUBSET_ENUMERATION: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("automorphism search limited to {MAX_AUTOMORPHISM_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("automorphism group exceeds {MAX_GROUP_ORDER} elements")]
    GroupTooLarge,
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("permutation does not preserve the edges at vertex {0}")]
    NotAutomorphism(usize),
    #[error("C({pairs}, {k}) subsets exceeds the enumeration bound")]
    EnumerationTooLarge { pairs: usize, k: usize },
    #[error("k = {k} exceeds the {pairs} independent pairs")]
    CardinalityTooLarge { pairs: usize, k: usize },
    #[error("fixed-subset count overflowed")]
    Overflow,
    #[error("Burnside sum {sum} is not divisible by group order {order}")]
    NonIntegralAverage { sum: u128, order: usize },
}

/// Vertex permutation `i -> images[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self, SymmetryError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(SymmetryError::NotPermutation(n));
            }
        }
        Ok(Permutation { images })
    }

    /// Permutation of `0..n` built from cycles, e.g. `[[0, 1], [3, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, SymmetryError> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &v) in c.iter().enumerate() {
                if v >= n {
                    return Err(SymmetryError::NotPermutation(n));
                }
                images[v] = c[(i + 1) % c.len()];
            }
        }
        Self::new(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.images).into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Cycle lengths including fixed points, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = cycles_of(&self.images).iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

fn cycles_of(images: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            c.push(i);
            i = images[i];
        }
        out.push(c);
    }
    out
}

/// One-based cycle notation, `id` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        let sep = if self.images.len() > 9 { " " } else { "" };
        for c in cycles {
            let body: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
            write!(f, "({})", body.join(sep))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

/// A materialised permutation group.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub generators: Vec<Permutation>,
    pub elements: Vec<Permutation>,
    pub order: usize,
}

impl PermGroup {
    /// Group from a full, closed element list (identity included).
    fn from_elements(mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        let generators = greedy_generators(&elements);
        let order = elements.len();
        PermGroup { generators, elements, order }
    }

    /// Conjugacy classes, each listed with its representative first. The
    /// representative is the element whose cycle list is smallest, which
    /// picks e.g. `(12)` over `(13)`.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Permutation>> {
        let mut assigned = HashSet::new();
        let mut classes = Vec::new();
        for x in &self.elements {
            if assigned.contains(x) {
                continue;
            }
            let mut class: Vec<Permutation> = self
                .elements
                .iter()
                .map(|h| h.compose(x).compose(&h.inverse()))
                .collect::<HashSet<_>>()
                .into_iter()
                .collect();
            class.sort_by_key(|p| (p.cycles(), p.images.clone()));
            assigned.extend(class.iter().cloned());
            classes.push(class);
        }
        classes.sort_by_key(|c| c[0].cycles());
        classes
    }
}

fn greedy_generators(elements: &[Permutation]) -> Vec<Permutation> {
    let Some(first) = elements.first() else {
        return Vec::new();
    };
    let mut closure: HashSet<Permutation> = HashSet::from([Permutation::identity(first.len())]);
    let mut gens = Vec::new();
    for p in elements {
        if closure.contains(p) {
            continue;
        }
        gens.push(p.clone());
        let mut frontier: Vec<Permutation> = closure.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = g.compose(&x);
                if closure.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        if closure.len() == elements.len() {
            break;
        }
    }
    gens
}

/// All automorphisms, found by backtracking over vertex images with
/// degree and adjacency pruning.
pub fn automorphism_group(g: &Graph) -> Result<PermGroup, SymmetryError> {
    let n = g.vertex_count();
    if n > MAX_AUTOMORPHISM_VERTICES {
        return Err(SymmetryError::TooManyVertices(n));
    }
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut found = Vec::new();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];

    struct Search<'a> {
        adj: &'a [Vec<bool>],
        deg: &'a [usize],
    }
    impl Search<'_> {
        fn go(
            &self,
            v: usize,
            images: &mut [usize],
            used: &mut [bool],
            found: &mut Vec<Permutation>,
        ) -> Result<(), SymmetryError> {
            let n = images.len();
            if v == n {
                if found.len() >= MAX_GROUP_ORDER {
                    return Err(SymmetryError::GroupTooLarge);
                }
                found.push(Permutation { images: images.to_vec() });
                return Ok(());
            }
            for w in 0..n {
                if used[w] || self.deg[w] != self.deg[v] {
                    continue;
                }
                if (0..v).any(|u| self.adj[u][v] != self.adj[images[u]][w]) {
                    continue;
                }
                images[v] = w;
                used[w] = true;
                self.go(v + 1, images, used, found)?;
                used[w] = false;
            }
            Ok(())
        }
    }
    Search { adj: &adj, deg: &deg }.go(0, &mut images, &mut used, &mut found)?;
    Ok(PermGroup::from_elements(found))
}

/// The permutation of pair indices induced by a vertex automorphism.
pub fn act_on_pairs(p: &Permutation, idx: &PairIndex) -> Result<Vec<usize>, SymmetryError> {
    let edges: Vec<(usize, usize)> = (0..idx.edge_count()).map(|e| idx.edge(e)).collect();
    for &(u, v) in &edges {
        if v >= p.len() {
            return Err(SymmetryError::NotPermutation(p.len()));
        }
        let (a, b) = (p.apply(u), p.apply(v));
        if edges.binary_search(&(a.min(b), a.max(b))).is_err() {
            return Err(SymmetryError::NotAutomorphism(u));
        }
    }
    Ok((0..idx.len())
        .map(|i| {
            let ((a, b), (c, d)) = idx.pair_vertices(i);
            idx.index_of_vertices((p.apply(a), p.apply(b)), (p.apply(c), p.apply(d)))
                .expect("automorphisms preserve independence")
        })
        .collect())
}

/// Image of a crossing set under an induced pair permutation.
pub fn permute_set(pair_perm: &[usize], a: &CrossingSet) -> CrossingSet {
    CrossingSet::from_bits(crate::gf2::BitVector::from_indices(a.len(), a.members().map(|i| pair_perm[i])))
}

/// Number of `k`-subsets of pairs mapped to themselves by `p`: the
/// coefficient of `x^k` in the product over pair-cycles of `1 + x^len`.
pub fn fixed_ksubset_count(p: &Permutation, idx: &PairIndex, k: usize) -> Result<u128, SymmetryError> {
    let perm = act_on_pairs(p, idx)?;
    fixed_count_from_pair_perm(&perm, k)
}

fn fixed_count_from_pair_perm(perm: &[usize], k: usize) -> Result<u128, SymmetryError> {
    if k > perm.len() {
        return Ok(0);
    }
    let mut poly = vec![0u128; k + 1];
    poly[0] = 1;
    for c in cycles_of(perm) {
        let len = c.len();
        for d in (len..=k).rev() {
            poly[d] = poly[d].checked_add(poly[d - len]).ok_or(SymmetryError::Overflow)?;
        }
    }
    Ok(poly[k])
}

pub fn burnside_orbit_count(g: &Graph, k: usize) -> Result<u128, SymmetryError> {
    let group = automorphism_group(g)?;
    let idx = PairIndex::new(g);
    burnside_with(&group, &idx, k)
}

fn burnside_with(group: &PermGroup, idx: &PairIndex, k: usize) -> Result<u128, SymmetryError> {
    let mut sum = 0u128;
    for p in &group.elements {
        sum = sum.checked_add(fixed_ksubset_count(p, idx, k)?).ok_or(SymmetryError::Overflow)?;
    }
    if !sum.is_multiple_of(group.order as u128) {
        return Err(SymmetryError::NonIntegralAverage { sum, order: group.order });
    }
    Ok(sum / group.order as u128)
}

/// One conjugacy class row of a Burnside table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    /// Cycle notation with one-based vertex labels.
    pub representative: String,
    pub representative_images: Vec<usize>,
    pub class_size: usize,
    /// Fixed subsets per requested cardinality.
    pub fixed: Vec<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurnsideAudit {
    pub group_order: usize,
    pub cardinalities: Vec<usize>,
    pub rows: Vec<AuditRow>,
    /// Sum over all group elements, per cardinality.
    pub totals: Vec<u128>,
    pub orbits: Vec<u128>,
}

/// Burnside table by conjugacy class for each cardinality in `ks`.
pub fn burnside_audit(g: &Graph, ks: &[usize]) -> Result<BurnsideAudit, SymmetryError> {
    let group = automorphism_group(g)?;
    let idx = PairIndex::new(g);
    let mut rows = Vec::new();
    let mut totals = vec![0u128; ks.len()];
    for class in group.conjugacy_classes() {
        let rep = &class[0];
        let perm = act_on_pairs(rep, &idx)?;
        let fixed = ks.iter().map(|&k| fixed_count_from_pair_perm(&perm, k)).collect::<Result<Vec<_>, _>>()?;
        for (t, f) in totals.iter_mut().zip(&fixed) {
            *t += f * class.len() as u128;
        }
        rows.push(AuditRow {
            representative: rep.to_string(),
            representative_images: rep.images().to_vec(),
            class_size: class.len(),
            fixed,
        });
    }
    let orbits = totals
        .iter()
        .map(|&t| {
            if t % group.order as u128 == 0 {
                Ok(t / group.order as u128)
            } else {
                Err(SymmetryError::NonIntegralAverage { sum: t, order: group.order })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BurnsideAudit { group_order: group.order, cardinalities: ks.to_vec(), rows, totals, orbits })
}

/// An orbit of `k`-subsets: its canonical member and how many sets it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: CrossingSet,
    pub size: u128,
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// One representative per orbit of `k`-subsets of pairs under the
/// automorphism group. The representative is the member whose sorted list
/// of pair indices is lexicographically smallest; orbits come out in that
/// order.
pub fn orbit_representatives(g: &Graph, k: usize) -> Result<Vec<Orbit>, SymmetryError> {
    let idx = PairIndex::new(g);
    let p = idx.len();
    if k > p {
        return Err(SymmetryError::CardinalityTooLarge { pairs: p, k });
    }
    if binomial(p, k) > MAX_SUBSET_ENUMERATION {
        return Err(SymmetryError::EnumerationTooLarge { pairs: p, k });
    }
    let group = automorphism_group(g)?;
    let perms: Vec<Vec<usize>> = group.elements.iter().map(|e| act_on_pairs(e, &idx)).collect::<Result<_, _>>()?;

    let mut out = Vec::new();
    let mut comb: Vec<usize> = (0..k).collect();
    let mut image = vec![0usize; k];
    loop {
        let mut stabiliser = 0usize;
        let mut canonical = true;
        for perm in &perms {
            for (slot, &i) in image.iter_mut().zip(&comb) {
                *slot = perm[i];
            }
            image.sort_unstable();
            match image.cmp(&comb) {
                std::cmp::Ordering::Less => {
                    canonical = false;
                    break;
                }
                std::cmp::Ordering::Equal => stabiliser += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        if canonical {
            out.push(Orbit {
                representative: CrossingSet::from_indices(&idx, comb.iter().copied()),
                size: (group.order / stabiliser) as u128,
            });
        }
        if !next_combination(&mut comb, p) {
            break;
        }
    }
    Ok(out)
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}
