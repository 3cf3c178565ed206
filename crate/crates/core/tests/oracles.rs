//! Library results checked against slow, independently written oracles.

mod common;

use std::collections::{BTreeSet, HashSet};

use common::{coboundary_image, set_to_mask};

use obslab_core::complex::{is_closed_surface, star_condition_violations, SymmetricComplex};
use obslab_core::drawing::{convex_points, crossing_report, Drawing};
use obslab_core::gf2::{weight_histogram, AffineSubspace, BitVector};
use obslab_core::realise::{obstruction_model, planarity_crosscheck};
use obslab_core::symmetry::{act_on_pairs, automorphism_group, fixed_ksubset_count, orbit_representatives};
use obslab_core::{CrossingSet, Graph, PairIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn realisability_matches_image_enumeration() {
    for g in [Graph::complete(4).unwrap(), Graph::complete_bipartite(2, 3).unwrap()] {
        let idx = PairIndex::new(&g);
        let image = coboundary_image(&g, &idx);
        // Reference parity from an actual drawing, not the combinatorial rule.
        let drawn = Drawing::straight_line(g.clone(), convex_points(g.vertex_count())).unwrap();
        let reference = set_to_mask(&crossing_report(&drawn).realized_set);
        let model = obstruction_model(&g);
        for mask in 0u64..1 << idx.len() {
            let a = CrossingSet::from_indices(&idx, (0..idx.len()).filter(|&i| mask >> i & 1 == 1));
            let expected = image.contains(&(mask ^ reference));
            assert_eq!(model.is_two_realisable(&a).unwrap().realisable, expected, "mask {mask:b}");
        }
    }
}

#[test]
fn witnesses_reconstruct_the_target() {
    let g = Graph::complete(5).unwrap();
    let model = obstruction_model(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let a = CrossingSet::from_indices(model.pairs(), (0..15).filter(|_| rng.gen_bool(0.5)));
        let r = model.is_two_realisable(&a).unwrap();
        assert_eq!(r.realisable, a.cardinality() % 2 == 1);
        if let Some(w) = r.witness {
            let mut sum = model.reference().bits().clone();
            for i in w {
                sum ^= model.differential().row(i);
            }
            assert_eq!(&sum, a.bits());
        }
    }
}

fn naive_histogram(sub: &AffineSubspace) -> Vec<u64> {
    let k = sub.dimension();
    let mut counts = vec![0u64; sub.vector_len() + 1];
    for mask in 0u64..1 << k {
        let mut v = sub.basepoint().clone();
        for (i, b) in sub.basis().iter().enumerate() {
            if mask >> i & 1 == 1 {
                v ^= b;
            }
        }
        counts[v.count_ones()] += 1;
    }
    counts
}

fn random_subspace(rng: &mut ChaCha8Rng, len: usize, dim: usize) -> AffineSubspace {
    loop {
        let random =
            |rng: &mut ChaCha8Rng| BitVector::from_bools(&(0..len).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
        let base = random(rng);
        let basis = (0..dim).map(|_| random(rng)).collect();
        if let Ok(s) = AffineSubspace::new(base, basis) {
            return s;
        }
    }
}

#[test]
fn histogram_matches_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for &(len, dim) in &[(1, 0), (5, 3), (20, 12), (40, 16), (64, 18), (70, 14), (130, 20), (45, 20)] {
        let sub = random_subspace(&mut rng, len, dim);
        let expected = naive_histogram(&sub);
        for workers in [1, 3, 8] {
            let h = weight_histogram(&sub, workers).unwrap();
            assert_eq!(h.counts(), &expected[..], "len {len} dim {dim} workers {workers}");
        }
    }
    for g in [Graph::complete(5).unwrap(), Graph::complete_bipartite(3, 3).unwrap()] {
        let model = obstruction_model(&g);
        assert_eq!(weight_histogram(model.coset(), 2).unwrap().counts(), &naive_histogram(model.coset())[..]);
    }
}

#[test]
fn cycle_index_matches_direct_fixed_counts() {
    for g in [
        Graph::complete_bipartite(2, 3).unwrap(),
        Graph::complete(5).unwrap(),
        Graph::complete_bipartite(3, 3).unwrap(),
        Graph::cycle(6).unwrap(),
        Graph::complete(4).unwrap(),
    ] {
        let idx = PairIndex::new(&g);
        let p = idx.len();
        assert!(p <= 18);
        for el in &automorphism_group(&g).unwrap().elements {
            let perm = act_on_pairs(el, &idx).unwrap();
            let mut direct = vec![0u128; p + 1];
            for mask in 0u32..1 << p {
                let mut img = 0u32;
                for (i, &to) in perm.iter().enumerate().take(p) {
                    if mask >> i & 1 == 1 {
                        img |= 1 << to;
                    }
                }
                if img == mask {
                    direct[mask.count_ones() as usize] += 1;
                }
            }
            for (k, &d) in direct.iter().enumerate() {
                assert_eq!(fixed_ksubset_count(el, &idx, k).unwrap(), d);
            }
        }
    }
}

/// The K_{2,3} class rows with parts {1,2,3} and {4,5}, computed by
/// enumerating subsets for a single class representative.
#[test]
fn k23_class_rows_by_enumeration() {
    let g = Graph::complete_bipartite(3, 2).unwrap();
    let idx = PairIndex::new(&g);
    let count = |cycles: &[&[usize]], k: u32| {
        let el = obslab_core::Permutation::from_cycles(5, cycles).unwrap();
        let perm = act_on_pairs(&el, &idx).unwrap();
        (0u32..1 << 6)
            .filter(|m| m.count_ones() == k)
            .filter(|&m| (0..6).filter(|&i| m >> i & 1 == 1).fold(0u32, |a, i| a | 1 << perm[i]) == m)
            .count()
    };
    assert_eq!(count(&[], 2), 15);
    assert_eq!(count(&[&[0, 1]], 2), 3);
    assert_eq!(count(&[&[0, 1, 2]], 2), 0);
    assert_eq!(count(&[&[3, 4]], 2), 3);
    assert_eq!(count(&[&[0, 1], &[3, 4]], 2), 3);
    assert_eq!(count(&[&[0, 1, 2], &[3, 4]], 2), 0);
    assert_eq!(count(&[], 3), 20);
    assert_eq!(count(&[&[0, 1]], 3), 0);
    assert_eq!(count(&[&[0, 1, 2]], 3), 2);
    assert_eq!(count(&[&[3, 4]], 3), 0);
    assert_eq!(count(&[&[0, 1], &[3, 4]], 3), 4);
    assert_eq!(count(&[&[0, 1, 2], &[3, 4]], 3), 0);
}

#[test]
fn orbits_match_naive_partition() {
    for (g, k) in [
        (Graph::complete_bipartite(2, 3).unwrap(), 2),
        (Graph::complete_bipartite(2, 3).unwrap(), 3),
        (Graph::complete(5).unwrap(), 3),
        (Graph::complete(5).unwrap(), 2),
    ] {
        let idx = PairIndex::new(&g);
        let perms: Vec<Vec<usize>> =
            automorphism_group(&g).unwrap().elements.iter().map(|e| act_on_pairs(e, &idx).unwrap()).collect();
        let mut seen = HashSet::new();
        let mut orbits = Vec::new();
        for mask in 0u32..1 << idx.len() {
            if mask.count_ones() as usize != k || seen.contains(&mask) {
                continue;
            }
            let orbit: BTreeSet<u32> = perms
                .iter()
                .map(|p| (0..idx.len()).filter(|&i| mask >> i & 1 == 1).fold(0u32, |a, i| a | 1 << p[i]))
                .collect();
            seen.extend(orbit.iter().copied());
            orbits.push(orbit);
        }
        let reps = orbit_representatives(&g, k).unwrap();
        assert_eq!(reps.len(), orbits.len());
        for rep in &reps {
            let m = rep.representative.members().fold(0u32, |a, i| a | 1 << i);
            let orbit = orbits.iter().find(|o| o.contains(&m)).unwrap();
            assert_eq!(rep.size as usize, orbit.len());
            let smallest =
                orbit.iter().map(|&x| (0..idx.len()).filter(|&i| x >> i & 1 == 1).collect::<Vec<_>>()).min().unwrap();
            assert_eq!(rep.representative.members().collect::<Vec<_>>(), smallest);
        }
    }
}

/// Realisability is constant on orbits, checked on every 3-subset of PK5.
#[test]
fn realisability_constant_on_k5_orbits() {
    let g = Graph::complete(5).unwrap();
    let model = obstruction_model(&g);
    let idx = model.pairs();
    let perms: Vec<Vec<usize>> =
        automorphism_group(&g).unwrap().elements.iter().map(|e| act_on_pairs(e, idx).unwrap()).collect();
    for k in 0..=3 {
        for rep in orbit_representatives(&g, k).unwrap() {
            let r = model.is_two_realisable(&rep.representative).unwrap().realisable;
            for p in &perms {
                let image = CrossingSet::from_indices(idx, rep.representative.members().map(|i| p[i]));
                assert_eq!(model.is_two_realisable(&image).unwrap().realisable, r);
            }
        }
    }
}

/// Planarity by brute force: some edge subset is a subdivision of K5 or
/// K3,3.
fn has_kuratowski_subgraph(g: &Graph) -> bool {
    let m = g.edge_count();
    let n = g.vertex_count();
    (1u32..1 << m).any(|mask| {
        let edges: Vec<(usize, usize)> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| g.edge(i)).collect();
        is_kuratowski_subdivision(n, &edges)
    })
}

fn is_kuratowski_subdivision(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    if adj.iter().any(|a| a.len() == 1) || !(branch.len() == 5 || branch.len() == 6) {
        return false;
    }
    // Follow each degree-2 chain from a branch vertex to the next one.
    let mut contracted = BTreeSet::new();
    let mut chain_edges = 0;
    for &b in &branch {
        for &start in &adj[b] {
            let (mut prev, mut cur) = (b, start);
            chain_edges += 1;
            while adj[cur].len() == 2 {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
                chain_edges += 1;
            }
            if cur == b {
                return false;
            }
            contracted.insert((b.min(cur), b.max(cur)));
        }
    }
    // Every edge must lie on some chain (no detached cycles), and chains
    // must give a simple graph.
    if chain_edges != 2 * edges.len() {
        return false;
    }
    let deg = |v: usize| contracted.iter().filter(|&&(a, b)| a == v || b == v).count();
    if branch.len() == 5 {
        contracted.len() == 10 && branch.iter().all(|&v| deg(v) == 4 && adj[v].len() == 4)
    } else {
        if contracted.len() != 9 || branch.iter().any(|&v| deg(v) != 3 || adj[v].len() != 3) {
            return false;
        }
        // 3-regular on six vertices and triangle-free means K3,3.
        !contracted.iter().any(|&(a, b)| {
            branch
                .iter()
                .any(|&c| contracted.contains(&(a.min(c), a.max(c))) && contracted.contains(&(b.min(c), b.max(c))))
        })
    }
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    Graph::new(n, slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
}

#[test]
fn kuratowski_oracle_sanity() {
    assert!(has_kuratowski_subgraph(&Graph::complete(5).unwrap()));
    assert!(has_kuratowski_subgraph(&Graph::complete_bipartite(3, 3).unwrap()));
    assert!(!has_kuratowski_subgraph(&Graph::complete(4).unwrap()));
    assert!(!has_kuratowski_subgraph(&Graph::cycle(6).unwrap()));
    // K3,3 with one edge subdivided (7 vertices).
    let sub = Graph::new(7, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 6), (5, 6)]).unwrap();
    assert!(has_kuratowski_subgraph(&sub));
}

#[test]
fn planarity_matches_kuratowski_on_small_graphs() {
    for n in 1..=5 {
        for mask in 0u64..1 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            assert_eq!(planarity_crosscheck(&g), !has_kuratowski_subgraph(&g), "n={n} mask={mask:b}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..60 {
        let g = graph_from_mask(6, rng.gen_range(0..1u64 << 15));
        assert_eq!(planarity_crosscheck(&g), !has_kuratowski_subgraph(&g), "{:?}", g.edges());
    }
    for name in ["K4", "K5", "K6", "K2,3", "K3,3", "C5", "M_4", "P4"] {
        let g = Graph::from_name(name).unwrap();
        assert_eq!(planarity_crosscheck(&g), !has_kuratowski_subgraph(&g), "{name}");
    }
}

#[test]
fn star_condition_iff_closed_surface() {
    for n in 1..=6 {
        for mask in 0u64..1 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            let c = SymmetricComplex::from_graph(&g);
            if let Ok(closed) = is_closed_surface(&c) {
                assert_eq!(closed, star_condition_violations(&g).is_empty(), "n={n} mask={mask:b}");
            }
        }
    }
}

/// Orbits of 3-subsets of PK_{2,3} with parts {1,2,3} and {4,5}. Writing the
/// pair {a4, b5} as an arc a -> b on {1,2,3}, the orbits are the transitive
/// triangles (6), the directed 3-cycles (2), and a digon plus one arc (12).
#[test]
fn k23_triple_orbits() {
    let g = Graph::complete_bipartite(3, 2).unwrap();
    let idx = PairIndex::new(&g);
    let arc = |a: usize, b: usize| idx.index_of_vertices((a - 1, 3), (b - 1, 4)).unwrap();
    let perms: Vec<Vec<usize>> =
        automorphism_group(&g).unwrap().elements.iter().map(|e| act_on_pairs(e, &idx).unwrap()).collect();
    let orbit = |arcs: &[(usize, usize)]| -> BTreeSet<Vec<usize>> {
        let a = CrossingSet::from_indices(&idx, arcs.iter().map(|&(x, y)| arc(x, y)));
        perms.iter().map(|p| obslab_core::symmetry::permute_set(p, &a).members().collect()).collect()
    };
    let transitive = orbit(&[(1, 2), (1, 3), (2, 3)]);
    let cyclic = orbit(&[(1, 2), (2, 3), (3, 1)]);
    let digon_out = orbit(&[(1, 2), (2, 1), (2, 3)]);
    let digon_in = orbit(&[(1, 2), (1, 3), (3, 1)]);
    assert_eq!((transitive.len(), cyclic.len(), digon_out.len()), (6, 2, 12));
    assert_eq!(digon_out, digon_in);

    let reps: BTreeSet<BTreeSet<Vec<usize>>> = orbit_representatives(&g, 3)
        .unwrap()
        .iter()
        .map(|o| {
            let arcs: Vec<(usize, usize)> = o
                .representative
                .members()
                .map(|i| match idx.pair_vertices(i) {
                    ((a, 3), (b, _)) | ((b, _), (a, 3)) => (a + 1, b + 1),
                    other => panic!("unexpected pair {other:?}"),
                })
                .collect();
            orbit(&arcs)
        })
        .collect();
    assert_eq!(reps, BTreeSet::from([transitive, cyclic, digon_out]));
}
