use std::collections::HashSet;

use obslab_core::{CrossingSet, Graph, PairIndex};

/// Coboundaries built straight from the definition: for a vertex `v` and an
/// edge `e` missing it, the pairs `{e, f}` with `f` at `v` and independent
/// of `e`. Returns every sum of such rows as a bitmask over pairs.
pub fn coboundary_image(g: &Graph, idx: &PairIndex) -> HashSet<u64> {
    let mut rows = Vec::new();
    for v in 0..g.vertex_count() {
        for (ei, &(a, b)) in g.edges().iter().enumerate() {
            if a == v || b == v {
                continue;
            }
            let mut row = 0u64;
            for (fi, &(c, d)) in g.edges().iter().enumerate() {
                if (c == v || d == v) && ![a, b].contains(&c) && ![a, b].contains(&d) {
                    row |= 1 << idx.index_of(ei, fi).unwrap();
                }
            }
            rows.push(row);
        }
    }
    let mut image = HashSet::new();
    for mask in 0u64..1 << rows.len() {
        let mut x = 0;
        for (i, r) in rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x ^= r;
            }
        }
        image.insert(x);
    }
    image
}

pub fn set_to_mask(a: &CrossingSet) -> u64 {
    a.members().fold(0, |m, i| m | 1 << i)
}
