//! Orderly generation of connected colored graphs of a given order.
//!
//! Graphs are built one color at a time. Level `k` holds one representative
//! per isomorphism class of `k`-colored (possibly disconnected) graphs, where
//! isomorphisms may permute vertices and the `k` colors. Every class at level
//! `k + 1` arises from some level-`k` representative extended by a perfect
//! matching, so extending all representatives and rejecting isomorphs keeps
//! the levels complete. The first matching is fixed to `(0 1)(2 3)...`.
//!
//! The representatives at the next-to-last level are the shards: each one is
//! extended independently, and the connected results are keyed by their
//! color-permutation-invariant canonical code.

use std::collections::{BTreeMap, BTreeSet};

use crate::canon::{canonical_code, multiset_key, permutations, CanonicalCode, CodeFlavor};
use crate::graph::ColoredGraph;

/// All perfect matchings of `0..order` as involution arrays.
pub fn perfect_matchings(order: usize) -> Vec<Vec<u32>> {
    fn rec(m: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some(a) = m.iter().position(|&x| x == u32::MAX) else {
            out.push(m.clone());
            return;
        };
        for b in a + 1..m.len() {
            if m[b] == u32::MAX {
                m[a] = b as u32;
                m[b] = a as u32;
                rec(m, out);
                m[a] = u32::MAX;
                m[b] = u32::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![u32::MAX; order], &mut out);
    out
}

fn base_matching(order: usize) -> Vec<u32> {
    (0..order as u32).map(|v| v ^ 1).collect()
}

fn extend(g: &[Vec<u32>], m: &[u32]) -> ColoredGraph {
    let mut all: Vec<Vec<usize>> = g.iter().map(|x| x.iter().map(|&v| v as usize).collect()).collect();
    all.push(m.iter().map(|&v| v as usize).collect());
    ColoredGraph::from_matchings(&all).expect("matchings are valid involutions")
}

/// A partial graph given by its matchings.
pub type Shard = Vec<Vec<u32>>;

/// Representatives with `levels` colors on `order` vertices, sorted by their
/// isomorphism key.
pub fn level_representatives(order: usize, levels: usize) -> Vec<Shard> {
    assert!(order >= 2 && order % 2 == 0 && levels >= 1);
    let matchings = perfect_matchings(order);
    let mut reps: Vec<Shard> = vec![vec![base_matching(order)]];
    for k in 1..levels {
        let orders = permutations(k + 1);
        let mut next: BTreeMap<Vec<u32>, Shard> = BTreeMap::new();
        for r in &reps {
            for m in &matchings {
                let g = extend(r, m);
                let key = multiset_key(&g, &orders);
                next.entry(key).or_insert_with(|| {
                    let mut s = r.clone();
                    s.push(m.clone());
                    s
                });
            }
        }
        reps = next.into_values().collect();
    }
    reps
}

/// The connected graphs obtained by adding one last color to `shard`, keyed
/// by canonical code.
pub fn complete_shard(shard: &Shard, matchings: &[Vec<u32>]) -> BTreeSet<CanonicalCode> {
    let mut out = BTreeSet::new();
    for m in matchings {
        let g = extend(shard, m);
        if g.is_connected() {
            out.insert(canonical_code(&g, CodeFlavor::UpToColorPermutation).expect("connected"));
        }
    }
    out
}

/// Every connected `n_colors`-colored graph of the given order, up to vertex
/// and color permutations, sorted by code. Single-threaded.
pub fn connected_graphs(n_colors: usize, order: usize) -> Vec<CanonicalCode> {
    if n_colors == 1 {
        return if order == 2 { vec![canonical_code(&ColoredGraph::standard_sphere(1), CodeFlavor::UpToColorPermutation).unwrap()] } else { vec![] };
    }
    let matchings = perfect_matchings(order);
    let mut all = BTreeSet::new();
    for s in level_representatives(order, n_colors - 1) {
        all.extend(complete_shard(&s, &matchings));
    }
    all.into_iter().collect()
}
