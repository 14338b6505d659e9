//! Independent recomputations checked against the library.

use std::collections::BTreeSet;

use gemkit::catalogue::enumerate::{connected_graphs, perfect_matchings};
use gemkit::canon::permutations;
use gemkit::fixtures;
use gemkit::genus::genus_wrt;
use gemkit::snf::{AbelianGroup, IntMatrix};
use gemkit::{ColoredGraph, CyclicPermutation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Smallest matching table over all vertex and color relabelings.
fn brute_canonical(m: &[Vec<usize>], vperms: &[Vec<usize>], cperms: &[Vec<usize>]) -> Vec<usize> {
    let n = m.len();
    let p = m[0].len();
    let mut best: Option<Vec<usize>> = None;
    let mut cur = vec![0; n * p];
    for cp in cperms {
        for vp in vperms {
            for (c, &src) in cp.iter().enumerate() {
                for v in 0..p {
                    cur[c * p + vp[v]] = vp[m[src][v]];
                }
            }
            if best.as_ref().map_or(true, |b| cur < *b) {
                best = Some(cur.clone());
            }
        }
    }
    best.unwrap()
}

fn brute_force_count(n: usize, order: usize) -> usize {
    let ms: Vec<Vec<usize>> = perfect_matchings(order).into_iter().map(|m| m.into_iter().map(|x| x as usize).collect()).collect();
    let vperms = permutations(order);
    let cperms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let tuple: Vec<Vec<usize>> = idx.iter().map(|&i| ms[i].clone()).collect();
        let g = ColoredGraph::from_matchings(&tuple).unwrap();
        if g.is_connected() {
            seen.insert(brute_canonical(&tuple, &vperms, &cperms));
        }
        // odometer over all tuples
        let mut k = 0;
        loop {
            if k == n {
                return seen.len();
            }
            idx[k] += 1;
            if idx[k] < ms.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for (n, order) in [(3, 2), (3, 4), (3, 6), (4, 2), (4, 4), (5, 2), (5, 4)] {
        assert_eq!(connected_graphs(n, order).len(), brute_force_count(n, order), "n = {n}, order = {order}");
    }
}

fn two_coloring(g: &ColoredGraph) -> Vec<bool> {
    let mut side = vec![None; g.order()];
    side[0] = Some(true);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for c in 0..g.n_colors() {
            let w = g.neighbor(v, c);
            if side[w].is_none() {
                side[w] = Some(!side[v].unwrap());
                stack.push(w);
            }
        }
    }
    side.into_iter().map(Option::unwrap).collect()
}

/// Genus of the regular embedding of a bipartite graph, by tracing faces of
/// the rotation system: `ε` at one class, `ε⁻¹` at the other.
fn traced_genus(g: &ColoredGraph, eps: &[usize]) -> i64 {
    let n = g.n_colors();
    let p = g.order();
    let class = two_coloring(g);
    let pos: Vec<usize> = (0..n).map(|c| eps.iter().position(|&x| x == c).unwrap()).collect();
    let mut seen = vec![false; p * n];
    let mut faces = 0i64;
    for start in 0..p * n {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            let (v, c) = (d / n, d % n);
            let w = g.neighbor(v, c);
            let step = if class[w] { 1 } else { n - 1 };
            d = w * n + eps[(pos[c] + step) % n];
        }
    }
    let edges = (p * n / 2) as i64;
    let chi = p as i64 - edges + faces;
    (2 - chi) / 2
}

#[test]
fn genus_matches_face_tracing() {
    let mut graphs = vec![fixtures::cp2(), fixtures::cp2_sum(2), fixtures::cp2_boundary(), fixtures::torus(), fixtures::sigma(4)];
    for n in [3, 4, 5] {
        for c in connected_graphs(n, 6) {
            graphs.push(c.decode().unwrap());
        }
    }
    let mut checked = 0;
    for g in graphs.iter().filter(|g| g.is_bipartite()) {
        for eps in CyclicPermutation::all(g.n_colors()) {
            let rho = genus_wrt(g, &eps).unwrap();
            assert_eq!(rho.to_int(), Some(traced_genus(g, eps.colors())), "{eps}\n{}", g.to_gem_string());
            checked += 1;
        }
    }
    assert!(checked > 100);
}

fn det(m: &[Vec<i64>]) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..k {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
        let term = BigInt::from(m[0][j]) * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// Invariant factors as quotients of successive gcds of `k × k` minors.
fn determinantal_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let (rows, cols) = (m.len(), m[0].len());
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

#[test]
fn smith_form_matches_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let mut im = IntMatrix::zeros(rows, cols);
        for (r, row) in m.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                im.set(r, c, x);
            }
        }
        let d = determinantal_factors(&m);
        let expected = AbelianGroup {
            rank: cols - d.len(),
            torsion: d.iter().filter(|x| x.abs() != BigInt::from(1)).map(|x| x.abs()).collect(),
        };
        assert_eq!(AbelianGroup::from_relations(&im), expected, "{m:?}");
    }
}
