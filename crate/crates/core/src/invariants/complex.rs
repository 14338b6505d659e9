//! The colored triangulation `K(Γ)` dual to a colored graph.
//!
//! A `k`-simplex of `K(Γ)` is a residue on `n - k` colors; its vertices are
//! labelled by the `k + 1` missing colors. Removing label `l` from a simplex
//! gives the face that corresponds to the residue on one more color (`l`)
//! containing it. Simplices are ordered by their sorted label lists, which
//! makes `K(Γ)` a Δ-complex and the boundary signs the usual alternating ones.

use serde::Serialize;

use crate::graph::{colors_of, ColorMask, ColoredGraph};
use crate::snf::{AbelianGroup, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainComplexSummary {
    /// Number of `k`-simplices, `k = 0..=n`.
    pub simplex_counts: Vec<usize>,
    pub euler: i64,
}

pub struct ChainComplex {
    n_colors: usize,
    // component labelling of every residue mask
    comps: Vec<Vec<u32>>,
    // first simplex index of each residue mask within its dimension
    offset: Vec<usize>,
    counts: Vec<usize>,
    // representative vertex of each simplex, per dimension
    reps: Vec<Vec<(ColorMask, u32)>>,
}

impl ChainComplex {
    pub fn new(g: &ColoredGraph) -> Self {
        let n = g.n_colors();
        let full = 1usize << n;
        let mut comps = Vec::with_capacity(full);
        let mut offset = vec![0; full];
        let mut counts = vec![0; n];
        let mut reps: Vec<Vec<(ColorMask, u32)>> = vec![Vec::new(); n];
        for mask in 0..full {
            let (comp, count) = g.components(mask as ColorMask);
            if mask as u32 != g.all_colors() {
                let k = n - 1 - (mask as u32).count_ones() as usize;
                offset[mask] = counts[k];
                counts[k] += count;
                let mut seen = vec![false; count];
                for (v, &c) in comp.iter().enumerate() {
                    if !seen[c as usize] {
                        seen[c as usize] = true;
                        reps[k].push((mask as ColorMask, v as u32));
                    }
                }
            }
            comps.push(comp);
        }
        ChainComplex { n_colors: n, comps, offset, counts, reps }
    }

    pub fn dimension(&self) -> usize {
        self.n_colors - 1
    }

    pub fn summary(&self) -> ChainComplexSummary {
        let euler = self.counts.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        ChainComplexSummary { simplex_counts: self.counts.clone(), euler }
    }

    fn full(&self) -> ColorMask {
        ((1u64 << self.n_colors) - 1) as ColorMask
    }

    /// Index of the simplex dual to the residue on `mask` through `v`.
    fn index(&self, mask: ColorMask, v: u32) -> usize {
        self.offset[mask as usize] + self.comps[mask as usize][v as usize] as usize
    }

    /// Signed faces of the `i`-th `k`-simplex.
    fn faces(&self, k: usize, i: usize) -> Vec<(usize, i64)> {
        let (mask, v) = self.reps[k][i];
        let labels = colors_of(self.full() & !mask);
        labels
            .iter()
            .enumerate()
            .map(|(t, &l)| (self.index(mask | (1 << l), v), if t % 2 == 0 { 1 } else { -1 }))
            .collect()
    }

    /// Boundary map `C_k -> C_{k-1}` as a `#(k-1)-simplices x #k-simplices`
    /// matrix; `k` must be at least 1.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.counts[k - 1], self.counts[k]);
        for i in 0..self.counts[k] {
            for (f, s) in self.faces(k, i) {
                m.add(f, i, s);
            }
        }
        m
    }

    /// Integral homology groups `H_0 .. H_n`.
    pub fn homology(&self) -> Vec<AbelianGroup> {
        let top = self.dimension();
        let factors: Vec<Vec<_>> = (1..=top).map(|k| self.boundary(k).invariant_factors()).collect();
        let rank = |k: usize| if k == 0 || k > top { 0 } else { factors[k - 1].len() };
        (0..=top)
            .map(|k| {
                let free = self.counts[k] - rank(k) - rank(k + 1);
                let torsion = if k < top { factors[k].iter().filter(|d| !num_traits::One::is_one(*d)).cloned().collect() } else { Vec::new() };
                AbelianGroup { rank: free, torsion }
            })
            .collect()
    }

    /// `H_1` as the abelianized edge-path group of the 2-skeleton: one
    /// generator per edge off a spanning tree of the 1-skeleton, one relator
    /// per triangle.
    pub fn h1_edge_path(&self) -> AbelianGroup {
        if self.dimension() < 2 {
            return AbelianGroup::default();
        }
        let full = self.full();
        let vertex_of = |mask: ColorMask, v: u32| self.index(mask, v);
        // edges as (tail, head) in label order
        let mut parent: Vec<usize> = (0..self.counts[0]).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut generator = vec![usize::MAX; self.counts[1]];
        let mut n_gens = 0;
        for (e, &(mask, v)) in self.reps[1].iter().enumerate() {
            let labels = colors_of(full & !mask);
            let a = vertex_of(mask | (1 << labels[1]), v);
            let b = vertex_of(mask | (1 << labels[0]), v);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            } else {
                generator[e] = n_gens;
                n_gens += 1;
            }
        }
        let mut rel = IntMatrix::zeros(self.counts[2], n_gens);
        for (t, &(mask, v)) in self.reps[2].iter().enumerate() {
            let labels = colors_of(full & !mask);
            // loop a -> b -> c -> a: [ab] + [bc] - [ac]
            let ab = self.index(mask | (1 << labels[2]), v);
            let bc = self.index(mask | (1 << labels[0]), v);
            let ac = self.index(mask | (1 << labels[1]), v);
            for (e, s) in [(ab, 1), (bc, 1), (ac, -1)] {
                if generator[e] != usize::MAX {
                    rel.add(t, generator[e], s);
                }
            }
        }
        AbelianGroup::from_relations(&rel)
    }
}

/// Euler characteristic of `K(Γ)` from residue counts alone.
pub fn euler_characteristic(g: &ColoredGraph) -> i64 {
    let n = g.n_colors();
    let mut chi = 0i64;
    for mask in 0..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size == n {
            continue;
        }
        let k = n - 1 - size;
        let c = g.residue_count_mask(mask) as i64;
        chi += if k % 2 == 0 { c } else { -c };
    }
    chi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_counts_and_homology() {
        let s = ColoredGraph::standard_sphere(5);
        let cx = ChainComplex::new(&s);
        let sum = cx.summary();
        assert_eq!(sum.simplex_counts, vec![5, 10, 10, 5, 2]);
        assert_eq!(sum.euler, 2);
        assert_eq!(euler_characteristic(&s), 2);
        let h = cx.homology();
        assert_eq!(h.len(), 5);
        assert_eq!(h[0].rank, 1);
        assert_eq!(h[4].rank, 1);
        assert!(h[1..4].iter().all(|x| x.is_trivial()));
        assert!(cx.h1_edge_path().is_trivial());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let s = ColoredGraph::standard_sphere(5);
        let g = s.connected_sum(&s, 0, 1).unwrap();
        let cx = ChainComplex::new(&g);
        for k in 2..=4 {
            let a = cx.boundary(k - 1);
            let b = cx.boundary(k);
            for r in 0..a.rows {
                for c in 0..b.cols {
                    let v: i64 = (0..a.cols).map(|m| a.get(r, m) * b.get(m, c)).sum();
                    assert_eq!(v, 0);
                }
            }
        }
    }
}
