//! The colored-graph data model.
//!
//! A [`ColoredGraph`] on `p` vertices with colors `0..=n` is stored as one
//! fixed-point-free involution per color: `neighbor(v, c)` is the vertex
//! joined to `v` by its unique `c`-colored edge. Properness of the edge
//! coloring is therefore built in, and multiple edges between two vertices
//! (with different colors) are allowed.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GemError, Result};

/// Largest number of colors supported; color subsets are `u32` bitmasks and
/// some tables are indexed by every subset.
pub const MAX_COLORS: usize = 16;

/// Set of colors, one bit per color.
pub type ColorMask = u32;

pub fn mask_of(colors: &[usize]) -> ColorMask {
    colors.iter().fold(0, |m, &c| m | (1 << c))
}

pub fn colors_of(mask: ColorMask) -> Vec<usize> {
    (0..32).filter(|c| mask & (1 << c) != 0).collect()
}

/// An (n+1)-regular multigraph without loops, properly edge-colored by
/// `0..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n_colors: usize,
    order: usize,
    // adj[v * n_colors + c]
    adj: Vec<u32>,
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredGraph({} colors, order {})", self.n_colors, self.order)?;
        for c in 0..self.n_colors {
            write!(f, " [{}]", self.matching(c).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))?;
        }
        Ok(())
    }
}

impl ColoredGraph {
    /// Builds a graph from one involution per color. `matchings[c][v]` is the
    /// `c`-neighbor of `v`.
    pub fn from_matchings(matchings: &[Vec<usize>]) -> Result<Self> {
        let n_colors = matchings.len();
        if n_colors == 0 || n_colors > MAX_COLORS {
            return Err(GemError::InvalidGraph(format!(
                "color count must be in 1..={MAX_COLORS}, got {n_colors}"
            )));
        }
        let order = matchings[0].len();
        if order == 0 || order % 2 == 1 {
            return Err(GemError::InvalidGraph(format!("order must be positive and even, got {order}")));
        }
        let mut adj = vec![0u32; order * n_colors];
        for (c, m) in matchings.iter().enumerate() {
            if m.len() != order {
                return Err(GemError::InvalidGraph(format!(
                    "color {c} matching has {} entries, expected {order}",
                    m.len()
                )));
            }
            for (v, &w) in m.iter().enumerate() {
                if w >= order {
                    return Err(GemError::VertexOutOfRange { vertex: w, order });
                }
                if w == v {
                    return Err(GemError::InvalidGraph(format!("color {c} has a loop at vertex {v}")));
                }
                if m[w] != v {
                    return Err(GemError::InvalidGraph(format!(
                        "color {c} is not an involution: {v} -> {w} -> {}",
                        m[w]
                    )));
                }
                adj[v * n_colors + c] = w as u32;
            }
        }
        Ok(ColoredGraph { n_colors, order, adj })
    }

    /// Builds a graph directly from the flattened vertex-major adjacency,
    /// without validation. Callers guarantee the involution invariants.
    pub(crate) fn from_adj_unchecked(n_colors: usize, order: usize, adj: Vec<u32>) -> Self {
        debug_assert_eq!(adj.len(), n_colors * order);
        ColoredGraph { n_colors, order, adj }
    }

    pub(crate) fn adj(&self) -> &[u32] {
        &self.adj
    }

    /// The order-2 graph with `n_colors` parallel edges (the standard gem of
    /// the sphere of dimension `n_colors - 1`).
    pub fn standard_sphere(n_colors: usize) -> Self {
        let m = vec![vec![1, 0]; n_colors];
        ColoredGraph::from_matchings(&m).expect("valid")
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }

    /// Dimension `n` of the represented pseudomanifold (`n_colors - 1`).
    pub fn dimension(&self) -> usize {
        self.n_colors - 1
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn all_colors(&self) -> ColorMask {
        ((1u64 << self.n_colors) - 1) as ColorMask
    }

    #[inline]
    pub fn neighbor(&self, v: usize, c: usize) -> usize {
        self.adj[v * self.n_colors + c] as usize
    }

    pub fn matching(&self, c: usize) -> Vec<usize> {
        (0..self.order).map(|v| self.neighbor(v, c)).collect()
    }

    pub fn check_color(&self, c: usize) -> Result<()> {
        if c >= self.n_colors {
            Err(GemError::ColorOutOfRange { color: c, n_colors: self.n_colors })
        } else {
            Ok(())
        }
    }

    pub fn check_mask(&self, mask: ColorMask) -> Result<()> {
        if mask & !self.all_colors() != 0 {
            let bad = colors_of(mask & !self.all_colors())[0];
            return Err(GemError::ColorOutOfRange { color: bad, n_colors: self.n_colors });
        }
        Ok(())
    }

    /// Labels every vertex with the index of its connected component in the
    /// spanning subgraph restricted to `mask`. Components are numbered in
    /// order of their smallest vertex.
    pub fn components(&self, mask: ColorMask) -> (Vec<u32>, usize) {
        const UNSEEN: u32 = u32::MAX;
        let mut comp = vec![UNSEEN; self.order];
        let colors = colors_of(mask & self.all_colors());
        let mut count = 0u32;
        let mut stack = Vec::new();
        for s in 0..self.order {
            if comp[s] != UNSEEN {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &c in &colors {
                    let w = self.neighbor(v, c);
                    if comp[w] == UNSEEN {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count as usize)
    }

    /// Number of `mask`-residues, written `g_{c1..ch}`.
    pub fn residue_count_mask(&self, mask: ColorMask) -> usize {
        self.components(mask).1
    }

    pub fn residue_count(&self, key: &ResidueKey) -> Result<usize> {
        self.check_mask(key.mask())?;
        Ok(self.residue_count_mask(key.mask()))
    }

    pub fn component_count(&self) -> usize {
        self.residue_count_mask(self.all_colors())
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        match self.component_count() {
            1 => Ok(()),
            k => Err(GemError::Disconnected { components: k }),
        }
    }

    /// Connected components of the spanning subgraph on `key`'s colors.
    pub fn extract_residues(&self, key: &ResidueKey) -> Result<Vec<Residue>> {
        self.check_mask(key.mask())?;
        let (comp, count) = self.components(key.mask());
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (v, &k) in comp.iter().enumerate() {
            sets[k as usize].push(v);
        }
        let colors = key.colors();
        Ok(sets
            .into_iter()
            .map(|vertex_set| {
                let subgraph = self.induced(&vertex_set, &colors);
                Residue { key: key.clone(), vertex_set, subgraph }
            })
            .collect())
    }

    /// Subgraph on `vertices` (which must be closed under `colors`), colors
    /// re-indexed in the order given.
    pub fn induced(&self, vertices: &[usize], colors: &[usize]) -> ColoredGraph {
        let mut index = vec![u32::MAX; self.order];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i as u32;
        }
        let k = colors.len();
        let mut adj = vec![0u32; vertices.len() * k];
        for (i, &v) in vertices.iter().enumerate() {
            for (j, &c) in colors.iter().enumerate() {
                let w = index[self.neighbor(v, c)];
                debug_assert!(w != u32::MAX, "vertex set not closed under residue colors");
                adj[i * k + j] = w;
            }
        }
        ColoredGraph::from_adj_unchecked(k, vertices.len(), adj)
    }

    /// Two-coloring of the vertices, or an odd closed walk witnessing that
    /// none exists. Requires a connected graph.
    pub fn bipartition(&self) -> Result<Bipartition> {
        self.require_connected()?;
        let mut side = vec![u8::MAX; self.order];
        let mut parent = vec![usize::MAX; self.order];
        let mut queue = VecDeque::new();
        side[0] = 0;
        queue.push_back(0);
        while let Some(v) = queue.pop_front() {
            for c in 0..self.n_colors {
                let w = self.neighbor(v, c);
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    parent[w] = v;
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return Ok(Bipartition::OddCycle(odd_cycle(&parent, v, w)));
                }
            }
        }
        Ok(Bipartition::Bipartite(side))
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Ok(Bipartition::Bipartite(_)))
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<ColoredGraph> {
        check_permutation(perm, self.order)?;
        let mut adj = vec![0u32; self.adj.len()];
        for v in 0..self.order {
            for c in 0..self.n_colors {
                adj[perm[v] * self.n_colors + c] = perm[self.neighbor(v, c)] as u32;
            }
        }
        Ok(ColoredGraph::from_adj_unchecked(self.n_colors, self.order, adj))
    }

    /// Graph whose color `perm[c]` edges are the `c`-colored edges of `self`.
    pub fn recolor(&self, perm: &[usize]) -> Result<ColoredGraph> {
        check_permutation(perm, self.n_colors)?;
        let mut adj = vec![0u32; self.adj.len()];
        for v in 0..self.order {
            for c in 0..self.n_colors {
                adj[v * self.n_colors + perm[c]] = self.neighbor(v, c) as u32;
            }
        }
        Ok(ColoredGraph::from_adj_unchecked(self.n_colors, self.order, adj))
    }

    /// Vertex-disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &ColoredGraph) -> Result<ColoredGraph> {
        if self.n_colors != other.n_colors {
            return Err(GemError::MismatchedColors(self.n_colors, other.n_colors));
        }
        let shift = self.order as u32;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&w| w + shift));
        Ok(ColoredGraph::from_adj_unchecked(self.n_colors, self.order + other.order, adj))
    }

    /// Graph connected sum: deletes `v1` from `self` and `v2` from `other`
    /// and welds, for every color, the two hanging edges of that color.
    ///
    /// When both graphs are bipartite the two deleted vertices must lie in
    /// opposite bipartition classes (so the result stays bipartite).
    pub fn connected_sum(&self, other: &ColoredGraph, v1: usize, v2: usize) -> Result<ColoredGraph> {
        if self.n_colors != other.n_colors {
            return Err(GemError::MismatchedColors(self.n_colors, other.n_colors));
        }
        self.require_connected()?;
        other.require_connected()?;
        if v1 >= self.order {
            return Err(GemError::VertexOutOfRange { vertex: v1, order: self.order });
        }
        if v2 >= other.order {
            return Err(GemError::VertexOutOfRange { vertex: v2, order: other.order });
        }
        if let (Bipartition::Bipartite(s1), Bipartition::Bipartite(s2)) = (self.bipartition()?, other.bipartition()?) {
            if s1[v1] == s2[v2] {
                return Err(GemError::InvalidGraph(
                    "connected sum of bipartite graphs needs vertices from opposite classes".into(),
                ));
            }
        }
        let n = self.n_colors;
        let p1 = self.order;
        let p2 = other.order;
        // new index of old vertices
        let idx1 = |v: usize| if v < v1 { v } else { v - 1 };
        let idx2 = |v: usize| (p1 - 1) + if v < v2 { v } else { v - 1 };
        let order = p1 + p2 - 2;
        let mut adj = vec![0u32; order * n];
        for v in (0..p1).filter(|&v| v != v1) {
            for c in 0..n {
                let w = self.neighbor(v, c);
                let target = if w == v1 { idx2(other.neighbor(v2, c)) } else { idx1(w) };
                adj[idx1(v) * n + c] = target as u32;
            }
        }
        for v in (0..p2).filter(|&v| v != v2) {
            for c in 0..n {
                let w = other.neighbor(v, c);
                let target = if w == v2 { idx1(self.neighbor(v1, c)) } else { idx2(w) };
                adj[idx2(v) * n + c] = target as u32;
            }
        }
        Ok(ColoredGraph::from_adj_unchecked(n, order, adj))
    }

    /// Connected sum at vertex 0 of `self` and the first vertex of `other`
    /// that keeps the result bipartite when possible.
    pub fn connected_sum_default(&self, other: &ColoredGraph) -> Result<ColoredGraph> {
        let v2 = match (self.bipartition()?, other.bipartition()?) {
            (Bipartition::Bipartite(s1), Bipartition::Bipartite(s2)) => {
                (0..other.order).find(|&v| s2[v] != s1[0]).unwrap_or(0)
            }
            _ => 0,
        };
        self.connected_sum(other, 0, v2)
    }

    /// Parses the `.gem` text format.
    pub fn parse_gem(text: &str) -> Result<ColoredGraph> {
        if !text.ends_with('\n') {
            return Err(GemError::Parse { line: text.lines().count().max(1), msg: "missing trailing newline".into() });
        }
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GemError::Parse { line: 1, msg: "empty input".into() })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "gem" {
            return Err(GemError::Parse { line: hline, msg: format!("expected `gem <colors> <order>`, got `{header}`") });
        }
        let parse_num = |s: &str, line: usize| -> Result<usize> {
            s.parse::<usize>().map_err(|_| GemError::Parse { line, msg: format!("not a nonnegative integer: `{s}`") })
        };
        let n_colors = parse_num(parts[1], hline)?;
        let order = parse_num(parts[2], hline)?;
        if n_colors < 3 || n_colors > MAX_COLORS {
            return Err(GemError::Parse { line: hline, msg: format!("color count must be in 3..={MAX_COLORS}") });
        }
        let mut matchings = Vec::with_capacity(n_colors);
        for c in 0..n_colors {
            let (line, row) = lines
                .next()
                .ok_or(GemError::Parse { line: hline + c + 1, msg: format!("missing row for color {c}") })?;
            let row: Vec<usize> = row.split_whitespace().map(|s| parse_num(s, line)).collect::<Result<_>>()?;
            if row.len() != order {
                return Err(GemError::Parse {
                    line,
                    msg: format!("color {c}: expected {order} entries, got {}", row.len()),
                });
            }
            matchings.push(row);
        }
        if let Some((line, extra)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(GemError::Parse { line, msg: format!("unexpected trailing content `{extra}`") });
        }
        ColoredGraph::from_matchings(&matchings)
    }

    /// Serializes to the `.gem` text format.
    pub fn to_gem_string(&self) -> String {
        let mut s = format!("gem {} {}\n", self.n_colors, self.order);
        for c in 0..self.n_colors {
            let row: Vec<String> = (0..self.order).map(|v| self.neighbor(v, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    if perm.len() != len {
        return Err(GemError::InvalidGraph(format!("permutation has length {}, expected {len}", perm.len())));
    }
    let mut seen = vec![false; len];
    for &x in perm {
        if x >= len || seen[x] {
            return Err(GemError::InvalidGraph("not a permutation".into()));
        }
        seen[x] = true;
    }
    Ok(())
}

fn odd_cycle(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let path_to_root = |mut v: usize| {
        let mut path = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            path.push(v);
        }
        path
    };
    let pa = path_to_root(a);
    let pb = path_to_root(b);
    // strip the common suffix, keeping the lowest common ancestor once
    let mut i = pa.len();
    let mut j = pb.len();
    while i > 1 && j > 1 && pa[i - 2] == pb[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pa[..i].to_vec();
    cycle.extend(pb[..j - 1].iter().rev());
    cycle
}

/// Result of a two-coloring attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// `side[v]` is 0 or 1.
    Bipartite(Vec<u8>),
    /// Vertices of an odd closed walk, consecutive ones adjacent.
    OddCycle(Vec<usize>),
}

/// A nonempty color subset naming a kind of residue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueKey {
    colors: Vec<usize>,
}

impl ResidueKey {
    pub fn new(colors: &[usize]) -> Result<Self> {
        let mut colors = colors.to_vec();
        colors.sort_unstable();
        colors.dedup();
        if colors.is_empty() {
            return Err(GemError::InvalidGraph("residue key needs at least one color".into()));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= MAX_COLORS) {
            return Err(GemError::ColorOutOfRange { color: c, n_colors: MAX_COLORS });
        }
        Ok(ResidueKey { colors })
    }

    /// Key for `Δ_n \ {c1..ch}` (the "hat" notation).
    pub fn complement(n_colors: usize, removed: &[usize]) -> Result<Self> {
        if let Some(&c) = removed.iter().find(|&&c| c >= n_colors) {
            return Err(GemError::ColorOutOfRange { color: c, n_colors });
        }
        let kept: Vec<usize> = (0..n_colors).filter(|c| !removed.contains(c)).collect();
        ResidueKey::new(&kept)
    }

    pub fn colors(&self) -> Vec<usize> {
        self.colors.clone()
    }

    pub fn mask(&self) -> ColorMask {
        mask_of(&self.colors)
    }
}

/// One connected component of a restricted spanning subgraph.
#[derive(Debug, Clone)]
pub struct Residue {
    pub key: ResidueKey,
    /// Sorted vertex indices of the parent graph.
    pub vertex_set: Vec<usize>,
    /// The component as a graph of its own: vertex `i` is `vertex_set[i]`,
    /// color `j` is `key.colors()[j]`.
    pub subgraph: ColoredGraph,
}

/// Residue counts `g_S` for every color subset `S`.
#[derive(Debug, Clone)]
pub struct ResidueTable {
    n_colors: usize,
    counts: Vec<usize>,
}

impl ResidueTable {
    pub fn new(g: &ColoredGraph) -> Self {
        let full = 1usize << g.n_colors();
        let mut counts = vec![0; full];
        counts[0] = g.order();
        for (mask, slot) in counts.iter_mut().enumerate().skip(1) {
            *slot = g.residue_count_mask(mask as ColorMask);
        }
        ResidueTable { n_colors: g.n_colors(), counts }
    }

    pub fn count(&self, mask: ColorMask) -> usize {
        self.counts[mask as usize]
    }

    pub fn of(&self, colors: &[usize]) -> usize {
        self.count(mask_of(colors))
    }

    /// `g_{ĉ1..ĉh}`.
    pub fn hat(&self, removed: &[usize]) -> usize {
        let full = ((1u64 << self.n_colors) - 1) as ColorMask;
        self.count(full & !mask_of(removed))
    }

    pub fn n_colors(&self) -> usize {
        self.n_colors
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(n: usize) -> ColoredGraph {
        ColoredGraph::standard_sphere(n)
    }

    #[test]
    fn residue_counts_on_sigma5() {
        let g = sigma(5);
        assert_eq!(g.residue_count(&ResidueKey::new(&[0, 1]).unwrap()).unwrap(), 1);
        assert_eq!(g.residue_count(&ResidueKey::new(&[0]).unwrap()).unwrap(), 1);
        let two = g.disjoint_union(&g).unwrap();
        assert_eq!(two.residue_count(&ResidueKey::new(&[0, 1, 2, 3, 4]).unwrap()).unwrap(), 2);
        assert!(matches!(
            g.residue_count(&ResidueKey::new(&[5]).unwrap()),
            Err(GemError::ColorOutOfRange { color: 5, .. })
        ));
    }

    #[test]
    fn extract_residues_partitions_vertices() {
        let g = sigma(5);
        let r = g.extract_residues(&ResidueKey::new(&[0, 1, 2, 3]).unwrap()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].vertex_set, vec![0, 1]);
        let r = g.extract_residues(&ResidueKey::new(&[0, 1]).unwrap()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].subgraph.n_colors(), 2);
        let two = g.disjoint_union(&g).unwrap();
        let r = two.extract_residues(&ResidueKey::new(&[0, 1]).unwrap()).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].vertex_set, vec![2, 3]);
    }

    #[test]
    fn complement_key() {
        let k = ResidueKey::complement(5, &[1, 3]).unwrap();
        assert_eq!(k.colors(), vec![0, 2, 4]);
        assert!(ResidueKey::complement(5, &[7]).is_err());
    }

    #[test]
    fn bipartiteness() {
        assert!(matches!(sigma(5).bipartition().unwrap(), Bipartition::Bipartite(_)));
        assert!(sigma(3).is_bipartite());
        // K4 with its three perfect matchings: every bicolored cycle has length 4,
        // but the triangle 0-1-2 is odd.
        let k4 = ColoredGraph::from_matchings(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]).unwrap();
        match k4.bipartition().unwrap() {
            Bipartition::OddCycle(cyc) => {
                assert_eq!(cyc.len() % 2, 1);
                for i in 0..cyc.len() {
                    let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                    assert!((0..3).any(|c| k4.neighbor(a, c) == b));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
        let two = sigma(3).disjoint_union(&sigma(3)).unwrap();
        assert!(matches!(two.bipartition(), Err(GemError::Disconnected { components: 2 })));
    }

    #[test]
    fn rejects_bad_matchings() {
        assert!(ColoredGraph::from_matchings(&[vec![0, 1]]).is_err());
        assert!(ColoredGraph::from_matchings(&[vec![1, 2, 0]]).is_err());
        assert!(ColoredGraph::from_matchings(&[vec![1, 0, 3, 2], vec![2, 0, 1, 3]]).is_err());
    }

    #[test]
    fn gem_format_round_trip() {
        let text = "gem 5 2\n1 0\n1 0\n1 0\n1 0\n1 0\n";
        let g = ColoredGraph::parse_gem(text).unwrap();
        assert_eq!(g, sigma(5));
        assert_eq!(g.to_gem_string(), text);
        let commented = "# sphere\ngem 5 2\n1 0\n# middle\n1 0\n1 0\n1 0\n1 0\n";
        assert_eq!(ColoredGraph::parse_gem(commented).unwrap(), g);
        assert!(ColoredGraph::parse_gem("gem 5 2\n1 0\n1 0\n1 0\n1 0\n1 0").is_err());
        assert!(ColoredGraph::parse_gem("gem 5 2\n1 0\n1 0\n1 0\n1 0\n").is_err());
        assert!(ColoredGraph::parse_gem("gem 5 2\n1 0\n1 0\n1 0\n1 0\n0 1\n").is_err());
        assert!(ColoredGraph::parse_gem("gem x 2\n").is_err());
    }

    #[test]
    fn connected_sum_with_sphere_is_identity_order() {
        let s = sigma(5);
        let t = s.connected_sum(&s, 0, 1).unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(t, s);
        assert!(s.connected_sum(&s, 0, 0).is_err());
        assert!(s.connected_sum(&sigma(4), 0, 1).is_err());
    }

    #[test]
    fn relabel_and_recolor_preserve_counts() {
        let k4 = ColoredGraph::from_matchings(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]).unwrap();
        let r = k4.relabel(&[2, 0, 3, 1]).unwrap();
        let t = ResidueTable::new(&k4);
        let t2 = ResidueTable::new(&r);
        for m in 0..8 {
            assert_eq!(t.count(m), t2.count(m));
        }
        let rc = k4.recolor(&[1, 2, 0]).unwrap();
        assert_eq!(rc.matching(1), k4.matching(0));
    }
}
