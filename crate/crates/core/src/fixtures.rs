//! Small reference gems.

use crate::graph::ColoredGraph;

pub const SIGMA5_GEM: &str = include_str!("../fixtures/sigma5.gem");
pub const TORUS_GEM: &str = include_str!("../fixtures/torus.gem");
pub const RP2_GEM: &str = include_str!("../fixtures/rp2.gem");
pub const RP3_GEM: &str = include_str!("../fixtures/rp3.gem");
pub const CP2_GEM: &str = include_str!("../fixtures/cp2.gem");
pub const CP2_BOUNDARY_GEM: &str = include_str!("../fixtures/cp2_boundary.gem");

fn parse(text: &str) -> ColoredGraph {
    ColoredGraph::parse_gem(text).expect("bundled fixture parses")
}

pub fn sigma(n_colors: usize) -> ColoredGraph {
    ColoredGraph::standard_sphere(n_colors)
}

pub fn torus() -> ColoredGraph {
    parse(TORUS_GEM)
}

pub fn rp2() -> ColoredGraph {
    parse(RP2_GEM)
}

pub fn rp3() -> ColoredGraph {
    parse(RP3_GEM)
}

pub fn cp2() -> ColoredGraph {
    parse(CP2_GEM)
}

/// Crystallization of a compact 4-manifold with one boundary component;
/// its singular color is 1.
pub fn cp2_boundary() -> ColoredGraph {
    parse(CP2_BOUNDARY_GEM)
}

/// Connected sum of `k` copies of the `cp2` fixture (order `6k + 2`).
pub fn cp2_sum(k: usize) -> ColoredGraph {
    assert!(k >= 1);
    let base = cp2();
    let mut g = base.clone();
    for _ in 1..k {
        g = g.connected_sum_default(&base).expect("bipartite sum");
    }
    g
}

/// Two copies of `g` joined vertex-to-vertex by one new color. Each new
/// residue avoiding the new color is a copy of `g`.
pub fn double(g: &ColoredGraph) -> ColoredGraph {
    let p = g.order();
    let mut m: Vec<Vec<usize>> =
        (0..g.n_colors()).map(|c| (0..2 * p).map(|v| if v < p { g.neighbor(v, c) } else { g.neighbor(v - p, c) + p }).collect()).collect();
    m.push((0..2 * p).map(|v| if v < p { v + p } else { v - p }).collect());
    ColoredGraph::from_matchings(&m).expect("double of a valid graph")
}

/// A 5-colored graph with a genus-one 3-colored residue inside a 4-colored
/// residue: not a singular manifold.
pub fn not_a_manifold() -> ColoredGraph {
    double(&double(&torus()))
}

/// A 5-colored gem whose only singular color is 4, with both 4̂-residues
/// copies of the `rp3` fixture.
pub fn singular_rp3_double() -> ColoredGraph {
    double(&rp3())
}
