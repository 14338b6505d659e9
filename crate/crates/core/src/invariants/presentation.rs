//! Fundamental group presentations read off a colored graph.
//!
//! Fix two colors `i`, `j`. The edges of `K(Γ)` with endpoints labelled `i`
//! and `j` are the `Γ_{îĵ}`-residues; together with the `i`- and
//! `j`-labelled vertices they form a graph `K_ij`. Every `{i,j}`-colored
//! cycle of `Γ` is the link of a codimension-2 simplex and walks a closed
//! path in `K_ij`, which bounds a disk. The generators are the edges of
//! `K_ij`, the relators are those closed paths, and the edges of a spanning
//! tree of `K_ij` are set to 1. Depending on which colors are singular this
//! presents the group of the compact manifold `M` or of the closed-up
//! polyhedron `M̂`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{GemError, Result};
use crate::graph::ColoredGraph;
use crate::snf::{AbelianGroup, IntMatrix};

/// A group word. Letter `k > 0` is generator `k - 1`, `-k` its inverse.
pub type Word = Vec<i32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresentationFlavor {
    /// `π₁(M)`; needs `i`, `j` non-singular.
    CompactManifold,
    /// `π₁(M̂)`; needs every singular color in `{i, j}`.
    SingularManifold,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub colors: (usize, usize),
    pub flavor: PresentationFlavor,
    /// Number of generators, one per `Γ_{îĵ}`-residue.
    pub generators: usize,
    /// One word per `{i,j}`-cycle.
    pub relators: Vec<Word>,
    /// Generators lying on the chosen spanning tree of `K_ij`.
    pub tree_generators: Vec<usize>,
}

pub fn pi1_presentation(
    g: &ColoredGraph,
    i: usize,
    j: usize,
    flavor: PresentationFlavor,
    singular_colors: &[usize],
) -> Result<Presentation> {
    g.check_color(i)?;
    g.check_color(j)?;
    if i == j {
        return Err(GemError::InvalidGraph("presentation needs two distinct colors".into()));
    }
    g.require_connected()?;
    match flavor {
        PresentationFlavor::CompactManifold => {
            if singular_colors.contains(&i) || singular_colors.contains(&j) {
                return Err(GemError::Refused(format!("color {i} or {j} is singular")));
            }
        }
        PresentationFlavor::SingularManifold => {
            if let Some(c) = singular_colors.iter().find(|&&c| c != i && c != j) {
                return Err(GemError::Refused(format!("singular color {c} outside {{{i}, {j}}}")));
            }
        }
    }
    let full = g.all_colors();
    let (gen_of, n_gens) = g.components(full & !(1 << i) & !(1 << j));
    let (cycle_of, n_cycles) = g.components((1 << i) | (1 << j));
    let mut relators = vec![Vec::new(); n_cycles];
    let mut started = vec![false; n_cycles];
    for v0 in 0..g.order() {
        let k = cycle_of[v0] as usize;
        if started[k] {
            continue;
        }
        started[k] = true;
        let mut word = Vec::new();
        let mut v = v0;
        let mut t = 0usize;
        loop {
            let x = gen_of[v] as i32 + 1;
            word.push(if t % 2 == 0 { x } else { -x });
            v = g.neighbor(v, if t % 2 == 0 { i } else { j });
            t += 1;
            if v == v0 && t % 2 == 0 {
                break;
            }
        }
        relators[k] = word;
    }
    // K_ij: i-labelled vertices are Γ_î-residues, j-labelled ones Γ_ĵ-residues
    let (ivert, ni) = g.components(full & !(1 << i));
    let (jvert, nj) = g.components(full & !(1 << j));
    let mut ends = vec![(0usize, 0usize); n_gens];
    for v in 0..g.order() {
        ends[gen_of[v] as usize] = (ivert[v] as usize, ni + jvert[v] as usize);
    }
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ni + nj];
    for (e, &(a, b)) in ends.iter().enumerate() {
        incident[a].push((e, b));
        incident[b].push((e, a));
    }
    let mut seen = vec![false; ni + nj];
    let mut tree = Vec::new();
    for root in 0..ni + nj {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(e, w) in &incident[u] {
                if !seen[w] {
                    seen[w] = true;
                    tree.push(e);
                    queue.push_back(w);
                }
            }
        }
    }
    tree.sort_unstable();
    Ok(Presentation { colors: (i, j), flavor, generators: n_gens, relators, tree_generators: tree })
}

impl Presentation {
    /// Cycle relators followed by the one-letter tree relators.
    pub fn all_relators(&self) -> Vec<Word> {
        let mut out = self.relators.clone();
        out.extend(self.tree_generators.iter().map(|&e| vec![e as i32 + 1]));
        out
    }

    pub fn abelianization(&self) -> AbelianGroup {
        abelianize(self.generators, &self.all_relators())
    }

    pub fn simplify(&self, max_moves: usize) -> Simplified {
        simplify(self.generators, self.all_relators(), max_moves)
    }

    /// Plain-text export: a `gens:` line, then one relator per line as
    /// signed zero-based generator indices.
    pub fn to_text(&self) -> String {
        presentation_text(self.generators, &self.all_relators())
    }
}

pub fn presentation_text(generators: usize, relators: &[Word]) -> String {
    let mut s = String::from("gens:");
    for k in 0..generators {
        s.push_str(&format!(" x{k}"));
    }
    s.push('\n');
    for r in relators {
        let line: Vec<String> =
            r.iter().map(|&l| if l > 0 { format!("+{}", l - 1) } else { format!("-{}", -l - 1) }).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn abelianize(generators: usize, relators: &[Word]) -> AbelianGroup {
    let mut m = IntMatrix::zeros(relators.len(), generators);
    for (r, w) in relators.iter().enumerate() {
        for &l in w {
            m.add(r, l.unsigned_abs() as usize - 1, l.signum() as i64);
        }
    }
    AbelianGroup::from_relations(&m)
}

/// Result of Tietze simplification, generators renumbered from zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Simplified {
    pub generators: usize,
    pub relators: Vec<Word>,
    pub moves: usize,
    /// Stopped on the move or length budget rather than at a fixed point.
    pub exhausted: bool,
}

impl Simplified {
    pub fn is_trivial(&self) -> bool {
        self.generators == 0
    }
}

const MAX_TOTAL_LENGTH: usize = 200_000;

fn free_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction
    let mut a = 0;
    let mut b = out.len();
    while b - a >= 2 && out[a] == -out[b - 1] {
        a += 1;
        b -= 1;
    }
    *w = out[a..b].to_vec();
}

fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Cyclic rotation and inversion class representative, for deduplication.
fn cyclic_key(w: &Word) -> Word {
    let inv = inverse(w);
    let mut best = w.clone();
    for base in [w, &inv] {
        for k in 0..base.len() {
            let rot: Word = base[k..].iter().chain(&base[..k]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// Tietze moves: free and cyclic reduction, dropping trivial and duplicate
/// relators, deleting a generator killed by a one-letter relator, and
/// eliminating a generator that occurs exactly once in some relator.
pub fn simplify(generators: usize, relators: Vec<Word>, max_moves: usize) -> Simplified {
    let mut alive = vec![true; generators + 1];
    alive[0] = false;
    let mut rels = relators;
    let mut moves = 0;
    let mut exhausted = false;
    loop {
        for r in rels.iter_mut() {
            free_reduce(r);
        }
        let mut seen = BTreeSet::new();
        rels.retain(|r| !r.is_empty() && seen.insert(cyclic_key(r)));
        if moves >= max_moves || rels.iter().map(Vec::len).sum::<usize>() > MAX_TOTAL_LENGTH {
            exhausted = true;
            break;
        }
        if let Some(r) = rels.iter().find(|r| r.len() == 1) {
            let x = r[0].abs();
            for w in rels.iter_mut() {
                w.retain(|&l| l.abs() != x);
            }
            alive[x as usize] = false;
            moves += 1;
            continue;
        }
        // generator occurring once in a relator; prefer short relators
        let mut best: Option<(usize, usize, usize)> = None; // (len, relator, position)
        for (ri, r) in rels.iter().enumerate() {
            if best.map_or(false, |(len, _, _)| len <= r.len()) {
                continue;
            }
            for (pos, &l) in r.iter().enumerate() {
                if r.iter().filter(|&&m| m.abs() == l.abs()).count() == 1 {
                    best = Some((r.len(), ri, pos));
                    break;
                }
            }
        }
        let Some((_, ri, pos)) = best else { break };
        let r = rels.swap_remove(ri);
        let l = r[pos];
        let x = l.abs();
        let rest: Word = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        // l * rest = 1
        let sub = if l > 0 { inverse(&rest) } else { rest };
        let sub_inv = inverse(&sub);
        for w in rels.iter_mut() {
            if w.iter().any(|m| m.abs() == x) {
                let mut nw = Vec::with_capacity(w.len());
                for &m in w.iter() {
                    if m == x {
                        nw.extend_from_slice(&sub);
                    } else if m == -x {
                        nw.extend_from_slice(&sub_inv);
                    } else {
                        nw.push(m);
                    }
                }
                *w = nw;
            }
        }
        alive[x as usize] = false;
        moves += 1;
    }
    let mut renumber = vec![0i32; generators + 1];
    let mut k = 0;
    for (x, &a) in alive.iter().enumerate() {
        if a {
            k += 1;
            renumber[x] = k;
        }
    }
    let relators = rels.iter().map(|w| w.iter().map(|&l| l.signum() * renumber[l.unsigned_abs() as usize]).collect()).collect();
    Simplified { generators: k as usize, relators, moves, exhausted }
}

/// What is known about the rank (minimal number of generators) of a
/// fundamental group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankEstimate {
    /// Minimal generator count of the abelianization.
    pub lower: usize,
    /// Generators left after simplification.
    pub upper: usize,
    /// Simplification reached the empty presentation.
    pub certified_trivial: bool,
}

impl RankEstimate {
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

pub const TIETZE_MOVES: usize = 10_000;

pub fn rank_estimate(p: &Presentation) -> RankEstimate {
    let ab = p.abelianization();
    let s = p.simplify(TIETZE_MOVES);
    RankEstimate { lower: ab.min_generators(), upper: s.generators, certified_trivial: s.is_trivial() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_words() {
        let mut w = vec![1, 2, -2, 3, -1];
        free_reduce(&mut w);
        assert_eq!(w, vec![3]);
        let mut e = vec![1, -1];
        free_reduce(&mut e);
        assert!(e.is_empty());
    }

    #[test]
    fn simplify_examples() {
        // <a, b | ab, b> is trivial
        let s = simplify(2, vec![vec![1, 2], vec![2]], 100);
        assert!(s.is_trivial());
        // <a, b | aba^-1b^-1> stays with two generators
        let t = simplify(2, vec![vec![1, 2, -1, -2]], 100);
        assert_eq!(t.generators, 2);
        // <a | a^2>
        let z2 = simplify(1, vec![vec![1, 1]], 100);
        assert_eq!(z2.generators, 1);
        assert_eq!(abelianize(1, &z2.relators).to_string(), "Z/2");
    }

    #[test]
    fn sigma_presentation() {
        let s = ColoredGraph::standard_sphere(5);
        let p = pi1_presentation(&s, 0, 1, PresentationFlavor::CompactManifold, &[]).unwrap();
        assert_eq!(p.generators, 1);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.tree_generators, vec![0]);
        assert!(p.abelianization().is_trivial());
        assert!(p.simplify(TIETZE_MOVES).is_trivial());
        assert_eq!(p.to_text(), "gens: x0\n+0 -0\n+0\n");
    }

    #[test]
    fn flavor_preconditions() {
        let s = ColoredGraph::standard_sphere(5);
        assert!(pi1_presentation(&s, 0, 4, PresentationFlavor::CompactManifold, &[4]).is_err());
        assert!(pi1_presentation(&s, 0, 1, PresentationFlavor::SingularManifold, &[4]).is_err());
        assert!(pi1_presentation(&s, 0, 4, PresentationFlavor::SingularManifold, &[4]).is_ok());
    }
}
