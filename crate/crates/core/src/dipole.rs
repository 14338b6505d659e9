//! Dipole moves.
//!
//! An `h`-dipole is a pair of vertices `x`, `y` joined by exactly `h` edges
//! (colors `C`, `1 ≤ h ≤ n`) lying in different `(Δ \ C)`-residues.
//! Eliminating it deletes `x`, `y` and, for every color `c ∉ C`, welds the
//! `c`-neighbor of `x` to the `c`-neighbor of `y`. The move preserves the
//! represented polyhedron when at least one of the two `(Δ \ C)`-residues
//! represents a sphere; such dipoles are called proper here.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{GemError, Result};
use crate::graph::{colors_of, mask_of, ColorMask, ColoredGraph};
use crate::recognition::{recognize_sphere, SphereStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Properness {
    Proper,
    Improper,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dipole {
    pub x: usize,
    pub y: usize,
    pub colors: Vec<usize>,
    pub properness: Properness,
}

impl Dipole {
    pub fn size(&self) -> usize {
        self.colors.len()
    }
}

fn shared_colors(g: &ColoredGraph, x: usize, y: usize) -> ColorMask {
    (0..g.n_colors()).filter(|&c| g.neighbor(x, c) == y).fold(0, |m, c| m | (1 << c))
}

/// Checks that `(x, y)` is a dipole and returns its color set.
fn dipole_colors(g: &ColoredGraph, x: usize, y: usize) -> Result<ColorMask> {
    if x >= g.order() || y >= g.order() {
        return Err(GemError::InvalidDipole(format!("vertex out of range ({x}, {y})")));
    }
    if g.order() <= 2 {
        return Err(GemError::InvalidDipole("graph of order 2 has no dipoles".into()));
    }
    let c = shared_colors(g, x, y);
    let h = c.count_ones() as usize;
    if h == 0 || h >= g.n_colors() {
        return Err(GemError::InvalidDipole(format!("{x} and {y} are joined by {h} edges")));
    }
    let rest = g.all_colors() & !c;
    let (comp, _) = g.components(rest);
    if comp[x] == comp[y] {
        return Err(GemError::InvalidDipole(format!(
            "{x} and {y} lie in the same {:?}-residue",
            colors_of(rest)
        )));
    }
    Ok(c)
}

fn residue_status(g: &ColoredGraph, v: usize, rest: ColorMask) -> SphereStatus {
    let colors = colors_of(rest);
    if colors.len() <= 2 {
        return SphereStatus::CertifiedSphere;
    }
    let (comp, _) = g.components(rest);
    let members: Vec<usize> = (0..g.order()).filter(|&w| comp[w] == comp[v]).collect();
    recognize_sphere(&g.induced(&members, &colors)).status
}

fn properness(g: &ColoredGraph, x: usize, y: usize, c: ColorMask) -> Properness {
    let rest = g.all_colors() & !c;
    let sx = residue_status(g, x, rest);
    if sx == SphereStatus::CertifiedSphere {
        return Properness::Proper;
    }
    let sy = residue_status(g, y, rest);
    match (sx, sy) {
        (_, SphereStatus::CertifiedSphere) => Properness::Proper,
        (SphereStatus::CertifiedNonsphere, SphereStatus::CertifiedNonsphere) => Properness::Improper,
        _ => Properness::Unknown,
    }
}

/// Every dipole of `g` with its properness flag.
pub fn find_dipoles(g: &ColoredGraph) -> Result<Vec<Dipole>> {
    g.require_connected()?;
    let mut out = Vec::new();
    if g.order() <= 2 {
        return Ok(out);
    }
    for x in 0..g.order() {
        for y in candidates(g, x) {
            if let Ok(c) = dipole_colors(g, x, y) {
                out.push(Dipole { x, y, colors: colors_of(c), properness: properness(g, x, y, c) });
            }
        }
    }
    Ok(out)
}

fn candidates(g: &ColoredGraph, x: usize) -> Vec<usize> {
    let mut ys: Vec<usize> = (0..g.n_colors()).map(|c| g.neighbor(x, c)).filter(|&y| y > x).collect();
    ys.sort_unstable();
    ys.dedup();
    ys
}

/// Eliminates the dipole `(x, y)`. The remaining vertices keep their
/// relative order.
pub fn eliminate_dipole(g: &ColoredGraph, x: usize, y: usize) -> Result<ColoredGraph> {
    let c = dipole_colors(g, x, y)?;
    let n = g.n_colors();
    let new_index = |v: usize| v - (v > x) as usize - (v > y) as usize;
    let order = g.order() - 2;
    let mut adj = vec![0u32; order * n];
    for v in (0..g.order()).filter(|&v| v != x && v != y) {
        for col in 0..n {
            let mut w = g.neighbor(v, col);
            if w == x || w == y {
                debug_assert!(c & (1 << col) == 0);
                // hanging edge: continue through the dipole to the other side
                let other = if w == x { y } else { x };
                w = g.neighbor(other, col);
            }
            adj[new_index(v) * n + col] = new_index(w) as u32;
        }
    }
    Ok(ColoredGraph::from_adj_unchecked(n, order, adj))
}

/// Recipe for inserting a dipole: the new vertices `x = p`, `y = p + 1` are
/// joined by the colors in `colors`; for every other color `d` the
/// `d`-colored edge at `attach[d]` is cut, its endpoint `attach[d]` is joined
/// to `x` and its other endpoint to `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DipoleInsertion {
    pub colors: Vec<usize>,
    pub attach: Vec<usize>,
}

pub fn add_dipole(g: &ColoredGraph, ins: &DipoleInsertion) -> Result<ColoredGraph> {
    let n = g.n_colors();
    let p = g.order();
    let mut cmask: ColorMask = 0;
    for &c in &ins.colors {
        g.check_color(c)?;
        cmask |= 1 << c;
    }
    let h = cmask.count_ones() as usize;
    if h == 0 || h >= n {
        return Err(GemError::InvalidDipole(format!("dipole needs between 1 and {} colors", n - 1)));
    }
    if ins.attach.len() != n {
        return Err(GemError::InvalidDipole("attach must list one vertex per color".into()));
    }
    let (x, y) = (p, p + 1);
    let mut adj = g.adj().to_vec();
    adj.extend(std::iter::repeat(0).take(2 * n));
    for d in 0..n {
        if cmask & (1 << d) != 0 {
            adj[x * n + d] = y as u32;
            adj[y * n + d] = x as u32;
        } else {
            let u = ins.attach[d];
            if u >= p {
                return Err(GemError::VertexOutOfRange { vertex: u, order: p });
            }
            let w = g.neighbor(u, d);
            adj[u * n + d] = x as u32;
            adj[x * n + d] = u as u32;
            adj[w * n + d] = y as u32;
            adj[y * n + d] = w as u32;
        }
    }
    let out = ColoredGraph::from_adj_unchecked(n, p + 2, adj);
    let (comp, _) = out.components(out.all_colors() & !cmask);
    if comp[x] == comp[y] {
        return Err(GemError::InvalidDipole("inserted vertices share a residue".into()));
    }
    Ok(out)
}

/// A random insertion whose new dipole is certified proper. Attachment
/// points are drawn at random; if no such choice turns up after a few tries
/// all attachments collapse onto a single vertex, which is always proper.
pub fn random_insertion<R: Rng>(g: &ColoredGraph, rng: &mut R) -> DipoleInsertion {
    let n = g.n_colors();
    let h = rng.gen_range(1..n);
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    let mut colors: Vec<usize> = all[..h].to_vec();
    colors.sort_unstable();
    for _ in 0..8 {
        let attach: Vec<usize> = (0..n).map(|_| rng.gen_range(0..g.order())).collect();
        let ins = DipoleInsertion { colors: colors.clone(), attach };
        if let Ok(big) = add_dipole(g, &ins) {
            let p = g.order();
            if properness(&big, p, p + 1, mask_of(&ins.colors)) == Properness::Proper {
                return ins;
            }
        }
    }
    let v = rng.gen_range(0..g.order());
    DipoleInsertion { colors, attach: vec![v; n] }
}

/// One elimination performed by [`reduce`].
#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    pub x: usize,
    pub y: usize,
    pub colors: Vec<usize>,
    pub order_after: usize,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: ColoredGraph,
    pub steps: Vec<ReductionStep>,
    /// Dipoles left in place because their properness could not be certified.
    pub uncertified: usize,
}

/// Which proper dipole [`reduce_with`] eliminates next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionPolicy {
    /// Larger dipoles first, ties to the smallest vertex pair.
    #[default]
    LargestFirst,
    /// The pair with the largest vertices first. Insertions append their
    /// two vertices, so this undoes the most recent insertion.
    NewestFirst,
}

/// Greedy elimination of proper dipoles until none remains. Larger dipoles
/// are tried first; ties go to the smallest vertex pair.
pub fn reduce(g: &ColoredGraph) -> Result<Reduction> {
    reduce_with(g, ReductionPolicy::LargestFirst)
}

pub fn reduce_with(g: &ColoredGraph, policy: ReductionPolicy) -> Result<Reduction> {
    g.require_connected()?;
    let mut cur = g.clone();
    let mut steps = Vec::new();
    loop {
        if cur.order() <= 2 {
            return Ok(Reduction { graph: cur, steps, uncertified: 0 });
        }
        let mut found: Vec<(usize, usize, ColorMask)> = Vec::new();
        for x in 0..cur.order() {
            for y in candidates(&cur, x) {
                if let Ok(c) = dipole_colors(&cur, x, y) {
                    found.push((x, y, c));
                }
            }
        }
        match policy {
            ReductionPolicy::LargestFirst => found.sort_by_key(|&(x, y, c)| (std::cmp::Reverse(c.count_ones()), x, y)),
            ReductionPolicy::NewestFirst => found.sort_by_key(|&(x, y, _)| std::cmp::Reverse((y.max(x), x.min(y)))),
        }
        let mut uncertified = 0;
        let mut chosen = None;
        for &(x, y, c) in &found {
            match properness(&cur, x, y, c) {
                Properness::Proper => {
                    chosen = Some((x, y, c));
                    break;
                }
                Properness::Unknown => uncertified += 1,
                Properness::Improper => {}
            }
        }
        match chosen {
            Some((x, y, c)) => {
                cur = eliminate_dipole(&cur, x, y)?;
                steps.push(ReductionStep { x, y, colors: colors_of(c), order_after: cur.order() });
            }
            None => return Ok(Reduction { graph: cur, steps, uncertified }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_code, CodeFlavor};
    use rand::SeedableRng;

    #[test]
    fn sigma_has_no_dipoles() {
        assert!(find_dipoles(&ColoredGraph::standard_sphere(5)).unwrap().is_empty());
        assert!(eliminate_dipole(&ColoredGraph::standard_sphere(5), 0, 1).is_err());
    }

    #[test]
    fn add_then_eliminate_is_identity() {
        let s = ColoredGraph::standard_sphere(5);
        let ins = DipoleInsertion { colors: vec![2], attach: vec![0; 5] };
        let big = add_dipole(&s, &ins).unwrap();
        assert_eq!(big.order(), 4);
        let back = eliminate_dipole(&big, 2, 3).unwrap();
        assert_eq!(back, s);
        let found = find_dipoles(&big).unwrap();
        assert!(found.iter().any(|d| (d.x, d.y) == (2, 3) && d.colors == vec![2]));
        assert!(found.iter().all(|d| d.properness == Properness::Proper));
    }

    #[test]
    fn random_round_trip_on_sigma() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let s = ColoredGraph::standard_sphere(5);
        let code = canonical_code(&s, CodeFlavor::ColorPreserving).unwrap();
        for _ in 0..50 {
            let mut g = s.clone();
            for _ in 0..rng.gen_range(1..4) {
                let ins = random_insertion(&g, &mut rng);
                g = add_dipole(&g, &ins).unwrap();
            }
            let r = reduce(&g).unwrap();
            assert_eq!(canonical_code(&r.graph, CodeFlavor::ColorPreserving).unwrap(), code);
        }
    }

    #[test]
    fn invalid_insertions_rejected() {
        let s = ColoredGraph::standard_sphere(5);
        assert!(add_dipole(&s, &DipoleInsertion { colors: vec![], attach: vec![0; 5] }).is_err());
        assert!(add_dipole(&s, &DipoleInsertion { colors: vec![0, 1, 2, 3, 4], attach: vec![0; 5] }).is_err());
        assert!(add_dipole(&s, &DipoleInsertion { colors: vec![0], attach: vec![9; 5] }).is_err());
    }
}
