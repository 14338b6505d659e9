//! Handle decompositions without 1-handles.
//!
//! In a crystallization, the edges of `K(Γ)` joining the vertices labelled
//! `a` and `b` are the `{â, b̂}`-residues. When two such edge families are
//! single edges sharing a vertex `k` (`g_{îk̂} = g_{ĵk̂} = 1`) the manifold
//! admits a handle decomposition with no 1-handles, `β₂ + t_{i,j,k}`
//! 2-handles and `t_{i,j,k}` 3-handles. If a third single edge `{r, ω}`
//! disjoint from `{i, j, k}` exists, `t_{i,j,k} = 0` and the 2-handles attach
//! along a framed link in `S³` (or in the boundary, when `ω` is singular).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classification::{is_weak_simple_at, t_value};
use crate::error::{GemError, Result};
use crate::genus::{subgenus_with, CyclicPermutation, HalfInt};
use crate::graph::{mask_of, ColoredGraph, ResidueKey, ResidueTable};
use crate::invariants::{beta2_via_genus, homology_with, Pi1Status};
use crate::recognition::{check_closed_manifold, is_crystallization, normalize_singular_color, ManifoldClass};
use crate::snf::AbelianGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Triple,
    Partition,
}

/// Colors `i < j` meeting at `k` with `g_{îk̂} = g_{ĵk̂} = 1`; for the second
/// kind also the complementary pair `{r, ω}` with `g_{r̂ω̂} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HypothesisWitness {
    pub kind: WitnessKind,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// The other two colors, `r < ω`; `ω` is the singular color in the
    /// boundary case.
    pub r: usize,
    pub omega: usize,
    pub boundary_case: bool,
}

impl HypothesisWitness {
    /// The sequence `(i, j, r, k, ω)`, positions matter.
    pub fn sequence(&self) -> [usize; 5] {
        [self.i, self.j, self.r, self.k, self.omega]
    }

    pub fn permutation(&self) -> CyclicPermutation {
        CyclicPermutation::new(&self.sequence()).expect("five distinct colors")
    }
}

fn hat2(table: &ResidueTable, a: usize, b: usize) -> usize {
    table.hat(&[a, b])
}

/// Every witness of both kinds. `singular` is the singular color, if any,
/// which must be the last color.
pub fn find_hypothesis_witnesses(g: &ColoredGraph, singular: Option<usize>) -> Result<Vec<HypothesisWitness>> {
    if g.n_colors() != 5 {
        return Err(GemError::InvalidGraph(format!("expected 5 colors, got {}", g.n_colors())));
    }
    g.require_connected()?;
    if let Some(s) = singular {
        if s != 4 {
            return Err(GemError::InvalidGraph(format!("singular color {s} must be normalized to 4")));
        }
    }
    let table = ResidueTable::new(g);
    let boundary = singular.is_some();
    let mut out = Vec::new();
    for k in 0..5 {
        for i in 0..5 {
            for j in i + 1..5 {
                if i == k || j == k || hat2(&table, i, k) != 1 || hat2(&table, j, k) != 1 {
                    continue;
                }
                let rest: Vec<usize> = (0..5).filter(|c| ![i, j, k].contains(c)).collect();
                let (r, omega) = (rest[0], rest[1]);
                if boundary && omega != 4 {
                    // the triple must avoid the singular color
                    continue;
                }
                out.push(HypothesisWitness { kind: WitnessKind::Triple, i, j, k, r, omega, boundary_case: boundary });
                if hat2(&table, r, omega) == 1 {
                    out.push(HypothesisWitness { kind: WitnessKind::Partition, i, j, k, r, omega, boundary_case: boundary });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkSummary {
    pub undotted: usize,
    pub dotted: usize,
    /// The 3-manifold the link lives in.
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HandleProfile {
    /// Handle counts `h0..h4`.
    pub handles: [usize; 5],
    /// Number of 3-handles.
    pub s: usize,
    pub link: LinkSummary,
    /// `H_1` of the boundary, in the boundary case.
    pub boundary_h1: Option<AbelianGroup>,
}

fn sphere_sum(s: usize) -> String {
    match s {
        0 => "S³".into(),
        1 => "S²×S¹".into(),
        s => format!("#_{s}(S²×S¹)"),
    }
}

/// Handle counts for a witness, given `β₂`.
pub fn handle_profile(
    g: &ColoredGraph,
    w: &HypothesisWitness,
    beta2: usize,
    boundary_h1: Option<AbelianGroup>,
) -> Result<HandleProfile> {
    let table = ResidueTable::new(g);
    if hat2(&table, w.i, w.k) != 1 || hat2(&table, w.j, w.k) != 1 {
        return Err(GemError::InvalidGraph(format!("invalid witness {w:?}")));
    }
    let t = t_value(&table, &[w.i, w.j, w.k]);
    if w.kind == WitnessKind::Partition {
        if hat2(&table, w.r, w.omega) != 1 {
            return Err(GemError::InvalidGraph(format!("invalid witness {w:?}")));
        }
        if t != 0 {
            return Err(GemError::Consistency(format!("witness {w:?} with t = {t}")));
        }
    }
    let t = t as usize;
    let h4 = if w.boundary_case { 0 } else { 1 };
    let target = match (w.boundary_case, t) {
        (false, t) => sphere_sum(t),
        (true, 0) => "∂M⁴".into(),
        (true, t) => format!("∂M⁴ # {}", sphere_sum(t)),
    };
    Ok(HandleProfile {
        handles: [1, 0, beta2 + t, t, h4],
        s: t,
        link: LinkSummary { undotted: beta2 + t, dotted: 0, target },
        boundary_h1: if w.boundary_case { boundary_h1 } else { None },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgenusTarget {
    pub permutation: CyclicPermutation,
    /// `ρ_{ε_0̂}`.
    pub subgenus: HalfInt,
    pub expected: i64,
    /// `g_{ε₂,ε₄} - g_{ε₂,ε₃,ε₄} - ρ_{ε_0̂}`; zero at every witness.
    pub triangle_identity_residual: HalfInt,
}

/// For `g_{ĵk̂} = 1`, the subgenus avoiding `s` under `ε = (s, j, r, k, ω)`,
/// which equals `β₂ + t_{s,j,k}`.
pub fn subgenus_target(g: &ColoredGraph, j: usize, k: usize, s: usize, omega: usize, beta2: i64) -> Result<SubgenusTarget> {
    let table = ResidueTable::new(g);
    if hat2(&table, j, k) != 1 {
        return Err(GemError::InvalidGraph(format!("residues avoiding {j} and {k} are not connected")));
    }
    let mut used = [j, k, s, omega];
    used.sort_unstable();
    if used.windows(2).any(|w| w[0] == w[1]) || used[3] >= 5 {
        return Err(GemError::InvalidGraph("colors must be distinct and below 5".into()));
    }
    let r = (0..5).find(|c| ![j, k, s, omega].contains(c)).unwrap();
    let eps = CyclicPermutation::new(&[s, j, r, k, omega])?;
    let sub = subgenus_with(&table, g.order(), &eps, s);
    let expected = beta2 + t_value(&table, &[s, j, k]);
    let tri = table.of(&[r, omega]) as i64 - table.of(&[r, k, omega]) as i64;
    Ok(SubgenusTarget { permutation: eps, subgenus: sub, expected, triangle_identity_residual: HalfInt::from_int(tri) - sub })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseTrace {
    /// `(ε₀, ..., ε₄)`.
    pub sequence: [usize; 5],
    pub triangles: usize,
    pub edges: usize,
    /// Triangles removed, in order.
    pub schedule: Vec<usize>,
    pub remaining_triangles: usize,
    /// Edges still carrying a triangle (`h`).
    pub remaining_edges: usize,
    /// Triangles per remaining edge (`r_i`), by edge index.
    pub multiplicities: Vec<usize>,
    /// `ρ_{ε_0̂}`.
    pub subgenus: HalfInt,
    /// `g_{ε₂,ε₃,ε₄}`.
    pub max_edges: usize,
}

/// Collapses the triangles of `K(ε₀, ε₁, ε₃)` through their free
/// `{ε₀, ε₁}`-edges. Triangles are the `{ε₂, ε₄}`-cycles, their
/// `{ε₀, ε₁}`-edges the `{ε₂, ε₃, ε₄}`-residues containing them. The last
/// triangle is never removed.
pub fn collapse_2skeleton(g: &ColoredGraph, eps: [usize; 5]) -> Result<CollapseTrace> {
    if g.n_colors() != 5 {
        return Err(GemError::InvalidGraph("collapse needs 5 colors".into()));
    }
    let perm = CyclicPermutation::new(&eps)?;
    let [e0, _, e2, e3, e4] = eps;
    let (tri_of, n_tri) = g.components(mask_of(&[e2, e4]));
    let (edge_of, n_edges) = g.components(mask_of(&[e2, e3, e4]));
    let mut edge = vec![0usize; n_tri];
    for v in 0..g.order() {
        edge[tri_of[v] as usize] = edge_of[v] as usize;
    }
    let mut load = vec![0usize; n_edges];
    for &e in &edge {
        load[e] += 1;
    }
    let mut alive = vec![true; n_tri];
    let mut remaining = n_tri;
    let mut schedule = Vec::new();
    'outer: while remaining > 1 {
        for t in 0..n_tri {
            if alive[t] && load[edge[t]] == 1 {
                alive[t] = false;
                load[edge[t]] = 0;
                remaining -= 1;
                schedule.push(t);
                continue 'outer;
            }
        }
        break;
    }
    let multiplicities: Vec<usize> = load.iter().copied().filter(|&r| r > 0).collect();
    let table = ResidueTable::new(g);
    let subgenus = subgenus_with(&table, g.order(), &perm, e0);
    let trace = CollapseTrace {
        sequence: eps,
        triangles: n_tri,
        edges: n_edges,
        schedule,
        remaining_triangles: remaining,
        remaining_edges: multiplicities.len(),
        multiplicities,
        subgenus,
        max_edges: n_edges,
    };
    check_collapse(&trace)?;
    Ok(trace)
}

fn check_collapse(t: &CollapseTrace) -> Result<()> {
    let sum: usize = t.multiplicities.iter().sum();
    let diff = t.remaining_triangles as i64 - t.remaining_edges as i64;
    let ok = sum == t.remaining_triangles
        && HalfInt::from_int(diff) == t.subgenus
        && t.remaining_edges >= 1
        && t.remaining_edges <= t.max_edges;
    if !ok {
        return Err(GemError::Consistency(format!(
            "collapse at {:?}: {} triangles on {} edges, subgenus {}",
            t.sequence, t.remaining_triangles, t.remaining_edges, t.subgenus
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessAnalysis {
    pub witness: HypothesisWitness,
    pub permutation: CyclicPermutation,
    pub profile: HandleProfile,
    pub subgenus_targets: Vec<SubgenusTarget>,
    pub collapse: CollapseTrace,
}

#[derive(Debug, Clone, Serialize)]
pub struct HandlesReport {
    pub recolored: Option<(usize, usize)>,
    pub beta2: usize,
    pub witnesses: Vec<WitnessAnalysis>,
    /// Distinct profiles, keyed by `h0,h1,h2,h3,h4`.
    pub profiles: BTreeMap<String, usize>,
}

/// Witnesses, profiles, subgenus targets and collapse traces for a
/// 5-colored crystallization with at most one singular color.
pub fn analyze_handles(g: &ColoredGraph) -> Result<HandlesReport> {
    let class = check_closed_manifold(g)?;
    analyze_handles_with(g, &class)
}

pub fn analyze_handles_with(g: &ColoredGraph, class: &ManifoldClass) -> Result<HandlesReport> {
    if !class.verdict.is_manifold_complex() {
        return Err(GemError::Refused(format!("not a manifold: {}", class.verdict.name())));
    }
    if class.singular_colors.len() > 1 {
        return Err(GemError::Refused("more than one singular color".into()));
    }
    if !is_crystallization(g).crystallization {
        return Err(GemError::Refused("not a crystallization".into()));
    }
    let (g, recolored) = normalize_singular_color(g, class)?;
    let class = if recolored.is_some() { check_closed_manifold(&g)? } else { class.clone() };
    let singular = class.singular_colors.first().copied();
    let witnesses = find_hypothesis_witnesses(&g, singular)?;
    let h = homology_with(&g, &class)?;
    let beta2 = h.beta2;
    let boundary_h1 = match singular {
        Some(s) => {
            let key = ResidueKey::complement(5, &[s])?;
            let res = g.extract_residues(&key)?;
            Some(crate::invariants::ChainComplex::new(&res[0].subgraph).homology()[1].clone())
        }
        None => None,
    };
    if !witnesses.is_empty() {
        // a witness certifies simple connectivity; cross-check the genus route
        let pi1 = h.pi1_manifold.as_ref().map_or(Pi1Status::Unknown, |p| p.status);
        if pi1 != Pi1Status::Trivial {
            return Err(GemError::Consistency(format!("witness present but fundamental group {pi1:?}")));
        }
        {
            let b = beta2_via_genus(&g, pi1)?;
            if b.value != beta2 as i64 {
                return Err(GemError::Consistency(format!("second Betti number {} from genera, {beta2} from homology", b.value)));
            }
        }
    }
    let table = ResidueTable::new(&g);
    for eps in CyclicPermutation::all(5).into_iter().filter(|e| is_weak_simple_at(&table, e)) {
        let (e0, e1, e2, e3) = (eps.get(0), eps.get(1), eps.get(2), eps.get(3));
        let found = witnesses.iter().any(|w| {
            w.kind == WitnessKind::Partition && w.r.min(w.omega) == e2.min(4) && w.r.max(w.omega) == 4 && {
                let mut a = [w.i, w.j, w.k];
                let mut b = [e0, e1, e3];
                a.sort();
                b.sort();
                a == b
            }
        });
        if !found {
            return Err(GemError::Consistency(format!("weak simple at {eps} without the matching witness")));
        }
    }
    let mut out = Vec::new();
    let mut profiles = BTreeMap::new();
    for w in witnesses {
        let profile = handle_profile(&g, &w, beta2, boundary_h1.clone())?;
        let key = profile.handles.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        *profiles.entry(key).or_insert(0) += 1;
        let mut targets = Vec::new();
        {
            // the triangle identity is only claimed when s is the third witness color
            for (a, b, s) in [(w.j, w.k, w.i), (w.j, w.k, w.r), (w.i, w.k, w.j), (w.i, w.k, w.r)] {
                let t = subgenus_target(&g, a, b, s, w.omega, beta2 as i64)?;
                let triangle_ok = s == w.r || t.triangle_identity_residual == HalfInt::ZERO;
                if t.subgenus != HalfInt::from_int(t.expected) || !triangle_ok {
                    return Err(GemError::Consistency(format!(
                        "subgenus {} at {} differs from {}",
                        t.subgenus, t.permutation, t.expected
                    )));
                }
                targets.push(t);
            }
        }
        let eps = w.permutation();
        let collapse = collapse_2skeleton(&g, w.sequence())?;
        out.push(WitnessAnalysis { permutation: eps, witness: w, profile, subgenus_targets: targets, collapse });
    }
    Ok(HandlesReport { recolored, beta2, witnesses: out, profiles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sigma_witnesses() {
        let s = fixtures::sigma(5);
        let w = find_hypothesis_witnesses(&s, None).unwrap();
        assert_eq!(w.iter().filter(|x| x.kind == WitnessKind::Triple).count(), 30);
        assert_eq!(w.iter().filter(|x| x.kind == WitnessKind::Partition).count(), 30);
        let r = analyze_handles(&s).unwrap();
        for a in &r.witnesses {
            assert_eq!(a.profile.handles, [1, 0, 0, 0, 1]);
            assert_eq!(a.profile.link.undotted, 0);
            assert_eq!(a.collapse.remaining_triangles, 1);
            assert_eq!(a.collapse.multiplicities, vec![1]);
        }
    }

    #[test]
    fn cp2_profile() {
        let r = analyze_handles(&fixtures::cp2()).unwrap();
        assert_eq!(r.beta2, 1);
        let b: Vec<_> = r.witnesses.iter().filter(|a| a.witness.kind == WitnessKind::Partition).collect();
        assert!(!b.is_empty());
        for a in b {
            assert_eq!(a.profile.handles, [1, 0, 1, 0, 1]);
            assert_eq!(a.profile.link, LinkSummary { undotted: 1, dotted: 0, target: "S³".into() });
        }
    }
}
