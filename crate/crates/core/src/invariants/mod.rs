//! Euler characteristic, homology and fundamental groups.

pub mod complex;
pub mod presentation;

use serde::{Deserialize, Serialize};

use crate::error::{GemError, Result};
use crate::genus::{genus_of_colors, subgenus_with, CyclicPermutation, HalfInt};
use crate::graph::{ColoredGraph, ResidueTable};
use crate::recognition::{check_closed_manifold, is_crystallization, ManifoldClass};
use crate::snf::AbelianGroup;

pub use complex::{euler_characteristic, ChainComplex, ChainComplexSummary};
pub use presentation::{
    abelianize, pi1_presentation, rank_estimate, simplify, Presentation, PresentationFlavor, RankEstimate,
    Simplified, Word, TIETZE_MOVES,
};

/// `2 - 2ρ_ε + Σ_i ρ_{ε_î}` for one permutation; the Euler characteristic of
/// `K(Γ)` whenever the 3-colored residues are spheres.
pub fn euler_from_genera(table: &ResidueTable, order: usize, eps: &CyclicPermutation) -> HalfInt {
    let rho = genus_of_colors(table, order, eps.colors());
    let sub: HalfInt = eps.colors().iter().map(|&c| subgenus_with(table, order, eps, c)).sum();
    HalfInt::from_int(2) - rho - rho + sub
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerViaGenus {
    pub value: i64,
    pub crystallization: bool,
    /// One value per cyclic permutation, all equal.
    pub per_permutation: Vec<(CyclicPermutation, i64)>,
}

pub fn euler_via_genus(g: &ColoredGraph) -> Result<EulerViaGenus> {
    if g.n_colors() != 5 {
        return Err(GemError::InvalidGraph(format!("expected 5 colors, got {}", g.n_colors())));
    }
    g.require_connected()?;
    let table = ResidueTable::new(g);
    let mut per = Vec::new();
    for eps in CyclicPermutation::all(5) {
        let v = euler_from_genera(&table, g.order(), &eps);
        let Some(x) = v.to_int() else {
            return Err(GemError::Consistency(format!("half-integral Euler characteristic {v} at {eps}")));
        };
        per.push((eps, x));
    }
    let value = per[0].1;
    if let Some((eps, x)) = per.iter().find(|(_, x)| *x != value) {
        return Err(GemError::Consistency(format!("Euler characteristic {x} at {eps} differs from {value}")));
    }
    Ok(EulerViaGenus { value, crystallization: is_crystallization(g).crystallization, per_permutation: per })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pi1Status {
    Trivial,
    Nontrivial,
    Unknown,
}

/// Fundamental group of the compact manifold `M` (or of `M̂`).
#[derive(Debug, Clone, Serialize)]
pub struct Pi1Report {
    pub flavor: PresentationFlavor,
    pub colors: (usize, usize),
    pub status: Pi1Status,
    pub abelianization: AbelianGroup,
    pub rank: RankEstimate,
    pub presentation: Presentation,
    pub simplified: Simplified,
}

/// Colors for a presentation of the given flavor, or `None` if no pair
/// satisfies its precondition.
pub fn presentation_colors(n_colors: usize, singular: &[usize], flavor: PresentationFlavor) -> Option<(usize, usize)> {
    let regular: Vec<usize> = (0..n_colors).filter(|c| !singular.contains(c)).collect();
    match flavor {
        PresentationFlavor::CompactManifold => (regular.len() >= 2).then(|| (regular[0], regular[1])),
        PresentationFlavor::SingularManifold => match singular {
            [] => Some((0, 1)),
            [s] => regular.first().map(|&r| (r.min(*s), r.max(*s))),
            [s, t] => Some((*s.min(t), *s.max(t))),
            _ => None,
        },
    }
}

pub fn pi1_report(g: &ColoredGraph, singular: &[usize], flavor: PresentationFlavor) -> Result<Option<Pi1Report>> {
    let Some((i, j)) = presentation_colors(g.n_colors(), singular, flavor) else { return Ok(None) };
    let p = pi1_presentation(g, i, j, flavor, singular)?;
    let abelianization = p.abelianization();
    let simplified = p.simplify(TIETZE_MOVES);
    let rank = RankEstimate {
        lower: abelianization.min_generators(),
        upper: simplified.generators,
        certified_trivial: simplified.is_trivial(),
    };
    let status = if rank.certified_trivial {
        Pi1Status::Trivial
    } else if !abelianization.is_trivial() {
        Pi1Status::Nontrivial
    } else {
        Pi1Status::Unknown
    };
    Ok(Some(Pi1Report { flavor, colors: (i, j), status, abelianization, rank, presentation: p, simplified }))
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyReport {
    pub complex: ChainComplexSummary,
    /// `H_k(M̂)` for `k = 0..=n`, from the chain complex of `K(Γ)`.
    pub homology: Vec<AbelianGroup>,
    pub betti: Vec<usize>,
    /// `H_1(M̂)` from the abelianized presentation.
    pub h1_presentation: Option<AbelianGroup>,
    /// `H_1(M̂)` from the edge-path group of the 2-skeleton.
    pub h1_edge_path: AbelianGroup,
    /// `H_1(M)` of the compact manifold.
    pub h1_manifold: Option<AbelianGroup>,
    pub beta1_manifold: Option<usize>,
    pub beta1_hat: usize,
    /// `β₂(M̂)`, which equals `β₂(M)` for closed or orientable `M`.
    pub beta2: usize,
    pub torsion_h1: Vec<String>,
    pub euler_hat: i64,
    pub euler_via_genus: Option<i64>,
    /// The duality identity `χ(M̂) = 2 - β₁(M̂) + β₂ - β₁(M)`, checked for
    /// orientable 4-dimensional inputs.
    pub duality_identity: Option<bool>,
    pub pi1_manifold: Option<Pi1Report>,
    pub pi1_hat: Option<Pi1Report>,
    pub singular_colors: Vec<usize>,
    pub conditional: bool,
    /// More than one singular color.
    pub outside_scope: bool,
}

pub fn homology(g: &ColoredGraph) -> Result<HomologyReport> {
    let class = check_closed_manifold(g)?;
    homology_with(g, &class)
}

pub fn homology_with(g: &ColoredGraph, class: &ManifoldClass) -> Result<HomologyReport> {
    g.require_connected()?;
    let cx = ChainComplex::new(g);
    let complex = cx.summary();
    let groups = cx.homology();
    let betti: Vec<usize> = groups.iter().map(|h| h.rank).collect();
    let euler_hat: i64 = betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    if euler_hat != complex.euler {
        return Err(GemError::Consistency(format!(
            "Betti numbers give Euler characteristic {euler_hat}, simplex counts give {}",
            complex.euler
        )));
    }
    let singular = class.singular_colors.clone();
    let h1_edge_path = cx.h1_edge_path();
    if h1_edge_path != groups[1] {
        return Err(GemError::Consistency(format!("edge-path H1 {h1_edge_path} differs from chain H1 {}", groups[1])));
    }
    let manifold = class.verdict.is_manifold_complex();
    let pi1_hat = if manifold { pi1_report(g, &singular, PresentationFlavor::SingularManifold)? } else { None };
    let h1_presentation = pi1_hat.as_ref().map(|p| p.abelianization.clone());
    if let Some(h) = &h1_presentation {
        if *h != h1_edge_path {
            return Err(GemError::Consistency(format!("presentation H1 {h} differs from edge-path H1 {h1_edge_path}")));
        }
    }
    let pi1_manifold = if manifold { pi1_report(g, &singular, PresentationFlavor::CompactManifold)? } else { None };
    let h1_manifold = pi1_manifold.as_ref().map(|p| p.abelianization.clone());
    let beta1_manifold = h1_manifold.as_ref().map(|h| h.rank);
    let beta1_hat = betti[1];
    let beta2 = betti.get(2).copied().unwrap_or(0);
    let euler_via = if g.n_colors() == 5 && manifold {
        Some(euler_via_genus(g)?.value)
    } else {
        None
    };
    if let Some(x) = euler_via {
        if x != euler_hat {
            return Err(GemError::Consistency(format!("Euler characteristic {x} from genera, {euler_hat} from counts")));
        }
    }
    let duality_identity = match (g.n_colors(), beta1_manifold) {
        (5, Some(b1m)) if g.is_bipartite() && manifold => {
            let ok = euler_hat == 2 - beta1_hat as i64 + beta2 as i64 - b1m as i64 && betti[3] == b1m;
            if !ok {
                return Err(GemError::Consistency(format!(
                    "duality identity fails: chi {euler_hat}, b1(hat) {beta1_hat}, b2 {beta2}, b1(M) {b1m}, b3(hat) {}",
                    betti[3]
                )));
            }
            Some(true)
        }
        _ => None,
    };
    let torsion_h1 = h1_manifold.as_ref().unwrap_or(&groups[1]).torsion.iter().map(|t| t.to_string()).collect();
    Ok(HomologyReport {
        complex,
        homology: groups,
        betti,
        h1_presentation,
        h1_edge_path,
        h1_manifold,
        beta1_manifold,
        beta1_hat,
        beta2,
        torsion_h1,
        euler_hat,
        euler_via_genus: euler_via,
        duality_identity,
        pi1_manifold,
        pi1_hat,
        outside_scope: singular.len() > 1,
        singular_colors: singular,
        conditional: class.conditional,
    })
}

/// `β₂` from genera alone: `Σ_i ρ_{ε_î} - 2ρ_ε` at every permutation, which
/// equals `β₂` for simply-connected inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Beta2ViaGenus {
    pub value: i64,
    /// Smallest subgenus over all permutations and colors; an upper bound
    /// for `β₂`.
    pub min_subgenus: i64,
}

pub fn beta2_via_genus(g: &ColoredGraph, pi1: Pi1Status) -> Result<Beta2ViaGenus> {
    if pi1 != Pi1Status::Trivial {
        return Err(GemError::Refused(format!("fundamental group not certified trivial ({pi1:?})")));
    }
    if g.n_colors() != 5 {
        return Err(GemError::InvalidGraph(format!("expected 5 colors, got {}", g.n_colors())));
    }
    g.require_connected()?;
    let table = ResidueTable::new(g);
    let mut value = None;
    let mut min_sub = i64::MAX;
    for eps in CyclicPermutation::all(5) {
        let rho = genus_of_colors(&table, g.order(), eps.colors());
        let subs: Vec<HalfInt> = eps.colors().iter().map(|&c| subgenus_with(&table, g.order(), &eps, c)).collect();
        let b = subs.iter().copied().sum::<HalfInt>() - rho - rho;
        let Some(b) = b.to_int() else {
            return Err(GemError::Consistency(format!("half-integral second Betti number at {eps}")));
        };
        match value {
            None => value = Some(b),
            Some(v) if v != b => {
                return Err(GemError::Consistency(format!("second Betti number {b} at {eps} differs from {v}")))
            }
            _ => {}
        }
        for s in subs {
            min_sub = min_sub.min(s.twice() / 2);
        }
    }
    let value = value.unwrap();
    if value > min_sub {
        return Err(GemError::Consistency(format!("second Betti number {value} exceeds subgenus {min_sub}")));
    }
    Ok(Beta2ViaGenus { value, min_subgenus: min_sub })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_invariants() {
        let s = ColoredGraph::standard_sphere(5);
        let e = euler_via_genus(&s).unwrap();
        assert_eq!(e.value, 2);
        assert_eq!(e.per_permutation.len(), 12);
        let h = homology(&s).unwrap();
        assert_eq!(h.beta1_hat, 0);
        assert_eq!(h.beta2, 0);
        assert_eq!(h.euler_hat, 2);
        assert_eq!(h.duality_identity, Some(true));
        assert_eq!(h.pi1_manifold.as_ref().unwrap().status, Pi1Status::Trivial);
        assert_eq!(beta2_via_genus(&s, Pi1Status::Trivial).unwrap().value, 0);
        assert!(matches!(beta2_via_genus(&s, Pi1Status::Unknown), Err(GemError::Refused(_))));
    }

    #[test]
    fn presentation_colors_choice() {
        use PresentationFlavor::*;
        assert_eq!(presentation_colors(5, &[], CompactManifold), Some((0, 1)));
        assert_eq!(presentation_colors(5, &[0], CompactManifold), Some((1, 2)));
        assert_eq!(presentation_colors(5, &[4], SingularManifold), Some((0, 4)));
        assert_eq!(presentation_colors(5, &[1, 3, 4], SingularManifold), None);
    }
}
