//! `t`-values, (weak) simplicity and genus bounds for 5-colored
//! crystallizations of simply-connected 4-manifolds.
//!
//! Write `g_{j,k,l} = 1 + t_{j,k,l}` for the number of residues on three
//! colors. A crystallization is simple when every `t` vanishes, and weak
//! simple at `ε` when the five "skew" triples `{ε_i, ε_{i+2}, ε_{i+4}}` have
//! `t = 0`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{GemError, Result};
use crate::genus::{genus_of_colors, subgenus_with, CyclicPermutation, HalfInt};
use crate::graph::{ColoredGraph, ResidueTable};
use crate::invariants::{homology_with, Pi1Status};
use crate::recognition::{check_closed_manifold, is_crystallization, normalize_singular_color};

/// Comma-separated sorted color list, used as a map key in reports.
pub fn triple_key(colors: &[usize]) -> String {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn t_value(table: &ResidueTable, colors: &[usize]) -> i64 {
    table.of(colors) as i64 - 1
}

/// `t` for every 3-subset of the colors, keyed by sorted triple.
pub fn t_values(g: &ColoredGraph) -> Result<BTreeMap<String, i64>> {
    g.require_connected()?;
    let table = ResidueTable::new(g);
    Ok(t_values_with(&table))
}

pub fn t_values_with(table: &ResidueTable) -> BTreeMap<String, i64> {
    let n = table.n_colors();
    let mut out = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.insert(triple_key(&[a, b, c]), t_value(table, &[a, b, c]));
            }
        }
    }
    out
}

/// The triples `{ε_i, ε_{i+2}, ε_{i+4}}` for `i = 0..5`.
pub fn skew_triples(eps: &CyclicPermutation) -> Vec<[usize; 3]> {
    (0..5).map(|i| [eps.get(i), eps.get(i + 2), eps.get(i + 4)]).collect()
}

pub fn is_weak_simple_at(table: &ResidueTable, eps: &CyclicPermutation) -> bool {
    skew_triples(eps).iter().all(|t| table.of(t) == 1)
}

pub fn is_simple(table: &ResidueTable) -> bool {
    t_values_with(table).values().all(|&t| t == 0)
}

fn require_five(g: &ColoredGraph) -> Result<()> {
    if g.n_colors() != 5 {
        return Err(GemError::InvalidGraph(format!("expected 5 colors, got {}", g.n_colors())));
    }
    g.require_connected()
}

fn refuse_nontrivial(pi1: Pi1Status) -> Result<()> {
    if pi1 == Pi1Status::Nontrivial {
        return Err(GemError::Refused("fundamental group is nontrivial".into()));
    }
    Ok(())
}

/// Permutations at which `g` is weak simple.
pub fn detect_weak_simple(g: &ColoredGraph, pi1: Pi1Status) -> Result<Vec<CyclicPermutation>> {
    require_five(g)?;
    refuse_nontrivial(pi1)?;
    let table = ResidueTable::new(g);
    Ok(CyclicPermutation::all(5).into_iter().filter(|e| is_weak_simple_at(&table, e)).collect())
}

pub fn detect_simple(g: &ColoredGraph) -> Result<bool> {
    require_five(g)?;
    Ok(is_simple(&ResidueTable::new(g)))
}

/// `ρ_ε - ρ_{ε_î} - ρ_{ε_{î+2}} - t_{ε_{i-1}, ε_{i+1}, ε_{i+3}}` for
/// `i = 0..5`.
pub fn genus_split_residuals(table: &ResidueTable, order: usize, eps: &CyclicPermutation) -> Vec<HalfInt> {
    let rho = genus_of_colors(table, order, eps.colors());
    (0..5)
        .map(|i| {
            let a = subgenus_with(table, order, eps, eps.get(i));
            let b = subgenus_with(table, order, eps, eps.get(i + 2));
            let t = t_value(table, &[eps.get(i + 4), eps.get(i + 1), eps.get(i + 3)]);
            rho - a - b - HalfInt::from_int(t)
        })
        .collect()
}

/// Residuals at `eps`; any nonzero one is an error.
pub fn check_genus_split(g: &ColoredGraph, eps: &CyclicPermutation, pi1: Pi1Status) -> Result<Vec<HalfInt>> {
    require_five(g)?;
    refuse_nontrivial(pi1)?;
    let table = ResidueTable::new(g);
    let r = genus_split_residuals(&table, g.order(), eps);
    if let Some(x) = r.iter().find(|x| **x != HalfInt::ZERO) {
        return Err(GemError::Consistency(format!("genus identity residual {x} at {eps}")));
    }
    Ok(r)
}

/// Permutations whose subgenera all equal half the genus.
pub fn half_genus_permutations(table: &ResidueTable, order: usize) -> Vec<CyclicPermutation> {
    CyclicPermutation::all(table.n_colors())
        .into_iter()
        .filter(|eps| {
            let rho = genus_of_colors(table, order, eps.colors());
            eps.colors().iter().all(|&c| subgenus_with(table, order, eps, c).twice() * 2 == rho.twice())
        })
        .collect()
}

/// Checks that the weak-simple permutations are exactly those whose
/// subgenera are all `ρ_ε / 2`.
pub fn check_half_genus(g: &ColoredGraph, pi1: Pi1Status) -> Result<bool> {
    require_five(g)?;
    refuse_nontrivial(pi1)?;
    let table = ResidueTable::new(g);
    let a: Vec<_> = CyclicPermutation::all(5).into_iter().filter(|e| is_weak_simple_at(&table, e)).collect();
    let b = half_genus_permutations(&table, g.order());
    if a != b {
        return Err(GemError::Consistency(format!(
            "weak-simple permutations {} differ from half-genus permutations {}",
            list(&a),
            list(&b)
        )));
    }
    Ok(true)
}

fn list(v: &[CyclicPermutation]) -> String {
    format!("[{}]", v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub regular_genus: HalfInt,
    pub beta2: i64,
    pub euler: i64,
    pub twice_beta2: i64,
    pub twice_euler_minus_4: i64,
    /// `ρ(Γ) = 2β₂`, so this graph realizes the gem-genus of the manifold.
    pub exact_genus_certified: bool,
    /// Permutations with `ρ_ε = 2β₂`; these are exactly the weak-simple ones.
    pub optimal_permutations: Vec<CyclicPermutation>,
}

/// Lower bounds for the genus. `beta2` and `euler` come from homology.
pub fn check_bounds(g: &ColoredGraph, beta2: i64, euler: i64, pi1: Pi1Status) -> Result<BoundReport> {
    require_five(g)?;
    refuse_nontrivial(pi1)?;
    let table = ResidueTable::new(g);
    let order = g.order();
    let mut regular = None::<HalfInt>;
    let mut optimal = Vec::new();
    for eps in CyclicPermutation::all(5) {
        let rho = genus_of_colors(&table, order, eps.colors());
        regular = Some(regular.map_or(rho, |r| r.min(rho)));
        if rho.twice() < 4 * beta2 {
            return Err(GemError::Consistency(format!("genus {rho} at {eps} below twice the second Betti number {beta2}")));
        }
        let tight = rho.twice() == 4 * beta2;
        let weak = is_weak_simple_at(&table, &eps);
        if tight != weak {
            return Err(GemError::Consistency(format!(
                "at {eps}: genus {rho}, second Betti number {beta2}, weak simple {weak}"
            )));
        }
        if weak {
            for &c in eps.colors() {
                let s = subgenus_with(&table, order, &eps, c);
                if s != HalfInt::from_int(euler - 2) {
                    return Err(GemError::Consistency(format!(
                        "weak simple at {eps} but subgenus {s} avoiding {c} differs from {}",
                        euler - 2
                    )));
                }
            }
            optimal.push(eps);
        }
    }
    let regular_genus = regular.unwrap();
    Ok(BoundReport {
        regular_genus,
        beta2,
        euler,
        twice_beta2: 2 * beta2,
        twice_euler_minus_4: 2 * euler - 4,
        exact_genus_certified: regular_genus.twice() == 4 * beta2,
        optimal_permutations: optimal,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    /// Color swap applied to move the singular color to 4.
    pub recolored: Option<(usize, usize)>,
    pub crystallization: bool,
    pub t_values: BTreeMap<String, i64>,
    pub simple: bool,
    pub weak_simple_witnesses: Vec<CyclicPermutation>,
    pub half_genus_permutations: Vec<CyclicPermutation>,
    pub genus_split_residuals: BTreeMap<String, Vec<HalfInt>>,
    pub bounds: Option<BoundReport>,
    pub pi1: Pi1Status,
    /// `π₁` not certified trivial; results assume it is.
    pub conditional: bool,
    /// More than one singular color.
    pub outside_scope: bool,
}

/// Full classification of a 5-colored gem. Refuses non-manifolds and
/// inputs with certified nontrivial fundamental group.
pub fn classify(g: &ColoredGraph) -> Result<ClassificationReport> {
    require_five(g)?;
    let class = check_closed_manifold(g)?;
    if !class.verdict.is_manifold_complex() {
        return Err(GemError::Refused(format!("not a manifold: {}", class.verdict.name())));
    }
    let (g, recolored) = normalize_singular_color(g, &class)?;
    let class = if recolored.is_some() { check_closed_manifold(&g)? } else { class };
    let h = homology_with(&g, &class)?;
    let pi1 = h.pi1_manifold.as_ref().map_or(Pi1Status::Unknown, |p| p.status);
    refuse_nontrivial(pi1)?;
    let table = ResidueTable::new(&g);
    let crystallization = is_crystallization(&g).crystallization;
    let t_values = t_values_with(&table);
    let simple = t_values.values().all(|&t| t == 0);
    let witnesses: Vec<_> = CyclicPermutation::all(5).into_iter().filter(|e| is_weak_simple_at(&table, e)).collect();
    let half = half_genus_permutations(&table, g.order());
    let mut split = BTreeMap::new();
    if crystallization {
        if witnesses != half {
            return Err(GemError::Consistency(format!(
                "weak-simple permutations {} differ from half-genus permutations {}",
                list(&witnesses),
                list(&half)
            )));
        }
        for eps in CyclicPermutation::all(5) {
            let r = genus_split_residuals(&table, g.order(), &eps);
            if let Some(x) = r.iter().find(|x| **x != HalfInt::ZERO) {
                return Err(GemError::Consistency(format!("genus identity residual {x} at {eps}")));
            }
            split.insert(eps.to_string(), r);
        }
    }
    if simple && witnesses.is_empty() {
        return Err(GemError::Consistency("simple but not weak simple".into()));
    }
    let bounds = if crystallization && class.singular_colors.is_empty() {
        Some(check_bounds(&g, h.beta2 as i64, h.euler_hat, pi1)?)
    } else {
        None
    };
    Ok(ClassificationReport {
        recolored,
        crystallization,
        t_values,
        simple,
        weak_simple_witnesses: witnesses,
        half_genus_permutations: half,
        genus_split_residuals: split,
        bounds,
        pi1,
        conditional: pi1 != Pi1Status::Trivial || class.conditional,
        outside_scope: class.singular_colors.len() > 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sigma_classification() {
        let s = fixtures::sigma(5);
        let r = classify(&s).unwrap();
        assert!(r.simple);
        assert_eq!(r.weak_simple_witnesses.len(), 12);
        assert!(r.t_values.values().all(|&t| t == 0));
        assert_eq!(r.t_values.len(), 10);
        let b = r.bounds.unwrap();
        assert!(b.exact_genus_certified);
        assert_eq!(b.regular_genus, HalfInt::ZERO);
        assert!(!r.conditional);
    }

    #[test]
    fn cp2_classification() {
        let r = classify(&fixtures::cp2()).unwrap();
        assert!(r.simple);
        assert!(!r.weak_simple_witnesses.is_empty());
        let b = r.bounds.unwrap();
        assert_eq!(b.regular_genus, HalfInt::from_int(2));
        assert_eq!(b.twice_beta2, 2);
        assert!(b.exact_genus_certified);
    }

    #[test]
    fn refusals() {
        assert!(matches!(classify(&fixtures::not_a_manifold()), Err(GemError::Refused(_))));
        assert!(matches!(classify(&fixtures::singular_rp3_double()), Err(GemError::Refused(_))));
        assert!(matches!(detect_weak_simple(&fixtures::sigma(5), Pi1Status::Nontrivial), Err(GemError::Refused(_))));
    }
}
