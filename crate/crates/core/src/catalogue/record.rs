//! One catalogue line: a canonical code plus digests of every analysis.
//! Everything except `generator` is a function of the code alone.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code, CodeFlavor};
use crate::classification::classify;
use crate::dipole::find_dipoles;
use crate::error::{GemError, Result};
use crate::genus::{genus_all, HalfInt};
use crate::graph::ColoredGraph;
use crate::handles::{analyze_handles_with, WitnessKind};
use crate::invariants::{homology_with, Pi1Status};
use crate::recognition::{check_closed_manifold, is_crystallization, recognize_sphere, SphereStatus};

pub const GENERATOR_VERSION: &str = concat!("gemkit ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldDigest {
    pub verdict: String,
    pub singular_colors: Vec<usize>,
    pub conditional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusDigest {
    pub regular_genus: HalfInt,
    pub orientable: bool,
    /// Number of permutations attaining the regular genus.
    pub minimizers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDigest {
    /// Betti numbers of `K(Γ)`.
    pub betti: Vec<usize>,
    pub euler: i64,
    /// `H_1` of the manifold, when it is a manifold complex.
    pub h1: Option<String>,
    pub pi1: Option<Pi1Status>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDigest {
    pub simple: bool,
    /// Number of permutations at which the graph is weak simple.
    pub weak_simple: usize,
    /// Sum of the ten t-values.
    pub t_total: i64,
    /// `ρ(Γ) = 2β₂`, when the bounds apply.
    pub exact_genus: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandlesDigest {
    pub triples: usize,
    pub partitions: usize,
    /// Handle profiles `h0,h1,h2,h3,h4` with their witness counts.
    pub profiles: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueRecord {
    /// Hex canonical code, up to color permutation.
    pub code: String,
    pub n_colors: usize,
    pub order: usize,
    pub bipartite: bool,
    pub manifold: ManifoldDigest,
    pub crystallization: bool,
    pub genus: GenusDigest,
    pub homology: HomologyDigest,
    pub sphere: SphereStatus,
    pub classification: Option<ClassificationDigest>,
    pub handles: Option<HandlesDigest>,
    pub dipole_free: bool,
    pub generator: String,
}

/// Refusals become `None`; anything else is a real error.
fn refused_to_none<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(GemError::Refused(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

impl CatalogueRecord {
    /// Analyzes `g`, which must be connected. Internal-consistency errors
    /// propagate.
    pub fn from_graph(g: &ColoredGraph) -> Result<CatalogueRecord> {
        let code = canonical_code(g, CodeFlavor::UpToColorPermutation)?;
        let class = check_closed_manifold(g)?;
        let genus = genus_all(g)?;
        let minimizers = genus.minimizers().len();
        let h = homology_with(g, &class)?;
        let manifold = class.verdict.is_manifold_complex();
        let five = g.n_colors() == 5;
        let classification = if five && manifold {
            refused_to_none(classify(g))?.map(|r| ClassificationDigest {
                simple: r.simple,
                weak_simple: r.weak_simple_witnesses.len(),
                t_total: r.t_values.values().sum(),
                exact_genus: r.bounds.map(|b| b.exact_genus_certified),
            })
        } else {
            None
        };
        let handles = if five && manifold {
            refused_to_none(analyze_handles_with(g, &class))?.map(|r| HandlesDigest {
                triples: r.witnesses.iter().filter(|w| w.witness.kind == WitnessKind::Triple).count(),
                partitions: r.witnesses.iter().filter(|w| w.witness.kind == WitnessKind::Partition).count(),
                profiles: r.profiles,
            })
        } else {
            None
        };
        Ok(CatalogueRecord {
            code: code.to_hex(),
            n_colors: g.n_colors(),
            order: g.order(),
            bipartite: g.is_bipartite(),
            manifold: ManifoldDigest {
                verdict: class.verdict.name(),
                singular_colors: class.singular_colors.clone(),
                conditional: class.conditional,
            },
            crystallization: is_crystallization(g).crystallization,
            genus: GenusDigest { regular_genus: genus.regular_genus, orientable: genus.orientable, minimizers },
            homology: HomologyDigest {
                betti: h.betti.clone(),
                euler: h.euler_hat,
                h1: h.h1_manifold.as_ref().map(|a| a.to_string()),
                pi1: h.pi1_manifold.as_ref().map(|p| p.status),
            },
            sphere: recognize_sphere(g).status,
            classification,
            handles,
            dipole_free: find_dipoles(g)?.is_empty(),
            generator: GENERATOR_VERSION.to_string(),
        })
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// Record filters, applied in the order given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    Bipartite,
    /// Closed or singular manifold complex.
    Manifold,
    Crystallization,
    SimplyConnected,
    WeakSimple,
    Witness,
    Sphere,
    Nonsphere,
    DipoleFree,
}

impl Filter {
    pub const ALL: [Filter; 9] = [
        Filter::Bipartite,
        Filter::Manifold,
        Filter::Crystallization,
        Filter::SimplyConnected,
        Filter::WeakSimple,
        Filter::Witness,
        Filter::Sphere,
        Filter::Nonsphere,
        Filter::DipoleFree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Filter::Bipartite => "bipartite",
            Filter::Manifold => "manifold",
            Filter::Crystallization => "crystallization",
            Filter::SimplyConnected => "simply-connected",
            Filter::WeakSimple => "weak-simple",
            Filter::Witness => "witness",
            Filter::Sphere => "sphere",
            Filter::Nonsphere => "nonsphere",
            Filter::DipoleFree => "dipole-free",
        }
    }

    pub fn accepts(self, r: &CatalogueRecord) -> bool {
        match self {
            Filter::Bipartite => r.bipartite,
            Filter::Manifold => r.manifold.verdict != "not-a-manifold-complex",
            Filter::Crystallization => r.crystallization,
            Filter::SimplyConnected => r.homology.pi1 == Some(Pi1Status::Trivial),
            Filter::WeakSimple => r.classification.as_ref().is_some_and(|c| c.weak_simple > 0),
            Filter::Witness => r.handles.as_ref().is_some_and(|h| h.triples + h.partitions > 0),
            Filter::Sphere => r.sphere == SphereStatus::CertifiedSphere,
            Filter::Nonsphere => r.sphere == SphereStatus::CertifiedNonsphere,
            Filter::DipoleFree => r.dipole_free,
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = GemError;

    fn from_str(s: &str) -> Result<Filter> {
        let s = s.trim();
        let s = s.strip_suffix("-only").unwrap_or(s);
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GemError::Parse { line: 0, msg: format!("unknown filter `{s}`") })
    }
}

/// Parses a comma-separated filter list; the empty string is no filters.
pub fn parse_filters(s: &str) -> Result<Vec<Filter>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(str::parse).collect()
}

/// How many records survive each prefix of `filters`: entry 0 is the
/// unfiltered count.
pub fn filter_counts(records: &[CatalogueRecord], filters: &[Filter]) -> Vec<usize> {
    let mut counts = vec![records.len()];
    let mut alive: Vec<&CatalogueRecord> = records.iter().collect();
    for f in filters {
        alive.retain(|r| f.accepts(r));
        counts.push(alive.len());
    }
    counts
}
