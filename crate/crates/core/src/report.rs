//! Versioned JSON reports assembled from the analyses.

use serde::Serialize;
use serde_json::Value;

use crate::canon::{canonical_code, CodeFlavor};
use crate::classification::{classify, ClassificationReport};
use crate::error::{GemError, Result};
use crate::genus::{genus_all, CyclicPermutation, GenusReport, PermutationGenus};
use crate::graph::ColoredGraph;
use crate::handles::{analyze_handles_with, HandlesReport};
use crate::invariants::{homology_with, HomologyReport};
use crate::recognition::{check_closed_manifold, is_crystallization, recognize_sphere, CrystallizationCheck, ManifoldClass, SphereCertificate};

pub const SCHEMA_VERSION: &str = "gemkit-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct InputIdentity {
    pub path: Option<String>,
    /// Color-preserving canonical code.
    pub code: String,
    pub n_colors: usize,
    pub order: usize,
    pub bipartite: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifoldSection {
    #[serde(flatten)]
    pub class: ManifoldClass,
    pub crystallization: CrystallizationCheck,
    pub sphere: SphereCertificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenusSection {
    #[serde(flatten)]
    pub all: GenusReport,
    /// The permutation asked for, if any.
    pub selected: Option<PermutationGenus>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostic {
    pub section: String,
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub input: InputIdentity,
    pub manifold_class: ManifoldSection,
    pub genus: Option<GenusSection>,
    pub classification: Option<ClassificationReport>,
    pub homology: Option<HomologyReport>,
    pub handles: Option<HandlesReport>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Report {
    /// Identity and manifold class; other sections are added on demand.
    pub fn new(g: &ColoredGraph, path: Option<&str>) -> Result<Report> {
        let code = canonical_code(g, CodeFlavor::ColorPreserving)?;
        let class = check_closed_manifold(g)?;
        Ok(Report {
            schema_version: SCHEMA_VERSION,
            input: InputIdentity {
                path: path.map(str::to_string),
                code: code.to_hex(),
                n_colors: g.n_colors(),
                order: g.order(),
                bipartite: g.is_bipartite(),
            },
            manifold_class: ManifoldSection { class, crystallization: is_crystallization(g), sphere: recognize_sphere(g) },
            genus: None,
            classification: None,
            homology: None,
            handles: None,
            diagnostics: Vec::new(),
        })
    }

    pub fn add_genus(&mut self, g: &ColoredGraph, permutation: Option<&CyclicPermutation>) -> Result<()> {
        let all = genus_all(g)?;
        let selected = match permutation {
            Some(eps) => Some(
                all.entry(eps)
                    .cloned()
                    .ok_or_else(|| GemError::InvalidGraph(format!("permutation {eps} does not fit a {}-colored graph", g.n_colors())))?,
            ),
            None => None,
        };
        self.genus = Some(GenusSection { all, selected });
        Ok(())
    }

    pub fn add_homology(&mut self, g: &ColoredGraph) -> Result<()> {
        self.homology = Some(homology_with(g, &self.manifold_class.class)?);
        Ok(())
    }

    pub fn add_classification(&mut self, g: &ColoredGraph) -> Result<()> {
        self.classification = Some(classify(g)?);
        Ok(())
    }

    pub fn add_handles(&mut self, g: &ColoredGraph) -> Result<()> {
        self.handles = Some(analyze_handles_with(g, &self.manifold_class.class)?);
        Ok(())
    }

    /// Runs `add`, turning a refusal into a diagnostic.
    pub fn try_section(&mut self, section: &str, add: impl FnOnce(&mut Report) -> Result<()>) -> Result<()> {
        match add(self) {
            Err(e @ GemError::Refused(_)) => {
                self.diagnostics.push(Diagnostic { section: section.into(), kind: e.kind().into(), message: e.to_string() });
                Ok(())
            }
            other => other,
        }
    }

    /// Every section that applies; refusals become diagnostics.
    pub fn full(g: &ColoredGraph, path: Option<&str>) -> Result<Report> {
        let mut r = Report::new(g, path)?;
        r.add_genus(g, None)?;
        r.add_homology(g)?;
        if g.n_colors() == 5 {
            r.try_section("classification", |r| r.add_classification(g))?;
            r.try_section("handles", |r| r.add_handles(g))?;
        }
        Ok(r)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// `key.path: value` lines, one per leaf of the JSON form.
    pub fn to_text(&self) -> String {
        flatten_text(&self.to_value())
    }
}

/// Renders a JSON value as sorted-by-position `path: value` lines; empty
/// containers and nulls are omitted.
pub fn flatten_text(v: &Value) -> String {
    fn walk(v: &Value, path: &str, out: &mut String) {
        match v {
            Value::Null => {}
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                    walk(x, &p, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                if !a.is_empty() {
                    let items: Vec<String> = a.iter().map(scalar).collect();
                    out.push_str(&format!("{path}: [{}]\n", items.join(", ")));
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(x, &format!("{path}[{i}]"), out);
                }
            }
            x => out.push_str(&format!("{path}: {}\n", scalar(x))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            x => x.to_string(),
        }
    }
    let mut out = String::new();
    walk(v, "", &mut out);
    out
}
