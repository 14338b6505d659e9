//! Manifold and sphere recognition.
//!
//! `K(Γ)` is a closed `n`-manifold when every `ĉ`-residue represents an
//! `(n-1)`-sphere, and a singular manifold when every `ĉ`-residue represents
//! a closed connected `(n-1)`-manifold. The check recurses on dimension:
//! surfaces are decided exactly by their genus, higher spheres only through
//! certificates (see [`recognize_sphere`]).

use serde::{Deserialize, Serialize};

use crate::dipole::reduce;
use crate::error::{GemError, Result};
use crate::genus::{genus_all, HalfInt};
use crate::graph::{ColoredGraph, ResidueKey};
use crate::invariants::complex::ChainComplex;
use crate::snf::AbelianGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereStatus {
    CertifiedSphere,
    CertifiedNonsphere,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereMethod {
    /// Dimension at most 1: every connected graph is a sphere.
    LowDimension,
    GenusZero,
    DipoleReductionToOrder2,
    /// Closed 3-manifold of Heegaard genus at most one with trivial homology.
    GenusOneTrivialHomology,
    HomologyObstruction,
    /// Some lower-dimensional residue is not a sphere, so `K(Γ)` is not
    /// even a manifold.
    LinkObstruction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereCertificate {
    pub status: SphereStatus,
    pub method: Option<SphereMethod>,
    pub detail: String,
}

impl SphereCertificate {
    fn new(status: SphereStatus, method: Option<SphereMethod>, detail: impl Into<String>) -> Self {
        SphereCertificate { status, method, detail: detail.into() }
    }
}

fn is_sphere_homology(h: &[AbelianGroup]) -> bool {
    let d = h.len() - 1;
    h.iter().enumerate().all(|(k, g)| {
        if k == 0 || k == d {
            g.rank == 1 && g.torsion.is_empty()
        } else {
            g.is_trivial()
        }
    })
}

fn homology_string(h: &[AbelianGroup]) -> String {
    h.iter().enumerate().map(|(k, g)| format!("H{k}={g}")).collect::<Vec<_>>().join(", ")
}

/// Tries to certify that a connected graph represents a sphere (or that it
/// does not). Never answers wrongly; may answer `unknown` from dimension 3 on.
pub fn recognize_sphere(g: &ColoredGraph) -> SphereCertificate {
    use SphereStatus::*;
    let d = g.n_colors().saturating_sub(1);
    if d <= 1 {
        return SphereCertificate::new(CertifiedSphere, Some(SphereMethod::LowDimension), format!("order {}", g.order()));
    }
    let genus = match genus_all(g) {
        Ok(r) => r,
        Err(e) => return SphereCertificate::new(Unknown, None, e.to_string()),
    };
    if genus.regular_genus == HalfInt::ZERO {
        let eps = genus.minimizers()[0].to_string();
        return SphereCertificate::new(CertifiedSphere, Some(SphereMethod::GenusZero), eps);
    }
    if d == 2 {
        let what = if genus.orientable { "orientable" } else { "non-orientable" };
        return SphereCertificate::new(
            CertifiedNonsphere,
            Some(SphereMethod::HomologyObstruction),
            format!("{what} surface of genus {}", genus.regular_genus),
        );
    }
    // links of vertices must be spheres before anything else applies
    match check_closed_manifold(g) {
        Ok(mc) if mc.verdict.is_closed() => {}
        Ok(mc) => {
            return SphereCertificate::new(
                CertifiedNonsphere,
                Some(SphereMethod::LinkObstruction),
                format!("{} (singular colors {:?})", mc.verdict.name(), mc.singular_colors),
            )
        }
        Err(e) => return SphereCertificate::new(Unknown, None, e.to_string()),
    }
    let reduced = match reduce(g) {
        Ok(r) => r,
        Err(e) => return SphereCertificate::new(Unknown, None, e.to_string()),
    };
    if reduced.graph.order() == 2 {
        return SphereCertificate::new(
            CertifiedSphere,
            Some(SphereMethod::DipoleReductionToOrder2),
            format!("{} eliminations", reduced.steps.len()),
        );
    }
    let h = ChainComplex::new(&reduced.graph).homology();
    if !is_sphere_homology(&h) {
        return SphereCertificate::new(CertifiedNonsphere, Some(SphereMethod::HomologyObstruction), homology_string(&h));
    }
    if d == 3 {
        let small = match genus_all(&reduced.graph) {
            Ok(r) => r.regular_genus.min(genus.regular_genus),
            Err(_) => genus.regular_genus,
        };
        if small.twice() <= 2 {
            return SphereCertificate::new(
                CertifiedSphere,
                Some(SphereMethod::GenusOneTrivialHomology),
                format!("regular genus {small}, trivial homology"),
            );
        }
    }
    SphereCertificate::new(Unknown, None, format!("reduced to order {}, homology sphere", reduced.graph.order()))
}

/// Sphere recognition for a gem of a closed 3-manifold.
pub fn recognize_sphere3(g: &ColoredGraph) -> Result<SphereCertificate> {
    if g.n_colors() != 4 {
        return Err(GemError::InvalidGraph(format!("expected 4 colors, got {}", g.n_colors())));
    }
    g.require_connected()?;
    let mc = check_closed_manifold(g)?;
    if !mc.verdict.is_closed() {
        return Err(GemError::Structural(format!("not a closed 3-manifold gem: {}", mc.verdict.name())));
    }
    Ok(recognize_sphere(g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceClass {
    /// Regular genus; half-integral for non-orientable surfaces.
    pub genus: HalfInt,
    pub orientable: bool,
}

impl SurfaceClass {
    pub fn euler(&self) -> i64 {
        2 - self.genus.twice()
    }
}

pub fn classify_surface(g: &ColoredGraph) -> Result<SurfaceClass> {
    if g.n_colors() != 3 {
        return Err(GemError::InvalidGraph(format!("expected 3 colors, got {}", g.n_colors())));
    }
    let r = genus_all(g)?;
    Ok(SurfaceClass { genus: r.regular_genus, orientable: r.orientable })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Surface { genus: HalfInt, orientable: bool },
    #[serde(rename = "closed-3-manifold")]
    Closed3Manifold,
    #[serde(rename = "singular-3-residue")]
    Singular3Residue,
    #[serde(rename = "closed-4-manifold")]
    Closed4Manifold,
    #[serde(rename = "singular-4-manifold")]
    Singular4Manifold,
    ClosedManifold { dimension: usize },
    SingularManifold { dimension: usize },
    NotAManifoldComplex { reason: String },
}

impl Verdict {
    pub fn name(&self) -> String {
        match self {
            Verdict::Surface { .. } => "surface".into(),
            Verdict::Closed3Manifold => "closed-3-manifold".into(),
            Verdict::Singular3Residue => "singular-3-residue".into(),
            Verdict::Closed4Manifold => "closed-4-manifold".into(),
            Verdict::Singular4Manifold => "singular-4-manifold".into(),
            Verdict::ClosedManifold { dimension } => format!("closed-{dimension}-manifold"),
            Verdict::SingularManifold { dimension } => format!("singular-{dimension}-manifold"),
            Verdict::NotAManifoldComplex { .. } => "not-a-manifold-complex".into(),
        }
    }

    /// Closed manifold (surfaces included).
    pub fn is_closed(&self) -> bool {
        matches!(
            self,
            Verdict::Surface { .. } | Verdict::Closed3Manifold | Verdict::Closed4Manifold | Verdict::ClosedManifold { .. }
        )
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Verdict::Singular3Residue | Verdict::Singular4Manifold | Verdict::SingularManifold { .. })
    }

    pub fn is_manifold_complex(&self) -> bool {
        !matches!(self, Verdict::NotAManifoldComplex { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueCertificate {
    pub color: usize,
    /// Index among the `ĉ`-residues, ordered by smallest vertex.
    pub residue: usize,
    pub order: usize,
    pub certificate: SphereCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldClass {
    pub verdict: Verdict,
    pub singular_colors: Vec<usize>,
    /// Colors with a residue whose sphere status could not be decided.
    pub unknown_colors: Vec<usize>,
    /// Some residue status is unknown, so the verdict assumes it is a sphere.
    pub conditional: bool,
    pub certificates: Vec<ResidueCertificate>,
}

pub fn check_closed_manifold(g: &ColoredGraph) -> Result<ManifoldClass> {
    g.require_connected()?;
    let n = g.n_colors();
    if n < 3 {
        return Err(GemError::InvalidGraph(format!("need at least 3 colors, got {n}")));
    }
    let dim = n - 1;
    if dim == 2 {
        let s = classify_surface(g)?;
        return Ok(ManifoldClass {
            verdict: Verdict::Surface { genus: s.genus, orientable: s.orientable },
            singular_colors: vec![],
            unknown_colors: vec![],
            conditional: false,
            certificates: vec![],
        });
    }
    let mut singular = Vec::new();
    let mut unknown = Vec::new();
    let mut certificates = Vec::new();
    let mut broken: Option<String> = None;
    for c in 0..n {
        let key = ResidueKey::complement(n, &[c])?;
        for (idx, r) in g.extract_residues(&key)?.into_iter().enumerate() {
            let cert = if dim == 3 {
                recognize_sphere(&r.subgraph)
            } else {
                let sub = check_closed_manifold(&r.subgraph)?;
                if !sub.verdict.is_closed() {
                    broken.get_or_insert_with(|| format!("residue {idx} avoiding color {c} is {}", sub.verdict.name()));
                    certificates.push(ResidueCertificate {
                        color: c,
                        residue: idx,
                        order: r.subgraph.order(),
                        certificate: SphereCertificate::new(
                            SphereStatus::CertifiedNonsphere,
                            Some(SphereMethod::LinkObstruction),
                            sub.verdict.name(),
                        ),
                    });
                    continue;
                }
                recognize_sphere(&r.subgraph)
            };
            match cert.status {
                SphereStatus::CertifiedNonsphere => push_unique(&mut singular, c),
                SphereStatus::Unknown => push_unique(&mut unknown, c),
                SphereStatus::CertifiedSphere => {}
            }
            certificates.push(ResidueCertificate { color: c, residue: idx, order: r.subgraph.order(), certificate: cert });
        }
    }
    let verdict = match (broken, singular.is_empty(), dim) {
        (Some(reason), _, _) => Verdict::NotAManifoldComplex { reason },
        (None, true, 3) => Verdict::Closed3Manifold,
        (None, true, 4) => Verdict::Closed4Manifold,
        (None, true, d) => Verdict::ClosedManifold { dimension: d },
        (None, false, 3) => Verdict::Singular3Residue,
        (None, false, 4) => Verdict::Singular4Manifold,
        (None, false, d) => Verdict::SingularManifold { dimension: d },
    };
    let conditional = !unknown.is_empty() && verdict.is_manifold_complex();
    Ok(ManifoldClass { verdict, singular_colors: singular, unknown_colors: unknown, conditional, certificates })
}

fn push_unique(v: &mut Vec<usize>, c: usize) {
    if !v.contains(&c) {
        v.push(c);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrystallizationCheck {
    pub crystallization: bool,
    /// `g_ĉ` for every color `c`.
    pub hat_counts: Vec<usize>,
    /// Number of vertices of `K(Γ)`; equals the color count exactly when the
    /// triangulation is contracted.
    pub triangulation_vertices: usize,
}

pub fn is_crystallization(g: &ColoredGraph) -> CrystallizationCheck {
    let n = g.n_colors();
    let full = g.all_colors();
    let hat_counts: Vec<usize> = (0..n).map(|c| g.residue_count_mask(full & !(1 << c))).collect();
    let triangulation_vertices = hat_counts.iter().sum();
    CrystallizationCheck { crystallization: hat_counts.iter().all(|&k| k == 1), hat_counts, triangulation_vertices }
}

/// When exactly one color is singular, recolors so that it becomes the last
/// color. Returns the recolored graph and the swapped pair, if any.
pub fn normalize_singular_color(g: &ColoredGraph, class: &ManifoldClass) -> Result<(ColoredGraph, Option<(usize, usize)>)> {
    let last = g.n_colors() - 1;
    match class.singular_colors.as_slice() {
        [s] if *s != last => {
            let mut perm: Vec<usize> = (0..g.n_colors()).collect();
            perm.swap(*s, last);
            Ok((g.recolor(&perm)?, Some((*s, last))))
        }
        _ => Ok((g.clone(), None)),
    }
}
