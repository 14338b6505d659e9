//! Replays every identity on a catalogue and tabulates the outcome.

use std::collections::BTreeMap;

use serde::Serialize;

use super::record::CatalogueRecord;
use crate::canon::{canonical_code, CanonicalCode, CodeFlavor};
use crate::classification::{check_bounds, check_half_genus, genus_split_residuals};
use crate::error::{GemError, Result};
use crate::genus::{CyclicPermutation, HalfInt};
use crate::graph::{ColoredGraph, ResidueTable};
use crate::handles::{collapse_2skeleton, find_hypothesis_witnesses, subgenus_target};
use crate::invariants::{beta2_via_genus, euler_via_genus, homology_with, Pi1Status};
use crate::recognition::{check_closed_manifold, is_crystallization, normalize_singular_color, ManifoldClass};

/// Checks in the order they are reported.
pub const CHECKS: [&str; 12] = [
    "decode",
    "canonical",
    "manifold",
    "digest",
    "homology",
    "euler-genus",
    "genus-split",
    "half-genus",
    "bounds",
    "beta2-genus",
    "subgenus",
    "collapse",
];

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub pass: usize,
    pub fail: usize,
    /// Not applicable to the record.
    pub skip: usize,
    /// `(code, message)` of each failure.
    pub failures: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub records: usize,
    pub rows: BTreeMap<String, CheckRow>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.rows.values().all(|r| r.fail == 0)
    }

    pub fn row(&self, check: &str) -> &CheckRow {
        &self.rows[check]
    }

    /// One line per check: `name pass fail skip`.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} records\n", self.records);
        for c in CHECKS {
            let r = &self.rows[c];
            s.push_str(&format!("{c:<12} pass {:>6}  fail {:>4}  skip {:>6}\n", r.pass, r.fail, r.skip));
            for (code, msg) in &r.failures {
                s.push_str(&format!("  {code}: {msg}\n"));
            }
        }
        s
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Skip,
}

impl From<Result<bool>> for Outcome {
    fn from(r: Result<bool>) -> Self {
        match r {
            Ok(true) => Outcome::Pass,
            Ok(false) => Outcome::Skip,
            Err(e) => Outcome::Fail(e.to_string()),
        }
    }
}

struct Checker<'a> {
    code: &'a str,
    rows: &'a mut BTreeMap<String, CheckRow>,
}

impl Checker<'_> {
    fn record(&mut self, check: &str, o: Outcome) {
        let row = self.rows.get_mut(check).expect("known check");
        match o {
            Outcome::Pass => row.pass += 1,
            Outcome::Skip => row.skip += 1,
            Outcome::Fail(msg) => {
                row.fail += 1;
                row.failures.push((self.code.to_string(), msg));
            }
        }
    }

    fn skip_rest(&mut self, from: usize) {
        for c in &CHECKS[from..] {
            self.record(c, Outcome::Skip);
        }
    }
}

fn consistency(msg: String) -> GemError {
    GemError::Consistency(msg)
}

/// The normalized graph plus its class and `π₁` status, when the identities
/// of the 5-colored theory apply: a crystallization of a manifold with at
/// most one singular color.
struct Scope {
    g: ColoredGraph,
    class: ManifoldClass,
    pi1: Pi1Status,
    beta2: i64,
    euler: i64,
}

fn scope(g: &ColoredGraph, class: &ManifoldClass) -> Result<Option<Scope>> {
    if g.n_colors() != 5 || !class.verdict.is_manifold_complex() || class.singular_colors.len() > 1 || !is_crystallization(g).crystallization {
        return Ok(None);
    }
    let (g, recolored) = normalize_singular_color(g, class)?;
    let class = if recolored.is_some() { check_closed_manifold(&g)? } else { class.clone() };
    let h = homology_with(&g, &class)?;
    let pi1 = h.pi1_manifold.as_ref().map_or(Pi1Status::Unknown, |p| p.status);
    Ok(Some(Scope { g, class, pi1, beta2: h.beta2 as i64, euler: h.euler_hat }))
}

fn check_record(rec: &CatalogueRecord, rows: &mut BTreeMap<String, CheckRow>) {
    let mut c = Checker { code: &rec.code, rows };
    let g = match CanonicalCode::from_hex(CodeFlavor::UpToColorPermutation, &rec.code).and_then(|code| code.decode()) {
        Ok(g) => g,
        Err(e) => {
            c.record("decode", Outcome::Fail(e.to_string()));
            c.skip_rest(1);
            return;
        }
    };
    c.record("decode", Outcome::Pass);
    c.record(
        "canonical",
        match canonical_code(&g, CodeFlavor::UpToColorPermutation) {
            Ok(k) if k.to_hex() == rec.code => Outcome::Pass,
            Ok(k) => Outcome::Fail(format!("canonical form is {k}")),
            Err(e) => Outcome::Fail(e.to_string()),
        },
    );
    let class = match check_closed_manifold(&g) {
        Ok(class) => class,
        Err(e) => {
            c.record("manifold", Outcome::Fail(e.to_string()));
            c.skip_rest(3);
            return;
        }
    };
    let verdict = class.verdict.name();
    c.record(
        "manifold",
        if verdict == rec.manifold.verdict && class.singular_colors == rec.manifold.singular_colors {
            Outcome::Pass
        } else {
            let cert = class
                .certificates
                .iter()
                .find(|x| x.certificate.status != crate::recognition::SphereStatus::CertifiedSphere)
                .map(|x| format!("; residue {} avoiding color {}: {}", x.residue, x.color, x.certificate.detail))
                .unwrap_or_default();
            Outcome::Fail(format!("recorded {}, found {verdict}{cert}", rec.manifold.verdict))
        },
    );
    c.record(
        "digest",
        match CatalogueRecord::from_graph(&g) {
            Ok(mut fresh) => {
                fresh.generator = rec.generator.clone();
                fresh.code = rec.code.clone();
                if &fresh == rec {
                    Outcome::Pass
                } else {
                    Outcome::Fail("recomputed record differs".into())
                }
            }
            Err(e) => Outcome::Fail(e.to_string()),
        },
    );
    let manifold = class.verdict.is_manifold_complex();
    c.record("homology", homology_with(&g, &class).map(|_| true).into());
    c.record(
        "euler-genus",
        if g.n_colors() == 5 && manifold { euler_via_genus(&g).map(|_| true).into() } else { Outcome::Skip },
    );
    let s = match scope(&g, &class) {
        Ok(Some(s)) => s,
        Ok(None) => {
            c.skip_rest(6);
            return;
        }
        Err(e) => {
            for k in &CHECKS[6..] {
                c.record(k, Outcome::Fail(e.to_string()));
            }
            return;
        }
    };
    let simply = s.pi1 == Pi1Status::Trivial;
    let table = ResidueTable::new(&s.g);
    c.record(
        "genus-split",
        if s.pi1 == Pi1Status::Nontrivial {
            Outcome::Skip
        } else {
            CyclicPermutation::all(5)
                .iter()
                .try_for_each(|eps| match genus_split_residuals(&table, s.g.order(), eps).into_iter().find(|x| *x != HalfInt::ZERO) {
                    Some(x) => Err(consistency(format!("residual {x} at {eps}"))),
                    None => Ok(()),
                })
                .map(|_| true)
                .into()
        },
    );
    c.record("half-genus", if s.pi1 == Pi1Status::Nontrivial { Outcome::Skip } else { check_half_genus(&s.g, s.pi1).into() });
    c.record(
        "bounds",
        if s.pi1 == Pi1Status::Nontrivial || !s.class.singular_colors.is_empty() {
            Outcome::Skip
        } else {
            check_bounds(&s.g, s.beta2, s.euler, s.pi1).map(|_| true).into()
        },
    );
    c.record(
        "beta2-genus",
        if simply {
            beta2_via_genus(&s.g, s.pi1)
                .and_then(|b| {
                    if b.value == s.beta2 {
                        Ok(true)
                    } else {
                        Err(consistency(format!("{} from genera, {} from homology", b.value, s.beta2)))
                    }
                })
                .into()
        } else {
            Outcome::Skip
        },
    );
    let witnesses = match find_hypothesis_witnesses(&s.g, s.class.singular_colors.first().copied()) {
        Ok(w) => w,
        Err(e) => {
            c.record("subgenus", Outcome::Fail(e.to_string()));
            c.record("collapse", Outcome::Fail(e.to_string()));
            return;
        }
    };
    if witnesses.is_empty() {
        c.skip_rest(10);
        return;
    }
    let sub = witnesses.iter().try_for_each(|w| {
        for (a, b, x) in [(w.j, w.k, w.i), (w.j, w.k, w.r), (w.i, w.k, w.j), (w.i, w.k, w.r)] {
            let t = subgenus_target(&s.g, a, b, x, w.omega, s.beta2)?;
            if t.subgenus != HalfInt::from_int(t.expected) {
                return Err(consistency(format!("subgenus {} at {} differs from {}", t.subgenus, t.permutation, t.expected)));
            }
            if x != w.r && t.triangle_identity_residual != HalfInt::ZERO {
                return Err(consistency(format!("triangle identity residual {} at {}", t.triangle_identity_residual, t.permutation)));
            }
        }
        Ok(())
    });
    c.record("subgenus", sub.map(|_| true).into());
    let col = witnesses.iter().try_for_each(|w| collapse_2skeleton(&s.g, w.sequence()).map(|_| ()));
    c.record("collapse", col.map(|_| true).into());
}

/// Runs every check on every record.
pub fn verify_corpus(records: &[CatalogueRecord]) -> VerifyReport {
    let mut rows: BTreeMap<String, CheckRow> = CHECKS.iter().map(|c| (c.to_string(), CheckRow::default())).collect();
    for rec in records {
        check_record(rec, &mut rows);
    }
    VerifyReport { records: records.len(), rows }
}
