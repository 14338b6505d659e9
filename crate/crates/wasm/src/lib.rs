//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes plain values and returns a JSON string; the `*_json`
//! functions hold the logic so it can be tested natively.

use gemkit::catalogue::enumerate::connected_graphs;
use gemkit::genus::genus_all;
use gemkit::handles::{analyze_handles, WitnessKind};
use gemkit::invariants::homology;
use gemkit::recognition::check_closed_manifold;
use gemkit::report::Report;
use gemkit::{fixtures, ColoredGraph, GemError, Result};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest order the page may enumerate; order 8 with 5 colors already
/// takes seconds in a browser.
pub const MAX_ENUMERATION_ORDER: usize = 8;
pub const MAX_SUM: usize = 6;

fn to_js(r: Result<String>) -> std::result::Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&json!({ "error": e.kind(), "message": e.to_string() }).to_string()))
}

/// Every applicable section of the report for a `.gem` text.
pub fn analyze_json(gem_text: &str) -> Result<String> {
    let g = ColoredGraph::parse_gem(gem_text)?;
    Ok(Report::full(&g, None)?.to_json())
}

/// Regular genus, homology and handle profile of `#k CP²` for `k = 1..=max_k`.
pub fn cp2_series_json(max_k: usize) -> Result<String> {
    if max_k == 0 || max_k > MAX_SUM {
        return Err(GemError::InvalidGraph(format!("k must be between 1 and {MAX_SUM}")));
    }
    let mut rows = Vec::new();
    for k in 1..=max_k {
        let g = fixtures::cp2_sum(k);
        let h = homology(&g)?;
        let hd = analyze_handles(&g)?;
        let profile = hd.witnesses.iter().find(|w| w.witness.kind == WitnessKind::Partition).map(|w| w.profile.handles);
        rows.push(json!({
            "k": k,
            "order": g.order(),
            "regular_genus": genus_all(&g)?.regular_genus,
            "beta2": h.beta2,
            "euler": h.euler_hat,
            "handles": profile,
        }));
    }
    Ok(serde_json::Value::Array(rows).to_string())
}

/// Counts connected `n_colors`-colored graphs of each even order up to
/// `max_order`, with how many of them are manifold complexes.
pub fn census_json(n_colors: usize, max_order: usize) -> Result<String> {
    if !(2..=5).contains(&n_colors) || max_order > MAX_ENUMERATION_ORDER {
        return Err(GemError::InvalidGraph(format!("need 2..=5 colors and order at most {MAX_ENUMERATION_ORDER}")));
    }
    let mut rows = Vec::new();
    for order in (2..=max_order).step_by(2) {
        let codes = connected_graphs(n_colors, order);
        let mut manifolds = 0;
        for c in &codes {
            if check_closed_manifold(&c.decode()?)?.verdict.is_manifold_complex() {
                manifolds += 1;
            }
        }
        rows.push(json!({ "order": order, "graphs": codes.len(), "manifold_complexes": manifolds }));
    }
    Ok(serde_json::Value::Array(rows).to_string())
}

#[wasm_bindgen]
pub fn analyze(gem_text: &str) -> std::result::Result<String, JsValue> {
    to_js(analyze_json(gem_text))
}

#[wasm_bindgen]
pub fn cp2_series(max_k: usize) -> std::result::Result<String, JsValue> {
    to_js(cp2_series_json(max_k))
}

#[wasm_bindgen]
pub fn census(n_colors: usize, max_order: usize) -> std::result::Result<String, JsValue> {
    to_js(census_json(n_colors, max_order))
}
