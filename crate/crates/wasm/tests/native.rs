use gemkit_wasm::{analyze_json, census_json, cp2_series_json};
use serde_json::Value;

#[test]
fn analyzes_cp2() {
    let text = include_str!("../../core/fixtures/cp2.gem");
    let v: Value = serde_json::from_str(&analyze_json(text).unwrap()).unwrap();
    assert_eq!(v["homology"]["beta2"], 1);
    assert_eq!(v["genus"]["regular_genus"], 2);
    assert!(v["handles"]["witnesses"].as_array().is_some_and(|w| !w.is_empty()));
}

#[test]
fn bad_text_is_an_error() {
    assert!(analyze_json("gem 5 3\n").is_err());
}

#[test]
fn series_grows_linearly() {
    let v: Value = serde_json::from_str(&cp2_series_json(3).unwrap()).unwrap();
    for (i, row) in v.as_array().unwrap().iter().enumerate() {
        let k = i as u64 + 1;
        assert_eq!(row["beta2"], k);
        assert_eq!(row["regular_genus"], 2 * k);
        assert_eq!(row["handles"], serde_json::json!([1, 0, k, 0, 1]));
    }
    assert!(cp2_series_json(0).is_err());
}

#[test]
fn census_of_three_colors() {
    let v: Value = serde_json::from_str(&census_json(3, 6).unwrap()).unwrap();
    let total: u64 = v.as_array().unwrap().iter().map(|r| r["graphs"].as_u64().unwrap()).sum();
    // every connected 3-colored graph is a closed surface
    let surfaces: u64 = v.as_array().unwrap().iter().map(|r| r["manifold_complexes"].as_u64().unwrap()).sum();
    assert_eq!(total, surfaces);
    assert!(census_json(6, 4).is_err());
}
