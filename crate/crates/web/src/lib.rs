//! Browser bindings for the demo page. Every export takes and returns JSON
//! strings; the plain functions are the ones under test, the `js_name`
//! wrappers only translate errors.

use krdeg::charge::{charge, semicharge};
use krdeg::crystal::{RectSeq, TensorElement};
use krdeg::deg::{build_graph, descent_set, row_superstandard, BuildOptions};
use krdeg::symfun::{component_character, conjectured_character, graph_character};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Graphs larger than this are refused in the browser.
pub const MAX_VERTICES: u128 = 5_000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn parse_shapes(shapes: &str) -> Result<RectSeq, String> {
    shapes.parse::<RectSeq>().map_err(err)
}

fn element_info(t: &TensorElement) -> Result<Value, String> {
    Ok(json!({
        "element": t,
        "text": t.to_string(),
        "descents": descent_set(t).ok(),
        "charge": charge(t).map_err(err)?,
        "semicharge": semicharge(t),
    }))
}

/// The promotion orbit of an element given as JSON, or of the row
/// superstandard filling when `input` is a shapes string.
pub fn promotion_orbit(input: &str) -> Result<String, String> {
    let input = input.trim();
    let start: TensorElement = if input.starts_with('{') {
        serde_json::from_str(input).map_err(err)?
    } else {
        row_superstandard(&parse_shapes(input)?).map_err(err)?
    };
    let mut orbit = vec![element_info(&start)?];
    let mut cur = start.promote();
    // promotion has order dividing n on standard fillings; cap the walk regardless
    let cap = 4 * start.n() as usize + 4;
    while cur != start && orbit.len() < cap {
        orbit.push(element_info(&cur)?);
        cur = cur.promote();
    }
    Ok(json!({ "n": start.n(), "closed": cur == start, "orbit": orbit }).to_string())
}

/// Graph JSON for shapes with at most [`MAX_VERTICES`] vertices.
pub fn graph(shapes: &str) -> Result<String, String> {
    let shapes = parse_shapes(shapes)?;
    let opts = BuildOptions { limit: Some(MAX_VERTICES), definitional_labels: true };
    Ok(build_graph(&shapes, &opts).map_err(err)?.to_json())
}

/// Schur expansions of every component and of the whole graph, next to the
/// cyclic plethysm predicted for each charge residue.
pub fn characters(shapes: &str) -> Result<String, String> {
    let shapes = parse_shapes(shapes)?;
    let opts = BuildOptions { limit: Some(MAX_VERTICES), definitional_labels: false };
    let g = build_graph(&shapes, &opts).map_err(err)?;
    let d = shapes.d_r();
    let mut comps = Vec::new();
    for (c, members) in g.components().iter().enumerate() {
        let residue = (g.vertices()[members[0]].charge % d as u64) as usize;
        let got = component_character(&g, c).map_err(err)?;
        let predicted = conjectured_character(&shapes, residue).ok();
        comps.push(json!({
            "index": c,
            "size": members.len(),
            "residue": residue,
            "character": got.to_string(),
            "conjectured": predicted.as_ref().map(ToString::to_string),
            "matches": predicted.map(|p| p == got),
        }));
    }
    let total = graph_character(&g).map_err(err)?;
    Ok(json!({
        "shapes": shapes.canonical(),
        "d_r": d,
        "components": comps,
        "total": total.to_string(),
    })
    .to_string())
}

#[wasm_bindgen(js_name = promotionOrbit)]
pub fn promotion_orbit_js(input: &str) -> Result<String, JsError> {
    promotion_orbit(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = buildGraph)]
pub fn graph_js(shapes: &str) -> Result<String, JsError> {
    graph(shapes).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = componentCharacters)]
pub fn characters_js(shapes: &str) -> Result<String, JsError> {
    characters(shapes).map_err(|e| JsError::new(&e))
}
