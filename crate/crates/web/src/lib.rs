//! Browser bindings for the peakset engine.
//!
//! Each operation takes a graph source, either a family spec such as
//! `cycle:6` or edge-list text (`n 4` / `e 1 2` lines), and returns JSON.
//! The `*_json` functions are plain Rust so they can be tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use peakset::enumerate::{admissible_sets, count_labelings, enumerate_labelings_par, CountCache};
use peakset::formulas::family_formula;
use peakset::graphio::{parse_graph, parse_vertex_set, render_results, Format, Payload};
use peakset::{Family, Graph, VertexSet};

/// Largest graph the demo will count on.
pub const MAX_COUNT_VERTICES: usize = 24;
/// Largest graph the demo will tabulate every admissible set for.
pub const MAX_TABLE_VERTICES: usize = 12;
/// Most labelings returned by one listing call.
pub const MAX_LISTED: usize = 2000;

struct Source {
    graph: Graph,
    family: Option<Family>,
}

fn load(text: &str) -> Result<Source, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err("enter a family spec or an edge list".into());
    }
    let edge_list = trimmed.starts_with('#') || trimmed.starts_with("n ") || trimmed.contains('\n');
    if edge_list {
        let graph = parse_graph(trimmed).map_err(|e| e.to_string())?;
        return Ok(Source {
            graph,
            family: None,
        });
    }
    let family: Family = trimmed.parse().map_err(|e| format!("{e}"))?;
    let graph = family.build().map_err(|e| e.to_string())?;
    Ok(Source {
        graph,
        family: Some(family),
    })
}

fn peaks(text: &str, g: &Graph) -> Result<VertexSet, String> {
    parse_vertex_set(text, g.n()).map_err(|e| format!("peaks: {}", e.kind))
}

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "edges": g.edges() })
}

fn guard(g: &Graph, bound: usize) -> Result<(), String> {
    if g.n() > bound {
        Err(format!(
            "{} vertices is above this demo's limit of {bound}",
            g.n()
        ))
    } else {
        Ok(())
    }
}

/// Count plus the closed form when the source is a family with one.
pub fn count_json(source: &str, peak_text: &str) -> Result<String, String> {
    let src = load(source)?;
    guard(&src.graph, MAX_COUNT_VERTICES)?;
    let s = peaks(peak_text, &src.graph)?;
    let count = count_labelings(&src.graph, s, None, Some(&CountCache::new()))
        .map_err(|e| e.to_string())?;
    let formula = match &src.family {
        Some(f) => match family_formula(f, s) {
            Ok(ff) => json!({ "rule": ff.rule, "value": ff.value.map(|v| v.to_string()) }),
            Err(e) => json!({ "rule": e.to_string(), "value": null }),
        },
        None => Value::Null,
    };
    Ok(json!({
        "graph": graph_json(&src.graph),
        "peaks": s.to_vec(),
        "count": count.to_string(),
        "formula": formula,
    })
    .to_string())
}

/// Every admissible peak set with its count.
pub fn distribution_json(source: &str) -> Result<String, String> {
    let src = load(source)?;
    guard(&src.graph, MAX_TABLE_VERTICES)?;
    let entries =
        admissible_sets(&src.graph, Some(MAX_TABLE_VERTICES)).map_err(|e| e.to_string())?;
    Ok(render_results(
        &Payload::Distribution {
            graph: &src.graph,
            entries: &entries,
        },
        Format::Json,
    ))
}

/// The first `limit` labelings in search order.
pub fn labelings_json(source: &str, peak_text: &str, limit: usize) -> Result<String, String> {
    let src = load(source)?;
    guard(&src.graph, MAX_COUNT_VERTICES)?;
    let s = peaks(peak_text, &src.graph)?;
    let batch = enumerate_labelings_par(&src.graph, s, None, 1, Some(limit.min(MAX_LISTED)))
        .map_err(|e| e.to_string())?;
    Ok(render_results(
        &Payload::Enumeration {
            graph: &src.graph,
            peaks: s,
            batch: &batch,
        },
        Format::Json,
    ))
}

#[wasm_bindgen]
pub fn count(source: &str, peaks: &str) -> Result<String, JsError> {
    count_json(source, peaks).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn distribution(source: &str) -> Result<String, JsError> {
    distribution_json(source).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn labelings(source: &str, peaks: &str, limit: usize) -> Result<String, JsError> {
    labelings_json(source, peaks, limit).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn count_family_with_formula() {
        let v = parse(&count_json("star:8", "1").unwrap());
        assert_eq!(v["count"], "5040");
        assert_eq!(v["formula"]["value"], "5040");
        let c5 = parse(&count_json("cycle:5", "1,3").unwrap());
        assert_eq!(c5["count"], "16");
    }

    #[test]
    fn count_edge_list() {
        let v = parse(&count_json("n 4\ne 1 2\ne 1 3\ne 2 3\ne 3 4", "1").unwrap());
        assert_eq!(v["count"], "8");
        assert!(v["formula"].is_null());
        assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn distribution_totals() {
        let v = parse(&distribution_json("cycle:5").unwrap());
        assert_eq!(v["total"], "120");
    }

    #[test]
    fn labelings_are_capped() {
        let v = parse(&labelings_json("cycle:5", "1,3", 3).unwrap());
        assert_eq!(v["labelings"].as_array().unwrap().len(), 3);
        assert_eq!(v["truncated"], true);
    }

    #[test]
    fn errors_are_messages() {
        assert!(count_json("", "").is_err());
        assert!(count_json("cycle:5", "9")
            .unwrap_err()
            .contains("out of range"));
        assert!(distribution_json("path:13").unwrap_err().contains("limit"));
    }
}
