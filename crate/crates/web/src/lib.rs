//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes and returns plain strings: JSON on success and
//! `{"error": "..."}` on failure, so the same functions run natively in tests.

use hajoslab::complex::{betti_numbers, neighborhood_complex, Field};
use hajoslab::constructions::{build_gn, build_gn_prime, hajos_merge, vertex_identify, MergeSpec};
use hajoslab::experiment::{first_betti, summarize, ExperimentRecord};
use hajoslab::generators::{cra, CraConfig};
use hajoslab::io::{from_graph6, to_graph6, GraphJson};
use hajoslab::{Graph, Vertex, VertexPair};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

type Res<T> = std::result::Result<T, String>;

fn wrap(r: Res<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn field(name: &str) -> Res<Field> {
    name.parse().map_err(|e: hajoslab::Error| e.to_string())
}

/// Accepts graph6 or the JSON graph format.
fn parse_graph(text: &str) -> Res<Graph> {
    let t = text.trim();
    let g = if t.starts_with('{') { hajoslab::io::from_json(t) } else { from_graph6(t) };
    g.map_err(|e| e.to_string())
}

fn describe(g: &Graph, f: Field) -> Res<Value> {
    let g = g.compacted();
    let b = betti_numbers(&neighborhood_complex(&g), 2, f).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph6": to_graph6(&g),
        "graph": GraphJson::from_graph(&g),
        "order": g.order(),
        "size": g.size(),
        "betti": b.betti,
    }))
}

/// `G_n` or `G_n'` with its reduced Betti numbers.
#[wasm_bindgen]
pub fn gn_betti(n: usize, prime: bool, field_name: &str) -> String {
    wrap((|| {
        if !(1..=8).contains(&n) {
            return Err("n must be between 1 and 8".to_owned());
        }
        let g = if prime { build_gn_prime(n) } else { build_gn(n) }.map_err(|e| e.to_string())?;
        describe(&g, field(field_name)?)
    })())
}

/// Reduced Betti numbers of a graph given as graph6 or JSON.
#[wasm_bindgen]
pub fn graph_betti(graph: &str, field_name: &str) -> String {
    wrap((|| describe(&parse_graph(graph)?, field(field_name)?))())
}

/// `vid(G, [a, b])` with the Betti numbers before and after.
#[wasm_bindgen]
pub fn identify(graph: &str, a: u32, b: u32, field_name: &str) -> String {
    wrap((|| {
        let g = parse_graph(graph)?;
        let f = field(field_name)?;
        let pair = VertexPair::new(a, b).map_err(|e| e.to_string())?;
        let out = vertex_identify(&g, &[pair]).map_err(|e| e.to_string())?;
        let distance = g.distance(Vertex(a), Vertex(b)).map_err(|e| e.to_string())?;
        Ok(json!({
            "before": describe(&g, f)?,
            "after": describe(&out, f)?,
            "distance": distance.to_string(),
        }))
    })())
}

/// Hajós merge of two graphs along `(x1, y1)` and `(x2, y2)`.
#[wasm_bindgen]
pub fn merge(first: &str, x1: u32, y1: u32, second: &str, x2: u32, y2: u32, field_name: &str) -> String {
    wrap((|| {
        let (g1, g2) = (parse_graph(first)?, parse_graph(second)?);
        let e1 = VertexPair::new(x1, y1).map_err(|e| e.to_string())?;
        let e2 = VertexPair::new(x2, y2).map_err(|e| e.to_string())?;
        let out = hajos_merge(&g1, &g2, &MergeSpec::new(e1, e2)).map_err(|e| e.to_string())?;
        describe(&out, field(field_name)?)
    })())
}

/// Runs the constructible random algorithm and returns the summary with its
/// histogram of first Betti numbers.
#[wasm_bindgen]
pub fn cra_histogram(k: usize, p: f64, t: usize, seed: u64) -> String {
    wrap((|| {
        if t > 2000 {
            return Err("t is capped at 2000 in the browser".to_owned());
        }
        let config = CraConfig::new(k, p, t, seed);
        let batch = cra(&config).map_err(|e| e.to_string())?;
        let mut records = Vec::new();
        let mut skipped = 0;
        for (i, g) in batch.graphs().enumerate() {
            match first_betti(g, Field::Gf2) {
                Ok(betti1) => records.push(ExperimentRecord {
                    sample_index: i,
                    order: g.order(),
                    size: g.size(),
                    betti1,
                    wall_time_ms: 0.0,
                    provenance: String::new(),
                }),
                Err(e) if e.is_capacity() => skipped += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
        let config = serde_json::to_value(&config).map_err(|e| e.to_string())?;
        serde_json::to_value(summarize(config, &records, skipped)).map_err(|e| e.to_string())
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn gn_values() {
        assert_eq!(parse(gn_betti(5, false, "gf2"))["betti"], json!([0, 15, 0]));
        assert_eq!(parse(gn_betti(5, true, "q"))["betti"], json!([0, 0, 9]));
        assert!(parse(gn_betti(0, false, "gf2"))["error"].is_string());
    }

    #[test]
    fn identify_on_six_cycle() {
        let c6 = to_graph6(&Graph::cycle(6));
        let v = parse(identify(&c6, 0, 3, "gf2"));
        assert_eq!(v["before"]["betti"], json!([1, 2, 0]));
        assert_eq!(v["distance"], "3");
        assert!(parse(identify(&c6, 0, 1, "gf2"))["error"].as_str().unwrap().contains("adjacent"));
    }

    #[test]
    fn merge_triangles() {
        let k3 = r#"{"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}"#;
        let v = parse(merge(k3, 0, 1, k3, 0, 1, "gf2"));
        assert_eq!(v["order"], 5);
        assert_eq!(v["betti"], json!([0, 1, 0]));
    }

    #[test]
    fn histogram() {
        let v = parse(cra_histogram(3, 0.3, 30, 2));
        assert_eq!(v["count"], 30);
        let total: u64 = v["histogram"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).sum();
        assert_eq!(total, 30);
    }
}
