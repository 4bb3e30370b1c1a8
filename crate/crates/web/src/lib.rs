//! wasm-bindgen entry points for the static demo page in `www/`.

use hamlift::family::{self, BlockCase};
use hamlift::search::{hamilton_search, HamiltonCertificate, SearchOptions};
use hamlift::SimpleGraph;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct View {
    order: usize,
    graph_hash: String,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    cycle: Option<Vec<usize>>,
    status: String,
}

impl View {
    fn new(g: &SimpleGraph, cert: Option<&HamiltonCertificate>, status: impl Into<String>) -> Self {
        View {
            order: g.order(),
            graph_hash: g.hash(),
            labels: (0..g.order()).map(|v| g.label(v)).collect(),
            edges: g.edges(),
            cycle: cert.map(|c| c.cycle.clone()),
            status: status.into(),
        }
    }

    fn json(&self) -> Result<String, JsValue> {
        serde_json::to_string(self).map_err(err)
    }
}

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Ten-block graph with prime block size `r`; `case` is "A" or "B".
#[wasm_bindgen]
pub fn block_walk(r: usize, case: &str) -> Result<String, JsValue> {
    let case: BlockCase = case.parse().map_err(err)?;
    let bg = family::build_block_graph(r, case).map_err(err)?;
    let w = family::family_walk(&bg).map_err(err)?;
    View::new(&bg.graph, Some(&w.certificate), format!("{} walk pieces", w.pieces.len())).json()
}

/// Sign walk on `10p` vertices with the default block order.
#[wasm_bindgen]
pub fn sign_walk(p: u64, t: u64, l: u64) -> Result<String, JsValue> {
    let (g, cert) = family::z10_sign_walk(p, t, l, &family::DEFAULT_BLOCK_ORDER).map_err(err)?;
    View::new(&g, Some(&cert), "sign walk").json()
}

/// Backtracking search on a pasted "u v" edge list.
#[wasm_bindgen]
pub fn search_edges(text: &str, budget: u64) -> Result<String, JsValue> {
    let g = SimpleGraph::parse_edge_list(text, None).map_err(err)?;
    let outcome = hamilton_search(&g, &SearchOptions::with_budget(budget));
    View::new(&g, outcome.certificate(), outcome.kind()).json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn views_carry_cycles() {
        let v: serde_json::Value = serde_json::from_str(&block_walk(7, "B").unwrap()).unwrap();
        assert_eq!(v["cycle"].as_array().unwrap().len(), 70);
        let v: serde_json::Value = serde_json::from_str(&search_edges("0 1\n1 2\n2 0\n", 100).unwrap()).unwrap();
        assert_eq!(v["status"], "found");
        let v: serde_json::Value = serde_json::from_str(&sign_walk(41, 36, 1).unwrap()).unwrap();
        assert_eq!(v["order"], 410);
    }
}
