//! JSON and DOT renderings. All output is deterministic: vertices in
//! lexicographic bit-string order, edges as sorted `[min, max]` pairs.

use serde::Serialize;

use crate::compcut::CutSet;
use crate::graph::Graph;
use crate::steiner::TreeSet;
use crate::topology::DualCube;

#[derive(Serialize)]
struct GraphDoc {
    n: u8,
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

pub fn dual_cube_json(d: &DualCube) -> String {
    let doc = GraphDoc {
        n: d.order(),
        vertices: d.vertices().iter().map(|v| v.to_string()).collect(),
        edges: d
            .edges()
            .iter()
            .map(|(u, v)| [u.to_string(), v.to_string()])
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain struct serializes")
}

pub fn dual_cube_dot(d: &DualCube) -> String {
    let mut out = String::from("graph dualcube {\n");
    for v in d.vertices() {
        out.push_str(&format!("  \"{v}\";\n"));
    }
    for (u, v) in d.edges() {
        out.push_str(&format!("  \"{u}\" -- \"{v}\";\n"));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct TreeSetDoc {
    n: u8,
    terminals: Vec<String>,
    trees: Vec<Vec<[String; 2]>>,
}

pub fn tree_set_json(ts: &TreeSet) -> String {
    let doc = TreeSetDoc {
        n: ts.order(),
        terminals: ts.terminals().iter().map(|t| t.to_string()).collect(),
        trees: ts
            .trees()
            .iter()
            .map(|t| {
                t.iter()
                    .map(|(u, v)| [u.to_string(), v.to_string()])
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain struct serializes")
}

const TREE_COLORS: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#666666",
];

pub fn tree_set_dot(ts: &TreeSet) -> String {
    let mut out = String::from("graph trees {\n");
    for t in ts.terminals() {
        out.push_str(&format!("  \"{t}\" [shape=box];\n"));
    }
    for (i, tree) in ts.trees().iter().enumerate() {
        let color = TREE_COLORS[i % TREE_COLORS.len()];
        for (u, v) in tree {
            out.push_str(&format!(
                "  \"{u}\" -- \"{v}\" [color=\"{color}\", label=\"T{}\"];\n",
                i + 1
            ));
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct CutSetDoc {
    n: u8,
    r: u8,
    removed: Vec<String>,
    census: Vec<usize>,
}

pub fn cut_set_json(cut: &CutSet) -> String {
    let doc = CutSetDoc {
        n: cut.n,
        r: cut.r,
        removed: cut.removed.iter().map(|v| v.to_string()).collect(),
        census: cut.census.clone(),
    };
    serde_json::to_string(&doc).expect("plain struct serializes")
}
