//! Deterministic text renderings of a [`ComponentGraph`].
//!
//! Both emitters are pure functions of the graph value: nodes and
//! crossings appear in stored order, and nothing volatile (timestamps,
//! addresses, hash iteration order) leaks into the output, so emitting
//! the same graph twice yields byte-identical text.

use crate::ComponentGraph;

/// Renders the graph in DOT with one record-shaped node per component.
///
/// Each record reads `id | length | reduced degree`, with `-` standing
/// in for a value that is not tabulated. Crossings are symmetric, so the
/// output is an undirected `graph` joined by `--` edges.
pub fn emit_dot(graph: &ComponentGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph {} {{\n", graph_name(graph)));
    out.push_str("  graph [rankdir=LR];\n");
    out.push_str("  node [shape=record];\n");
    for node in &graph.nodes {
        let length = node.length.map_or_else(|| "-".to_string(), |v| v.to_string());
        let degree = node
            .reduced_degree
            .map_or_else(|| "-".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "  \"{}\" [label=\"{} | {length} | {degree}\"];\n",
            quote(&node.id),
            record(&node.id),
        ));
    }
    for crossing in &graph.crossings {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\";\n",
            quote(&crossing.pair[0]),
            quote(&crossing.pair[1]),
        ));
    }
    out.push_str("}\n");
    out
}

/// Renders the graph as pretty-printed JSON.
///
/// Field order follows the struct definitions, so the bytes are as
/// stable as [`emit_dot`]'s.
pub fn emit_json(graph: &ComponentGraph) -> String {
    let mut out =
        serde_json::to_string_pretty(graph).expect("component graphs always serialize");
    out.push('\n');
    out
}

fn graph_name(graph: &ComponentGraph) -> String {
    let raw = format!(
        "{}_level{}_p{}",
        graph.family, graph.context.level, graph.context.p
    );
    raw.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

/// Escapes a string for use inside a double-quoted DOT identifier.
fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Escapes a string for a record-shaped label, where braces, pipes and
/// angle brackets are structural characters.
fn record(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if matches!(c, '\\' | '"' | '{' | '}' | '|' | '<' | '>') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}
