use std::fmt::Write;

use ladderflow::solver::Flow;
use ladderflow::SignedGraph;

/// Undirected DOT graph. Negative edges are dashed. With a flow, each edge
/// carries its value and arrowheads show the reference orientation:
/// positive edges point from the lower vertex to the higher one, negative
/// edges point away from both ends.
pub fn to_dot(
    g: &SignedGraph,
    flow: Option<&Flow>,
    names: Option<&dyn Fn(usize) -> String>,
) -> String {
    let mut out = String::from("graph signed {\n  node [shape=circle];\n");
    for v in 0..g.vertex_count() {
        let label = names.map_or_else(|| v.to_string(), |f| f(v));
        writeln!(out, "  {v} [label=\"{label}\"];").unwrap();
    }
    for (e, edge) in g.edges().iter().enumerate() {
        let (a, b) = (edge.a.min(edge.b), edge.a.max(edge.b));
        let mut attrs = vec![format!("id=\"e{e}\"")];
        if edge.sign.is_neg() {
            attrs.push("style=dashed".into());
        }
        if let Some(f) = flow {
            attrs.push(format!("label=\"{}\"", f.values[e]));
            if edge.sign.is_neg() {
                attrs.push("dir=both, arrowhead=inv, arrowtail=inv".into());
            } else {
                attrs.push("dir=forward".into());
            }
        }
        writeln!(out, "  {a} -- {b} [{}];", attrs.join(", ")).unwrap();
    }
    out.push_str("}\n");
    out
}
