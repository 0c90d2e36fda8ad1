use std::collections::HashMap;
use std::fmt::Write as _;

use crate::cluster::ClusterGraph;

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// GraphML 1.0 document: one node per cluster (label, size), one
/// undirected edge per link (weight).
pub fn write_graphml(cg: &ClusterGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" \
         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" \
         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns \
         http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n",
    );
    out.push_str("  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n");
    out.push_str("  <key id=\"size\" for=\"node\" attr.name=\"size\" attr.type=\"int\"/>\n");
    out.push_str("  <key id=\"cluster\" for=\"node\" attr.name=\"cluster_id\" attr.type=\"int\"/>\n");
    out.push_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n");
    out.push_str("  <graph id=\"topics\" edgedefault=\"undirected\">\n");
    let mut pos = HashMap::new();
    for (i, c) in cg.clusters().iter().enumerate() {
        pos.insert(c.id, i + 1);
        writeln!(
            out,
            "    <node id=\"n{}\">\n      <data key=\"label\">{}</data>\n      <data key=\"size\">{}</data>\n      <data key=\"cluster\">{}</data>\n    </node>",
            i + 1,
            escape(&c.label),
            c.size(),
            c.id
        )
        .expect("write to string");
    }
    let mut edges: Vec<(usize, usize, usize)> = cg
        .links()
        .iter()
        .map(|(&(a, b), &w)| (pos[&a].min(pos[&b]), pos[&a].max(pos[&b]), w))
        .collect();
    edges.sort_unstable();
    for (k, (a, b, w)) in edges.into_iter().enumerate() {
        writeln!(
            out,
            "    <edge id=\"e{}\" source=\"n{a}\" target=\"n{b}\">\n      <data key=\"weight\">{w}</data>\n    </edge>",
            k + 1
        )
        .expect("write to string");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}
