use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::MapError;
use crate::cluster::ClusterGraph;

/// What the `.clu` partition assigns to each vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CluMode {
    /// Every vertex in its own class.
    #[default]
    Singleton,
    /// Class = 1-based connected component of the link network, largest
    /// component first.
    Component,
}

/// The three Pajek artifacts for one cluster graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PajekFiles {
    pub net: String,
    pub clu: String,
    pub vec: String,
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('"', "\"\""))
}

/// Serialize a cluster graph. Vertices are numbered from 1 in label order;
/// edge weights are link counts; `.vec` holds cluster sizes.
pub fn write_pajek(cg: &ClusterGraph, clu_mode: CluMode) -> Result<PajekFiles, MapError> {
    if cg.is_empty() {
        return Err(MapError::Empty("Pajek output needs at least one cluster".into()));
    }
    let n = cg.len();
    let pos: HashMap<usize, usize> = cg.clusters().iter().enumerate().map(|(i, c)| (c.id, i + 1)).collect();

    let mut net = format!("*Vertices {n}\n");
    for (i, c) in cg.clusters().iter().enumerate() {
        writeln!(net, "{} {}", i + 1, quote(&c.label)).expect("write to string");
    }
    net.push_str("*Edges\n");
    let mut edges: Vec<(usize, usize, usize)> = cg
        .links()
        .iter()
        .map(|(&(a, b), &w)| {
            let (pa, pb) = (pos[&a], pos[&b]);
            (pa.min(pb), pa.max(pb), w)
        })
        .collect();
    edges.sort_unstable();
    for (a, b, w) in edges {
        writeln!(net, "{a} {b} {w}").expect("write to string");
    }

    let mut vec = format!("*Vertices {n}\n");
    for c in cg.clusters() {
        writeln!(vec, "{}", c.size()).expect("write to string");
    }

    let class: Vec<usize> = match clu_mode {
        CluMode::Singleton => (1..=n).collect(),
        CluMode::Component => {
            let mut class = vec![0; n];
            for (k, comp) in cg.components().iter().enumerate() {
                for id in comp {
                    class[pos[id] - 1] = k + 1;
                }
            }
            class
        }
    };
    let mut clu = format!("*Vertices {n}\n");
    for c in class {
        writeln!(clu, "{c}").expect("write to string");
    }
    Ok(PajekFiles { net, clu, vec })
}
