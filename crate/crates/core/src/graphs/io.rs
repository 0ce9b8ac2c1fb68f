//! CSV exchange formats for graphs.
//!
//! * edge list: header `src,dst,weight`, one row per stored edge; undirected
//!   edges appear once.
//! * node table: header `id,label,category,community`; empty cells mean
//!   "not set". The node table fixes node order when reading back.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::annotation::{Annotations, NodeCategory};
use super::graph::WeightedGraph;
use super::GraphError;
use crate::scalar::Scalar;

#[derive(Debug, Serialize, Deserialize)]
struct EdgeRow {
    src: String,
    dst: String,
    weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRow {
    pub id: String,
    pub label: Option<String>,
    pub category: Option<NodeCategory>,
    pub community: Option<usize>,
}

fn fmt_err(e: csv::Error) -> GraphError {
    GraphError::Format(e.to_string())
}

pub fn write_edge_list<T: Scalar, W: Write>(graph: &WeightedGraph<T>, writer: W) -> Result<(), GraphError> {
    let mut wtr = csv::Writer::from_writer(writer);
    for (s, d, w) in graph.edges() {
        wtr.serialize(EdgeRow {
            src: graph.node_id(s).to_string(),
            dst: graph.node_id(d).to_string(),
            weight: w.to_f64_lossy(),
        })
        .map_err(fmt_err)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes the node table. `communities` maps node id to community.
pub fn write_node_table<T: Scalar, W: Write>(
    graph: &WeightedGraph<T>,
    annotations: Option<&Annotations>,
    communities: Option<&BTreeMap<String, usize>>,
    writer: W,
) -> Result<(), GraphError> {
    let mut wtr = csv::Writer::from_writer(writer);
    for (i, id) in graph.node_ids().enumerate() {
        wtr.serialize(NodeRow {
            id: id.to_string(),
            label: graph.label(i).map(str::to_string),
            category: annotations.and_then(|a| a.get(id)),
            community: communities.and_then(|c| c.get(id).copied()),
        })
        .map_err(fmt_err)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_node_table<R: Read>(reader: R) -> Result<Vec<NodeRow>, GraphError> {
    csv::Reader::from_reader(reader)
        .deserialize()
        .collect::<Result<Vec<NodeRow>, _>>()
        .map_err(fmt_err)
}

/// Reads a graph from its node table and edge list.
pub fn read_graph<R1: Read, R2: Read>(directed: bool, nodes: R1, edges: R2) -> Result<WeightedGraph<f64>, GraphError> {
    let mut graph = WeightedGraph::new(directed);
    for row in read_node_table(nodes)? {
        let i = graph.add_node(&row.id);
        if let Some(label) = row.label {
            graph.set_label(i, label);
        }
    }
    for row in csv::Reader::from_reader(edges).deserialize::<EdgeRow>() {
        let row = row.map_err(fmt_err)?;
        let s = graph.node_index(&row.src).ok_or_else(|| GraphError::UnknownNode(row.src.clone()))?;
        let d = graph.node_index(&row.dst).ok_or_else(|| GraphError::UnknownNode(row.dst.clone()))?;
        graph.add_weight(s, d, row.weight)?;
    }
    Ok(graph)
}
