use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::CommunityError;
use crate::scalar::Scalar;

/// Assignment of graph nodes to dense community ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition<T> {
    /// Node ids in graph order.
    pub nodes: Vec<String>,
    /// Community of each node, parallel to `nodes`. Ids run from 0 in order
    /// of first appearance.
    pub assignment: Vec<usize>,
    pub modularity: T,
    pub resolution: T,
    pub seed: u64,
    /// Modularity after each aggregation level, starting with singletons.
    pub levels: Vec<T>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    node: String,
    community: usize,
}

/// Relabels ids densely in order of first appearance.
pub(crate) fn dense_labels(raw: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    raw.iter()
        .map(|&c| {
            let next = map.len();
            *map.entry(c).or_insert(next)
        })
        .collect()
}

impl<T: Scalar> Partition<T> {
    pub fn community_count(&self) -> usize {
        self.assignment.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn community_of(&self, node_id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == node_id).map(|i| self.assignment[i])
    }

    /// Member indices per community.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.community_count()];
        for (i, &c) in self.assignment.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members().iter().map(Vec::len).collect()
    }

    pub fn to_map(&self) -> BTreeMap<String, usize> {
        self.nodes.iter().cloned().zip(self.assignment.iter().copied()).collect()
    }

    /// Writes `node,community` rows in node order.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), CommunityError> {
        let mut wtr = csv::Writer::from_writer(writer);
        for (node, &community) in self.nodes.iter().zip(&self.assignment) {
            wtr.serialize(Row { node: node.clone(), community })
                .map_err(|e| CommunityError::Format(e.to_string()))?;
        }
        wtr.flush()?;
        Ok(())
    }

    /// Reads an assignment written by [`Partition::write_csv`]. Scores are
    /// not stored in the CSV and come back as zero.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self, CommunityError> {
        let mut nodes = Vec::new();
        let mut assignment = Vec::new();
        for row in csv::Reader::from_reader(reader).deserialize::<Row>() {
            let row = row.map_err(|e| CommunityError::Format(e.to_string()))?;
            nodes.push(row.node);
            assignment.push(row.community);
        }
        Ok(Partition {
            nodes,
            assignment,
            modularity: T::zero(),
            resolution: T::one(),
            seed: 0,
            levels: Vec::new(),
        })
    }
}
