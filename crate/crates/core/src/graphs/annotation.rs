use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::GraphError;

/// Topical category of a hashtag node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeCategory {
    Political,
    Football,
    Location,
    Other,
}

impl NodeCategory {
    pub const ALL: [NodeCategory; 4] = [
        NodeCategory::Political,
        NodeCategory::Football,
        NodeCategory::Location,
        NodeCategory::Other,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NodeCategory::Political => "political",
            NodeCategory::Football => "football",
            NodeCategory::Location => "location",
            NodeCategory::Other => "other",
        }
    }
}

impl fmt::Display for NodeCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeAnnotation {
    pub node_id: String,
    pub category: NodeCategory,
}

/// One category per node; unannotated nodes read as `Other`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Annotations {
    categories: BTreeMap<String, NodeCategory>,
}

impl Annotations {
    pub fn new(items: impl IntoIterator<Item = NodeAnnotation>) -> Result<Self, GraphError> {
        let mut categories = BTreeMap::new();
        for item in items {
            if let Some(prev) = categories.insert(item.node_id.clone(), item.category) {
                if prev != item.category {
                    return Err(GraphError::Format(format!(
                        "node {:?} annotated as both {prev} and {}",
                        item.node_id, item.category
                    )));
                }
            }
        }
        Ok(Annotations { categories })
    }

    pub fn category(&self, node_id: &str) -> NodeCategory {
        self.categories.get(node_id).copied().unwrap_or(NodeCategory::Other)
    }

    pub fn get(&self, node_id: &str) -> Option<NodeCategory> {
        self.categories.get(node_id).copied()
    }

    pub fn is(&self, node_id: &str, category: NodeCategory) -> bool {
        self.get(node_id) == Some(category)
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeAnnotation> + '_ {
        self.categories.iter().map(|(id, &category)| NodeAnnotation {
            node_id: id.clone(),
            category,
        })
    }

    /// Reads a `node_id,category` CSV with a header row.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self, GraphError> {
        let mut rdr = csv::Reader::from_reader(reader);
        let items = rdr
            .deserialize::<NodeAnnotation>()
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| GraphError::Format(e.to_string()))?;
        Self::new(items)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GraphError> {
        Self::read_csv(std::fs::File::open(path)?)
    }

    pub fn write_csv<W: std::io::Write>(&self, writer: W) -> Result<(), GraphError> {
        let mut wtr = csv::Writer::from_writer(writer);
        for item in self.iter() {
            wtr.serialize(item).map_err(|e| GraphError::Format(e.to_string()))?;
        }
        wtr.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_and_default() {
        let input = "node_id,category\nbrexit,political\nmufc,football\nlondon,location\n";
        let a = Annotations::read_csv(input.as_bytes()).unwrap();
        assert_eq!(a.category("mufc"), NodeCategory::Football);
        assert_eq!(a.category("unknown"), NodeCategory::Other);
        let mut out = Vec::new();
        a.write_csv(&mut out).unwrap();
        assert_eq!(Annotations::read_csv(out.as_slice()).unwrap(), a);
    }

    #[test]
    fn conflicting_and_unknown_categories_rejected() {
        assert!(Annotations::read_csv("node_id,category\na,political\na,football\n".as_bytes()).is_err());
        assert!(Annotations::read_csv("node_id,category\na,sport\n".as_bytes()).is_err());
    }
}
