//! Louvain communities, Ward-linkage themes and user-community engagement
//! profiles.

mod engagement;
mod louvain;
mod nmi;
mod partition;
mod themes;

pub use engagement::{engagement_profile, EngagementProfile, Sector, DEFAULT_MIN_COMMUNITY_SIZE};
pub use louvain::{louvain, modularity, modularity_by_id, LouvainConfig};
pub use nmi::normalized_mutual_information;
pub use partition::Partition;
pub use themes::{
    community_composition, ward_cluster, CompositionVector, Merge, Theme, ThemeAssignment, DEFAULT_THEME_COUNT,
};

#[derive(Debug, thiserror::Error)]
pub enum CommunityError {
    #[error("assignment has {got} entries for {expected} nodes")]
    AssignmentLength { expected: usize, got: usize },
    #[error("node {0:?} has no community")]
    MissingNode(String),
    #[error("need at least {needed} composition vectors, got {got}")]
    TooFewVectors { needed: usize, got: usize },
    #[error("format error: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
