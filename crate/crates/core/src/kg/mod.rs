//! Local knowledge graph: loading, neighbor queries, property-based discovery,
//! cross-knowledge-base mapping, entity types and semantic distance.

mod discovery;
mod graph;
mod iri;
mod ldsd;
mod mapping;
mod store;

pub use discovery::{attach_ldsd, discover, DiscoveryRecord, PropertySpec};
pub use graph::{load_graph, Direction, Graph, LoadReport, Triple};
pub use iri::Iri;
pub use ldsd::{compute_ldsd, link_counts, LdsdCache, LdsdValue, LinkCounts};
pub use mapping::{fetch_types, map_entities, MappingTable};
pub use store::{format_discoveries, format_types, parse_discoveries, read_discoveries};

use crate::tsv::TsvError;

#[derive(Debug, thiserror::Error)]
pub enum KgError {
    #[error("invalid IRI {0:?}")]
    InvalidIri(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("distance of {0:?} to itself is undefined")]
    SameResource(Iri),
    #[error("{0:?} cannot be discovered from itself")]
    SelfDiscovery(Iri),
    #[error("LDSD value {0} outside [0, 1]")]
    LdsdOutOfRange(f64),
}

impl KgError {
    pub(crate) fn from_tsv(e: TsvError) -> Self {
        match e {
            TsvError::Io { path, source } => KgError::Io { path, source },
            TsvError::Columns { line, .. } => KgError::Parse {
                line,
                msg: e.to_string(),
            },
        }
    }
}
