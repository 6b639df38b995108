//! Review ingestion, entity annotation and the entity-occurrence index.

mod annotator;
mod gazetteer;
mod index;
mod review;
mod stats;

pub use annotator::{
    annotate_corpus, retain_typed, Annotator, EntityLinkingService, ServiceAnnotator,
};
pub use gazetteer::{annotate_review, Gazetteer, SpanMatch};
pub use index::{build_index, OccurrenceIndex};
pub use review::{ingest_reviews, parse_reviews, Mention, Review};
pub use stats::{corpus_stats, BoxStats, CorpusStats};

#[derive(Debug, thiserror::Error)]
pub enum AnnotationError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate review id {0:?}")]
    DuplicateReview(String),
    #[error("mention refers to unknown review {0:?}")]
    DanglingReview(String),
    #[error("review {0:?} has no pre-annotated entities and no annotator is configured")]
    MissingAnnotator(String),
    #[error("annotation service failed on review {review_id:?}: {msg}")]
    Service { review_id: String, msg: String },
}

impl AnnotationError {
    pub(crate) fn from_tsv(e: crate::tsv::TsvError) -> Self {
        match e {
            crate::tsv::TsvError::Io { path, source } => AnnotationError::Io { path, source },
            crate::tsv::TsvError::Columns { line, .. } => AnnotationError::Parse {
                line,
                msg: e.to_string(),
            },
        }
    }
}
