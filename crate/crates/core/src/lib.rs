//! Item recommendation from entities annotated in user reviews, expanded
//! through a local knowledge graph, with an offline top-N evaluation harness.
//!
//! The crate is organised as a pipeline:
//!
//! * [`kg`] loads the triple graph, discovers related entities and computes
//!   the Linked Data Semantic Distance (LDSD).
//! * [`annotation`] ingests reviews, annotates them and builds the
//!   entity-occurrence index.
//! * [`recommender`] generates and ranks candidate items for a seed item or a
//!   user.
//! * [`eval`] splits ratings into folds and computes precision, recall, nDCG,
//!   novelty and diversity, plus baselines and significance tests.
//! * [`pipeline`] wires the stages to a config file for the command-line tool.

pub mod annotation;
pub mod eval;
pub mod kg;
pub mod pipeline;
pub mod recommender;
pub mod tsv;
