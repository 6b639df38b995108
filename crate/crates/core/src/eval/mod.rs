//! Offline top-N evaluation: rating binarization, fold splitting, metrics,
//! baselines and significance testing.

mod baselines;
mod data;
mod folds;
pub mod metrics;
mod report;
mod run;
mod welch;

pub use baselines::{ItemKnn, KnnRanker, MostPopular, RandomGuess, DEFAULT_KNN_NEIGHBORS};
pub use data::{binarize, Rating, RatingDataset, Scale};
pub use folds::{derived_rng, split_folds, FoldPlan};
pub use metrics::{ebn, hits, ild_diversity, ndcg_at_n, precision_at_n, recall_at_n};
pub use report::{
    format_report, format_significance, pairwise_significance, Comparison, SIGNIFICANCE_LEVEL,
};
pub use run::{
    evaluate_run, features_from_index, fold_split, FoldData, Metric, MetricSummary, MetricsReport,
    SemanticModel, TopNModel, UserRanker, UserTrain,
};
pub use welch::{welch_t_test, WelchResult, VARIANCE_FLOOR};

use crate::recommender::RecError;
use crate::tsv::TsvError;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Tsv(#[from] TsvError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("t-test needs at least two values per sample, got {0}")]
    SampleTooSmall(usize),
    #[error("t-test sample contains a non-finite value")]
    NonFiniteSample,
    #[error(transparent)]
    Rec(#[from] RecError),
}
