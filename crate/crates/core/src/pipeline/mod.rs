//! Config-driven commands behind the `revkg` binary.
//!
//! Each command reads its inputs from the paths in a [`PipelineConfig`] and
//! writes its outputs atomically into the output directory:
//!
//! * `annotate` writes `occurrences.tsv` and `types.tsv`;
//! * `discover` writes `discovered.tsv`;
//! * `evaluate` writes `report.tsv` and `significance.tsv`.

mod config;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

pub use config::{Baseline, EvaluationSettings, Paths, PipelineConfig};

use crate::annotation::{
    annotate_corpus, build_index, corpus_stats, ingest_reviews, retain_typed, AnnotationError,
    Annotator, CorpusStats, Gazetteer, Mention, OccurrenceIndex, Review,
};
use crate::eval::{
    evaluate_run, features_from_index, format_report, format_significance, pairwise_significance,
    split_folds, EvalError, ItemKnn, MetricsReport, MostPopular, RandomGuess, RatingDataset,
    SemanticModel, TopNModel,
};
use crate::kg::{
    attach_ldsd, discover, fetch_types, format_discoveries, format_types, load_graph,
    read_discoveries, Graph, Iri, KgError, MappingTable,
};
use crate::recommender::{
    format_recommendations, DiscoveryStore, RecError, Recommender, UserProfile,
};
use crate::tsv;

pub const OCCURRENCES_FILE: &str = "occurrences.tsv";
pub const TYPES_FILE: &str = "types.tsv";
pub const DISCOVERED_FILE: &str = "discovered.tsv";
pub const REPORT_FILE: &str = "report.tsv";
pub const SIGNIFICANCE_FILE: &str = "significance.tsv";

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Kg(#[from] KgError),
    #[error(transparent)]
    Annotation(#[from] AnnotationError),
    #[error(transparent)]
    Rec(#[from] RecError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl PipelineError {
    /// 2 for bad input or usage, 1 for failures on our side.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Write { .. } => 1,
            _ => 2,
        }
    }
}

/// What `recommend` starts from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Item(Iri),
    User(String),
}

fn required<'a>(path: &'a Option<PathBuf>, key: &str) -> Result<&'a Path, PipelineError> {
    let p = path
        .as_deref()
        .ok_or_else(|| PipelineError::Usage(format!("config has no paths.{key}")))?;
    if !p.exists() {
        return Err(PipelineError::Usage(format!(
            "paths.{key} does not exist: {}",
            p.display()
        )));
    }
    Ok(p)
}

fn optional<'a>(path: &'a Option<PathBuf>, key: &str) -> Result<Option<&'a Path>, PipelineError> {
    match path {
        Some(_) => required(path, key).map(Some),
        None => Ok(None),
    }
}

fn stage_file(cfg: &PipelineConfig, name: &str, producer: &str) -> Result<PathBuf, PipelineError> {
    let p = cfg.paths.output.join(name);
    if !p.exists() {
        return Err(PipelineError::Usage(format!(
            "{} not found; run `{producer}` first",
            p.display()
        )));
    }
    Ok(p)
}

fn write(path: &Path, contents: &str) -> Result<(), PipelineError> {
    tsv::write_atomic(path, contents).map_err(|source| PipelineError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn load_kg(cfg: &PipelineConfig) -> Result<Graph, PipelineError> {
    let (graph, report) = load_graph(required(&cfg.paths.graph, "graph")?)?;
    log::info!(
        "graph: {} triples, {} literal lines skipped",
        report.triples,
        report.skipped_literals
    );
    Ok(graph)
}

/// Replaces each mention's entity with its mapped counterpart and drops the
/// mentions that have none.
fn apply_mapping(mentions: Vec<Mention>, table: &MappingTable) -> Vec<Mention> {
    let before = mentions.len();
    let out: Vec<Mention> = mentions
        .into_iter()
        .filter_map(|m| {
            table.get(&m.entity).map(|e| Mention {
                entity: e.clone(),
                review_id: m.review_id,
            })
        })
        .collect();
    if out.len() < before {
        log::info!("mapping dropped {} unmapped mentions", before - out.len());
    }
    out
}

pub struct AnnotateOutput {
    pub index: OccurrenceIndex,
    pub stats: CorpusStats,
}

/// Annotates the review corpus, then writes the occurrence index and the
/// types of every indexed entity.
pub fn cmd_annotate(cfg: &PipelineConfig) -> Result<AnnotateOutput, PipelineError> {
    let reviews = ingest_reviews(required(&cfg.paths.reviews, "reviews")?)?;
    let gazetteer = optional(&cfg.paths.gazetteer, "gazetteer")?
        .map(Gazetteer::load)
        .transpose()?;
    let mut mentions = annotate_corpus(&reviews, gazetteer.as_ref().map(|g| g as &dyn Annotator))?;
    if let Some(p) = optional(&cfg.paths.mapping, "mapping")? {
        mentions = apply_mapping(mentions, &MappingTable::load(p)?);
    }

    let graph = load_kg(cfg)?;
    let ns = cfg.type_namespace.as_deref();
    let mut types: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for m in &mentions {
        if !types.contains_key(&m.entity) {
            let t = fetch_types(&graph, &m.entity, &cfg.type_property, ns);
            types.insert(m.entity.clone(), t);
        }
    }
    if cfg.require_type {
        retain_typed(&mut mentions, |e| !types[e].is_empty());
        types.retain(|_, t| !t.is_empty());
    }

    let index = build_index(&reviews, &mentions)?;
    let out = &cfg.paths.output;
    write(&out.join(OCCURRENCES_FILE), &index.to_tsv())?;
    write(&out.join(TYPES_FILE), &format_types(types.iter()))?;
    let stats = corpus_stats(&reviews, &index);
    Ok(AnnotateOutput { index, stats })
}

/// Follows the configured properties from every annotated entity and writes
/// the discovered-entity store. Returns the number of records.
pub fn cmd_discover(cfg: &PipelineConfig, with_ldsd: bool) -> Result<usize, PipelineError> {
    let index = OccurrenceIndex::load(stage_file(cfg, OCCURRENCES_FILE, "annotate")?)?;
    let graph = load_kg(cfg)?;
    let mut records = discover(&graph, index.entities(), &cfg.discovery);
    if with_ldsd {
        attach_ldsd(&graph, &mut records)?;
    } else if let Some(row) = cfg.grid.iter().find(|r| r.needs_source_ldsd()) {
        log::warn!(
            "grid row {} ranks discovered entities by LDSD; rerun with --with-ldsd before evaluating it",
            row.name
        );
    }
    write(
        &cfg.paths.output.join(DISCOVERED_FILE),
        &format_discoveries(&records),
    )?;
    Ok(records.len())
}

struct Stores {
    index: OccurrenceIndex,
    discoveries: DiscoveryStore,
    graph: Graph,
}

fn load_stores(cfg: &PipelineConfig, need_discoveries: bool) -> Result<Stores, PipelineError> {
    let index = OccurrenceIndex::load(stage_file(cfg, OCCURRENCES_FILE, "annotate")?)?;
    let discoveries = if need_discoveries {
        DiscoveryStore::new(read_discoveries(stage_file(
            cfg,
            DISCOVERED_FILE,
            "discover",
        )?)?)
    } else {
        DiscoveryStore::default()
    };
    Ok(Stores {
        index,
        discoveries,
        graph: load_kg(cfg)?,
    })
}

fn load_ratings(cfg: &PipelineConfig) -> Result<RatingDataset, PipelineError> {
    Ok(RatingDataset::load(
        required(&cfg.paths.ratings, "ratings")?,
        cfg.evaluation.scale,
    )?)
}

/// Top-`top` recommendations for an item or a user as TSV.
pub fn cmd_recommend(
    cfg: &PipelineConfig,
    target: &Target,
    row: &str,
    top: usize,
) -> Result<String, PipelineError> {
    let rc = cfg
        .row(row)
        .ok_or_else(|| PipelineError::Usage(format!("unknown config row {row:?}")))?;
    if rc.exceeds_unit_weights() {
        log::warn!("row {} has eta + kappa > 1", rc.name);
    }
    let stores = load_stores(cfg, rc.use_discovered)?;
    let rec = Recommender::new(&stores.index, &stores.discoveries, &stores.graph);
    let list = match target {
        Target::Item(item) => rec.recommend(item, top, rc)?,
        Target::User(user) => {
            let ratings = load_ratings(cfg)?;
            let scale = ratings.scale();
            let mut liked = BTreeSet::new();
            let mut rated = BTreeSet::new();
            for r in ratings.records().iter().filter(|r| &r.user == user) {
                rated.insert(r.item.clone());
                if scale.is_positive(r.rating) {
                    liked.insert(r.item.clone());
                }
            }
            rec.recommend_for_user(&UserProfile::new(user.as_str(), liked, rated)?, top, rc)?
        }
    };
    Ok(format_recommendations(&list))
}

/// Runs every grid row and enabled baseline over the fold plan, then writes
/// the report and the pairwise significance matrix.
pub fn cmd_evaluate(cfg: &PipelineConfig) -> Result<Vec<MetricsReport>, PipelineError> {
    let ev = &cfg.evaluation;
    let ratings = load_ratings(cfg)?;
    let need_discoveries = cfg.grid.iter().any(|r| r.use_discovered);
    let stores = load_stores(cfg, need_discoveries)?;
    for row in &cfg.grid {
        if row.needs_source_ldsd() && !stores.discoveries.has_ldsd() {
            return Err(RecError::InvalidConfig(format!(
                "row {} needs LDSD values in {DISCOVERED_FILE}; rerun `discover --with-ldsd`",
                row.name
            ))
            .into());
        }
        if row.exceeds_unit_weights() {
            log::warn!("row {} has eta + kappa > 1", row.name);
        }
    }

    let plan = split_folds(&ratings, ev.k, ev.seed)?;
    let features = features_from_index(&stores.index);
    let rec = Recommender::new(&stores.index, &stores.discoveries, &stores.graph);

    let mut models: Vec<Box<dyn TopNModel + '_>> = Vec::new();
    for row in &cfg.grid {
        models.push(Box::new(SemanticModel::new(&rec, row.clone())?));
    }
    for b in &ev.baselines {
        models.push(match b {
            Baseline::MostPopular => Box::new(MostPopular::new()),
            Baseline::Random => Box::new(RandomGuess::new(ev.seed)),
            Baseline::ItemKnn => Box::new(ItemKnn::new(ev.knn_neighbors)),
        });
    }

    let mut reports = Vec::with_capacity(models.len());
    for m in &models {
        log::info!("evaluating {}", m.name());
        reports.push(evaluate_run(m.as_ref(), &ratings, &plan, ev.n, &features)?);
    }
    let out = &cfg.paths.output;
    write(&out.join(REPORT_FILE), &format_report(&reports))?;
    write(
        &out.join(SIGNIFICANCE_FILE),
        &format_significance(&pairwise_significance(&reports)),
    )?;
    Ok(reports)
}

/// Corpus statistics from the reviews and the stored occurrence index.
pub fn cmd_stats(cfg: &PipelineConfig) -> Result<CorpusStats, PipelineError> {
    let reviews: Vec<Review> = ingest_reviews(required(&cfg.paths.reviews, "reviews")?)?;
    let index = OccurrenceIndex::load(stage_file(cfg, OCCURRENCES_FILE, "annotate")?)?;
    Ok(corpus_stats(&reviews, &index))
}
