//! Pipeline configuration file.
//!
//! A TOML document with these sections (paths are relative to the file):
//!
//! ```toml
//! [paths]
//! graph = "graph.nt"          # triple file
//! reviews = "reviews.jsonl"   # review corpus
//! gazetteer = "gazetteer.tsv" # optional; needed for reviews with text only
//! ratings = "ratings.tsv"     # optional; needed by evaluate and recommend --user
//! mapping = "mapping.tsv"     # optional; maps annotated entities to the graph's IRIs
//! output = "out"              # where stores and reports are written
//!
//! [domain]
//! name = "movie"
//! type_property = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
//! type_namespace = "http://dbpedia.org/ontology/"  # optional
//! require_type = false        # drop mentions whose entity has no kept type
//!
//! [[discovery]]
//! property = "http://dbpedia.org/ontology/director"
//! direction = "inverse"       # or "direct"
//!
//! [[grid]]                    # optional; defaults to rows C1..C8
//! name = "C8"
//! ranking = "R3"
//! discovered = true
//! threshold = 0.05
//! alpha = 0.5                 # optional
//! eta = 0.25                  # R3 only
//! kappa = 0.75                # R3 only
//!
//! [evaluation]
//! k = 5
//! n = 10
//! seed = 42
//! max_scale = 5.0
//! positive_threshold = 3.0
//! baselines = ["most_popular", "random", "item_knn"]
//! knn_neighbors = 80
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::PipelineError;
use crate::eval::{Scale, DEFAULT_KNN_NEIGHBORS};
use crate::kg::{Direction, Iri, PropertySpec};
use crate::recommender::{Ranking, RecConfig, DEFAULT_ALPHA};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    paths: RawPaths,
    #[serde(default)]
    domain: RawDomain,
    #[serde(default)]
    discovery: Vec<RawProperty>,
    #[serde(default)]
    grid: Vec<RawRow>,
    #[serde(default)]
    evaluation: RawEvaluation,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPaths {
    graph: Option<PathBuf>,
    reviews: Option<PathBuf>,
    gazetteer: Option<PathBuf>,
    ratings: Option<PathBuf>,
    mapping: Option<PathBuf>,
    output: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    #[serde(default = "default_domain")]
    name: String,
    #[serde(default = "default_type_property")]
    type_property: String,
    type_namespace: Option<String>,
    #[serde(default)]
    require_type: bool,
}

impl Default for RawDomain {
    fn default() -> Self {
        RawDomain {
            name: default_domain(),
            type_property: default_type_property(),
            type_namespace: None,
            require_type: false,
        }
    }
}

fn default_domain() -> String {
    "default".into()
}

fn default_type_property() -> String {
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProperty {
    property: String,
    direction: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    name: String,
    ranking: String,
    discovered: bool,
    threshold: f64,
    alpha: Option<f64>,
    eta: Option<f64>,
    kappa: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvaluation {
    #[serde(default = "default_k")]
    k: usize,
    #[serde(default = "default_n")]
    n: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_max_scale")]
    max_scale: f64,
    #[serde(default = "default_positive")]
    positive_threshold: f64,
    #[serde(default = "default_baselines")]
    baselines: Vec<String>,
    #[serde(default = "default_knn")]
    knn_neighbors: usize,
}

impl Default for RawEvaluation {
    fn default() -> Self {
        RawEvaluation {
            k: default_k(),
            n: default_n(),
            seed: 0,
            max_scale: default_max_scale(),
            positive_threshold: default_positive(),
            baselines: default_baselines(),
            knn_neighbors: default_knn(),
        }
    }
}

fn default_k() -> usize {
    5
}
fn default_n() -> usize {
    10
}
fn default_max_scale() -> f64 {
    5.0
}
fn default_positive() -> f64 {
    3.0
}
fn default_baselines() -> Vec<String> {
    vec!["most_popular".into(), "random".into(), "item_knn".into()]
}
fn default_knn() -> usize {
    DEFAULT_KNN_NEIGHBORS
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    MostPopular,
    Random,
    ItemKnn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Paths {
    pub graph: Option<PathBuf>,
    pub reviews: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
    pub ratings: Option<PathBuf>,
    pub mapping: Option<PathBuf>,
    pub output: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationSettings {
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub scale: Scale,
    pub baselines: Vec<Baseline>,
    pub knn_neighbors: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub paths: Paths,
    pub domain: String,
    pub type_property: Iri,
    pub type_namespace: Option<String>,
    pub require_type: bool,
    pub discovery: Vec<PropertySpec>,
    pub grid: Vec<RecConfig>,
    pub evaluation: EvaluationSettings,
}

impl PipelineConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, PipelineError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            PipelineError::Usage(format!("cannot read config {}: {e}", path.display()))
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    /// Parses config text, resolving relative paths against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, PipelineError> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        let resolve = |p: Option<PathBuf>| p.map(|p| base.join(p));
        let paths = Paths {
            graph: resolve(raw.paths.graph),
            reviews: resolve(raw.paths.reviews),
            gazetteer: resolve(raw.paths.gazetteer),
            ratings: resolve(raw.paths.ratings),
            mapping: resolve(raw.paths.mapping),
            output: base.join(raw.paths.output.unwrap_or_else(|| PathBuf::from("out"))),
        };

        let iri = |s: &str| Iri::new(s).map_err(|e| PipelineError::Config(e.to_string()));
        let discovery = raw
            .discovery
            .iter()
            .map(|p| {
                let direction = match p.direction.to_ascii_lowercase().as_str() {
                    "direct" => Direction::Direct,
                    "inverse" => Direction::Inverse,
                    other => {
                        return Err(PipelineError::Config(format!(
                            "discovery direction must be \"direct\" or \"inverse\", got {other:?}"
                        )))
                    }
                };
                Ok(PropertySpec {
                    property: iri(&p.property)?,
                    direction,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;

        let grid = if raw.grid.is_empty() {
            RecConfig::standard_grid()
        } else {
            raw.grid
                .into_iter()
                .map(|r| {
                    let ranking: Ranking =
                        r.ranking
                            .parse()
                            .map_err(|e: crate::recommender::RecError| {
                                PipelineError::Config(e.to_string())
                            })?;
                    Ok(RecConfig {
                        name: r.name,
                        ranking,
                        use_discovered: r.discovered,
                        occurrence_threshold: r.threshold,
                        alpha: r.alpha.unwrap_or(DEFAULT_ALPHA),
                        eta: r.eta,
                        kappa: r.kappa,
                    })
                })
                .collect::<Result<Vec<_>, PipelineError>>()?
        };
        for (i, row) in grid.iter().enumerate() {
            row.validate()
                .map_err(|e| PipelineError::Config(e.to_string()))?;
            if grid[..i].iter().any(|r| r.name == row.name) {
                return Err(PipelineError::Config(format!(
                    "duplicate grid row {:?}",
                    row.name
                )));
            }
        }

        let ev = raw.evaluation;
        let baselines = ev
            .baselines
            .iter()
            .map(|b| match b.as_str() {
                "most_popular" => Ok(Baseline::MostPopular),
                "random" => Ok(Baseline::Random),
                "item_knn" => Ok(Baseline::ItemKnn),
                other => Err(PipelineError::Config(format!("unknown baseline {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if ev.k < 2 || ev.n == 0 {
            return Err(PipelineError::Config(
                "evaluation needs k >= 2 and n >= 1".into(),
            ));
        }
        if ev.positive_threshold > ev.max_scale {
            return Err(PipelineError::Config(
                "positive_threshold exceeds max_scale".into(),
            ));
        }

        Ok(PipelineConfig {
            paths,
            domain: raw.domain.name,
            type_property: iri(&raw.domain.type_property)?,
            type_namespace: raw.domain.type_namespace,
            require_type: raw.domain.require_type,
            discovery,
            grid,
            evaluation: EvaluationSettings {
                k: ev.k,
                n: ev.n,
                seed: ev.seed,
                scale: Scale {
                    max_scale: ev.max_scale,
                    positive_threshold: ev.positive_threshold,
                },
                baselines,
                knn_neighbors: ev.knn_neighbors,
            },
        })
    }

    pub fn row(&self, name: &str) -> Option<&RecConfig> {
        self.grid.iter().find(|r| r.name == name)
    }
}
