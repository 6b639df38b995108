use std::cmp::Ordering;
use std::fmt;

use crate::kg::{Graph, Iri, LdsdCache};

use super::{Candidate, Origin, Ranking, RecConfig, RecError};

/// What a ranked list was produced for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Seed {
    Item(Iri),
    User(String),
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seed::Item(i) => write!(f, "{i}"),
            Seed::User(u) => f.write_str(u),
        }
    }
}

/// Entities ordered by descending score, ties broken by ascending IRI.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredList {
    pub seed: Seed,
    pub entries: Vec<(Iri, f64)>,
}

impl ScoredList {
    pub fn new(seed: Seed, mut entries: Vec<(Iri, f64)>) -> Self {
        entries.sort_by(compare_scored);
        ScoredList { seed, entries }
    }

    pub fn empty(seed: Seed) -> Self {
        ScoredList {
            seed,
            entries: Vec::new(),
        }
    }

    pub fn truncate(&mut self, n: usize) {
        self.entries.truncate(n);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = &Iri> {
        self.entries.iter().map(|(i, _)| i)
    }

    pub fn score_of(&self, entity: &Iri) -> Option<f64> {
        self.entries
            .iter()
            .find(|(e, _)| e == entity)
            .map(|(_, s)| *s)
    }
}

pub(crate) fn compare_scored(a: &(Iri, f64), b: &(Iri, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0))
}

fn r1_scores(candidates: &[Candidate], config: &RecConfig) -> Vec<f64> {
    let max = candidates.iter().map(|c| c.occurrence).max().unwrap_or(0);
    candidates
        .iter()
        .map(|c| {
            if max == 0 {
                return 0.0;
            }
            let alpha = match c.origin {
                Origin::Annotated => 1.0,
                Origin::Discovered => config.alpha,
            };
            alpha * f64::from(c.occurrence) / f64::from(max)
        })
        .collect()
}

fn r2_scores(candidates: &[Candidate], config: &RecConfig) -> Result<Vec<f64>, RecError> {
    let r1 = r1_scores(candidates, config);
    candidates
        .iter()
        .zip(r1)
        .map(|(c, r1)| match c.origin {
            Origin::Annotated => Ok(r1),
            Origin::Discovered => {
                let ldsd = c
                    .ldsd_to_source
                    .ok_or_else(|| RecError::MissingLdsd(c.entity.clone()))?;
                Ok(0.5 * r1 + 0.5 * (1.0 - ldsd))
            }
        })
        .collect()
}

fn finish(initial_item: &Iri, candidates: &[Candidate], scores: Vec<f64>) -> ScoredList {
    let entries = candidates
        .iter()
        .zip(scores)
        .map(|(c, s)| (c.entity.clone(), s))
        .collect();
    ScoredList::new(Seed::Item(initial_item.clone()), entries)
}

/// Occurrence normalized by the largest occurrence in the candidate set;
/// discovered entities are weighted by `config.alpha`.
pub fn rank_r1(candidates: &[Candidate], initial_item: &Iri, config: &RecConfig) -> ScoredList {
    finish(initial_item, candidates, r1_scores(candidates, config))
}

/// Equal to R1 for annotated entities; for discovered ones, the mean of R1
/// and the closeness (1 − LDSD) to the entity they were discovered through.
pub fn rank_r2(
    candidates: &[Candidate],
    initial_item: &Iri,
    config: &RecConfig,
) -> Result<ScoredList, RecError> {
    Ok(finish(
        initial_item,
        candidates,
        r2_scores(candidates, config)?,
    ))
}

/// `eta · R2 + kappa · (1 − LDSD(candidate, seed))`, distances computed on
/// demand through `cache`.
pub fn rank_r3(
    candidates: &[Candidate],
    initial_item: &Iri,
    config: &RecConfig,
    graph: &Graph,
    cache: &LdsdCache,
) -> Result<ScoredList, RecError> {
    let (Some(eta), Some(kappa)) = (config.eta, config.kappa) else {
        return Err(RecError::InvalidConfig(format!(
            "{}: R3 needs both eta and kappa",
            config.name
        )));
    };
    let r2 = r2_scores(candidates, config)?;
    let scores = candidates
        .iter()
        .zip(r2)
        .map(|(c, r2)| {
            let ldsd = match c.ldsd_to_initial {
                Some(v) => v,
                None => cache.get_or_compute(graph, &c.entity, initial_item)?.get(),
            };
            Ok(eta * r2 + kappa * (1.0 - ldsd))
        })
        .collect::<Result<Vec<_>, RecError>>()?;
    Ok(finish(initial_item, candidates, scores))
}

/// Dispatches to the ranker selected by `config`.
pub fn rank(
    candidates: &[Candidate],
    initial_item: &Iri,
    config: &RecConfig,
    graph: &Graph,
    cache: &LdsdCache,
) -> Result<ScoredList, RecError> {
    match config.ranking {
        Ranking::R1 => Ok(rank_r1(candidates, initial_item, config)),
        Ranking::R2 => rank_r2(candidates, initial_item, config),
        Ranking::R3 => rank_r3(candidates, initial_item, config, graph, cache),
    }
}
