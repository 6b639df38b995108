//! Candidate generation, ranking and per-user aggregation.

mod candidates;
mod config;
mod ranking;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

pub use candidates::{
    generate_candidates, occur, occurrence_cutoff, Candidate, DiscoveryStore, Origin,
};
pub use config::{Ranking, RecConfig, DEFAULT_ALPHA, DEFAULT_THRESHOLD};
pub(crate) use ranking::compare_scored;
pub use ranking::{rank, rank_r1, rank_r2, rank_r3, ScoredList, Seed};

use crate::annotation::OccurrenceIndex;
use crate::kg::{Graph, Iri, KgError, LdsdCache};

#[derive(Debug, thiserror::Error)]
pub enum RecError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(
        "discovered candidate {0} has no precomputed LDSD to its source; rerun discovery with LDSD"
    )]
    MissingLdsd(Iri),
    #[error("invalid user profile {0:?}: liked items must also be rated")]
    InvalidProfile(String),
    #[error(transparent)]
    Kg(#[from] KgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserProfile {
    pub user_id: String,
    pub liked: BTreeSet<Iri>,
    pub rated: BTreeSet<Iri>,
}

impl UserProfile {
    pub fn new(
        user_id: impl Into<String>,
        liked: BTreeSet<Iri>,
        rated: BTreeSet<Iri>,
    ) -> Result<Self, RecError> {
        let user_id = user_id.into();
        if !liked.is_subset(&rated) {
            return Err(RecError::InvalidProfile(user_id));
        }
        Ok(UserProfile {
            user_id,
            liked,
            rated,
        })
    }
}

/// Read-only stores plus the on-demand distance memo.
pub struct Recommender<'a> {
    index: &'a OccurrenceIndex,
    discoveries: &'a DiscoveryStore,
    graph: &'a Graph,
    ldsd: LdsdCache,
}

impl<'a> Recommender<'a> {
    pub fn new(
        index: &'a OccurrenceIndex,
        discoveries: &'a DiscoveryStore,
        graph: &'a Graph,
    ) -> Self {
        Recommender {
            index,
            discoveries,
            graph,
            ldsd: LdsdCache::new(),
        }
    }

    pub fn index(&self) -> &OccurrenceIndex {
        self.index
    }

    pub fn candidates(&self, initial_item: &Iri, config: &RecConfig) -> Vec<Candidate> {
        generate_candidates(initial_item, self.index, self.discoveries, config)
    }

    /// The complete ranked candidate list for a seed item.
    pub fn score(&self, initial_item: &Iri, config: &RecConfig) -> Result<ScoredList, RecError> {
        config.validate()?;
        let cands = self.candidates(initial_item, config);
        rank(&cands, initial_item, config, self.graph, &self.ldsd)
    }

    /// Top `n` entities for a seed item. Unknown items give an empty list.
    pub fn recommend(
        &self,
        initial_item: &Iri,
        n: usize,
        config: &RecConfig,
    ) -> Result<ScoredList, RecError> {
        let mut list = self.score(initial_item, config)?;
        list.truncate(n);
        Ok(list)
    }

    /// Top `n` entities for a user, summing the per-seed scores over every
    /// liked item and leaving out anything the user already rated.
    pub fn recommend_for_user(
        &self,
        profile: &UserProfile,
        n: usize,
        config: &RecConfig,
    ) -> Result<ScoredList, RecError> {
        aggregate_for_user(profile, n, None, |seed| self.score(seed, config))
    }
}

/// Sums per-seed scores over `profile.liked`, drops rated items (and, when
/// `universe` is given, anything outside it) and keeps the top `n`.
pub fn aggregate_for_user<L>(
    profile: &UserProfile,
    n: usize,
    universe: Option<&BTreeSet<Iri>>,
    mut seed_list: impl FnMut(&Iri) -> Result<L, RecError>,
) -> Result<ScoredList, RecError>
where
    L: std::borrow::Borrow<ScoredList>,
{
    let mut totals: BTreeMap<Iri, f64> = BTreeMap::new();
    for seed in &profile.liked {
        let list = seed_list(seed)?;
        for (entity, score) in &list.borrow().entries {
            if profile.rated.contains(entity) || universe.is_some_and(|u| !u.contains(entity)) {
                continue;
            }
            *totals.entry(entity.clone()).or_insert(0.0) += score;
        }
    }
    let mut list = ScoredList::new(
        Seed::User(profile.user_id.clone()),
        totals.into_iter().collect(),
    );
    list.truncate(n);
    Ok(list)
}

/// `user_or_item<TAB>rank<TAB>entity<TAB>score`, rank starting at 1, scores
/// with six decimals.
pub fn format_recommendations(list: &ScoredList) -> String {
    let mut out = String::new();
    for (rank, (entity, score)) in list.entries.iter().enumerate() {
        writeln!(out, "{}\t{}\t{}\t{:.6}", list.seed, rank + 1, entity, score).unwrap();
    }
    out
}
