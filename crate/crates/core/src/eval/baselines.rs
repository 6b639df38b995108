//! Rating-based reference models.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;

use super::folds::derived_rng;
use super::metrics::binary_cosine;
use super::run::{FoldData, TopNModel, UserRanker, UserTrain};
use super::EvalError;
use crate::kg::Iri;
use crate::recommender::ScoredList;

fn sorted_by_score(scores: impl IntoIterator<Item = (Iri, f64)>) -> Vec<Iri> {
    let mut v: Vec<(Iri, f64)> = scores.into_iter().collect();
    v.sort_by(crate::recommender::compare_scored);
    v.into_iter().map(|(i, _)| i).collect()
}

/// Ranks items by their number of positive training ratings.
#[derive(Debug, Clone)]
pub struct MostPopular {
    name: String,
}

impl MostPopular {
    pub fn new() -> Self {
        MostPopular {
            name: "MostPopular".into(),
        }
    }
}

impl Default for MostPopular {
    fn default() -> Self {
        Self::new()
    }
}

struct OrderedRanker(Vec<Iri>);

impl UserRanker for OrderedRanker {
    fn top_n(&self, user: &UserTrain, n: usize) -> Result<Vec<Iri>, EvalError> {
        Ok(self
            .0
            .iter()
            .filter(|i| !user.rated.contains(*i))
            .take(n)
            .cloned()
            .collect())
    }
}

impl TopNModel for MostPopular {
    fn name(&self) -> &str {
        &self.name
    }

    fn fit<'a>(&'a self, train: &'a FoldData) -> Result<Box<dyn UserRanker + 'a>, EvalError> {
        let mut counts: BTreeMap<Iri, f64> =
            train.universe.iter().map(|i| (i.clone(), 0.0)).collect();
        for u in train.users.values() {
            for i in &u.liked {
                *counts.entry(i.clone()).or_default() += 1.0;
            }
        }
        Ok(Box::new(OrderedRanker(sorted_by_score(counts))))
    }
}

/// Uniformly random order of the unrated items, reproducible per
/// `(seed, fold, user)`.
#[derive(Debug, Clone)]
pub struct RandomGuess {
    name: String,
    seed: u64,
}

impl RandomGuess {
    pub fn new(seed: u64) -> Self {
        RandomGuess {
            name: "RandomGuess".into(),
            seed,
        }
    }
}

struct RandomRanker<'a> {
    seed: u64,
    fold: String,
    items: &'a BTreeSet<Iri>,
}

impl UserRanker for RandomRanker<'_> {
    fn top_n(&self, user: &UserTrain, n: usize) -> Result<Vec<Iri>, EvalError> {
        let mut pool: Vec<&Iri> = self
            .items
            .iter()
            .filter(|i| !user.rated.contains(*i))
            .collect();
        let mut rng = derived_rng(self.seed, &["random", &self.fold, &user.user_id]);
        pool.shuffle(&mut rng);
        Ok(pool.into_iter().take(n).cloned().collect())
    }
}

impl TopNModel for RandomGuess {
    fn name(&self) -> &str {
        &self.name
    }

    fn fit<'a>(&'a self, train: &'a FoldData) -> Result<Box<dyn UserRanker + 'a>, EvalError> {
        Ok(Box::new(RandomRanker {
            seed: self.seed,
            fold: train.fold.to_string(),
            items: &train.universe,
        }))
    }
}

/// Item-based k-nearest-neighbours over the binary matrix of positive
/// training ratings. An item's score for a user is the summed cosine
/// similarity of its `k` most similar items among those the user liked.
#[derive(Debug, Clone)]
pub struct ItemKnn {
    name: String,
    k: usize,
}

pub const DEFAULT_KNN_NEIGHBORS: usize = 80;

impl ItemKnn {
    pub fn new(k: usize) -> Self {
        ItemKnn {
            name: "ItemKNN".into(),
            k,
        }
    }
}

pub struct KnnRanker<'a> {
    k: usize,
    universe: &'a BTreeSet<Iri>,
    likers: BTreeMap<&'a Iri, BTreeSet<&'a str>>,
}

impl KnnRanker<'_> {
    pub fn similarity(&self, a: &Iri, b: &Iri) -> f64 {
        match (self.likers.get(a), self.likers.get(b)) {
            (Some(x), Some(y)) => binary_cosine(x, y),
            _ => 0.0,
        }
    }

    pub fn score(&self, user: &UserTrain, item: &Iri) -> f64 {
        let mut sims: Vec<(Iri, f64)> = user
            .liked
            .iter()
            .filter(|j| *j != item)
            .map(|j| (j.clone(), self.similarity(item, j)))
            .collect();
        sims.sort_by(crate::recommender::compare_scored);
        sims.iter().take(self.k).map(|(_, s)| s).sum()
    }

    /// Every unrated item with its score, best first.
    pub fn scored(&self, user: &UserTrain) -> ScoredList {
        let entries = self
            .universe
            .iter()
            .filter(|i| !user.rated.contains(*i))
            .map(|i| (i.clone(), self.score(user, i)))
            .collect();
        ScoredList::new(
            crate::recommender::Seed::User(user.user_id.clone()),
            entries,
        )
    }
}

impl ItemKnn {
    pub fn fit_knn<'a>(&self, train: &'a FoldData) -> KnnRanker<'a> {
        KnnRanker {
            k: self.k,
            universe: &train.universe,
            likers: train.likers(),
        }
    }
}

impl UserRanker for KnnRanker<'_> {
    fn top_n(&self, user: &UserTrain, n: usize) -> Result<Vec<Iri>, EvalError> {
        let mut l = self.scored(user);
        l.truncate(n);
        Ok(l.items().cloned().collect())
    }
}

impl TopNModel for ItemKnn {
    fn name(&self) -> &str {
        &self.name
    }

    fn fit<'a>(&'a self, train: &'a FoldData) -> Result<Box<dyn UserRanker + 'a>, EvalError> {
        Ok(Box::new(self.fit_knn(train)))
    }
}
