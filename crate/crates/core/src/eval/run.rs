use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::metrics::{ebn, ild_diversity, ndcg_at_n, precision_at_n, recall_at_n};
use super::{EvalError, FoldPlan, RatingDataset};
use crate::annotation::OccurrenceIndex;
use crate::kg::Iri;
use crate::recommender::{
    aggregate_for_user, RecConfig, RecError, Recommender, ScoredList, UserProfile,
};

/// What a user contributed to the training side of a fold.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UserTrain {
    pub user_id: String,
    pub rated: BTreeSet<Iri>,
    pub liked: BTreeSet<Iri>,
}

/// Training view of one fold.
#[derive(Debug, Clone)]
pub struct FoldData {
    pub fold: usize,
    pub users: BTreeMap<String, UserTrain>,
    /// Every item in the dataset; rankings are drawn from here.
    pub universe: BTreeSet<Iri>,
    /// Fraction of training users who rated each item.
    pub popularity: BTreeMap<Iri, f64>,
}

impl FoldData {
    pub fn user(&self, user_id: &str) -> Option<&UserTrain> {
        self.users.get(user_id)
    }

    /// Items each user liked, from the item's side.
    pub fn likers(&self) -> BTreeMap<&Iri, BTreeSet<&str>> {
        let mut out: BTreeMap<&Iri, BTreeSet<&str>> = BTreeMap::new();
        for u in self.users.values() {
            for i in &u.liked {
                out.entry(i).or_default().insert(&u.user_id);
            }
        }
        out
    }
}

/// A model that can be trained on one fold.
pub trait TopNModel: Sync {
    fn name(&self) -> &str;
    fn fit<'a>(&'a self, train: &'a FoldData) -> Result<Box<dyn UserRanker + 'a>, EvalError>;
}

/// A trained model producing a ranked list of unrated items for a user.
pub trait UserRanker: Sync {
    fn top_n(&self, user: &UserTrain, n: usize) -> Result<Vec<Iri>, EvalError>;
}

/// The review/graph recommender under one configuration. Per-seed lists do
/// not depend on the fold and are memoized across folds and users.
pub struct SemanticModel<'r> {
    recommender: &'r Recommender<'r>,
    config: RecConfig,
    memo: Mutex<HashMap<Iri, Arc<ScoredList>>>,
}

impl<'r> SemanticModel<'r> {
    pub fn new(recommender: &'r Recommender<'r>, config: RecConfig) -> Result<Self, EvalError> {
        config.validate()?;
        Ok(SemanticModel {
            recommender,
            config,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &RecConfig {
        &self.config
    }

    fn seed_list(&self, seed: &Iri) -> Result<Arc<ScoredList>, RecError> {
        if let Some(l) = self.memo.lock().expect("memo poisoned").get(seed) {
            return Ok(Arc::clone(l));
        }
        let list = Arc::new(self.recommender.score(seed, &self.config)?);
        self.memo
            .lock()
            .expect("memo poisoned")
            .insert(seed.clone(), Arc::clone(&list));
        Ok(list)
    }
}

struct SemanticRanker<'a> {
    model: &'a SemanticModel<'a>,
    train: &'a FoldData,
}

impl TopNModel for SemanticModel<'_> {
    fn name(&self) -> &str {
        &self.config.name
    }

    fn fit<'a>(&'a self, train: &'a FoldData) -> Result<Box<dyn UserRanker + 'a>, EvalError> {
        Ok(Box::new(SemanticRanker { model: self, train }))
    }
}

impl UserRanker for SemanticRanker<'_> {
    fn top_n(&self, user: &UserTrain, n: usize) -> Result<Vec<Iri>, EvalError> {
        let profile = UserProfile::new(&user.user_id, user.liked.clone(), user.rated.clone())?;
        let list = aggregate_for_user(&profile, n, Some(&self.train.universe), |seed| {
            self.model.seed_list(seed)
        })?;
        Ok(list.items().cloned().collect())
    }
}

/// Mean of a metric plus the per-user values it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSummary {
    pub mean: f64,
    pub samples: Vec<f64>,
}

impl MetricSummary {
    fn from_samples(samples: Vec<f64>) -> Self {
        let mean = if samples.is_empty() {
            0.0
        } else {
            samples.iter().sum::<f64>() / samples.len() as f64
        };
        MetricSummary { mean, samples }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Precision,
    Recall,
    Ndcg,
    Ebn,
    Diversity,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Precision,
        Metric::Recall,
        Metric::Ndcg,
        Metric::Ebn,
        Metric::Diversity,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Metric::Precision => "precision",
            Metric::Recall => "recall",
            Metric::Ndcg => "ndcg",
            Metric::Ebn => "ebn",
            Metric::Diversity => "diversity",
        }
    }
}

/// Metrics of one model. Every sample belongs to one user (the mean of that
/// user's values over the folds where they had test positives); `users`
/// lists them in the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub name: String,
    pub n: usize,
    pub users: Vec<String>,
    pub precision: MetricSummary,
    pub recall: MetricSummary,
    pub ndcg: MetricSummary,
    pub ebn: MetricSummary,
    pub diversity: MetricSummary,
}

impl MetricsReport {
    pub fn metric(&self, m: Metric) -> &MetricSummary {
        match m {
            Metric::Precision => &self.precision,
            Metric::Recall => &self.recall,
            Metric::Ndcg => &self.ndcg,
            Metric::Ebn => &self.ebn,
            Metric::Diversity => &self.diversity,
        }
    }
}

/// Item feature sets for diversity: the entities annotated in each item's
/// reviews.
pub fn features_from_index(index: &OccurrenceIndex) -> BTreeMap<Iri, BTreeSet<Iri>> {
    index
        .items()
        .map(|i| {
            (
                i.clone(),
                index.entities_of(i).map(|(e, _)| e.clone()).collect(),
            )
        })
        .collect()
}

/// The training side of `fold`, plus each user's positive test items.
pub fn fold_split(
    dataset: &RatingDataset,
    plan: &FoldPlan,
    fold: usize,
) -> (FoldData, BTreeMap<String, BTreeSet<Iri>>) {
    let scale = dataset.scale();
    let mut users: BTreeMap<String, UserTrain> = BTreeMap::new();
    let mut test: BTreeMap<String, BTreeSet<Iri>> = BTreeMap::new();
    let mut raters: BTreeMap<Iri, usize> = BTreeMap::new();
    for r in dataset.records() {
        let u = users.entry(r.user.clone()).or_insert_with(|| UserTrain {
            user_id: r.user.clone(),
            ..UserTrain::default()
        });
        if plan.fold_of(&r.user, &r.item) == Some(fold) {
            if scale.is_positive(r.rating) {
                test.entry(r.user.clone())
                    .or_default()
                    .insert(r.item.clone());
            }
        } else {
            u.rated.insert(r.item.clone());
            if scale.is_positive(r.rating) {
                u.liked.insert(r.item.clone());
            }
            *raters.entry(r.item.clone()).or_default() += 1;
        }
    }
    let train_users = users.values().filter(|u| !u.rated.is_empty()).count();
    let popularity = raters
        .into_iter()
        .map(|(i, c)| (i, c as f64 / train_users.max(1) as f64))
        .collect();
    let data = FoldData {
        fold,
        users,
        universe: dataset.items(),
        popularity,
    };
    (data, test)
}

#[derive(Default, Clone, Copy)]
struct UserMetrics([f64; 5]);

/// Runs `model` over every fold of `plan` and scores its top-`n` lists.
///
/// Users without positive test items in a fold are skipped for that fold.
pub fn evaluate_run(
    model: &dyn TopNModel,
    dataset: &RatingDataset,
    plan: &FoldPlan,
    n: usize,
    features: &BTreeMap<Iri, BTreeSet<Iri>>,
) -> Result<MetricsReport, EvalError> {
    let mut per_user: BTreeMap<String, Vec<UserMetrics>> = BTreeMap::new();
    for fold in 0..plan.k() {
        let (train, test) = fold_split(dataset, plan, fold);
        let ranker = model.fit(&train)?;
        let scored: Vec<(String, UserMetrics)> = test
            .par_iter()
            .map(|(user, relevant)| {
                let profile = train.user(user).expect("every rating user has an entry");
                let list = ranker.top_n(profile, n)?;
                let list = &list[..list.len().min(n)];
                Ok((
                    user.clone(),
                    UserMetrics([
                        precision_at_n(list, relevant, n),
                        recall_at_n(list, relevant, n),
                        ndcg_at_n(list, relevant, n),
                        ebn(list, &train.popularity),
                        ild_diversity(list, features),
                    ]),
                ))
            })
            .collect::<Result<_, EvalError>>()?;
        for (user, m) in scored {
            per_user.entry(user).or_default().push(m);
        }
    }

    let users: Vec<String> = per_user.keys().cloned().collect();
    let mut columns: [Vec<f64>; 5] = Default::default();
    for folds in per_user.values() {
        let k = folds.len() as f64;
        for (m, col) in columns.iter_mut().enumerate() {
            col.push(folds.iter().map(|f| f.0[m]).sum::<f64>() / k);
        }
    }
    let [precision, recall, ndcg, ebn, diversity] = columns.map(MetricSummary::from_samples);
    Ok(MetricsReport {
        name: model.name().to_string(),
        n,
        users,
        precision,
        recall,
        ndcg,
        ebn,
        diversity,
    })
}
