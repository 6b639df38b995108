use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::{EvalError, RatingDataset};
use crate::kg::Iri;

/// A generator keyed by `seed` and a sequence of labels, so that e.g. each
/// `(fold, user)` draws from its own stream regardless of scheduling.
pub fn derived_rng(seed: u64, labels: &[&str]) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    for l in labels {
        h.update((l.len() as u64).to_le_bytes());
        h.update(l.as_bytes());
    }
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

/// Assignment of every rating to one of `k` folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    k: usize,
    assignment: HashMap<(String, Iri), usize>,
}

impl FoldPlan {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn fold_of(&self, user: &str, item: &Iri) -> Option<usize> {
        self.assignment
            .get(&(user.to_string(), item.clone()))
            .copied()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in self.assignment.values() {
            sizes[f] += 1;
        }
        sizes
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// Per-user stratified split: each user's ratings are shuffled with a
/// user-specific generator and dealt round-robin starting from a random fold.
pub fn split_folds(dataset: &RatingDataset, k: usize, seed: u64) -> Result<FoldPlan, EvalError> {
    if k < 2 {
        return Err(EvalError::InvalidDataset(format!(
            "need k >= 2 folds, got {k}"
        )));
    }
    let mut by_user: BTreeMap<&str, Vec<&Iri>> = BTreeMap::new();
    for r in dataset.records() {
        by_user.entry(&r.user).or_default().push(&r.item);
    }
    let mut assignment = HashMap::with_capacity(dataset.len());
    for (user, mut items) in by_user {
        items.sort();
        let mut rng = derived_rng(seed, &["folds", user]);
        items.shuffle(&mut rng);
        let start = rng.random_range(0..k);
        if items.len() < k {
            log::debug!("user {user} has {} ratings for {k} folds", items.len());
        }
        for (j, item) in items.into_iter().enumerate() {
            assignment.insert((user.to_string(), item.clone()), (start + j) % k);
        }
    }
    Ok(FoldPlan { k, assignment })
}
