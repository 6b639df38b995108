//! Per-list accuracy, novelty and diversity measures.

use std::collections::{BTreeMap, BTreeSet};

use crate::kg::Iri;

/// Relevant items among the first `n` of `list`.
pub fn hits(list: &[Iri], relevant: &BTreeSet<Iri>, n: usize) -> usize {
    list.iter()
        .take(n)
        .filter(|i| relevant.contains(*i))
        .count()
}

/// Hits divided by the cutoff `n`, so short lists are not rewarded.
pub fn precision_at_n(list: &[Iri], relevant: &BTreeSet<Iri>, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    hits(list, relevant, n) as f64 / n as f64
}

pub fn recall_at_n(list: &[Iri], relevant: &BTreeSet<Iri>, n: usize) -> f64 {
    if relevant.is_empty() {
        return 0.0;
    }
    hits(list, relevant, n) as f64 / relevant.len() as f64
}

/// Binary-gain nDCG with `log2(rank + 1)` discount.
pub fn ndcg_at_n(list: &[Iri], relevant: &BTreeSet<Iri>, n: usize) -> f64 {
    if relevant.is_empty() || n == 0 {
        return 0.0;
    }
    let discount = |rank: usize| 1.0 / ((rank + 1) as f64).log2();
    let dcg: f64 = list
        .iter()
        .take(n)
        .enumerate()
        .filter(|(_, i)| relevant.contains(*i))
        .map(|(r, _)| discount(r + 1))
        .sum();
    let idcg: f64 = (1..=relevant.len().min(n)).map(discount).sum();
    dcg / idcg
}

/// Entropy-based novelty: `Σ −p(i)·log2 p(i)` over the list, where `p(i)` is
/// the fraction of training users who rated `i`. Lower means more novel.
pub fn ebn(list: &[Iri], popularity: &BTreeMap<Iri, f64>) -> f64 {
    list.iter()
        .map(|i| {
            let p = popularity.get(i).copied().unwrap_or(0.0);
            if p > 0.0 {
                -p * p.log2()
            } else {
                0.0
            }
        })
        .sum()
}

/// Cosine similarity of two binary feature sets.
pub fn binary_cosine<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let common = a.intersection(b).count() as f64;
    common / ((a.len() as f64) * (b.len() as f64)).sqrt()
}

/// Intra-list diversity: mean pairwise `1 − cosine` of item feature sets.
/// Items with no features are fully dissimilar to everything.
pub fn ild_diversity(list: &[Iri], features: &BTreeMap<Iri, BTreeSet<Iri>>) -> f64 {
    if list.len() < 2 {
        return 0.0;
    }
    let empty = BTreeSet::new();
    let f = |i: &Iri| features.get(i).unwrap_or(&empty);
    let mut sum = 0.0;
    for (a, x) in list.iter().enumerate() {
        for y in &list[a + 1..] {
            sum += 1.0 - binary_cosine(f(x), f(y));
        }
    }
    let n = list.len() as f64;
    2.0 * sum / (n * (n - 1.0))
}
