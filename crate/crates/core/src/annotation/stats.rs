use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{OccurrenceIndex, Review};
use crate::kg::Iri;

/// Quartiles of a distribution and the 1.5·IQR outlier fence.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub lower_fence: f64,
    pub upper_fence: f64,
}

impl BoxStats {
    /// Quartiles by linear interpolation between order statistics. `None` for
    /// an empty sample.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        let q1 = quantile(&v, 0.25);
        let q3 = quantile(&v, 0.75);
        let iqr = q3 - q1;
        Some(BoxStats {
            min: v[0],
            q1,
            median: quantile(&v, 0.5),
            q3,
            max: v[v.len() - 1],
            lower_fence: q1 - 1.5 * iqr,
            upper_fence: q3 + 1.5 * iqr,
        })
    }

    /// Points outside the open interval `(lower_fence, upper_fence)`.
    pub fn is_outlier(&self, x: f64) -> bool {
        x <= self.lower_fence || x >= self.upper_fence
    }
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub reviews: usize,
    pub items: usize,
    pub distinct_entities: usize,
    /// Sum of all occurrence counts.
    pub total_entities: u64,
    /// Total entity occurrences per reviewed item, items without any
    /// annotation included as 0.
    pub per_item: BTreeMap<Iri, u64>,
    pub distribution: Option<BoxStats>,
    pub outliers: Vec<Iri>,
}

pub fn corpus_stats(reviews: &[Review], index: &OccurrenceIndex) -> CorpusStats {
    let mut per_item: BTreeMap<Iri, u64> = reviews.iter().map(|r| (r.item.clone(), 0)).collect();
    let mut entities = BTreeSet::new();
    let mut total = 0u64;
    for (e, i, c) in index.iter() {
        entities.insert(e);
        total += u64::from(c);
        *per_item.entry(i.clone()).or_default() += u64::from(c);
    }
    let values: Vec<f64> = per_item.values().map(|&c| c as f64).collect();
    let distribution = BoxStats::from_values(&values);
    let outliers = match &distribution {
        Some(b) => per_item
            .iter()
            .filter(|(_, &c)| b.is_outlier(c as f64))
            .map(|(i, _)| i.clone())
            .collect(),
        None => Vec::new(),
    };
    CorpusStats {
        reviews: reviews.len(),
        items: per_item.len(),
        distinct_entities: entities.len(),
        total_entities: total,
        per_item,
        distribution,
        outliers,
    }
}

impl fmt::Display for CorpusStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reviews\t{}", self.reviews)?;
        writeln!(f, "items\t{}", self.items)?;
        writeln!(f, "distinct_entities\t{}", self.distinct_entities)?;
        writeln!(f, "total_entities\t{}", self.total_entities)?;
        match &self.distribution {
            Some(b) => {
                writeln!(
                    f,
                    "entities_per_item\tmin={} q1={} median={} q3={} max={}",
                    b.min, b.q1, b.median, b.q3, b.max
                )?;
                writeln!(f, "outlier_fence\t({}, {})", b.lower_fence, b.upper_fence)?;
                writeln!(f, "outliers\t{}", self.outliers.len())
            }
            None => writeln!(f, "entities_per_item\tNA"),
        }
    }
}
