use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use super::EvalError;
use crate::kg::Iri;
use crate::tsv;

/// Rating scale and the value above which a rating counts as positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scale {
    pub max_scale: f64,
    pub positive_threshold: f64,
}

impl Scale {
    /// 1–5 stars, positive above 3.
    pub const STARS_5: Scale = Scale {
        max_scale: 5.0,
        positive_threshold: 3.0,
    };
    /// 1–10 scale, positive above 6.
    pub const POINTS_10: Scale = Scale {
        max_scale: 10.0,
        positive_threshold: 6.0,
    };
    /// Implicit feedback counts, positive above 0.
    pub const IMPLICIT: Scale = Scale {
        max_scale: f64::INFINITY,
        positive_threshold: 0.0,
    };

    pub fn is_positive(&self, rating: f64) -> bool {
        rating > self.positive_threshold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rating {
    pub user: String,
    pub item: Iri,
    pub rating: f64,
}

#[derive(Debug, Clone)]
pub struct RatingDataset {
    records: Vec<Rating>,
    scale: Scale,
}

impl RatingDataset {
    /// Validates that ratings fit the scale and `(user, item)` pairs are unique.
    pub fn new(records: Vec<Rating>, scale: Scale) -> Result<Self, EvalError> {
        let mut seen = HashSet::new();
        for r in &records {
            if !r.rating.is_finite() || r.rating < 0.0 || r.rating > scale.max_scale {
                return Err(EvalError::InvalidDataset(format!(
                    "rating {} of ({}, {}) outside [0, {}]",
                    r.rating, r.user, r.item, scale.max_scale
                )));
            }
            if !seen.insert((r.user.as_str(), &r.item)) {
                return Err(EvalError::InvalidDataset(format!(
                    "duplicate rating for ({}, {})",
                    r.user, r.item
                )));
            }
        }
        Ok(RatingDataset { records, scale })
    }

    /// Reads `user<TAB>item<TAB>rating` rows.
    pub fn load(path: impl AsRef<Path>, scale: Scale) -> Result<Self, EvalError> {
        let rows = tsv::read_rows(path.as_ref(), 3)?;
        let mut records = Vec::with_capacity(rows.len());
        for (line, f) in rows {
            let err = |msg: String| EvalError::Parse { line, msg };
            let item = Iri::new(&f[1]).map_err(|e| err(e.to_string()))?;
            let rating: f64 = f[2]
                .parse()
                .map_err(|_| err(format!("bad rating {:?}", f[2])))?;
            if f[0].is_empty() {
                return Err(err("empty user id".into()));
            }
            records.push(Rating {
                user: f[0].clone(),
                item,
                rating,
            });
        }
        Self::new(records, scale)
    }

    pub fn records(&self) -> &[Rating] {
        &self.records
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn items(&self) -> BTreeSet<Iri> {
        self.records.iter().map(|r| r.item.clone()).collect()
    }

    pub fn users(&self) -> BTreeSet<&str> {
        self.records.iter().map(|r| r.user.as_str()).collect()
    }
}

/// `(user, item)` pairs whose rating is strictly above the positive threshold.
pub fn binarize(dataset: &RatingDataset) -> BTreeSet<(String, Iri)> {
    let scale = dataset.scale();
    dataset
        .records()
        .iter()
        .filter(|r| scale.is_positive(r.rating))
        .map(|r| (r.user.clone(), r.item.clone()))
        .collect()
}
