use std::fmt;
use std::str::FromStr;

use super::RecError;

/// Which ranking function scores the candidate set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ranking {
    /// Normalized occurrence, discovered entities down-weighted by alpha.
    R1,
    /// R1 blended with the distance of a discovered entity to its source.
    R2,
    /// R2 blended with the distance of each candidate to the seed item.
    R3,
}

impl FromStr for Ranking {
    type Err = RecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "R1" => Ok(Ranking::R1),
            "R2" => Ok(Ranking::R2),
            "R3" => Ok(Ranking::R3),
            _ => Err(RecError::InvalidConfig(format!("unknown ranking {s:?}"))),
        }
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub const DEFAULT_ALPHA: f64 = 0.5;
pub const DEFAULT_THRESHOLD: f64 = 0.05;

/// One recommender configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RecConfig {
    pub name: String,
    pub ranking: Ranking,
    pub use_discovered: bool,
    /// Minimum occurrence as a fraction of the seed item's maximum occurrence.
    pub occurrence_threshold: f64,
    /// Weight of discovered entities in R1. Annotated entities always use 1.
    pub alpha: f64,
    pub eta: Option<f64>,
    pub kappa: Option<f64>,
}

impl RecConfig {
    pub fn new(name: impl Into<String>, ranking: Ranking, use_discovered: bool) -> Self {
        RecConfig {
            name: name.into(),
            ranking,
            use_discovered,
            occurrence_threshold: DEFAULT_THRESHOLD,
            alpha: DEFAULT_ALPHA,
            eta: None,
            kappa: None,
        }
    }

    pub fn with_r3_weights(mut self, eta: f64, kappa: f64) -> Self {
        self.eta = Some(eta);
        self.kappa = Some(kappa);
        self
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.occurrence_threshold = threshold;
        self
    }

    pub fn validate(&self) -> Result<(), RecError> {
        let bad = |msg: String| Err(RecError::InvalidConfig(format!("{}: {msg}", self.name)));
        if !(0.0..=1.0).contains(&self.occurrence_threshold) {
            return bad(format!(
                "occurrence threshold {} outside [0, 1]",
                self.occurrence_threshold
            ));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad(format!("alpha {} outside (0, 1]", self.alpha));
        }
        for (label, w) in [("eta", self.eta), ("kappa", self.kappa)] {
            if let Some(w) = w {
                if !(w.is_finite() && w >= 0.0) {
                    return bad(format!("{label} {w} must be a finite non-negative number"));
                }
            }
        }
        if self.ranking == Ranking::R3 && (self.eta.is_none() || self.kappa.is_none()) {
            return bad("R3 needs both eta and kappa".into());
        }
        Ok(())
    }

    /// R3 weights summing above 1 can push scores out of [0, 1]. Such rows
    /// still rank, but reports flag them.
    pub fn exceeds_unit_weights(&self) -> bool {
        self.ranking == Ranking::R3
            && self.eta.unwrap_or(0.0) + self.kappa.unwrap_or(0.0) > 1.0 + 1e-12
    }

    /// Whether ranking needs a precomputed source distance on every
    /// discovered candidate.
    pub fn needs_source_ldsd(&self) -> bool {
        self.use_discovered && matches!(self.ranking, Ranking::R2 | Ranking::R3)
    }

    /// The eight standard rows C1–C8.
    pub fn standard_grid() -> Vec<RecConfig> {
        use Ranking::*;
        vec![
            RecConfig::new("C1", R1, false),
            RecConfig::new("C2", R1, true),
            RecConfig::new("C3", R2, false),
            RecConfig::new("C4", R2, true),
            RecConfig::new("C5", R3, false).with_r3_weights(0.5, 0.5),
            RecConfig::new("C6", R3, true).with_r3_weights(0.5, 0.5),
            RecConfig::new("C7", R3, true).with_r3_weights(0.75, 0.25),
            RecConfig::new("C8", R3, true).with_r3_weights(0.25, 0.75),
        ]
    }

    pub fn preset(name: &str) -> Option<RecConfig> {
        Self::standard_grid().into_iter().find(|c| c.name == name)
    }
}
