//! Linked Data Semantic Distance.
//!
//! The unweighted combined form is used:
//!
//! ```text
//! LDSD(a, b) = 1 / (1 + Cd(a,b) + Cd(b,a) + Cii(a,b) + Cio(a,b))
//! ```
//!
//! where `Cd(a,b)` counts triples `(a, p, b)`, `Cii(a,b)` counts `(p, s)`
//! pairs with both `(s, p, a)` and `(s, p, b)`, and `Cio(a,b)` counts `(p, o)`
//! pairs with both `(a, p, o)` and `(b, p, o)`. Resources with no link at all
//! are at distance 1.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use super::{Graph, Iri, KgError};

/// A distance in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LdsdValue(f64);

impl LdsdValue {
    pub fn new(value: f64) -> Result<Self, KgError> {
        if (0.0..=1.0).contains(&value) {
            Ok(LdsdValue(value))
        } else {
            Err(KgError::LdsdOutOfRange(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Link counts entering the distance, exposed for reporting and testing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LinkCounts {
    pub direct_ab: usize,
    pub direct_ba: usize,
    pub indirect_incoming: usize,
    pub indirect_outgoing: usize,
}

impl LinkCounts {
    pub fn total(&self) -> usize {
        self.direct_ab + self.direct_ba + self.indirect_incoming + self.indirect_outgoing
    }
}

pub fn link_counts(graph: &Graph, a: &Iri, b: &Iri) -> LinkCounts {
    LinkCounts {
        direct_ab: direct_links(graph, a, b),
        direct_ba: direct_links(graph, b, a),
        indirect_incoming: shared_pairs(graph.incoming(a), graph.incoming(b)),
        indirect_outgoing: shared_pairs(graph.outgoing(a), graph.outgoing(b)),
    }
}

pub fn compute_ldsd(graph: &Graph, a: &Iri, b: &Iri) -> Result<LdsdValue, KgError> {
    if a == b {
        return Err(KgError::SameResource(a.clone()));
    }
    let links = link_counts(graph, a, b);
    Ok(LdsdValue(1.0 / (1.0 + links.total() as f64)))
}

fn direct_links(graph: &Graph, from: &Iri, to: &Iri) -> usize {
    graph
        .outgoing(from)
        .map(|by_prop| by_prop.values().filter(|objs| objs.contains(to)).count())
        .unwrap_or(0)
}

fn shared_pairs(
    a: Option<&BTreeMap<Iri, BTreeSet<Iri>>>,
    b: Option<&BTreeMap<Iri, BTreeSet<Iri>>>,
) -> usize {
    let (Some(a), Some(b)) = (a, b) else {
        return 0;
    };
    a.iter()
        .filter_map(|(p, xs)| b.get(p).map(|ys| xs.intersection(ys).count()))
        .sum()
}

/// Memoizes distances per unordered pair. Lookups and insertions happen under
/// one lock so a pair is computed at most once.
#[derive(Debug, Default)]
pub struct LdsdCache {
    memo: Mutex<HashMap<(Iri, Iri), LdsdValue>>,
}

impl LdsdCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(&self, graph: &Graph, a: &Iri, b: &Iri) -> Result<LdsdValue, KgError> {
        if a == b {
            return Err(KgError::SameResource(a.clone()));
        }
        let key = if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        let mut memo = self.memo.lock().expect("ldsd cache poisoned");
        if let Some(v) = memo.get(&key) {
            return Ok(*v);
        }
        let v = compute_ldsd(graph, &key.0, &key.1)?;
        memo.insert(key, v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.memo.lock().expect("ldsd cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
