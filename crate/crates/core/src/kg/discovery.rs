use std::collections::BTreeSet;

use super::{compute_ldsd, Direction, Graph, Iri, KgError};

/// A graph property followed during discovery, in a given direction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropertySpec {
    pub property: Iri,
    pub direction: Direction,
}

impl PropertySpec {
    pub fn direct(property: Iri) -> Self {
        PropertySpec {
            property,
            direction: Direction::Direct,
        }
    }

    pub fn inverse(property: Iri) -> Self {
        PropertySpec {
            property,
            direction: Direction::Inverse,
        }
    }
}

/// An entity reached from an annotated `source`, optionally with the
/// precomputed distance between the two.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscoveryRecord {
    pub discovered: Iri,
    pub source: Iri,
    pub ldsd: Option<f64>,
}

impl DiscoveryRecord {
    pub fn new(discovered: Iri, source: Iri, ldsd: Option<f64>) -> Result<Self, KgError> {
        if discovered == source {
            return Err(KgError::SelfDiscovery(discovered));
        }
        if let Some(v) = ldsd {
            if !(0.0..=1.0).contains(&v) {
                return Err(KgError::LdsdOutOfRange(v));
            }
        }
        Ok(DiscoveryRecord {
            discovered,
            source,
            ldsd,
        })
    }
}

/// Follows every property in `specs` from every annotated entity. Each
/// `(discovered, source)` pair is emitted once; output is ordered by source
/// then discovered entity.
pub fn discover<'a>(
    graph: &Graph,
    annotated: impl IntoIterator<Item = &'a Iri>,
    specs: &[PropertySpec],
) -> Vec<DiscoveryRecord> {
    let mut pairs = BTreeSet::new();
    for source in annotated {
        for spec in specs {
            for found in graph.neighbors(source, &spec.property, spec.direction) {
                if found != source {
                    pairs.insert((source.clone(), found.clone()));
                }
            }
        }
    }
    pairs
        .into_iter()
        .map(|(source, discovered)| DiscoveryRecord {
            discovered,
            source,
            ldsd: None,
        })
        .collect()
}

/// Fills in `ldsd` for every record.
pub fn attach_ldsd(graph: &Graph, records: &mut [DiscoveryRecord]) -> Result<(), KgError> {
    for r in records {
        r.ldsd = Some(compute_ldsd(graph, &r.discovered, &r.source)?.get());
    }
    Ok(())
}
