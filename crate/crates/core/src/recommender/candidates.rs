use std::collections::BTreeMap;

use crate::annotation::OccurrenceIndex;
use crate::kg::{DiscoveryRecord, Iri};

use super::RecConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Annotated,
    Discovered,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub entity: Iri,
    pub origin: Origin,
    /// For discovered entities, the occurrence of the entity they were
    /// discovered through.
    pub occurrence: u32,
    /// Set iff `origin` is `Discovered`.
    pub source: Option<Iri>,
    pub ldsd_to_source: Option<f64>,
    pub ldsd_to_initial: Option<f64>,
}

impl Candidate {
    pub fn annotated(entity: Iri, occurrence: u32) -> Self {
        Candidate {
            entity,
            origin: Origin::Annotated,
            occurrence,
            source: None,
            ldsd_to_source: None,
            ldsd_to_initial: None,
        }
    }

    pub fn discovered(entity: Iri, occurrence: u32, source: Iri, ldsd: Option<f64>) -> Self {
        Candidate {
            entity,
            origin: Origin::Discovered,
            occurrence,
            source: Some(source),
            ldsd_to_source: ldsd,
            ldsd_to_initial: None,
        }
    }
}

/// Discovered-entity records indexed from both ends.
#[derive(Debug, Clone, Default)]
pub struct DiscoveryStore {
    by_source: BTreeMap<Iri, Vec<(Iri, Option<f64>)>>,
    by_discovered: BTreeMap<Iri, Vec<(Iri, Option<f64>)>>,
    len: usize,
    missing_ldsd: usize,
}

impl DiscoveryStore {
    pub fn new(records: impl IntoIterator<Item = DiscoveryRecord>) -> Self {
        let mut s = DiscoveryStore::default();
        for r in records {
            s.len += 1;
            if r.ldsd.is_none() {
                s.missing_ldsd += 1;
            }
            s.by_source
                .entry(r.source.clone())
                .or_default()
                .push((r.discovered.clone(), r.ldsd));
            s.by_discovered
                .entry(r.discovered)
                .or_default()
                .push((r.source, r.ldsd));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// True when every record carries a source distance.
    pub fn has_ldsd(&self) -> bool {
        self.missing_ldsd == 0
    }

    /// Entities discovered through `source`.
    pub fn discovered_from<'a>(
        &'a self,
        source: &Iri,
    ) -> impl Iterator<Item = &'a (Iri, Option<f64>)> + 'a {
        self.by_source.get(source).into_iter().flatten()
    }

    /// Entities through which `discovered` was found.
    pub fn sources_of<'a>(
        &'a self,
        discovered: &Iri,
    ) -> impl Iterator<Item = &'a (Iri, Option<f64>)> + 'a {
        self.by_discovered.get(discovered).into_iter().flatten()
    }
}

/// Review-level co-occurrence of `entity` and the seed item, counted in both
/// directions.
pub fn occur(entity: &Iri, initial_item: &Iri, index: &OccurrenceIndex) -> u32 {
    index.count(entity, initial_item) + index.count(initial_item, entity)
}

/// Minimum occurrence a candidate needs to be kept.
pub fn occurrence_cutoff(threshold: f64, max_occurrence: u32) -> u32 {
    // Tolerance keeps products like 0.1 * 30 from rounding up past the integer.
    (threshold * f64::from(max_occurrence) - 1e-9)
        .ceil()
        .max(0.0) as u32
}

struct Path {
    source: Iri,
    occurrence: u32,
    ldsd: Option<f64>,
}

impl Path {
    // Smaller source distance first (missing distances last), then larger
    // occurrence, then source IRI.
    fn better_than(&self, other: &Path) -> bool {
        let key = |p: &Path| {
            (
                p.ldsd.unwrap_or(f64::INFINITY),
                std::cmp::Reverse(p.occurrence),
            )
        };
        let (a, b) = (key(self), key(other));
        match a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => self.source < other.source,
        }
    }
}

/// Builds the candidate set for `initial_item`, ordered by entity IRI.
///
/// Annotated candidates are the entities annotated in the seed's reviews and
/// the items whose reviews mention the seed. With discovery enabled the set
/// also holds entities discovered from the seed, entities the seed was
/// discovered from, and entities discovered through the seed's annotated
/// entities. The last group inherits the occurrence of the annotated entity;
/// the first two are linked to the seed itself and take the seed's maximum
/// occurrence. Candidates below the occurrence cutoff are dropped.
pub fn generate_candidates(
    initial_item: &Iri,
    index: &OccurrenceIndex,
    discoveries: &DiscoveryStore,
    config: &RecConfig,
) -> Vec<Candidate> {
    let mut annotated: BTreeMap<Iri, u32> = BTreeMap::new();
    let mut mentioned_in_seed = Vec::new();
    for (e, _) in index.entities_of(initial_item) {
        if e != initial_item {
            annotated.insert(e.clone(), occur(e, initial_item, index));
            mentioned_in_seed.push(e);
        }
    }
    for (i, _) in index.items_mentioning(initial_item) {
        if i != initial_item {
            annotated.insert(i.clone(), occur(i, initial_item, index));
        }
    }

    let max_occurrence = index.max_for_item(initial_item);
    let mut discovered: BTreeMap<Iri, Path> = BTreeMap::new();
    if config.use_discovered {
        let mut offer = |entity: &Iri, path: Path| {
            if entity == initial_item || annotated.contains_key(entity) {
                return;
            }
            match discovered.get(entity) {
                Some(current) if !path.better_than(current) => {}
                _ => {
                    discovered.insert(entity.clone(), path);
                }
            }
        };
        let seed_occurrence = max_occurrence.max(1);
        for (d, ldsd) in discoveries.discovered_from(initial_item) {
            offer(
                d,
                Path {
                    source: initial_item.clone(),
                    occurrence: seed_occurrence,
                    ldsd: *ldsd,
                },
            );
        }
        for (s, ldsd) in discoveries.sources_of(initial_item) {
            offer(
                s,
                Path {
                    source: initial_item.clone(),
                    occurrence: seed_occurrence,
                    ldsd: *ldsd,
                },
            );
        }
        for a in mentioned_in_seed {
            let occurrence = annotated[a];
            for (d, ldsd) in discoveries.discovered_from(a) {
                offer(
                    d,
                    Path {
                        source: a.clone(),
                        occurrence,
                        ldsd: *ldsd,
                    },
                );
            }
        }
    }

    let cutoff = occurrence_cutoff(config.occurrence_threshold, max_occurrence);
    let mut out: Vec<Candidate> = annotated
        .into_iter()
        .filter(|(_, occ)| *occ >= cutoff)
        .map(|(e, occ)| Candidate::annotated(e, occ))
        .chain(
            discovered
                .into_iter()
                .filter(|(_, p)| p.occurrence >= cutoff)
                .map(|(e, p)| Candidate::discovered(e, p.occurrence, p.source, p.ldsd)),
        )
        .collect();
    out.sort_by(|a, b| a.entity.cmp(&b.entity));
    out
}
