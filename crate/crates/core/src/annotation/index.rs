use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;
use std::path::Path;

use super::{AnnotationError, Mention, Review};
use crate::kg::Iri;
use crate::tsv;

/// Review-level occurrence counts of entities per reviewed item.
///
/// `count(e, i)` is the number of distinct reviews of item `i` in which `e`
/// was annotated. Zero counts are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OccurrenceIndex {
    by_item: BTreeMap<Iri, BTreeMap<Iri, u32>>,
    by_entity: BTreeMap<Iri, BTreeMap<Iri, u32>>,
    max_per_item: BTreeMap<Iri, u32>,
}

impl OccurrenceIndex {
    /// Builds an index from `(entity, item, count)` triples. Duplicate pairs
    /// are rejected; zero counts are skipped.
    pub fn from_counts(
        counts: impl IntoIterator<Item = (Iri, Iri, u32)>,
    ) -> Result<Self, AnnotationError> {
        let mut idx = OccurrenceIndex::default();
        for (n, (entity, item, count)) in counts.into_iter().enumerate() {
            if count == 0 {
                continue;
            }
            if idx.count(&entity, &item) > 0 {
                return Err(AnnotationError::Parse {
                    line: n + 1,
                    msg: format!("duplicate index entry ({entity}, {item})"),
                });
            }
            idx.insert(entity, item, count);
        }
        Ok(idx)
    }

    fn insert(&mut self, entity: Iri, item: Iri, count: u32) {
        debug_assert!(count > 0);
        self.by_item
            .entry(item.clone())
            .or_default()
            .insert(entity.clone(), count);
        self.by_entity
            .entry(entity)
            .or_default()
            .insert(item.clone(), count);
        let m = self.max_per_item.entry(item).or_insert(0);
        *m = (*m).max(count);
    }

    pub fn count(&self, entity: &Iri, item: &Iri) -> u32 {
        self.by_item
            .get(item)
            .and_then(|es| es.get(entity))
            .copied()
            .unwrap_or(0)
    }

    /// Largest count among the entities of `item`; 0 for unknown items.
    pub fn max_for_item(&self, item: &Iri) -> u32 {
        self.max_per_item.get(item).copied().unwrap_or(0)
    }

    /// Entities annotated in the reviews of `item`, with counts.
    pub fn entities_of<'a>(&'a self, item: &Iri) -> impl Iterator<Item = (&'a Iri, u32)> + 'a {
        self.by_item
            .get(item)
            .into_iter()
            .flatten()
            .map(|(e, c)| (e, *c))
    }

    /// Items in whose reviews `entity` was annotated, with counts.
    pub fn items_mentioning<'a>(
        &'a self,
        entity: &Iri,
    ) -> impl Iterator<Item = (&'a Iri, u32)> + 'a {
        self.by_entity
            .get(entity)
            .into_iter()
            .flatten()
            .map(|(i, c)| (i, *c))
    }

    pub fn items(&self) -> impl Iterator<Item = &Iri> {
        self.by_item.keys()
    }

    pub fn entities(&self) -> impl Iterator<Item = &Iri> {
        self.by_entity.keys()
    }

    /// All `(entity, item, count)` entries, ordered by item then entity.
    pub fn iter(&self) -> impl Iterator<Item = (&Iri, &Iri, u32)> {
        self.by_item
            .iter()
            .flat_map(|(item, es)| es.iter().map(move |(e, c)| (e, item, *c)))
    }

    /// Number of `(entity, item)` entries.
    pub fn len(&self) -> usize {
        self.by_item.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_item.is_empty()
    }

    /// `entity<TAB>item<TAB>count`, ordered by item then entity.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (e, i, c) in self.iter() {
            writeln!(out, "{e}\t{i}\t{c}").unwrap();
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<Self, AnnotationError> {
        let rows = tsv::parse_rows(text, 3).map_err(AnnotationError::from_tsv)?;
        let mut entries = Vec::with_capacity(rows.len());
        for (line, f) in rows {
            let err = |msg: String| AnnotationError::Parse { line, msg };
            let e = Iri::new(&f[0]).map_err(|e| err(e.to_string()))?;
            let i = Iri::new(&f[1]).map_err(|e| err(e.to_string()))?;
            let c: u32 = f[2]
                .parse()
                .map_err(|_| err(format!("bad count {:?}", f[2])))?;
            entries.push((e, i, c));
        }
        Self::from_counts(entries)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AnnotationError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| AnnotationError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_tsv(&text)
    }
}

/// Counts, for every `(entity, item)`, the distinct reviews of the item that
/// mention the entity.
pub fn build_index(
    reviews: &[Review],
    mentions: &[Mention],
) -> Result<OccurrenceIndex, AnnotationError> {
    let item_of: HashMap<&str, &Iri> = reviews
        .iter()
        .map(|r| (r.review_id.as_str(), &r.item))
        .collect();
    let mut distinct: BTreeSet<(&Iri, &str)> = BTreeSet::new();
    for m in mentions {
        if !item_of.contains_key(m.review_id.as_str()) {
            return Err(AnnotationError::DanglingReview(m.review_id.clone()));
        }
        distinct.insert((&m.entity, m.review_id.as_str()));
    }
    let mut counts: BTreeMap<(&Iri, &Iri), u32> = BTreeMap::new();
    for (entity, review_id) in distinct {
        *counts.entry((entity, item_of[review_id])).or_default() += 1;
    }
    let mut idx = OccurrenceIndex::default();
    for ((e, i), c) in counts {
        idx.insert(e.clone(), i.clone(), c);
    }
    Ok(idx)
}
