use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use super::{Direction, Graph, Iri, KgError};
use crate::tsv;

/// One-to-one correspondence between resources of two knowledge bases.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MappingTable {
    entries: BTreeMap<Iri, Iri>,
}

impl MappingTable {
    pub fn get(&self, source: &Iri) -> Option<&Iri> {
        self.entries.get(source)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Iri, &Iri)> {
        self.entries.iter()
    }

    /// Reads a `source<TAB>target` file and builds the table from it.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, KgError> {
        let rows = tsv::read_rows(path.as_ref(), 2).map_err(KgError::from_tsv)?;
        let mut raw = Vec::with_capacity(rows.len());
        for (line, fields) in rows {
            let parse = |s: &str| {
                Iri::new(s).map_err(|e| KgError::Parse {
                    line,
                    msg: e.to_string(),
                })
            };
            raw.push((parse(&fields[0])?, parse(&fields[1])?));
        }
        Ok(map_entities(raw))
    }
}

/// Keeps sources with exactly one distinct target; ambiguous sources are
/// dropped entirely.
pub fn map_entities(raw: impl IntoIterator<Item = (Iri, Iri)>) -> MappingTable {
    let mut targets: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for (s, t) in raw {
        targets.entry(s).or_default().insert(t);
    }
    let entries = targets
        .into_iter()
        .filter(|(_, ts)| ts.len() == 1)
        .map(|(s, ts)| (s, ts.into_iter().next().expect("one target")))
        .collect();
    MappingTable { entries }
}

/// Types of `entity` via `type_property`, optionally restricted to IRIs
/// starting with `namespace_filter`.
pub fn fetch_types(
    graph: &Graph,
    entity: &Iri,
    type_property: &Iri,
    namespace_filter: Option<&str>,
) -> BTreeSet<Iri> {
    graph
        .neighbors(entity, type_property, Direction::Direct)
        .filter(|t| namespace_filter.is_none_or(|ns| t.as_str().starts_with(ns)))
        .cloned()
        .collect()
}
