//! TSV persistence for discovered entities and entity types.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::Path;

use super::{DiscoveryRecord, Iri, KgError};
use crate::tsv;

/// `discovered<TAB>source<TAB>ldsd`, with `NA` when no distance was computed.
pub fn format_discoveries(records: &[DiscoveryRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let ldsd = match r.ldsd {
            Some(v) => v.to_string(),
            None => "NA".to_string(),
        };
        writeln!(out, "{}\t{}\t{}", r.discovered, r.source, ldsd).unwrap();
    }
    out
}

pub fn parse_discoveries(text: &str) -> Result<Vec<DiscoveryRecord>, KgError> {
    let rows = tsv::parse_rows(text, 3).map_err(KgError::from_tsv)?;
    rows.into_iter()
        .map(|(line, f)| {
            let err = |msg: String| KgError::Parse { line, msg };
            let discovered = Iri::new(&f[0]).map_err(|e| err(e.to_string()))?;
            let source = Iri::new(&f[1]).map_err(|e| err(e.to_string()))?;
            let ldsd = match f[2].as_str() {
                "NA" => None,
                s => Some(
                    s.parse::<f64>()
                        .map_err(|_| err(format!("bad LDSD value {s:?}")))?,
                ),
            };
            DiscoveryRecord::new(discovered, source, ldsd).map_err(|e| err(e.to_string()))
        })
        .collect()
}

pub fn read_discoveries(path: impl AsRef<Path>) -> Result<Vec<DiscoveryRecord>, KgError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| KgError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_discoveries(&text)
}

/// `entity<TAB>type`, one row per pair, in input order.
pub fn format_types<'a>(types: impl IntoIterator<Item = (&'a Iri, &'a BTreeSet<Iri>)>) -> String {
    let mut out = String::new();
    for (entity, ts) in types {
        for t in ts {
            writeln!(out, "{entity}\t{t}").unwrap();
        }
    }
    out
}
