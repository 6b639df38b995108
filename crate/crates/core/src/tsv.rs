//! Tab-separated file helpers shared by the stores.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum TsvError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: expected {expected} tab-separated columns, found {found}")]
    Columns {
        line: usize,
        expected: usize,
        found: usize,
    },
}

/// Splits text into rows of exactly `columns` fields. Blank lines are skipped;
/// each row carries its 1-based line number.
pub fn parse_rows(text: &str, columns: usize) -> Result<Vec<(usize, Vec<String>)>, TsvError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<String> = line.split('\t').map(|f| f.trim().to_string()).collect();
        if fields.len() != columns {
            return Err(TsvError::Columns {
                line: idx + 1,
                expected: columns,
                found: fields.len(),
            });
        }
        rows.push((idx + 1, fields));
    }
    Ok(rows)
}

pub fn read_rows(path: &Path, columns: usize) -> Result<Vec<(usize, Vec<String>)>, TsvError> {
    let text = fs::read_to_string(path).map_err(|source| TsvError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_rows(&text, columns)
}

/// Writes `contents` to a temporary file next to `path`, then renames it into
/// place.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
