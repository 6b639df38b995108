use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use super::{Iri, KgError};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Iri,
    pub property: Iri,
    pub object: Iri,
}

impl Triple {
    pub fn new(subject: Iri, property: Iri, object: Iri) -> Self {
        Triple {
            subject,
            property,
            object,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Follow `(node, property, ?o)`.
    Direct,
    /// Follow `(?s, property, node)`.
    Inverse,
}

type Adjacency = BTreeMap<Iri, BTreeMap<Iri, BTreeSet<Iri>>>;

/// In-memory triple store with a forward (subject → property → objects) and
/// an inverse (object → property → subjects) index.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    forward: Adjacency,
    inverse: Adjacency,
}

/// Counters collected while reading a triple file.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub triples: usize,
    pub skipped_literals: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a triple; returns `false` if it was already present.
    pub fn insert(&mut self, t: Triple) -> bool {
        if self.triples.contains(&t) {
            return false;
        }
        self.forward
            .entry(t.subject.clone())
            .or_default()
            .entry(t.property.clone())
            .or_default()
            .insert(t.object.clone());
        self.inverse
            .entry(t.object.clone())
            .or_default()
            .entry(t.property.clone())
            .or_default()
            .insert(t.subject.clone());
        self.triples.insert(t)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }

    /// Neighbors of `node` through `property`, in IRI order. Unknown nodes
    /// yield nothing.
    pub fn neighbors<'a>(
        &'a self,
        node: &Iri,
        property: &Iri,
        direction: Direction,
    ) -> impl Iterator<Item = &'a Iri> + 'a {
        let index = match direction {
            Direction::Direct => &self.forward,
            Direction::Inverse => &self.inverse,
        };
        index
            .get(node)
            .and_then(|by_prop| by_prop.get(property))
            .into_iter()
            .flatten()
    }

    /// Outgoing edges of `node`, grouped by property.
    pub(crate) fn outgoing(&self, node: &Iri) -> Option<&BTreeMap<Iri, BTreeSet<Iri>>> {
        self.forward.get(node)
    }

    /// Incoming edges of `node`, grouped by property.
    pub(crate) fn incoming(&self, node: &Iri) -> Option<&BTreeMap<Iri, BTreeSet<Iri>>> {
        self.inverse.get(node)
    }

    /// Parses triple-file text. See [`load_graph`] for the accepted format.
    pub fn parse(text: &str) -> Result<(Graph, LoadReport), KgError> {
        let mut graph = Graph::new();
        let mut report = LoadReport::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match parse_line(line).map_err(|msg| KgError::Parse { line: idx + 1, msg })? {
                Some(t) => {
                    graph.insert(t);
                }
                None => report.skipped_literals += 1,
            }
        }
        report.triples = graph.len();
        Ok((graph, report))
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

/// Loads a triple file: one `<s> <p> <o> .` statement per line, `#` comments
/// and blank lines ignored. Statements with a literal object are skipped and
/// counted in the report.
pub fn load_graph(path: impl AsRef<Path>) -> Result<(Graph, LoadReport), KgError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| KgError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Graph::parse(&text)
}

// Ok(None) marks a literal-object statement.
fn parse_line(line: &str) -> Result<Option<Triple>, String> {
    let (subject, rest) = take_iri(line)?;
    let (property, rest) = take_iri(rest)?;
    let rest = rest.trim_start();
    if rest.starts_with('"') {
        if !rest.trim_end().ends_with('.') {
            return Err("statement not terminated by '.'".into());
        }
        return Ok(None);
    }
    let (object, rest) = take_iri(rest)?;
    if rest.trim() != "." {
        return Err(format!(
            "expected '.' after object, found {:?}",
            rest.trim()
        ));
    }
    Ok(Some(Triple::new(subject, property, object)))
}

fn take_iri(s: &str) -> Result<(Iri, &str), String> {
    let s = s.trim_start();
    if !s.starts_with('<') {
        return Err(format!("expected '<' at {:?}", truncate(s)));
    }
    let end = s.find('>').ok_or_else(|| "unterminated IRI".to_string())?;
    let iri = Iri::new(&s[..=end]).map_err(|e| e.to_string())?;
    Ok((iri, &s[end + 1..]))
}

fn truncate(s: &str) -> &str {
    match s.char_indices().nth(24) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}
