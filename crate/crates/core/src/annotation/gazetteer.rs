use std::collections::{BTreeSet, HashMap};
use std::ops::Range;
use std::path::Path;

use super::{AnnotationError, Mention, Review};
use crate::kg::Iri;
use crate::tsv;

/// Surface-form dictionary used by the default annotator.
///
/// Surface forms and review text are compared as sequences of lowercase
/// alphanumeric words, so matching ignores case and punctuation and only ever
/// starts or ends at a word boundary.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    forms: HashMap<Vec<String>, Iri>,
    longest: usize,
}

/// A matched span of review text, in byte offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanMatch {
    pub span: Range<usize>,
    pub entity: Iri,
}

impl Gazetteer {
    pub fn new<S: AsRef<str>>(
        entries: impl IntoIterator<Item = (S, Iri)>,
    ) -> Result<Self, AnnotationError> {
        let mut g = Gazetteer::default();
        for (i, (surface, iri)) in entries.into_iter().enumerate() {
            g.add(surface.as_ref(), iri, i + 1)?;
        }
        Ok(g)
    }

    /// Reads a `surface_form<TAB>entity_iri` file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, AnnotationError> {
        let rows = tsv::read_rows(path.as_ref(), 2).map_err(AnnotationError::from_tsv)?;
        let mut g = Gazetteer::default();
        for (line, f) in rows {
            let iri = Iri::new(&f[1]).map_err(|e| AnnotationError::Parse {
                line,
                msg: e.to_string(),
            })?;
            g.add(&f[0], iri, line)?;
        }
        Ok(g)
    }

    fn add(&mut self, surface: &str, iri: Iri, line: usize) -> Result<(), AnnotationError> {
        let key: Vec<String> = words(surface).map(|(_, w)| w).collect();
        if key.is_empty() {
            return Err(AnnotationError::Parse {
                line,
                msg: format!("surface form {surface:?} has no words"),
            });
        }
        if let Some(prev) = self.forms.get(&key) {
            if *prev != iri {
                return Err(AnnotationError::Parse {
                    line,
                    msg: format!("surface form {surface:?} maps to both {prev} and {iri}"),
                });
            }
        }
        self.longest = self.longest.max(key.len());
        self.forms.insert(key, iri);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Leftmost-longest, non-overlapping scan of `text`.
    pub fn scan(&self, text: &str) -> Vec<SpanMatch> {
        let tokens: Vec<(Range<usize>, String)> = words(text).collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            let max = self.longest.min(tokens.len() - i);
            let hit = (1..=max).rev().find_map(|len| {
                let key: Vec<String> = tokens[i..i + len].iter().map(|(_, w)| w.clone()).collect();
                self.forms.get(&key).map(|iri| (len, iri))
            });
            match hit {
                Some((len, iri)) => {
                    out.push(SpanMatch {
                        span: tokens[i].0.start..tokens[i + len - 1].0.end,
                        entity: iri.clone(),
                    });
                    i += len;
                }
                None => i += 1,
            }
        }
        out
    }
}

/// Mentions found in the review text, one per entity, in order of first
/// appearance.
pub fn annotate_review(review: &Review, gazetteer: &Gazetteer) -> Vec<Mention> {
    let mut seen = BTreeSet::new();
    gazetteer
        .scan(&review.text)
        .into_iter()
        .filter(|m| seen.insert(m.entity.clone()))
        .map(|m| Mention {
            entity: m.entity,
            review_id: review.review_id.clone(),
        })
        .collect()
}

fn words(text: &str) -> impl Iterator<Item = (Range<usize>, String)> + '_ {
    let mut chars = text.char_indices().peekable();
    std::iter::from_fn(move || {
        while let Some(&(_, c)) = chars.peek() {
            if c.is_alphanumeric() {
                break;
            }
            chars.next();
        }
        let (start, _) = *chars.peek()?;
        let mut end = start;
        let mut word = String::new();
        while let Some(&(i, c)) = chars.peek() {
            if !c.is_alphanumeric() {
                break;
            }
            word.extend(c.to_lowercase());
            end = i + c.len_utf8();
            chars.next();
        }
        Some((start..end, word))
    })
}
