use std::collections::HashSet;
use std::path::Path;

use serde::Deserialize;

use super::AnnotationError;
use crate::kg::Iri;

#[derive(Debug, Clone, PartialEq)]
pub struct Review {
    pub review_id: String,
    pub item: Iri,
    pub text: String,
    /// Entities supplied with the corpus. When present the annotator is not run.
    pub entities: Option<Vec<Iri>>,
}

/// An entity identified in one review.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mention {
    pub entity: Iri,
    pub review_id: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReview {
    review_id: String,
    item: String,
    #[serde(default)]
    text: Option<String>,
    #[serde(default)]
    entities: Option<Vec<String>>,
}

/// Parses a JSON-lines corpus. Blank lines are ignored.
pub fn parse_reviews(text: &str) -> Result<Vec<Review>, AnnotationError> {
    let mut seen = HashSet::new();
    let mut reviews = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: String| AnnotationError::Parse { line: idx + 1, msg };
        let raw: RawReview = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        if raw.text.is_none() && raw.entities.is_none() {
            return Err(err(
                "review carries neither \"text\" nor \"entities\"".into()
            ));
        }
        let item = Iri::new(&raw.item).map_err(|e| err(e.to_string()))?;
        let entities = raw
            .entities
            .map(|es| {
                es.iter()
                    .map(|e| Iri::new(e).map_err(|e| err(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        if !seen.insert(raw.review_id.clone()) {
            return Err(AnnotationError::DuplicateReview(raw.review_id));
        }
        reviews.push(Review {
            review_id: raw.review_id,
            item,
            text: raw.text.unwrap_or_default(),
            entities,
        });
    }
    Ok(reviews)
}

pub fn ingest_reviews(path: impl AsRef<Path>) -> Result<Vec<Review>, AnnotationError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| AnnotationError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_reviews(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_lines_in_order() {
        let text = r#"{"review_id":"r1","item":"ex:m1","text":"good"}
{"review_id":"r2","item":"ex:m2","text":"bad"}
"#;
        let rs = parse_reviews(text).unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[0].review_id, "r1");
        assert_eq!(rs[1].item, Iri::new("ex:m2").unwrap());
    }

    #[test]
    fn pre_annotated() {
        let rs =
            parse_reviews(r#"{"review_id":"r1","item":"ex:m1","entities":["<ex:e1>"]}"#).unwrap();
        assert_eq!(rs[0].text, "");
        assert_eq!(rs[0].entities, Some(vec![Iri::new("ex:e1").unwrap()]));
    }

    #[test]
    fn duplicate_id() {
        let text = r#"{"review_id":"r1","item":"ex:m1","text":"a"}
{"review_id":"r1","item":"ex:m2","text":"b"}"#;
        assert!(matches!(
            parse_reviews(text),
            Err(AnnotationError::DuplicateReview(id)) if id == "r1"
        ));
    }

    #[test]
    fn malformed_line_number() {
        let text = "{\"review_id\":\"r1\",\"item\":\"ex:m1\",\"text\":\"a\"}\n\nnot json\n";
        assert!(matches!(
            parse_reviews(text),
            Err(AnnotationError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_reviews(r#"{"review_id":"r1","item":"ex:m1"}"#),
            Err(AnnotationError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_reviews(r#"{"review_id":"r1","item":"m1","text":""}"#),
            Err(AnnotationError::Parse { line: 1, .. })
        ));
    }
}
