use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{annotate_review, AnnotationError, Gazetteer, Mention, Review};
use crate::kg::Iri;

/// Turns a review into the entities it mentions.
pub trait Annotator: Sync {
    fn annotate(&self, review: &Review) -> Result<Vec<Mention>, AnnotationError>;
}

impl Annotator for Gazetteer {
    fn annotate(&self, review: &Review) -> Result<Vec<Mention>, AnnotationError> {
        Ok(annotate_review(review, self))
    }
}

/// A remote entity-linking service returning the IRIs found in a text.
pub trait EntityLinkingService: Sync {
    fn link(&self, text: &str) -> Result<Vec<Iri>, String>;
}

/// Adapts an [`EntityLinkingService`] to the [`Annotator`] interface.
pub struct ServiceAnnotator<S>(pub S);

impl<S: EntityLinkingService> Annotator for ServiceAnnotator<S> {
    fn annotate(&self, review: &Review) -> Result<Vec<Mention>, AnnotationError> {
        let found = self
            .0
            .link(&review.text)
            .map_err(|msg| AnnotationError::Service {
                review_id: review.review_id.clone(),
                msg,
            })?;
        let mut seen = BTreeSet::new();
        Ok(found
            .into_iter()
            .filter(|e| seen.insert(e.clone()))
            .map(|entity| Mention {
                entity,
                review_id: review.review_id.clone(),
            })
            .collect())
    }
}

/// Annotates a whole corpus. Pre-annotated reviews keep their entities; the
/// rest go through `annotator`. Output follows corpus order.
pub fn annotate_corpus(
    reviews: &[Review],
    annotator: Option<&dyn Annotator>,
) -> Result<Vec<Mention>, AnnotationError> {
    let per_review: Vec<Vec<Mention>> = reviews
        .par_iter()
        .map(|r| match (&r.entities, annotator) {
            (Some(es), _) => {
                let mut seen = BTreeSet::new();
                Ok(es
                    .iter()
                    .filter(|e| seen.insert(*e))
                    .map(|e| Mention {
                        entity: e.clone(),
                        review_id: r.review_id.clone(),
                    })
                    .collect())
            }
            (None, Some(a)) => a.annotate(r),
            (None, None) => Err(AnnotationError::MissingAnnotator(r.review_id.clone())),
        })
        .collect::<Result<_, _>>()?;
    Ok(per_review.into_iter().flatten().collect())
}

/// Keeps only mentions whose entity satisfies `has_type`.
pub fn retain_typed(mentions: &mut Vec<Mention>, has_type: impl Fn(&Iri) -> bool) {
    mentions.retain(|m| has_type(&m.entity));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(&format!("ex:{s}")).unwrap()
    }

    struct Fixed(Vec<Iri>);

    impl EntityLinkingService for Fixed {
        fn link(&self, _text: &str) -> Result<Vec<Iri>, String> {
            Ok(self.0.clone())
        }
    }

    fn review(id: &str, text: &str, entities: Option<Vec<Iri>>) -> Review {
        Review {
            review_id: id.into(),
            item: iri("m"),
            text: text.into(),
            entities,
        }
    }

    #[test]
    fn service_adapter_dedups() {
        let a = ServiceAnnotator(Fixed(vec![iri("a"), iri("b"), iri("a")]));
        let ms = a.annotate(&review("r", "", None)).unwrap();
        assert_eq!(ms.len(), 2);
    }

    #[test]
    fn pre_annotated_bypass_annotator() {
        let reviews = vec![review("r1", "", Some(vec![iri("x"), iri("x")]))];
        let ms = annotate_corpus(&reviews, None).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].entity, iri("x"));
    }

    #[test]
    fn missing_annotator() {
        let reviews = vec![review("r1", "kubrick", None)];
        assert!(matches!(
            annotate_corpus(&reviews, None),
            Err(AnnotationError::MissingAnnotator(_))
        ));
        let g = Gazetteer::new([("kubrick", iri("K"))]).unwrap();
        assert_eq!(annotate_corpus(&reviews, Some(&g)).unwrap().len(), 1);
    }

    #[test]
    fn type_filter() {
        let mut ms = vec![
            Mention {
                entity: iri("a"),
                review_id: "r".into(),
            },
            Mention {
                entity: iri("b"),
                review_id: "r".into(),
            },
        ];
        retain_typed(&mut ms, |e| *e == iri("b"));
        assert_eq!(ms.len(), 1);
    }
}
