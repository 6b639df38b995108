use std::fmt;
use std::sync::Arc;

use super::KgError;

/// An absolute IRI.
///
/// Cheap to clone: the string is shared. Angle brackets are accepted on input
/// and stripped, so `<http://x/a>` and `http://x/a` are the same IRI.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(raw: &str) -> Result<Self, KgError> {
        let s = raw.trim();
        let s = match s.strip_prefix('<') {
            Some(inner) => inner
                .strip_suffix('>')
                .ok_or_else(|| KgError::InvalidIri(raw.to_string()))?,
            None => s,
        };
        if s.is_empty() || s.chars().any(char::is_whitespace) || !has_scheme(s) {
            return Err(KgError::InvalidIri(raw.to_string()));
        }
        Ok(Iri(Arc::from(s)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

// scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." ) ":"
fn has_scheme(s: &str) -> bool {
    let Some((scheme, _)) = s.split_once(':') else {
        return false;
    };
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl std::str::FromStr for Iri {
    type Err = KgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Iri::new(s)
    }
}
