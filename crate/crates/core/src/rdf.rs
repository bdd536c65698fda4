//! RDF terms, triples and the set-valued [`Dataset`] container.
//!
//! Term equality is purely syntactic: two literals are equal only when their
//! lexical form, datatype and language tag all match. `"1959"` and
//! `"1959"^^xsd:integer` are different terms.

use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid IRI {0:?}: must be non-empty and contain no whitespace or angle brackets")]
    InvalidIri(String),
    #[error("invalid blank node label {0:?}")]
    InvalidBlankNode(String),
    #[error("language tag {0:?} is only allowed on rdf:langString literals")]
    LanguageTagMismatch(String),
    #[error("a literal cannot be the subject of a triple")]
    LiteralSubject,
}

/// An absolute IRI.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, ModelError> {
        let value = value.as_ref();
        if value.is_empty()
            || value
                .chars()
                .any(|c| c.is_whitespace() || c == '<' || c == '>')
        {
            return Err(ModelError::InvalidIri(value.to_string()));
        }
        Ok(Iri(Arc::from(value)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

/// A literal value: lexical form, datatype IRI and an optional language tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Iri,
    language: Option<Arc<str>>,
}

impl Literal {
    /// A plain `xsd:string` literal.
    pub fn string(lexical: impl AsRef<str>) -> Self {
        Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: vocab::xsd_string(),
            language: None,
        }
    }

    pub fn typed(lexical: impl AsRef<str>, datatype: Iri) -> Self {
        Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype,
            language: None,
        }
    }

    /// A language-tagged string. Tags are lowercased.
    pub fn lang(lexical: impl AsRef<str>, tag: impl AsRef<str>) -> Self {
        Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: vocab::rdf_lang_string(),
            language: Some(Arc::from(tag.as_ref().to_ascii_lowercase())),
        }
    }

    pub fn new(
        lexical: impl AsRef<str>,
        datatype: Iri,
        language: Option<&str>,
    ) -> Result<Self, ModelError> {
        match language {
            Some(tag) if datatype.as_str() == vocab::RDF_LANG_STRING => {
                Ok(Literal::lang(lexical, tag))
            }
            Some(tag) => Err(ModelError::LanguageTagMismatch(tag.to_string())),
            None if datatype.as_str() == vocab::RDF_LANG_STRING => Err(
                ModelError::LanguageTagMismatch(String::new()),
            ),
            None => Ok(Literal::typed(lexical, datatype)),
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    /// `xsd:string` or `rdf:langString`.
    pub fn is_string(&self) -> bool {
        let dt = self.datatype.as_str();
        dt == vocab::XSD_STRING || dt == vocab::RDF_LANG_STRING
    }
}

/// An RDF node: IRI, blank node or literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    BlankNode(Arc<str>),
    Literal(Literal),
}

impl Term {
    pub fn iri(value: impl AsRef<str>) -> Result<Self, ModelError> {
        Iri::new(value).map(Term::Iri)
    }

    pub fn blank(label: impl AsRef<str>) -> Result<Self, ModelError> {
        let label = label.as_ref();
        let valid = !label.is_empty()
            && label
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
            && !label.ends_with('.');
        if !valid {
            return Err(ModelError::InvalidBlankNode(label.to_string()));
        }
        Ok(Term::BlankNode(Arc::from(label)))
    }

    pub fn literal(lit: Literal) -> Self {
        Term::Literal(lit)
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    /// The string compared by label-like similarity: the lexical form of a
    /// literal, the IRI text, or the blank node label.
    pub fn text(&self) -> &str {
        match self {
            Term::Iri(iri) => iri.as_str(),
            Term::BlankNode(label) => label,
            Term::Literal(lit) => lit.lexical(),
        }
    }

    /// The N-Triples form of this term.
    pub fn to_ntriples(&self) -> String {
        self.to_string()
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "{iri}"),
            Term::BlankNode(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => {
                f.write_str("\"")?;
                write_escaped(f, lit.lexical())?;
                f.write_str("\"")?;
                if let Some(tag) = lit.language() {
                    write!(f, "@{tag}")
                } else if lit.datatype().as_str() != vocab::XSD_STRING {
                    write!(f, "^^{}", lit.datatype())
                } else {
                    Ok(())
                }
            }
        }
    }
}

fn write_escaped(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\r' => f.write_str("\\r")?,
            '\t' => f.write_str("\\t")?,
            '\u{08}' => f.write_str("\\b")?,
            '\u{0C}' => f.write_str("\\f")?,
            c if (c as u32) < 0x20 || c == '\u{7F}' => write!(f, "\\u{:04X}", c as u32)?,
            c => write!(f, "{c}")?,
        }
    }
    Ok(())
}

/// A subject-predicate-object statement. The subject is never a literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Iri, object: Term) -> Result<Self, ModelError> {
        if subject.is_literal() {
            return Err(ModelError::LiteralSubject);
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn with_object(&self, object: Term) -> Triple {
        Triple {
            subject: self.subject.clone(),
            predicate: self.predicate.clone(),
            object,
        }
    }

    pub fn to_ntriples(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// One version of an evolving dataset: a finite set of triples.
///
/// Equality ignores the version label.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    triples: BTreeSet<Triple>,
    version_label: Option<String>,
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Dataset {}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.version_label = Some(label.into());
        self
    }

    pub fn version_label(&self) -> Option<&str> {
        self.version_label.as_deref()
    }

    /// Returns `false` if the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        self.triples.remove(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Triple> {
        self.triples.iter()
    }

    // The set operations walk both sorted sets in step and bulk-build the
    // result from the sorted output.
    pub fn union(&self, other: &Dataset) -> Dataset {
        if other.is_empty() {
            return Dataset::from_set(self.triples.clone());
        }
        self.triples.union(&other.triples).cloned().collect()
    }

    pub fn minus(&self, other: &Dataset) -> Dataset {
        if other.is_empty() {
            return Dataset::from_set(self.triples.clone());
        }
        self.triples.difference(&other.triples).cloned().collect()
    }

    pub fn intersect(&self, other: &Dataset) -> Dataset {
        self.triples.intersection(&other.triples).cloned().collect()
    }

    /// Number of triples of `self` absent from `other`.
    pub fn count_missing_from(&self, other: &Dataset) -> usize {
        self.triples.difference(&other.triples).count()
    }

    pub fn is_subset(&self, other: &Dataset) -> bool {
        self.triples.is_subset(&other.triples)
    }

    /// The triples whose predicate satisfies `keep`.
    pub fn filter_predicates(&self, mut keep: impl FnMut(&Iri) -> bool) -> Dataset {
        self.iter()
            .filter(|t| keep(t.predicate()))
            .cloned()
            .collect()
    }

    /// The distinct predicates used in this dataset.
    pub fn predicates(&self) -> BTreeSet<Iri> {
        self.iter().map(|t| t.predicate().clone()).collect()
    }

    fn from_set(triples: BTreeSet<Triple>) -> Self {
        Dataset {
            triples,
            version_label: None,
        }
    }
}

impl FromIterator<Triple> for Dataset {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Dataset::from_set(iter.into_iter().collect())
    }
}

impl Extend<Triple> for Dataset {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter);
    }
}

impl IntoIterator for Dataset {
    type Item = Triple;
    type IntoIter = btree_set::IntoIter<Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.into_iter()
    }
}

impl<'a> IntoIterator for &'a Dataset {
    type Item = &'a Triple;
    type IntoIter = btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

pub fn set_union(a: &Dataset, b: &Dataset) -> Dataset {
    a.union(b)
}

pub fn set_minus(a: &Dataset, b: &Dataset) -> Dataset {
    a.minus(b)
}

pub fn set_intersect(a: &Dataset, b: &Dataset) -> Dataset {
    a.intersect(b)
}

/// Compares two terms by their serialized N-Triples form. This is the
/// tie-breaking order used wherever a deterministic choice is needed.
pub fn canonical_cmp(a: &Term, b: &Term) -> std::cmp::Ordering {
    a.to_string().cmp(&b.to_string())
}
