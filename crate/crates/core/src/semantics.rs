//! Property semantics used to decide whether two differing objects of the
//! same subject and predicate actually conflict.
//!
//! A [`SchemaGraph`] holds the lightweight taxonomy (reflexive-transitive
//! `rdfs:subClassOf` closure, symmetric `owl:disjointWith`) together with
//! `owl:sameAs` equivalence classes and `owl:differentFrom` pairs. Property
//! characteristics live in [`PropertyProfile`]s collected in a [`Profiles`]
//! registry.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::rdf::{Dataset, Iri, Term};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PropertyKind {
    DatatypeProperty,
    ObjectProperty,
    #[default]
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SpecialRole {
    #[default]
    None,
    TypeAssertion,
    LabelLike,
    SameAsLike,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyProfile {
    pub property: Iri,
    pub kind: PropertyKind,
    pub functional: bool,
    pub role: SpecialRole,
}

impl PropertyProfile {
    /// The profile assumed for a property nothing is known about: values
    /// coexist. `rdf:type`, `owl:sameAs` and `rdfs:label` get their fixed
    /// roles.
    pub fn default_for(property: &Iri) -> Self {
        let role = match property.as_str() {
            vocab::RDF_TYPE => SpecialRole::TypeAssertion,
            vocab::OWL_SAME_AS => SpecialRole::SameAsLike,
            vocab::RDFS_LABEL => SpecialRole::LabelLike,
            _ => SpecialRole::None,
        };
        PropertyProfile {
            property: property.clone(),
            kind: PropertyKind::Unknown,
            functional: false,
            role,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("the role of {property} is fixed to {fixed:?}")]
    FixedRole { property: Iri, fixed: SpecialRole },
}

fn fixed_role(property: &Iri) -> Option<SpecialRole> {
    match property.as_str() {
        vocab::RDF_TYPE => Some(SpecialRole::TypeAssertion),
        vocab::OWL_SAME_AS => Some(SpecialRole::SameAsLike),
        _ => None,
    }
}

/// Property profiles keyed by IRI, falling back to
/// [`PropertyProfile::default_for`].
#[derive(Debug, Clone, Default)]
pub struct Profiles {
    entries: HashMap<Iri, PropertyProfile>,
}

impl Profiles {
    pub fn new() -> Self {
        Self::default()
    }

    /// Seeds profiles from the functional and datatype/object property
    /// declarations found in a schema.
    pub fn from_schema(schema: &SchemaGraph) -> Self {
        let mut profiles = Profiles::new();
        let declared = schema
            .functional_properties
            .iter()
            .chain(schema.property_kinds.keys());
        for property in declared {
            let mut profile = profiles.get(property);
            profile.functional = schema.functional_properties.contains(property);
            if let Some(kind) = schema.property_kinds.get(property) {
                profile.kind = *kind;
            }
            profiles.entries.insert(property.clone(), profile);
        }
        profiles
    }

    pub fn get(&self, property: &Iri) -> PropertyProfile {
        self.entries
            .get(property)
            .cloned()
            .unwrap_or_else(|| PropertyProfile::default_for(property))
    }

    /// Installs a profile. `rdf:type` and `owl:sameAs` keep their roles.
    pub fn set(&mut self, profile: PropertyProfile) -> Result<(), ProfileError> {
        if let Some(fixed) = fixed_role(&profile.property) {
            if profile.role != fixed {
                return Err(ProfileError::FixedRole {
                    property: profile.property,
                    fixed,
                });
            }
        }
        self.entries.insert(profile.property.clone(), profile);
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("label similarity threshold {0} is outside [0, 1]")]
pub struct ThresholdError(pub f64);

/// Label similarity settings. The measure is always normalized Levenshtein.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityConfig {
    threshold: f64,
    per_property: HashMap<Iri, f64>,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        SimilarityConfig {
            threshold: 0.5,
            per_property: HashMap::new(),
        }
    }
}

fn check_threshold(value: f64) -> Result<f64, ThresholdError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(ThresholdError(value))
    }
}

impl SimilarityConfig {
    pub fn new(threshold: f64) -> Result<Self, ThresholdError> {
        Ok(SimilarityConfig {
            threshold: check_threshold(threshold)?,
            per_property: HashMap::new(),
        })
    }

    pub fn with_property_threshold(
        mut self,
        property: Iri,
        threshold: f64,
    ) -> Result<Self, ThresholdError> {
        self.per_property
            .insert(property, check_threshold(threshold)?);
        Ok(self)
    }

    pub fn default_threshold(&self) -> f64 {
        self.threshold
    }

    pub fn threshold_for(&self, property: &Iri) -> f64 {
        self.per_property
            .get(property)
            .copied()
            .unwrap_or(self.threshold)
    }
}

/// Schema knowledge extracted from an N-Triples schema file.
#[derive(Debug, Clone, Default)]
pub struct SchemaGraph {
    /// Every class mentioned, mapped to its reflexive-transitive superclasses.
    ancestors: HashMap<Iri, BTreeSet<Iri>>,
    disjoint: HashSet<(Iri, Iri)>,
    functional_properties: HashSet<Iri>,
    property_kinds: HashMap<Iri, PropertyKind>,
    same_as_repr: HashMap<Term, Term>,
    different_from: HashSet<(Term, Term)>,
}

impl SchemaGraph {
    pub fn is_empty(&self) -> bool {
        self.ancestors.is_empty()
            && self.functional_properties.is_empty()
            && self.property_kinds.is_empty()
            && self.same_as_repr.is_empty()
            && self.different_from.is_empty()
    }

    /// Reflexive-transitive superclasses of a class, empty for unknown classes.
    pub fn superclasses(&self, class: &Iri) -> BTreeSet<Iri> {
        self.ancestors.get(class).cloned().unwrap_or_default()
    }

    pub fn is_subclass_of(&self, sub: &Iri, sup: &Iri) -> bool {
        self.ancestors
            .get(sub)
            .is_some_and(|anc| anc.contains(sup))
    }

    pub fn is_functional(&self, property: &Iri) -> bool {
        self.functional_properties.contains(property)
    }

    pub fn same_as(&self, a: &Term, b: &Term) -> bool {
        a == b || self.representative(a) == self.representative(b)
    }

    /// True when `owl:differentFrom` links the sameAs classes of `a` and `b`.
    pub fn known_different(&self, a: &Term, b: &Term) -> bool {
        let (ra, rb) = (self.representative(a), self.representative(b));
        self.different_from.contains(&(ra.clone(), rb.clone()))
            || self.different_from.contains(&(rb, ra))
    }

    fn representative(&self, t: &Term) -> Term {
        self.same_as_repr.get(t).cloned().unwrap_or_else(|| t.clone())
    }
}

/// Extracts subclass, disjointness, property typing, sameAs and differentFrom
/// assertions. Everything else is ignored.
pub fn load_schema(d: &Dataset) -> SchemaGraph {
    let mut parents: HashMap<Iri, Vec<Iri>> = HashMap::new();
    let mut classes: BTreeSet<Iri> = BTreeSet::new();
    let mut disjoint = HashSet::new();
    let mut functional = HashSet::new();
    let mut kinds = HashMap::new();
    let mut same_as_pairs = Vec::new();
    let mut different_pairs = Vec::new();

    for t in d.iter() {
        let s = t.subject();
        let o = t.object();
        match t.predicate().as_str() {
            vocab::RDFS_SUBCLASS_OF => {
                if let (Some(sub), Some(sup)) = (s.as_iri(), o.as_iri()) {
                    classes.insert(sub.clone());
                    classes.insert(sup.clone());
                    parents.entry(sub.clone()).or_default().push(sup.clone());
                }
            }
            vocab::OWL_DISJOINT_WITH => {
                if let (Some(a), Some(b)) = (s.as_iri(), o.as_iri()) {
                    classes.insert(a.clone());
                    classes.insert(b.clone());
                    disjoint.insert((a.clone(), b.clone()));
                    disjoint.insert((b.clone(), a.clone()));
                }
            }
            vocab::RDF_TYPE => {
                let Some(property) = s.as_iri() else { continue };
                match o.as_iri().map(Iri::as_str) {
                    Some(vocab::OWL_FUNCTIONAL_PROPERTY) => {
                        functional.insert(property.clone());
                    }
                    Some(vocab::OWL_DATATYPE_PROPERTY) => {
                        kinds.insert(property.clone(), PropertyKind::DatatypeProperty);
                    }
                    Some(vocab::OWL_OBJECT_PROPERTY) => {
                        kinds.insert(property.clone(), PropertyKind::ObjectProperty);
                    }
                    _ => {}
                }
            }
            vocab::OWL_SAME_AS => same_as_pairs.push((s.clone(), o.clone())),
            vocab::OWL_DIFFERENT_FROM => different_pairs.push((s.clone(), o.clone())),
            _ => {}
        }
    }

    let ancestors = classes
        .iter()
        .map(|class| {
            let mut seen = BTreeSet::new();
            let mut stack = vec![class.clone()];
            while let Some(c) = stack.pop() {
                if seen.insert(c.clone()) {
                    if let Some(ps) = parents.get(&c) {
                        stack.extend(ps.iter().cloned());
                    }
                }
            }
            (class.clone(), seen)
        })
        .collect();

    let same_as_repr = same_as_classes(&same_as_pairs);
    let repr = |t: &Term| same_as_repr.get(t).cloned().unwrap_or_else(|| t.clone());
    let different_from = different_pairs
        .iter()
        .map(|(a, b)| (repr(a), repr(b)))
        .collect();

    SchemaGraph {
        ancestors,
        disjoint,
        functional_properties: functional,
        property_kinds: kinds,
        same_as_repr,
        different_from,
    }
}

/// Union-find over sameAs pairs; maps every member to the smallest term of
/// its class.
fn same_as_classes(pairs: &[(Term, Term)]) -> HashMap<Term, Term> {
    let mut parent: HashMap<Term, Term> = HashMap::new();
    fn find(parent: &mut HashMap<Term, Term>, t: &Term) -> Term {
        let mut root = t.clone();
        while let Some(p) = parent.get(&root) {
            if *p == root {
                break;
            }
            root = p.clone();
        }
        let mut cur = t.clone();
        while cur != root {
            let next = parent.get(&cur).cloned().unwrap_or_else(|| root.clone());
            parent.insert(cur, root.clone());
            cur = next;
        }
        root
    }
    for (a, b) in pairs {
        parent.entry(a.clone()).or_insert_with(|| a.clone());
        parent.entry(b.clone()).or_insert_with(|| b.clone());
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent.insert(hi, lo);
        }
    }
    let members: Vec<Term> = parent.keys().cloned().collect();
    members
        .into_iter()
        .map(|m| {
            let r = find(&mut parent, &m);
            (m, r)
        })
        .collect()
}

/// True iff some superclass of `c1` is declared disjoint with some
/// superclass of `c2`. A class is never disjoint with itself, and classes
/// absent from the schema are never disjoint.
pub fn classes_disjoint(g: &SchemaGraph, c1: &Iri, c2: &Iri) -> bool {
    if c1 == c2 {
        return false;
    }
    let (Some(a1), Some(a2)) = (g.ancestors.get(c1), g.ancestors.get(c2)) else {
        return false;
    };
    a1.iter()
        .any(|x| a2.iter().any(|y| g.disjoint.contains(&(x.clone(), y.clone()))))
}

/// `1 - levenshtein(a, b) / max(|a|, |b|)` over Unicode scalar values; two
/// empty strings are identical.
pub fn normalized_label_similarity(a: &str, b: &str) -> f64 {
    strsim::normalized_levenshtein(a, b)
}

/// Decides whether two distinct objects of `(s, p, ·)` conflict, given the
/// characteristics of `p`.
pub fn objects_conflicting(
    profile: &PropertyProfile,
    o1: &Term,
    o2: &Term,
    schema: &SchemaGraph,
    similarity: &SimilarityConfig,
) -> bool {
    if o1 == o2 {
        return false;
    }
    match profile.role {
        SpecialRole::TypeAssertion => match (o1.as_iri(), o2.as_iri()) {
            (Some(c1), Some(c2)) => classes_disjoint(schema, c1, c2),
            _ => false,
        },
        SpecialRole::SameAsLike => false,
        SpecialRole::LabelLike => {
            normalized_label_similarity(o1.text(), o2.text())
                >= similarity.threshold_for(&profile.property)
        }
        SpecialRole::None if !profile.functional => false,
        SpecialRole::None => {
            let object_valued = match profile.kind {
                PropertyKind::ObjectProperty => true,
                PropertyKind::DatatypeProperty => false,
                PropertyKind::Unknown => !o1.is_literal() && !o2.is_literal(),
            };
            if object_valued {
                schema.known_different(o1, o2) || !schema.same_as(o1, o2)
            } else {
                true
            }
        }
    }
}
