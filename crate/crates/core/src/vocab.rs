//! Well-known IRIs.

use crate::rdf::Iri;

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";
pub const DBO: &str = "http://dbpedia.org/ontology/";
pub const DBP: &str = "http://dbpedia.org/property/";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
pub const OWL_DIFFERENT_FROM: &str = "http://www.w3.org/2002/07/owl#differentFrom";
pub const OWL_DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
pub const OWL_FUNCTIONAL_PROPERTY: &str = "http://www.w3.org/2002/07/owl#FunctionalProperty";
pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";

fn iri(s: &str) -> Iri {
    Iri::new(s).expect("vocabulary IRIs are valid")
}

pub fn rdf_type() -> Iri {
    iri(RDF_TYPE)
}

pub fn rdf_lang_string() -> Iri {
    iri(RDF_LANG_STRING)
}

pub fn xsd_string() -> Iri {
    iri(XSD_STRING)
}

pub fn xsd_decimal() -> Iri {
    iri(XSD_DECIMAL)
}

pub fn owl_same_as() -> Iri {
    iri(OWL_SAME_AS)
}

pub fn rdfs_label() -> Iri {
    iri(RDFS_LABEL)
}

/// `xsd:<local>`
pub fn xsd(local: &str) -> Iri {
    iri(&format!("{XSD}{local}"))
}
