//! Property semantics: when do two objects of the same subject and
//! predicate actually conflict?

use coevo::ntriples::parse_str;
use coevo::{
    classes_disjoint, load_schema, normalized_label_similarity, objects_conflicting, Iri, Literal,
    Profiles, SimilarityConfig, Term,
};

const SCHEMA: &str = r#"
<http://ex.org/Person> <http://www.w3.org/2002/07/owl#disjointWith> <http://ex.org/Place> .
<http://ex.org/Athlete> <http://www.w3.org/2000/01/rdf-schema#subClassOf> <http://ex.org/Person> .
<http://dbpedia.org/property/birthYear> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#FunctionalProperty> .
<http://dbpedia.org/property/birthYear> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#DatatypeProperty> .
"#;

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

fn main() {
    let schema = load_schema(&parse_str(SCHEMA).unwrap());
    let profiles = Profiles::from_schema(&schema);
    let sim = SimilarityConfig::default();

    let (athlete, place) = (iri("http://ex.org/Athlete"), iri("http://ex.org/Place"));
    println!("Athlete disjoint with Place: {}", classes_disjoint(&schema, &athlete, &place));

    let ty = profiles.get(&iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"));
    println!(
        "rdf:type Athlete vs Place conflicts: {}",
        objects_conflicting(&ty, &Term::Iri(athlete), &Term::Iri(place), &schema, &sim)
    );

    let by = profiles.get(&iri("http://dbpedia.org/property/birthYear"));
    let year = Term::Literal(Literal::string("1959"));
    let date = Term::Literal(Literal::typed(
        "1959-01-01",
        iri("http://www.w3.org/2001/XMLSchema#date"),
    ));
    println!(
        "functional birthYear \"1959\" vs 1959-01-01 conflicts: {}",
        objects_conflicting(&by, &year, &date, &schema, &sim)
    );

    let (a, b) = ("Adrian Sanders", "Sanders, Adrian");
    let s = normalized_label_similarity(a, b);
    let label = profiles.get(&iri("http://www.w3.org/2000/01/rdf-schema#label"));
    for threshold in [0.05, 0.5] {
        let cfg = SimilarityConfig::new(threshold).unwrap();
        println!(
            "labels {a:?} / {b:?}: similarity {s:.4}, threshold {threshold}: conflicting {}",
            objects_conflicting(
                &label,
                &Term::Literal(Literal::string(a)),
                &Term::Literal(Literal::string(b)),
                &schema,
                &cfg
            )
        );
    }
}
