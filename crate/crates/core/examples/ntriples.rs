//! Parse N-Triples, print the canonical serialization, and use set operations.

use coevo::ntriples::parse_str;
use coevo::serialize_ntriples;

const OLD: &str = r#"
<http://dbpedia.org/resource/Adrian_Sanders> <http://dbpedia.org/property/spouse> "Alison Sanders" .
<http://dbpedia.org/resource/Adrian_Sanders> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://dbpedia.org/ontology/Politician> .
# comments and blank lines are ignored
<http://dbpedia.org/resource/Adrian_Sanders> <http://xmlns.com/foaf/0.1/name> "Adrian Sanders"@en .
"#;

const NEW: &str = r#"
<http://dbpedia.org/resource/Adrian_Sanders> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://dbpedia.org/ontology/Politician> .
<http://dbpedia.org/resource/Adrian_Sanders> <http://dbpedia.org/property/birthYear> "1959"^^<http://www.w3.org/2001/XMLSchema#gYear> .
"#;

fn main() {
    let old = parse_str(OLD).expect("valid N-Triples");
    let new = parse_str(NEW).expect("valid N-Triples");

    print!("canonical form of the old version:\n{}", serialize_ntriples(&old));
    println!();
    println!("shared:  {}", old.intersect(&new).len());
    println!("union:   {}", old.union(&new).len());
    println!("removed: {}", old.minus(&new).len());

    match parse_str("<http://ex.org/s> <http://ex.org/p> .") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected malformed input: {e}"),
    }
}
