//! Group both sides' changes by (subject, predicate), classify each key and
//! print the conflict report.

use std::path::Path;

use coevo::cli::read_dataset;
use coevo::conflict::conflicts_tsv;
use coevo::{
    detect_conflicts, load_changeset_folder, merge_changesets, Iri, Profiles, PropertyKind,
    PropertyProfile, SchemaGraph, SimilarityConfig, SpecialRole,
};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/example1");
    let target = read_dataset(&dir.join("target.nt")).unwrap();
    let net = |name: &str| merge_changesets(&load_changeset_folder(&dir.join(name)).unwrap());

    let mut profiles = Profiles::new();
    profiles
        .set(PropertyProfile {
            property: Iri::new("http://dbpedia.org/property/birthYear").unwrap(),
            kind: PropertyKind::DatatypeProperty,
            functional: true,
            role: SpecialRole::None,
        })
        .unwrap();

    let records = detect_conflicts(
        &net("source-changes"),
        &net("target-changes"),
        &target,
        &profiles,
        &SchemaGraph::default(),
        &SimilarityConfig::default(),
    );
    print!("{}", conflicts_tsv(&records));
    for r in records.iter().filter(|r| r.semantically_conflicting) {
        println!("\n{} is {}; conflicting pairs:", r.predicate, r.case_tag);
        for (a, b) in &r.conflicting_pairs {
            println!("  {a}  vs  {b}");
        }
    }
}
