//! Completeness, consistency and conciseness on small hand-made datasets.

use coevo::conflict::detect_conflicts;
use coevo::{
    completeness, conciseness, consistency, Changeset, Dataset, Iri, Literal, Profiles,
    PropertyKind, SchemaGraph, SimilarityConfig, Term, Triple,
};

fn t(s: &str, p: &str, o: &str) -> Triple {
    Triple::new(
        Term::iri(format!("http://ex.org/{s}")).unwrap(),
        Iri::new(format!("http://ex.org/{p}")).unwrap(),
        Term::Literal(Literal::string(o)),
    )
    .unwrap()
}

fn main() {
    let initial: Dataset = (0..8).map(|i| t(&format!("s{i}"), "p", "v")).collect();
    let ds = Changeset::new([t("s8", "p", "v"), t("s0", "age", "40")].into_iter().collect(), Dataset::new());
    let dt = Changeset::new([t("s0", "age", "41")].into_iter().collect(), Dataset::new());

    let everything = initial.union(&ds.added).union(&dt.added);
    let synced = everything.minus(&[t("s8", "p", "v")].into_iter().collect());

    println!("completeness w.r.t. source changes: {}", completeness(&synced, &initial, &ds));
    println!("completeness w.r.t. target changes: {}", completeness(&synced, &initial, &dt));

    let mut profiles = Profiles::new();
    let mut age = profiles.get(&Iri::new("http://ex.org/age").unwrap());
    age.functional = true;
    age.kind = PropertyKind::DatatypeProperty;
    profiles.set(age).unwrap();
    let records = detect_conflicts(
        &ds.normalize(),
        &dt.normalize(),
        &initial,
        &profiles,
        &SchemaGraph::default(),
        &SimilarityConfig::default(),
    );
    let c = consistency(&synced, &initial, &ds, &dt, &records);
    println!("consistency with both ages kept: {c} ({}%)", c.percent());

    let before = conciseness(initial.iter().chain(ds.added.iter()).chain(dt.added.iter()).chain(initial.iter().take(2)));
    println!("conciseness of a collection with two repeats: {before} ({}%)", before.percent());
}
