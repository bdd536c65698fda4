//! The four synchronization strategies on the motivating example.

use std::path::Path;

use coevo::cli::read_dataset;
use coevo::engine::Strategy;
use coevo::{
    load_changeset_folder, merge_changesets, serialize_ntriples, synchronize, Iri, PolicyFunction,
    Profiles, PropertyKind, PropertyProfile, ResolutionPolicy, SimilarityConfig, SpecialRole,
    StrategyAssignment, SyncContext,
};

fn context(name_threshold: f64) -> SyncContext {
    let by = Iri::new("http://dbpedia.org/property/birthYear").unwrap();
    let name = Iri::new("http://xmlns.com/foaf/0.1/name").unwrap();
    let mut profiles = Profiles::new();
    profiles
        .set(PropertyProfile {
            property: by,
            kind: PropertyKind::DatatypeProperty,
            functional: true,
            role: SpecialRole::None,
        })
        .unwrap();
    profiles
        .set(PropertyProfile {
            property: name.clone(),
            kind: PropertyKind::DatatypeProperty,
            functional: false,
            role: SpecialRole::LabelLike,
        })
        .unwrap();
    SyncContext {
        profiles,
        similarity: SimilarityConfig::default()
            .with_property_threshold(name, name_threshold)
            .unwrap(),
        ..SyncContext::default()
    }
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/example1");
    let source = read_dataset(&dir.join("source.nt")).unwrap();
    let target = read_dataset(&dir.join("target.nt")).unwrap();
    let changes = |name: &str| {
        merge_changesets(&load_changeset_folder(&dir.join(name)).unwrap()).to_changeset()
    };
    let (ds, dt) = (changes("source-changes"), changes("target-changes"));

    let by = Iri::new("http://dbpedia.org/property/birthYear").unwrap();
    let runs = [
        (StrategyAssignment::uniform(Strategy::I), context(0.5)),
        (StrategyAssignment::uniform(Strategy::II), context(0.5)),
        // the two foaf:name spellings conflict at this threshold
        (StrategyAssignment::uniform(Strategy::III), context(0.05)),
        (
            StrategyAssignment::uniform(Strategy::IV)
                .with_policy(by, ResolutionPolicy::new(PolicyFunction::Any).with_seed(1)),
            context(0.5),
        ),
    ];
    for (assign, ctx) in &runs {
        let out = synchronize(&source, &target, &ds, &dt, assign, ctx).unwrap();
        println!(
            "strategy {}: target has {} triples ({} conflicting)",
            assign.label(),
            out.target_after.len(),
            out.stats.conflicting_triples.unwrap_or(0)
        );
        print!("{}", serialize_ntriples(&out.target_after));
        println!();
    }
}
