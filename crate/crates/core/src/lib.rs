//! Co-evolution of replicated RDF datasets.
//!
//! A source dataset and a replica (target) sliced from it both evolve over a
//! timeframe. This crate computes and ingests their changesets, detects and
//! classifies conflicting values per `(subject, predicate)` using property
//! semantics, resolves them with configurable fusion policies, and applies one
//! of four synchronization strategies globally or per predicate:
//!
//! | Strategy | Effect |
//! |----------|--------|
//! | I   | target follows the source and drops its local changes |
//! | II  | each side keeps its own changes |
//! | III | both sides merge all changes and drop conflicting triples |
//! | IV  | both sides merge all changes and keep resolved values |
//!
//! Quality of the outcome is reported as completeness, consistency and
//! conciseness ratios. See the crate's `examples/` directory for one runnable
//! program per capability.

pub mod changeset;
pub mod cli;
pub mod conflict;
pub mod engine;
pub mod metrics;
pub mod ntriples;
pub mod rdf;
pub mod resolution;
pub mod semantics;
pub mod vocab;

pub use changeset::{
    apply, diff, load_changeset_folder, merge_changesets, normalize, Changeset, NetChangeset,
};
pub use conflict::{
    classify_case, detect_conflicts, detect_conflicts_between, group_by_key, CandidateValue, CaseTag, ConflictRecord,
    EvolutionCase, Origin,
};
pub use engine::{
    cdr, run_scenarios, synchronize, Strategy, StrategyAssignment, SyncContext, SyncOutcome,
};
pub use metrics::{completeness, conciseness, consistency, QualityReport, Ratio};
pub use ntriples::{parse_ntriples, serialize_ntriples};
pub use rdf::{set_intersect, set_minus, set_union, Dataset, Iri, Literal, Term, Triple};
pub use resolution::{auto_select_policy, resolve, PolicyFunction, Resolution, ResolutionPolicy};
pub use semantics::{
    classes_disjoint, load_schema, normalized_label_similarity, objects_conflicting, Profiles,
    PropertyKind, PropertyProfile, SchemaGraph, SimilarityConfig, SpecialRole,
};
