//! Conflict detection and classification.
//!
//! Candidate values are gathered per `(subject, predicate)` key from both
//! changesets and the target's state at the start of the timeframe. A key is
//! only analysed when at least one side added a value for it. Each key is
//! matched against the evolution cases I–VII and checked pairwise with
//! [`objects_conflicting`].
//!
//! Value sets used below, per key: `A_S`/`D_S` source added/deleted,
//! `A_T`/`D_T` target added/deleted, `E` existing in the target, and the
//! target tombstones (added and deleted by the target within the timeframe).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::changeset::NetChangeset;
use crate::rdf::{canonical_cmp, Dataset, Iri, Term, Triple};
use crate::semantics::{objects_conflicting, Profiles, SchemaGraph, SimilarityConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Existing,
    SourceAdded,
    SourceDeleted,
    TargetAdded,
    TargetDeleted,
    TargetTombstone,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Existing => "Existing",
            Origin::SourceAdded => "SourceAdded",
            Origin::SourceDeleted => "SourceDeleted",
            Origin::TargetAdded => "TargetAdded",
            Origin::TargetDeleted => "TargetDeleted",
            Origin::TargetTombstone => "TargetTombstone",
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateValue {
    pub value: Term,
    pub origin: Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EvolutionCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl EvolutionCase {
    /// Cases whose outcome is fixed without a resolution policy.
    pub fn is_forced(self) -> bool {
        matches!(self, EvolutionCase::I | EvolutionCase::II | EvolutionCase::III)
    }

    /// Most specific first; the first matching case wins.
    pub const PRECEDENCE: [EvolutionCase; 7] = [
        EvolutionCase::I,
        EvolutionCase::II,
        EvolutionCase::III,
        EvolutionCase::V,
        EvolutionCase::VI,
        EvolutionCase::VII,
        EvolutionCase::IV,
    ];
}

impl fmt::Display for EvolutionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EvolutionCase::I => "CaseI",
            EvolutionCase::II => "CaseII",
            EvolutionCase::III => "CaseIII",
            EvolutionCase::IV => "CaseIV",
            EvolutionCase::V => "CaseV",
            EvolutionCase::VI => "CaseVI",
            EvolutionCase::VII => "CaseVII",
        };
        f.write_str(s)
    }
}

/// The case chosen for a key, plus any other cases its values also matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub case: EvolutionCase,
    pub also_matched: Vec<EvolutionCase>,
}

impl Classification {
    pub fn is_ambiguous(&self) -> bool {
        !self.also_matched.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Case(EvolutionCase),
    /// A case pattern matched but no pair of surviving values conflicts.
    NoConflict,
    /// The key was touched by additions that match no case pattern.
    AutoKeepAll,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Case(c) => write!(f, "{c}"),
            CaseTag::NoConflict => f.write_str("NoConflict"),
            CaseTag::AutoKeepAll => f.write_str("AutoKeepAll"),
        }
    }
}

/// The candidate values of one key split by origin.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValueSets {
    pub source_added: BTreeSet<Term>,
    pub source_deleted: BTreeSet<Term>,
    pub target_added: BTreeSet<Term>,
    pub target_deleted: BTreeSet<Term>,
    pub existing: BTreeSet<Term>,
    pub tombstones: BTreeSet<Term>,
}

impl ValueSets {
    pub fn from_candidates(candidates: &[CandidateValue]) -> Self {
        let mut sets = ValueSets::default();
        for c in candidates {
            let slot = match c.origin {
                Origin::Existing => &mut sets.existing,
                Origin::SourceAdded => &mut sets.source_added,
                Origin::SourceDeleted => &mut sets.source_deleted,
                Origin::TargetAdded => &mut sets.target_added,
                Origin::TargetDeleted => &mut sets.target_deleted,
                Origin::TargetTombstone => &mut sets.tombstones,
            };
            slot.insert(c.value.clone());
        }
        sets
    }

    fn deleted(&self, v: &Term) -> bool {
        self.source_deleted.contains(v) || self.target_deleted.contains(v)
    }

    /// Values present after merging both changesets into the target state:
    /// `((E \ (D_S ∪ D_T)) ∪ A_S ∪ A_T) \ tombstones`.
    pub fn survivors(&self) -> BTreeSet<Term> {
        self.existing
            .iter()
            .filter(|v| !self.deleted(v))
            .chain(&self.source_added)
            .chain(&self.target_added)
            .filter(|v| !self.tombstones.contains(v))
            .cloned()
            .collect()
    }

    /// Values of the key in the source after its own changes, starting from
    /// `source_existing`.
    fn source_state<'a>(&'a self, source_existing: &'a BTreeSet<Term>) -> BTreeSet<&'a Term> {
        source_existing
            .iter()
            .filter(|v| !self.source_deleted.contains(v))
            .chain(&self.source_added)
            .collect()
    }

    /// Values of the key in the target after its own changes.
    fn target_state(&self) -> BTreeSet<&Term> {
        self.existing
            .iter()
            .filter(|v| !self.target_deleted.contains(v) && !self.tombstones.contains(v))
            .chain(&self.target_added)
            .collect()
    }

    /// Ordered pairs `(o1, o2)` forming a potential conflict: `o1` is in one
    /// side's evolved state, `o2` is touched by the other side's changeset and
    /// absent from that state. The source is assumed to start from the same
    /// values as the target.
    pub fn potential_pairs(&self) -> Vec<(Term, Term)> {
        self.potential_pairs_from(&self.existing)
    }

    /// Like [`ValueSets::potential_pairs`], with the source's values of the
    /// key at the start of the timeframe given explicitly.
    pub fn potential_pairs_from(&self, source_existing: &BTreeSet<Term>) -> Vec<(Term, Term)> {
        let source_state = self.source_state(source_existing);
        let target_state = self.target_state();
        let target_touched: BTreeSet<&Term> = self
            .target_added
            .iter()
            .chain(&self.target_deleted)
            .chain(&self.tombstones)
            .collect();
        let source_touched: BTreeSet<&Term> = self
            .source_added
            .iter()
            .chain(&self.source_deleted)
            .collect();
        let mut pairs = BTreeSet::new();
        for (state, touched) in [
            (&source_state, &target_touched),
            (&target_state, &source_touched),
        ] {
            for o1 in state.iter() {
                for o2 in touched.iter() {
                    if o1 != o2 && !state.contains(o2) {
                        pairs.insert(((*o1).clone(), (*o2).clone()));
                    }
                }
            }
        }
        pairs.into_iter().collect()
    }
}

/// Groups every triple touching a key with additions on either side.
/// Source tombstones count as source deletions.
pub fn group_by_key(
    source: &NetChangeset,
    target: &NetChangeset,
    target_state: &Dataset,
) -> BTreeMap<(Term, Iri), Vec<CandidateValue>> {
    let mut groups: HashMap<(Term, Iri), BTreeSet<(Origin, Term)>> = HashMap::new();
    let key = |t: &Triple| (t.subject().clone(), t.predicate().clone());
    for (dataset, origin) in [
        (&source.changes.added, Origin::SourceAdded),
        (&target.changes.added, Origin::TargetAdded),
    ] {
        for t in dataset.iter() {
            groups
                .entry(key(t))
                .or_default()
                .insert((origin, t.object().clone()));
        }
    }
    if groups.is_empty() {
        return BTreeMap::new();
    }
    let others = [
        (&source.changes.deleted, Origin::SourceDeleted),
        (&source.tombstones, Origin::SourceDeleted),
        (&target.changes.deleted, Origin::TargetDeleted),
        (&target.tombstones, Origin::TargetTombstone),
        (target_state, Origin::Existing),
    ];
    for (dataset, origin) in others {
        for t in dataset.iter() {
            if let Some(values) = groups.get_mut(&key(t)) {
                values.insert((origin, t.object().clone()));
            }
        }
    }
    groups
        .into_iter()
        .map(|(k, values)| {
            let mut candidates: Vec<CandidateValue> = values
                .into_iter()
                .map(|(origin, value)| CandidateValue { value, origin })
                .collect();
            candidates.sort_by(|a, b| {
                a.origin
                    .cmp(&b.origin)
                    .then_with(|| canonical_cmp(&a.value, &b.value))
            });
            (k, candidates)
        })
        .collect()
}

fn exists<'a>(
    a: impl IntoIterator<Item = &'a Term> + Clone,
    b: impl IntoIterator<Item = &'a Term> + Clone,
    ok: impl Fn(&Term, &Term) -> bool,
) -> bool {
    a.into_iter()
        .any(|x| b.clone().into_iter().any(|y| x != y && ok(x, y)))
}

fn matches_case(case: EvolutionCase, s: &ValueSets) -> bool {
    // tombstoned values are out of play for classification
    let live = |v: &&Term| !s.tombstones.contains(*v);
    let a_s: Vec<&Term> = s.source_added.iter().filter(live).collect();
    let e: Vec<&Term> = s.existing.iter().filter(live).collect();
    let a_t: Vec<&Term> = s.target_added.iter().collect();
    let d_s = &s.source_deleted;
    let d_t = &s.target_deleted;
    let both_deleted: Vec<&Term> = d_s.intersection(d_t).collect();
    let any = |_: &Term, _: &Term| true;
    match case {
        EvolutionCase::I => {
            a_t.is_empty()
                && exists(
                    a_s.iter().copied(),
                    d_t.iter().filter(|v| !d_s.contains(*v)),
                    |o1, _| !d_t.contains(o1),
                )
        }
        EvolutionCase::II => {
            a_t.is_empty() && exists(a_s.iter().copied(), both_deleted.iter().copied(), any)
        }
        EvolutionCase::III => {
            a_s.is_empty() && exists(both_deleted.iter().copied(), a_t.iter().copied(), any)
        }
        EvolutionCase::V => both_deleted.iter().any(|o3| {
            exists(a_s.iter().copied(), a_t.iter().copied(), |o2, o1| {
                o3 != &o1 && o3 != &o2
            })
        }),
        EvolutionCase::VI => exists(
            a_s.iter().copied().filter(|v| d_t.contains(*v)),
            a_t.iter().copied(),
            any,
        ),
        EvolutionCase::VII => exists(
            d_s.iter().filter(|v| s.target_added.contains(*v)),
            a_s.iter().copied(),
            any,
        ),
        EvolutionCase::IV => {
            let undeleted = |v: &&Term| !s.deleted(v);
            let a_s: Vec<&Term> = a_s.iter().copied().filter(undeleted).collect();
            let a_t: Vec<&Term> = a_t.iter().copied().filter(undeleted).collect();
            let e: Vec<&Term> = e.iter().copied().filter(undeleted).collect();
            exists(
                a_s.iter().copied(),
                a_t.iter().copied().chain(e.iter().copied()),
                any,
            ) || exists(
                a_t.iter().copied(),
                a_s.iter().copied().chain(e.iter().copied()),
                any,
            )
        }
    }
}

/// Matches a key's candidates against the evolution cases. Returns `None`
/// when no case applies.
pub fn classify_case(candidates: &[CandidateValue]) -> Option<Classification> {
    classify_sets(&ValueSets::from_candidates(candidates))
}

pub fn classify_sets(sets: &ValueSets) -> Option<Classification> {
    let mut matched = EvolutionCase::PRECEDENCE
        .into_iter()
        .filter(|&c| matches_case(c, sets));
    let case = matched.next()?;
    Some(Classification {
        case,
        also_matched: matched.collect(),
    })
}

/// One analysed `(subject, predicate)` key.
#[derive(Debug, Clone, PartialEq)]
pub struct ConflictRecord {
    pub subject: Term,
    pub predicate: Iri,
    pub candidates: Vec<CandidateValue>,
    pub case_tag: CaseTag,
    /// The matched case pattern, also kept when the values turn out not to
    /// conflict.
    pub classification: Option<Classification>,
    pub semantically_conflicting: bool,
    /// Values surviving the plain merge, canonically ordered.
    pub survivors: Vec<Term>,
    /// Surviving pairs that are potential conflicts and semantically conflict.
    pub conflicting_pairs: Vec<(Term, Term)>,
}

impl ConflictRecord {
    pub fn value_sets(&self) -> ValueSets {
        ValueSets::from_candidates(&self.candidates)
    }

    pub fn triple_for(&self, object: &Term) -> Triple {
        Triple::new(self.subject.clone(), self.predicate.clone(), object.clone())
            .expect("conflict record subjects come from triples")
    }

    /// Triples of all surviving values.
    pub fn survivor_triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.survivors.iter().map(|v| self.triple_for(v))
    }

    /// Candidates other than target tombstones.
    pub fn surviving_candidates(&self) -> impl Iterator<Item = &CandidateValue> {
        self.candidates
            .iter()
            .filter(|c| self.survivors.contains(&c.value) && c.origin != Origin::TargetTombstone)
    }
}

/// Builds one record per key touched by additions, sorted by the serialized
/// `(subject, predicate)`.
pub fn detect_conflicts(
    source: &NetChangeset,
    target: &NetChangeset,
    target_state: &Dataset,
    profiles: &Profiles,
    schema: &SchemaGraph,
    similarity: &SimilarityConfig,
) -> Vec<ConflictRecord> {
    detect_conflicts_between(
        source,
        target,
        target_state,
        target_state,
        profiles,
        schema,
        similarity,
    )
}

/// Like [`detect_conflicts`] for a source whose values may differ from the
/// target's at the start of the timeframe: potential conflicts are checked
/// against the source's own evolved values. Candidates and cases still use
/// the target's state.
pub fn detect_conflicts_between(
    source: &NetChangeset,
    target: &NetChangeset,
    source_state: &Dataset,
    target_state: &Dataset,
    profiles: &Profiles,
    schema: &SchemaGraph,
    similarity: &SimilarityConfig,
) -> Vec<ConflictRecord> {
    let groups = group_by_key(source, target, target_state);
    let mut source_values: HashMap<(Term, Iri), BTreeSet<Term>> = HashMap::new();
    let same_state = std::ptr::eq(source_state, target_state) || source_state == target_state;
    if !same_state {
        for t in source_state.iter() {
            let key = (t.subject().clone(), t.predicate().clone());
            if groups.contains_key(&key) {
                source_values.entry(key).or_default().insert(t.object().clone());
            }
        }
    }
    let mut records: Vec<ConflictRecord> = groups
        .into_iter()
        .map(|((subject, predicate), candidates)| {
            let sets = ValueSets::from_candidates(&candidates);
            let survivors: BTreeSet<Term> = sets.survivors();
            let profile = profiles.get(&predicate);
            let pairs = if same_state {
                sets.potential_pairs()
            } else {
                let empty = BTreeSet::new();
                let key = (subject.clone(), predicate.clone());
                sets.potential_pairs_from(source_values.get(&key).unwrap_or(&empty))
            };
            let conflicting_pairs: Vec<(Term, Term)> = pairs
                .into_iter()
                .filter(|(a, b)| survivors.contains(a) && survivors.contains(b))
                .filter(|(a, b)| objects_conflicting(&profile, a, b, schema, similarity))
                .collect();
            let semantically_conflicting = !conflicting_pairs.is_empty();
            let classification = classify_sets(&sets);
            let case_tag = match (&classification, semantically_conflicting) {
                (Some(c), true) => CaseTag::Case(c.case),
                // a conflicting pair always involves an added value; IV is the
                // generic "needs resolution" case
                (None, true) => CaseTag::Case(EvolutionCase::IV),
                (Some(_), false) => CaseTag::NoConflict,
                (None, false) => CaseTag::AutoKeepAll,
            };
            let mut survivors: Vec<Term> = survivors.into_iter().collect();
            survivors.sort_by(canonical_cmp);
            ConflictRecord {
                subject,
                predicate,
                candidates,
                case_tag,
                classification,
                semantically_conflicting,
                survivors,
                conflicting_pairs,
            }
        })
        .collect();
    records.sort_by_cached_key(|r| (r.subject.to_string(), r.predicate.to_string()));
    records
}

/// Header of the conflict report.
pub const REPORT_HEADER: &str =
    "subject\tpredicate\tcase\tsemantically_conflicting\tcandidates\tambiguous_with";

/// One TSV line per record. Candidates are written as `Origin=term` joined
/// by ` | `.
pub fn conflicts_tsv(records: &[ConflictRecord]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in records {
        let candidates: Vec<String> = r
            .candidates
            .iter()
            .map(|c| format!("{}={}", c.origin, c.value))
            .collect();
        let ambiguous: Vec<String> = r
            .classification
            .iter()
            .flat_map(|c| c.also_matched.iter().map(|m| m.to_string()))
            .collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            r.subject,
            r.predicate,
            r.case_tag,
            r.semantically_conflicting,
            candidates.join(" | "),
            ambiguous.join(",")
        ));
    }
    out
}
