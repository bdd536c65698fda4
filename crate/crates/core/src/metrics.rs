//! Completeness, consistency and conciseness of a synchronization.
//!
//! Every metric is an exact ratio of triple counts. A zero denominator yields
//! 1.0 and marks the ratio as vacuous.

use std::fmt;

use crate::changeset::Changeset;
use crate::conflict::ConflictRecord;
use crate::rdf::{Dataset, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub numerator: usize,
    pub denominator: usize,
}

impl Ratio {
    pub fn new(numerator: usize, denominator: usize) -> Self {
        debug_assert!(numerator <= denominator || denominator == 0);
        Ratio {
            numerator,
            denominator,
        }
    }

    pub fn is_vacuous(&self) -> bool {
        self.denominator == 0
    }

    pub fn value(&self) -> f64 {
        if self.is_vacuous() {
            1.0
        } else {
            self.numerator as f64 / self.denominator as f64
        }
    }

    /// Rounded integer percentage.
    pub fn percent(&self) -> u32 {
        if self.is_vacuous() {
            return 100;
        }
        // round half up in integer arithmetic
        ((200 * self.numerator + self.denominator) / (2 * self.denominator)) as u32
    }

    /// `a/b == c/d` as rationals.
    pub fn same_value(&self, other: &Ratio) -> bool {
        match (self.is_vacuous(), other.is_vacuous()) {
            (true, true) => true,
            (false, false) => {
                self.numerator as u128 * other.denominator as u128
                    == other.numerator as u128 * self.denominator as u128
            }
            (true, false) => other.numerator == other.denominator,
            (false, true) => self.numerator == self.denominator,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Share of `initial ∪ changeset.added` present in `syncd`.
pub fn completeness(syncd: &Dataset, initial: &Dataset, changeset: &Changeset) -> Ratio {
    let required = initial.union(&changeset.added);
    Ratio::new(required.intersect(syncd).len(), required.len())
}

/// Triples of `syncd` that are still in conflict: for every semantically
/// conflicting pair of a record whose two values are both in `syncd`, the
/// value touched by the other side's changeset.
pub fn conflicting_triples(syncd: &Dataset, conflicts: &[ConflictRecord]) -> Dataset {
    let mut out = Dataset::new();
    for r in conflicts.iter().filter(|r| r.semantically_conflicting) {
        for (kept, touched) in &r.conflicting_pairs {
            let (a, b) = (r.triple_for(kept), r.triple_for(touched));
            if syncd.contains(&a) && syncd.contains(&b) {
                out.insert(b);
            }
        }
    }
    out
}

/// Share of `initial ∪ δS⁺ ∪ δT⁺` present in `syncd` without conflicting.
pub fn consistency(
    syncd: &Dataset,
    initial: &Dataset,
    source: &Changeset,
    target: &Changeset,
    conflicts: &[ConflictRecord],
) -> Ratio {
    let universe = initial.union(&source.added).union(&target.added);
    let conflicting = conflicting_triples(syncd, conflicts);
    let ok = universe.intersect(syncd).count_missing_from(&conflicting);
    Ratio::new(ok, universe.len())
}

/// Unique triples over all triples of a collection with multiplicity.
pub fn conciseness<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> Ratio {
    let mut all: Vec<&Triple> = triples.into_iter().collect();
    let total = all.len();
    // runs of sorted sets are cheap to merge
    all.sort();
    all.dedup();
    Ratio::new(all.len(), total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualityReport {
    pub completeness_source: Ratio,
    pub completeness_target: Ratio,
    /// Only measured when every predicate went through conflict detection.
    pub consistency: Option<Ratio>,
    /// Initial target plus both changesets' additions.
    pub conciseness_before: Ratio,
    /// Initial target plus the additions sent to each side after its own
    /// changes.
    pub conciseness_after: Ratio,
}

pub struct QualityInputs<'a> {
    pub target_initial: &'a Dataset,
    pub source_changes: &'a Changeset,
    pub target_changes: &'a Changeset,
    pub target_after: &'a Dataset,
    pub sent_to_source: &'a Changeset,
    pub sent_to_target: &'a Changeset,
    /// Conflict records when every predicate ran through conflict detection.
    pub conflicts: Option<&'a [ConflictRecord]>,
}

impl QualityReport {
    pub fn measure(inputs: &QualityInputs<'_>) -> Self {
        let t = inputs.target_initial;
        QualityReport {
            completeness_source: completeness(inputs.target_after, t, inputs.source_changes),
            completeness_target: completeness(inputs.target_after, t, inputs.target_changes),
            consistency: inputs.conflicts.map(|c| {
                consistency(
                    inputs.target_after,
                    t,
                    inputs.source_changes,
                    inputs.target_changes,
                    c,
                )
            }),
            conciseness_before: conciseness(
                t.iter()
                    .chain(inputs.source_changes.added.iter())
                    .chain(inputs.target_changes.added.iter()),
            ),
            conciseness_after: conciseness(
                t.iter()
                    .chain(inputs.sent_to_source.added.iter())
                    .chain(inputs.sent_to_target.added.iter()),
            ),
        }
    }
}
