//! Strategy dispatch and conflict detection and resolution (CDR).
//!
//! Triples are partitioned by predicate and every partition is synchronized
//! under the strategy assigned to its predicate. For strategies III and IV both
//! sides converge to
//!
//! ```text
//! ((state \ (δS⁻ ∪ δT⁻)) ∪ δS⁺ ∪ δT⁺) \ X ∪ Y
//! ```
//!
//! where tombstones count as deletions and win over additions from the other
//! side, `X` holds every surviving value of a semantically conflicting key and
//! `Y` the values kept for those keys.

use std::cell::{OnceCell, RefCell};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::changeset::{diff, Changeset, NetChangeset};
use crate::conflict::{detect_conflicts_between, CaseTag, ConflictRecord, EvolutionCase, Origin};
use crate::metrics::{QualityInputs, QualityReport};
use crate::rdf::{Dataset, Iri, Term, Triple};
use crate::resolution::{
    auto_select_policy, resolve, Annotations, PolicyFunction, ResolutionEnv, ResolutionPolicy,
    ResolveError, ResolveKey, Resolution, Side, ValueMetadata,
};
use crate::semantics::{Profiles, SchemaGraph, SimilarityConfig};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    /// The target follows the source and drops its local changes.
    I,
    /// Each side keeps only its own changes.
    II,
    /// Both sides merge all changes and drop conflicting values.
    III,
    /// Both sides merge all changes and keep resolved values.
    IV,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::I, Strategy::II, Strategy::III, Strategy::IV];

    pub fn uses_cdr(self) -> bool {
        matches!(self, Strategy::III | Strategy::IV)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::I => "I",
            Strategy::II => "II",
            Strategy::III => "III",
            Strategy::IV => "IV",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown strategy {0:?} (expected I, II, III or IV)")]
pub struct UnknownStrategy(pub String);

impl FromStr for Strategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "I" | "1" => Ok(Strategy::I),
            "II" | "2" => Ok(Strategy::II),
            "III" | "3" => Ok(Strategy::III),
            "IV" | "4" => Ok(Strategy::IV),
            other => Err(UnknownStrategy(other.to_string())),
        }
    }
}

/// Which strategy and resolution policy applies to each predicate.
/// Strategy IV predicates without an explicit policy get one from
/// [`auto_select_policy`].
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyAssignment {
    pub default_strategy: Strategy,
    pub per_predicate: BTreeMap<Iri, Strategy>,
    pub policies: BTreeMap<Iri, ResolutionPolicy>,
    /// Policy for strategy IV predicates without an entry in `policies`.
    pub default_policy: Option<ResolutionPolicy>,
}

impl StrategyAssignment {
    pub fn uniform(strategy: Strategy) -> Self {
        StrategyAssignment {
            default_strategy: strategy,
            per_predicate: BTreeMap::new(),
            policies: BTreeMap::new(),
            default_policy: None,
        }
    }

    pub fn with_default_policy(mut self, policy: ResolutionPolicy) -> Self {
        self.default_policy = Some(policy);
        self
    }

    pub fn with_predicate(mut self, predicate: Iri, strategy: Strategy) -> Self {
        self.per_predicate.insert(predicate, strategy);
        self
    }

    pub fn with_policy(mut self, predicate: Iri, policy: ResolutionPolicy) -> Self {
        self.policies.insert(predicate, policy);
        self
    }

    pub fn strategy_for(&self, predicate: &Iri) -> Strategy {
        self.per_predicate
            .get(predicate)
            .copied()
            .unwrap_or(self.default_strategy)
    }

    /// A short label such as `IV` or `I+IV`.
    pub fn label(&self) -> String {
        let used: BTreeSet<Strategy> = std::iter::once(self.default_strategy)
            .chain(self.per_predicate.values().copied())
            .collect();
        used.iter().map(Strategy::to_string).collect::<Vec<_>>().join("+")
    }
}

/// Everything the engine needs besides the datasets and changesets.
#[derive(Debug, Clone, Default)]
pub struct SyncContext {
    pub profiles: Profiles,
    pub schema: SchemaGraph,
    pub similarity: SimilarityConfig,
    /// Seed for policies without their own.
    pub seed: u64,
    pub annotations: Annotations,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyncWarning {
    /// Target triples missing from the source.
    NotASlice { missing: usize },
    /// Both sides made the same changes; nothing to exchange.
    IdenticalChangesets,
}

impl fmt::Display for SyncWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyncWarning::NotASlice { missing } => write!(
                f,
                "target is not a subset of the source: {missing} target triples missing from the source"
            ),
            SyncWarning::IdenticalChangesets => {
                f.write_str("source and target changesets are identical; nothing to synchronize")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncStats {
    pub source_added: usize,
    pub source_deleted: usize,
    pub target_added: usize,
    pub target_deleted: usize,
    /// Size of `X`; `None` when no predicate went through CDR.
    pub conflicting_triples: Option<usize>,
    pub runtime: Duration,
}

/// The value kept for one key in strategy IV.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyedResolution {
    pub subject: Term,
    pub predicate: Iri,
    pub resolution: Resolution,
}

#[derive(Debug, Clone)]
pub struct SyncOutcome {
    pub source_after: Dataset,
    pub target_after: Dataset,
    /// `S_ti → source_after`.
    pub out_source: Changeset,
    /// `T_ti → target_after`.
    pub out_target: Changeset,
    /// What the source still has to apply after its own changes.
    pub propagated_source: Changeset,
    /// What the target still has to apply after its own changes.
    pub propagated_target: Changeset,
    /// Records of all keys in CDR partitions.
    pub conflicts: Vec<ConflictRecord>,
    pub resolutions: Vec<KeyedResolution>,
    pub warnings: Vec<SyncWarning>,
    pub stats: SyncStats,
    /// True when every predicate went through CDR.
    pub cdr_everywhere: bool,
}

#[derive(Debug, Error)]
pub enum SyncError {
    #[error("cannot resolve {subject} {predicate}: {source}")]
    Resolution {
        subject: Term,
        predicate: Iri,
        source: Box<ResolveError>,
    },
}

#[derive(Default)]
struct Partition {
    source: Dataset,
    target: Dataset,
    conflicts: Vec<ConflictRecord>,
    resolutions: Vec<KeyedResolution>,
    conflicting: usize,
}

fn restrict_net(c: &NetChangeset, keep: &impl Fn(&Iri) -> bool) -> NetChangeset {
    NetChangeset {
        changes: Changeset {
            added: c.changes.added.filter_predicates(keep),
            deleted: c.changes.deleted.filter_predicates(keep),
            timeframe: c.changes.timeframe.clone(),
        },
        tombstones: c.tombstones.filter_predicates(keep),
    }
}

/// Synchronizes both datasets under a strategy assignment.
pub fn synchronize(
    s_ti: &Dataset,
    t_ti: &Dataset,
    source_changes: &Changeset,
    target_changes: &Changeset,
    assign: &StrategyAssignment,
    ctx: &SyncContext,
) -> Result<SyncOutcome, SyncError> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let missing = t_ti.count_missing_from(s_ti);
    if missing > 0 {
        warnings.push(SyncWarning::NotASlice { missing });
    }
    let ns = source_changes.normalize();
    let nt = target_changes.normalize();

    let mut predicates: BTreeSet<Iri> = s_ti.predicates();
    for d in [
        t_ti,
        &source_changes.added,
        &source_changes.deleted,
        &target_changes.added,
        &target_changes.deleted,
    ] {
        predicates.extend(d.predicates());
    }
    let mut groups: BTreeMap<Strategy, HashSet<Iri>> = BTreeMap::new();
    for p in predicates {
        groups.entry(assign.strategy_for(&p)).or_default().insert(p);
    }
    let cdr_everywhere = groups.keys().all(|s| s.uses_cdr());

    let identical = !source_changes.is_empty()
        && source_changes.added == target_changes.added
        && source_changes.deleted == target_changes.deleted;
    let mut total = Partition::default();
    let mut any_cdr = false;
    if identical {
        warnings.push(SyncWarning::IdenticalChangesets);
        total.source = ns.apply_to(s_ti);
        total.target = nt.apply_to(t_ti);
    } else {
        let single = groups.len() <= 1;
        for (strategy, preds) in &groups {
            any_cdr |= strategy.uses_cdr();
            let keep = |p: &Iri| preds.contains(p);
            let part = if single {
                run_partition(*strategy, s_ti, t_ti, &ns, &nt, assign, ctx)?
            } else {
                run_partition(
                    *strategy,
                    &s_ti.filter_predicates(keep),
                    &t_ti.filter_predicates(keep),
                    &restrict_net(&ns, &keep),
                    &restrict_net(&nt, &keep),
                    assign,
                    ctx,
                )?
            };
            if single {
                total = part;
            } else {
                total.source.extend(part.source);
                total.target.extend(part.target);
                total.conflicts.extend(part.conflicts);
                total.resolutions.extend(part.resolutions);
                total.conflicting += part.conflicting;
            }
        }
        total
            .conflicts
            .sort_by_cached_key(|r| (r.subject.to_string(), r.predicate.to_string()));
    }

    let out_source = diff(s_ti, &total.source);
    let out_target = diff(t_ti, &total.target);
    let propagated_source = diff(&ns.apply_to(s_ti), &total.source);
    let propagated_target = diff(&nt.apply_to(t_ti), &total.target);
    let stats = SyncStats {
        source_added: out_source.added.len(),
        source_deleted: out_source.deleted.len(),
        target_added: out_target.added.len(),
        target_deleted: out_target.deleted.len(),
        conflicting_triples: any_cdr.then_some(total.conflicting),
        runtime: start.elapsed(),
    };
    Ok(SyncOutcome {
        source_after: total.source,
        target_after: total.target,
        out_source,
        out_target,
        propagated_source,
        propagated_target,
        conflicts: total.conflicts,
        resolutions: total.resolutions,
        warnings,
        stats,
        cdr_everywhere: cdr_everywhere && !identical,
    })
}

fn run_partition(
    strategy: Strategy,
    s_ti: &Dataset,
    t_ti: &Dataset,
    ns: &NetChangeset,
    nt: &NetChangeset,
    assign: &StrategyAssignment,
    ctx: &SyncContext,
) -> Result<Partition, SyncError> {
    match strategy {
        Strategy::I => Ok(Partition {
            source: ns.apply_to(s_ti),
            target: ns.apply_to(t_ti),
            ..Partition::default()
        }),
        Strategy::II => Ok(Partition {
            source: ns.apply_to(s_ti),
            target: nt.apply_to(t_ti),
            ..Partition::default()
        }),
        Strategy::III => cdr_partition(s_ti, t_ti, ns, nt, false, assign, ctx),
        Strategy::IV => cdr_partition(s_ti, t_ti, ns, nt, true, assign, ctx),
    }
}

/// Conflict detection and resolution over all predicates: strategy IV when
/// `resolve_flag` is set, strategy III otherwise.
pub fn cdr(
    s_ti: &Dataset,
    t_ti: &Dataset,
    source_changes: &Changeset,
    target_changes: &Changeset,
    resolve_flag: bool,
    policies: &BTreeMap<Iri, ResolutionPolicy>,
    ctx: &SyncContext,
) -> Result<SyncOutcome, SyncError> {
    let mut assign = StrategyAssignment::uniform(if resolve_flag {
        Strategy::IV
    } else {
        Strategy::III
    });
    assign.policies = policies.clone();
    synchronize(s_ti, t_ti, source_changes, target_changes, &assign, ctx)
}

fn cdr_partition(
    s_ti: &Dataset,
    t_ti: &Dataset,
    ns: &NetChangeset,
    nt: &NetChangeset,
    resolve_flag: bool,
    assign: &StrategyAssignment,
    ctx: &SyncContext,
) -> Result<Partition, SyncError> {
    let records = detect_conflicts_between(
        ns,
        nt,
        s_ti,
        t_ti,
        &ctx.profiles,
        &ctx.schema,
        &ctx.similarity,
    );
    let deletions = ns.effective_deletions().union(&nt.effective_deletions());
    let additions = ns.changes.added.union(&nt.changes.added).minus(&nt.tombstones);
    let env = SyncEnv::new(s_ti, t_ti, ns, nt, &additions);

    let mut x = Dataset::new();
    let mut y = Dataset::new();
    let mut resolutions = Vec::new();
    for r in records.iter().filter(|r| r.semantically_conflicting) {
        x.extend(r.survivor_triples());
        match r.case_tag {
            CaseTag::Case(case) if case.is_forced() => {
                y.extend(forced_outcome(r, case).map(|v| r.triple_for(v)));
            }
            _ if resolve_flag => {
                let resolution = resolve_record(r, assign, ctx, &env)?;
                env.remember_choice(r, &resolution);
                y.extend(resolution.kept.iter().map(|v| r.triple_for(v)));
                resolutions.push(KeyedResolution {
                    subject: r.subject.clone(),
                    predicate: r.predicate.clone(),
                    resolution,
                });
            }
            _ => {}
        }
    }
    let merge = |d: &Dataset| {
        let mut out = d.minus(&deletions);
        out.extend(additions.iter().cloned());
        for t in x.iter() {
            out.remove(t);
        }
        out.extend(y.iter().cloned());
        out
    };
    Ok(Partition {
        source: merge(s_ti),
        target: merge(t_ti),
        conflicting: x.len(),
        conflicts: records,
        resolutions,
    })
}

/// Forced outcome of cases I–III: the additions of the side that changed the
/// key win, together with the survivors that do not conflict with them.
fn forced_outcome(r: &ConflictRecord, case: EvolutionCase) -> impl Iterator<Item = &Term> {
    let sets = r.value_sets();
    let winners = match case {
        EvolutionCase::III => sets.target_added,
        _ => sets.source_added,
    };
    let winners: Vec<Term> = r
        .survivors
        .iter()
        .filter(|v| winners.contains(*v))
        .cloned()
        .collect();
    r.survivors.iter().filter(move |v| {
        winners.contains(v)
            || !winners.iter().any(|w| {
                r.conflicting_pairs
                    .iter()
                    .any(|(a, b)| (a == *v && b == w) || (a == w && b == *v))
            })
    })
}

fn origin_rank(origin: Origin) -> Option<(usize, &'static [Side])> {
    match origin {
        Origin::Existing => Some((0, &[Side::Source, Side::Target])),
        Origin::SourceAdded => Some((1, &[Side::Source])),
        Origin::TargetAdded => Some((2, &[Side::Target])),
        _ => None,
    }
}

fn resolve_record(
    r: &ConflictRecord,
    assign: &StrategyAssignment,
    ctx: &SyncContext,
    env: &SyncEnv<'_>,
) -> Result<Resolution, SyncError> {
    let mut values = r.survivors.clone();
    if r.case_tag == CaseTag::Case(EvolutionCase::VI) {
        // the target deleted what the source re-added: prefer the target's values
        let sets = r.value_sets();
        let kept: Vec<Term> = values
            .iter()
            .filter(|v| !(sets.source_added.contains(*v) && sets.target_deleted.contains(*v)))
            .cloned()
            .collect();
        if !kept.is_empty() {
            values = kept;
        }
    }
    let candidates: Vec<(Term, ValueMetadata)> = values
        .iter()
        .map(|v| {
            let mut order = usize::MAX;
            let mut sides: Vec<Side> = Vec::new();
            for c in r.candidates.iter().filter(|c| &c.value == v) {
                if let Some((rank, s)) = origin_rank(c.origin) {
                    order = order.min(rank);
                    for side in s {
                        if !sides.contains(side) {
                            sides.push(*side);
                        }
                    }
                }
            }
            let default_name = match sides.as_slice() {
                [Side::Source] => "source",
                [Side::Target] => "target",
                _ => "base",
            };
            let mut meta = ValueMetadata::new(default_name, order).with_sides(&sides);
            if let Some(a) = ctx.annotations.get(&r.triple_for(v)) {
                meta.timestamp = a.timestamp;
                meta.quality_score = a.quality_score;
                if let Some(name) = &a.source_name {
                    meta.source_name = name.clone();
                }
            }
            (v.clone(), meta)
        })
        .collect();
    let mut policy = assign
        .policies
        .get(&r.predicate)
        .or(assign.default_policy.as_ref())
        .cloned()
        .unwrap_or_else(|| auto_select_policy(&ctx.profiles.get(&r.predicate), &values));
    if policy.function == PolicyFunction::Any && policy.rng_seed.is_none() {
        policy.rng_seed = Some(ctx.seed);
    }
    let key = ResolveKey {
        subject: &r.subject,
        predicate: &r.predicate,
    };
    resolve(key, &candidates, &policy, env).map_err(|source| SyncError::Resolution {
        subject: r.subject.clone(),
        predicate: r.predicate.clone(),
        source: Box::new(source),
    })
}

/// Dataset knowledge for the policies that look beyond the candidates.
struct SyncEnv<'a> {
    s_ti: &'a Dataset,
    t_ti: &'a Dataset,
    ns: &'a NetChangeset,
    nt: &'a NetChangeset,
    additions: &'a Dataset,
    combined: OnceCell<Dataset>,
    source_evolved: OnceCell<Dataset>,
    target_evolved: OnceCell<Dataset>,
    choices: RefCell<HashMap<(Term, Iri), Side>>,
}

impl<'a> SyncEnv<'a> {
    fn new(
        s_ti: &'a Dataset,
        t_ti: &'a Dataset,
        ns: &'a NetChangeset,
        nt: &'a NetChangeset,
        additions: &'a Dataset,
    ) -> Self {
        SyncEnv {
            s_ti,
            t_ti,
            ns,
            nt,
            additions,
            combined: OnceCell::new(),
            source_evolved: OnceCell::new(),
            target_evolved: OnceCell::new(),
            choices: RefCell::new(HashMap::new()),
        }
    }

    fn combined(&self) -> &Dataset {
        self.combined.get_or_init(|| self.t_ti.union(self.additions))
    }

    fn evolved(&self, side: Side) -> &Dataset {
        match side {
            Side::Source => self.source_evolved.get_or_init(|| self.ns.apply_to(self.s_ti)),
            Side::Target => self.target_evolved.get_or_init(|| self.nt.apply_to(self.t_ti)),
        }
    }

    fn remember_choice(&self, r: &ConflictRecord, resolution: &Resolution) {
        let Some(kept) = resolution.kept.first() else {
            return;
        };
        let mut sides = BTreeSet::new();
        for c in r.candidates.iter().filter(|c| &c.value == kept) {
            match c.origin {
                Origin::SourceAdded => {
                    sides.insert(0);
                }
                Origin::TargetAdded | Origin::Existing => {
                    sides.insert(1);
                }
                _ => {}
            }
        }
        let side = match sides.first() {
            Some(0) if sides.len() == 1 => Side::Source,
            Some(_) => Side::Target,
            None => return,
        };
        self.choices
            .borrow_mut()
            .insert((r.subject.clone(), r.predicate.clone()), side);
    }
}

impl ResolutionEnv for SyncEnv<'_> {
    fn value_frequency(&self, predicate: &Iri, value: &Term) -> Option<usize> {
        Some(
            self.combined()
                .iter()
                .filter(|t| t.predicate() == predicate && t.object() == value)
                .count(),
        )
    }

    fn side_asserts(&self, side: Side, triple: &Triple) -> Option<bool> {
        Some(self.evolved(side).contains(triple))
    }

    fn absent_count(&self, side: Side, predicate: &Iri) -> Option<usize> {
        let subjects: BTreeSet<&Term> = self.combined().iter().map(Triple::subject).collect();
        let having: BTreeSet<&Term> = self
            .evolved(side)
            .iter()
            .filter(|t| t.predicate() == predicate)
            .map(Triple::subject)
            .collect();
        Some(subjects.difference(&having).count())
    }

    fn chosen_side(&self, subject: &Term, attribute: &Iri) -> Option<Side> {
        self.choices
            .borrow()
            .get(&(subject.clone(), attribute.clone()))
            .copied()
    }
}

/// A named strategy assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub assignment: StrategyAssignment,
}

/// Four uniform scenarios, one per strategy, and a mixed one resolving
/// `dbp:office` with strategy IV while everything else follows the source.
/// Strategy IV resolves with `any`.
pub fn default_scenarios() -> Vec<Scenario> {
    let any = ResolutionPolicy::new(PolicyFunction::Any);
    let mut out: Vec<Scenario> = Strategy::ALL
        .iter()
        .enumerate()
        .map(|(i, s)| Scenario {
            name: (i + 1).to_string(),
            assignment: StrategyAssignment::uniform(*s).with_default_policy(any.clone()),
        })
        .collect();
    let iri = |s: String| Iri::new(s).expect("static IRI");
    let mut mixed = StrategyAssignment::uniform(Strategy::I)
        .with_default_policy(any)
        .with_predicate(iri(format!("{}office", vocab::DBP)), Strategy::IV);
    for p in [
        format!("{}party", vocab::DBP),
        format!("{}nationality", vocab::DBO),
        vocab::RDF_TYPE.to_string(),
        format!("{}name", vocab::FOAF),
        format!("{}abstract", vocab::DBO),
        format!("{}depiction", vocab::FOAF),
    ] {
        mixed = mixed.with_predicate(iri(p), Strategy::I);
    }
    out.push(Scenario {
        name: "5".to_string(),
        assignment: mixed,
    });
    out
}

#[derive(Debug, Clone)]
pub struct ScenarioResult {
    pub name: String,
    pub strategy_label: String,
    pub outcome: SyncOutcome,
    pub quality: QualityReport,
}

/// Runs every scenario on the same inputs.
pub fn run_scenarios(
    s_ti: &Dataset,
    t_ti: &Dataset,
    source_changes: &Changeset,
    target_changes: &Changeset,
    scenarios: &[Scenario],
    ctx: &SyncContext,
) -> Result<Vec<ScenarioResult>, SyncError> {
    scenarios
        .iter()
        .map(|sc| {
            let outcome = synchronize(
                s_ti,
                t_ti,
                source_changes,
                target_changes,
                &sc.assignment,
                ctx,
            )?;
            let quality = QualityReport::measure(&QualityInputs {
                target_initial: t_ti,
                source_changes,
                target_changes,
                target_after: &outcome.target_after,
                sent_to_source: &outcome.propagated_source,
                sent_to_target: &outcome.propagated_target,
                conflicts: outcome.cdr_everywhere.then_some(outcome.conflicts.as_slice()),
            });
            Ok(ScenarioResult {
                name: sc.name.clone(),
                strategy_label: sc.assignment.label(),
                outcome,
                quality,
            })
        })
        .collect()
}

pub const SCENARIO_REPORT_HEADER: &str = "scenario\tstrategy\tsource_added\tsource_deleted\ttarget_added\ttarget_deleted\tconflicting_triples\truntime_s\tcompleteness_source\tcompleteness_target\tconsistency\tconciseness_before\tconciseness_after";

/// One TSV row per scenario. Counts are the changesets taking each side from
/// its initial to its synchronized state; quality ratios are integer percent.
pub fn scenario_report_tsv(results: &[ScenarioResult]) -> String {
    let mut out = String::from(SCENARIO_REPORT_HEADER);
    out.push('\n');
    let pct = |r: &crate::metrics::Ratio| format!("{}%", r.percent());
    for r in results {
        let st = &r.outcome.stats;
        let q = &r.quality;
        let row = [
            r.name.clone(),
            r.strategy_label.clone(),
            st.source_added.to_string(),
            st.source_deleted.to_string(),
            st.target_added.to_string(),
            st.target_deleted.to_string(),
            st.conflicting_triples
                .map_or_else(|| "-".to_string(), |n| n.to_string()),
            format!("{:.1}", st.runtime.as_secs_f64()),
            pct(&q.completeness_source),
            pct(&q.completeness_target),
            q.consistency.as_ref().map_or_else(|| "-".to_string(), pct),
            pct(&q.conciseness_before),
            pct(&q.conciseness_after),
        ];
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}
