#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use coevo::cli::read_dataset;
use coevo::engine::{Strategy as Sync, StrategyAssignment, SyncContext};
use coevo::resolution::{PolicyFunction, ResolutionPolicy};
use coevo::semantics::{load_schema, Profiles, PropertyKind, PropertyProfile, SpecialRole};
use coevo::{
    load_changeset_folder, merge_changesets, Changeset, Dataset, Iri, Literal, SimilarityConfig,
    Term, Triple,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const DBR: &str = "http://dbpedia.org/resource/";
pub const DBO: &str = "http://dbpedia.org/ontology/";
pub const DBP: &str = "http://dbpedia.org/property/";
pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

/// Seed found by searching 0..256 for the first `any` pick that keeps the
/// existing birthYear value.
pub const C4_SEED: u64 = 1;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn example1_dir() -> PathBuf {
    fixtures().join("example1")
}

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub fn t_iri(s: &str) -> Term {
    Term::Iri(iri(s))
}

pub fn lit(s: &str) -> Term {
    Term::Literal(Literal::string(s))
}

pub fn typed(s: &str, dt: &str) -> Term {
    Term::Literal(Literal::typed(s, iri(&format!("{XSD}{dt}"))))
}

pub fn triple(s: &str, p: &str, o: Term) -> Triple {
    Triple::new(t_iri(s), iri(p), o).unwrap()
}

pub struct Example1 {
    pub source: Dataset,
    pub target: Dataset,
    pub source_changes: Changeset,
    pub target_changes: Changeset,
}

pub fn example1() -> Example1 {
    let dir = example1_dir();
    let changes = |name: &str| {
        merge_changesets(&load_changeset_folder(&dir.join(name)).unwrap()).to_changeset()
    };
    Example1 {
        source: read_dataset(&dir.join("source.nt")).unwrap(),
        target: read_dataset(&dir.join("target.nt")).unwrap(),
        source_changes: changes("source-changes"),
        target_changes: changes("target-changes"),
    }
}

pub fn expected(name: &str) -> String {
    std::fs::read_to_string(example1_dir().join("expected").join(name)).unwrap()
}

pub fn birth_year() -> Iri {
    iri(&format!("{DBP}birthYear"))
}

pub fn foaf_name() -> Iri {
    iri(&format!("{FOAF}name"))
}

/// birthYear functional; foaf:name a label compared at `name_threshold`.
pub fn example_context(name_threshold: f64) -> SyncContext {
    let mut profiles = Profiles::new();
    profiles
        .set(PropertyProfile {
            property: birth_year(),
            kind: PropertyKind::DatatypeProperty,
            functional: true,
            role: SpecialRole::None,
        })
        .unwrap();
    profiles
        .set(PropertyProfile {
            property: foaf_name(),
            kind: PropertyKind::DatatypeProperty,
            functional: false,
            role: SpecialRole::LabelLike,
        })
        .unwrap();
    SyncContext {
        profiles,
        similarity: SimilarityConfig::default()
            .with_property_threshold(foaf_name(), name_threshold)
            .unwrap(),
        ..SyncContext::default()
    }
}

pub fn c3() -> (StrategyAssignment, SyncContext) {
    (StrategyAssignment::uniform(Sync::III), example_context(0.05))
}

pub fn c4() -> (StrategyAssignment, SyncContext) {
    let assign = StrategyAssignment::uniform(Sync::IV).with_policy(
        birth_year(),
        ResolutionPolicy::new(PolicyFunction::Any).with_seed(C4_SEED),
    );
    (assign, example_context(0.5))
}

/// Textbook dynamic-programming edit distance over chars.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for i in 1..=a.len() {
        let mut cur = vec![i; b.len() + 1];
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

pub fn similarity_oracle(a: &str, b: &str) -> f64 {
    let n = a.chars().count().max(b.chars().count());
    if n == 0 {
        1.0
    } else {
        1.0 - levenshtein(a, b) as f64 / n as f64
    }
}

// ---------------------------------------------------------------------------
// Random co-evolution instances
// ---------------------------------------------------------------------------

pub const EX: &str = "http://ex.org/";
pub const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";

pub fn ex(local: &str) -> String {
    format!("{EX}{local}")
}

/// Predicates of random instances: rdf:type, a datatype property `f`, an
/// object property `g` and rdfs:label. `extra` only ever lives in the source.
pub fn predicate_iri(p: usize) -> String {
    match p {
        0 => RDF_TYPE.to_string(),
        1 => ex("f"),
        2 => ex("g"),
        3 => LABEL.to_string(),
        _ => ex("extra"),
    }
}

const LABELS: [&str; 4] = ["Adrian Sanders", "Sanders, Adrian", "Adrian Sanderz", "Alison"];

pub fn object_term(p: usize, o: usize) -> Term {
    match p {
        0 => t_iri(&ex(&format!("C{o}"))),
        1 => match o {
            0 => lit("1959"),
            1 => typed("1959", "integer"),
            2 => lit("1960"),
            _ => typed("1959-01-01", "date"),
        },
        2 => t_iri(&ex(&format!("o{o}"))),
        3 => lit(LABELS[o % 4]),
        _ => t_iri(&ex(&format!("x{o}"))),
    }
}

pub fn gen_triple(s: usize, p: usize, o: usize) -> Triple {
    Triple::new(t_iri(&ex(&format!("s{s}"))), iri(&predicate_iri(p)), object_term(p, o)).unwrap()
}

#[derive(Debug, Clone)]
pub struct SchemaSpec {
    pub functional_f: bool,
    pub functional_g: bool,
    pub subclass: Vec<(usize, usize)>,
    pub disjoint: Vec<(usize, usize)>,
    pub same_as: Vec<(usize, usize)>,
    pub label_threshold: f64,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub source: Dataset,
    pub target: Dataset,
    pub source_changes: Changeset,
    pub target_changes: Changeset,
    pub schema: SchemaSpec,
}

fn triple_idx(preds: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (0..2usize, 0..preds, 0..4usize)
}

prop_compose! {
    fn schema_spec()(
        functional_f in any::<bool>(),
        functional_g in any::<bool>(),
        subclass in prop::collection::vec((0..4usize, 0..4usize), 0..4),
        disjoint in prop::collection::vec((0..4usize, 0..4usize), 0..3),
        same_as in prop::collection::vec((0..4usize, 0..4usize), 0..2),
        label_threshold in prop::sample::select(vec![0.3, 0.5, 0.9]),
    ) -> SchemaSpec {
        SchemaSpec { functional_f, functional_g, subclass, disjoint, same_as, label_threshold }
    }
}

prop_compose! {
    /// At most 40 triples over four predicates. The source holds the target
    /// plus triples of a predicate the target never replicated.
    pub fn instance()(
        schema in schema_spec(),
        base in prop::collection::vec(triple_idx(4), 0..16),
        source_only in prop::collection::vec((0..3usize, 0..4usize), 0..3),
        s_add in prop::collection::vec(triple_idx(5), 0..6),
        t_add in prop::collection::vec(triple_idx(4), 0..6),
        s_del in prop::collection::vec(any::<prop::sample::Index>(), 0..6),
        t_del in prop::collection::vec(any::<prop::sample::Index>(), 0..6),
        t_tomb in prop::collection::vec(triple_idx(4), 0..3),
    ) -> Instance {
        let target: Dataset = base.iter().map(|&(s, p, o)| gen_triple(s, p, o)).collect();
        let mut source = target.clone();
        source.extend(source_only.iter().map(|&(s, o)| gen_triple(s, 4, o)));
        let pick = |idx: &[prop::sample::Index], d: &Dataset| -> Dataset {
            let all: Vec<&Triple> = d.iter().collect();
            if all.is_empty() {
                return Dataset::new();
            }
            idx.iter().map(|i| all[i.index(all.len())].clone()).collect()
        };
        let s_added: Dataset = s_add
            .iter()
            .map(|&(s, p, o)| gen_triple(s, p, o))
            .filter(|t| !source.contains(t))
            .collect();
        let mut t_added: Dataset = t_add
            .iter()
            .map(|&(s, p, o)| gen_triple(s, p, o))
            .filter(|t| !target.contains(t))
            .collect();
        let mut t_deleted = pick(&t_del, &target);
        for &(s, p, o) in &t_tomb {
            // added and deleted again within the timeframe
            let t = gen_triple(s, p, o);
            t_added.insert(t.clone());
            t_deleted.insert(t);
        }
        Instance {
            source_changes: Changeset::new(s_added, pick(&s_del, &source)),
            target_changes: Changeset::new(t_added, t_deleted),
            source,
            target,
            schema,
        }
    }
}

prop_compose! {
    /// Every change lands on one `(subject, predicate)` key, so the case
    /// patterns come up often. Value sets are bitmasks over four objects.
    /// With `diverge`, each side may start with values the other lacks.
    pub fn focused_instance(diverge: bool)(
        mut schema in schema_spec(),
        p in prop::sample::select(vec![0, 1, 1, 1, 2, 3]),
        masks in prop::array::uniform6(0..16u8),
        extra in prop::array::uniform2(prop_oneof![2 => Just(0u8), 1 => 0..16u8]),
    ) -> Instance {
        let [e, sa, sd, ta, td, tt] = masks;
        let [s_only, t_only] = if diverge { extra } else { [0, 0] };
        schema.functional_f = true;
        schema.functional_g = true;
        let objs = |m: u8| -> Dataset {
            (0..4).filter(|o| m & (1 << o) != 0).map(|o| gen_triple(0, p, o)).collect()
        };
        let source = objs(e | s_only);
        let target = objs((e & !s_only) | t_only);
        let tombs = objs(tt).minus(&target);
        Instance {
            source_changes: Changeset::new(objs(sa).minus(&source), objs(sd).intersect(&source)),
            target_changes: Changeset::new(
                objs(ta).minus(&target).union(&tombs),
                objs(td).intersect(&target).union(&tombs),
            ),
            source,
            target,
            schema,
        }
    }
}

/// Random instances, three in four focused on a single key.
pub fn mixed_instance(diverge: bool) -> impl Strategy<Value = Instance> {
    prop_oneof![1 => instance(), 3 => focused_instance(diverge)]
}

/// Deterministic samples of a strategy.
pub fn samples<S: Strategy>(strategy: S, n: usize, seed: u8) -> Vec<S::Value> {
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
    );
    (0..n)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}

impl Instance {
    pub fn schema_dataset(&self) -> Dataset {
        let sub = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
        let disj = "http://www.w3.org/2002/07/owl#disjointWith";
        let typ = RDF_TYPE;
        let mut d = Dataset::new();
        let class = |i: usize| t_iri(&ex(&format!("C{i}")));
        for &(a, b) in &self.schema.subclass {
            d.insert(Triple::new(class(a), iri(sub), class(b)).unwrap());
        }
        for &(a, b) in &self.schema.disjoint {
            d.insert(Triple::new(class(a), iri(disj), class(b)).unwrap());
        }
        for &(a, b) in &self.schema.same_as {
            d.insert(
                Triple::new(object_term(2, a), iri(OWL_SAME_AS), object_term(2, b)).unwrap(),
            );
        }
        let fp = t_iri("http://www.w3.org/2002/07/owl#FunctionalProperty");
        if self.schema.functional_f {
            d.insert(Triple::new(t_iri(&ex("f")), iri(typ), fp.clone()).unwrap());
        }
        if self.schema.functional_g {
            d.insert(Triple::new(t_iri(&ex("g")), iri(typ), fp).unwrap());
        }
        d.insert(
            Triple::new(
                t_iri(&ex("f")),
                iri(typ),
                t_iri("http://www.w3.org/2002/07/owl#DatatypeProperty"),
            )
            .unwrap(),
        );
        d.insert(
            Triple::new(
                t_iri(&ex("g")),
                iri(typ),
                t_iri("http://www.w3.org/2002/07/owl#ObjectProperty"),
            )
            .unwrap(),
        );
        d
    }

    pub fn context(&self, seed: u64) -> SyncContext {
        let schema = load_schema(&self.schema_dataset());
        SyncContext {
            profiles: Profiles::from_schema(&schema),
            schema,
            similarity: SimilarityConfig::new(self.schema.label_threshold).unwrap(),
            seed,
            annotations: Default::default(),
        }
    }
}

// ---------------------------------------------------------------------------
// Brute-force CDR oracle
// ---------------------------------------------------------------------------

/// Independent restatement of the property semantics for the random
/// instances' vocabulary.
pub fn oracle_conflicting(inst: &Instance, p: &Iri, a: &Term, b: &Term) -> bool {
    if a == b {
        return false;
    }
    let sch = &inst.schema;
    match p.as_str() {
        RDF_TYPE => {
            let class_no = |t: &Term| -> usize {
                t.as_iri().unwrap().as_str().trim_start_matches(&ex("C")).parse().unwrap()
            };
            let mentioned: BTreeSet<usize> = sch
                .subclass
                .iter()
                .chain(&sch.disjoint)
                .flat_map(|&(x, y)| [x, y])
                .collect();
            let (ca, cb) = (class_no(a), class_no(b));
            if !mentioned.contains(&ca) || !mentioned.contains(&cb) {
                return false;
            }
            let ancestors = |c: usize| {
                let mut seen = BTreeSet::from([c]);
                loop {
                    let before = seen.len();
                    for &(x, y) in &sch.subclass {
                        if seen.contains(&x) {
                            seen.insert(y);
                        }
                    }
                    if seen.len() == before {
                        return seen;
                    }
                }
            };
            let (aa, ab) = (ancestors(ca), ancestors(cb));
            sch.disjoint.iter().any(|&(x, y)| {
                (aa.contains(&x) && ab.contains(&y)) || (aa.contains(&y) && ab.contains(&x))
            })
        }
        LABEL => similarity_oracle(a.text(), b.text()) >= sch.label_threshold,
        p if p == ex("f") => sch.functional_f,
        p if p == ex("g") => {
            if !sch.functional_g {
                return false;
            }
            // connected through sameAs edges?
            let node = |t: &Term| t.as_iri().unwrap().as_str().trim_start_matches(&ex("o")).parse::<usize>().unwrap();
            let mut reach = BTreeSet::from([node(a)]);
            loop {
                let before = reach.len();
                for &(x, y) in &sch.same_as {
                    if reach.contains(&x) || reach.contains(&y) {
                        reach.insert(x);
                        reach.insert(y);
                    }
                }
                if reach.len() == before {
                    break;
                }
            }
            !reach.contains(&node(b))
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OraclePolicy {
    /// Existing before source before target, then serialized order.
    First,
    /// Fewest characters, then serialized order.
    Shortest,
}

#[derive(Default, Debug)]
struct KeyValues {
    a_s: BTreeSet<Term>,
    d_s: BTreeSet<Term>,
    a_t: BTreeSet<Term>,
    d_t: BTreeSet<Term>,
    tomb_t: BTreeSet<Term>,
    e_t: BTreeSet<Term>,
    e_s: BTreeSet<Term>,
}

fn some_pair(
    xs: &BTreeSet<Term>,
    ys: &BTreeSet<Term>,
    ok: impl Fn(&Term, &Term) -> bool,
) -> bool {
    xs.iter().any(|x| ys.iter().any(|y| x != y && ok(x, y)))
}

/// The evolution case table, most specific first.
fn oracle_case(k: &KeyValues) -> &'static str {
    let live = |s: &BTreeSet<Term>| -> BTreeSet<Term> {
        s.iter().filter(|v| !k.tomb_t.contains(*v)).cloned().collect()
    };
    let a_s = live(&k.a_s);
    let both: BTreeSet<Term> = k.d_s.intersection(&k.d_t).cloned().collect();
    let only_t: BTreeSet<Term> = k.d_t.difference(&k.d_s).cloned().collect();
    let yes = |_: &Term, _: &Term| true;
    if k.a_t.is_empty() && some_pair(&a_s, &only_t, |o1, _| !k.d_t.contains(o1)) {
        return "I";
    }
    if k.a_t.is_empty() && some_pair(&a_s, &both, yes) {
        return "II";
    }
    if a_s.is_empty() && some_pair(&both, &k.a_t, yes) {
        return "III";
    }
    if both
        .iter()
        .any(|o3| some_pair(&a_s, &k.a_t, |o2, o1| o1 != o3 && o2 != o3))
    {
        return "V";
    }
    let s_readded: BTreeSet<Term> = a_s.intersection(&k.d_t).cloned().collect();
    if some_pair(&s_readded, &k.a_t, yes) {
        return "VI";
    }
    let t_readded: BTreeSet<Term> = k.d_s.intersection(&k.a_t).cloned().collect();
    if some_pair(&t_readded, &a_s, yes) {
        return "VII";
    }
    "IV"
}

pub struct OracleOutput {
    pub source: Dataset,
    pub target: Dataset,
    pub conflicting_keys: BTreeSet<(Term, Iri)>,
}

/// Enumerates every `(s, p)` key and applies the case table to it.
pub fn oracle_cdr(inst: &Instance, resolve: Option<OraclePolicy>) -> OracleOutput {
    let tombs_s: Dataset = inst.source_changes.added.intersect(&inst.source_changes.deleted);
    let tombs_t: Dataset = inst.target_changes.added.intersect(&inst.target_changes.deleted);
    let mut keys: BTreeMap<(Term, Iri), KeyValues> = BTreeMap::new();
    fn slot<'m>(
        keys: &'m mut BTreeMap<(Term, Iri), KeyValues>,
        t: &Triple,
    ) -> &'m mut KeyValues {
        keys.entry((t.subject().clone(), t.predicate().clone()))
            .or_default()
    }
    for t in inst.source_changes.added.iter() {
        if !tombs_s.contains(t) {
            slot(&mut keys, t).a_s.insert(t.object().clone());
        }
    }
    for t in inst.source_changes.deleted.iter() {
        // a source tombstone reads as a source deletion
        slot(&mut keys, t).d_s.insert(t.object().clone());
    }
    for t in inst.target_changes.added.iter() {
        if !tombs_t.contains(t) {
            slot(&mut keys, t).a_t.insert(t.object().clone());
        }
    }
    for t in inst.target_changes.deleted.iter() {
        if tombs_t.contains(t) {
            slot(&mut keys, t).tomb_t.insert(t.object().clone());
        } else {
            slot(&mut keys, t).d_t.insert(t.object().clone());
        }
    }
    for t in inst.target.iter() {
        slot(&mut keys, t).e_t.insert(t.object().clone());
    }
    for t in inst.source.iter() {
        slot(&mut keys, t).e_s.insert(t.object().clone());
    }

    let mut source = Dataset::new();
    let mut target = Dataset::new();
    let mut conflicting_keys = BTreeSet::new();
    for ((s, p), k) in &keys {
        let deleted = |v: &Term| k.d_s.contains(v) || k.d_t.contains(v) || k.tomb_t.contains(v);
        let merge = |base: &BTreeSet<Term>| -> BTreeSet<Term> {
            base.iter()
                .filter(|v| !deleted(v))
                .chain(k.a_s.iter().filter(|v| !k.tomb_t.contains(*v)))
                .chain(&k.a_t)
                .cloned()
                .collect()
        };
        let mut out_t = merge(&k.e_t);
        let mut out_s = merge(&k.e_s);
        if !k.a_s.is_empty() || !k.a_t.is_empty() {
            let survivors = merge(&k.e_t);
            // potential conflicts in both directions
            let s_state: BTreeSet<Term> = k
                .e_s
                .iter()
                .filter(|v| !k.d_s.contains(*v))
                .chain(&k.a_s)
                .cloned()
                .collect();
            let t_state: BTreeSet<Term> = k
                .e_t
                .iter()
                .filter(|v| !k.d_t.contains(*v) && !k.tomb_t.contains(*v))
                .chain(&k.a_t)
                .cloned()
                .collect();
            let t_touched: BTreeSet<Term> =
                k.a_t.iter().chain(&k.d_t).chain(&k.tomb_t).cloned().collect();
            let s_touched: BTreeSet<Term> = k.a_s.iter().chain(&k.d_s).cloned().collect();
            let mut pairs = Vec::new();
            for (state, touched) in [(&s_state, &t_touched), (&t_state, &s_touched)] {
                for a in state {
                    for b in touched {
                        if a != b
                            && !state.contains(b)
                            && survivors.contains(a)
                            && survivors.contains(b)
                            && oracle_conflicting(inst, p, a, b)
                        {
                            pairs.push((a.clone(), b.clone()));
                        }
                    }
                }
            }
            if !pairs.is_empty() {
                conflicting_keys.insert((s.clone(), p.clone()));
                let case = oracle_case(k);
                let keep: BTreeSet<Term> = match case {
                    "I" | "II" | "III" => {
                        let winners: BTreeSet<Term> = if case == "III" {
                            k.a_t.intersection(&survivors).cloned().collect()
                        } else {
                            k.a_s.intersection(&survivors).cloned().collect()
                        };
                        survivors
                            .iter()
                            .filter(|v| {
                                winners.contains(*v)
                                    || !winners.iter().any(|w| {
                                        pairs.contains(&((*v).clone(), w.clone()))
                                            || pairs.contains(&(w.clone(), (*v).clone()))
                                    })
                            })
                            .cloned()
                            .collect()
                    }
                    _ => match resolve {
                        None => BTreeSet::new(),
                        Some(policy) => {
                            let mut cands: Vec<Term> = survivors.iter().cloned().collect();
                            if case == "VI" {
                                let rest: Vec<Term> = cands
                                    .iter()
                                    .filter(|v| !(k.a_s.contains(*v) && k.d_t.contains(*v)))
                                    .cloned()
                                    .collect();
                                if !rest.is_empty() {
                                    cands = rest;
                                }
                            }
                            let rank = |v: &Term| {
                                if k.e_t.contains(v) {
                                    0
                                } else if k.a_s.contains(v) {
                                    1
                                } else {
                                    2
                                }
                            };
                            let best = cands
                                .iter()
                                .min_by_key(|v| match policy {
                                    OraclePolicy::First => (rank(v), v.to_string()),
                                    OraclePolicy::Shortest => {
                                        (v.text().chars().count(), v.to_string())
                                    }
                                })
                                .unwrap()
                                .clone();
                            BTreeSet::from([best])
                        }
                    },
                };
                out_t = out_t.difference(&survivors).cloned().collect();
                out_t.extend(keep.iter().cloned());
                out_s = out_s.difference(&survivors).cloned().collect();
                out_s.extend(keep);
            }
        }
        for v in out_t {
            target.insert(Triple::new(s.clone(), p.clone(), v).unwrap());
        }
        for v in out_s {
            source.insert(Triple::new(s.clone(), p.clone(), v).unwrap());
        }
    }
    OracleOutput {
        source,
        target,
        conflicting_keys,
    }
}

pub fn oracle_assignment(resolve: Option<OraclePolicy>) -> StrategyAssignment {
    match resolve {
        None => StrategyAssignment::uniform(Sync::III),
        Some(p) => StrategyAssignment::uniform(Sync::IV).with_default_policy(
            ResolutionPolicy::new(match p {
                OraclePolicy::First => PolicyFunction::First,
                OraclePolicy::Shortest => PolicyFunction::Shortest,
            }),
        ),
    }
}

/// Evolved states of both sides: each applies only its own changeset, with
/// triples added and deleted in the same timeframe gone.
pub fn evolved(inst: &Instance) -> (Dataset, Dataset) {
    let ev = |d: &Dataset, c: &Changeset| {
        let tomb = c.added.intersect(&c.deleted);
        d.minus(&c.deleted).union(&c.added.minus(&tomb))
    };
    (
        ev(&inst.source, &inst.source_changes),
        ev(&inst.target, &inst.target_changes),
    )
}

/// Literal pairwise scan for a potential conflict on key `(s, p)` between
/// values `a` and `b`.
pub fn literal_potential_conflict(inst: &Instance, s: &Term, p: &Iri, a: &Term, b: &Term) -> bool {
    let (s_evolved, t_evolved) = evolved(inst);
    let x = |o: &Term| Triple::new(s.clone(), p.clone(), o.clone()).unwrap();
    let in_delta = |c: &Changeset, t: &Triple| c.added.contains(t) || c.deleted.contains(t);
    let check = |o1: &Term, o2: &Term| {
        let (x1, x2) = (x(o1), x(o2));
        o1 != o2
            && ((s_evolved.contains(&x1)
                && in_delta(&inst.target_changes, &x2)
                && !s_evolved.contains(&x2))
                || (t_evolved.contains(&x1)
                    && in_delta(&inst.source_changes, &x2)
                    && !t_evolved.contains(&x2)))
    };
    check(a, b) || check(b, a)
}

pub fn restrict(d: &Dataset, preds: &BTreeSet<Iri>) -> Dataset {
    d.filter_predicates(|p| preds.contains(p))
}

pub fn tally(name: &str, results: &[bool]) -> bool {
    let ok = results.iter().filter(|r| **r).count();
    println!("  {name}: {ok}/{}", results.len());
    ok == results.len()
}

pub type Freq = HashMap<String, usize>;
