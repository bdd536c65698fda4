//! Conflict resolution policies.
//!
//! Every function of the classic data-fusion catalog is available:
//!
//! * deciding: `any`, `bestSource`, `globalVote`, `first`, `latest`,
//!   `threshold`, `best`, `topN`
//! * mediating: `stdDev`, `variance`, `average`, `median`, `sum`
//! * ignoring: `concatenation`
//! * avoiding: `longest`, `shortest`, `max`, `min`, `chooseDepending`,
//!   `chooseCorresponding`, `mostComplete`
//!
//! Deciding and avoiding functions only ever keep candidate values. Mediating
//! functions and `concatenation` synthesize a new literal. Ties are always
//! broken by the serialized term order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use rust_decimal::{Decimal, MathematicalOps};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ntriples::parse_term;
use crate::rdf::{canonical_cmp, Iri, Literal, Term, Triple};
use crate::semantics::{PropertyProfile, SpecialRole};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PolicyFunction {
    Any,
    BestSource,
    GlobalVote,
    First,
    Latest,
    Threshold,
    Best,
    TopN,
    StdDev,
    Variance,
    Average,
    Median,
    Sum,
    Concatenation,
    Longest,
    Shortest,
    Max,
    Min,
    ChooseDepending,
    ChooseCorresponding,
    MostComplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyCategory {
    Deciding,
    Mediating,
    Ignoring,
    Avoiding,
}

impl PolicyFunction {
    pub const ALL: [PolicyFunction; 21] = [
        PolicyFunction::Any,
        PolicyFunction::BestSource,
        PolicyFunction::GlobalVote,
        PolicyFunction::First,
        PolicyFunction::Latest,
        PolicyFunction::Threshold,
        PolicyFunction::Best,
        PolicyFunction::TopN,
        PolicyFunction::StdDev,
        PolicyFunction::Variance,
        PolicyFunction::Average,
        PolicyFunction::Median,
        PolicyFunction::Sum,
        PolicyFunction::Concatenation,
        PolicyFunction::Longest,
        PolicyFunction::Shortest,
        PolicyFunction::Max,
        PolicyFunction::Min,
        PolicyFunction::ChooseDepending,
        PolicyFunction::ChooseCorresponding,
        PolicyFunction::MostComplete,
    ];

    pub fn name(self) -> &'static str {
        use PolicyFunction::*;
        match self {
            Any => "any",
            BestSource => "bestSource",
            GlobalVote => "globalVote",
            First => "first",
            Latest => "latest",
            Threshold => "threshold",
            Best => "best",
            TopN => "topN",
            StdDev => "stdDev",
            Variance => "variance",
            Average => "average",
            Median => "median",
            Sum => "sum",
            Concatenation => "concatenation",
            Longest => "longest",
            Shortest => "shortest",
            Max => "max",
            Min => "min",
            ChooseDepending => "chooseDepending",
            ChooseCorresponding => "chooseCorresponding",
            MostComplete => "mostComplete",
        }
    }

    pub fn category(self) -> PolicyCategory {
        use PolicyFunction::*;
        match self {
            Any | BestSource | GlobalVote | First | Latest | Threshold | Best | TopN => {
                PolicyCategory::Deciding
            }
            StdDev | Variance | Average | Median | Sum => PolicyCategory::Mediating,
            Concatenation => PolicyCategory::Ignoring,
            Longest | Shortest | Max | Min | ChooseDepending | ChooseCorresponding
            | MostComplete => PolicyCategory::Avoiding,
        }
    }

    /// Functions that may produce a value none of the candidates had.
    pub fn synthesizes(self) -> bool {
        matches!(
            self.category(),
            PolicyCategory::Mediating | PolicyCategory::Ignoring
        )
    }

    fn required_params(self) -> &'static [&'static str] {
        use PolicyFunction::*;
        match self {
            BestSource => &["preferred"],
            Threshold => &["threshold"],
            TopN => &["n"],
            ChooseDepending => &["attribute", "value"],
            ChooseCorresponding => &["attribute"],
            _ => &[],
        }
    }
}

impl fmt::Display for PolicyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyFunction {
    type Err = PolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolicyFunction::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| PolicyError::UnknownFunction(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyError {
    #[error("unknown resolution function {0:?}")]
    UnknownFunction(String),
    #[error("{function} requires parameter {param:?}")]
    MissingParam {
        function: PolicyFunction,
        param: &'static str,
    },
    #[error("{function}: invalid value {value:?} for parameter {param:?}")]
    InvalidParam {
        function: PolicyFunction,
        param: &'static str,
        value: String,
    },
}

/// A resolution function together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionPolicy {
    pub function: PolicyFunction,
    pub params: BTreeMap<String, String>,
    pub rng_seed: Option<u64>,
}

impl ResolutionPolicy {
    pub fn new(function: PolicyFunction) -> Self {
        ResolutionPolicy {
            function,
            params: BTreeMap::new(),
            rng_seed: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<String>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = Some(seed);
        self
    }

    /// Checks that required parameters are present and well formed.
    pub fn validate(&self) -> Result<(), PolicyError> {
        for &param in self.function.required_params() {
            let value = self.param(param)?;
            let ok = match param {
                "threshold" => value.parse::<f64>().is_ok(),
                "n" => value.parse::<usize>().is_ok_and(|n| n > 0),
                "attribute" => Iri::new(value).is_ok(),
                "value" => parse_term(value).is_ok(),
                _ => true,
            };
            if !ok {
                return Err(self.invalid(param));
            }
        }
        Ok(())
    }

    fn param(&self, name: &'static str) -> Result<&str, PolicyError> {
        self.params
            .get(name)
            .map(String::as_str)
            .ok_or(PolicyError::MissingParam {
                function: self.function,
                param: name,
            })
    }

    fn invalid(&self, param: &'static str) -> PolicyError {
        PolicyError::InvalidParam {
            function: self.function,
            param,
            value: self.params.get(param).cloned().unwrap_or_default(),
        }
    }
}

impl fmt::Display for ResolutionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.function)?;
        if !self.params.is_empty() {
            let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", params.join(","))?;
        }
        if let Some(seed) = self.rng_seed {
            write!(f, "[seed={seed}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Target,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Source => "source",
            Side::Target => "target",
        }
    }
}

/// Per-value metadata. `order_index` is always present; the other fields
/// come from the annotations file.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueMetadata {
    pub timestamp: Option<DateTime<Utc>>,
    pub quality_score: Option<f64>,
    pub source_name: String,
    pub order_index: usize,
    /// Dataset sides the value originates from; existing values belong to both.
    pub sides: Vec<Side>,
}

impl ValueMetadata {
    pub fn new(source_name: impl Into<String>, order_index: usize) -> Self {
        ValueMetadata {
            timestamp: None,
            quality_score: None,
            source_name: source_name.into(),
            order_index,
            sides: Vec::new(),
        }
    }

    pub fn with_sides(mut self, sides: &[Side]) -> Self {
        self.sides = sides.to_vec();
        self
    }

    pub fn with_timestamp(mut self, ts: DateTime<Utc>) -> Self {
        self.timestamp = Some(ts);
        self
    }

    pub fn with_quality(mut self, score: f64) -> Self {
        self.quality_score = Some(score);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Resolution {
    pub kept: Vec<Term>,
    pub dropped: Vec<Term>,
    pub policy_used: ResolutionPolicy,
}

impl Resolution {
    /// True when `kept` holds a value computed from the candidates rather
    /// than chosen among them.
    pub fn is_synthesized(&self) -> bool {
        self.policy_used.function.synthesizes() && !self.dropped.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResolveError {
    #[error("{function} requires metadata that is not available: {detail}")]
    MetadataMissing {
        function: PolicyFunction,
        detail: String,
    },
    #[error("{function} requires numeric candidates, got {value}")]
    NonNumericCandidate {
        function: PolicyFunction,
        value: Term,
    },
    #[error("no candidates to resolve")]
    EmptyCandidates,
    #[error(transparent)]
    Policy(#[from] PolicyError),
}

/// Dataset-level facts some functions need beyond the candidates themselves.
/// Every method defaults to "unknown", which makes the dependent functions
/// fail with [`ResolveError::MetadataMissing`].
pub trait ResolutionEnv {
    /// Occurrences of `(·, predicate, value)` across the combined dataset.
    fn value_frequency(&self, _predicate: &Iri, _value: &Term) -> Option<usize> {
        None
    }

    /// Whether a side asserts the triple after its own changes.
    fn side_asserts(&self, _side: Side, _triple: &Triple) -> Option<bool> {
        None
    }

    /// Subjects of the combined dataset lacking `predicate` on the given side.
    fn absent_count(&self, _side: Side, _predicate: &Iri) -> Option<usize> {
        None
    }

    /// The side whose value was kept for `(subject, attribute)` earlier in
    /// this run.
    fn chosen_side(&self, _subject: &Term, _attribute: &Iri) -> Option<Side> {
        None
    }
}

/// Metadata for one triple, read from the annotations file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Annotation {
    pub timestamp: Option<DateTime<Utc>>,
    pub quality_score: Option<f64>,
    pub source_name: Option<String>,
}

pub type Annotations = HashMap<Triple, Annotation>;

#[derive(Debug, Error)]
#[error("annotations line {line}: {reason}")]
pub struct AnnotationError {
    pub line: usize,
    pub reason: String,
}

/// Parses the annotations TSV: subject IRI, predicate IRI, object term,
/// ISO-8601 timestamp, quality score in [0,1], source name. Empty fields are
/// allowed for timestamp, score and source. Blank lines and lines starting
/// with `#` are skipped.
pub fn parse_annotations(text: &str) -> Result<Annotations, AnnotationError> {
    let mut out = Annotations::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |reason: String| AnnotationError { line, reason };
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = raw.split('\t').collect();
        if cols.len() != 6 {
            return Err(err(format!("expected 6 columns, found {}", cols.len())));
        }
        let subject = parse_term(cols[0].trim()).map_err(|e| err(e.to_string()))?;
        let predicate = match parse_term(cols[1].trim()).map_err(|e| err(e.to_string()))? {
            Term::Iri(iri) => iri,
            other => return Err(err(format!("predicate must be an IRI, got {other}"))),
        };
        let object = parse_term(cols[2].trim()).map_err(|e| err(e.to_string()))?;
        let triple = Triple::new(subject, predicate, object).map_err(|e| err(e.to_string()))?;
        let timestamp = match cols[3].trim() {
            "" => None,
            ts => Some(
                DateTime::parse_from_rfc3339(ts)
                    .map_err(|e| err(format!("timestamp {ts:?}: {e}")))?
                    .with_timezone(&Utc),
            ),
        };
        let quality_score = match cols[4].trim() {
            "" => None,
            q => {
                let v: f64 = q.parse().map_err(|_| err(format!("quality score {q:?}")))?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(err(format!("quality score {v} outside [0,1]")));
                }
                Some(v)
            }
        };
        let source_name = Some(cols[5].trim()).filter(|s| !s.is_empty()).map(str::to_string);
        out.insert(
            triple,
            Annotation {
                timestamp,
                quality_score,
                source_name,
            },
        );
    }
    Ok(out)
}

/// An environment without any dataset knowledge.
pub struct NoEnv;

impl ResolutionEnv for NoEnv {}

/// The `(subject, predicate)` being resolved.
#[derive(Debug, Clone, Copy)]
pub struct ResolveKey<'a> {
    pub subject: &'a Term,
    pub predicate: &'a Iri,
}

/// xorshift64* with the multiplier 0x2545F4914F6CDD1D, seeded from the policy
/// seed mixed with an FNV-1a hash of the key.
#[derive(Debug, Clone)]
pub struct KeyedRng {
    state: u64,
}

impl KeyedRng {
    pub fn new(seed: u64, key: ResolveKey<'_>) -> Self {
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        let text = format!("{} {}", key.subject, key.predicate);
        for b in text.bytes() {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        let state = seed ^ hash;
        KeyedRng {
            state: if state == 0 { 0x9e37_79b9_7f4a_7c15 } else { state },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_f491_4f6c_dd1d)
    }

    pub fn pick(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Parses a literal's lexical form as a decimal number. Language-tagged
/// strings, IRIs and blank nodes are not numeric.
pub fn numeric_value(term: &Term) -> Option<Decimal> {
    let lit = term.as_literal()?;
    if lit.language().is_some() {
        return None;
    }
    let lexical = lit.lexical().trim();
    let lexical = lexical.strip_prefix('+').unwrap_or(lexical);
    if lexical.is_empty() {
        return None;
    }
    if lexical.contains(['e', 'E']) {
        Decimal::from_scientific(lexical).ok()
    } else {
        Decimal::from_str_exact(lexical).ok()
    }
}

fn decimal_literal(value: Decimal) -> Term {
    Term::Literal(Literal::typed(
        value.normalize().to_string(),
        vocab::xsd_decimal(),
    ))
}

/// Picks a policy from the shape of the candidates: numeric literals → `max`,
/// string literals → `longest`, IRIs → `first`, anything else → `any`.
pub fn auto_select_policy(profile: &PropertyProfile, candidates: &[Term]) -> ResolutionPolicy {
    let all = |pred: fn(&Term) -> bool| !candidates.is_empty() && candidates.iter().all(pred);
    let function = if profile.role == SpecialRole::LabelLike && all(Term::is_literal) {
        PolicyFunction::Longest
    } else if all(|t| numeric_value(t).is_some()) {
        PolicyFunction::Max
    } else if all(|t| t.as_literal().is_some_and(Literal::is_string)) {
        PolicyFunction::Longest
    } else if all(|t| t.as_iri().is_some()) {
        PolicyFunction::First
    } else {
        PolicyFunction::Any
    };
    ResolutionPolicy::new(function)
}

struct Cand<'a> {
    value: &'a Term,
    meta: &'a ValueMetadata,
}

/// Applies a policy to the candidate values of one key.
pub fn resolve(
    key: ResolveKey<'_>,
    candidates: &[(Term, ValueMetadata)],
    policy: &ResolutionPolicy,
    env: &dyn ResolutionEnv,
) -> Result<Resolution, ResolveError> {
    policy.validate()?;
    let mut cands: Vec<Cand<'_>> = Vec::with_capacity(candidates.len());
    for (value, meta) in candidates {
        // a repeated value keeps its earliest-ranked metadata
        match cands.iter_mut().find(|c| c.value == value) {
            Some(c) if meta.order_index < c.meta.order_index => c.meta = meta,
            Some(_) => {}
            None => cands.push(Cand { value, meta }),
        }
    }
    if cands.is_empty() {
        return Err(ResolveError::EmptyCandidates);
    }
    cands.sort_by(|a, b| canonical_cmp(a.value, b.value));
    let all: Vec<Term> = cands.iter().map(|c| c.value.clone()).collect();

    if cands.len() == 1 {
        return Ok(Resolution {
            kept: all,
            dropped: Vec::new(),
            policy_used: policy.clone(),
        });
    }

    let function = policy.function;
    let missing = |detail: String| ResolveError::MetadataMissing { function, detail };
    use PolicyFunction::*;

    let kept: Vec<Term> = match function {
        Any => {
            let mut rng = KeyedRng::new(policy.rng_seed.unwrap_or(0), key);
            vec![all[rng.pick(all.len())].clone()]
        }
        BestSource => {
            let preferred = policy.param("preferred")?;
            let hit = cands
                .iter()
                .find(|c| c.meta.source_name == preferred)
                .ok_or_else(|| missing(format!("no candidate from source {preferred:?}")))?;
            vec![hit.value.clone()]
        }
        GlobalVote => {
            let mut best: Option<(usize, &Term)> = None;
            for c in &cands {
                let freq = env
                    .value_frequency(key.predicate, c.value)
                    .ok_or_else(|| missing("value frequencies".into()))?;
                if best.is_none_or(|(f, _)| freq > f) {
                    best = Some((freq, c.value));
                }
            }
            vec![best.expect("non-empty").1.clone()]
        }
        First => {
            let c = cands
                .iter()
                .min_by_key(|c| c.meta.order_index)
                .expect("non-empty");
            vec![c.value.clone()]
        }
        Latest => {
            let mut best: Option<(DateTime<Utc>, &Term)> = None;
            for c in &cands {
                let ts = c
                    .meta
                    .timestamp
                    .ok_or_else(|| missing(format!("timestamp of {}", c.value)))?;
                if best.is_none_or(|(b, _)| ts > b) {
                    best = Some((ts, c.value));
                }
            }
            vec![best.expect("non-empty").1.clone()]
        }
        Threshold | Best | TopN => {
            let mut scored = Vec::with_capacity(cands.len());
            for c in &cands {
                let score = c
                    .meta
                    .quality_score
                    .ok_or_else(|| missing(format!("quality score of {}", c.value)))?;
                scored.push((score, c.value));
            }
            // stable sort keeps canonical order among equal scores
            scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
            match function {
                Best => vec![scored[0].1.clone()],
                TopN => {
                    let n: usize = policy
                        .param("n")?
                        .parse()
                        .map_err(|_| policy.invalid("n"))?;
                    scored.iter().take(n).map(|(_, v)| (*v).clone()).collect()
                }
                _ => {
                    let threshold: f64 = policy
                        .param("threshold")?
                        .parse()
                        .map_err(|_| policy.invalid("threshold"))?;
                    let above: Vec<Term> = scored
                        .iter()
                        .filter(|(s, _)| *s > threshold)
                        .map(|(_, v)| (*v).clone())
                        .collect();
                    if above.is_empty() {
                        // nothing passes: fall back to the best-scored value
                        vec![scored[0].1.clone()]
                    } else {
                        above
                    }
                }
            }
        }
        StdDev | Variance | Average | Median | Sum | Max | Min => {
            let mut numbers = Vec::with_capacity(cands.len());
            for c in &cands {
                let n = numeric_value(c.value).ok_or_else(|| ResolveError::NonNumericCandidate {
                    function,
                    value: c.value.clone(),
                })?;
                numbers.push((n, c.value));
            }
            match function {
                Max | Min => {
                    let mut pick = &numbers[0];
                    for n in &numbers[1..] {
                        let better = if function == Max {
                            n.0 > pick.0
                        } else {
                            n.0 < pick.0
                        };
                        if better {
                            pick = n;
                        }
                    }
                    vec![pick.1.clone()]
                }
                _ => {
                    let values: Vec<Decimal> = numbers.iter().map(|n| n.0).collect();
                    vec![decimal_literal(mediate(function, &values))]
                }
            }
        }
        Concatenation => {
            let joined: Vec<&str> = cands.iter().map(|c| c.value.text()).collect();
            vec![Term::Literal(Literal::string(joined.join("; ")))]
        }
        Longest | Shortest => {
            let mut pick = &cands[0];
            for c in &cands[1..] {
                let (len, best) = (c.value.text().chars().count(), pick.value.text().chars().count());
                if (function == Longest && len > best) || (function == Shortest && len < best) {
                    pick = c;
                }
            }
            vec![pick.value.clone()]
        }
        ChooseDepending => {
            let attribute = Iri::new(policy.param("attribute")?).map_err(|_| policy.invalid("attribute"))?;
            let wanted = parse_term(policy.param("value")?).map_err(|_| policy.invalid("value"))?;
            let probe = Triple::new(key.subject.clone(), attribute, wanted)
                .map_err(|_| policy.invalid("value"))?;
            let mut hit = None;
            'outer: for c in &cands {
                for &side in &c.meta.sides {
                    let asserts = env
                        .side_asserts(side, &probe)
                        .ok_or_else(|| missing("side datasets".into()))?;
                    if asserts {
                        hit = Some(c.value);
                        break 'outer;
                    }
                }
            }
            let hit = hit.ok_or_else(|| missing(format!("no side asserts {probe}")))?;
            vec![hit.clone()]
        }
        ChooseCorresponding => {
            let attribute = Iri::new(policy.param("attribute")?).map_err(|_| policy.invalid("attribute"))?;
            let side = env
                .chosen_side(key.subject, &attribute)
                .ok_or_else(|| missing(format!("no earlier choice for {attribute}")))?;
            let hit = cands
                .iter()
                .find(|c| c.meta.sides.contains(&side))
                .ok_or_else(|| missing(format!("no candidate from the {} side", side.name())))?;
            vec![hit.value.clone()]
        }
        MostComplete => {
            let absent = |side| {
                env.absent_count(side, key.predicate)
                    .ok_or_else(|| missing("per-side completeness".into()))
            };
            let (source_absent, target_absent) = (absent(Side::Source)?, absent(Side::Target)?);
            let order = if source_absent < target_absent {
                [Side::Source, Side::Target]
            } else {
                [Side::Target, Side::Source]
            };
            let hit = order
                .iter()
                .find_map(|side| cands.iter().find(|c| c.meta.sides.contains(side)))
                .ok_or_else(|| missing("candidate sides".into()))?;
            vec![hit.value.clone()]
        }
    };

    let dropped = if function.synthesizes() {
        all
    } else {
        all.into_iter().filter(|v| !kept.contains(v)).collect()
    };
    Ok(Resolution {
        kept,
        dropped,
        policy_used: policy.clone(),
    })
}

fn mediate(function: PolicyFunction, values: &[Decimal]) -> Decimal {
    let n = Decimal::from(values.len());
    let sum: Decimal = values.iter().copied().sum();
    let mean = sum / n;
    let variance = || {
        values
            .iter()
            .map(|v| (*v - mean) * (*v - mean))
            .sum::<Decimal>()
            / n
    };
    match function {
        PolicyFunction::Sum => sum,
        PolicyFunction::Average => mean,
        PolicyFunction::Median => {
            let mut sorted = values.to_vec();
            sorted.sort();
            let mid = sorted.len() / 2;
            if sorted.len() % 2 == 1 {
                sorted[mid]
            } else {
                (sorted[mid - 1] + sorted[mid]) / Decimal::TWO
            }
        }
        PolicyFunction::Variance => variance(),
        PolicyFunction::StdDev => variance().sqrt().unwrap_or_default(),
        _ => unreachable!("not a mediating function"),
    }
}
