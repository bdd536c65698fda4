//! Command-line front end: `diff`, `sync`, `conflicts` and `scenario`.
//!
//! Exit codes: 0 success, 2 parse or ingest error (and warnings under
//! `--strict`), 3 resolution error, 4 configuration error.
//!
//! The configuration file is TOML. Unknown keys are rejected.
//!
//! ```toml
//! default_strategy = "IV"
//! seed = 7
//! label_similarity_threshold = 0.5
//! schema = "schema.nt"          # relative to the config file
//! annotations = "annotations.tsv"
//! default_policy = { function = "any" }
//!
//! [strategies]
//! "http://dbpedia.org/property/office" = "IV"
//!
//! [policies."http://dbpedia.org/property/birthYear"]
//! function = "any"
//! seed = 3
//!
//! [policies."http://dbpedia.org/property/award"]
//! function = "topN"
//! params = { n = 2 }
//!
//! [properties."http://xmlns.com/foaf/0.1/name"]
//! kind = "datatype"            # datatype | object | unknown
//! functional = false
//! role = "label"               # none | type | label | sameas
//! threshold = 0.05
//!
//! [[scenarios]]
//! name = "mixed"
//! default_strategy = "I"
//! strategies = { "http://dbpedia.org/property/office" = "IV" }
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use thiserror::Error;

use crate::changeset::{diff, load_changeset_folder, merge_changesets, Changeset, IngestError};
use crate::conflict::{conflicts_tsv, detect_conflicts};
use crate::engine::{
    default_scenarios, run_scenarios, scenario_report_tsv, Scenario, Strategy, StrategyAssignment,
    SyncContext, SyncError,
};
use crate::ntriples::{parse_ntriples, serialize_ntriples, ParseError};
use crate::rdf::{Dataset, Iri};
use crate::resolution::{parse_annotations, PolicyFunction, ResolutionPolicy};
use crate::semantics::{load_schema, Profiles, PropertyKind, SimilarityConfig, SpecialRole};

#[derive(Debug, Parser)]
#[command(name = "coevo", version, about = "Synchronize a co-evolving RDF source and replica")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the changeset between two N-Triples files.
    Diff(DiffArgs),
    /// Synchronize source and target and write both results.
    Sync(SyncArgs),
    /// Only report conflicting keys.
    Conflicts(SyncArgs),
    /// Run every configured scenario and write a summary report.
    Scenario(SyncArgs),
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    pub old: PathBuf,
    pub new: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Sequence number used in the output file names.
    #[arg(long, default_value_t = 1)]
    pub seq: u64,
}

#[derive(Debug, Args)]
pub struct SyncArgs {
    #[arg(long)]
    pub source: PathBuf,
    #[arg(long)]
    pub target: PathBuf,
    /// Folder of source changesets.
    #[arg(long)]
    pub source_changes: Option<PathBuf>,
    /// Folder of target changesets.
    #[arg(long)]
    pub target_changes: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    /// Overrides the configured seed.
    #[arg(long, env = "COEVO_SEED")]
    pub seed: Option<u64>,
    /// N-Triples schema with class and property axioms.
    #[arg(long)]
    pub schema: Option<PathBuf>,
    /// Per-triple metadata TSV.
    #[arg(long)]
    pub annotations: Option<PathBuf>,
    /// Treat warnings as errors.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Resolution(#[from] SyncError),
    #[error("warning treated as error: {0}")]
    StrictWarning(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Resolution(_) => 3,
            CliError::Config(_) => 4,
            _ => 2,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    default_strategy: Option<String>,
    seed: Option<u64>,
    label_similarity_threshold: Option<f64>,
    schema: Option<PathBuf>,
    annotations: Option<PathBuf>,
    default_policy: Option<PolicySpec>,
    #[serde(default)]
    strategies: BTreeMap<String, String>,
    #[serde(default)]
    policies: BTreeMap<String, PolicySpec>,
    #[serde(default)]
    properties: BTreeMap<String, PropertySpec>,
    #[serde(default)]
    scenarios: Vec<ScenarioSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolicySpec {
    function: String,
    #[serde(default)]
    params: BTreeMap<String, toml::Value>,
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PropertySpec {
    kind: Option<String>,
    functional: Option<bool>,
    role: Option<String>,
    threshold: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioSpec {
    name: String,
    default_strategy: String,
    default_policy: Option<PolicySpec>,
    #[serde(default)]
    strategies: BTreeMap<String, String>,
    #[serde(default)]
    policies: BTreeMap<String, PolicySpec>,
}

/// A fully resolved configuration.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub assignment: StrategyAssignment,
    pub context: SyncContext,
    pub scenarios: Vec<Scenario>,
}

fn config_err(msg: impl std::fmt::Display) -> CliError {
    CliError::Config(msg.to_string())
}

fn parse_iri(s: &str) -> Result<Iri, CliError> {
    Iri::new(s).map_err(|e| config_err(format!("{s:?}: {e}")))
}

fn parse_strategy(s: &str) -> Result<Strategy, CliError> {
    s.parse().map_err(config_err)
}

fn build_policy(spec: &PolicySpec) -> Result<ResolutionPolicy, CliError> {
    let function: PolicyFunction = spec.function.parse().map_err(config_err)?;
    let mut policy = ResolutionPolicy::new(function);
    for (k, v) in &spec.params {
        let value = match v {
            toml::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        policy = policy.with_param(k, value);
    }
    policy.rng_seed = spec.seed;
    policy.validate().map_err(config_err)?;
    Ok(policy)
}

fn build_assignment(
    default_strategy: Strategy,
    default_policy: Option<&PolicySpec>,
    strategies: &BTreeMap<String, String>,
    policies: &BTreeMap<String, PolicySpec>,
) -> Result<StrategyAssignment, CliError> {
    let mut a = StrategyAssignment::uniform(default_strategy);
    if let Some(p) = default_policy {
        a = a.with_default_policy(build_policy(p)?);
    }
    for (p, s) in strategies {
        a = a.with_predicate(parse_iri(p)?, parse_strategy(s)?);
    }
    for (p, spec) in policies {
        a = a.with_policy(parse_iri(p)?, build_policy(spec)?);
    }
    Ok(a)
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_dataset(path: &Path) -> Result<Dataset, CliError> {
    parse_ntriples(&read_file(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

impl EngineConfig {
    /// Builds the configuration from an optional config file and the
    /// command-line overrides.
    pub fn load(args: &SyncArgs) -> Result<Self, CliError> {
        let (file, base_dir) = match &args.config {
            Some(path) => {
                let text = String::from_utf8(read_file(path)?)
                    .map_err(|e| config_err(format!("{}: {e}", path.display())))?;
                let file: ConfigFile = toml::from_str(&text)
                    .map_err(|e| config_err(format!("{}: {e}", path.display())))?;
                let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
                (file, dir)
            }
            None => (ConfigFile::default(), PathBuf::new()),
        };

        let default_strategy = match &file.default_strategy {
            Some(s) => parse_strategy(s)?,
            None => Strategy::IV,
        };
        let assignment = build_assignment(
            default_strategy,
            file.default_policy.as_ref(),
            &file.strategies,
            &file.policies,
        )?;

        let schema_path = args
            .schema
            .clone()
            .or_else(|| file.schema.as_ref().map(|p| base_dir.join(p)));
        let schema = match &schema_path {
            Some(p) => load_schema(&read_dataset(p)?),
            None => Default::default(),
        };
        let annotations_path = args
            .annotations
            .clone()
            .or_else(|| file.annotations.as_ref().map(|p| base_dir.join(p)));
        let annotations = match &annotations_path {
            Some(p) => {
                let text = String::from_utf8(read_file(p)?)
                    .map_err(|e| config_err(format!("{}: {e}", p.display())))?;
                parse_annotations(&text).map_err(|e| CliError::Parse {
                    path: p.clone(),
                    source: ParseError {
                        line: e.line,
                        reason: e.reason,
                    },
                })?
            }
            None => Default::default(),
        };

        let mut similarity =
            SimilarityConfig::new(file.label_similarity_threshold.unwrap_or(0.5)).map_err(config_err)?;
        let mut profiles = Profiles::from_schema(&schema);
        for (p, spec) in &file.properties {
            let iri = parse_iri(p)?;
            let mut profile = profiles.get(&iri);
            if let Some(kind) = &spec.kind {
                profile.kind = match kind.as_str() {
                    "datatype" => PropertyKind::DatatypeProperty,
                    "object" => PropertyKind::ObjectProperty,
                    "unknown" => PropertyKind::Unknown,
                    other => return Err(config_err(format!("{p}: unknown kind {other:?}"))),
                };
            }
            if let Some(f) = spec.functional {
                profile.functional = f;
            }
            if let Some(role) = &spec.role {
                profile.role = match role.as_str() {
                    "none" => SpecialRole::None,
                    "type" => SpecialRole::TypeAssertion,
                    "label" => SpecialRole::LabelLike,
                    "sameas" => SpecialRole::SameAsLike,
                    other => return Err(config_err(format!("{p}: unknown role {other:?}"))),
                };
            }
            profiles.set(profile).map_err(config_err)?;
            if let Some(t) = spec.threshold {
                similarity = similarity
                    .with_property_threshold(iri, t)
                    .map_err(config_err)?;
            }
        }

        let scenarios = if file.scenarios.is_empty() {
            default_scenarios()
        } else {
            file.scenarios
                .iter()
                .map(|s| {
                    Ok(Scenario {
                        name: s.name.clone(),
                        assignment: build_assignment(
                            parse_strategy(&s.default_strategy)?,
                            s.default_policy.as_ref(),
                            &s.strategies,
                            &s.policies,
                        )?,
                    })
                })
                .collect::<Result<_, CliError>>()?
        };

        Ok(EngineConfig {
            assignment,
            context: SyncContext {
                profiles,
                schema,
                similarity,
                seed: args.seed.or(file.seed).unwrap_or(0),
                annotations,
            },
            scenarios,
        })
    }
}

fn load_changes(dir: Option<&Path>) -> Result<Changeset, CliError> {
    match dir {
        Some(dir) => Ok(merge_changesets(&load_changeset_folder(dir)?).to_changeset()),
        None => Ok(Changeset::default()),
    }
}

struct Inputs {
    source: Dataset,
    target: Dataset,
    source_changes: Changeset,
    target_changes: Changeset,
}

fn load_inputs(args: &SyncArgs) -> Result<Inputs, CliError> {
    Ok(Inputs {
        source: read_dataset(&args.source)?,
        target: read_dataset(&args.target)?,
        source_changes: load_changes(args.source_changes.as_deref())?,
        target_changes: load_changes(args.target_changes.as_deref())?,
    })
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::create_dir_all(dir)
        .and_then(|_| fs::write(&path, contents))
        .map_err(|source| CliError::Write { path, source })
}

fn warn(warnings: &[String], strict: bool) -> Result<(), CliError> {
    for w in warnings {
        eprintln!("warning: {w}");
    }
    match warnings.first() {
        Some(w) if strict => Err(CliError::StrictWarning(w.clone())),
        _ => Ok(()),
    }
}

pub fn cmd_diff(args: &DiffArgs) -> Result<(), CliError> {
    let old = read_dataset(&args.old)?;
    let new = read_dataset(&args.new)?;
    let c = diff(&old, &new);
    write(
        &args.out,
        &format!("{:06}.added.nt", args.seq),
        &serialize_ntriples(&c.added),
    )?;
    write(
        &args.out,
        &format!("{:06}.removed.nt", args.seq),
        &serialize_ntriples(&c.deleted),
    )?;
    println!("added {}, removed {}", c.added.len(), c.deleted.len());
    Ok(())
}

pub fn cmd_sync(args: &SyncArgs) -> Result<(), CliError> {
    let config = EngineConfig::load(args)?;
    let inputs = load_inputs(args)?;
    let scenario = Scenario {
        name: "sync".to_string(),
        assignment: config.assignment.clone(),
    };
    let results = run_scenarios(
        &inputs.source,
        &inputs.target,
        &inputs.source_changes,
        &inputs.target_changes,
        std::slice::from_ref(&scenario),
        &config.context,
    )?;
    let result = &results[0];
    let o = &result.outcome;
    let warnings: Vec<String> = o.warnings.iter().map(ToString::to_string).collect();
    warn(&warnings, args.strict)?;
    let out = &args.out;
    write(out, "source.after.nt", &serialize_ntriples(&o.source_after))?;
    write(out, "target.after.nt", &serialize_ntriples(&o.target_after))?;
    write(out, "out-source.added.nt", &serialize_ntriples(&o.out_source.added))?;
    write(out, "out-source.removed.nt", &serialize_ntriples(&o.out_source.deleted))?;
    write(out, "out-target.added.nt", &serialize_ntriples(&o.out_target.added))?;
    write(out, "out-target.removed.nt", &serialize_ntriples(&o.out_target.deleted))?;
    write(out, "conflicts.tsv", &conflicts_tsv(&o.conflicts))?;
    write(out, "report.tsv", &scenario_report_tsv(&results))?;
    println!(
        "source {} triples, target {} triples, {} conflicting keys",
        o.source_after.len(),
        o.target_after.len(),
        o.conflicts.iter().filter(|r| r.semantically_conflicting).count()
    );
    Ok(())
}

pub fn cmd_conflicts(args: &SyncArgs) -> Result<(), CliError> {
    let config = EngineConfig::load(args)?;
    let inputs = load_inputs(args)?;
    let ctx = &config.context;
    let records = detect_conflicts(
        &inputs.source_changes.normalize(),
        &inputs.target_changes.normalize(),
        &inputs.target,
        &ctx.profiles,
        &ctx.schema,
        &ctx.similarity,
    );
    write(&args.out, "conflicts.tsv", &conflicts_tsv(&records))?;
    println!(
        "{} keys analysed, {} conflicting",
        records.len(),
        records.iter().filter(|r| r.semantically_conflicting).count()
    );
    Ok(())
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '-' })
        .collect()
}

pub fn cmd_scenario(args: &SyncArgs) -> Result<(), CliError> {
    let config = EngineConfig::load(args)?;
    let inputs = load_inputs(args)?;
    let results = run_scenarios(
        &inputs.source,
        &inputs.target,
        &inputs.source_changes,
        &inputs.target_changes,
        &config.scenarios,
        &config.context,
    )?;
    let mut warnings: Vec<String> = Vec::new();
    for r in &results {
        for w in &r.outcome.warnings {
            let w = format!("scenario {}: {w}", r.name);
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
    }
    warn(&warnings, args.strict)?;
    for r in &results {
        let stem = format!("scenario-{}", file_stem(&r.name));
        write(
            &args.out,
            &format!("{stem}.source.after.nt"),
            &serialize_ntriples(&r.outcome.source_after),
        )?;
        write(
            &args.out,
            &format!("{stem}.target.after.nt"),
            &serialize_ntriples(&r.outcome.target_after),
        )?;
    }
    let report = scenario_report_tsv(&results);
    write(&args.out, "report.tsv", &report)?;
    print!("{report}");
    Ok(())
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Diff(a) => cmd_diff(a),
        Command::Sync(a) => cmd_sync(a),
        Command::Conflicts(a) => cmd_conflicts(a),
        Command::Scenario(a) => cmd_scenario(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
