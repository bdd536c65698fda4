//! Changesets between dataset versions, and ingestion of changeset folders
//! laid out like the DBpedia-live mirror (`NNNNNN.added.nt[.gz]`,
//! `NNNNNN.removed.nt[.gz]`).

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;
use thiserror::Error;

use crate::ntriples::{self, ParseError};
use crate::rdf::{Dataset, Triple};

/// The triples added to and deleted from a dataset over one timeframe.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Changeset {
    pub added: Dataset,
    pub deleted: Dataset,
    pub timeframe: Option<(String, String)>,
}

/// A normalized changeset plus the triples that were both added and deleted
/// within its timeframe.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NetChangeset {
    pub changes: Changeset,
    pub tombstones: Dataset,
}

/// A deleted triple that was not present in the dataset it was applied to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApplyWarning {
    pub triple: Triple,
}

impl Changeset {
    pub fn new(added: Dataset, deleted: Dataset) -> Self {
        Changeset {
            added,
            deleted,
            timeframe: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.added.is_empty() && self.deleted.is_empty()
    }

    /// Swaps the added and deleted halves.
    pub fn inverse(&self) -> Changeset {
        Changeset {
            added: self.deleted.clone(),
            deleted: self.added.clone(),
            timeframe: self
                .timeframe
                .as_ref()
                .map(|(from, to)| (to.clone(), from.clone())),
        }
    }

    /// Removes triples that are both added and deleted, returning them as
    /// tombstones.
    pub fn normalize(&self) -> NetChangeset {
        let tombstones = self.added.intersect(&self.deleted);
        if tombstones.is_empty() {
            return NetChangeset {
                changes: self.clone(),
                tombstones,
            };
        }
        NetChangeset {
            changes: Changeset {
                added: self.added.minus(&tombstones),
                deleted: self.deleted.minus(&tombstones),
                timeframe: self.timeframe.clone(),
            },
            tombstones,
        }
    }
}

impl NetChangeset {
    /// Deletions including tombstones: a triple added and then deleted is
    /// gone at the end of the timeframe.
    pub fn effective_deletions(&self) -> Dataset {
        self.changes.deleted.union(&self.tombstones)
    }

    /// `(d \ (deleted ∪ tombstones)) ∪ added`
    pub fn apply_to(&self, d: &Dataset) -> Dataset {
        d.minus(&self.effective_deletions()).union(&self.changes.added)
    }
}

impl NetChangeset {
    /// A plain changeset that normalizes back to `self`: tombstones appear in
    /// both halves.
    pub fn to_changeset(&self) -> Changeset {
        Changeset {
            added: self.changes.added.union(&self.tombstones),
            deleted: self.changes.deleted.union(&self.tombstones),
            timeframe: self.changes.timeframe.clone(),
        }
    }
}

impl From<Changeset> for NetChangeset {
    fn from(c: Changeset) -> Self {
        c.normalize()
    }
}

/// `δ⁺ = new \ old`, `δ⁻ = old \ new`.
pub fn diff(old: &Dataset, new: &Dataset) -> Changeset {
    let mut c = Changeset::new(new.minus(old), old.minus(new));
    if let (Some(from), Some(to)) = (old.version_label(), new.version_label()) {
        c.timeframe = Some((from.to_string(), to.to_string()));
    }
    c
}

/// `(d \ deleted) ∪ added`.
pub fn apply(d: &Dataset, c: &Changeset) -> Dataset {
    apply_with_warnings(d, c).0
}

/// Like [`apply`], also reporting each deleted triple absent from `d`.
pub fn apply_with_warnings(d: &Dataset, c: &Changeset) -> (Dataset, Vec<ApplyWarning>) {
    let warnings = c
        .deleted
        .iter()
        .filter(|t| !d.contains(t))
        .map(|t| ApplyWarning { triple: t.clone() })
        .collect();
    (d.minus(&c.deleted).union(&c.added), warnings)
}

pub fn normalize(c: &Changeset) -> NetChangeset {
    c.normalize()
}

/// Folds an ordered list of changesets into one net changeset. A later
/// addition cancels an earlier deletion of the same triple; a later deletion
/// of an earlier addition leaves the triple deleted and records a tombstone.
pub fn merge_changesets(list: &[Changeset]) -> NetChangeset {
    if let [single] = list {
        return single.normalize();
    }
    let mut added = Dataset::new();
    let mut deleted = Dataset::new();
    let mut tombstones = Dataset::new();
    for c in list {
        let net = c.normalize();
        for t in net.tombstones.iter() {
            tombstones.insert(t.clone());
        }
        for t in net.changes.deleted.iter() {
            if added.remove(t) {
                tombstones.insert(t.clone());
            }
            deleted.insert(t.clone());
        }
        for t in net.changes.added.iter() {
            tombstones.remove(t);
            if !deleted.remove(t) {
                added.insert(t.clone());
            }
        }
    }
    let timeframe = match (list.first(), list.last()) {
        (Some(first), Some(last)) => match (&first.timeframe, &last.timeframe) {
            (Some((from, _)), Some((_, to))) => Some((from.clone(), to.clone())),
            _ => None,
        },
        _ => None,
    };
    NetChangeset {
        changes: Changeset {
            added,
            deleted,
            timeframe,
        },
        tombstones,
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("duplicate changeset file for sequence {seq} ({kind}): {first} and {second}")]
    DuplicateSequence {
        seq: u64,
        kind: &'static str,
        first: PathBuf,
        second: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Half {
    Added,
    Removed,
}

impl Half {
    fn name(self) -> &'static str {
        match self {
            Half::Added => "added",
            Half::Removed => "removed",
        }
    }
}

fn classify_file_name(name: &str) -> Option<(u64, Half, bool)> {
    let (stem, gz) = match name.strip_suffix(".gz") {
        Some(stem) => (stem, true),
        None => (name, false),
    };
    let stem = stem.strip_suffix(".nt")?;
    let (seq, half) = match stem.strip_suffix(".added") {
        Some(seq) => (seq, Half::Added),
        None => (stem.strip_suffix(".removed")?, Half::Removed),
    };
    if seq.is_empty() || !seq.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some((seq.parse().ok()?, half, gz))
}

/// Reads a changeset file, decompressing `.gz` files.
pub fn read_changeset_file(path: &Path) -> Result<Dataset, IngestError> {
    let io_err = |source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    };
    let raw = fs::read(path).map_err(io_err)?;
    let bytes = if path.extension().is_some_and(|e| e == "gz") {
        let mut out = Vec::new();
        GzDecoder::new(raw.as_slice())
            .read_to_end(&mut out)
            .map_err(io_err)?;
        out
    } else {
        raw
    };
    ntriples::parse_ntriples(&bytes).map_err(|source| IngestError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads every `<seq>.added.nt[.gz]` / `<seq>.removed.nt[.gz]` file in a
/// directory, one [`Changeset`] per sequence number in ascending order.
/// Other files are ignored.
pub fn load_changeset_folder(dir: &Path) -> Result<Vec<Changeset>, IngestError> {
    let entries = fs::read_dir(dir).map_err(|source| IngestError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files: BTreeMap<u64, [Option<PathBuf>; 2]> = BTreeMap::new();
    for entry in entries {
        let entry = entry.map_err(|source| IngestError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else {
            continue;
        };
        let Some((seq, half, _)) = classify_file_name(name) else {
            continue;
        };
        let slot = &mut files.entry(seq).or_default()[half as usize];
        if let Some(first) = slot.take() {
            let (first, second) = if first <= path {
                (first, path)
            } else {
                (path, first)
            };
            return Err(IngestError::DuplicateSequence {
                seq,
                kind: half.name(),
                first,
                second,
            });
        }
        *slot = Some(path);
    }

    files
        .into_iter()
        .map(|(_, [added, removed])| {
            let read = |p: Option<PathBuf>| match p {
                Some(p) => read_changeset_file(&p),
                None => Ok(Dataset::new()),
            };
            Ok(Changeset::new(read(added)?, read(removed)?))
        })
        .collect()
}
