//! Diff two versions, re-apply the changeset, and fold a folder of changesets
//! into one net changeset with tombstones.

use std::path::Path;

use coevo::{apply, diff, load_changeset_folder, merge_changesets};
use coevo::cli::read_dataset;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/example1");
    let target = read_dataset(&dir.join("target.nt")).unwrap();

    let folder = load_changeset_folder(&dir.join("target-changes")).unwrap();
    println!("{} changeset(s) in target-changes", folder.len());
    let net = merge_changesets(&folder);
    println!(
        "net: +{} -{} tombstones {}",
        net.changes.added.len(),
        net.changes.deleted.len(),
        net.tombstones.len()
    );
    for t in net.tombstones.iter() {
        println!("  added and deleted in the same timeframe: {t}");
    }

    let evolved = net.apply_to(&target);
    let back = diff(&target, &evolved);
    assert_eq!(apply(&target, &back), evolved);
    println!(
        "target evolves from {} to {} triples; diff re-applies cleanly",
        target.len(),
        evolved.len()
    );
}
