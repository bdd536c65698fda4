//! Run the default five scenarios and print the report with quality metrics.

use std::path::Path;

use coevo::cli::read_dataset;
use coevo::engine::{default_scenarios, scenario_report_tsv};
use coevo::{load_changeset_folder, merge_changesets, run_scenarios, SyncContext};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/example1");
    let source = read_dataset(&dir.join("source.nt")).unwrap();
    let target = read_dataset(&dir.join("target.nt")).unwrap();
    let changes = |name: &str| {
        merge_changesets(&load_changeset_folder(&dir.join(name)).unwrap()).to_changeset()
    };
    let results = run_scenarios(
        &source,
        &target,
        &changes("source-changes"),
        &changes("target-changes"),
        &default_scenarios(),
        &SyncContext {
            seed: 7,
            ..SyncContext::default()
        },
    )
    .unwrap();
    print!("{}", scenario_report_tsv(&results));
}
