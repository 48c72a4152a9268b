use std::path::PathBuf;

use bandgrid_core::reproduce;
use bandgrid_core::{evaluate_loaded, load, DatasetDescriptor, EvalReport};

fn data_root() -> Option<PathBuf> {
    let p = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data"));
    [
        "iris/iris.data",
        "wine/wine.data",
        "zoo/zoo.data",
        "abalone/abalone.data",
    ]
    .iter()
    .all(|f| p.join(f).exists())
    .then_some(p)
}

const RESUBSTITUTION_TARGETS: [&str; 8] = [
    "zoo-10",
    "wine-10-scaled",
    "wine-10-flat",
    "iris-10",
    "zoo-2",
    "wine-15-flat",
    "iris-12",
    "abalone-160",
];

#[test]
fn reproduction_table_matches_golden() {
    let Some(root) = data_root() else {
        eprintln!("benchmark data not fetched; skipping");
        return;
    };
    let only: Vec<String> = RESUBSTITUTION_TARGETS.iter().map(|s| s.to_string()).collect();
    let table = reproduce::run(&root, Some(&only)).unwrap();
    assert_eq!(table.to_text(), include_str!("golden/tables.txt"));
    assert!(table.ok());
}

#[test]
fn report_config_echo_reruns_to_the_same_counts() {
    let Some(root) = data_root() else {
        eprintln!("benchmark data not fetched; skipping");
        return;
    };
    for target in reproduce::targets()
        .into_iter()
        .filter(|t| RESUBSTITUTION_TARGETS.contains(&t.key))
    {
        let desc = DatasetDescriptor::resolve(target.dataset).unwrap();
        let loaded = load(&desc, &root).unwrap();
        let report = evaluate_loaded(&loaded, &target.config).unwrap();
        let json = report.to_json().unwrap();
        let back: EvalReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        let rerun = evaluate_loaded(&loaded, &back.config).unwrap();
        assert_eq!((rerun.correct, rerun.total), (report.correct, report.total));
        assert_eq!(rerun.to_json().unwrap(), json, "{}", target.key);
    }
}
