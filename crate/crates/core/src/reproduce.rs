//! The published benchmark results as executable targets, and a runner that
//! sets our numbers beside them.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use serde::Serialize;

use crate::balance::PolicySpec;
use crate::data_io::{load, DatasetDescriptor, Loaded};
use crate::error::{Error, Result};
use crate::eval::{evaluate_loaded, ExperimentConfig};
use crate::preprocess::BoundaryMode;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Tolerance {
    /// Correct counts may differ by this many rows.
    Rows(usize),
    /// Accuracies may differ by this many percentage points.
    PercentPoints(f64),
}

impl Tolerance {
    pub fn admits(&self, reference: (usize, usize), ours: (usize, usize)) -> bool {
        match *self {
            Tolerance::Rows(n) => reference.1 == ours.1 && reference.0.abs_diff(ours.0) <= n,
            Tolerance::PercentPoints(pp) => (percent(reference) - percent(ours)).abs() <= pp,
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Rows(n) => write!(f, "+/-{n} rows"),
            Tolerance::PercentPoints(p) => write!(f, "+/-{p} pp"),
        }
    }
}

fn percent((c, t): (usize, usize)) -> f64 {
    100.0 * c as f64 / t as f64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Target {
    pub key: &'static str,
    pub group: &'static str,
    pub dataset: &'static str,
    pub variant: &'static str,
    pub config: ExperimentConfig,
    pub reference: (usize, usize),
    pub tolerance: Tolerance,
}

/// Every published result, in the order they are reported.
pub fn targets() -> Vec<Target> {
    let uniform = |bands, policy| ExperimentConfig::new(bands, policy);
    vec![
        Target {
            key: "zoo-10",
            group: "10 bands",
            dataset: "zoo",
            variant: "per-category",
            config: uniform(10, PolicySpec::PerCategory),
            reference: (91, 101),
            tolerance: Tolerance::Rows(2),
        },
        Target {
            key: "wine-10-scaled",
            group: "10 bands",
            dataset: "wine",
            variant: "per-category",
            config: uniform(10, PolicySpec::PerCategory),
            reference: (172, 178),
            tolerance: Tolerance::Rows(2),
        },
        Target {
            key: "wine-10-flat",
            group: "10 bands",
            dataset: "wine",
            variant: "flat",
            config: uniform(10, PolicySpec::RowUniform),
            reference: (177, 178),
            tolerance: Tolerance::Rows(2),
        },
        Target {
            key: "iris-10",
            group: "10 bands",
            dataset: "iris",
            variant: "per-category",
            config: uniform(10, PolicySpec::PerCategory),
            reference: (143, 150),
            tolerance: Tolerance::Rows(2),
        },
        Target {
            key: "zoo-2",
            group: "best bands",
            dataset: "zoo",
            variant: "per-category",
            config: uniform(2, PolicySpec::PerCategory),
            reference: (94, 101),
            tolerance: Tolerance::Rows(2),
        },
        Target {
            key: "wine-15-flat",
            group: "best bands",
            dataset: "wine",
            variant: "flat",
            config: uniform(15, PolicySpec::RowUniform),
            reference: (178, 178),
            tolerance: Tolerance::Rows(2),
        },
        Target {
            key: "iris-12",
            group: "best bands",
            dataset: "iris",
            variant: "per-category",
            config: uniform(12, PolicySpec::PerCategory),
            reference: (145, 150),
            tolerance: Tolerance::Rows(2),
        },
        Target {
            key: "abalone-160",
            group: "best bands",
            dataset: "abalone",
            variant: "flat, gap edges",
            config: uniform(160, PolicySpec::RowUniform).with_boundaries(BoundaryMode::Gaps),
            reference: (1452, 4177),
            tolerance: Tolerance::PercentPoints(1.5),
        },
        Target {
            key: "user-modelling-14",
            group: "holdout",
            dataset: "user-modelling",
            variant: "adjusted +/-10",
            config: uniform(
                14,
                PolicySpec::PerCategoryAdjusted {
                    adjustments: None,
                    denominators: Some(vec![34, 73, 78, 53]),
                },
            ),
            reference: (127, 145),
            tolerance: Tolerance::Rows(3),
        },
        Target {
            key: "banknote-17",
            group: "holdout",
            dataset: "banknote",
            variant: "per-category",
            config: uniform(17, PolicySpec::PerCategory),
            reference: (81, 100),
            tolerance: Tolerance::Rows(3),
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
    Error(String),
}

impl Status {
    fn label(&self) -> &str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped(_) => "SKIPPED",
            Status::Error(_) => "ERROR",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproRow {
    pub target: Target,
    pub ours: Option<(usize, usize)>,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproTable {
    pub rows: Vec<ReproRow>,
}

impl ReproTable {
    pub fn row(&self, key: &str) -> Option<&ReproRow> {
        self.rows.iter().find(|r| r.target.key == key)
    }

    /// No row failed or errored (skipped rows are allowed).
    pub fn ok(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(r.status, Status::Pass | Status::Skipped(_)))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|source| Error::Json {
            context: "serialising reproduction table".into(),
            source,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<11} {:<15} {:<16} {:>5}  {:>10}  {:>10}  {:>6}  {:<12} status",
            "group", "dataset", "variant", "bands", "reference", "ours", "diff", "tolerance"
        );
        for r in &self.rows {
            let t = &r.target;
            let reference = format!("{}/{}", t.reference.0, t.reference.1);
            let (ours, diff) = match r.ours {
                Some(o) => (
                    format!("{}/{}", o.0, o.1),
                    match t.tolerance {
                        Tolerance::Rows(_) => format!("{:+}", o.0 as i64 - t.reference.0 as i64),
                        Tolerance::PercentPoints(_) => format!("{:+.2}pp", percent(o) - percent(t.reference)),
                    },
                ),
                None => ("-".into(), "-".into()),
            };
            let _ = write!(
                s,
                "{:<11} {:<15} {:<16} {:>5}  {:>10}  {:>10}  {:>6}  {:<12} {}",
                t.group,
                t.dataset,
                t.variant,
                t.config.bands,
                reference,
                ours,
                diff,
                t.tolerance.to_string(),
                r.status.label()
            );
            if let Status::Skipped(why) | Status::Error(why) = &r.status {
                let _ = write!(s, " ({why})");
            }
            s.push('\n');
            for n in &r.notes {
                let _ = writeln!(s, "{:<11} note: {n}", "");
            }
        }
        let count = |f: fn(&Status) -> bool| self.rows.iter().filter(|r| f(&r.status)).count();
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped, {} errors",
            count(|s| matches!(s, Status::Pass)),
            count(|s| matches!(s, Status::Fail)),
            count(|s| matches!(s, Status::Skipped(_))),
            count(|s| matches!(s, Status::Error(_)))
        );
        s
    }
}

fn is_missing_file(e: &Error) -> bool {
    matches!(e, Error::Io { source, .. } if source.kind() == std::io::ErrorKind::NotFound)
}

/// Run the targets whose keys or dataset names appear in `only` (all when
/// `None`), reading data from `data_root`.
pub fn run(data_root: &Path, only: Option<&[String]>) -> Result<ReproTable> {
    let selected: Vec<Target> = targets()
        .into_iter()
        .filter(|t| only.map_or(true, |o| o.iter().any(|k| k == t.key || k == t.dataset)))
        .collect();
    if selected.is_empty() {
        return Err(Error::config("no reproduction targets match the selection"));
    }

    let mut cache: BTreeMap<&str, std::result::Result<Loaded, Status>> = BTreeMap::new();
    let mut rows = Vec::with_capacity(selected.len());
    for target in selected {
        let loaded = cache.entry(target.dataset).or_insert_with(|| {
            let desc = DatasetDescriptor::resolve(target.dataset).map_err(|e| Status::Error(e.to_string()))?;
            load(&desc, data_root).map_err(|e| {
                if is_missing_file(&e) {
                    Status::Skipped(format!("missing data: {e}"))
                } else {
                    Status::Error(e.to_string())
                }
            })
        });
        let row = match loaded {
            Err(status) => ReproRow {
                target,
                ours: None,
                status: status.clone(),
                notes: Vec::new(),
            },
            Ok(loaded) => run_one(target, loaded),
        };
        rows.push(row);
    }
    Ok(ReproTable { rows })
}

fn run_one(target: Target, loaded: &Loaded) -> ReproRow {
    let report = match evaluate_loaded(loaded, &target.config) {
        Ok(r) => r,
        Err(e) => {
            return ReproRow {
                target,
                ours: None,
                status: Status::Error(e.to_string()),
                notes: Vec::new(),
            }
        }
    };
    let ours = (report.correct, report.total);
    let mut notes = Vec::new();
    if ours.1 != target.reference.1 {
        notes.push(format!(
            "evaluated on {} rows, reference used {}",
            ours.1, target.reference.1
        ));
    }
    if target.config.boundaries == BoundaryMode::Gaps {
        let uniform = ExperimentConfig {
            boundaries: BoundaryMode::Uniform,
            ..target.config.clone()
        };
        if let Ok(u) = evaluate_loaded(loaded, &uniform) {
            notes.push(format!(
                "uniform edges give {}/{} ({:.2}%)",
                u.correct,
                u.total,
                u.percent()
            ));
        }
    }
    let status = if target.tolerance.admits(target.reference, ours) {
        Status::Pass
    } else {
        Status::Fail
    };
    ReproRow {
        target,
        ours: Some(ours),
        status,
        notes,
    }
}
