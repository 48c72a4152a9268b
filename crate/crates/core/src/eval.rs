//! Training from a dataset, accuracy measurement and band-count sweeps.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balance::{IncrementPolicy, PolicySpec};
use crate::data_io::{Dataset, DatasetDescriptor, Loaded};
use crate::error::{Error, Result};
use crate::grid::{BandRow, Grid, Scoring};
use crate::preprocess::{column_boundaries, fit_normalizer, normalize, BoundaryMode, NormStats};

pub const REPORT_FORMAT: &str = "bandgrid-report";
pub const REPORT_VERSION: u32 = 1;

/// Default ceiling on `variables * bands` for one sweep configuration.
pub const DEFAULT_CELL_CAP: u64 = 10_000_000;

/// Everything that determines a trained grid apart from the data itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub bands: usize,
    #[serde(default)]
    pub boundaries: BoundaryMode,
    #[serde(default)]
    pub policy: PolicySpec,
    #[serde(default)]
    pub scoring: Scoring,
}

impl ExperimentConfig {
    pub fn new(bands: usize, policy: PolicySpec) -> Self {
        ExperimentConfig {
            bands,
            boundaries: BoundaryMode::Uniform,
            policy,
            scoring: Scoring::default(),
        }
    }

    pub fn with_boundaries(mut self, boundaries: BoundaryMode) -> Self {
        self.boundaries = boundaries;
        self
    }

    pub fn with_scoring(mut self, scoring: Scoring) -> Self {
        self.scoring = scoring;
        self
    }

    /// The settings a descriptor lists as its defaults.
    pub fn from_descriptor(desc: &DatasetDescriptor) -> Self {
        ExperimentConfig {
            bands: desc.defaults.bands,
            boundaries: desc.defaults.boundaries,
            policy: desc.defaults.policy.clone(),
            scoring: Scoring::default(),
        }
    }
}

/// A grid together with the normaliser and policy it was trained with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub config: ExperimentConfig,
    pub policy: IncrementPolicy,
    pub norm_stats: NormStats,
    pub grid: Grid,
}

impl TrainedModel {
    pub fn normalize(&self, dataset: &Dataset) -> Result<Vec<Vec<f64>>> {
        check_schema(&self.norm_stats, self.grid.categories(), dataset)?;
        normalize(&dataset.features, &self.norm_stats)
    }

    /// Predict the category index of one raw (un-normalised) row.
    pub fn predict_raw(&self, row: &[f64]) -> Result<usize> {
        self.grid.predict(&self.norm_stats.normalize_row(row)?)
    }
}

fn check_schema(norm: &NormStats, categories: &[String], dataset: &Dataset) -> Result<()> {
    if dataset.num_features() != norm.num_columns() {
        return Err(Error::config(format!(
            "{} has {} features but the model expects {}",
            dataset.name,
            dataset.num_features(),
            norm.num_columns()
        )));
    }
    if dataset.categories != categories {
        return Err(Error::config(format!(
            "{} categories [{}] differ from the model's [{}]",
            dataset.name,
            dataset.categories.join(", "),
            categories.join(", ")
        )));
    }
    Ok(())
}

/// Fit the normaliser and band edges on `train`, resolve the policy against
/// its label counts, and run the single training pass.
pub fn train_model(train: &Dataset, config: &ExperimentConfig) -> Result<TrainedModel> {
    if config.bands == 0 {
        return Err(Error::config("number of bands must be at least 1"));
    }
    let norm_stats = fit_normalizer(&train.features)?;
    let normalized = normalize(&train.features, &norm_stats)?;
    let policy = config.policy.resolve(&train.category_counts())?;
    let edges = column_boundaries(&normalized, train.num_features(), config.bands, config.boundaries)?;
    let rows = edges
        .into_iter()
        .map(|e| BandRow::with_boundaries(e, train.categories.len()))
        .collect::<Result<Vec<_>>>()?;
    let mut grid = Grid::from_band_rows(rows, train.categories.clone(), policy.cw, policy.ow.clone())?
        .with_scoring(config.scoring);
    grid.train(&normalized, &train.labels)?;
    Ok(TrainedModel {
        config: config.clone(),
        policy,
        norm_stats,
        grid,
    })
}

/// Counts from classifying a set of normalised rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub correct: usize,
    pub total: usize,
    /// `confusion[true][predicted]`.
    pub confusion: Vec<Vec<usize>>,
    pub predictions: Vec<usize>,
}

impl Tally {
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }
}

/// Classify every normalised row and tally the outcome.
pub fn score(grid: &Grid, rows: &[Vec<f64>], labels: &[usize]) -> Result<Tally> {
    if rows.len() != labels.len() {
        return Err(Error::data(format!("{} rows but {} labels", rows.len(), labels.len())));
    }
    let k = grid.num_categories();
    let mut confusion = vec![vec![0; k]; k];
    let mut predictions = Vec::with_capacity(rows.len());
    let mut correct = 0;
    for (row, &label) in rows.iter().zip(labels) {
        if label >= k {
            return Err(Error::data(format!("label {label} out of range for {k} categories")));
        }
        let p = grid.predict(row)?;
        confusion[label][p] += 1;
        correct += usize::from(p == label);
        predictions.push(p);
    }
    Ok(Tally {
        correct,
        total: rows.len(),
        confusion,
        predictions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    /// Scored on the training rows.
    Resubstitution,
    /// Scored on a separate test set.
    Holdout,
}

/// The outcome of one evaluation, with enough configuration to rerun it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub format: String,
    pub version: u32,
    pub dataset: String,
    pub fingerprint: String,
    pub protocol: Protocol,
    pub config: ExperimentConfig,
    pub policy: IncrementPolicy,
    pub categories: Vec<String>,
    pub train_rows: usize,
    pub correct: usize,
    pub total: usize,
    pub accuracy: f64,
    pub confusion: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predictions: Option<Vec<usize>>,
}

impl EvalReport {
    fn new(model: &TrainedModel, train: &Dataset, test: &Dataset, protocol: Protocol, tally: Tally) -> Self {
        EvalReport {
            format: REPORT_FORMAT.to_string(),
            version: REPORT_VERSION,
            dataset: test.name.clone(),
            fingerprint: test.fingerprint.clone(),
            protocol,
            config: model.config.clone(),
            policy: model.policy.clone(),
            categories: test.categories.clone(),
            train_rows: train.num_rows(),
            correct: tally.correct,
            total: tally.total,
            accuracy: tally.accuracy(),
            confusion: tally.confusion,
            predictions: None,
        }
    }

    pub fn percent(&self) -> f64 {
        self.accuracy * 100.0
    }

    pub fn with_predictions(mut self, predictions: Vec<usize>) -> Self {
        self.predictions = Some(predictions);
        self
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|source| Error::Json {
            context: "serialising report".into(),
            source,
        })
    }

    /// Table row plus configuration and confusion matrix.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Dataset\tBands\tCorrectly classified\t% Correct");
        let _ = writeln!(
            s,
            "{}\t{}\t{}/{}\t{:.2}",
            self.dataset,
            self.config.bands,
            self.correct,
            self.total,
            self.percent()
        );
        let protocol = match self.protocol {
            Protocol::Resubstitution => "resubstitution",
            Protocol::Holdout => "holdout",
        };
        let _ = writeln!(
            s,
            "protocol: {protocol} (trained on {} rows)\nboundaries: {}  scoring: {}",
            self.train_rows, self.config.boundaries, self.config.scoring
        );
        let _ = writeln!(s, "policy: {}", self.policy.summary());
        let _ = writeln!(s, "confusion (rows true, columns predicted):");
        let width = self
            .categories
            .iter()
            .map(String::len)
            .chain(std::iter::once(5))
            .max()
            .unwrap_or(5);
        let _ = write!(s, "{:width$}", "");
        for c in &self.categories {
            let _ = write!(s, " {c:>width$}");
        }
        s.push('\n');
        for (c, row) in self.categories.iter().zip(&self.confusion) {
            let _ = write!(s, "{c:width$}");
            for n in row {
                let _ = write!(s, " {n:>width$}");
            }
            s.push('\n');
        }
        s
    }
}

/// Train and score on the same rows.
pub fn evaluate_resubstitution(dataset: &Dataset, config: &ExperimentConfig) -> Result<EvalReport> {
    let model = train_model(dataset, config)?;
    evaluate(&model, dataset, dataset, Protocol::Resubstitution)
}

/// Train on `train`, score on `test`. The normaliser sees `train` only.
pub fn evaluate_holdout(train: &Dataset, test: &Dataset, config: &ExperimentConfig) -> Result<EvalReport> {
    if train.num_features() != test.num_features() || train.categories != test.categories {
        return Err(Error::config(format!(
            "train and test schemas differ ({} vs {} features, {} vs {} categories)",
            train.num_features(),
            test.num_features(),
            train.categories.len(),
            test.categories.len()
        )));
    }
    let model = train_model(train, config)?;
    evaluate(&model, train, test, Protocol::Holdout)
}

/// Score an already-trained model on `test`.
pub fn evaluate(model: &TrainedModel, train: &Dataset, test: &Dataset, protocol: Protocol) -> Result<EvalReport> {
    let rows = model.normalize(test)?;
    let tally = score(&model.grid, &rows, &test.labels)?;
    let predictions = tally.predictions.clone();
    Ok(EvalReport::new(model, train, test, protocol, tally).with_predictions(predictions))
}

/// Resubstitution for a single-file dataset, holdout otherwise.
pub fn evaluate_loaded(loaded: &Loaded, config: &ExperimentConfig) -> Result<EvalReport> {
    match loaded {
        Loaded::All(d) => evaluate_resubstitution(d, config),
        Loaded::Holdout { train, test } => evaluate_holdout(train, test, config),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SweepOutcome {
    Evaluated { report: Box<EvalReport> },
    Skipped { cells: u64, cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub bands: usize,
    #[serde(flatten)]
    pub outcome: SweepOutcome,
}

impl SweepPoint {
    pub fn report(&self) -> Option<&EvalReport> {
        match &self.outcome {
            SweepOutcome::Evaluated { report } => Some(report),
            SweepOutcome::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub dataset: String,
    pub points: Vec<SweepPoint>,
    /// Band count of the most accurate configuration (smallest on ties).
    pub best: Option<usize>,
    /// Every band count reaching the best accuracy.
    pub optimal: Vec<usize>,
    /// Interior peaks of the accuracy curve.
    pub local_optima: Vec<usize>,
    /// Accuracy fell and later rose again along the sweep.
    pub dip_then_rise: bool,
}

impl SweepResult {
    pub fn best_report(&self) -> Option<&EvalReport> {
        let b = self.best?;
        self.points.iter().find(|p| p.bands == b)?.report()
    }

    /// `bands,correct,total,accuracy,status` rows for external plotting.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::data(format!("writing sweep csv: {e}"));
        w.write_record(["bands", "correct", "total", "accuracy", "status"])
            .map_err(csv_err)?;
        for p in &self.points {
            let rec = match p.report() {
                Some(r) => [
                    p.bands.to_string(),
                    r.correct.to_string(),
                    r.total.to_string(),
                    format!("{:.6}", r.accuracy),
                    "ok".to_string(),
                ],
                None => [
                    p.bands.to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    "skipped".to_string(),
                ],
            };
            w.write_record(&rec).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::data(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Bands\tCorrectly classified\t% Correct");
        for p in &self.points {
            match &p.outcome {
                SweepOutcome::Evaluated { report } => {
                    let mark = if Some(p.bands) == self.best { "\t<- best" } else { "" };
                    let _ = writeln!(
                        s,
                        "{}\t{}/{}\t{:.2}{mark}",
                        p.bands,
                        report.correct,
                        report.total,
                        report.percent()
                    );
                }
                SweepOutcome::Skipped { cells, cap } => {
                    let _ = writeln!(s, "{}\tskipped ({cells} cells over cap {cap})", p.bands);
                }
            }
        }
        if self.optimal.len() > 1 {
            let o: Vec<String> = self.optimal.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "best accuracy reached at bands: {}", o.join(", "));
        }
        if !self.local_optima.is_empty() {
            let o: Vec<String> = self.local_optima.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "local optima at bands: {}", o.join(", "));
        }
        if self.dip_then_rise {
            let _ = writeln!(s, "accuracy drops and then rises again along the sweep");
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|source| Error::Json {
            context: "serialising sweep".into(),
            source,
        })
    }
}

/// Evaluate `base` at every band count in `bands`, in parallel.
///
/// With `test` the sweep uses the holdout protocol. Configurations whose
/// `variables * bands` exceeds `cell_cap` are recorded as skipped.
pub fn sweep_bands(
    train: &Dataset,
    test: Option<&Dataset>,
    bands: &[usize],
    base: &ExperimentConfig,
    cell_cap: u64,
) -> Result<SweepResult> {
    if bands.is_empty() {
        return Err(Error::config("band range is empty"));
    }
    if let Some(&b) = bands.iter().find(|&&b| b == 0) {
        return Err(Error::config(format!("invalid band count {b}")));
    }
    let vars = train.num_features() as u64;
    let points = bands
        .par_iter()
        .map(|&b| {
            let cells = vars * b as u64;
            if cells > cell_cap {
                log::warn!("skipping {b} bands: {cells} cells exceed cap {cell_cap}");
                return Ok(SweepPoint {
                    bands: b,
                    outcome: SweepOutcome::Skipped { cells, cap: cell_cap },
                });
            }
            let config = ExperimentConfig {
                bands: b,
                ..base.clone()
            };
            let report = match test {
                Some(t) => evaluate_holdout(train, t, &config)?,
                None => evaluate_resubstitution(train, &config)?,
            };
            Ok(SweepPoint {
                bands: b,
                outcome: SweepOutcome::Evaluated {
                    report: Box::new(EvalReport {
                        predictions: None,
                        ..report
                    }),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let curve: Vec<(usize, usize)> = points
        .iter()
        .filter_map(|p| p.report().map(|r| (p.bands, r.correct)))
        .collect();
    let best = curve
        .iter()
        .fold(None::<(usize, usize)>, |acc, &(b, c)| match acc {
            Some((_, bc)) if bc >= c => acc,
            _ => Some((b, c)),
        })
        .map(|(b, _)| b);
    let top = curve.iter().map(|&(_, c)| c).max();
    let optimal = curve
        .iter()
        .filter(|&&(_, c)| Some(c) == top)
        .map(|&(b, _)| b)
        .collect();
    let (local_optima, dip_then_rise) = curve_shape(&curve);
    Ok(SweepResult {
        dataset: train.name.clone(),
        points,
        best,
        optimal,
        local_optima,
        dip_then_rise,
    })
}

/// Interior peaks (plateaus collapsed, reported at their first point) and
/// whether a decrease is ever followed by an increase.
fn curve_shape(curve: &[(usize, usize)]) -> (Vec<usize>, bool) {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &(b, c) in curve {
        if runs.last().map_or(true, |&(_, lc)| lc != c) {
            runs.push((b, c));
        }
    }
    let peaks = runs
        .windows(3)
        .filter(|w| w[1].1 > w[0].1 && w[1].1 > w[2].1)
        .map(|w| w[1].0)
        .collect();
    let mut fell = false;
    let mut dip_then_rise = false;
    for w in runs.windows(2) {
        if w[1].1 < w[0].1 {
            fell = true;
        } else if fell {
            dip_then_rise = true;
        }
    }
    (peaks, dip_then_rise)
}
