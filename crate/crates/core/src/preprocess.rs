//! Column-wise min-max normalisation and band-edge construction.
//!
//! Band edges are upper edges in normalised units. A value belongs to the
//! first band whose edge is greater than or equal to it, so a value lying
//! exactly on an edge stays in the lower band. Uniform edges are computed
//! as `(1/n) * (i + 1)` in `f64`, with the last edge pinned to `1.0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-column range fitted from a feature matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormStats {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub constant_column: Vec<bool>,
}

impl NormStats {
    pub fn num_columns(&self) -> usize {
        self.min.len()
    }

    /// Normalise one value of column `col`, clamping into `[0, 1]`.
    pub fn normalize_value(&self, col: usize, value: f64) -> f64 {
        if self.constant_column[col] {
            return 0.0;
        }
        let x = (value - self.min[col]) / (self.max[col] - self.min[col]);
        x.clamp(0.0, 1.0)
    }

    pub fn normalize_row(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.num_columns() {
            return Err(Error::config(format!(
                "row has {} columns but normaliser was fitted on {}",
                row.len(),
                self.num_columns()
            )));
        }
        row.iter()
            .enumerate()
            .map(|(col, &v)| {
                if v.is_nan() {
                    Err(Error::data(format!("NaN in column {col}")))
                } else {
                    Ok(self.normalize_value(col, v))
                }
            })
            .collect()
    }
}

/// Fit per-column min and max over every row given.
pub fn fit_normalizer(matrix: &[Vec<f64>]) -> Result<NormStats> {
    let first = matrix
        .first()
        .ok_or_else(|| Error::data("cannot fit a normaliser on an empty matrix"))?;
    let cols = first.len();
    if cols == 0 {
        return Err(Error::data("cannot fit a normaliser on zero columns"));
    }
    let mut min = vec![f64::INFINITY; cols];
    let mut max = vec![f64::NEG_INFINITY; cols];
    for (r, row) in matrix.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::data(format!(
                "row {r} has {} columns, expected {cols}",
                row.len()
            )));
        }
        for (c, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::data(format!("non-finite value {v} at row {r}, column {c}")));
            }
            min[c] = min[c].min(v);
            max[c] = max[c].max(v);
        }
    }
    let constant_column = min.iter().zip(&max).map(|(lo, hi)| lo == hi).collect();
    Ok(NormStats {
        min,
        max,
        constant_column,
    })
}

/// Map every row into `[0, 1]` per column using fitted stats.
pub fn normalize(matrix: &[Vec<f64>], stats: &NormStats) -> Result<Vec<Vec<f64>>> {
    matrix.iter().map(|row| stats.normalize_row(row)).collect()
}

/// `[1/n, 2/n, ..., 1.0]`.
pub fn uniform_boundaries(num_bands: usize) -> Result<Vec<f64>> {
    if num_bands == 0 {
        return Err(Error::config("number of bands must be at least 1"));
    }
    let width = 1.0 / num_bands as f64;
    let mut edges: Vec<f64> = (1..=num_bands).map(|i| width * i as f64).collect();
    edges[num_bands - 1] = 1.0;
    Ok(edges)
}

/// Edges produced by [`gap_boundaries`], with a note of whether the gap
/// placement had to fall back to uniform edges.
#[derive(Debug, Clone, PartialEq)]
pub struct GapBoundaries {
    pub edges: Vec<f64>,
    pub fell_back: bool,
}

/// Place band edges at the midpoints of the `num_bands - 1` widest gaps
/// between consecutive distinct values, then close with `1.0`.
///
/// Equal gaps are taken leftmost first. With fewer distinct values than
/// bands the edges fall back to [`uniform_boundaries`].
pub fn gap_boundaries(column_values: &[f64], num_bands: usize) -> Result<GapBoundaries> {
    if num_bands == 0 {
        return Err(Error::config("number of bands must be at least 1"));
    }
    if let Some(v) = column_values.iter().find(|v| v.is_nan()) {
        return Err(Error::data(format!("cannot place gap boundaries around {v}")));
    }
    let mut distinct = column_values.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();

    if distinct.len() < num_bands {
        log::info!(
            "{} distinct values cannot fill {num_bands} gap bands; using uniform bands",
            distinct.len()
        );
        return Ok(GapBoundaries {
            edges: uniform_boundaries(num_bands)?,
            fell_back: true,
        });
    }

    let mut gaps: Vec<(f64, usize)> = distinct.windows(2).enumerate().map(|(i, w)| (w[1] - w[0], i)).collect();
    // widest first; leftmost wins among equals
    gaps.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut cut_at: Vec<usize> = gaps.iter().take(num_bands - 1).map(|g| g.1).collect();
    cut_at.sort_unstable();
    let mut edges: Vec<f64> = cut_at
        .into_iter()
        .map(|i| (distinct[i] + distinct[i + 1]) / 2.0)
        .collect();
    edges.push(1.0);
    Ok(GapBoundaries {
        edges,
        fell_back: false,
    })
}

/// How band edges are laid out across a variable's normalised range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryMode {
    #[default]
    Uniform,
    Gaps,
}

impl fmt::Display for BoundaryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryMode::Uniform => "uniform",
            BoundaryMode::Gaps => "gaps",
        })
    }
}

impl FromStr for BoundaryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(BoundaryMode::Uniform),
            "gaps" => Ok(BoundaryMode::Gaps),
            other => Err(Error::config(format!("unknown boundary mode '{other}'"))),
        }
    }
}

/// Edges for every column of an already-normalised matrix.
pub fn column_boundaries(
    normalized: &[Vec<f64>],
    num_columns: usize,
    num_bands: usize,
    mode: BoundaryMode,
) -> Result<Vec<Vec<f64>>> {
    match mode {
        BoundaryMode::Uniform => {
            let edges = uniform_boundaries(num_bands)?;
            Ok(vec![edges; num_columns])
        }
        BoundaryMode::Gaps => (0..num_columns)
            .map(|c| {
                let column: Vec<f64> = normalized.iter().map(|row| row[c]).collect();
                gap_boundaries(&column, num_bands).map(|g| g.edges)
            })
            .collect(),
    }
}
