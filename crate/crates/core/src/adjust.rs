//! Experimental second phase: after the single training pass, nudge output
//! weights of the cells a misclassified row selects.
//!
//! Cells that already lean towards the true category are reinforced; the
//! others are weakened. Scale weights are never touched, and a cell with no
//! output weight at all is left alone.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::score;
use crate::grid::Grid;

/// What a wrong-leaning cell gives up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjustMode {
    /// Its dominant category's weight.
    #[default]
    Dominant,
    /// Its weight for the true category.
    TrueClass,
    /// Every weight except the true category's.
    AllWrong,
}

impl fmt::Display for AdjustMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdjustMode::Dominant => "dominant",
            AdjustMode::TrueClass => "true_class",
            AdjustMode::AllWrong => "all_wrong",
        })
    }
}

impl FromStr for AdjustMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dominant" => Ok(AdjustMode::Dominant),
            "true_class" | "true-class" => Ok(AdjustMode::TrueClass),
            "all_wrong" | "all-wrong" => Ok(AdjustMode::AllWrong),
            other => Err(Error::config(format!("unknown adjust mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjustConfig {
    pub eta: f64,
    pub epochs: usize,
    /// Lowest value an output weight may be pushed down to.
    pub floor: f64,
    #[serde(default)]
    pub mode: AdjustMode,
}

impl Default for AdjustConfig {
    fn default() -> Self {
        AdjustConfig {
            eta: 0.01,
            epochs: 1,
            floor: 0.0,
            mode: AdjustMode::Dominant,
        }
    }
}

impl AdjustConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return Err(Error::config(format!("learning rate must be >= 0, got {}", self.eta)));
        }
        if !(self.floor >= 0.0 && self.floor.is_finite()) {
            return Err(Error::config(format!("floor must be >= 0, got {}", self.floor)));
        }
        Ok(())
    }
}

/// Counts from one pass over the adjustment rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PassStats {
    pub misclassified: usize,
    /// Rows classified correctly straight after their own update.
    pub corrections: usize,
    pub cells_changed: usize,
}

/// One pass over normalised `rows`, in order.
pub fn adjust_pass(grid: &mut Grid, rows: &[Vec<f64>], labels: &[usize], config: &AdjustConfig) -> Result<PassStats> {
    config.validate()?;
    if rows.len() != labels.len() {
        return Err(Error::data(format!("{} rows but {} labels", rows.len(), labels.len())));
    }
    let mut stats = PassStats::default();
    for (row, &truth) in rows.iter().zip(labels) {
        if truth >= grid.num_categories() {
            return Err(Error::data(format!("label {truth} out of range")));
        }
        if grid.predict(row)? == truth {
            continue;
        }
        stats.misclassified += 1;
        let bands = grid.locate(row)?;
        for (v, b) in bands.into_iter().enumerate() {
            let cell = grid.cell_mut(v, b);
            let Some(dominant) = cell.dominant_category() else {
                continue;
            };
            let out = cell.output_weights_mut();
            let before = out.to_vec();
            if dominant == truth {
                out[truth] += config.eta;
            } else {
                match config.mode {
                    AdjustMode::Dominant => lower(&mut out[dominant], config),
                    AdjustMode::TrueClass => lower(&mut out[truth], config),
                    AdjustMode::AllWrong => {
                        for (oc, w) in out.iter_mut().enumerate() {
                            if oc != truth {
                                lower(w, config);
                            }
                        }
                    }
                }
            }
            if out != before.as_slice() {
                stats.cells_changed += 1;
            }
        }
        if grid.predict(row)? == truth {
            stats.corrections += 1;
        }
    }
    Ok(stats)
}

fn lower(w: &mut f64, config: &AdjustConfig) {
    // a weight already under the floor is not raised
    if *w > config.floor {
        *w = (*w - config.eta).max(config.floor);
    }
}

/// Before/after accuracy on the adjustment rows plus per-pass counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjustReport {
    pub config: AdjustConfig,
    pub total: usize,
    pub correct_before: usize,
    pub correct_after: usize,
    pub passes: Vec<PassStats>,
    /// Accuracy on the adjustment rows went down.
    pub regression: bool,
}

impl AdjustReport {
    pub fn summary(&self) -> String {
        let verdict = if self.regression {
            "REGRESSION"
        } else if self.correct_after > self.correct_before {
            "improved"
        } else {
            "unchanged"
        };
        format!(
            "adjust ({} eta={} epochs={} floor={}): {}/{} -> {}/{} [{verdict}]",
            self.config.mode,
            self.config.eta,
            self.config.epochs,
            self.config.floor,
            self.correct_before,
            self.total,
            self.correct_after,
            self.total
        )
    }
}

/// Run `config.epochs` passes and measure accuracy on the same rows
/// before and after.
pub fn adjust(grid: &mut Grid, rows: &[Vec<f64>], labels: &[usize], config: &AdjustConfig) -> Result<AdjustReport> {
    config.validate()?;
    let before = score(grid, rows, labels)?;
    let mut passes = Vec::with_capacity(config.epochs);
    for epoch in 0..config.epochs {
        let stats = adjust_pass(grid, rows, labels, config)?;
        log::info!(
            "adjust epoch {}: {} misclassified, {} corrected",
            epoch + 1,
            stats.misclassified,
            stats.corrections
        );
        passes.push(stats);
        if stats.misclassified == 0 {
            break;
        }
    }
    let after = score(grid, rows, labels)?;
    Ok(AdjustReport {
        config: *config,
        total: before.total,
        correct_before: before.correct,
        correct_after: after.correct,
        passes,
        regression: after.correct < before.correct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{BandRow, Cell, Scoring};

    fn ab() -> Vec<String> {
        vec!["A".into(), "B".into()]
    }

    /// Two variables, two bands, unit increments; see the worked threshold
    /// in `toy_flip_threshold`.
    fn toy(scoring: Scoring) -> Grid {
        let mut g = Grid::new(2, 2, ab(), 1.0, vec![1.0, 1.0])
            .unwrap()
            .with_scoring(scoring);
        let rows = [
            (vec![0.25, 0.25], 0),
            (vec![0.25, 0.75], 1),
            (vec![0.75, 0.25], 0),
            (vec![0.75, 0.75], 1),
            (vec![0.75, 0.25], 0),
            (vec![0.25, 0.75], 1),
        ];
        for (r, l) in rows {
            g.train_row(&r, l).unwrap();
        }
        g
    }

    fn outputs(g: &Grid, v: usize, b: usize) -> Vec<f64> {
        g.band_rows()[v].cells()[b].output_weights().to_vec()
    }

    #[test]
    fn toy_grid_is_as_derived() {
        let g = toy(Scoring::CellRatio);
        assert_eq!(outputs(&g, 0, 0), vec![1.0, 2.0]);
        assert_eq!(outputs(&g, 0, 1), vec![2.0, 1.0]);
        assert_eq!(outputs(&g, 1, 0), vec![3.0, 0.0]);
        assert_eq!(outputs(&g, 1, 1), vec![0.0, 3.0]);
        let c = g.classify_row(&[0.25, 0.25]).unwrap();
        assert_eq!(c.predicted, 0);
        assert!((c.scores[0] - 4.0 / 3.0).abs() < 1e-12 && (c.scores[1] - 2.0 / 3.0).abs() < 1e-12);
    }

    // After one update the row scores (4 - eta)/3 for A and (2 + eta)/3 for
    // B, so it flips exactly when eta > 1; eta = 1 ties and the tie goes to A.
    #[test]
    fn toy_flip_threshold() {
        for scoring in [Scoring::CellRatio, Scoring::InputProduct] {
            for (eta, flips) in [(0.5, false), (1.0, false), (1.5, true), (2.5, true)] {
                let mut g = toy(scoring);
                let cfg = AdjustConfig {
                    eta,
                    ..AdjustConfig::default()
                };
                let s = adjust_pass(&mut g, &[vec![0.25, 0.25]], &[1], &cfg).unwrap();
                assert_eq!(s.misclassified, 1);
                assert_eq!(s.corrections, usize::from(flips), "eta {eta} {scoring}");
                assert_eq!(s.cells_changed, 2);
            }
        }
        let mut g = toy(Scoring::CellRatio);
        let cfg = AdjustConfig {
            eta: 1.5,
            ..AdjustConfig::default()
        };
        adjust_pass(&mut g, &[vec![0.25, 0.25]], &[1], &cfg).unwrap();
        assert_eq!(outputs(&g, 0, 0), vec![1.0, 3.5]);
        assert_eq!(outputs(&g, 1, 0), vec![1.5, 0.0]);
        // untouched cells
        assert_eq!(outputs(&g, 0, 1), vec![2.0, 1.0]);
        assert_eq!(outputs(&g, 1, 1), vec![0.0, 3.0]);
    }

    #[test]
    fn four_variable_scenario() {
        let cell = |a: f64, b: f64| Cell::new(1.0, vec![a, b]).unwrap();
        let rows: Vec<BandRow> = [(0.6, 0.1), (0.7, 0.2), (0.1, 0.8), (0.8, 0.3)]
            .iter()
            .map(|&(a, b)| BandRow::from_cells(vec![cell(a, b)], vec![1.0]).unwrap())
            .collect();
        let mut g = Grid::from_band_rows(rows, ab(), 1.0, vec![1.0, 1.0]).unwrap();
        assert_eq!(g.predict(&[0.5; 4]).unwrap(), 0);
        let cfg = AdjustConfig {
            eta: 0.1,
            ..AdjustConfig::default()
        };
        adjust_pass(&mut g, &[vec![0.5; 4]], &[1], &cfg).unwrap();
        let after: Vec<Vec<f64>> = (0..4).map(|v| outputs(&g, v, 0)).collect();
        let expect = [[0.5, 0.1], [0.6, 0.2], [0.1, 0.9], [0.7, 0.3]];
        for (got, want) in after.iter().zip(expect) {
            assert!(
                (got[0] - want[0]).abs() < 1e-12 && (got[1] - want[1]).abs() < 1e-12,
                "{got:?}"
            );
        }
        for v in 0..4 {
            assert_eq!(g.band_rows()[v].cells()[0].scale_weight(), 1.0);
        }
    }

    #[test]
    fn correct_rows_are_a_fixpoint() {
        let mut g = toy(Scoring::CellRatio);
        let before = g.clone();
        let rows = vec![vec![0.25, 0.25], vec![0.75, 0.75]];
        let s = adjust_pass(&mut g, &rows, &[0, 1], &AdjustConfig::default()).unwrap();
        assert_eq!(s, PassStats::default());
        assert_eq!(g, before);
    }

    #[test]
    fn zero_eta_is_identity() {
        let mut g = toy(Scoring::CellRatio);
        let before = serde_json::to_string(&g).unwrap();
        let cfg = AdjustConfig {
            eta: 0.0,
            epochs: 3,
            ..AdjustConfig::default()
        };
        let r = adjust(&mut g, &[vec![0.25, 0.25]], &[1], &cfg).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), before);
        assert_eq!(r.correct_before, r.correct_after);
        assert!(!r.regression);
    }

    #[test]
    fn weights_stop_at_floor() {
        let mut g = toy(Scoring::CellRatio);
        let cfg = AdjustConfig {
            eta: 10.0,
            floor: 0.25,
            mode: AdjustMode::AllWrong,
            epochs: 1,
        };
        adjust_pass(&mut g, &[vec![0.25, 0.25], vec![0.75, 0.75]], &[1, 0], &cfg).unwrap();
        for v in 0..2 {
            for b in 0..2 {
                for w in outputs(&g, v, b) {
                    assert!(w == 0.0 || w >= 0.25, "{w}");
                }
            }
        }
    }

    #[test]
    fn modes_differ_on_the_wrong_cell() {
        let cfg = |mode| AdjustConfig {
            eta: 0.5,
            mode,
            ..AdjustConfig::default()
        };
        let mut g = toy(Scoring::CellRatio);
        adjust_pass(&mut g, &[vec![0.25, 0.25]], &[1], &cfg(AdjustMode::TrueClass)).unwrap();
        assert_eq!(outputs(&g, 1, 0), vec![3.0, 0.0]);
        let mut g = toy(Scoring::CellRatio);
        adjust_pass(&mut g, &[vec![0.25, 0.25]], &[1], &cfg(AdjustMode::AllWrong)).unwrap();
        assert_eq!(outputs(&g, 1, 0), vec![2.5, 0.0]);
    }

    #[test]
    fn rejects_bad_config() {
        let mut g = toy(Scoring::CellRatio);
        let bad = AdjustConfig {
            eta: -1.0,
            ..AdjustConfig::default()
        };
        assert!(adjust_pass(&mut g, &[], &[], &bad).is_err());
        assert_eq!("all-wrong".parse::<AdjustMode>().unwrap(), AdjustMode::AllWrong);
        assert!("sideways".parse::<AdjustMode>().is_err());
    }
}
