//! The band grid: one row of band cells per input variable.
//!
//! Each cell keeps a scale weight (grown by `cw` every time a training value
//! lands in it) and one output weight per category (grown by `ow[label]`).
//! Training is a single increment-only pass touching exactly one cell per
//! variable per row. Classification sums a per-cell contribution for every
//! category over the variables and picks the largest total.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::uniform_boundaries;

/// One band slot of one variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    scale_weight: f64,
    output_weights: Vec<f64>,
}

impl Cell {
    pub fn empty(num_categories: usize) -> Self {
        Cell {
            scale_weight: 0.0,
            output_weights: vec![0.0; num_categories],
        }
    }

    /// A cell with explicit weights, e.g. to reconstruct a hand-built grid.
    pub fn new(scale_weight: f64, output_weights: Vec<f64>) -> Result<Self> {
        if !(scale_weight >= 0.0 && scale_weight.is_finite()) {
            return Err(Error::config(format!("invalid scale weight {scale_weight}")));
        }
        if let Some(w) = output_weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return Err(Error::config(format!("invalid output weight {w}")));
        }
        Ok(Cell {
            scale_weight,
            output_weights,
        })
    }

    pub fn scale_weight(&self) -> f64 {
        self.scale_weight
    }

    pub fn output_weights(&self) -> &[f64] {
        &self.output_weights
    }

    pub(crate) fn output_weights_mut(&mut self) -> &mut [f64] {
        &mut self.output_weights
    }

    /// Category this cell leans towards, lowest index on ties. `None` when
    /// every output weight is zero.
    pub fn dominant_category(&self) -> Option<usize> {
        let (idx, &best) = argmax(&self.output_weights)?;
        (best > 0.0).then_some(idx)
    }
}

/// The ordered cells of one variable together with their upper band edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandRow {
    cells: Vec<Cell>,
    boundaries: Vec<f64>,
}

impl BandRow {
    pub fn uniform(num_bands: usize, num_categories: usize) -> Result<Self> {
        Self::with_boundaries(uniform_boundaries(num_bands)?, num_categories)
    }

    pub fn with_boundaries(boundaries: Vec<f64>, num_categories: usize) -> Result<Self> {
        validate_boundaries(&boundaries)?;
        let cells = vec![Cell::empty(num_categories); boundaries.len()];
        Ok(BandRow { cells, boundaries })
    }

    pub fn from_cells(cells: Vec<Cell>, boundaries: Vec<f64>) -> Result<Self> {
        validate_boundaries(&boundaries)?;
        if cells.len() != boundaries.len() {
            return Err(Error::config(format!(
                "{} cells but {} band edges",
                cells.len(),
                boundaries.len()
            )));
        }
        Ok(BandRow { cells, boundaries })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn num_bands(&self) -> usize {
        self.cells.len()
    }

    pub fn band_index(&self, value: f64) -> Result<usize> {
        band_index(value, &self.boundaries)
    }

    pub fn cell_for(&self, value: f64) -> Result<&Cell> {
        Ok(&self.cells[self.band_index(value)?])
    }
}

fn validate_boundaries(boundaries: &[f64]) -> Result<()> {
    let last = boundaries
        .last()
        .ok_or_else(|| Error::config("a band row needs at least one band"))?;
    if !boundaries.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::config("band edges must be strictly increasing"));
    }
    if last.is_nan() || *last < 1.0 {
        return Err(Error::config(format!("last band edge {last} is below 1.0")));
    }
    Ok(())
}

/// Index of the band holding a normalised `value`.
///
/// The first band whose upper edge is `>= value` wins, so a value exactly on
/// an edge belongs to the lower band. Values outside `[0, 1]` are clamped.
pub fn band_index(value: f64, boundaries: &[f64]) -> Result<usize> {
    if value.is_nan() {
        return Err(Error::data("cannot place NaN in a band"));
    }
    if boundaries.is_empty() {
        return Err(Error::config("no band edges"));
    }
    let v = value.clamp(0.0, 1.0);
    let idx = boundaries.partition_point(|&edge| edge < v);
    Ok(idx.min(boundaries.len() - 1))
}

/// How a selected cell turns into per-category votes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scoring {
    /// `output_weights[oc] / scale_weight`: the cell's output weights read
    /// relative to how often the cell was used. Empty cells vote zero.
    #[default]
    CellRatio,
    /// `value * scale_weight * output_weights[oc]`.
    InputProduct,
}

impl Scoring {
    #[inline]
    fn contribution(self, value: f64, cell: &Cell, category: usize) -> f64 {
        let out = cell.output_weights[category];
        match self {
            Scoring::CellRatio => {
                if cell.scale_weight > 0.0 {
                    out / cell.scale_weight
                } else {
                    0.0
                }
            }
            Scoring::InputProduct => value * cell.scale_weight * out,
        }
    }
}

impl fmt::Display for Scoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scoring::CellRatio => "ratio",
            Scoring::InputProduct => "product",
        })
    }
}

impl FromStr for Scoring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" | "cell_ratio" => Ok(Scoring::CellRatio),
            "product" | "input_product" => Ok(Scoring::InputProduct),
            other => Err(Error::config(format!("unknown scoring rule '{other}'"))),
        }
    }
}

/// Result of classifying one row.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub predicted: usize,
    /// Summed vote per category.
    pub scores: Vec<f64>,
}

/// The classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    band_rows: Vec<BandRow>,
    categories: Vec<String>,
    cw: f64,
    ow: Vec<f64>,
    #[serde(default)]
    scoring: Scoring,
    #[serde(default)]
    cell_updates: u64,
}

impl Grid {
    /// A zeroed grid with uniform bands for every variable.
    pub fn new(num_variables: usize, num_bands: usize, categories: Vec<String>, cw: f64, ow: Vec<f64>) -> Result<Self> {
        if num_variables == 0 {
            return Err(Error::config("a grid needs at least one variable"));
        }
        let row = BandRow::uniform(num_bands, categories.len())?;
        Self::from_band_rows(vec![row; num_variables], categories, cw, ow)
    }

    /// Assemble a grid from prepared band rows (zeroed or not).
    pub fn from_band_rows(band_rows: Vec<BandRow>, categories: Vec<String>, cw: f64, ow: Vec<f64>) -> Result<Self> {
        if band_rows.is_empty() {
            return Err(Error::config("a grid needs at least one variable"));
        }
        if categories.is_empty() {
            return Err(Error::config("a grid needs at least one category"));
        }
        if !(cw > 0.0 && cw.is_finite()) {
            return Err(Error::config(format!("cell increment must be positive, got {cw}")));
        }
        if ow.len() != categories.len() {
            return Err(Error::config(format!(
                "{} output increments for {} categories",
                ow.len(),
                categories.len()
            )));
        }
        if let Some(w) = ow.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::config(format!("output increments must be positive, got {w}")));
        }
        for (v, row) in band_rows.iter().enumerate() {
            if let Some(cell) = row.cells.iter().find(|c| c.output_weights.len() != categories.len()) {
                return Err(Error::config(format!(
                    "variable {v} has a cell with {} output weights for {} categories",
                    cell.output_weights.len(),
                    categories.len()
                )));
            }
        }
        Ok(Grid {
            band_rows,
            categories,
            cw,
            ow,
            scoring: Scoring::default(),
            cell_updates: 0,
        })
    }

    pub fn with_scoring(mut self, scoring: Scoring) -> Self {
        self.scoring = scoring;
        self
    }

    pub fn scoring(&self) -> Scoring {
        self.scoring
    }

    pub fn set_scoring(&mut self, scoring: Scoring) {
        self.scoring = scoring;
    }

    pub fn band_rows(&self) -> &[BandRow] {
        &self.band_rows
    }

    pub(crate) fn cell_mut(&mut self, variable: usize, band: usize) -> &mut Cell {
        &mut self.band_rows[variable].cells[band]
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn num_variables(&self) -> usize {
        self.band_rows.len()
    }

    pub fn num_categories(&self) -> usize {
        self.categories.len()
    }

    pub fn num_cells(&self) -> usize {
        self.band_rows.iter().map(BandRow::num_bands).sum()
    }

    pub fn cw(&self) -> f64 {
        self.cw
    }

    pub fn ow(&self) -> &[f64] {
        &self.ow
    }

    /// Total number of cell increments performed by training so far.
    pub fn cell_updates(&self) -> u64 {
        self.cell_updates
    }

    pub fn category_index(&self, label: &str) -> Option<usize> {
        self.categories.iter().position(|c| c == label)
    }

    fn check_row(&self, row: &[f64]) -> Result<()> {
        if row.len() != self.band_rows.len() {
            return Err(Error::data(format!(
                "row has {} values, grid has {} variables",
                row.len(),
                self.band_rows.len()
            )));
        }
        Ok(())
    }

    /// Locate the selected band of every variable for a normalised row.
    pub fn locate(&self, row: &[f64]) -> Result<Vec<usize>> {
        self.check_row(row)?;
        row.iter()
            .zip(&self.band_rows)
            .map(|(&v, band)| band.band_index(v))
            .collect()
    }

    /// Add one normalised training row labelled with category index `label`.
    pub fn train_row(&mut self, row: &[f64], label: usize) -> Result<()> {
        if label >= self.categories.len() {
            return Err(Error::data(format!(
                "label {label} is not one of the {} categories",
                self.categories.len()
            )));
        }
        // Resolve every band before touching anything so a bad value leaves
        // the grid unchanged.
        let bands = self.locate(row)?;
        let inc = self.ow[label];
        for (band_row, b) in self.band_rows.iter_mut().zip(bands) {
            let cell = &mut band_row.cells[b];
            cell.scale_weight += self.cw;
            cell.output_weights[label] += inc;
            self.cell_updates += 1;
        }
        Ok(())
    }

    pub fn train<'a, R>(&mut self, rows: R, labels: &[usize]) -> Result<()>
    where
        R: IntoIterator<Item = &'a Vec<f64>>,
    {
        let mut n = 0;
        for (row, &label) in rows.into_iter().zip(labels) {
            self.train_row(row, label)?;
            n += 1;
        }
        if n != labels.len() {
            return Err(Error::data(format!("{n} rows but {} labels", labels.len())));
        }
        Ok(())
    }

    /// Classify one normalised row. Pure; safe to call from many threads.
    pub fn classify_row(&self, row: &[f64]) -> Result<Classification> {
        let bands = self.locate(row)?;
        let mut scores = vec![0.0; self.categories.len()];
        for ((band_row, b), &value) in self.band_rows.iter().zip(bands).zip(row) {
            let cell = &band_row.cells[b];
            let value = value.clamp(0.0, 1.0);
            for (oc, score) in scores.iter_mut().enumerate() {
                *score += self.scoring.contribution(value, cell, oc);
            }
        }
        let predicted = argmax(&scores).map_or(0, |(i, _)| i);
        Ok(Classification { predicted, scores })
    }

    pub fn predict(&self, row: &[f64]) -> Result<usize> {
        self.classify_row(row).map(|c| c.predicted)
    }
}

/// First index holding the maximum.
pub(crate) fn argmax(values: &[f64]) -> Option<(usize, &f64)> {
    let mut best: Option<(usize, &f64)> = None;
    for (i, v) in values.iter().enumerate() {
        match best {
            Some((_, b)) if v.partial_cmp(b) != Some(std::cmp::Ordering::Greater) => {}
            _ => best = Some((i, v)),
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cats(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("c{i}")).collect()
    }

    #[test]
    fn init_counts_and_zeroes() {
        let g = Grid::new(4, 10, vec!["A".into(), "B".into()], 0.01, vec![0.02, 0.02]).unwrap();
        assert_eq!(g.num_cells(), 40);
        for row in g.band_rows() {
            for c in row.cells() {
                assert_eq!(c.scale_weight(), 0.0);
                assert_eq!(c.output_weights(), &[0.0, 0.0]);
            }
        }

        let g = Grid::new(1, 1, vec!["A".into()], 1.0, vec![1.0]).unwrap();
        assert_eq!(g.num_cells(), 1);

        let g = Grid::new(13, 15, cats(3), 1.0 / 178.0, vec![1.0; 3]).unwrap();
        assert_eq!(g.num_cells(), 195);
        assert_eq!(g.band_rows()[0].boundaries()[14], 1.0);
    }

    #[test]
    fn init_rejects_bad_configuration() {
        assert!(matches!(
            Grid::new(2, 3, cats(2), 0.1, vec![0.1]),
            Err(Error::Config(_))
        ));
        assert!(Grid::new(0, 3, cats(2), 0.1, vec![0.1; 2]).is_err());
        assert!(Grid::new(2, 0, cats(2), 0.1, vec![0.1; 2]).is_err());
        assert!(Grid::new(2, 3, vec![], 0.1, vec![]).is_err());
        assert!(Grid::new(2, 3, cats(2), 0.0, vec![0.1; 2]).is_err());
        assert!(Grid::new(2, 3, cats(2), 0.1, vec![0.1, -1.0]).is_err());
    }

    #[test]
    fn band_index_examples() {
        let ten = uniform_boundaries(10).unwrap();
        assert_eq!(band_index(0.45, &ten).unwrap(), 4);
        assert_eq!(band_index(0.39, &ten).unwrap(), 3);
        assert_eq!(band_index(0.0, &ten).unwrap(), 0);
        assert_eq!(band_index(1.0, &ten).unwrap(), 9);
        assert_eq!(band_index(0.0, &[1.0]).unwrap(), 0);
        assert!(matches!(band_index(f64::NAN, &ten), Err(Error::Data(_))));
    }

    #[test]
    fn band_index_clamps_and_keeps_edges_low() {
        let ten = uniform_boundaries(10).unwrap();
        assert_eq!(band_index(-0.2, &ten).unwrap(), 0);
        assert_eq!(band_index(1.7, &ten).unwrap(), 9);
        assert_eq!(band_index(f64::INFINITY, &ten).unwrap(), 9);
        // a value equal to an edge stays in the band that edge closes
        assert_eq!(band_index(ten[3], &ten).unwrap(), 3);
        assert_eq!(band_index(0.5, &[0.5, 1.0]).unwrap(), 0);
        assert_eq!(band_index(0.5000001, &[0.5, 1.0]).unwrap(), 1);
    }

    #[test]
    fn train_increments_selected_cells_only() {
        let mut g = Grid::new(2, 10, cats(2), 1.0 / 100.0, vec![1.0 / 60.0, 1.0 / 40.0]).unwrap();
        g.train_row(&[0.45, 0.91], 1).unwrap();
        for (v, b) in [(0usize, 4usize), (1, 9)] {
            let c = &g.band_rows()[v].cells()[b];
            assert_eq!(c.scale_weight(), 0.01);
            assert_eq!(c.output_weights(), &[0.0, 0.025]);
        }
        let touched: usize = g
            .band_rows()
            .iter()
            .flat_map(|r| r.cells())
            .filter(|c| c.scale_weight() > 0.0)
            .count();
        assert_eq!(touched, 2);
        assert_eq!(g.cell_updates(), 2);

        g.train_row(&[0.45, 0.91], 1).unwrap();
        let c = &g.band_rows()[0].cells()[4];
        assert_eq!(c.scale_weight(), 0.02);
        assert_eq!(c.output_weights()[1], 0.05);
    }

    #[test]
    fn train_rejects_bad_rows_without_mutation() {
        let mut g = Grid::new(2, 4, cats(2), 0.5, vec![0.5, 0.5]).unwrap();
        let before = g.clone();
        assert!(matches!(g.train_row(&[0.1, 0.2], 2), Err(Error::Data(_))));
        assert!(matches!(g.train_row(&[0.1], 0), Err(Error::Data(_))));
        assert!(matches!(g.train_row(&[0.1, f64::NAN], 0), Err(Error::Data(_))));
        assert_eq!(g, before);
    }

    #[test]
    fn all_zero_grid_picks_first_category() {
        let g = Grid::new(3, 5, cats(4), 1.0, vec![1.0; 4]).unwrap();
        for scoring in [Scoring::CellRatio, Scoring::InputProduct] {
            let c = g.clone().with_scoring(scoring).classify_row(&[0.3, 0.6, 0.9]).unwrap();
            assert_eq!(c.predicted, 0);
            assert_eq!(c.scores, vec![0.0; 4]);
        }
    }

    fn figure_one_like() -> Grid {
        // one variable, ten bands; band 3 leans A (0.7) over B (0.3)
        let mut cells = vec![Cell::empty(2); 10];
        cells[3] = Cell::new(0.2, vec![0.7, 0.3]).unwrap();
        let row = BandRow::from_cells(cells, uniform_boundaries(10).unwrap()).unwrap();
        Grid::from_band_rows(vec![row], vec!["A".into(), "B".into()], 0.1, vec![0.1, 0.1]).unwrap()
    }

    #[test]
    fn dominant_cell_decides_single_variable() {
        let g = figure_one_like();
        for scoring in [Scoring::CellRatio, Scoring::InputProduct] {
            let c = g.clone().with_scoring(scoring).classify_row(&[0.39]).unwrap();
            assert_eq!(c.predicted, 0);
            assert!(c.scores[0] > c.scores[1]);
        }
    }

    #[test]
    fn single_cell_votes_follow_its_outputs() {
        // B5-shaped cell: scale 0.14, outputs [0.06, 0.26, 0.1]
        let mut cells = vec![Cell::empty(3); 12];
        cells[4] = Cell::new(0.14, vec![0.06, 0.26, 0.1]).unwrap();
        let row = BandRow::from_cells(cells, uniform_boundaries(12).unwrap()).unwrap();
        let g = Grid::from_band_rows(vec![row], cats(3), 1.0 / 150.0, vec![0.02; 3]).unwrap();
        assert_eq!(g.locate(&[0.40]).unwrap(), vec![4]);

        let p = g
            .clone()
            .with_scoring(Scoring::InputProduct)
            .classify_row(&[0.40])
            .unwrap();
        let k = 0.40 * 0.14;
        for (s, o) in p.scores.iter().zip([0.06, 0.26, 0.1]) {
            assert!((s - k * o).abs() < 1e-15);
        }
        assert_eq!(p.predicted, 1);

        let r = g.with_scoring(Scoring::CellRatio).classify_row(&[0.40]).unwrap();
        for (s, o) in r.scores.iter().zip([0.06, 0.26, 0.1]) {
            assert!((s - o / 0.14).abs() < 1e-12);
        }
        assert_eq!(r.predicted, 1);
    }

    #[test]
    fn zero_input_contributes_nothing_under_product() {
        let mut g = Grid::new(2, 2, cats(2), 1.0, vec![1.0, 1.0])
            .unwrap()
            .with_scoring(Scoring::InputProduct);
        g.train_row(&[0.0, 0.0], 1).unwrap();
        let c = g.classify_row(&[0.0, 0.0]).unwrap();
        assert_eq!(c.scores, vec![0.0, 0.0]);
        assert_eq!(c.predicted, 0);
    }

    #[test]
    fn argmax_prefers_lowest_index() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0]).unwrap().0, 1);
        assert_eq!(argmax(&[0.0, 0.0]).unwrap().0, 0);
        assert!(argmax(&[]).is_none());
    }

    #[test]
    fn band_row_validation() {
        assert!(BandRow::with_boundaries(vec![], 2).is_err());
        assert!(BandRow::with_boundaries(vec![0.5, 0.5, 1.0], 2).is_err());
        assert!(BandRow::with_boundaries(vec![0.5, 0.9], 2).is_err());
        assert!(BandRow::from_cells(vec![Cell::empty(2)], vec![0.5, 1.0]).is_err());
        assert!(Cell::new(-1.0, vec![]).is_err());
        assert!(Cell::new(1.0, vec![f64::NAN]).is_err());
    }

    #[test]
    fn scoring_parses() {
        assert_eq!("product".parse::<Scoring>().unwrap(), Scoring::InputProduct);
        assert_eq!("ratio".parse::<Scoring>().unwrap(), Scoring::CellRatio);
        assert!("sum".parse::<Scoring>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn dataset() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<usize>)> {
            (1usize..5).prop_flat_map(|vars| {
                prop::collection::vec((prop::collection::vec(0.0f64..=1.0, vars), 0usize..3), 1..40)
                    .prop_map(|rows| rows.into_iter().unzip())
            })
        }

        fn trained(rows: &[Vec<f64>], labels: &[usize], bands: usize, ow: Vec<f64>) -> Grid {
            let mut g = Grid::new(rows[0].len(), bands, cats(3), 1.0 / rows.len() as f64, ow).unwrap();
            g.train(rows, labels).unwrap();
            g
        }

        proptest! {
            #[test]
            fn training_is_order_invariant((rows, labels) in dataset(), bands in 1usize..8, rot in 0usize..40) {
                let a = trained(&rows, &labels, bands, vec![0.2, 0.3, 0.5]);
                let k = rot % rows.len();
                let mut r2 = rows.clone();
                let mut l2 = labels.clone();
                r2.rotate_left(k);
                l2.rotate_left(k);
                r2.reverse();
                l2.reverse();
                let b = trained(&r2, &l2, bands, vec![0.2, 0.3, 0.5]);
                for row in &rows {
                    prop_assert_eq!(a.predict(row).unwrap(), b.predict(row).unwrap());
                }
            }

            #[test]
            fn weights_are_conserved((rows, labels) in dataset(), bands in 1usize..8) {
                let g = trained(&rows, &labels, bands, vec![0.25, 0.5, 1.0]);
                for band_row in g.band_rows() {
                    let s: f64 = band_row.cells().iter().map(Cell::scale_weight).sum();
                    prop_assert!((s - 1.0).abs() < 1e-9, "scale sum {}", s);
                    for (oc, w) in [0.25, 0.5, 1.0].iter().enumerate() {
                        let count = labels.iter().filter(|&&l| l == oc).count() as f64;
                        let o: f64 = band_row.cells().iter().map(|c| c.output_weights()[oc]).sum();
                        prop_assert!((o - count * w).abs() < 1e-9);
                    }
                }
                prop_assert_eq!(g.cell_updates(), (rows.len() * rows[0].len()) as u64);
            }

            #[test]
            fn flat_increment_value_does_not_change_predictions(
                (rows, labels) in dataset(), bands in 1usize..8, scoring in prop_oneof![Just(Scoring::CellRatio), Just(Scoring::InputProduct)]
            ) {
                let mut preds = Vec::new();
                for w in [1.0 / 50.0, 1.0 / 100.0, 1.0] {
                    let g = trained(&rows, &labels, bands, vec![w; 3]).with_scoring(scoring);
                    preds.push(rows.iter().map(|r| g.classify_row(r).unwrap()).collect::<Vec<_>>());
                }
                // compare only rows whose winning margin is not a float tie
                for (i, c) in preds[0].iter().enumerate() {
                    let mut sorted = c.scores.clone();
                    sorted.sort_by(|a, b| b.total_cmp(a));
                    if sorted.len() > 1 && sorted[0] - sorted[1] < 1e-9 * sorted[0].abs().max(1.0) {
                        continue;
                    }
                    prop_assert_eq!(preds[1][i].predicted, c.predicted);
                    prop_assert_eq!(preds[2][i].predicted, c.predicted);
                }
            }

            #[test]
            fn raising_one_output_weight_never_hurts_that_category(
                (rows, labels) in dataset(), bands in 1usize..6, pick in 0usize..3
            ) {
                let base = trained(&rows, &labels, bands, vec![0.3, 0.3, 0.3]);
                let mut ow = vec![0.3, 0.3, 0.3];
                ow[pick] = 0.6;
                let boosted = trained(&rows, &labels, bands, ow);
                for row in &rows {
                    let a = base.classify_row(row).unwrap();
                    let b = boosted.classify_row(row).unwrap();
                    prop_assert!(b.scores[pick] >= a.scores[pick]);
                    if a.predicted == pick {
                        prop_assert_eq!(b.predicted, pick);
                    }
                }
            }
        }
    }
}
