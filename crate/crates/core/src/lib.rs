//! Single-pass band-grid classifier.
//!
//! Every input variable is normalised to `[0, 1]` and split into bands; each
//! band cell accumulates a scale weight and one output weight per category
//! in a single training pass. Classification sums the selected cells' votes
//! across variables.
//!
//! ```
//! use bandgrid_core::{Grid, Scoring};
//!
//! let mut grid = Grid::new(2, 2, vec!["A".into(), "B".into()], 0.5, vec![1.0, 1.0]).unwrap();
//! grid.train_row(&[0.1, 0.2], 0).unwrap();
//! grid.train_row(&[0.9, 0.8], 1).unwrap();
//! assert_eq!(grid.predict(&[0.2, 0.1]).unwrap(), 0);
//! assert_eq!(grid.scoring(), Scoring::CellRatio);
//! ```

pub mod adjust;
pub mod balance;
pub mod data_io;
pub mod error;
pub mod eval;
pub mod grid;
pub mod inspect;
pub mod model;
pub mod preprocess;
pub mod reproduce;

pub use adjust::{adjust, adjust_pass, AdjustConfig, AdjustMode, AdjustReport, PassStats};
pub use balance::{make_policy, IncrementPolicy, PolicySpec, Strategy};
pub use data_io::{
    builtin_descriptor, default_data_root, encode_categorical, load, Dataset, DatasetDescriptor, Loaded, Split,
};
pub use error::{Error, ErrorKind, Result};
pub use eval::{
    evaluate, evaluate_holdout, evaluate_loaded, evaluate_resubstitution, score, sweep_bands, train_model, EvalReport,
    ExperimentConfig, Protocol, SweepResult, Tally, TrainedModel, DEFAULT_CELL_CAP,
};
pub use grid::{band_index, BandRow, Cell, Classification, Grid, Scoring};
pub use model::ModelFile;
pub use preprocess::{fit_normalizer, normalize, uniform_boundaries, BoundaryMode, NormStats};
