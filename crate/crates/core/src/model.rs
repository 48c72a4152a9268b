//! Versioned on-disk model files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::adjust::AdjustReport;
use crate::data_io::Dataset;
use crate::error::{Error, Result};
use crate::eval::TrainedModel;

pub const MODEL_FORMAT: &str = "bandgrid-model";
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format: String,
    pub version: u32,
    pub dataset: String,
    /// Fingerprint of the descriptor and data files the model was trained on.
    pub fingerprint: String,
    pub column_names: Vec<String>,
    #[serde(flatten)]
    pub model: TrainedModel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjust: Option<AdjustReport>,
}

impl ModelFile {
    pub fn new(model: TrainedModel, trained_on: &Dataset) -> Self {
        ModelFile {
            format: MODEL_FORMAT.to_string(),
            version: MODEL_VERSION,
            dataset: trained_on.name.clone(),
            fingerprint: trained_on.fingerprint.clone(),
            column_names: trained_on.column_names.clone(),
            model,
            adjust: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|source| Error::Json {
            context: "serialising model".into(),
            source,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|source| Error::Json {
            context: "reading model".into(),
            source,
        })?;
        let format = value.get("format").and_then(|f| f.as_str());
        if format != Some(MODEL_FORMAT) {
            return Err(Error::config(format!("not a model file (format {format:?})")));
        }
        let version = value.get("version").and_then(|v| v.as_u64());
        if version != Some(u64::from(MODEL_VERSION)) {
            return Err(Error::config(format!(
                "unsupported model version {version:?}; this build reads {MODEL_VERSION}"
            )));
        }
        serde_json::from_value(value).map_err(|source| Error::Json {
            context: "reading model".into(),
            source,
        })
    }

    /// Write to `path`; an existing file is only replaced when `force` is set.
    pub fn save(&self, path: &Path, force: bool) -> Result<()> {
        if path.exists() && !force {
            return Err(Error::config(format!(
                "{} already exists; pass --force to overwrite",
                path.display()
            )));
        }
        std::fs::write(path, self.to_json()? + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Refuse a dataset whose descriptor or files differ from training time.
    pub fn check_dataset(&self, dataset: &Dataset) -> Result<()> {
        if dataset.fingerprint != self.fingerprint {
            return Err(Error::config(format!(
                "model was trained on {} with fingerprint {}, but the data now loaded for {} has \
                 fingerprint {}; the descriptor or data files changed, retrain the model",
                self.dataset,
                short(&self.fingerprint),
                dataset.name,
                short(&dataset.fingerprint)
            )));
        }
        Ok(())
    }
}

fn short(fp: &str) -> &str {
    &fp[..fp.len().min(12)]
}
