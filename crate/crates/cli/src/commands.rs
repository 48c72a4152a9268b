use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bandgrid_core::adjust::{adjust, AdjustConfig, AdjustMode, AdjustReport};
use bandgrid_core::eval::{evaluate, Protocol};
use bandgrid_core::inspect::{dump, render_json, render_text, variable_index};
use bandgrid_core::{
    load, reproduce, sweep_bands, train_model, BoundaryMode, DatasetDescriptor, EvalReport, ExperimentConfig, Loaded,
    ModelFile, PolicySpec, Scoring,
};

use crate::args::{
    AdjustArgs, AdjustModeArg, BoundaryArg, Cli, Command, EvaluateArgs, ExperimentArgs, Format, InspectArgs,
    OutputArgs, PolicyArg, ReproduceArgs, ScoringArg, SweepArgs, TrainArgs,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] bandgrid_core::Error),
    #[error("writing {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    let root = cli.data_root;
    match cli.command {
        Command::Train(a) => train(&root, a),
        Command::Evaluate(a) => evaluate_cmd(&root, a),
        Command::Sweep(a) => sweep(&root, a),
        Command::Inspect(a) => inspect(a),
        Command::Reproduce(a) => reproduce_cmd(&root, a),
    }
}

fn descriptor(dataset: Option<&str>, path: Option<&Path>) -> Result<DatasetDescriptor> {
    match (dataset, path) {
        (_, Some(p)) => Ok(DatasetDescriptor::from_path(p)?),
        (Some(name), None) => Ok(DatasetDescriptor::resolve(name)?),
        (None, None) => Err(usage("one of --dataset or --descriptor is required")),
    }
}

impl ExperimentArgs {
    fn any_set(&self) -> bool {
        self.bands.is_some()
            || self.boundaries.is_some()
            || self.policy.is_some()
            || self.adjustments.is_some()
            || self.denominators.is_some()
            || self.ow.is_some()
            || self.scoring.is_some()
    }

    /// Merge the flags over the descriptor defaults.
    fn resolve(&self, desc: &DatasetDescriptor) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::from_descriptor(desc);
        if let Some(b) = self.bands {
            if b == 0 {
                return Err(bandgrid_core::Error::Config("number of bands must be at least 1".into()).into());
            }
            cfg.bands = b;
        }
        if let Some(b) = self.boundaries {
            cfg.boundaries = match b {
                BoundaryArg::Uniform => BoundaryMode::Uniform,
                BoundaryArg::Gaps => BoundaryMode::Gaps,
            };
        }
        if let Some(s) = self.scoring {
            cfg.scoring = match s {
                ScoringArg::Ratio => Scoring::CellRatio,
                ScoringArg::Product => Scoring::InputProduct,
            };
        }
        let adjusted_values = self.adjustments.is_some() || self.denominators.is_some();
        match self.policy {
            None if adjusted_values || self.ow.is_some() => {
                return Err(usage(
                    "--adjustments/--denominators need --policy adjusted, --ow needs --policy manual",
                ))
            }
            None => {}
            Some(PolicyArg::Flat) => cfg.policy = PolicySpec::RowUniform,
            Some(PolicyArg::PerCategory) => cfg.policy = PolicySpec::PerCategory,
            Some(PolicyArg::Adjusted) => {
                cfg.policy = if adjusted_values {
                    PolicySpec::PerCategoryAdjusted {
                        adjustments: self.adjustments.clone(),
                        denominators: self.denominators.clone(),
                    }
                } else if let PolicySpec::PerCategoryAdjusted { .. } = desc.defaults.policy {
                    desc.defaults.policy.clone()
                } else {
                    return Err(usage("--policy adjusted needs --adjustments or --denominators"));
                };
            }
            Some(PolicyArg::Manual) => {
                let ow = self.ow.clone().ok_or_else(|| usage("--policy manual needs --ow"))?;
                cfg.policy = PolicySpec::Manual { ow };
            }
        }
        if self.ow.is_some() && !matches!(cfg.policy, PolicySpec::Manual { .. }) {
            return Err(usage("--ow only applies to --policy manual"));
        }
        if adjusted_values && !matches!(cfg.policy, PolicySpec::PerCategoryAdjusted { .. }) {
            return Err(usage("--adjustments/--denominators only apply to --policy adjusted"));
        }
        Ok(cfg)
    }
}

impl AdjustArgs {
    fn config(&self) -> Result<Option<AdjustConfig>> {
        if !self.adjust {
            return Ok(None);
        }
        let cfg = AdjustConfig {
            eta: self.eta,
            epochs: self.epochs,
            floor: self.floor,
            mode: match self.adjust_mode {
                AdjustModeArg::Dominant => AdjustMode::Dominant,
                AdjustModeArg::TrueClass => AdjustMode::TrueClass,
                AdjustModeArg::AllWrong => AdjustMode::AllWrong,
            },
        };
        cfg.validate()?;
        Ok(Some(cfg))
    }
}

fn emit(out: &OutputArgs, body: &str) -> Result<()> {
    let mut body = body.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &out.output {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            })
        }
    }
}

fn train_and_adjust(
    loaded: &Loaded,
    cfg: &ExperimentConfig,
    adjust_cfg: Option<AdjustConfig>,
) -> Result<(bandgrid_core::TrainedModel, Option<AdjustReport>)> {
    let train = loaded.training();
    let mut model = train_model(train, cfg)?;
    log::info!(
        "trained {} on {} rows: {} variables x {} bands, {} cell updates",
        train.name,
        train.num_rows(),
        train.num_features(),
        cfg.bands,
        model.grid.cell_updates()
    );
    let report = match adjust_cfg {
        Some(a) => {
            let rows = model.normalize(train)?;
            Some(adjust(&mut model.grid, &rows, &train.labels, &a)?)
        }
        None => None,
    };
    Ok((model, report))
}

fn train(root: &Path, a: TrainArgs) -> Result<ExitCode> {
    let desc = descriptor(a.dataset.dataset.as_deref(), a.dataset.descriptor.as_deref())?;
    let cfg = a.experiment.resolve(&desc)?;
    let adjust_cfg = a.adjust.config()?;
    if a.output.exists() && !a.force {
        return Err(bandgrid_core::Error::Config(format!(
            "{} already exists; pass --force to overwrite",
            a.output.display()
        ))
        .into());
    }
    let loaded = load(&desc, root)?;
    let (model, adjust_report) = train_and_adjust(&loaded, &cfg, adjust_cfg)?;
    let train = loaded.training();
    let summary = format!(
        "trained {} ({} rows, {} variables x {} bands, {} cell updates); policy {}; wrote {}",
        train.name,
        train.num_rows(),
        train.num_features(),
        cfg.bands,
        model.grid.cell_updates(),
        model.policy.summary(),
        a.output.display()
    );
    let mut file = ModelFile::new(model, train);
    file.adjust = adjust_report;
    file.save(&a.output, a.force)?;
    println!("{summary}");
    if let Some(r) = &file.adjust {
        println!("{}", r.summary());
    }
    Ok(ExitCode::SUCCESS)
}

fn protocol(loaded: &Loaded) -> Protocol {
    if loaded.is_holdout() {
        Protocol::Holdout
    } else {
        Protocol::Resubstitution
    }
}

fn render_report(out: &OutputArgs, report: &EvalReport, adjust: Option<&AdjustReport>) -> Result<()> {
    match out.format {
        Format::Text => {
            let mut text = report.to_text();
            if let Some(a) = adjust {
                text.push_str(&a.summary());
                text.push('\n');
            }
            emit(out, &text)
        }
        Format::Json => emit(out, &report.to_json()?),
    }
}

fn evaluate_cmd(root: &Path, a: EvaluateArgs) -> Result<ExitCode> {
    let (report, adjust_report) = match &a.model {
        Some(path) => {
            if a.experiment.any_set() || a.adjust.adjust {
                return Err(usage("experiment and --adjust flags cannot be combined with --model"));
            }
            let file = ModelFile::load(path)?;
            let desc = match (&a.dataset.dataset, &a.dataset.descriptor) {
                (None, None) => DatasetDescriptor::resolve(&file.dataset)?,
                (d, p) => descriptor(d.as_deref(), p.as_deref())?,
            };
            let loaded = load(&desc, root)?;
            file.check_dataset(loaded.training())?;
            let r = evaluate(&file.model, loaded.training(), loaded.evaluation(), protocol(&loaded))?;
            (r, file.adjust)
        }
        None => {
            let desc = descriptor(a.dataset.dataset.as_deref(), a.dataset.descriptor.as_deref())?;
            let cfg = a.experiment.resolve(&desc)?;
            let adjust_cfg = a.adjust.config()?;
            let loaded = load(&desc, root)?;
            let (model, adj) = train_and_adjust(&loaded, &cfg, adjust_cfg)?;
            let r = evaluate(&model, loaded.training(), loaded.evaluation(), protocol(&loaded))?;
            (r, adj)
        }
    };
    let report = if a.predictions {
        report
    } else {
        EvalReport {
            predictions: None,
            ..report
        }
    };
    render_report(&a.out, &report, adjust_report.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

/// `5..20`, `5..=20` and `5-20` are inclusive; parts are comma separated.
pub fn parse_band_list(spec: &str) -> Result<Vec<usize>> {
    let bad = || usage(format!("invalid band list '{spec}' (try 5..20 or 2,4,8)"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let range = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match range {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(bad());
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err(bad());
    }
    Ok(out)
}

fn sweep(root: &Path, a: SweepArgs) -> Result<ExitCode> {
    let bands = parse_band_list(&a.range)?;
    if a.experiment.bands.is_some() {
        return Err(usage("sweep takes band counts from --range, not --bands"));
    }
    let desc = descriptor(a.dataset.dataset.as_deref(), a.dataset.descriptor.as_deref())?;
    let cfg = a.experiment.resolve(&desc)?;
    let loaded = load(&desc, root)?;
    let test = match &loaded {
        Loaded::All(_) => None,
        Loaded::Holdout { test, .. } => Some(test),
    };
    let result = sweep_bands(loaded.training(), test, &bands, &cfg, a.cell_cap)?;
    if let Some(path) = &a.plot_data {
        std::fs::write(path, result.to_csv()?).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
    }
    match a.out.format {
        Format::Text => emit(&a.out, &result.to_text())?,
        Format::Json => emit(&a.out, &result.to_json()?)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn inspect(a: InspectArgs) -> Result<ExitCode> {
    let file = ModelFile::load(&a.model)?;
    let only = a
        .variable
        .as_deref()
        .map(|v| variable_index(v, &file.column_names))
        .transpose()?;
    let dumps = dump(&file.model.grid, &file.column_names, only)?;
    let body = match a.out.format {
        Format::Text => render_text(&dumps, file.model.grid.num_categories(), a.decimals),
        Format::Json => render_json(&file.dataset, file.model.grid.categories(), &dumps)?,
    };
    emit(&a.out, &body)?;
    Ok(ExitCode::SUCCESS)
}

fn reproduce_cmd(root: &Path, a: ReproduceArgs) -> Result<ExitCode> {
    let only = (!a.only.is_empty()).then_some(a.only.as_slice());
    let table = reproduce::run(root, only)?;
    match a.out.format {
        Format::Text => emit(&a.out, &table.to_text())?,
        Format::Json => emit(&a.out, &table.to_json()?)?,
    }
    if a.strict && !table.ok() {
        return Ok(ExitCode::from(5));
    }
    Ok(ExitCode::SUCCESS)
}
