//! Dataset descriptors and the loader that turns raw delimited files into
//! numeric feature matrices with category-index labels.
//!
//! A descriptor is a small TOML document naming the file(s), the label
//! column, ignored and categorical columns, the ordered category labels and
//! how rows split into train/test. The six benchmark descriptors are built
//! in; any other dataset can be described by a file of the same shape (see
//! `docs/descriptor-format.md`).

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::balance::PolicySpec;
use crate::error::{Error, Result};
use crate::preprocess::BoundaryMode;

/// Environment variable naming the directory that holds raw dataset files.
pub const DATA_ROOT_ENV: &str = "BANDGRID_DATA";

const BUILTIN: &[(&str, &str)] = &[
    ("iris", include_str!("../descriptors/iris.toml")),
    ("wine", include_str!("../descriptors/wine.toml")),
    ("zoo", include_str!("../descriptors/zoo.toml")),
    ("abalone", include_str!("../descriptors/abalone.toml")),
    ("user-modelling", include_str!("../descriptors/user-modelling.toml")),
    ("banknote", include_str!("../descriptors/banknote.toml")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().map(|(n, _)| *n)
}

pub fn builtin_descriptor(name: &str) -> Option<DatasetDescriptor> {
    BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| DatasetDescriptor::from_toml(text).expect("built-in descriptor parses"))
}

/// `$BANDGRID_DATA`, or `./data`.
pub fn default_data_root() -> PathBuf {
    std::env::var_os(DATA_ROOT_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"))
}

/// A column addressed by position or by header name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "split", rename_all = "snake_case")]
pub enum Source {
    /// One file, evaluated by resubstitution.
    All { file: String },
    /// Separate training and test files.
    Separate { train: String, test: String },
    /// One file; rows `offset + k * stride` for `k < count` form the test set.
    Stride {
        file: String,
        stride: usize,
        offset: usize,
        count: usize,
    },
}

impl Source {
    pub fn files(&self) -> Vec<&str> {
        match self {
            Source::All { file } | Source::Stride { file, .. } => vec![file],
            Source::Separate { train, test } => vec![train, test],
        }
    }

    pub fn has_separate_test(&self) -> bool {
        !matches!(self, Source::All { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Defaults {
    #[serde(default = "default_bands")]
    pub bands: usize,
    #[serde(default)]
    pub boundaries: BoundaryMode,
    #[serde(default)]
    pub policy: PolicySpec,
}

fn default_bands() -> usize {
    10
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults {
            bands: default_bands(),
            boundaries: BoundaryMode::default(),
            policy: PolicySpec::default(),
        }
    }
}

fn default_delimiter() -> String {
    ",".to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetDescriptor {
    pub name: String,
    /// A single character, `"\t"`, or `"whitespace"` for runs of blanks.
    #[serde(default = "default_delimiter")]
    pub delimiter: String,
    /// Leading lines to skip; the first one supplies column names.
    #[serde(default)]
    pub header_lines: usize,
    pub label_column: ColumnRef,
    #[serde(default)]
    pub ignore_columns: Vec<usize>,
    /// Column index (as a string key) to its ordered level list.
    #[serde(default)]
    pub categorical_columns: BTreeMap<String, Vec<String>>,
    pub category_labels: Vec<String>,
    pub source: Source,
    #[serde(default)]
    pub defaults: Defaults,
    /// Optional SHA-256 (hex) per source file, keyed by its relative path.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub checksums: BTreeMap<String, String>,
}

impl DatasetDescriptor {
    pub fn from_toml(text: &str) -> Result<Self> {
        let d: DatasetDescriptor =
            toml::from_str(text).map_err(|e| Error::config(format!("invalid descriptor: {e}")))?;
        d.validate()?;
        Ok(d)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    /// A built-in name, or a path to a descriptor file.
    pub fn resolve(name_or_path: &str) -> Result<Self> {
        if let Some(d) = builtin_descriptor(name_or_path) {
            return Ok(d);
        }
        let path = Path::new(name_or_path);
        if path.extension().is_some_and(|e| e == "toml") || path.exists() {
            return Self::from_path(path);
        }
        let known: Vec<&str> = builtin_names().collect();
        Err(Error::config(format!(
            "unknown dataset '{name_or_path}' (built-in: {})",
            known.join(", ")
        )))
    }

    fn validate(&self) -> Result<()> {
        if self.category_labels.is_empty() {
            return Err(Error::config(format!("{}: category_labels is empty", self.name)));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &self.category_labels {
            if !seen.insert(l) {
                return Err(Error::config(format!("{}: duplicate category label '{l}'", self.name)));
            }
        }
        if let ColumnRef::Index(i) = self.label_column {
            if self.ignore_columns.contains(&i) {
                return Err(Error::config(format!(
                    "{}: label column {i} is also ignored",
                    self.name
                )));
            }
        }
        if matches!(self.label_column, ColumnRef::Name(_)) && self.header_lines == 0 {
            return Err(Error::config(format!(
                "{}: a named label column needs a header line",
                self.name
            )));
        }
        for key in self.categorical_columns.keys() {
            key.parse::<usize>()
                .map_err(|_| Error::config(format!("{}: categorical column key '{key}' is not an index", self.name)))?;
        }
        if let Source::Stride { stride, count, .. } = self.source {
            if stride == 0 || count == 0 {
                return Err(Error::config(format!(
                    "{}: stride split needs stride and count > 0",
                    self.name
                )));
            }
        }
        if self.defaults.bands == 0 {
            return Err(Error::config(format!("{}: default bands must be >= 1", self.name)));
        }
        Delimiter::parse(&self.delimiter)?;
        Ok(())
    }

    fn categorical(&self) -> BTreeMap<usize, &[String]> {
        self.categorical_columns
            .iter()
            .map(|(k, v)| (k.parse().expect("validated"), v.as_slice()))
            .collect()
    }

    /// SHA-256 over the canonical descriptor plus every source file.
    pub fn fingerprint(&self, data_root: &Path) -> Result<String> {
        let mut h = Sha256::new();
        let canonical = toml::to_string(self).map_err(|e| Error::config(e.to_string()))?;
        h.update(canonical.as_bytes());
        for file in self.source.files() {
            let path = data_root.join(file);
            let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(&bytes);
        }
        Ok(hex::encode(h.finalize()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    All,
    Train,
    Test,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::All => "all",
            Split::Train => "train",
            Split::Test => "test",
        })
    }
}

/// Raw (un-normalised) features with category-index labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub categories: Vec<String>,
    pub column_names: Vec<String>,
    pub split: Split,
    /// Fingerprint of the descriptor and source files this was loaded from.
    pub fingerprint: String,
}

impl Dataset {
    pub fn num_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn num_features(&self) -> usize {
        self.column_names.len()
    }

    pub fn category_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.categories.len()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Build a dataset from in-memory rows, e.g. for synthetic experiments.
    pub fn from_rows(name: &str, features: Vec<Vec<f64>>, labels: Vec<usize>, categories: Vec<String>) -> Result<Self> {
        if features.len() != labels.len() {
            return Err(Error::data(format!(
                "{} feature rows but {} labels",
                features.len(),
                labels.len()
            )));
        }
        let width = features.first().map_or(0, Vec::len);
        if let Some(r) = features.iter().position(|r| r.len() != width) {
            return Err(Error::data(format!(
                "row {r} has {} values, expected {width}",
                features[r].len()
            )));
        }
        if let Some(&l) = labels.iter().find(|&&l| l >= categories.len()) {
            return Err(Error::data(format!(
                "label {l} out of range for {} categories",
                categories.len()
            )));
        }
        Ok(Dataset {
            name: name.to_string(),
            features,
            labels,
            categories,
            column_names: (0..width).map(|i| format!("x{i}")).collect(),
            split: Split::All,
            fingerprint: String::new(),
        })
    }

    fn subset(&self, rows: &[usize], split: Split) -> Dataset {
        Dataset {
            name: self.name.clone(),
            features: rows.iter().map(|&r| self.features[r].clone()).collect(),
            labels: rows.iter().map(|&r| self.labels[r]).collect(),
            categories: self.categories.clone(),
            column_names: self.column_names.clone(),
            split,
            fingerprint: self.fingerprint.clone(),
        }
    }
}

/// A loaded dataset in the shape its descriptor prescribes.
#[derive(Debug, Clone, PartialEq)]
pub enum Loaded {
    All(Dataset),
    Holdout { train: Dataset, test: Dataset },
}

impl Loaded {
    /// The rows a model is trained on.
    pub fn training(&self) -> &Dataset {
        match self {
            Loaded::All(d) => d,
            Loaded::Holdout { train, .. } => train,
        }
    }

    /// The rows accuracy is measured on.
    pub fn evaluation(&self) -> &Dataset {
        match self {
            Loaded::All(d) => d,
            Loaded::Holdout { test, .. } => test,
        }
    }

    pub fn is_holdout(&self) -> bool {
        matches!(self, Loaded::Holdout { .. })
    }
}

/// Map level `i` of `levels` to `i / (levels - 1)`; one level maps to `0.0`.
pub fn encode_categorical<S: AsRef<str>>(raw: &[S], levels: &[String]) -> Result<Vec<f64>> {
    raw.iter().map(|v| encode_level(v.as_ref(), levels)).collect()
}

fn encode_level(value: &str, levels: &[String]) -> Result<f64> {
    let i = levels
        .iter()
        .position(|l| l == value)
        .ok_or_else(|| Error::data(format!("unknown level '{value}' (levels: {})", levels.join(", "))))?;
    if levels.len() == 1 {
        Ok(0.0)
    } else {
        Ok(i as f64 / (levels.len() - 1) as f64)
    }
}

#[derive(Debug, Clone, Copy)]
enum Delimiter {
    Byte(u8),
    Whitespace,
}

impl Delimiter {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "whitespace" => Ok(Delimiter::Whitespace),
            "\\t" | "\t" | "tab" => Ok(Delimiter::Byte(b'\t')),
            s if s.len() == 1 => Ok(Delimiter::Byte(s.as_bytes()[0])),
            other => Err(Error::config(format!("unsupported delimiter '{other}'"))),
        }
    }
}

/// Records of one file with their 1-based line numbers.
fn read_records(path: &Path, text: &str, delimiter: Delimiter) -> Result<Vec<(u64, Vec<String>)>> {
    match delimiter {
        Delimiter::Whitespace => Ok(text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (i as u64 + 1, l.split_whitespace().map(str::to_string).collect()))
            .collect()),
        Delimiter::Byte(b) => {
            let mut rdr = csv::ReaderBuilder::new()
                .has_headers(false)
                .delimiter(b)
                .flexible(true)
                .trim(csv::Trim::All)
                .from_reader(text.as_bytes());
            let mut out = Vec::new();
            for rec in rdr.records() {
                let rec = rec.map_err(|e| Error::data(format!("{}: {e}", path.display())))?;
                let line = rec.position().map_or(0, |p| p.line());
                if rec.len() == 1 && rec[0].is_empty() {
                    continue;
                }
                out.push((line, rec.iter().map(str::to_string).collect()));
            }
            Ok(out)
        }
    }
}

struct Parsed {
    features: Vec<Vec<f64>>,
    labels: Vec<usize>,
    column_names: Vec<String>,
}

fn parse_file(desc: &DatasetDescriptor, path: &Path, text: &str) -> Result<Parsed> {
    let delimiter = Delimiter::parse(&desc.delimiter)?;
    let mut records = read_records(path, text, delimiter)?;
    let header: Option<Vec<String>> = if desc.header_lines > 0 {
        if records.len() < desc.header_lines {
            return Err(Error::data(format!("{}: missing header", path.display())));
        }
        let hdr = records[0].1.clone();
        records.drain(..desc.header_lines);
        Some(hdr)
    } else {
        None
    };
    let width = header
        .as_ref()
        .map(Vec::len)
        .or_else(|| records.first().map(|r| r.1.len()))
        .ok_or_else(|| Error::data(format!("{}: no data rows", path.display())))?;

    let label_col = match &desc.label_column {
        ColumnRef::Index(i) => *i,
        ColumnRef::Name(name) => header
            .as_ref()
            .and_then(|h| h.iter().position(|c| c == name))
            .ok_or_else(|| Error::config(format!("{}: no column named '{name}'", path.display())))?,
    };
    if label_col >= width {
        return Err(Error::config(format!(
            "{}: label column {label_col} but rows have {width} fields",
            path.display()
        )));
    }
    let categorical = desc.categorical();
    let feature_cols: Vec<usize> = (0..width)
        .filter(|c| *c != label_col && !desc.ignore_columns.contains(c))
        .collect();
    let column_names = feature_cols
        .iter()
        .map(|&c| header.as_ref().map_or_else(|| format!("col{c}"), |h| h[c].clone()))
        .collect();

    let mut features = Vec::with_capacity(records.len());
    let mut labels = Vec::with_capacity(records.len());
    for (line, fields) in &records {
        let at = || format!("{} line {line}", path.display());
        if fields.len() != width {
            return Err(Error::data(format!(
                "{}: expected {width} fields, found {}",
                at(),
                fields.len()
            )));
        }
        let raw_label = &fields[label_col];
        let label = desc
            .category_labels
            .iter()
            .position(|l| l == raw_label)
            .ok_or_else(|| Error::data(format!("{}: unknown category '{raw_label}'", at())))?;
        let mut row = Vec::with_capacity(feature_cols.len());
        for &c in &feature_cols {
            let field = &fields[c];
            let value = match categorical.get(&c) {
                Some(levels) => {
                    encode_level(field, levels).map_err(|e| Error::data(format!("{}, column {c}: {e}", at())))?
                }
                None => field
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::data(format!("{}, column {c}: not a number: '{field}'", at())))?,
            };
            row.push(value);
        }
        features.push(row);
        labels.push(label);
    }
    if features.is_empty() {
        return Err(Error::data(format!("{}: no data rows", path.display())));
    }
    Ok(Parsed {
        features,
        labels,
        column_names,
    })
}

fn read_checked(desc: &DatasetDescriptor, data_root: &Path, rel: &str) -> Result<(PathBuf, String)> {
    let path = data_root.join(rel);
    let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
    if let Some(expected) = desc.checksums.get(rel) {
        let got = hex::encode(Sha256::digest(&bytes));
        if !got.eq_ignore_ascii_case(expected) {
            return Err(Error::data(format!(
                "{}: checksum mismatch (expected {expected}, got {got})",
                path.display()
            )));
        }
    }
    let text = String::from_utf8(bytes).map_err(|e| Error::data(format!("{}: {e}", path.display())))?;
    Ok((path, text))
}

fn dataset(desc: &DatasetDescriptor, parsed: Parsed, split: Split, fingerprint: &str) -> Dataset {
    Dataset {
        name: desc.name.clone(),
        features: parsed.features,
        labels: parsed.labels,
        categories: desc.category_labels.clone(),
        column_names: parsed.column_names,
        split,
        fingerprint: fingerprint.to_string(),
    }
}

/// Load a dataset from `data_root` as its descriptor prescribes.
pub fn load(desc: &DatasetDescriptor, data_root: &Path) -> Result<Loaded> {
    let fingerprint = desc.fingerprint(data_root)?;
    match &desc.source {
        Source::All { file } => {
            let (path, text) = read_checked(desc, data_root, file)?;
            let parsed = parse_file(desc, &path, &text)?;
            Ok(Loaded::All(dataset(desc, parsed, Split::All, &fingerprint)))
        }
        Source::Separate { train, test } => {
            let (p, t) = read_checked(desc, data_root, train)?;
            let train = dataset(desc, parse_file(desc, &p, &t)?, Split::Train, &fingerprint);
            let (p, t) = read_checked(desc, data_root, test)?;
            let test = dataset(desc, parse_file(desc, &p, &t)?, Split::Test, &fingerprint);
            if train.column_names.len() != test.column_names.len() {
                return Err(Error::data(format!(
                    "{}: train has {} features, test has {}",
                    desc.name,
                    train.column_names.len(),
                    test.column_names.len()
                )));
            }
            Ok(Loaded::Holdout { train, test })
        }
        Source::Stride {
            file,
            stride,
            offset,
            count,
        } => {
            let (path, text) = read_checked(desc, data_root, file)?;
            let all = dataset(desc, parse_file(desc, &path, &text)?, Split::All, &fingerprint);
            let test_rows: Vec<usize> = (0..*count).map(|k| offset + k * stride).collect();
            if let Some(&last) = test_rows.last() {
                if last >= all.num_rows() {
                    return Err(Error::config(format!(
                        "{}: stride split reaches row {last} but the file has {} rows",
                        desc.name,
                        all.num_rows()
                    )));
                }
            }
            let train_rows: Vec<usize> = (0..all.num_rows()).filter(|r| !test_rows.contains(r)).collect();
            Ok(Loaded::Holdout {
                train: all.subset(&train_rows, Split::Train),
                test: all.subset(&test_rows, Split::Test),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(dir: &Path, name: &str, text: &str) {
        let path = dir.join(name);
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::File::create(path).unwrap().write_all(text.as_bytes()).unwrap();
    }

    fn tmp() -> PathBuf {
        let d = std::env::temp_dir().join(format!(
            "bandgrid-io-{}-{}",
            std::process::id(),
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .unwrap()
                .as_nanos()
        ));
        std::fs::create_dir_all(&d).unwrap();
        d
    }

    const SHELLS: &str = r#"
name = "shells"
label_column = 3
ignore_columns = [0]
category_labels = ["small", "big"]
[categorical_columns]
1 = ["M", "F", "I"]
[source]
split = "all"
file = "shells.csv"
"#;

    #[test]
    fn encode_levels_evenly() {
        let levels: Vec<String> = ["M", "F", "I"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            encode_categorical(&["M", "F", "I"], &levels).unwrap(),
            vec![0.0, 0.5, 1.0]
        );
        let binary: Vec<String> = vec!["0".into(), "1".into()];
        assert_eq!(
            encode_categorical(&["0", "1", "1"], &binary).unwrap(),
            vec![0.0, 1.0, 1.0]
        );
        let single: Vec<String> = vec!["x".into()];
        assert_eq!(encode_categorical(&["x", "x"], &single).unwrap(), vec![0.0, 0.0]);
        assert!(matches!(encode_categorical(&["Q"], &levels), Err(Error::Data(_))));
    }

    #[test]
    fn loads_with_ignored_and_categorical_columns() {
        let dir = tmp();
        write(&dir, "shells.csv", "a,M,1.5,small\nb,I,2.5,big\n\nc,F,0.5,small\n");
        let desc = DatasetDescriptor::from_toml(SHELLS).unwrap();
        let Loaded::All(d) = load(&desc, &dir).unwrap() else {
            panic!()
        };
        assert_eq!(d.features, vec![vec![0.0, 1.5], vec![1.0, 2.5], vec![0.5, 0.5]]);
        assert_eq!(d.labels, vec![0, 1, 0]);
        assert_eq!(d.column_names, vec!["col1", "col2"]);
        assert_eq!(d.category_counts(), vec![2, 1]);
        assert_eq!(d.split, Split::All);
        // deterministic
        let Loaded::All(again) = load(&desc, &dir).unwrap() else {
            panic!()
        };
        assert_eq!(d, again);
    }

    #[test]
    fn malformed_rows_name_the_line() {
        let dir = tmp();
        write(&dir, "shells.csv", "a,M,1.5,small\nb,I,oops,big\n");
        let desc = DatasetDescriptor::from_toml(SHELLS).unwrap();
        let msg = load(&desc, &dir).unwrap_err().to_string();
        assert!(msg.contains("line 2") && msg.contains("oops"), "{msg}");

        write(&dir, "shells.csv", "a,M,1.5,small\nb,I,2.5\n");
        let msg = load(&desc, &dir).unwrap_err().to_string();
        assert!(msg.contains("line 2") && msg.contains("expected 4 fields"), "{msg}");

        write(&dir, "shells.csv", "a,X,1.5,small\n");
        let msg = load(&desc, &dir).unwrap_err().to_string();
        assert!(msg.contains("unknown level 'X'"), "{msg}");

        write(&dir, "shells.csv", "a,M,1.5,huge\n");
        let msg = load(&desc, &dir).unwrap_err().to_string();
        assert!(msg.contains("unknown category 'huge'"), "{msg}");
    }

    #[test]
    fn missing_file_names_the_path() {
        let dir = tmp();
        let desc = DatasetDescriptor::from_toml(SHELLS).unwrap();
        let err = load(&desc, &dir).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(err.to_string().contains("shells.csv"));
    }

    #[test]
    fn separate_split_with_named_label() {
        let dir = tmp();
        write(&dir, "um/train.csv", "A,B,UNS\n0.1,0.2,lo\n0.3,0.4,hi\n");
        write(&dir, "um/test.csv", "A,B,UNS\n0.5,0.6,hi\n");
        let desc = DatasetDescriptor::from_toml(
            r#"
name = "um"
header_lines = 1
label_column = "UNS"
category_labels = ["lo", "hi"]
[source]
split = "separate"
train = "um/train.csv"
test = "um/test.csv"
"#,
        )
        .unwrap();
        let Loaded::Holdout { train, test } = load(&desc, &dir).unwrap() else {
            panic!()
        };
        assert_eq!(train.num_rows(), 2);
        assert_eq!(test.features, vec![vec![0.5, 0.6]]);
        assert_eq!(train.column_names, vec!["A", "B"]);
        assert_eq!(test.split, Split::Test);
    }

    #[test]
    fn stride_split_partitions_rows() {
        let dir = tmp();
        let text: String = (0..10).map(|i| format!("{i},{}\n", i % 2)).collect();
        write(&dir, "s.csv", &text);
        let desc = DatasetDescriptor::from_toml(
            r#"
name = "s"
label_column = 1
category_labels = ["0", "1"]
[source]
split = "stride"
file = "s.csv"
stride = 3
offset = 1
count = 3
"#,
        )
        .unwrap();
        let Loaded::Holdout { train, test } = load(&desc, &dir).unwrap() else {
            panic!()
        };
        assert_eq!(test.features, vec![vec![1.0], vec![4.0], vec![7.0]]);
        assert_eq!(train.num_rows(), 7);
    }

    #[test]
    fn whitespace_delimiter() {
        let dir = tmp();
        write(&dir, "w.txt", "1.0   2.0  a\n  3.0 4.0 b\n");
        let desc = DatasetDescriptor::from_toml(
            r#"
name = "w"
delimiter = "whitespace"
label_column = 2
category_labels = ["a", "b"]
[source]
split = "all"
file = "w.txt"
"#,
        )
        .unwrap();
        let Loaded::All(d) = load(&desc, &dir).unwrap() else {
            panic!()
        };
        assert_eq!(d.features, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
    }

    #[test]
    fn checksum_is_enforced() {
        let dir = tmp();
        write(&dir, "shells.csv", "a,M,1.5,small\n");
        let mut desc = DatasetDescriptor::from_toml(SHELLS).unwrap();
        desc.checksums.insert("shells.csv".into(), "00".repeat(32));
        assert!(load(&desc, &dir).unwrap_err().to_string().contains("checksum"));
        let good = hex::encode(Sha256::digest(b"a,M,1.5,small\n"));
        desc.checksums.insert("shells.csv".into(), good);
        assert!(load(&desc, &dir).is_ok());
    }

    #[test]
    fn descriptor_validation() {
        let bad = SHELLS.replace("ignore_columns = [0]", "ignore_columns = [3]");
        assert!(DatasetDescriptor::from_toml(&bad).is_err());
        let dup = SHELLS.replace(r#"["small", "big"]"#, r#"["small", "small"]"#);
        assert!(DatasetDescriptor::from_toml(&dup).is_err());
        let empty = SHELLS.replace(r#"["small", "big"]"#, "[]");
        assert!(DatasetDescriptor::from_toml(&empty).is_err());
    }

    #[test]
    fn builtins_parse_and_resolve() {
        let names: Vec<_> = builtin_names().collect();
        assert_eq!(names.len(), 6);
        for n in names {
            let d = DatasetDescriptor::resolve(n).unwrap();
            assert_eq!(d.name, n);
        }
        assert!(DatasetDescriptor::resolve("no-such-set").is_err());
        let ab = builtin_descriptor("abalone").unwrap();
        assert_eq!(ab.category_labels.len(), 29);
        assert_eq!(ab.defaults.bands, 160);
        assert!(builtin_descriptor("user-modelling").unwrap().source.has_separate_test());
    }

    #[test]
    fn from_rows_checks_shape() {
        assert!(Dataset::from_rows("x", vec![vec![1.0]], vec![0, 1], vec!["a".into(), "b".into()]).is_err());
        assert!(Dataset::from_rows("x", vec![vec![1.0]], vec![2], vec!["a".into(), "b".into()]).is_err());
        assert!(Dataset::from_rows("x", vec![vec![1.0], vec![]], vec![0, 0], vec!["a".into()]).is_err());
    }
}
