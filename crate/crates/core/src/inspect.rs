//! Per-variable weight dumps in the layout of a band/output weight table.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Band dump of one variable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariableDump {
    /// 1-based.
    pub variable: usize,
    pub name: String,
    pub boundaries: Vec<f64>,
    pub cells: Vec<CellDump>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellDump {
    /// 1-based.
    pub band: usize,
    pub scale_weight: f64,
    pub outputs: Vec<f64>,
}

/// Collect dumps for the selected variables (1-based), or all of them.
pub fn dump(grid: &Grid, names: &[String], only: Option<usize>) -> Result<Vec<VariableDump>> {
    if let Some(v) = only {
        if v == 0 || v > grid.num_variables() {
            return Err(Error::config(format!(
                "variable {v} out of range 1..={}",
                grid.num_variables()
            )));
        }
    }
    Ok(grid
        .band_rows()
        .iter()
        .enumerate()
        .filter(|(i, _)| only.map_or(true, |v| v == i + 1))
        .map(|(i, row)| VariableDump {
            variable: i + 1,
            name: names.get(i).cloned().unwrap_or_else(|| format!("x{i}")),
            boundaries: row.boundaries().to_vec(),
            cells: row
                .cells()
                .iter()
                .enumerate()
                .map(|(b, c)| CellDump {
                    band: b + 1,
                    scale_weight: c.scale_weight(),
                    outputs: c.output_weights().to_vec(),
                })
                .collect(),
        })
        .collect())
}

/// Resolve a variable given as a 1-based index or a column name.
pub fn variable_index(selector: &str, names: &[String]) -> Result<usize> {
    if let Ok(i) = selector.parse::<usize>() {
        return Ok(i);
    }
    names
        .iter()
        .position(|n| n == selector)
        .map(|i| i + 1)
        .ok_or_else(|| Error::config(format!("no variable named '{selector}'")))
}

/// `decimals` places, trailing zeros dropped.
pub fn format_weight(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".to_string()
    } else {
        t.to_string()
    }
}

pub fn render_text(dumps: &[VariableDump], num_categories: usize, decimals: usize) -> String {
    let mut s = String::new();
    for (k, d) in dumps.iter().enumerate() {
        if k > 0 {
            s.push('\n');
        }
        let _ = write!(s, "Variable {}:\t\t", d.variable);
        for c in 1..=num_categories {
            let _ = write!(s, "\tCat {c}");
        }
        s.push('\n');
        for cell in &d.cells {
            let _ = write!(
                s,
                "Weight (B{}):\t{}>\tOutputs:",
                cell.band,
                format_weight(cell.scale_weight, decimals)
            );
            for o in &cell.outputs {
                let _ = write!(s, "\t{},", format_weight(*o, decimals));
            }
            s.push('\n');
        }
    }
    s
}

pub fn render_json(dataset: &str, categories: &[String], dumps: &[VariableDump]) -> Result<String> {
    #[derive(Serialize)]
    struct Doc<'a> {
        dataset: &'a str,
        categories: &'a [String],
        variables: &'a [VariableDump],
    }
    serde_json::to_string_pretty(&Doc {
        dataset,
        categories,
        variables: dumps,
    })
    .map_err(|source| Error::Json {
        context: "serialising weight dump".into(),
        source,
    })
}
