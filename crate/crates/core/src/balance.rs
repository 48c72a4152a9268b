//! Increment policies: the cell increment `cw` and per-category output
//! increments `ow` used by single-pass training.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// `ow[oc] = 1 / total_rows` for every category ("no scaling").
    RowUniform,
    /// `ow[oc] = 1 / count[oc]`.
    PerCategory,
    /// `ow[oc] = 1 / (count[oc] + adjustment[oc])`.
    PerCategoryAdjusted,
    /// Caller-supplied `ow`.
    Manual,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::RowUniform => "row_uniform",
            Strategy::PerCategory => "per_category",
            Strategy::PerCategoryAdjusted => "per_category_adjusted",
            Strategy::Manual => "manual",
        })
    }
}

/// A policy request, before it is resolved against category counts.
///
/// This is the form carried by dataset descriptors, saved models and CLI
/// flags. The adjusted strategy accepts either signed adjustments or the
/// final denominators; denominators are turned into adjustments once the
/// counts are known.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum PolicySpec {
    RowUniform,
    #[default]
    PerCategory,
    PerCategoryAdjusted {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        adjustments: Option<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        denominators: Option<Vec<u64>>,
    },
    Manual {
        ow: Vec<f64>,
    },
}

impl PolicySpec {
    pub fn strategy(&self) -> Strategy {
        match self {
            PolicySpec::RowUniform => Strategy::RowUniform,
            PolicySpec::PerCategory => Strategy::PerCategory,
            PolicySpec::PerCategoryAdjusted { .. } => Strategy::PerCategoryAdjusted,
            PolicySpec::Manual { .. } => Strategy::Manual,
        }
    }

    /// Resolve against the label counts of a training set.
    pub fn resolve(&self, category_counts: &[usize]) -> Result<IncrementPolicy> {
        let total: usize = category_counts.iter().sum();
        match self {
            PolicySpec::RowUniform => make_policy(category_counts, total, Strategy::RowUniform, None, None),
            PolicySpec::PerCategory => make_policy(category_counts, total, Strategy::PerCategory, None, None),
            PolicySpec::PerCategoryAdjusted {
                adjustments,
                denominators,
            } => {
                let adj = match (adjustments, denominators) {
                    (Some(a), None) => a.clone(),
                    (None, Some(d)) => {
                        if d.len() != category_counts.len() {
                            return Err(Error::config(format!(
                                "{} denominators for {} categories",
                                d.len(),
                                category_counts.len()
                            )));
                        }
                        d.iter()
                            .zip(category_counts)
                            .map(|(&den, &count)| den as i64 - count as i64)
                            .collect()
                    }
                    _ => {
                        return Err(Error::config(
                            "per_category_adjusted needs exactly one of adjustments or denominators",
                        ))
                    }
                };
                make_policy(category_counts, total, Strategy::PerCategoryAdjusted, Some(&adj), None)
            }
            PolicySpec::Manual { ow } => make_policy(category_counts, total, Strategy::Manual, None, Some(ow)),
        }
    }
}

/// Resolved increments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncrementPolicy {
    pub strategy: Strategy,
    pub cw: f64,
    pub ow: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub adjustments: Vec<i64>,
}

impl IncrementPolicy {
    pub fn summary(&self) -> String {
        let ow: Vec<String> = self.ow.iter().map(|w| format!("{w:.6}")).collect();
        format!("{} cw={:.6} ow=[{}]", self.strategy, self.cw, ow.join(", "))
    }
}

/// Build the increments for `strategy`.
///
/// `cw` is always `1 / total_rows`. `adjustments` is required for
/// [`Strategy::PerCategoryAdjusted`] and `manual_ow` for
/// [`Strategy::Manual`].
pub fn make_policy(
    category_counts: &[usize],
    total_rows: usize,
    strategy: Strategy,
    adjustments: Option<&[i64]>,
    manual_ow: Option<&[f64]>,
) -> Result<IncrementPolicy> {
    if category_counts.is_empty() {
        return Err(Error::config("no categories"));
    }
    if total_rows == 0 {
        return Err(Error::config("cannot build a policy for zero rows"));
    }
    let sum: usize = category_counts.iter().sum();
    if sum != total_rows {
        return Err(Error::config(format!(
            "category counts sum to {sum}, not the {total_rows} rows"
        )));
    }
    let cw = 1.0 / total_rows as f64;
    let require_counts = || -> Result<()> {
        if let Some(i) = category_counts.iter().position(|&c| c == 0) {
            return Err(Error::config(format!(
                "category {i} has no rows; {strategy} needs every category represented"
            )));
        }
        Ok(())
    };

    let (ow, adjustments) = match strategy {
        Strategy::RowUniform => (vec![cw; category_counts.len()], Vec::new()),
        Strategy::PerCategory => {
            require_counts()?;
            (category_counts.iter().map(|&c| 1.0 / c as f64).collect(), Vec::new())
        }
        Strategy::PerCategoryAdjusted => {
            require_counts()?;
            let adj = adjustments.ok_or_else(|| Error::config("per_category_adjusted needs adjustments"))?;
            if adj.len() != category_counts.len() {
                return Err(Error::config(format!(
                    "{} adjustments for {} categories",
                    adj.len(),
                    category_counts.len()
                )));
            }
            let mut ow = Vec::with_capacity(adj.len());
            for (i, (&count, &a)) in category_counts.iter().zip(adj).enumerate() {
                let den = count as i64 + a;
                if den <= 0 {
                    return Err(Error::config(format!(
                        "adjustment {a} drives category {i}'s denominator to {den}"
                    )));
                }
                ow.push(1.0 / den as f64);
            }
            (ow, adj.to_vec())
        }
        Strategy::Manual => {
            let ow = manual_ow.ok_or_else(|| Error::config("manual policy needs ow values"))?;
            if ow.len() != category_counts.len() {
                return Err(Error::config(format!(
                    "{} ow values for {} categories",
                    ow.len(),
                    category_counts.len()
                )));
            }
            if let Some(w) = ow.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
                return Err(Error::config(format!("ow values must be positive, got {w}")));
            }
            (ow.to_vec(), Vec::new())
        }
    };
    Ok(IncrementPolicy {
        strategy,
        cw,
        ow,
        adjustments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const WINE: [usize; 3] = [59, 71, 48];

    #[test]
    fn wine_per_category() {
        let p = make_policy(&WINE, 178, Strategy::PerCategory, None, None).unwrap();
        assert_eq!(p.cw, 1.0 / 178.0);
        assert_eq!(p.ow, vec![1.0 / 59.0, 1.0 / 71.0, 1.0 / 48.0]);
    }

    #[test]
    fn row_uniform_is_flat() {
        let p = make_policy(&WINE, 178, Strategy::RowUniform, None, None).unwrap();
        assert!(p.ow.iter().all(|&w| w == 1.0 / 178.0));
    }

    #[test]
    fn adjusted_by_denominators() {
        // training counts 24, 83, 88, 63 adjusted by +10, -10, -10, -10
        let counts = [24, 83, 88, 63];
        let spec = PolicySpec::PerCategoryAdjusted {
            adjustments: None,
            denominators: Some(vec![34, 73, 78, 53]),
        };
        let p = spec.resolve(&counts).unwrap();
        assert_eq!(p.adjustments, vec![10, -10, -10, -10]);
        assert_eq!(p.ow, vec![1.0 / 34.0, 1.0 / 73.0, 1.0 / 78.0, 1.0 / 53.0]);
        assert_eq!(p.strategy, Strategy::PerCategoryAdjusted);
    }

    #[test]
    fn adjustment_cannot_zero_a_denominator() {
        let err = make_policy(&[5, 5], 10, Strategy::PerCategoryAdjusted, Some(&[-5, 0]), None).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(make_policy(&[5, 5], 10, Strategy::PerCategoryAdjusted, Some(&[-4, 0]), None).is_ok());
    }

    #[test]
    fn manual_is_taken_verbatim() {
        let ow = [1.0 / 71.0, 1.0 / 48.0, 1.0 / 59.0];
        let p = PolicySpec::Manual { ow: ow.to_vec() }.resolve(&WINE).unwrap();
        assert_eq!(p.ow, ow.to_vec());
        assert_eq!(p.cw, 1.0 / 178.0);
        assert!(PolicySpec::Manual { ow: vec![0.1] }.resolve(&WINE).is_err());
        assert!(PolicySpec::Manual {
            ow: vec![0.1, 0.0, 0.1]
        }
        .resolve(&WINE)
        .is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(make_policy(&[2, 3], 6, Strategy::RowUniform, None, None).is_err());
        assert!(make_policy(&[], 0, Strategy::RowUniform, None, None).is_err());
        // an absent category is fine when every category shares one value
        assert!(make_policy(&[3, 0, 2], 5, Strategy::RowUniform, None, None).is_ok());
        assert!(make_policy(&[3, 0, 2], 5, Strategy::PerCategory, None, None).is_err());
        let both = PolicySpec::PerCategoryAdjusted {
            adjustments: Some(vec![0, 0]),
            denominators: Some(vec![1, 1]),
        };
        assert!(both.resolve(&[1, 1]).is_err());
    }

    #[test]
    fn spec_round_trips_through_toml() {
        let spec = PolicySpec::PerCategoryAdjusted {
            adjustments: None,
            denominators: Some(vec![34, 73, 78, 53]),
        };
        let text = toml::to_string(&spec).unwrap();
        assert!(text.contains("strategy = \"per_category_adjusted\""), "{text}");
        assert_eq!(toml::from_str::<PolicySpec>(&text).unwrap(), spec);
    }
}
