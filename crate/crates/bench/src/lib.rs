//! Deterministic synthetic workloads for the benchmarks.

use bandgrid_core::Dataset;

/// `rows` rows of `vars` smooth pseudo-random features in `[0, 1]`, with
/// `categories` labels that depend on the first two features.
pub fn synthetic(rows: usize, vars: usize, categories: usize) -> Dataset {
    let mut features = Vec::with_capacity(rows);
    let mut labels = Vec::with_capacity(rows);
    for r in 0..rows {
        let row: Vec<f64> = (0..vars)
            .map(|v| {
                let t = (r * 31 + v * 17) as f64;
                0.5 + 0.5 * (t * 0.618_033_988_7).sin()
            })
            .collect();
        let key = row[0] + row.get(1).copied().unwrap_or(0.0);
        labels.push(((key / 2.0) * categories as f64).floor().min(categories as f64 - 1.0) as usize);
        features.push(row);
    }
    let names = (1..=categories).map(|c| c.to_string()).collect();
    Dataset::from_rows("synthetic", features, labels, names).expect("synthetic rows are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let d = synthetic(100, 5, 3);
        assert_eq!(d.num_rows(), 100);
        assert_eq!(d.num_features(), 5);
        assert!(d.labels.iter().all(|&l| l < 3));
        assert_eq!(d, synthetic(100, 5, 3));
    }
}
