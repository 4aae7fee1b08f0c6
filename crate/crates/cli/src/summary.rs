//! Step-interpolated mean curves and the trace-CSV summarizer.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const TRACE_HEADER: [&str; 5] = ["trial", "algorithm", "hyperparam", "evals_used", "cost"];

/// One row of the traces CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub trial: u64,
    pub algorithm: String,
    /// Empty for algorithms without a hyperparameter.
    pub hyperparam: Option<f64>,
    pub evals_used: u64,
    pub cost: f64,
}

/// Value of a step function at `x`: the last point with abscissa `≤ x`.
/// `points` must be sorted by abscissa and start at or before `x`.
pub fn step_value(points: &[(u64, f64)], x: u64) -> f64 {
    let idx = points.partition_point(|&(e, _)| e <= x);
    points[idx.saturating_sub(1)].1
}

/// `k · limit / (n − 1)` for `k = 0..n`.
pub fn uniform_grid(limit: u64, n: usize) -> Vec<u64> {
    let steps = (n.max(2) - 1) as u64;
    (0..=steps).map(|k| k * limit / steps).collect()
}

pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Pointwise mean and (population) standard deviation of step-interpolated
/// traces on `grid`.
pub fn mean_curve(traces: &[Vec<(u64, f64)>], grid: &[u64]) -> (Vec<f64>, Vec<f64>) {
    grid.iter()
        .map(|&x| {
            let vals: Vec<f64> = traces.iter().map(|t| step_value(t, x)).collect();
            mean_std(&vals)
        })
        .unzip()
}

/// `ΔE / E_g` with `ΔE = E_g − ⟨M⟩`.
pub fn relative_error(cost: f64, ground: f64) -> f64 {
    (ground - cost) / ground
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub hyperparam: Option<f64>,
    pub trials: usize,
    pub final_mean: f64,
    pub final_std: f64,
    /// Mean cost at 10 %, 20 %, …, 100 % of the largest evaluation count seen.
    pub decile_means: Vec<f64>,
    pub relative_error: Option<f64>,
}

pub fn read_traces(path: &Path) -> Result<Vec<TraceRow>> {
    let file = File::open(path).map_err(HarnessError::io(path))?;
    let mut rdr = csv::Reader::from_reader(file);
    let parse_err = |line: u64, reason: String| HarnessError::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let headers = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    if headers.iter().ne(TRACE_HEADER) {
        return Err(parse_err(
            1,
            format!("expected header {:?}, found {:?}", TRACE_HEADER.join(","), headers.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut rows = Vec::new();
    for rec in rdr.deserialize::<TraceRow>() {
        match rec {
            Ok(r) => rows.push(r),
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                return Err(parse_err(line, e.to_string()));
            }
        }
    }
    Ok(rows)
}

/// Summarizes one or more trace CSVs, grouping by (algorithm, hyperparameter).
/// Trials are keyed per file, so experiments may be mixed freely.
pub fn summarize(paths: &[PathBuf], reference: Option<f64>) -> Result<Vec<SummaryRow>> {
    type Key = (String, Option<u64>);
    let mut groups: BTreeMap<Key, BTreeMap<(usize, u64), Vec<(u64, f64)>>> = BTreeMap::new();
    let mut order: Vec<Key> = Vec::new();
    for (file_idx, path) in paths.iter().enumerate() {
        for row in read_traces(path)? {
            let key = (row.algorithm.clone(), row.hyperparam.map(f64::to_bits));
            if !groups.contains_key(&key) {
                order.push(key.clone());
            }
            groups
                .entry(key)
                .or_default()
                .entry((file_idx, row.trial))
                .or_default()
                .push((row.evals_used, row.cost));
        }
    }

    let mut out = Vec::new();
    for key in order {
        let trials: Vec<Vec<(u64, f64)>> = groups[&key]
            .values()
            .map(|t| {
                let mut t = t.clone();
                t.sort_by_key(|&(e, _)| e);
                t
            })
            .collect();
        let finals: Vec<f64> = trials.iter().map(|t| t.last().map(|p| p.1).unwrap_or(f64::NAN)).collect();
        let (final_mean, final_std) = mean_std(&finals);
        let budget = trials.iter().filter_map(|t| t.last().map(|p| p.0)).max().unwrap_or(0);
        let deciles: Vec<u64> = (1..=10).map(|k| k * budget / 10).collect();
        let (decile_means, _) = mean_curve(&trials, &deciles);
        out.push(SummaryRow {
            algorithm: key.0,
            hyperparam: key.1.map(f64::from_bits),
            trials: trials.len(),
            final_mean,
            final_std,
            decile_means,
            relative_error: reference.map(|g| relative_error(final_mean, g)),
        });
    }
    Ok(out)
}
