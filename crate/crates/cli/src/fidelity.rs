//! Single-gate robustness study: optimize one gate on `X + Y + Z` from the
//! same start with the exact oracle and with a shot oracle, and compare the
//! two resulting unitaries.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use seqopt_core::optim::{gate_step, StepKind};
use seqopt_core::trial::stream_rng;
use seqopt_core::{AnsatzCircuit, Algorithm, CostOracle, EvalBudget, Mat2, Observable, PauliSum, ShotMode};

use crate::error::{HarnessError, Result};
use crate::experiment::{csv_io, write_json};

pub const STUDY_ALGORITHMS: [Algorithm; 3] = [Algorithm::Rotosolve, Algorithm::Fraxis, Algorithm::Fqs];
pub const STUDY_SHOTS: [u64; 3] = [1024, 4096, 8192];
pub const HISTOGRAM_BINS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityRecord {
    pub algorithm: Algorithm,
    pub shots: ShotMode,
    pub trial: u64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub algorithm: Algorithm,
    pub shots: ShotMode,
    pub median: f64,
    pub mean: f64,
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
}

/// `|Tr(A† B)|² / 4`, phase-insensitive.
pub fn gate_fidelity(a: &Mat2, b: &Mat2) -> f64 {
    ((a.adjoint() * *b).trace().norm_sqr() / 4.0).min(1.0)
}

fn pauli_sum_xyz() -> Observable {
    "1.0*X + 1.0*Y + 1.0*Z"
        .parse::<PauliSum>()
        .expect("literal Pauli sum")
        .into()
}

fn step_kind(alg: Algorithm) -> Result<StepKind> {
    match alg {
        Algorithm::Rotosolve => Ok(StepKind::Rotosolve),
        Algorithm::RotosolveHaar => Ok(StepKind::RotosolveHaar),
        Algorithm::Fraxis => Ok(StepKind::Fraxis),
        Algorithm::Fqs => Ok(StepKind::Fqs),
        other => Err(HarnessError::config(
            "algorithms",
            format!("{other} is not a single-gate closed-form optimizer"),
        )),
    }
}

fn optimized_gate(obs: &Observable, start: &AnsatzCircuit, kind: StepKind, mode: ShotMode, seed: u64, stream: u64) -> Result<Mat2> {
    let mut c = start.clone();
    let mut oracle = CostOracle::new(obs, mode, EvalBudget::unlimited(), stream_rng(seed, stream));
    gate_step(kind, &mut c, 0, &mut oracle, None)?;
    Ok(c.slot(0)?.matrix())
}

/// Runs `trials` trials for every (algorithm, shot count) pair; trial `k`
/// uses seed `base_seed + k`.
pub fn gate_fidelity_study(
    algorithms: &[Algorithm],
    shots: &[ShotMode],
    trials: u64,
    base_seed: u64,
    parallel: usize,
) -> Result<Vec<FidelityRecord>> {
    if trials == 0 {
        return Err(HarnessError::config("trials", "must be at least 1"));
    }
    let kinds = algorithms.iter().map(|&a| step_kind(a)).collect::<Result<Vec<_>>>()?;
    let obs = pauli_sum_xyz();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel.max(1))
        .build()
        .map_err(|e| HarnessError::config("parallel", e.to_string()))?;

    let jobs: Vec<(usize, u64)> = (0..algorithms.len())
        .flat_map(|a| (0..trials).map(move |k| (a, k)))
        .collect();
    let per_job: Vec<Vec<FidelityRecord>> = pool.install(|| {
        jobs.par_iter()
            .map(|&(a, k)| {
                let seed = base_seed + k;
                let alg = algorithms[a];
                let mut init = stream_rng(seed, 0);
                let start = AnsatzCircuit::new(1, 1, vec![alg.initial_gate(&mut init)])?;
                let exact = optimized_gate(&obs, &start, kinds[a], ShotMode::Exact, seed, 1)?;
                shots
                    .iter()
                    .enumerate()
                    .map(|(s, &mode)| {
                        let noisy = optimized_gate(&obs, &start, kinds[a], mode, seed, 2 + s as u64)?;
                        Ok(FidelityRecord {
                            algorithm: alg,
                            shots: mode,
                            trial: k,
                            fidelity: gate_fidelity(&exact, &noisy),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(per_job.into_iter().flatten().collect())
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// One histogram per (algorithm, shots) pair, all on the same bins spanning
/// the smallest observed fidelity (rounded down to 0.01) up to 1.
pub fn histograms(records: &[FidelityRecord], bins: usize) -> Vec<Histogram> {
    let lo = records
        .iter()
        .map(|r| r.fidelity)
        .fold(1.0_f64, f64::min);
    let lo = ((lo * 100.0).floor() / 100.0).min(0.99);
    let width = (1.0 - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|k| lo + k as f64 * width).collect();

    let mut keys: Vec<(Algorithm, ShotMode)> = Vec::new();
    for r in records {
        if !keys.contains(&(r.algorithm, r.shots)) {
            keys.push((r.algorithm, r.shots));
        }
    }
    keys.into_iter()
        .map(|(algorithm, shots)| {
            let vals: Vec<f64> = records
                .iter()
                .filter(|r| r.algorithm == algorithm && r.shots == shots)
                .map(|r| r.fidelity)
                .collect();
            let mut counts = vec![0u64; bins];
            for &f in &vals {
                let b = (((f - lo) / width) as usize).min(bins - 1);
                counts[b] += 1;
            }
            Histogram {
                algorithm,
                shots,
                median: median(&vals),
                mean: vals.iter().sum::<f64>() / vals.len() as f64,
                bin_edges: edges.clone(),
                counts,
            }
        })
        .collect()
}

/// Writes `fidelity_raw.csv`, `fidelity_histograms.csv` and `fidelity_summary.json`.
pub fn write_study(records: &[FidelityRecord], hists: &[Histogram], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(HarnessError::io(dir))?;

    let raw = dir.join("fidelity_raw.csv");
    let mut w = csv::Writer::from_path(&raw).map_err(|e| csv_io(&raw, e))?;
    w.write_record(["algorithm", "shots", "trial", "fidelity"]).map_err(|e| csv_io(&raw, e))?;
    for r in records {
        w.write_record([r.algorithm.to_string(), r.shots.to_string(), r.trial.to_string(), r.fidelity.to_string()])
            .map_err(|e| csv_io(&raw, e))?;
    }
    w.flush().map_err(HarnessError::io(&raw))?;

    let hist = dir.join("fidelity_histograms.csv");
    let mut w = csv::Writer::from_path(&hist).map_err(|e| csv_io(&hist, e))?;
    w.write_record(["algorithm", "shots", "bin_lo", "bin_hi", "count"]).map_err(|e| csv_io(&hist, e))?;
    for h in hists {
        for (k, c) in h.counts.iter().enumerate() {
            w.write_record([
                h.algorithm.to_string(),
                h.shots.to_string(),
                h.bin_edges[k].to_string(),
                h.bin_edges[k + 1].to_string(),
                c.to_string(),
            ])
            .map_err(|e| csv_io(&hist, e))?;
        }
    }
    w.flush().map_err(HarnessError::io(&hist))?;

    #[derive(Serialize)]
    struct Entry<'a> {
        algorithm: &'a Algorithm,
        shots: &'a ShotMode,
        median: f64,
        mean: f64,
    }
    let entries: Vec<Entry> = hists
        .iter()
        .map(|h| Entry {
            algorithm: &h.algorithm,
            shots: &h.shots,
            median: h.median,
            mean: h.mean,
        })
        .collect();
    write_json(&dir.join("fidelity_summary.json"), &entries)
}
