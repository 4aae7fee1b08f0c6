use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use seqopt::fidelity::{write_study, HISTOGRAM_BINS, STUDY_ALGORITHMS, STUDY_SHOTS};
use seqopt::{gate_fidelity_study, histograms, preset, run_experiment, summarize, write_artifacts, ExperimentConfig, PRESETS};
use seqopt_core::ShotMode;

#[derive(Parser)]
#[command(name = "seqopt", version, about = "Sequential single-gate VQC optimizers: experiments and summaries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a multi-trial experiment from a JSON config or a bundled preset.
    Run(RunArgs),
    /// Exact-vs-shot gate fidelity for one gate on X + Y + Z.
    FidelityStudy(FidelityArgs),
    /// Summarize one or more traces.csv files.
    Summarize(SummarizeArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (JSON).
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Bundled configuration; one of the names printed by `--preset list`.
    #[arg(long)]
    preset: Option<String>,
    /// Base seed; trial k uses seed + k.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    /// `exact` or shots per Pauli term.
    #[arg(long)]
    shots: Option<ShotMode>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

#[derive(Args)]
struct FidelityArgs {
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Shot counts to compare against the exact oracle.
    #[arg(long, value_delimiter = ',', default_values_t = STUDY_SHOTS.map(ShotMode::Shots))]
    shots: Vec<ShotMode>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "out/fidelity")]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

#[derive(Args)]
struct SummarizeArgs {
    #[arg(required = true)]
    csv: Vec<PathBuf>,
    /// Ground energy for the relative error ΔE/E_g.
    #[arg(long, allow_hyphen_values = true)]
    reference: Option<f64>,
    /// Also write the table as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::FidelityStudy(args) => fidelity(args),
        Command::Summarize(args) => summary(args),
    }
}

fn run(args: RunArgs) -> Result<()> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), None) => ExperimentConfig::load(path)?,
        (None, Some(name)) if name == "list" => {
            for p in PRESETS {
                println!("{p}");
            }
            return Ok(());
        }
        (None, Some(name)) => preset(name)?,
        _ => bail!("pass either --config <path> or --preset <name>"),
    };
    if let Some(seed) = args.seed {
        cfg.base_seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if let Some(shots) = args.shots {
        cfg.shots = shots;
    }
    if let Some(out) = args.out {
        cfg.output = out;
    }
    cfg.validate()?;

    let result = run_experiment(&cfg, args.parallel)?;
    write_artifacts(&result, &cfg.output).with_context(|| format!("writing {}", cfg.output.display()))?;

    let s = &result.summary;
    println!(
        "{} | L = {} | {} trials | shots {} | limit {} evaluations",
        cfg.problem, cfg.layers, cfg.trials, cfg.shots, s.evaluation_limit
    );
    if let Some(e) = s.reference_ground_energy {
        println!("reference ground energy {e:.4}");
    }
    println!("{:<28} {:>12} {:>10} {:>12}", "algorithm", format!("mean {}", short(&s.metric)), "std", "dE/E_g");
    for a in &s.algorithms {
        let rel = a.relative_error.map(|r| format!("{r:.3e}")).unwrap_or_else(|| "-".into());
        println!("{:<28} {:>12.5} {:>10.5} {:>12}", a.algorithm.to_string(), a.final_mean, a.final_std, rel);
    }
    println!("wrote {}", cfg.output.display());
    Ok(())
}

fn short(metric: &str) -> &str {
    if metric == "trace_distance" {
        "T"
    } else {
        "E"
    }
}

fn fidelity(args: FidelityArgs) -> Result<()> {
    let records = gate_fidelity_study(&STUDY_ALGORITHMS, &args.shots, args.trials, args.seed, args.parallel)?;
    let hists = histograms(&records, HISTOGRAM_BINS);
    write_study(&records, &hists, &args.out)?;
    println!("{:<12} {:>8} {:>14} {:>14}", "algorithm", "shots", "median F", "mean F");
    for h in &hists {
        println!("{:<12} {:>8} {:>14.8} {:>14.8}", h.algorithm.to_string(), h.shots.to_string(), h.median, h.mean);
    }
    println!("wrote {} histograms to {}", hists.len(), args.out.display());
    Ok(())
}

fn summary(args: SummarizeArgs) -> Result<()> {
    let rows = summarize(&args.csv, args.reference)?;
    println!("{:<22} {:>8} {:>7} {:>12} {:>10} {:>12}", "algorithm", "param", "trials", "final mean", "std", "dE/E_g");
    for r in &rows {
        let param = r.hyperparam.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
        let rel = r.relative_error.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "-".into());
        println!(
            "{:<22} {:>8} {:>7} {:>12.5} {:>10.5} {:>12}",
            r.algorithm, param, r.trials, r.final_mean, r.final_std, rel
        );
        let deciles: Vec<String> = r.decile_means.iter().map(|x| format!("{x:.4}")).collect();
        println!("{:<22} deciles: {}", "", deciles.join(" "));
    }
    if let Some(path) = args.json {
        seqopt::experiment::write_json(&path, &rows)?;
    }
    Ok(())
}
