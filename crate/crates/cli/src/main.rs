//! `resamp`: estimate resampling variances for a dataset, or run the seeded
//! Monte Carlo studies (rate, normality, bootstrap contrast) from a config
//! file and write machine-readable CSV.

mod config;
mod output;

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use resamp_core::{
    bootstrap_variance, compare_boot, derive_seed, infinitesimal_jackknife_variance,
    jackknife_variance, normality_study, rate_study, Contrast, EmpiricalSample, RateStudyConfig,
    STREAM_BOOT, STREAM_DRAW,
};

use config::{parse_config, CommandKind, RunConfig};

#[derive(Parser)]
#[command(
    name = "resamp",
    version,
    about = "Resampling variance estimators (jackknife, infinitesimal jackknife, bootstrap) and Monte Carlo studies of their agreement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute T_n, v_jack, v_ijack (and optionally v_boot) for one dataset
    Estimate(RunArgs),
    /// Fit the log-log rate of |v_jack − partner| across a grid of n
    Rate(RunArgs),
    /// Summarize the sampling distribution of v_jack and v_ijack at fixed n
    Normality(RunArgs),
    /// Run both rate contrasts on paired draws and write both CSVs
    CompareBoot(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the [command] key=value config file
    #[arg(long)]
    config: PathBuf,
    /// Override the config's master_seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config's output path
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::Estimate(a) => (CommandKind::Estimate, a),
        Command::Rate(a) => (CommandKind::Rate, a),
        Command::Normality(a) => (CommandKind::Normality, a),
        Command::CompareBoot(a) => (CommandKind::CompareBoot, a),
    };
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading config {}", args.config.display()))?;
    let mut cfg = parse_config(&text, kind)
        .with_context(|| format!("parsing config {}", args.config.display()))?;
    if let Some(seed) = args.seed {
        cfg.master_seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.output = Some(out.clone());
    }
    match kind {
        CommandKind::Estimate => run_estimate(&cfg),
        CommandKind::Rate => run_rate(&cfg),
        CommandKind::Normality => run_normality(&cfg),
        CommandKind::CompareBoot => run_compare_boot(&cfg),
    }
}

fn run_estimate(cfg: &RunConfig) -> Result<()> {
    let sample = match (&cfg.input, &cfg.model) {
        (Some(path), None) => EmpiricalSample::from_file(path)
            .with_context(|| format!("reading dataset {}", path.display()))?,
        (None, Some(model)) => {
            let n = cfg.n.expect("validated by parse_config");
            model.draw(n, derive_seed(cfg.master_seed, n as u64, 0, STREAM_DRAW))?
        }
        _ => unreachable!("parse_config enforces exactly one data source"),
    };
    let t_n = cfg.functional.eval(&sample)?;
    let v_jack = jackknife_variance(&cfg.functional, &sample)?.value;
    let v_ijack = infinitesimal_jackknife_variance(&cfg.functional, &sample)?.value;
    let v_boot = cfg
        .bootstrap_b
        .map(|b| {
            let seed = derive_seed(cfg.master_seed, sample.n() as u64, 0, STREAM_BOOT);
            bootstrap_variance(&cfg.functional, &sample, b, seed).map(|e| e.value)
        })
        .transpose()?;
    let record = output::estimate_record(sample.n(), t_n, v_jack, v_ijack, v_boot);
    print!("{record}");
    if let Some(path) = &cfg.output {
        let contents = format!("{}{record}", output::provenance_header(cfg));
        fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn study_config(cfg: &RunConfig) -> RateStudyConfig {
    RateStudyConfig {
        spec: cfg.functional.clone(),
        model: cfg.model.clone().expect("validated by parse_config"),
        n_grid: cfg.n_grid.clone().expect("validated by parse_config"),
        replicates: cfg.replicates,
        master_seed: cfg.master_seed,
        summary: cfg.summary,
        contrast: cfg.contrast,
        bootstrap_b: cfg.bootstrap_b,
    }
}

fn output_path(cfg: &RunConfig) -> Result<&PathBuf> {
    match &cfg.output {
        Some(p) => Ok(p),
        None => bail!("no output path: set 'output' in the config or pass --out"),
    }
}

fn run_rate(cfg: &RunConfig) -> Result<()> {
    let study = rate_study(&study_config(cfg))?;
    let path = output_path(cfg)?;
    fs::write(path, output::rate_csv(cfg, &study, cfg.contrast.label()))
        .with_context(|| format!("writing {}", path.display()))?;
    print!("{}", output::fit_record(&study, cfg.contrast.label()));
    Ok(())
}

fn run_normality(cfg: &RunConfig) -> Result<()> {
    let report = normality_study(
        &cfg.functional,
        cfg.model.as_ref().expect("validated by parse_config"),
        cfg.n.expect("validated by parse_config"),
        cfg.replicates,
        cfg.master_seed,
    )?;
    let path = output_path(cfg)?;
    fs::write(path, output::normality_csv(cfg, &report))
        .with_context(|| format!("writing {}", path.display()))?;
    for (label, s) in [
        ("jackknife", &report.jackknife),
        ("infinitesimal_jackknife", &report.infinitesimal_jackknife),
    ] {
        println!(
            "{label}: mean = {} var = {} skew = {} exkurt = {} ks = {} degenerate = {}",
            output::fmt(s.mean),
            output::fmt(s.variance),
            output::fmt(s.skewness),
            output::fmt(s.excess_kurtosis),
            output::fmt(s.ks_distance),
            s.degenerate
        );
    }
    Ok(())
}

fn run_compare_boot(cfg: &RunConfig) -> Result<()> {
    let (ijack, boot) = compare_boot(&study_config(cfg))?;
    let base = output_path(cfg)?;
    for (study, contrast) in [(&ijack, Contrast::JackVsIjack), (&boot, Contrast::JackVsBoot)] {
        // Each half is written as a full rate CSV whose header echoes the
        // contrast it carries.
        let mut half_cfg = RunConfig { ..clone_for_header(cfg) };
        half_cfg.contrast = contrast;
        half_cfg.command = CommandKind::Rate;
        let path = output::suffixed_path(base, contrast.label());
        fs::write(&path, output::rate_csv(&half_cfg, study, contrast.label()))
            .with_context(|| format!("writing {}", path.display()))?;
        print!("{}", output::fit_record(study, contrast.label()));
    }
    Ok(())
}

fn clone_for_header(cfg: &RunConfig) -> RunConfig {
    RunConfig {
        command: cfg.command,
        functional: cfg.functional.clone(),
        model: cfg.model.clone(),
        input: cfg.input.clone(),
        n: cfg.n,
        n_grid: cfg.n_grid.clone(),
        replicates: cfg.replicates,
        bootstrap_b: cfg.bootstrap_b,
        master_seed: cfg.master_seed,
        summary: cfg.summary,
        contrast: cfg.contrast,
        output: cfg.output.clone(),
    }
}
