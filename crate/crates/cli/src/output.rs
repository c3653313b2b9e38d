//! Output rendering: `#`-prefixed provenance headers, CSV bodies, and the
//! structured text records printed to stdout. Every float is serialized with
//! 17 significant digits so values round-trip exactly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use resamp_core::{EstimatorSummary, NormalityReport, RateStudy};

use crate::config::{CommandKind, RunConfig};

/// 17-significant-digit serialization: enough to reproduce the f64 bit for bit.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Provenance header: tool version first (excluded from reproducibility
/// comparisons), then the full resolved configuration including defaults.
pub fn provenance_header(cfg: &RunConfig) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# resamp {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# command = {}", cfg.command.label());
    let _ = writeln!(out, "# functional = {}", cfg.functional.name());
    if let Some(model) = &cfg.model {
        let _ = writeln!(out, "# model = {}", model.name());
    }
    if let Some(input) = &cfg.input {
        let _ = writeln!(out, "# input = {}", input.display());
    }
    if let Some(n) = cfg.n {
        let _ = writeln!(out, "# n = {n}");
    }
    if let Some(grid) = &cfg.n_grid {
        let grid_text: Vec<String> = grid.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(out, "# n_grid = {}", grid_text.join(","));
    }
    match cfg.command {
        CommandKind::Estimate => {}
        _ => {
            let _ = writeln!(out, "# replicates = {}", cfg.replicates);
        }
    }
    if matches!(cfg.command, CommandKind::Rate | CommandKind::CompareBoot) {
        let _ = writeln!(out, "# summary = {}", cfg.summary.label());
    }
    if matches!(cfg.command, CommandKind::Rate) {
        let _ = writeln!(out, "# contrast = {}", cfg.contrast.label());
    }
    if let Some(b) = cfg.bootstrap_b {
        let _ = writeln!(out, "# bootstrap_B = {b}");
    }
    let _ = writeln!(out, "# master_seed = {}", cfg.master_seed);
    out
}

/// CSV body of a rate study plus the fit as trailing `#` record lines.
pub fn rate_csv(cfg: &RunConfig, study: &RateStudy, contrast_label: &str) -> String {
    let mut out = provenance_header(cfg);
    let _ = writeln!(out, "n,summary_abs_diff,replicates_used");
    for row in &study.rows {
        let _ = writeln!(out, "{},{},{}", row.n, fmt(row.summary_abs_diff), row.replicates_used);
    }
    let _ = writeln!(out, "# fit contrast = {contrast_label}");
    let _ = writeln!(out, "# fit slope = {}", fmt(study.fit.slope));
    let _ = writeln!(out, "# fit slope_stderr = {}", fmt(study.fit.slope_stderr));
    let _ = writeln!(out, "# fit intercept = {}", fmt(study.fit.intercept));
    let _ = writeln!(out, "# excluded_replicates = {}", study.excluded);
    out
}

/// The same fit, as the structured record printed to stdout.
pub fn fit_record(study: &RateStudy, contrast_label: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "contrast = {contrast_label}");
    let _ = writeln!(out, "slope = {}", fmt(study.fit.slope));
    let _ = writeln!(out, "slope_stderr = {}", fmt(study.fit.slope_stderr));
    let _ = writeln!(out, "intercept = {}", fmt(study.fit.intercept));
    let _ = writeln!(out, "excluded_replicates = {}", study.excluded);
    out
}

fn normality_row(label: &str, s: &EstimatorSummary) -> String {
    format!(
        "{label},{},{},{},{},{},{}\n",
        fmt(s.mean),
        fmt(s.variance),
        fmt(s.skewness),
        fmt(s.excess_kurtosis),
        fmt(s.ks_distance),
        s.degenerate
    )
}

/// CSV body of a normality study: one row per estimator.
pub fn normality_csv(cfg: &RunConfig, report: &NormalityReport) -> String {
    let mut out = provenance_header(cfg);
    out.push_str("estimator,mean,var,skew,exkurt,ks_distance,degenerate\n");
    out.push_str(&normality_row("jackknife", &report.jackknife));
    out.push_str(&normality_row(
        "infinitesimal_jackknife",
        &report.infinitesimal_jackknife,
    ));
    out
}

/// Structured record for `estimate`.
pub fn estimate_record(
    n: usize,
    t_n: f64,
    v_jack: f64,
    v_ijack: f64,
    v_boot: Option<f64>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {n}");
    let _ = writeln!(out, "T_n = {}", fmt(t_n));
    let _ = writeln!(out, "v_jack = {}", fmt(v_jack));
    let _ = writeln!(out, "v_ijack = {}", fmt(v_ijack));
    if let Some(vb) = v_boot {
        let _ = writeln!(out, "v_boot = {}", fmt(vb));
    }
    out
}

/// `contrast.csv` + `jack_vs_boot` -> `contrast_jack_vs_boot.csv`; used by
/// compare-boot to write its two studies next to each other.
pub fn suffixed_path(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}_{suffix}.{ext}"))
}
