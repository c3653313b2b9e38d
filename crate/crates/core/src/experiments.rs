//! Monte Carlo studies of the estimators' asymptotic claims: equivalence
//! rates, the bootstrap contrast, and normality of the estimators themselves.
//!
//! Reproducibility contract: every replicate's generator seed is derived from
//! `(master_seed, n, replicate_index, stream)` by a fixed integer mix, so
//! results do not depend on scheduling order or the degree of parallelism.
//! Replicates run on the rayon pool and are aggregated in index order.

use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::estimators;
use crate::functionals::FunctionalSpec;
use crate::sampling::PopulationModel;

/// Stream tag for the replicate's data draw.
pub const STREAM_DRAW: u64 = 0;
/// Stream tag for the replicate's bootstrap resampling.
pub const STREAM_BOOT: u64 = 1;

/// Derives a generator seed from the experiment coordinates.
///
/// Each argument is folded in through the splitmix64 finalizer with a distinct
/// odd multiplier, so the map is a fixed function of the four coordinates —
/// replicates can be computed in any order, on any number of threads, and get
/// the same streams.
pub fn derive_seed(master_seed: u64, n: u64, replicate: u64, stream: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let mut h = mix(master_seed ^ 0x9e37_79b9_7f4a_7c15);
    h = mix(h ^ n.wrapping_mul(0xd1b5_4a32_d192_ed03));
    h = mix(h ^ replicate.wrapping_mul(0x8cb9_2ba7_2f3d_8dd7));
    h = mix(h ^ stream.wrapping_mul(0xda94_2042_e4dd_58b5));
    h
}

/// Per-n summary statistic of the replicate |difference| values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummaryStat {
    /// Robust default: O_p statements concern stochastic order, and the
    /// median ignores the heavy right tail of |difference|.
    Median,
    Mean,
    Q90,
}

impl SummaryStat {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "median" => Ok(Self::Median),
            "mean" => Ok(Self::Mean),
            "q90" => Ok(Self::Q90),
            other => Err(Error::InvalidParams(format!(
                "unknown summary '{other}' (expected median, mean, or q90)"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Median => "median",
            Self::Mean => "mean",
            Self::Q90 => "q90",
        }
    }

    fn summarize(&self, values: &mut Vec<f64>) -> f64 {
        let m = values.len();
        debug_assert!(m > 0);
        match self {
            Self::Mean => values.iter().sum::<f64>() / m as f64,
            Self::Median => {
                values.sort_unstable_by(f64::total_cmp);
                if m % 2 == 1 {
                    values[m / 2]
                } else {
                    0.5 * (values[m / 2 - 1] + values[m / 2])
                }
            }
            Self::Q90 => {
                values.sort_unstable_by(f64::total_cmp);
                // min{x : F_m(x) >= 0.9}, the same convention as the
                // empirical quantile.
                let k = ((0.9 * m as f64).ceil() as usize).clamp(1, m);
                values[k - 1]
            }
        }
    }
}

/// Which estimator pair a rate study contrasts against the jackknife.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contrast {
    JackVsIjack,
    JackVsBoot,
}

impl Contrast {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "jack_vs_ijack" => Ok(Self::JackVsIjack),
            "jack_vs_boot" => Ok(Self::JackVsBoot),
            other => Err(Error::InvalidParams(format!(
                "unknown contrast '{other}' (expected jack_vs_ijack or jack_vs_boot)"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::JackVsIjack => "jack_vs_ijack",
            Self::JackVsBoot => "jack_vs_boot",
        }
    }
}

/// Configuration of a rate study (and of `compare_boot`, which runs both
/// contrasts on the same draws).
#[derive(Debug, Clone)]
pub struct RateStudyConfig {
    pub spec: FunctionalSpec,
    pub model: PopulationModel,
    pub n_grid: Vec<usize>,
    pub replicates: usize,
    pub master_seed: u64,
    pub summary: SummaryStat,
    pub contrast: Contrast,
    /// Bootstrap resample count; required when any contrast involves v_boot.
    pub bootstrap_b: Option<usize>,
}

impl RateStudyConfig {
    fn validate(&self, needs_bootstrap: bool) -> Result<()> {
        if self.n_grid.is_empty() {
            return Err(Error::InvalidParams("n_grid must not be empty".into()));
        }
        if !self.n_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParams("n_grid must be strictly increasing".into()));
        }
        if let Some(&n) = self.n_grid.iter().find(|&&n| n < 4) {
            return Err(Error::InvalidParams(format!("every grid size must be >= 4, got {n}")));
        }
        if self.replicates < 20 {
            return Err(Error::InvalidParams(format!(
                "rate studies need at least 20 replicates, got {}",
                self.replicates
            )));
        }
        if needs_bootstrap {
            match self.bootstrap_b {
                None => {
                    return Err(Error::InvalidParams(
                        "bootstrap_B is required for the jack_vs_boot contrast".into(),
                    ))
                }
                Some(b) if b < 2 => return Err(Error::InvalidB { b }),
                Some(_) => {}
            }
        }
        Ok(())
    }
}

/// One grid point of a rate study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub n: usize,
    pub summary_abs_diff: f64,
    /// Replicates that produced a finite difference (all of them, for the
    /// built-in configurations).
    pub replicates_used: usize,
}

/// Least-squares fit of log |difference| against log n.
#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    /// (log n, log summary) pairs actually fitted.
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
}

/// Full result of a rate study: the per-n rows, the fit, and how many
/// replicates were excluded for producing non-finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct RateStudy {
    pub rows: Vec<RateRow>,
    pub fit: RateFit,
    pub excluded: usize,
}

/// Ordinary least squares of y on x with the textbook slope standard error
/// (0 when the residuals vanish, e.g. for two points).
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<RateFit> {
    let m = points.len();
    let distinct = {
        let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
        xs.sort_unstable_by(f64::total_cmp);
        xs.dedup();
        xs.len()
    };
    if distinct < 2 {
        return Err(Error::TooFewPoints);
    }
    let mf = m as f64;
    let x_bar = points.iter().map(|p| p.0).sum::<f64>() / mf;
    let y_bar = points.iter().map(|p| p.1).sum::<f64>() / mf;
    let sxx: f64 = points.iter().map(|p| (p.0 - x_bar) * (p.0 - x_bar)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - x_bar) * (p.1 - y_bar)).sum();
    let slope = sxy / sxx;
    let intercept = y_bar - slope * x_bar;
    let slope_stderr = if m > 2 {
        let ssr: f64 = points
            .iter()
            .map(|p| {
                let resid = p.1 - (intercept + slope * p.0);
                resid * resid
            })
            .sum();
        (ssr.max(0.0) / ((mf - 2.0) * sxx)).sqrt()
    } else {
        0.0
    };
    Ok(RateFit { points: points.to_vec(), slope, intercept, slope_stderr })
}

/// |v_jack − partner| for one replicate; `None` when the difference is not
/// finite (recorded by the caller as an exclusion).
fn replicate_diff(cfg: &RateStudyConfig, n: usize, r: u64) -> Result<Option<f64>> {
    let sample = cfg
        .model
        .draw(n, derive_seed(cfg.master_seed, n as u64, r, STREAM_DRAW))?;
    let v_jack = estimators::jackknife_variance(&cfg.spec, &sample)?.value;
    let partner = match cfg.contrast {
        Contrast::JackVsIjack => {
            estimators::infinitesimal_jackknife_variance(&cfg.spec, &sample)?.value
        }
        Contrast::JackVsBoot => {
            let b = cfg.bootstrap_b.expect("validated by caller");
            let seed = derive_seed(cfg.master_seed, n as u64, r, STREAM_BOOT);
            estimators::bootstrap_variance(&cfg.spec, &sample, b, seed)?.value
        }
    };
    let diff = (v_jack - partner).abs();
    Ok(diff.is_finite().then_some(diff))
}

fn summarize_rows(
    cfg: &RateStudyConfig,
    per_n_diffs: Vec<(usize, Vec<Option<f64>>)>,
) -> Result<RateStudy> {
    let mut rows = Vec::with_capacity(per_n_diffs.len());
    let mut excluded = 0;
    for (n, diffs) in per_n_diffs {
        let mut finite: Vec<f64> = diffs.iter().filter_map(|d| *d).collect();
        excluded += diffs.len() - finite.len();
        if finite.is_empty() {
            return Err(Error::NonFiniteResult);
        }
        let summary = cfg.summary.summarize(&mut finite);
        rows.push(RateRow { n, summary_abs_diff: summary, replicates_used: finite.len() });
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.summary_abs_diff.ln()))
        .collect();
    if points.iter().any(|p| !p.1.is_finite()) {
        return Err(Error::NonFiniteResult);
    }
    let fit = loglog_fit(&points)?;
    Ok(RateStudy { rows, fit, excluded })
}

/// Runs R seeded replicates at every n in the grid, summarizes the
/// |difference| of the configured estimator pair per n, and fits
/// log summary against log n. The fitted slope estimates the equivalence
/// exponent (≈ −h for jack_vs_ijack under the rate theory's hypotheses).
pub fn rate_study(cfg: &RateStudyConfig) -> Result<RateStudy> {
    cfg.validate(matches!(cfg.contrast, Contrast::JackVsBoot))?;
    let per_n = cfg
        .n_grid
        .iter()
        .map(|&n| {
            let diffs = (0..cfg.replicates as u64)
                .into_par_iter()
                .map(|r| replicate_diff(cfg, n, r))
                .collect::<Result<Vec<_>>>()?;
            Ok((n, diffs))
        })
        .collect::<Result<Vec<_>>>()?;
    summarize_rows(cfg, per_n)
}

/// Runs both contrasts on identical per-replicate draws (paired design) and
/// returns the `(jack_vs_ijack, jack_vs_boot)` studies.
///
/// The data sample of replicate (n, r) is drawn from the same derived seed as
/// in a standalone rate study, so the jack_vs_ijack half of the pair is
/// bit-identical to running that study alone.
pub fn compare_boot(cfg: &RateStudyConfig) -> Result<(RateStudy, RateStudy)> {
    cfg.validate(true)?;
    let b = cfg.bootstrap_b.expect("validated above");
    let mut per_n_ijack = Vec::with_capacity(cfg.n_grid.len());
    let mut per_n_boot = Vec::with_capacity(cfg.n_grid.len());
    for &n in &cfg.n_grid {
        let pairs = (0..cfg.replicates as u64)
            .into_par_iter()
            .map(|r| -> Result<(Option<f64>, Option<f64>)> {
                let sample = cfg
                    .model
                    .draw(n, derive_seed(cfg.master_seed, n as u64, r, STREAM_DRAW))?;
                let v_jack = estimators::jackknife_variance(&cfg.spec, &sample)?.value;
                let v_ijack =
                    estimators::infinitesimal_jackknife_variance(&cfg.spec, &sample)?.value;
                let boot_seed = derive_seed(cfg.master_seed, n as u64, r, STREAM_BOOT);
                let v_boot = estimators::bootstrap_variance(&cfg.spec, &sample, b, boot_seed)?.value;
                let di = (v_jack - v_ijack).abs();
                let db = (v_jack - v_boot).abs();
                Ok((di.is_finite().then_some(di), db.is_finite().then_some(db)))
            })
            .collect::<Result<Vec<_>>>()?;
        per_n_ijack.push((n, pairs.iter().map(|p| p.0).collect()));
        per_n_boot.push((n, pairs.iter().map(|p| p.1).collect()));
    }
    let mut cfg_ijack = cfg.clone();
    cfg_ijack.contrast = Contrast::JackVsIjack;
    let mut cfg_boot = cfg.clone();
    cfg_boot.contrast = Contrast::JackVsBoot;
    Ok((summarize_rows(&cfg_ijack, per_n_ijack)?, summarize_rows(&cfg_boot, per_n_boot)?))
}

/// Moment and distribution-shape summary of one estimator's replicate values.
///
/// The normal reference is fitted by moments (divisor-R variance); skewness,
/// excess kurtosis, and the Kolmogorov–Smirnov distance are NaN when the
/// values are degenerate (zero variance).
#[derive(Debug, Clone, Copy)]
pub struct EstimatorSummary {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub ks_distance: f64,
    pub degenerate: bool,
}

/// Normality summaries for v_jack and v_ijack over R replicates at fixed n.
#[derive(Debug, Clone)]
pub struct NormalityReport {
    pub n: usize,
    pub replicates: usize,
    pub jackknife: EstimatorSummary,
    pub infinitesimal_jackknife: EstimatorSummary,
}

fn summarize_estimator(values: &[f64]) -> EstimatorSummary {
    let r = values.len() as f64;
    let mean = values.iter().sum::<f64>() / r;
    let m2 = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / r;
    if m2 == 0.0 {
        return EstimatorSummary {
            mean,
            variance: 0.0,
            skewness: f64::NAN,
            excess_kurtosis: f64::NAN,
            ks_distance: f64::NAN,
            degenerate: true,
        };
    }
    let m3 = values.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / r;
    let m4 = values.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / r;
    let sd = m2.sqrt();
    let mut z: Vec<f64> = values.iter().map(|v| (v - mean) / sd).collect();
    z.sort_unstable_by(f64::total_cmp);
    let std_normal = Normal::new(0.0, 1.0).unwrap();
    let mut ks: f64 = 0.0;
    for (i, zi) in z.iter().enumerate() {
        let phi = std_normal.cdf(*zi);
        ks = ks.max(phi - i as f64 / r).max((i + 1) as f64 / r - phi);
    }
    EstimatorSummary {
        mean,
        variance: m2,
        skewness: m3 / (m2 * sd),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
        ks_distance: ks,
        degenerate: false,
    }
}

/// Computes v_jack and v_ijack over R replicates at fixed n and summarizes the
/// shape of each estimator's sampling distribution after standardizing by the
/// replicate mean and standard deviation.
pub fn normality_study(
    spec: &FunctionalSpec,
    model: &PopulationModel,
    n: usize,
    replicates: usize,
    master_seed: u64,
) -> Result<NormalityReport> {
    if replicates < 100 {
        return Err(Error::InvalidParams(format!(
            "normality studies need at least 100 replicates, got {replicates}"
        )));
    }
    let pairs = (0..replicates as u64)
        .into_par_iter()
        .map(|r| -> Result<(f64, f64)> {
            let sample = model.draw(n, derive_seed(master_seed, n as u64, r, STREAM_DRAW))?;
            let v_jack = estimators::jackknife_variance(spec, &sample)?.value;
            let v_ijack = estimators::infinitesimal_jackknife_variance(spec, &sample)?.value;
            Ok((v_jack, v_ijack))
        })
        .collect::<Result<Vec<_>>>()?;
    let jack: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let ijack: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    Ok(NormalityReport {
        n,
        replicates,
        jackknife: summarize_estimator(&jack),
        infinitesimal_jackknife: summarize_estimator(&ijack),
    })
}
