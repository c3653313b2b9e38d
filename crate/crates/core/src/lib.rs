//! Resampling variance estimators for functionals of an empirical
//! distribution, and seeded Monte Carlo studies of their agreement.
//!
//! The crate estimates the variance of a statistic T computed from an i.i.d.
//! sample three ways:
//!
//! * **jackknife** — the classical delete-one estimator built from
//!   pseudovalues;
//! * **infinitesimal jackknife** — the empirical second moment of the
//!   influence function, computed in closed form;
//! * **bootstrap** — n times the sample variance of T over B seeded
//!   multinomial resamples.
//!
//! Two families of functionals are supported: smooth functions of the sample
//! mean, and trimmed L-statistics (weighted sums of order statistics with a
//! fixed weight function on quantile levels). See [`functionals`] for the
//! registry of built-ins and [`experiments`] for the rate and normality
//! studies the CLI exposes.
//!
//! All random draws are made through seeded generators; every experiment is a
//! pure function of its configuration, including under parallel execution.

pub mod empirical;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod functionals;
mod quad;
pub mod sampling;

pub use empirical::{EmpiricalSample, LeaveOneOut};
pub use error::{Error, Result};
pub use estimators::{
    bootstrap_variance, decomposition, infinitesimal_jackknife_variance, jackknife_variance,
    pseudovalues, DecompositionReport, EstimatorKind, PseudovalueSet, VarianceEstimate,
};
pub use experiments::{
    compare_boot, derive_seed, normality_study, rate_study, Contrast, EstimatorSummary,
    NormalityReport, RateFit, RateRow, RateStudy, RateStudyConfig, SummaryStat, STREAM_BOOT,
    STREAM_DRAW,
};
pub use functionals::{FunctionalSpec, SmoothFunctionOfMean, WeightFunction};
pub use sampling::{true_sigma_squared, PopulationModel};
