//! Plain-text run configuration: one `[command]` section header followed by
//! flat `key = value` lines. No nesting, `#` starts a comment — the format is
//! trivially parseable and diff-friendly, and every run echoes its resolved
//! configuration (defaults included) into the output for provenance.

use std::collections::BTreeMap;
use std::path::PathBuf;

use resamp_core::{Contrast, FunctionalSpec, PopulationModel, SummaryStat};
use thiserror::Error;

pub const DEFAULT_REPLICATES: usize = 200;
pub const DEFAULT_BOOTSTRAP_B: usize = 500;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown key '{0}'")]
    UnknownKey(String),

    #[error("missing required key '{0}'")]
    MissingRequired(String),

    #[error("type mismatch for key '{key}': expected {expected}, got '{got}'")]
    TypeMismatch { key: String, expected: &'static str, got: String },

    #[error("duplicate key '{0}'")]
    DuplicateKey(String),

    #[error("exactly one of 'model' and 'input' must be set")]
    ModelOrInput,

    #[error("line {line} is not a comment, section header, or key=value pair: '{content}'")]
    Malformed { line: usize, content: String },

    #[error("config section [{found}] does not match the '{expected}' command")]
    SectionMismatch { found: String, expected: String },

    #[error("expected a [{0}] section header before any keys")]
    MissingSection(String),

    #[error("invalid value for key '{key}': {source}")]
    BadValue { key: String, source: resamp_core::Error },
}

/// Which subcommand a config drives; doubles as the section-header name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Estimate,
    Rate,
    Normality,
    CompareBoot,
}

impl CommandKind {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Estimate => "estimate",
            Self::Rate => "rate",
            Self::Normality => "normality",
            Self::CompareBoot => "compare-boot",
        }
    }

    /// Keys the command accepts; anything else is an UnknownKey.
    fn allowed_keys(&self) -> &'static [&'static str] {
        match self {
            Self::Estimate => &["functional", "input", "model", "n", "master_seed", "bootstrap_B", "output"],
            Self::Rate => &[
                "functional", "model", "n_grid", "replicates", "master_seed", "summary",
                "contrast", "bootstrap_B", "output",
            ],
            Self::Normality => &["functional", "model", "n", "replicates", "master_seed", "output"],
            Self::CompareBoot => &[
                "functional", "model", "n_grid", "replicates", "master_seed", "summary",
                "bootstrap_B", "output",
            ],
        }
    }
}

/// Fully resolved run configuration with defaults applied.
#[derive(Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub functional: FunctionalSpec,
    pub model: Option<PopulationModel>,
    pub input: Option<PathBuf>,
    pub n: Option<usize>,
    pub n_grid: Option<Vec<usize>>,
    pub replicates: usize,
    pub bootstrap_b: Option<usize>,
    pub master_seed: u64,
    pub summary: SummaryStat,
    pub contrast: Contrast,
    pub output: Option<PathBuf>,
}

pub fn parse_config(text: &str, command: CommandKind) -> Result<RunConfig, ConfigError> {
    let mut section_seen = false;
    let mut raw: BTreeMap<String, String> = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(inner) = line.strip_prefix('[') {
            let Some(name) = inner.strip_suffix(']') else {
                return Err(ConfigError::Malformed { line: line_no, content: line.to_string() });
            };
            if section_seen {
                return Err(ConfigError::Malformed { line: line_no, content: line.to_string() });
            }
            if name != command.label() {
                return Err(ConfigError::SectionMismatch {
                    found: name.to_string(),
                    expected: command.label().to_string(),
                });
            }
            section_seen = true;
            continue;
        }
        if !section_seen {
            return Err(ConfigError::MissingSection(command.label().to_string()));
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Malformed { line: line_no, content: line.to_string() });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !command.allowed_keys().contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey(key));
        }
        if raw.insert(key.clone(), value).is_some() {
            return Err(ConfigError::DuplicateKey(key));
        }
    }
    if !section_seen {
        return Err(ConfigError::MissingSection(command.label().to_string()));
    }
    resolve(command, raw)
}

fn resolve(command: CommandKind, mut raw: BTreeMap<String, String>) -> Result<RunConfig, ConfigError> {
    let functional_text = raw
        .remove("functional")
        .ok_or_else(|| ConfigError::MissingRequired("functional".into()))?;
    let functional = FunctionalSpec::parse(&functional_text)
        .map_err(|source| ConfigError::BadValue { key: "functional".into(), source })?;

    let model = match raw.remove("model") {
        Some(text) => Some(
            PopulationModel::parse(&text)
                .map_err(|source| ConfigError::BadValue { key: "model".into(), source })?,
        ),
        None => None,
    };
    let input = raw.remove("input").map(PathBuf::from);
    let n = parse_opt(&mut raw, "n", parse_usize)?;
    let n_grid = parse_opt(&mut raw, "n_grid", parse_usize_list)?;
    let replicates = parse_opt(&mut raw, "replicates", parse_usize)?.unwrap_or(DEFAULT_REPLICATES);
    let bootstrap_b = parse_opt(&mut raw, "bootstrap_B", parse_usize)?;
    let master_seed = parse_opt(&mut raw, "master_seed", parse_u64)?;
    let summary = parse_opt(&mut raw, "summary", |k, v| {
        SummaryStat::parse(v).map_err(|source| ConfigError::BadValue { key: k.into(), source })
    })?
    .unwrap_or(SummaryStat::Median);
    let contrast = parse_opt(&mut raw, "contrast", |k, v| {
        Contrast::parse(v).map_err(|source| ConfigError::BadValue { key: k.into(), source })
    })?
    .unwrap_or(Contrast::JackVsIjack);
    let output = raw.remove("output").map(PathBuf::from);
    debug_assert!(raw.is_empty(), "allowed_keys out of sync: {raw:?}");

    // Command-specific requirements. The data source rule: `estimate` takes a
    // dataset or a model draw (exactly one); studies always draw from a model.
    match command {
        CommandKind::Estimate => {
            match (&model, &input) {
                (Some(_), Some(_)) | (None, None) => return Err(ConfigError::ModelOrInput),
                (Some(_), None) => {
                    if n.is_none() {
                        return Err(ConfigError::MissingRequired("n".into()));
                    }
                }
                (None, Some(_)) => {}
            }
            if model.is_some() && master_seed.is_none() {
                return Err(ConfigError::MissingRequired("master_seed".into()));
            }
        }
        CommandKind::Rate | CommandKind::CompareBoot => {
            if model.is_none() {
                return Err(ConfigError::MissingRequired("model".into()));
            }
            if n_grid.is_none() {
                return Err(ConfigError::MissingRequired("n_grid".into()));
            }
            if master_seed.is_none() {
                return Err(ConfigError::MissingRequired("master_seed".into()));
            }
        }
        CommandKind::Normality => {
            if model.is_none() {
                return Err(ConfigError::MissingRequired("model".into()));
            }
            if n.is_none() {
                return Err(ConfigError::MissingRequired("n".into()));
            }
            if master_seed.is_none() {
                return Err(ConfigError::MissingRequired("master_seed".into()));
            }
        }
    }

    // The bootstrap default only materializes where a bootstrap can run.
    let bootstrap_b = match command {
        CommandKind::Estimate => bootstrap_b,
        CommandKind::Rate => match contrast {
            Contrast::JackVsBoot => Some(bootstrap_b.unwrap_or(DEFAULT_BOOTSTRAP_B)),
            Contrast::JackVsIjack => bootstrap_b,
        },
        CommandKind::CompareBoot => Some(bootstrap_b.unwrap_or(DEFAULT_BOOTSTRAP_B)),
        CommandKind::Normality => None,
    };

    Ok(RunConfig {
        command,
        functional,
        model,
        input,
        n,
        n_grid,
        replicates,
        bootstrap_b,
        master_seed: master_seed.unwrap_or(0),
        summary,
        contrast,
        output,
    })
}

fn parse_opt<T>(
    raw: &mut BTreeMap<String, String>,
    key: &'static str,
    parser: impl Fn(&'static str, &str) -> Result<T, ConfigError>,
) -> Result<Option<T>, ConfigError> {
    raw.remove(key).map(|v| parser(key, &v)).transpose()
}

fn parse_usize(key: &'static str, value: &str) -> Result<usize, ConfigError> {
    value.parse().map_err(|_| ConfigError::TypeMismatch {
        key: key.into(),
        expected: "positive integer",
        got: value.into(),
    })
}

fn parse_u64(key: &'static str, value: &str) -> Result<u64, ConfigError> {
    value.parse().map_err(|_| ConfigError::TypeMismatch {
        key: key.into(),
        expected: "unsigned integer",
        got: value.into(),
    })
}

fn parse_usize_list(key: &'static str, value: &str) -> Result<Vec<usize>, ConfigError> {
    value
        .split(',')
        .map(|part| parse_usize(key, part.trim()))
        .collect()
}
