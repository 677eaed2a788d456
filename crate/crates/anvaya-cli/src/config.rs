//! Configuration file support. Precedence everywhere is: command-line
//! flag > config file > built-in default.

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};

use anvaya_core::linearizer::RuleProfile;
use anvaya_core::metrics::{AlignPolicy, Smoothing, Tokenization};

#[derive(Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub profile: Option<PathBuf>,
    pub format: Option<String>,
    pub jobs: Option<usize>,
    pub smoothing: Option<String>,
    pub floor_value: Option<f64>,
    pub tokenization: Option<String>,
    pub alignment: Option<String>,
    pub weights: Option<[f64; 5]>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        match path {
            None => Ok(FileConfig::default()),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("cannot read config {}", path.display()))?;
                toml::from_str(&text)
                    .with_context(|| format!("cannot parse config {}", path.display()))
            }
        }
    }
}

pub fn resolve_profile(
    flag: Option<&Path>,
    config: &FileConfig,
) -> anyhow::Result<(RuleProfile, Option<PathBuf>)> {
    let path = flag.map(Path::to_path_buf).or_else(|| config.profile.clone());
    match path {
        None => Ok((RuleProfile::default(), None)),
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("cannot read profile {}", path.display()))?;
            let profile: RuleProfile = serde_json::from_str(&text)
                .with_context(|| format!("cannot parse profile {}", path.display()))?;
            profile
                .validate()
                .with_context(|| format!("invalid profile {}", path.display()))?;
            Ok((profile, Some(path)))
        }
    }
}

pub fn resolve_smoothing(
    flag: Option<&str>,
    floor_flag: Option<f64>,
    config: &FileConfig,
) -> anyhow::Result<Smoothing> {
    let name = flag
        .map(str::to_string)
        .or_else(|| config.smoothing.clone())
        .unwrap_or_else(|| "exp".into());
    let floor = floor_flag.or(config.floor_value).unwrap_or(0.0);
    match name.as_str() {
        "exp" => Ok(Smoothing::Exp),
        "floor" => Ok(Smoothing::Floor { value: floor }),
        other => anyhow::bail!("unknown smoothing {other:?} (expected exp or floor)"),
    }
}

pub fn resolve_tokenization(flag: Option<&str>, config: &FileConfig) -> anyhow::Result<Tokenization> {
    let name = flag
        .map(str::to_string)
        .or_else(|| config.tokenization.clone())
        .unwrap_or_else(|| "detach-punctuation".into());
    match name.as_str() {
        "whitespace" => Ok(Tokenization::Whitespace),
        "detach-punctuation" => Ok(Tokenization::DetachPunctuation),
        other => anyhow::bail!(
            "unknown tokenization {other:?} (expected whitespace or detach-punctuation)"
        ),
    }
}

pub fn resolve_alignment(flag: Option<&str>, config: &FileConfig) -> anyhow::Result<AlignPolicy> {
    let name = flag
        .map(str::to_string)
        .or_else(|| config.alignment.clone())
        .unwrap_or_else(|| "greedy".into());
    match name.as_str() {
        "greedy" | "greedy-left-to-right" => Ok(AlignPolicy::GreedyLeftToRight),
        "exhaustive" | "exhaustive-min-inversions" => Ok(AlignPolicy::ExhaustiveMinInversions),
        other => anyhow::bail!("unknown alignment {other:?} (expected greedy or exhaustive)"),
    }
}

pub fn resolve_jobs(flag: Option<usize>, config: &FileConfig) -> usize {
    flag.or(config.jobs).unwrap_or(1).max(1)
}

pub fn resolve_format(flag: Option<&str>, config: &FileConfig) -> anyhow::Result<anvaya_core::corpus::CorpusFormat> {
    let name = flag
        .map(str::to_string)
        .or_else(|| config.format.clone())
        .unwrap_or_else(|| "jsonl".into());
    name.parse().map_err(|e: String| anyhow::anyhow!(e))
}
