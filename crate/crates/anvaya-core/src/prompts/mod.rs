//! Prompt construction and response handling for the prompting
//! experiments: the zero-shot / few-shot / few-shot-with-rules / CoT
//! strategies, the eight-variant ablation family, tagged-response
//! parsing, and a chat-completion endpoint client.
//!
//! Rule texts, the task description, response-format instructions and
//! the demonstration pools live in plain-text data files shipped with
//! the crate (`data/prompts/`); prompts are assembled from those blocks,
//! never hard-coded, so removing one rule removes exactly one block from
//! the rendering.

mod client;
mod data;
mod parse;
mod render;

pub use client::{prompt_hash, query_model, ClientMode, EndpointConfig, ModelClient, QueryError};
pub use data::{bundled_cot_examples, bundled_fs_examples, rule_heading};
pub use parse::{parse_response, ParsedResponse};
pub use render::{ablation_family, render_prompt};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Prompting strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Task description only.
    ZsPlain,
    /// Task description plus demonstrations, no rules.
    FsPlain,
    /// Task description, rule blocks, demonstrations.
    FsRules,
    /// Rule blocks plus reasoning-bearing demonstrations.
    Cot,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zs-plain" => Ok(Strategy::ZsPlain),
            "fs-plain" => Ok(Strategy::FsPlain),
            "fs-rules" => Ok(Strategy::FsRules),
            "cot" => Ok(Strategy::Cot),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

/// Which tag pair carries the final answer (and, for the reasoning
/// conventions, the reasoning).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TagConvention {
    /// `<prose>` only.
    ProseOnly,
    /// `<think>` + `<prose>`.
    ThinkProse,
    /// `<reasoning>` + `<answer>`.
    ReasoningAnswer,
}

impl std::str::FromStr for TagConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prose-only" => Ok(TagConvention::ProseOnly),
            "think-prose" => Ok(TagConvention::ThinkProse),
            "reasoning-answer" => Ok(TagConvention::ReasoningAnswer),
            other => Err(format!("unknown tag convention {other:?}")),
        }
    }
}

/// One worked demonstration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Demonstration {
    pub verse: String,
    pub prose: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reasoning: Option<String>,
}

/// A fully specified prompting configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSpec {
    pub strategy: Strategy,
    /// Rules to include, drawn from 1..=5. Empty for the plain
    /// strategies.
    pub rule_mask: BTreeSet<u8>,
    pub examples: Vec<Demonstration>,
    pub tag_convention: TagConvention,
}

impl PromptSpec {
    pub fn zs_plain() -> Self {
        PromptSpec {
            strategy: Strategy::ZsPlain,
            rule_mask: BTreeSet::new(),
            examples: Vec::new(),
            tag_convention: TagConvention::ProseOnly,
        }
    }

    pub fn fs_plain(examples: Vec<Demonstration>) -> Self {
        PromptSpec {
            strategy: Strategy::FsPlain,
            rule_mask: BTreeSet::new(),
            examples,
            tag_convention: TagConvention::ProseOnly,
        }
    }

    pub fn fs_rules(rule_mask: BTreeSet<u8>, examples: Vec<Demonstration>) -> Self {
        PromptSpec {
            strategy: Strategy::FsRules,
            rule_mask,
            examples,
            tag_convention: TagConvention::ProseOnly,
        }
    }

    pub fn cot(rule_mask: BTreeSet<u8>, examples: Vec<Demonstration>) -> Self {
        PromptSpec {
            strategy: Strategy::Cot,
            rule_mask,
            examples,
            tag_convention: TagConvention::ThinkProse,
        }
    }

    /// The full five-rule mask.
    pub fn full_mask() -> BTreeSet<u8> {
        (1..=5).collect()
    }

    pub fn validate(&self) -> Result<(), PromptError> {
        if self.rule_mask.iter().any(|r| !(1..=5).contains(r)) {
            return Err(PromptError::InvalidSpec {
                reason: format!("rule_mask must be a subset of 1..=5, got {:?}", self.rule_mask),
            });
        }
        match self.strategy {
            Strategy::ZsPlain => {
                if !self.examples.is_empty() {
                    return Err(PromptError::InvalidSpec {
                        reason: "zs-plain carries zero examples".into(),
                    });
                }
                if !self.rule_mask.is_empty() {
                    return Err(PromptError::InvalidSpec {
                        reason: "rule_mask must be empty for zs-plain".into(),
                    });
                }
            }
            Strategy::FsPlain => {
                if self.examples.is_empty() {
                    return Err(PromptError::InvalidSpec {
                        reason: "fs-plain needs at least one example".into(),
                    });
                }
                if !self.rule_mask.is_empty() {
                    return Err(PromptError::InvalidSpec {
                        reason: "rule_mask must be empty for fs-plain".into(),
                    });
                }
            }
            Strategy::FsRules => {
                if self.examples.is_empty() {
                    return Err(PromptError::InvalidSpec {
                        reason: "fs-rules needs at least one example".into(),
                    });
                }
                if self.rule_mask.is_empty() {
                    return Err(PromptError::InvalidSpec {
                        reason: "fs-rules needs a non-empty rule mask".into(),
                    });
                }
            }
            Strategy::Cot => {
                if self.rule_mask.is_empty() {
                    return Err(PromptError::InvalidSpec {
                        reason: "cot needs a non-empty rule mask".into(),
                    });
                }
                for (i, example) in self.examples.iter().enumerate() {
                    if example.reasoning.is_none() {
                        return Err(PromptError::MissingReasoning { example: i });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Prompt construction failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PromptError {
    #[error("invalid prompt spec: {reason}")]
    InvalidSpec { reason: String },
    #[error("example {example} lacks the reasoning required by its convention")]
    MissingReasoning { example: usize },
    #[error("prompt data files lack block {name:?}")]
    MissingBlock { name: String },
    #[error("ablation family needs a base spec with the full rule mask 1..=5")]
    BaseMaskNotFull,
}
