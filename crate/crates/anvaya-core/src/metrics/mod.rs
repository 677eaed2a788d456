//! Evaluation measures: BLEU, Kendall's Tau over token alignments, and
//! the weighted rule-compliance score.

mod bleu;
mod compliance;
mod report;
mod tau;
mod tokenize;

pub use bleu::{corpus_bleu, sentence_bleu, Smoothing};
pub use compliance::{
    compliance_score, rule_name, ComplianceOutcome, ComplianceWeights, RULE_IDS,
};
pub use report::{
    evaluate, render_grid_table, render_report_table, CrossDomainGrid, EvalInput, EvalOptions,
    GridCell, GridRow, MetricReport, MetricSettings, SentenceMetrics,
};
pub use tau::{
    align_tokens, align_tokens_with, kendall_tau, kendall_tau_with, tau_of_alignment,
    AlignPolicy, Alignment,
};
pub use tokenize::{tokenize_iast, tokenize_with, Tokenization};

use crate::linearizer::LinearizeError;

/// Metric computation failure.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("reference token sequence is empty")]
    EmptyReference,
    #[error("corpus-level metric needs at least one pair")]
    EmptyCorpus,
    #[error("compliance weight for rule {rule} is negative")]
    NegativeWeight { rule: u8 },
    #[error("hypothesis ids missing from the reference corpus: {missing:?}")]
    IdMismatch { missing: Vec<String> },
    #[error(transparent)]
    Linearize(#[from] LinearizeError),
}
