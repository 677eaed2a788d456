//! Canonical prose ordering (anvaya) for annotated Sanskrit verse.
//!
//! The crate has four parts:
//!
//! - [`corpus`]: IAST verse–prose corpora, token-level dependency
//!   annotations, loading and validation.
//! - [`linearizer`]: the deterministic rule calculus that reorders an
//!   annotated sentence into canonical prose order.
//! - [`metrics`]: BLEU, Kendall's Tau over token alignments, and the
//!   weighted rule-compliance score.
//! - [`prompts`]: prompt-template rendering for the zero-shot / few-shot /
//!   CoT strategies, the ablation family, tagged-response parsing, and a
//!   chat-completion endpoint client.

pub mod corpus;
pub mod linearizer;
pub mod metrics;
pub mod prompts;
pub mod text;

pub use corpus::{
    load_corpus, validate_iast, AnnotatedSentence, AnnotatedToken, ClauseInfo, ClauseKind,
    CorpusFormat, Flag, Head, Role, VerseRecord,
};
pub use linearizer::{linearize, Chunk, RuleProfile};
pub use metrics::{
    corpus_bleu, kendall_tau, sentence_bleu, tokenize_iast, ComplianceWeights, MetricReport,
};
pub use prompts::{parse_response, render_prompt, PromptSpec, Strategy, TagConvention};
