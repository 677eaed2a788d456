//! Metric report assembly and the human-readable table emitters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::AnnotatedSentence;
use crate::linearizer::RuleProfile;

use super::{
    align_tokens_with, compliance_score, corpus_bleu, sentence_bleu, tau_of_alignment,
    tokenize_with, AlignPolicy, ComplianceWeights, MetricError, Smoothing, Tokenization,
};

/// Everything needed to recompute a report: the names of the
/// tokenization, smoothing and alignment policies, and the rule-profile
/// hash when compliance was scored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricSettings {
    pub tokenization: String,
    pub smoothing: String,
    pub alignment: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile_hash: Option<String>,
}

/// Per-sentence metric row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceMetrics {
    pub id: String,
    pub bleu: f64,
    /// Absent when fewer than two tokens align.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    /// Absent when the reference record carries no annotation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compliance: Option<f64>,
    pub unaligned_count: usize,
}

/// Corpus-level metric report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub per_sentence: Vec<SentenceMetrics>,
    pub corpus_bleu: f64,
    /// Mean over sentences where tau is defined; 0 when none are.
    pub mean_tau: f64,
    pub settings: MetricSettings,
}

/// One evaluation item: a hypothesis, its reference, and optionally the
/// reference's gold annotation for compliance scoring.
#[derive(Debug, Clone)]
pub struct EvalInput {
    pub id: String,
    pub hyp: String,
    pub reference: String,
    pub gold: Option<AnnotatedSentence>,
}

/// Evaluation configuration.
#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub tokenization: Tokenization,
    pub smoothing: Smoothing,
    pub alignment: AlignPolicy,
    /// Profile and weights used when a gold annotation is present.
    pub profile: RuleProfile,
    pub weights: ComplianceWeights,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            tokenization: Tokenization::DetachPunctuation,
            smoothing: Smoothing::Exp,
            alignment: AlignPolicy::GreedyLeftToRight,
            profile: RuleProfile::default(),
            weights: ComplianceWeights::default(),
        }
    }
}

impl EvalOptions {
    pub fn settings(&self, with_profile: bool) -> MetricSettings {
        MetricSettings {
            tokenization: self.tokenization.to_string(),
            smoothing: self.smoothing.to_string(),
            alignment: self.alignment.to_string(),
            profile_hash: with_profile.then(|| self.profile.hash()),
        }
    }
}

/// Evaluate hypothesis/reference pairs into a [`MetricReport`].
pub fn evaluate(inputs: &[EvalInput], opts: &EvalOptions) -> Result<MetricReport, MetricError> {
    if inputs.is_empty() {
        return Err(MetricError::EmptyCorpus);
    }
    let mut per_sentence = Vec::with_capacity(inputs.len());
    let mut pairs_tokens: Vec<(Vec<String>, Vec<String>)> = Vec::with_capacity(inputs.len());
    let mut tau_sum = 0.0;
    let mut tau_count = 0usize;
    let mut any_gold = false;

    for input in inputs {
        let hyp = tokenize_with(&input.hyp, opts.tokenization);
        let reference = tokenize_with(&input.reference, opts.tokenization);
        let bleu = sentence_bleu(&hyp, &reference, opts.smoothing)?;
        let alignment = align_tokens_with(&hyp, &reference, opts.alignment);
        let tau = tau_of_alignment(&alignment);
        if let Some(t) = tau {
            tau_sum += t;
            tau_count += 1;
        }
        let compliance = match &input.gold {
            Some(gold) => {
                any_gold = true;
                Some(compliance_score(&hyp, gold, &opts.weights, &opts.profile)?.score)
            }
            None => None,
        };
        per_sentence.push(SentenceMetrics {
            id: input.id.clone(),
            bleu,
            tau,
            compliance,
            unaligned_count: alignment.unaligned_count(),
        });
        pairs_tokens.push((hyp, reference));
    }

    let pairs: Vec<(&[String], &[String])> = pairs_tokens
        .iter()
        .map(|(h, r)| (h.as_slice(), r.as_slice()))
        .collect();
    let corpus = corpus_bleu(&pairs, opts.smoothing)?;

    Ok(MetricReport {
        per_sentence,
        corpus_bleu: corpus,
        mean_tau: if tau_count == 0 {
            0.0
        } else {
            tau_sum / tau_count as f64
        },
        settings: opts.settings(any_gold),
    })
}

/// Aligned-column text rendering of a report.
pub fn render_report_table(report: &MetricReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<24} {:>9} {:>9} {:>11} {:>10}\n",
        "id", "BLEU", "tau", "compliance", "unaligned"
    ));
    out.push_str(&format!("{:-<66}\n", ""));
    for row in &report.per_sentence {
        let tau = row
            .tau
            .map(|t| format!("{t:.4}"))
            .unwrap_or_else(|| "-".into());
        let compliance = row
            .compliance
            .map(|c| format!("{c:.1}"))
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{:<24} {:>9.3} {:>9} {:>11} {:>10}\n",
            row.id, row.bleu, tau, compliance, row.unaligned_count
        ));
    }
    out.push_str(&format!("{:-<66}\n", ""));
    out.push_str(&format!(
        "corpus BLEU {:.3}   mean tau {:.4}   ({} sentences)\n",
        report.corpus_bleu,
        report.mean_tau,
        report.per_sentence.len()
    ));
    out.push_str(&format!(
        "settings: tokenization={} smoothing={} alignment={}{}\n",
        report.settings.tokenization,
        report.settings.smoothing,
        report.settings.alignment,
        report
            .settings
            .profile_hash
            .as_deref()
            .map(|h| format!(" profile={}", &h[..12.min(h.len())]))
            .unwrap_or_default()
    ));
    out
}

/// One cell of a cross-domain grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub bleu: f64,
    pub mean_tau: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub model: String,
    pub cells: BTreeMap<String, GridCell>,
}

/// Model × corpus grid of corpus-level scores.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossDomainGrid {
    pub corpora: Vec<String>,
    pub rows: Vec<GridRow>,
    pub settings: MetricSettings,
}

/// Aligned-column text rendering of a cross-domain grid.
pub fn render_grid_table(grid: &CrossDomainGrid) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:<28}", "model"));
    for corpus in &grid.corpora {
        out.push_str(&format!(" {corpus:>18}"));
    }
    out.push('\n');
    out.push_str(&format!("{:-<width$}\n", "", width = 28 + grid.corpora.len() * 19));
    for row in &grid.rows {
        out.push_str(&format!("{:<28}", row.model));
        for corpus in &grid.corpora {
            match row.cells.get(corpus) {
                Some(cell) => {
                    out.push_str(&format!(" {:>10.3}/{:>7.4}", cell.bleu, cell.mean_tau))
                }
                None => out.push_str(&format!(" {:>18}", "-")),
            }
        }
        out.push('\n');
    }
    out.push_str("cells are corpus BLEU / mean tau\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn input(id: &str, hyp: &str, reference: &str) -> EvalInput {
        EvalInput {
            id: id.into(),
            hyp: hyp.into(),
            reference: reference.into(),
            gold: None,
        }
    }

    #[test]
    fn perfect_system_scores_100_and_tau_1() {
        let inputs = vec![
            input("a", "rāmaḥ vanam gacchati", "rāmaḥ vanam gacchati"),
            input("b", "saḥ phalam khādati", "saḥ phalam khādati"),
        ];
        let report = evaluate(&inputs, &EvalOptions::default()).unwrap();
        assert_abs_diff_eq!(report.corpus_bleu, 100.0, epsilon = 1e-9);
        assert_abs_diff_eq!(report.mean_tau, 1.0, epsilon = 1e-12);
        assert!(report.settings.profile_hash.is_none());
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(
            evaluate(&[], &EvalOptions::default()),
            Err(MetricError::EmptyCorpus)
        );
    }

    #[test]
    fn report_round_trips_through_json() {
        let inputs = vec![input("a", "x y", "y x")];
        let report = evaluate(&inputs, &EvalOptions::default()).unwrap();
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: MetricReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
    }

    #[test]
    fn table_renderer_mentions_every_sentence() {
        let inputs = vec![input("sent-1", "a b", "a b"), input("sent-2", "c", "c d")];
        let report = evaluate(&inputs, &EvalOptions::default()).unwrap();
        let table = render_report_table(&report);
        assert!(table.contains("sent-1"));
        assert!(table.contains("sent-2"));
        assert!(table.contains("corpus BLEU"));
    }
}
