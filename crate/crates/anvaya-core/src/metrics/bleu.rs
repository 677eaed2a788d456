//! BLEU over token sequences: modified n-gram precisions for n = 1..4,
//! geometric mean, and the standard brevity penalty, on a 0–100 scale.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::MetricError;

const MAX_ORDER: usize = 4;

/// How zero n-gram precisions are smoothed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Smoothing {
    /// Each successive zero-match order n contributes 1/(2^k · total_n).
    Exp,
    /// Zero-match orders contribute value/total_n. A value of 0 leaves
    /// the precision at zero, which zeroes the whole score.
    Floor { value: f64 },
}

impl Default for Smoothing {
    fn default() -> Self {
        Smoothing::Exp
    }
}

impl std::fmt::Display for Smoothing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Smoothing::Exp => write!(f, "exp"),
            Smoothing::Floor { value } => write!(f, "floor({value})"),
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct NgramStats {
    correct: [usize; MAX_ORDER],
    total: [usize; MAX_ORDER],
    hyp_len: usize,
    ref_len: usize,
}

fn accumulate<S: AsRef<str>>(stats: &mut NgramStats, hyp: &[S], reference: &[S]) {
    stats.hyp_len += hyp.len();
    stats.ref_len += reference.len();
    for n in 1..=MAX_ORDER {
        let total = hyp.len().saturating_sub(n - 1);
        stats.total[n - 1] += total;
        if total == 0 {
            continue;
        }
        let mut ref_counts: HashMap<Vec<&str>, usize> = HashMap::new();
        for window in reference.windows(n) {
            let key: Vec<&str> = window.iter().map(|s| s.as_ref()).collect();
            *ref_counts.entry(key).or_insert(0) += 1;
        }
        for window in hyp.windows(n) {
            let key: Vec<&str> = window.iter().map(|s| s.as_ref()).collect();
            if let Some(count) = ref_counts.get_mut(&key) {
                if *count > 0 {
                    *count -= 1;
                    stats.correct[n - 1] += 1;
                }
            }
        }
    }
}

/// Geometric mean of the first `orders` precisions, brevity penalty, and
/// the 0–100 scaling. Returns 0 when any contributing precision stays 0.
fn score(stats: &NgramStats, smoothing: Smoothing, orders: usize) -> f64 {
    if stats.hyp_len == 0 || orders == 0 {
        return 0.0;
    }
    let mut log_sum = 0.0;
    let mut smooth_scale = 1.0f64;
    for n in 0..orders {
        let total = stats.total[n] as f64;
        let precision = if stats.correct[n] > 0 {
            stats.correct[n] as f64 / total
        } else {
            match smoothing {
                Smoothing::Exp => {
                    smooth_scale *= 2.0;
                    1.0 / (smooth_scale * total)
                }
                Smoothing::Floor { value } => value / total,
            }
        };
        if precision <= 0.0 {
            return 0.0;
        }
        log_sum += precision.ln();
    }
    let brevity = if stats.hyp_len < stats.ref_len {
        (1.0 - stats.ref_len as f64 / stats.hyp_len as f64).exp()
    } else {
        1.0
    };
    100.0 * brevity * (log_sum / orders as f64).exp()
}

/// Sentence-level BLEU. Orders with no n-grams in the hypothesis are
/// dropped from the geometric mean (effective order), matching how
/// sentence scores are conventionally reported for short sequences.
pub fn sentence_bleu<S: AsRef<str>>(
    hyp: &[S],
    reference: &[S],
    smoothing: Smoothing,
) -> Result<f64, MetricError> {
    if reference.is_empty() {
        return Err(MetricError::EmptyReference);
    }
    let mut stats = NgramStats::default();
    accumulate(&mut stats, hyp, reference);
    let effective = (1..=MAX_ORDER)
        .rev()
        .find(|n| stats.total[n - 1] > 0)
        .unwrap_or(0);
    Ok(score(&stats, smoothing, effective))
}

/// Corpus-level BLEU: n-gram statistics pooled across all pairs before
/// the precision computation, brevity penalty from total lengths.
/// Orders with no pooled n-grams at all (every hypothesis shorter than
/// n) are dropped from the geometric mean, so a corpus of identical
/// short pairs still scores 100.
pub fn corpus_bleu<S: AsRef<str>>(
    pairs: &[(&[S], &[S])],
    smoothing: Smoothing,
) -> Result<f64, MetricError> {
    if pairs.is_empty() {
        return Err(MetricError::EmptyCorpus);
    }
    let mut stats = NgramStats::default();
    for (hyp, reference) in pairs {
        if reference.is_empty() {
            return Err(MetricError::EmptyReference);
        }
        accumulate(&mut stats, hyp, reference);
    }
    let effective = (1..=MAX_ORDER)
        .rev()
        .find(|n| stats.total[n - 1] > 0)
        .unwrap_or(0);
    Ok(score(&stats, smoothing, effective))
}
