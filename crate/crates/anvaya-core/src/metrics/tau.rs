//! Token alignment and Kendall's Tau over the aligned subsequence.
//!
//! Tokens are matched by surface equality, injectively. Tau is computed
//! from pairwise inversions over the aligned common subsequence; since
//! the alignment is injective there are no ties and tau-a applies:
//! `tau = 1 − 2·inv / C(m,2)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// How duplicate surfaces are resolved during alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlignPolicy {
    /// k-th occurrence in the hypothesis matches the k-th occurrence in
    /// the reference. Deterministic and linear-time.
    GreedyLeftToRight,
    /// Enumerate occurrence subsets per duplicated surface and keep the
    /// assignment minimizing inversions. Intended for short sequences.
    ExhaustiveMinInversions,
}

impl std::fmt::Display for AlignPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlignPolicy::GreedyLeftToRight => write!(f, "greedy-left-to-right"),
            AlignPolicy::ExhaustiveMinInversions => write!(f, "exhaustive-min-inversions"),
        }
    }
}

/// An injective, surface-preserving partial mapping between a hypothesis
/// and a reference token sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    /// (hyp index, ref index) pairs, ascending in hyp index.
    pub pairs: Vec<(usize, usize)>,
    pub hyp_unaligned: Vec<usize>,
    pub ref_unaligned: Vec<usize>,
}

impl Alignment {
    pub fn aligned_len(&self) -> usize {
        self.pairs.len()
    }

    /// Total tokens excluded from the aligned subsequence, both sides.
    pub fn unaligned_count(&self) -> usize {
        self.hyp_unaligned.len() + self.ref_unaligned.len()
    }

    /// Hyp index → ref index.
    pub fn hyp_to_ref(&self) -> HashMap<usize, usize> {
        self.pairs.iter().copied().collect()
    }

    /// Ref index → hyp index.
    pub fn ref_to_hyp(&self) -> HashMap<usize, usize> {
        self.pairs.iter().map(|(h, r)| (*r, *h)).collect()
    }
}

/// Greedy left-to-right alignment.
pub fn align_tokens<S: AsRef<str>>(hyp: &[S], reference: &[S]) -> Alignment {
    align_tokens_with(hyp, reference, AlignPolicy::GreedyLeftToRight)
}

pub fn align_tokens_with<S: AsRef<str>>(
    hyp: &[S],
    reference: &[S],
    policy: AlignPolicy,
) -> Alignment {
    match policy {
        AlignPolicy::GreedyLeftToRight => greedy_align(hyp, reference),
        AlignPolicy::ExhaustiveMinInversions => exhaustive_align(hyp, reference),
    }
}

fn greedy_align<S: AsRef<str>>(hyp: &[S], reference: &[S]) -> Alignment {
    let mut ref_occurrences: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, tok) in reference.iter().enumerate() {
        ref_occurrences.entry(tok.as_ref()).or_default().push(i);
    }
    let mut next_occurrence: HashMap<&str, usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut hyp_unaligned = Vec::new();
    let mut ref_used = vec![false; reference.len()];
    for (h, tok) in hyp.iter().enumerate() {
        let surface = tok.as_ref();
        let cursor = next_occurrence.entry(surface).or_insert(0);
        match ref_occurrences.get(surface).and_then(|occ| occ.get(*cursor)) {
            Some(r) => {
                pairs.push((h, *r));
                ref_used[*r] = true;
                *cursor += 1;
            }
            None => hyp_unaligned.push(h),
        }
    }
    let ref_unaligned = (0..reference.len()).filter(|r| !ref_used[*r]).collect();
    Alignment {
        pairs,
        hyp_unaligned,
        ref_unaligned,
    }
}

/// Exhaustive minimum-inversion alignment. Same cardinality as greedy
/// (per surface, min of the two occurrence counts), but the choice of
/// occurrences is optimized. Within one surface the matching is
/// order-preserving; crossing same-surface matches can never reduce
/// inversions.
fn exhaustive_align<S: AsRef<str>>(hyp: &[S], reference: &[S]) -> Alignment {
    let mut surfaces: Vec<&str> = Vec::new();
    let mut hyp_occ: HashMap<&str, Vec<usize>> = HashMap::new();
    let mut ref_occ: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, tok) in hyp.iter().enumerate() {
        let s = tok.as_ref();
        if !hyp_occ.contains_key(s) {
            surfaces.push(s);
        }
        hyp_occ.entry(s).or_default().push(i);
    }
    for (i, tok) in reference.iter().enumerate() {
        ref_occ.entry(tok.as_ref()).or_default().push(i);
    }
    surfaces.retain(|s| ref_occ.contains_key(s));

    // Per surface, the candidate (hyp subset, ref subset) choices.
    let mut choices: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for surface in &surfaces {
        let hs = &hyp_occ[surface];
        let rs = &ref_occ[surface];
        let k = hs.len().min(rs.len());
        let mut alternatives = Vec::new();
        for hsub in subsets(hs, k) {
            for rsub in subsets(rs, k) {
                alternatives.push(hsub.iter().copied().zip(rsub.iter().copied()).collect());
            }
        }
        choices.push(alternatives);
    }

    let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
    let mut stack: Vec<(usize, Vec<(usize, usize)>)> = vec![(0, Vec::new())];
    while let Some((depth, partial)) = stack.pop() {
        if depth == choices.len() {
            let mut pairs = partial.clone();
            pairs.sort_unstable();
            let inv = count_inversions(&pairs.iter().map(|(_, r)| *r).collect::<Vec<_>>());
            let better = match &best {
                None => true,
                Some((best_inv, best_pairs)) => {
                    inv < *best_inv || (inv == *best_inv && pairs < *best_pairs)
                }
            };
            if better {
                best = Some((inv, pairs));
            }
            continue;
        }
        // Depth-first over alternatives, in reverse so the first
        // alternative is explored first.
        for alternative in choices[depth].iter().rev() {
            let mut next = partial.clone();
            next.extend(alternative.iter().copied());
            stack.push((depth + 1, next));
        }
    }

    let pairs = best.map(|(_, p)| p).unwrap_or_default();
    let hyp_matched: Vec<bool> = {
        let mut v = vec![false; hyp.len()];
        for (h, _) in &pairs {
            v[*h] = true;
        }
        v
    };
    let ref_matched: Vec<bool> = {
        let mut v = vec![false; reference.len()];
        for (_, r) in &pairs {
            v[*r] = true;
        }
        v
    };
    Alignment {
        pairs,
        hyp_unaligned: (0..hyp.len()).filter(|h| !hyp_matched[*h]).collect(),
        ref_unaligned: (0..reference.len()).filter(|r| !ref_matched[*r]).collect(),
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > items.len() {
        return Vec::new();
    }
    if k == items.len() {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for with_first in subsets(&items[1..], k - 1) {
        let mut s = vec![items[0]];
        s.extend(with_first);
        out.push(s);
    }
    out.extend(subsets(&items[1..], k));
    out
}

fn count_inversions(seq: &[usize]) -> usize {
    // O(m^2) is fine at sentence scale and trivially auditable.
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Kendall's Tau between the two sequences over the greedy alignment, or
/// `None` when fewer than 2 tokens align.
pub fn kendall_tau<S: AsRef<str>>(hyp: &[S], reference: &[S]) -> Option<f64> {
    kendall_tau_with(hyp, reference, AlignPolicy::GreedyLeftToRight)
}

pub fn kendall_tau_with<S: AsRef<str>>(
    hyp: &[S],
    reference: &[S],
    policy: AlignPolicy,
) -> Option<f64> {
    tau_of_alignment(&align_tokens_with(hyp, reference, policy))
}

/// Tau from an existing alignment.
pub fn tau_of_alignment(alignment: &Alignment) -> Option<f64> {
    let m = alignment.pairs.len();
    if m < 2 {
        return None;
    }
    let ref_positions: Vec<usize> = alignment.pairs.iter().map(|(_, r)| *r).collect();
    let inv = count_inversions(&ref_positions);
    let total_pairs = (m * (m - 1) / 2) as f64;
    Some(1.0 - 2.0 * inv as f64 / total_pairs)
}
