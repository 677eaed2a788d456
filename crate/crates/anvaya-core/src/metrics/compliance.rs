//! Weighted rule-compliance scoring of a hypothesis against a gold
//! annotation.
//!
//! The five checks are mechanical proxies for the rule adjudication a
//! human expert performs: (1) token multiset equality, (2) clause spans
//! in canonical order with the main verb concluding, (3) modifier chunks
//! contiguous and internally ordered, (4) role bands in profile order
//! within each clause, (5) particles immediately after their parent
//! word. Checks are evaluated over the aligned tokens; a structure that
//! touches unaligned tokens is skipped as unverifiable — missing or
//! hallucinated material is what check (1) punishes. A disabled engine
//! rule passes vacuously. When nothing aligns at all, every check fails.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::corpus::{AnnotatedSentence, ClauseKind, Head, Role};
use crate::linearizer::{assign_bands, build_chunks, order_clauses, EngineRule, RuleProfile};

use super::{align_tokens, MetricError};

pub const RULE_IDS: [u8; 5] = [1, 2, 3, 4, 5];

/// Short name of one rule, for reports.
pub fn rule_name(rule: u8) -> &'static str {
    match rule {
        1 => "sandhi-analysis",
        2 => "clause-structuring",
        3 => "modifier-chunking",
        4 => "intra-clause-order",
        5 => "particle-placement",
        _ => "unknown",
    }
}

/// Per-rule weights. The default weighting is 3/2/2/2/1 for rules 1–5,
/// summing to 10.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplianceWeights {
    weights: BTreeMap<u8, f64>,
}

impl Default for ComplianceWeights {
    fn default() -> Self {
        ComplianceWeights {
            weights: [(1, 3.0), (2, 2.0), (3, 2.0), (4, 2.0), (5, 1.0)]
                .into_iter()
                .collect(),
        }
    }
}

impl ComplianceWeights {
    /// Build from explicit weights for rules 1–5; all must be
    /// non-negative.
    pub fn new(weights: BTreeMap<u8, f64>) -> Result<Self, MetricError> {
        for (rule, w) in &weights {
            if *w < 0.0 {
                return Err(MetricError::NegativeWeight { rule: *rule });
            }
        }
        Ok(ComplianceWeights { weights })
    }

    /// Weights given in rule order 1..=5.
    pub fn from_values(values: [f64; 5]) -> Result<Self, MetricError> {
        Self::new(RULE_IDS.iter().copied().zip(values).collect())
    }

    pub fn weight(&self, rule: u8) -> f64 {
        self.weights.get(&rule).copied().unwrap_or(0.0)
    }

    /// Weighted sum over a set of passing rules.
    pub fn score(&self, passed: &BTreeSet<u8>) -> f64 {
        passed.iter().map(|r| self.weight(*r)).sum()
    }
}

/// Result of scoring one hypothesis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplianceOutcome {
    pub score: f64,
    pub per_rule: BTreeMap<u8, bool>,
    /// Human-readable notes on failed or skipped checks.
    pub diagnostics: Vec<String>,
}

impl ComplianceOutcome {
    pub fn passed(&self) -> BTreeSet<u8> {
        self.per_rule
            .iter()
            .filter_map(|(r, ok)| ok.then_some(*r))
            .collect()
    }
}

/// Score `hyp` against the gold annotation under the given weights and
/// profile.
pub fn compliance_score<S: AsRef<str>>(
    hyp: &[S],
    gold: &AnnotatedSentence,
    weights: &ComplianceWeights,
    profile: &RuleProfile,
) -> Result<ComplianceOutcome, MetricError> {
    gold.validate().map_err(crate::linearizer::LinearizeError::from)?;
    profile.validate()?;

    let gold_surfaces: Vec<&str> = gold.tokens.iter().map(|t| t.surface.as_str()).collect();
    let hyp_surfaces: Vec<&str> = hyp.iter().map(|s| s.as_ref()).collect();
    let alignment = align_tokens(&hyp_surfaces, &gold_surfaces);
    let mut diagnostics = Vec::new();

    if alignment.pairs.is_empty() {
        return Ok(ComplianceOutcome {
            score: 0.0,
            per_rule: RULE_IDS.iter().map(|r| (*r, false)).collect(),
            diagnostics: vec!["no hypothesis token aligns with the gold annotation".into()],
        });
    }

    // gold token index → hypothesis position.
    let pos_of: HashMap<usize, usize> = alignment.pairs.iter().map(|(h, r)| (*r, *h)).collect();
    // hypothesis position → gold token index.
    let gold_at: HashMap<usize, usize> = alignment.pairs.iter().map(|(h, r)| (*h, *r)).collect();

    let r1 = {
        let mut hyp_sorted = hyp_surfaces.clone();
        let mut gold_sorted = gold_surfaces.clone();
        hyp_sorted.sort_unstable();
        gold_sorted.sort_unstable();
        if hyp_sorted != gold_sorted {
            diagnostics.push("rule 1: token multisets differ".into());
        }
        hyp_sorted == gold_sorted
    };

    let r2 = check_clause_structure(gold, profile, &pos_of, &mut diagnostics);
    let r3 = check_chunk_adjacency(gold, profile, &pos_of, &gold_at, &mut diagnostics)?;
    let r4 = check_band_order(gold, profile, &pos_of, &mut diagnostics)?;
    let r5 = check_particles(gold, profile, &pos_of, &gold_at, &mut diagnostics);

    let per_rule: BTreeMap<u8, bool> =
        [(1, r1), (2, r2), (3, r3), (4, r4), (5, r5)].into_iter().collect();
    let score = weights.score(
        &per_rule
            .iter()
            .filter_map(|(r, ok)| ok.then_some(*r))
            .collect(),
    );
    Ok(ComplianceOutcome {
        score,
        per_rule,
        diagnostics,
    })
}

fn check_clause_structure(
    gold: &AnnotatedSentence,
    profile: &RuleProfile,
    pos_of: &HashMap<usize, usize>,
    diagnostics: &mut Vec<String>,
) -> bool {
    let mandated: Vec<String> = if profile.enabled(EngineRule::Clause) {
        order_clauses(gold)
    } else {
        gold.clauses.iter().map(|c| c.clause_id.clone()).collect()
    };

    // Spans over aligned non-particle tokens; empty spans are skipped.
    let mut prev: Option<(String, usize)> = None;
    let mut ok = true;
    for clause_id in &mandated {
        let positions: Vec<usize> = gold
            .tokens
            .iter()
            .filter(|t| t.clause == *clause_id && t.role != Role::Particle)
            .filter_map(|t| pos_of.get(&t.index).copied())
            .collect();
        let (Some(min), Some(max)) = (positions.iter().min(), positions.iter().max()) else {
            continue;
        };
        if let Some((prev_id, prev_max)) = &prev {
            if prev_max >= min {
                diagnostics.push(format!(
                    "rule 2: clause {clause_id:?} overlaps or precedes clause {prev_id:?}"
                ));
                ok = false;
            }
        }
        prev = Some((clause_id.clone(), *max));
    }

    if profile.enabled(EngineRule::Clause) && profile.enabled(EngineRule::IntraOrder) {
        let main_verb = gold.tokens.iter().find(|t| {
            t.is_main_verb()
                && gold
                    .clauses
                    .iter()
                    .any(|c| c.clause_id == t.clause && c.kind == ClauseKind::Main)
        });
        if let Some(verb) = main_verb {
            let last_aligned = pos_of.values().max().copied();
            match pos_of.get(&verb.index) {
                Some(pos) if Some(*pos) == last_aligned => {}
                _ => {
                    diagnostics.push("rule 2: main finite verb is not final".into());
                    ok = false;
                }
            }
        }
    }
    ok
}

fn check_chunk_adjacency(
    gold: &AnnotatedSentence,
    profile: &RuleProfile,
    pos_of: &HashMap<usize, usize>,
    gold_at: &HashMap<usize, usize>,
    diagnostics: &mut Vec<String>,
) -> Result<bool, MetricError> {
    let chunks = build_chunks(gold, profile)?;
    let mut ok = true;
    for clause_chunks in chunks.values() {
        for chunk in clause_chunks {
            if chunk.members.len() < 2 {
                continue;
            }
            let positions: Option<Vec<usize>> =
                chunk.members.iter().map(|m| pos_of.get(m).copied()).collect();
            let Some(positions) = positions else {
                diagnostics.push(format!(
                    "rule 3: chunk of {:?} skipped (member unaligned)",
                    gold.tokens[chunk.head].surface
                ));
                continue;
            };
            let members: BTreeSet<usize> = chunk.members.iter().copied().collect();
            let mut chunk_ok = true;
            for window in positions.windows(2) {
                if window[1] <= window[0] {
                    chunk_ok = false;
                    break;
                }
                // Only particles attached inside this chunk may sit
                // between consecutive members.
                for between in window[0] + 1..window[1] {
                    let is_riding_particle = gold_at.get(&between).is_some_and(|g| {
                        let tok = &gold.tokens[*g];
                        tok.role == Role::Particle
                            && tok.head.index().is_some_and(|h| members.contains(&h))
                    });
                    if !is_riding_particle {
                        chunk_ok = false;
                        break;
                    }
                }
            }
            if !chunk_ok {
                diagnostics.push(format!(
                    "rule 3: chunk of {:?} is broken up or reordered",
                    gold.tokens[chunk.head].surface
                ));
                ok = false;
            }
        }
    }
    Ok(ok)
}

fn check_band_order(
    gold: &AnnotatedSentence,
    profile: &RuleProfile,
    pos_of: &HashMap<usize, usize>,
    diagnostics: &mut Vec<String>,
) -> Result<bool, MetricError> {
    if !profile.enabled(EngineRule::IntraOrder) {
        return Ok(true);
    }
    let bands = assign_bands(gold, profile)?;
    let mut ok = true;
    for clause in &gold.clauses {
        let mut placed: Vec<(usize, usize)> = gold
            .tokens
            .iter()
            .filter(|t| t.clause == clause.clause_id)
            .filter_map(|t| {
                let band = bands.get(&t.index)?;
                let pos = pos_of.get(&t.index)?;
                Some((*pos, *band))
            })
            .collect();
        placed.sort_unstable();
        if placed.windows(2).any(|w| w[0].1 > w[1].1) {
            diagnostics.push(format!(
                "rule 4: role classes out of order in clause {:?}",
                clause.clause_id
            ));
            ok = false;
        }
    }
    Ok(ok)
}

fn check_particles(
    gold: &AnnotatedSentence,
    profile: &RuleProfile,
    pos_of: &HashMap<usize, usize>,
    gold_at: &HashMap<usize, usize>,
    diagnostics: &mut Vec<String>,
) -> bool {
    if !profile.enabled(EngineRule::Particle) {
        return true;
    }
    let mut ok = true;
    for tok in &gold.tokens {
        if tok.role != Role::Particle {
            continue;
        }
        let Head::Index(head) = tok.head else {
            continue;
        };
        let (Some(particle_pos), Some(head_pos)) = (pos_of.get(&tok.index), pos_of.get(&head))
        else {
            diagnostics.push(format!(
                "rule 5: particle {:?} skipped (token or head unaligned)",
                tok.surface
            ));
            continue;
        };
        let mut particle_ok = particle_pos > head_pos;
        if particle_ok {
            for between in head_pos + 1..*particle_pos {
                let same_head_particle = gold_at.get(&between).is_some_and(|g| {
                    let t = &gold.tokens[*g];
                    t.role == Role::Particle && t.head == Head::Index(head)
                });
                if !same_head_particle {
                    particle_ok = false;
                    break;
                }
            }
        }
        if !particle_ok {
            diagnostics.push(format!(
                "rule 5: particle {:?} does not follow its parent {:?}",
                tok.surface, gold.tokens[head].surface
            ));
            ok = false;
        }
    }
    ok
}
