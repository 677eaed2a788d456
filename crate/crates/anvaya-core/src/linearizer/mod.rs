//! Deterministic reordering of an annotated sentence into canonical
//! prose order.
//!
//! The pipeline is: order the clauses, group each clause's tokens into
//! modifier chunks and non-finite argument groups, emit each clause's
//! units in the canonical band sequence (vocative, agent, kārakas,
//! non-finite groups, leftover roles, finite verb, quotative marker),
//! then insert particles immediately after their parent words. Every
//! stage is a pure function of the annotation and the [`RuleProfile`];
//! ties always break by source order, so equal inputs produce
//! byte-identical output.

mod engine;
mod order;

pub use engine::{assign_bands, build_chunks, order_clause};
pub use order::{order_clauses, place_particles};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::{AnnotatedSentence, AnnotationError, Role};

/// Where non-finite verb groups are emitted within their clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonfinitePlacement {
    /// Immediately before the clause-level accusative band.
    BeforeKarman,
    /// After all kāraka bands.
    AfterKarakas,
}

/// Where appositives are emitted relative to their headword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AppositivePlacement {
    BeforeHead,
    AfterHead,
}

/// The four switchable parts of the ordering calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EngineRule {
    /// Clause reordering (relative/absolutive before main, ranks).
    #[serde(rename = "R-clause")]
    Clause,
    /// Modifier chunking.
    #[serde(rename = "R-chunk")]
    Chunk,
    /// Intra-clause band ordering and non-finite argument grouping.
    #[serde(rename = "R-intra-order")]
    IntraOrder,
    /// Particle insertion after the parent word.
    #[serde(rename = "R-particle")]
    Particle,
}

/// Configuration of the ordering calculus. Serializable so CLI runs are
/// reproducible; reports record the profile under [`RuleProfile::hash`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleProfile {
    /// The five kāraka roles in emission order; each exactly once.
    #[serde(default = "default_karaka_order")]
    pub karaka_order: Vec<Role>,
    #[serde(default = "default_nonfinite_placement")]
    pub nonfinite_placement: NonfinitePlacement,
    #[serde(default = "default_appositive_placement")]
    pub appositive_placement: AppositivePlacement,
    #[serde(default = "all_rules")]
    pub enabled_rules: BTreeSet<EngineRule>,
}

fn default_karaka_order() -> Vec<Role> {
    Role::KARAKAS.to_vec()
}

fn default_nonfinite_placement() -> NonfinitePlacement {
    NonfinitePlacement::AfterKarakas
}

fn default_appositive_placement() -> AppositivePlacement {
    AppositivePlacement::AfterHead
}

fn all_rules() -> BTreeSet<EngineRule> {
    [
        EngineRule::Clause,
        EngineRule::Chunk,
        EngineRule::IntraOrder,
        EngineRule::Particle,
    ]
    .into_iter()
    .collect()
}

impl Default for RuleProfile {
    fn default() -> Self {
        RuleProfile {
            karaka_order: default_karaka_order(),
            nonfinite_placement: default_nonfinite_placement(),
            appositive_placement: default_appositive_placement(),
            enabled_rules: all_rules(),
        }
    }
}

impl RuleProfile {
    pub fn enabled(&self, rule: EngineRule) -> bool {
        self.enabled_rules.contains(&rule)
    }

    /// Check that `karaka_order` lists each of the five kāraka roles
    /// exactly once.
    pub fn validate(&self) -> Result<(), LinearizeError> {
        let set: BTreeSet<Role> = self.karaka_order.iter().copied().collect();
        let expected: BTreeSet<Role> = Role::KARAKAS.into_iter().collect();
        if self.karaka_order.len() != 5 || set != expected {
            return Err(LinearizeError::InvalidProfile {
                reason: format!(
                    "karaka_order must list the five kāraka roles exactly once, got {:?}",
                    self.karaka_order
                ),
            });
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical json form; recorded in reports and
    /// run manifests.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("profile serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

/// A headword together with the modifiers that travel with it.
/// `members` is the emission order; `head` is always among them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chunk {
    pub head: usize,
    pub members: Vec<usize>,
}

/// Linearization failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearizeError {
    #[error("invalid annotation: {0}")]
    InvalidAnnotation(#[from] AnnotationError),
    #[error("invalid rule profile: {reason}")]
    InvalidProfile { reason: String },
    #[error("modifier token {modifier} has head {head} in a different clause")]
    CrossClauseModifier { modifier: usize, head: usize },
    #[error("modifier token {modifier} is attached to particle {head}")]
    ModifierOfParticle { modifier: usize, head: usize },
    #[error("clause {clause_id:?} has two finite verbs flagged is-main-verb")]
    TwoMainVerbs { clause_id: String },
    #[error("particle token {token} has a root head")]
    ParticleAtRoot { token: usize },
    #[error("bad particle-placement input: {reason}")]
    BadParticleInput { reason: String },
}

/// Reorder a validated sentence into canonical prose order and return
/// the surface forms joined by single spaces. The output is always a
/// permutation of the input surface forms.
pub fn linearize(
    sentence: &AnnotatedSentence,
    profile: &RuleProfile,
) -> Result<String, LinearizeError> {
    Ok(linearize_indices(sentence, profile)?
        .into_iter()
        .map(|i| sentence.tokens[i].surface.as_str())
        .collect::<Vec<_>>()
        .join(" "))
}

/// As [`linearize`], but returning the token permutation.
pub fn linearize_indices(
    sentence: &AnnotatedSentence,
    profile: &RuleProfile,
) -> Result<Vec<usize>, LinearizeError> {
    sentence.validate()?;
    profile.validate()?;

    let clause_order: Vec<String> = if profile.enabled(EngineRule::Clause) {
        order_clauses(sentence)
    } else {
        sentence.clauses.iter().map(|c| c.clause_id.clone()).collect()
    };

    let chunks = build_chunks(sentence, profile)?;
    let mut order: Vec<usize> = Vec::with_capacity(sentence.tokens.len());
    for clause_id in &clause_order {
        let clause_chunks = chunks.get(clause_id).map(Vec::as_slice).unwrap_or(&[]);
        order.extend(order_clause(sentence, clause_chunks, profile)?);
    }

    if profile.enabled(EngineRule::Particle) {
        place_particles(&order, sentence)
    } else {
        Ok(order::restore_source_slots(&order, sentence))
    }
}
