//! Clause ordering and particle placement.

use crate::corpus::{AnnotatedSentence, ClauseKind, Head, Role};

use super::LinearizeError;

/// Canonical clause order.
///
/// When every clause carries an `order_rank` the ranks decide (they are
/// the chronology). Otherwise all non-main clauses keep their mutual
/// order from the clause list and the main clause goes last, so its
/// finite verb concludes the sentence.
pub fn order_clauses(sentence: &AnnotatedSentence) -> Vec<String> {
    let mut clauses: Vec<(usize, &crate::corpus::ClauseInfo)> =
        sentence.clauses.iter().enumerate().collect();
    if !sentence.clauses.is_empty() && sentence.clauses.iter().all(|c| c.order_rank.is_some()) {
        clauses.sort_by_key(|(pos, c)| (c.order_rank.unwrap(), *pos));
    } else {
        clauses.sort_by_key(|(pos, c)| (c.kind == ClauseKind::Main, *pos));
    }
    clauses.into_iter().map(|(_, c)| c.clause_id.clone()).collect()
}

/// Insert every particle immediately after its parent word, following
/// any particle already attached to the same parent; particles keep
/// source order among themselves. `order` must contain every
/// non-particle token exactly once.
pub fn place_particles(
    order: &[usize],
    sentence: &AnnotatedSentence,
) -> Result<Vec<usize>, LinearizeError> {
    let non_particles: Vec<usize> = sentence
        .tokens
        .iter()
        .filter(|t| t.role != Role::Particle)
        .map(|t| t.index)
        .collect();
    {
        let mut given: Vec<usize> = order.to_vec();
        given.sort_unstable();
        let mut expected = non_particles.clone();
        expected.sort_unstable();
        if given != expected {
            return Err(LinearizeError::BadParticleInput {
                reason: "input order must contain every non-particle token exactly once".into(),
            });
        }
    }

    let mut out: Vec<usize> = order.to_vec();
    let mut pending: Vec<usize> = sentence
        .tokens
        .iter()
        .filter(|t| t.role == Role::Particle)
        .map(|t| t.index)
        .collect();

    while !pending.is_empty() {
        let mut progressed = false;
        let mut still_pending = Vec::new();
        for particle in pending {
            let head = match sentence.tokens[particle].head {
                Head::Index(h) => h,
                Head::Root => return Err(LinearizeError::ParticleAtRoot { token: particle }),
            };
            let Some(head_pos) = out.iter().position(|i| *i == head) else {
                // Head is a particle not yet placed; retry next round.
                still_pending.push(particle);
                continue;
            };
            let mut at = head_pos + 1;
            while at < out.len()
                && sentence.tokens[out[at]].role == Role::Particle
                && sentence.tokens[out[at]].head == Head::Index(head)
            {
                at += 1;
            }
            out.insert(at, particle);
            progressed = true;
        }
        if !progressed {
            return Err(LinearizeError::BadParticleInput {
                reason: "particle head chain never reaches a placed token".into(),
            });
        }
        pending = still_pending;
    }
    Ok(out)
}

/// Fallback used when `R-particle` is disabled: each particle returns to
/// its source slot, counted in non-particle tokens — a particle that had
/// k non-particle predecessors in the source ends up after the k-th
/// non-particle token of the output.
pub(super) fn restore_source_slots(order: &[usize], sentence: &AnnotatedSentence) -> Vec<usize> {
    let mut out: Vec<usize> = order.to_vec();
    let particles: Vec<usize> = sentence
        .tokens
        .iter()
        .filter(|t| t.role == Role::Particle)
        .map(|t| t.index)
        .collect();
    for particle in particles {
        let slot = sentence.tokens[..particle]
            .iter()
            .filter(|t| t.role != Role::Particle)
            .count();
        let mut seen = 0usize;
        let mut at = 0usize;
        while at < out.len() && seen < slot {
            if sentence.tokens[out[at]].role != Role::Particle {
                seen += 1;
            }
            at += 1;
        }
        while at < out.len() && sentence.tokens[out[at]].role == Role::Particle {
            at += 1;
        }
        out.insert(at, particle);
    }
    out
}
