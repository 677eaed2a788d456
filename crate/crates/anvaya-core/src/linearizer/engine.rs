//! Chunk construction and intra-clause band ordering.

use std::collections::BTreeMap;

use crate::corpus::{AnnotatedSentence, Head, Role};

use super::{
    AppositivePlacement, Chunk, EngineRule, LinearizeError, NonfinitePlacement, RuleProfile,
};

/// Positional class of a clause-level unit. The concrete ordinal of each
/// band depends on the profile's kāraka order and non-finite placement;
/// see [`band_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Band {
    Vocative,
    Kartr,
    Karaka(Role),
    Nonfinite,
    Leftover,
    Finite,
    Quotative,
}

/// The band emission order mandated by the profile.
fn band_sequence(profile: &RuleProfile) -> Vec<Band> {
    let mut seq = vec![Band::Vocative, Band::Kartr];
    match profile.nonfinite_placement {
        NonfinitePlacement::BeforeKarman => {
            for role in &profile.karaka_order {
                if *role == Role::Karman {
                    seq.push(Band::Nonfinite);
                }
                seq.push(Band::Karaka(*role));
            }
        }
        NonfinitePlacement::AfterKarakas => {
            seq.extend(profile.karaka_order.iter().map(|r| Band::Karaka(*r)));
            seq.push(Band::Nonfinite);
        }
    }
    seq.extend([Band::Leftover, Band::Finite, Band::Quotative]);
    seq
}

fn band_of_role(role: Role) -> Band {
    match role {
        Role::Sambodhya => Band::Vocative,
        Role::Kartr => Band::Kartr,
        Role::Karman | Role::Karana | Role::Sampradana | Role::Apadana | Role::Adhikarana => {
            Band::Karaka(role)
        }
        Role::NonfiniteVerb => Band::Nonfinite,
        Role::FiniteVerb => Band::Finite,
        Role::QuotativeMarker => Band::Quotative,
        // Modifier roles only reach banding as singleton chunks when
        // chunking is disabled; they have no positional class of their own.
        _ => Band::Leftover,
    }
}

/// Group modifiers with their headwords, per clause.
///
/// Every non-particle token of a clause lands in exactly one chunk.
/// Sibling modifiers keep source order; a modifier of a modifier is
/// emitted directly before its own headword, recursively. Appositives
/// follow the headword (or directly precede it, per the profile).
/// With `R-chunk` disabled every non-particle token is its own chunk.
pub fn build_chunks(
    sentence: &AnnotatedSentence,
    profile: &RuleProfile,
) -> Result<BTreeMap<String, Vec<Chunk>>, LinearizeError> {
    let mut out: BTreeMap<String, Vec<Chunk>> = BTreeMap::new();
    for clause in &sentence.clauses {
        out.insert(clause.clause_id.clone(), Vec::new());
    }

    if !profile.enabled(EngineRule::Chunk) {
        for tok in &sentence.tokens {
            if tok.role == Role::Particle {
                continue;
            }
            if let Some(chunks) = out.get_mut(&tok.clause) {
                chunks.push(Chunk {
                    head: tok.index,
                    members: vec![tok.index],
                });
            }
        }
        return Ok(out);
    }

    // Direct modifier children of each token, in source order.
    let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for tok in &sentence.tokens {
        if !tok.role.is_modifier() {
            continue;
        }
        let head = match tok.head {
            Head::Index(h) => h,
            Head::Root => unreachable!("validated: modifiers have non-root heads"),
        };
        let head_tok = &sentence.tokens[head];
        if head_tok.clause != tok.clause {
            return Err(LinearizeError::CrossClauseModifier {
                modifier: tok.index,
                head,
            });
        }
        if head_tok.role == Role::Particle {
            return Err(LinearizeError::ModifierOfParticle {
                modifier: tok.index,
                head,
            });
        }
        children.entry(head).or_default().push(tok.index);
    }

    for tok in &sentence.tokens {
        if tok.role == Role::Particle || tok.role.is_modifier() {
            continue;
        }
        let mut members = Vec::new();
        emit_subtree(sentence, &children, profile.appositive_placement, tok.index, &mut members);
        if let Some(chunks) = out.get_mut(&tok.clause) {
            chunks.push(Chunk {
                head: tok.index,
                members,
            });
        }
    }
    Ok(out)
}

fn emit_subtree(
    sentence: &AnnotatedSentence,
    children: &BTreeMap<usize, Vec<usize>>,
    appositives: AppositivePlacement,
    node: usize,
    out: &mut Vec<usize>,
) {
    let kids = children.get(&node).map(Vec::as_slice).unwrap_or(&[]);
    let pre: Vec<usize> = kids
        .iter()
        .copied()
        .filter(|k| !sentence.tokens[*k].role.is_appositive())
        .collect();
    let post: Vec<usize> = kids
        .iter()
        .copied()
        .filter(|k| sentence.tokens[*k].role.is_appositive())
        .collect();
    for kid in &pre {
        emit_subtree(sentence, children, appositives, *kid, out);
    }
    if appositives == AppositivePlacement::BeforeHead {
        for kid in &post {
            emit_subtree(sentence, children, appositives, *kid, out);
        }
        out.push(node);
    } else {
        out.push(node);
        for kid in &post {
            emit_subtree(sentence, children, appositives, *kid, out);
        }
    }
}

/// One orderable unit of a clause: a bare chunk, or a non-finite verb
/// group carrying its argument units.
enum Unit {
    Chunk(Chunk),
    Group {
        head_chunk: Chunk,
        members: Vec<Unit>,
    },
}

impl Unit {
    fn anchor(&self) -> usize {
        match self {
            Unit::Chunk(c) => c.head,
            Unit::Group { head_chunk, .. } => head_chunk.head,
        }
    }

    fn band(&self, sentence: &AnnotatedSentence) -> Band {
        match self {
            Unit::Chunk(c) => band_of_role(sentence.tokens[c.head].role),
            Unit::Group { .. } => Band::Nonfinite,
        }
    }

    fn flatten(self, sentence: &AnnotatedSentence, seq: &[Band], out: &mut Vec<usize>) {
        match self {
            Unit::Chunk(c) => out.extend(c.members),
            Unit::Group {
                head_chunk,
                members,
            } => {
                for unit in sort_units(members, sentence, seq) {
                    unit.flatten(sentence, seq, out);
                }
                out.extend(head_chunk.members);
            }
        }
    }
}

fn ordinal(seq: &[Band], band: Band) -> usize {
    seq.iter().position(|b| *b == band).unwrap_or(seq.len())
}

fn sort_units(mut units: Vec<Unit>, sentence: &AnnotatedSentence, seq: &[Band]) -> Vec<Unit> {
    units.sort_by_key(|u| (ordinal(seq, u.band(sentence)), u.anchor()));
    units
}

/// Emit one clause's chunks in canonical order.
///
/// The order is: vocative chunks, the agent chunk, kāraka chunks in the
/// profile's sequence, non-finite verb groups (each group is its
/// arguments, banded recursively, then the verb), leftover chunks in
/// source order, the finite-verb chunk, and finally any quotative
/// marker. Within a band, chunks keep source order. With
/// `R-intra-order` disabled the chunks are emitted in source order and
/// no argument grouping happens.
pub fn order_clause(
    sentence: &AnnotatedSentence,
    chunks: &[Chunk],
    profile: &RuleProfile,
) -> Result<Vec<usize>, LinearizeError> {
    if chunks.is_empty() {
        return Ok(Vec::new());
    }

    let mut flagged_mains = 0;
    for chunk in chunks {
        for member in &chunk.members {
            if sentence.tokens[*member].is_main_verb() {
                flagged_mains += 1;
            }
        }
    }
    if flagged_mains > 1 {
        return Err(LinearizeError::TwoMainVerbs {
            clause_id: sentence.tokens[chunks[0].head].clause.clone(),
        });
    }

    if !profile.enabled(EngineRule::IntraOrder) {
        let mut sorted: Vec<&Chunk> = chunks.iter().collect();
        sorted.sort_by_key(|c| c.head);
        return Ok(sorted.iter().flat_map(|c| c.members.iter().copied()).collect());
    }

    // Attach each chunk to the non-finite verb governing its head, when
    // that verb sits in the same clause; everything else is clause-level.
    let clause_id = &sentence.tokens[chunks[0].head].clause;
    let is_clause_nonfinite = |idx: usize| {
        let tok = &sentence.tokens[idx];
        tok.role == Role::NonfiniteVerb && tok.clause == *clause_id
    };
    let parent_of = |chunk: &Chunk| -> Option<usize> {
        match sentence.tokens[chunk.head].head {
            Head::Index(h) if is_clause_nonfinite(h) && h != chunk.head => Some(h),
            _ => None,
        }
    };

    let mut dependents: BTreeMap<usize, Vec<Chunk>> = BTreeMap::new();
    let mut top_chunks: Vec<Chunk> = Vec::new();
    for chunk in chunks {
        match parent_of(chunk) {
            Some(parent) => dependents.entry(parent).or_default().push(chunk.clone()),
            None => top_chunks.push(chunk.clone()),
        }
    }

    fn into_unit(chunk: Chunk, sentence: &AnnotatedSentence, dependents: &mut BTreeMap<usize, Vec<Chunk>>) -> Unit {
        if sentence.tokens[chunk.head].role == Role::NonfiniteVerb {
            let members = dependents
                .remove(&chunk.head)
                .unwrap_or_default()
                .into_iter()
                .map(|c| into_unit(c, sentence, dependents))
                .collect();
            Unit::Group {
                head_chunk: chunk,
                members,
            }
        } else {
            Unit::Chunk(chunk)
        }
    }

    let units: Vec<Unit> = top_chunks
        .into_iter()
        .map(|c| into_unit(c, sentence, &mut dependents))
        .collect();
    // Chunks whose governing non-finite verb never became a group head
    // (can only happen on hand-built chunk lists) fall back to top level.
    let mut units = units;
    for (_, orphans) in std::mem::take(&mut dependents) {
        units.extend(orphans.into_iter().map(Unit::Chunk));
    }

    let seq = band_sequence(profile);
    let mut out = Vec::new();
    for unit in sort_units(units, sentence, &seq) {
        unit.flatten(sentence, &seq, &mut out);
    }
    Ok(out)
}

/// Band ordinal of every non-modifier, non-particle token: the position
/// its top-level clause unit is emitted at. This is the layout the
/// compliance scorer checks hypotheses against.
pub fn assign_bands(
    sentence: &AnnotatedSentence,
    profile: &RuleProfile,
) -> Result<BTreeMap<usize, usize>, LinearizeError> {
    profile.validate()?;
    let seq = band_sequence(profile);
    let chunks = build_chunks(sentence, profile)?;
    let mut bands = BTreeMap::new();
    for clause in &sentence.clauses {
        let clause_chunks = chunks.get(&clause.clause_id).map(Vec::as_slice).unwrap_or(&[]);
        for chunk in clause_chunks {
            let tok = &sentence.tokens[chunk.head];
            // A chunk inside a non-finite group shares the group's band.
            let mut cursor = chunk.head;
            let band = loop {
                match sentence.tokens[cursor].head {
                    Head::Index(h)
                        if sentence.tokens[h].role == Role::NonfiniteVerb
                            && sentence.tokens[h].clause == tok.clause =>
                    {
                        cursor = h;
                    }
                    _ => {
                        break if cursor == chunk.head {
                            band_of_role(tok.role)
                        } else {
                            Band::Nonfinite
                        }
                    }
                }
            };
            bands.insert(chunk.head, ordinal(&seq, band));
        }
    }
    Ok(bands)
}
