//! Shared test support: a deterministic generator of valid annotated
//! sentences for property and acceptance suites.
//!
//! Sentences have up to 12 tokens in up to 3 clauses (exactly one main),
//! scrambled source order, and exercise argument roles, nested
//! modifiers, appositives, non-finite argument groups, particles,
//! quotative markers, and optional chronological ranks. Two deliberate
//! restrictions keep the stated output invariants checkable: particles
//! never attach to the main clause's flagged verb, to negations, or
//! inside vocative chunks, and a verb carries either adverbs or a single
//! negation, never both.

#![allow(dead_code)]

use std::collections::BTreeSet;

use anvaya_core::corpus::{
    AnnotatedSentence, AnnotatedToken, ClauseInfo, ClauseKind, Flag, Head, Role,
};

/// splitmix64: deterministic, seedable, dependency-free.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.wrapping_add(0x9E3779B97F4A7C15))
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n.max(1)
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

struct AbstractToken {
    role: Role,
    head: Option<usize>,
    clause: usize,
    flags: BTreeSet<Flag>,
}

/// Build one valid annotated sentence from a seed.
pub fn build_sentence(seed: u64) -> AnnotatedSentence {
    let mut rng = Rng::new(seed);
    let n_clauses = 1 + rng.below(3) as usize;
    let main_idx = rng.below(n_clauses as u64) as usize;
    let target = (4 + rng.below(9) as usize).max(n_clauses);
    let mut extra = target - n_clauses;

    let mut toks: Vec<AbstractToken> = Vec::new();
    let mut kinds: Vec<ClauseKind> = Vec::new();

    let mut push = |toks: &mut Vec<AbstractToken>,
                    role: Role,
                    head: Option<usize>,
                    clause: usize,
                    flags: BTreeSet<Flag>|
     -> usize {
        toks.push(AbstractToken {
            role,
            head,
            clause,
            flags,
        });
        toks.len() - 1
    };

    for ci in 0..n_clauses {
        let kind = if ci == main_idx {
            ClauseKind::Main
        } else {
            *rng.pick(&[
                ClauseKind::Relative,
                ClauseKind::Quotative,
                ClauseKind::Absolutive,
            ])
        };
        kinds.push(kind);

        let verb = if rng.chance(4, 5) {
            let mut flags = BTreeSet::new();
            if ci == main_idx || rng.chance(1, 2) {
                flags.insert(Flag::IsMainVerb);
            }
            Some(push(&mut toks, Role::FiniteVerb, None, ci, flags))
        } else {
            None
        };
        if verb.is_none() {
            push(&mut toks, Role::Other, None, ci, BTreeSet::new());
        }

        let arg_roles = [
            Role::Kartr,
            Role::Karman,
            Role::Karana,
            Role::Sampradana,
            Role::Apadana,
            Role::Adhikarana,
            Role::Sambodhya,
            Role::Other,
        ];
        let mut nouns = Vec::new();
        for _ in 0..rng.below(3) {
            if extra == 0 {
                break;
            }
            let role = *rng.pick(&arg_roles);
            let head = if role == Role::Sambodhya { None } else { verb };
            nouns.push(push(&mut toks, role, head, ci, BTreeSet::new()));
            extra -= 1;
        }

        if extra > 0 && rng.chance(1, 3) {
            let nf = push(&mut toks, Role::NonfiniteVerb, verb, ci, BTreeSet::new());
            extra -= 1;
            for _ in 0..rng.below(3) {
                if extra == 0 {
                    break;
                }
                let role = *rng.pick(&[Role::Karman, Role::Karana, Role::Sampradana]);
                nouns.push(push(&mut toks, role, Some(nf), ci, BTreeSet::new()));
                extra -= 1;
            }
            if extra > 0 && rng.chance(1, 4) {
                push(&mut toks, Role::Adverb, Some(nf), ci, BTreeSet::new());
                extra -= 1;
            }
        }

        for noun_pos in 0..nouns.len() {
            let nid = nouns[noun_pos];
            if extra > 0 && rng.chance(2, 5) {
                let role = *rng.pick(&[Role::Adjective, Role::GenitiveModifier]);
                let m = push(&mut toks, role, Some(nid), ci, BTreeSet::new());
                extra -= 1;
                if extra > 0 && rng.chance(1, 4) {
                    let nested = *rng.pick(&[Role::Adjective, Role::GenitiveModifier]);
                    push(&mut toks, nested, Some(m), ci, BTreeSet::new());
                    extra -= 1;
                }
            }
            if extra > 0 && toks[nid].role == Role::Kartr && rng.chance(1, 4) {
                push(&mut toks, Role::AppositiveOfKartr, Some(nid), ci, BTreeSet::new());
                extra -= 1;
            }
            if extra > 0 && toks[nid].role == Role::Karman && rng.chance(1, 4) {
                push(&mut toks, Role::AppositiveOfKarman, Some(nid), ci, BTreeSet::new());
                extra -= 1;
            }
        }

        if let Some(v) = verb {
            if extra > 0 {
                if rng.chance(1, 5) {
                    push(&mut toks, Role::Negation, Some(v), ci, BTreeSet::new());
                    extra -= 1;
                } else if rng.chance(1, 4) {
                    push(&mut toks, Role::Adverb, Some(v), ci, BTreeSet::new());
                    extra -= 1;
                    if extra > 0 && rng.chance(1, 3) {
                        push(&mut toks, Role::Adverb, Some(v), ci, BTreeSet::new());
                        extra -= 1;
                    }
                }
            }
        }

        if kind == ClauseKind::Quotative && extra > 0 && rng.chance(1, 2) {
            push(&mut toks, Role::QuotativeMarker, verb, ci, BTreeSet::new());
            extra -= 1;
        }

        // Particles last, over the clause's eligible heads.
        for _ in 0..2 {
            if extra == 0 || !rng.chance(1, 3) {
                continue;
            }
            let candidates: Vec<usize> = (0..toks.len())
                .filter(|t| toks[*t].clause == ci && particle_head_eligible(&toks, *t, ci == main_idx))
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let head = *rng.pick(&candidates);
            push(&mut toks, Role::Particle, Some(head), ci, BTreeSet::new());
            extra -= 1;
        }
    }

    // Optional full chronology, with the main clause concluding.
    let ranks: Vec<Option<i64>> = if n_clauses > 1 && rng.chance(1, 4) {
        let mut pool: Vec<i64> = (0..n_clauses as i64 - 1).collect();
        for i in (1..pool.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            pool.swap(i, j);
        }
        let mut ranks = vec![None; n_clauses];
        let mut next = 0;
        for (ci, rank) in ranks.iter_mut().enumerate() {
            if ci == main_idx {
                *rank = Some(n_clauses as i64 - 1);
            } else {
                *rank = Some(pool[next]);
                next += 1;
            }
        }
        ranks
    } else {
        vec![None; n_clauses]
    };

    // Scramble source order and remap heads.
    let n = toks.len();
    let mut slot_of: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        slot_of.swap(i, j);
    }
    let mut tokens: Vec<Option<AnnotatedToken>> = (0..n).map(|_| None).collect();
    for (abstract_id, tok) in toks.iter().enumerate() {
        let index = slot_of[abstract_id];
        tokens[index] = Some(AnnotatedToken {
            index,
            surface: format!("w{abstract_id}"),
            role: tok.role,
            head: match tok.head {
                Some(h) => Head::Index(slot_of[h]),
                None => Head::Root,
            },
            clause: format!("c{}", tok.clause),
            flags: tok.flags.clone(),
        });
    }

    AnnotatedSentence {
        tokens: tokens.into_iter().map(Option::unwrap).collect(),
        clauses: (0..n_clauses)
            .map(|ci| ClauseInfo {
                clause_id: format!("c{ci}"),
                kind: kinds[ci],
                order_rank: ranks[ci],
            })
            .collect(),
    }
}

/// Particle heads that keep the stated output invariants checkable.
fn particle_head_eligible(toks: &[AbstractToken], t: usize, is_main_clause: bool) -> bool {
    let tok = &toks[t];
    if matches!(tok.role, Role::Particle | Role::Negation) {
        return false;
    }
    if is_main_clause && tok.flags.contains(&Flag::IsMainVerb) {
        return false;
    }
    // Walk the modifier chain to the chunk head; vocative chunks stay
    // uninterrupted.
    let mut cur = t;
    loop {
        let c = &toks[cur];
        if !c.role.is_modifier() {
            return c.role != Role::Sambodhya;
        }
        match c.head {
            Some(h) => cur = h,
            None => return true,
        }
    }
}

/// Rebuild the sentence with tokens in `order`, heads remapped, and the
/// clause list in emitted order with ranks dropped.
pub fn reannotate_in_order(sentence: &AnnotatedSentence, order: &[usize]) -> AnnotatedSentence {
    let mut new_index = vec![0usize; sentence.tokens.len()];
    for (pos, old) in order.iter().enumerate() {
        new_index[*old] = pos;
    }
    let tokens: Vec<AnnotatedToken> = order
        .iter()
        .enumerate()
        .map(|(pos, old)| {
            let tok = &sentence.tokens[*old];
            AnnotatedToken {
                index: pos,
                surface: tok.surface.clone(),
                role: tok.role,
                head: match tok.head {
                    Head::Root => Head::Root,
                    Head::Index(h) => Head::Index(new_index[h]),
                },
                clause: tok.clause.clone(),
                flags: tok.flags.clone(),
            }
        })
        .collect();

    let mut clause_order: Vec<String> = Vec::new();
    for tok in &tokens {
        if !clause_order.contains(&tok.clause) {
            clause_order.push(tok.clause.clone());
        }
    }
    let clauses = clause_order
        .into_iter()
        .map(|clause_id| {
            let info = sentence
                .clauses
                .iter()
                .find(|c| c.clause_id == clause_id)
                .expect("clause exists");
            ClauseInfo {
                clause_id,
                kind: info.kind,
                order_rank: None,
            }
        })
        .collect();

    AnnotatedSentence { tokens, clauses }
}
