//! Verse–prose corpus records and their token-level annotations.
//!
//! A [`VerseRecord`] pairs one śloka with its reference prose and an
//! optional [`AnnotatedSentence`]: the pre-segmented word list of the
//! verse, each word carrying a syntactic role, a head link and a clause
//! id. The annotation is what the linearizer reorders; records without
//! one are still valid corpus entries for metric-only workflows.

mod loader;
mod stats;

pub use loader::{load_corpus, save_corpus, CorpusFormat};
pub use stats::{corpus_stats, CorpusStats};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::text::{is_iast_char, normalize_iast};

/// Syntactic role of one annotated token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// Vocative, the addressed party.
    Sambodhya,
    /// Agent / subject.
    Kartr,
    /// Patient / object (accusative).
    Karman,
    /// Instrumental.
    Karana,
    /// Dative.
    Sampradana,
    /// Ablative.
    Apadana,
    /// Locative.
    Adhikarana,
    GenitiveModifier,
    Adjective,
    Adverb,
    Negation,
    AppositiveOfKartr,
    AppositiveOfKarman,
    /// Indeclinable particle (ca, api, tu, eva, hi, ...).
    Particle,
    NonfiniteVerb,
    FiniteVerb,
    /// The quotative `iti`, closing reported speech.
    QuotativeMarker,
    Other,
}

impl Role {
    /// The five kāraka roles, in the default canonical sequence
    /// (locative, ablative, dative, instrumental, accusative).
    pub const KARAKAS: [Role; 5] = [
        Role::Adhikarana,
        Role::Apadana,
        Role::Sampradana,
        Role::Karana,
        Role::Karman,
    ];

    /// Roles that attach to a headword and travel with it as one chunk.
    pub fn is_modifier(self) -> bool {
        matches!(
            self,
            Role::Adjective
                | Role::GenitiveModifier
                | Role::Adverb
                | Role::Negation
                | Role::AppositiveOfKartr
                | Role::AppositiveOfKarman
        )
    }

    pub fn is_appositive(self) -> bool {
        matches!(self, Role::AppositiveOfKartr | Role::AppositiveOfKarman)
    }

    /// Roles that require a non-root head link.
    pub fn requires_head(self) -> bool {
        self.is_modifier() || self == Role::Particle
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string(self).expect("role serializes");
        write!(f, "{}", s.trim_matches('"'))
    }
}

/// Head link of a token: the index of its governing token, or `root`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Head {
    Root,
    Index(usize),
}

impl Head {
    pub fn index(self) -> Option<usize> {
        match self {
            Head::Root => None,
            Head::Index(i) => Some(i),
        }
    }
}

impl Serialize for Head {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Head::Root => ser.serialize_str("root"),
            Head::Index(i) => ser.serialize_u64(*i as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Head {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Index(usize),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Index(i) => Ok(Head::Index(i)),
            Raw::Text(s) if s == "root" => Ok(Head::Root),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "head must be an index or \"root\", got {s:?}"
            ))),
        }
    }
}

/// Per-token flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    IsRelativePronoun,
    IsMainVerb,
}

/// One pre-segmented IAST word with its syntactic annotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedToken {
    /// 0-based position in the segmented verse.
    pub index: usize,
    pub surface: String,
    pub role: Role,
    pub head: Head,
    /// Clause identifier; must appear in the sentence's clause list.
    pub clause: String,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub flags: BTreeSet<Flag>,
}

impl AnnotatedToken {
    pub fn is_main_verb(&self) -> bool {
        self.role == Role::FiniteVerb && self.flags.contains(&Flag::IsMainVerb)
    }
}

/// Kind of one clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClauseKind {
    Main,
    Relative,
    Quotative,
    Absolutive,
}

/// Clause metadata. The order of `ClauseInfo` entries in the sentence's
/// clause list is the clause-level source order used for tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseInfo {
    pub clause_id: String,
    pub kind: ClauseKind,
    /// Chronological position, when known. If every clause carries a
    /// rank, clause order follows the ranks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_rank: Option<i64>,
}

/// The full annotation of one sentence: its tokens and its clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedSentence {
    pub tokens: Vec<AnnotatedToken>,
    pub clauses: Vec<ClauseInfo>,
}

impl AnnotatedSentence {
    /// Check every structural invariant; returns the first violation.
    ///
    /// Beyond the per-field constraints this enforces global acyclicity of
    /// the head links (the within-clause forest requirement follows), so
    /// downstream traversals are total, and restricts quotative markers to
    /// quotative clauses, which keeps the main verb final.
    pub fn validate(&self) -> Result<(), AnnotationError> {
        let n = self.tokens.len();
        for (pos, tok) in self.tokens.iter().enumerate() {
            if tok.index != pos {
                return Err(AnnotationError::BadIndex {
                    position: pos,
                    index: tok.index,
                });
            }
            if let Head::Index(h) = tok.head {
                if h == tok.index {
                    return Err(AnnotationError::SelfHead { token: tok.index });
                }
                if h >= n {
                    return Err(AnnotationError::HeadOutOfRange {
                        token: tok.index,
                        head: h,
                    });
                }
            } else if tok.role.requires_head() {
                return Err(AnnotationError::RootHead {
                    token: tok.index,
                    role: tok.role,
                });
            }
        }

        let mut clause_ids = BTreeSet::new();
        let mut mains = 0usize;
        let mut ranks = BTreeSet::new();
        for clause in &self.clauses {
            if !clause_ids.insert(clause.clause_id.as_str()) {
                return Err(AnnotationError::DuplicateClause {
                    clause_id: clause.clause_id.clone(),
                });
            }
            if clause.kind == ClauseKind::Main {
                mains += 1;
            }
            if let Some(rank) = clause.order_rank {
                if !ranks.insert(rank) {
                    return Err(AnnotationError::DuplicateRank { rank });
                }
            }
        }
        if mains != 1 {
            return Err(AnnotationError::MainClauseCount { count: mains });
        }

        let kind_of: BTreeMap<&str, ClauseKind> = self
            .clauses
            .iter()
            .map(|c| (c.clause_id.as_str(), c.kind))
            .collect();
        let mut main_verbs: BTreeMap<&str, usize> = BTreeMap::new();
        for tok in &self.tokens {
            let Some(kind) = kind_of.get(tok.clause.as_str()) else {
                return Err(AnnotationError::UnknownClause {
                    token: tok.index,
                    clause_id: tok.clause.clone(),
                });
            };
            if tok.is_main_verb() {
                let count = main_verbs.entry(tok.clause.as_str()).or_insert(0);
                *count += 1;
                if *count > 1 {
                    return Err(AnnotationError::TwoMainVerbs {
                        clause_id: tok.clause.clone(),
                    });
                }
            }
            if tok.role == Role::QuotativeMarker && *kind != ClauseKind::Quotative {
                return Err(AnnotationError::QuotativeMarkerOutsideQuote { token: tok.index });
            }
        }

        // Head links must be acyclic.
        for start in 0..n {
            let mut seen = vec![false; n];
            let mut cur = start;
            while let Head::Index(h) = self.tokens[cur].head {
                if seen[h] {
                    return Err(AnnotationError::HeadCycle { token: start });
                }
                seen[h] = true;
                cur = h;
            }
        }
        Ok(())
    }

    /// Token indices of one clause, in source order.
    pub fn clause_tokens(&self, clause_id: &str) -> Vec<usize> {
        self.tokens
            .iter()
            .filter(|t| t.clause == clause_id)
            .map(|t| t.index)
            .collect()
    }
}

/// Violation of an [`AnnotatedSentence`] invariant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnnotationError {
    #[error("token at position {position} has index {index}; indices must be 0..n-1 in order")]
    BadIndex { position: usize, index: usize },
    #[error("token {token} is its own head")]
    SelfHead { token: usize },
    #[error("token {token} has out-of-range head {head}")]
    HeadOutOfRange { token: usize, head: usize },
    #[error("token {token} with role {role} must have a non-root head")]
    RootHead { token: usize, role: Role },
    #[error("head links of token {token} form a cycle")]
    HeadCycle { token: usize },
    #[error("duplicate clause id {clause_id:?}")]
    DuplicateClause { clause_id: String },
    #[error("duplicate order_rank {rank}")]
    DuplicateRank { rank: i64 },
    #[error("sentence has {count} main clauses; exactly one required")]
    MainClauseCount { count: usize },
    #[error("token {token} references unknown clause {clause_id:?}")]
    UnknownClause { token: usize, clause_id: String },
    #[error("clause {clause_id:?} has two finite verbs flagged is-main-verb")]
    TwoMainVerbs { clause_id: String },
    #[error("token {token} is a quotative marker outside a quotative clause")]
    QuotativeMarkerOutsideQuote { token: usize },
}

/// One corpus record: a verse, its reference prose (absent for
/// prediction-only records), the corpus it came from, and the optional
/// annotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerseRecord {
    pub id: String,
    pub verse: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prose: Option<String>,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<AnnotatedSentence>,
}

impl VerseRecord {
    /// Normalize all text fields and check the record invariants.
    pub fn normalize_and_validate(&mut self) -> Result<(), RecordError> {
        self.verse = normalize_iast(&self.verse);
        if self.verse.is_empty() {
            return Err(RecordError::EmptyVerse {
                id: self.id.clone(),
            });
        }
        check_iast(&self.id, "verse", &self.verse)?;
        if let Some(prose) = &self.prose {
            let prose = normalize_iast(prose);
            if prose.is_empty() {
                self.prose = None;
            } else {
                check_iast(&self.id, "prose", &prose)?;
                self.prose = Some(prose);
            }
        }
        if let Some(annotation) = &mut self.annotation {
            for tok in &mut annotation.tokens {
                tok.surface = normalize_iast(&tok.surface);
                check_iast(&self.id, "annotation surface", &tok.surface)?;
            }
            annotation
                .validate()
                .map_err(|source| RecordError::BadAnnotation {
                    id: self.id.clone(),
                    source,
                })?;
        }
        Ok(())
    }
}

fn check_iast(id: &str, field: &'static str, text: &str) -> Result<(), RecordError> {
    match validate_iast(text) {
        IastValidation::Ok => Ok(()),
        IastValidation::Invalid(offending) => {
            let (position, character) = offending[0];
            Err(RecordError::InvalidIast {
                id: id.to_string(),
                field,
                character,
                position,
            })
        }
    }
}

/// Record-level validation failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("record {id:?}: verse is empty after whitespace normalization")]
    EmptyVerse { id: String },
    #[error("record {id:?}: {field} contains non-IAST character {character:?} at position {position}")]
    InvalidIast {
        id: String,
        field: &'static str,
        character: char,
        position: usize,
    },
    #[error("record {id:?}: invalid annotation: {source}")]
    BadAnnotation {
        id: String,
        source: AnnotationError,
    },
}

/// Result of [`validate_iast`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IastValidation {
    Ok,
    /// Offending characters as (char position in the normalized text, char).
    Invalid(Vec<(usize, char)>),
}

impl IastValidation {
    pub fn is_ok(&self) -> bool {
        matches!(self, IastValidation::Ok)
    }
}

/// Check that every non-whitespace character of `text` (after
/// normalization) belongs to the accepted IAST repertoire. Positions in
/// the result are char offsets into the normalized text.
pub fn validate_iast(text: &str) -> IastValidation {
    let normalized = normalize_iast(text);
    let offending: Vec<(usize, char)> = normalized
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace() && !is_iast_char(*c))
        .collect();
    if offending.is_empty() {
        IastValidation::Ok
    } else {
        IastValidation::Invalid(offending)
    }
}
