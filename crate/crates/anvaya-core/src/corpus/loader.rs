//! Corpus file loading and saving.
//!
//! The native format is jsonl: one `VerseRecord` object per line. A
//! three-column tsv (`id<TAB>verse<TAB>prose`, UTF-8, no header) is
//! accepted as a fallback; tsv records take the file stem as their
//! source label and carry no annotation.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{RecordError, VerseRecord};

/// Supported corpus file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Jsonl,
    Tsv,
}

impl std::str::FromStr for CorpusFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "tsv" => Ok(CorpusFormat::Tsv),
            other => Err(format!("unknown corpus format {other:?} (expected jsonl or tsv)")),
        }
    }
}

/// Corpus loading failure, carrying the offending line where applicable.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed line: {reason}")]
    MalformedLine {
        path: String,
        line: usize,
        reason: String,
    },
    #[error("{path}:{line}: duplicate record id {id:?}")]
    DuplicateId {
        path: String,
        line: usize,
        id: String,
    },
    #[error("{path}:{line}: {source}")]
    BadRecord {
        path: String,
        line: usize,
        source: RecordError,
    },
}

/// Load a corpus file, normalizing and validating every record.
/// Records are returned in file order.
pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Vec<VerseRecord>, LoadError> {
    let path = path.as_ref();
    let path_str = path.display().to_string();
    let file = File::open(path).map_err(|source| LoadError::Io {
        path: path_str.clone(),
        source,
    })?;
    let reader = BufReader::new(file);
    let source_label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "unknown".to_string());

    let mut records = Vec::new();
    let mut seen_ids = BTreeSet::new();
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|source| LoadError::Io {
            path: path_str.clone(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let mut record = match format {
            CorpusFormat::Jsonl => {
                serde_json::from_str::<VerseRecord>(&line).map_err(|e| LoadError::MalformedLine {
                    path: path_str.clone(),
                    line: lineno,
                    reason: e.to_string(),
                })?
            }
            CorpusFormat::Tsv => parse_tsv_line(&line, &source_label).map_err(|reason| {
                LoadError::MalformedLine {
                    path: path_str.clone(),
                    line: lineno,
                    reason,
                }
            })?,
        };
        record
            .normalize_and_validate()
            .map_err(|source| LoadError::BadRecord {
                path: path_str.clone(),
                line: lineno,
                source,
            })?;
        if !seen_ids.insert(record.id.clone()) {
            return Err(LoadError::DuplicateId {
                path: path_str.clone(),
                line: lineno,
                id: record.id.clone(),
            });
        }
        records.push(record);
    }
    Ok(records)
}

fn parse_tsv_line(line: &str, source: &str) -> Result<VerseRecord, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 3 {
        return Err(format!("expected 3 tab-separated fields, got {}", fields.len()));
    }
    let prose = fields[2].trim();
    Ok(VerseRecord {
        id: fields[0].to_string(),
        verse: fields[1].to_string(),
        prose: if prose.is_empty() {
            None
        } else {
            Some(prose.to_string())
        },
        source: source.to_string(),
        annotation: None,
    })
}

/// Serialize records back to jsonl. Field order is stable, so a loaded
/// corpus saved and reloaded compares equal field-by-field.
pub fn save_corpus(records: &[VerseRecord], mut out: impl Write) -> std::io::Result<()> {
    for record in records {
        let line = serde_json::to_string(record).expect("record serializes");
        writeln!(out, "{line}")?;
    }
    Ok(())
}
