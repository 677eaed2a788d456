//! Corpus summary statistics.

use std::collections::BTreeMap;

use serde::Serialize;

use super::VerseRecord;

/// Summary of a record collection: counts per source, how many records
/// carry annotations and reference prose, and mean token counts (tokens =
/// whitespace-separated words of the normalized text).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub records: usize,
    pub per_source: BTreeMap<String, usize>,
    pub annotated: usize,
    pub with_prose: usize,
    pub mean_verse_tokens: f64,
    /// Mean over prose-bearing records only; 0 when there are none.
    pub mean_prose_tokens: f64,
}

pub fn corpus_stats(records: &[VerseRecord]) -> CorpusStats {
    let mut per_source: BTreeMap<String, usize> = BTreeMap::new();
    let mut annotated = 0;
    let mut with_prose = 0;
    let mut verse_tokens = 0usize;
    let mut prose_tokens = 0usize;
    for record in records {
        *per_source.entry(record.source.clone()).or_insert(0) += 1;
        if record.annotation.is_some() {
            annotated += 1;
        }
        verse_tokens += record.verse.split_whitespace().count();
        if let Some(prose) = &record.prose {
            with_prose += 1;
            prose_tokens += prose.split_whitespace().count();
        }
    }
    let records_n = records.len();
    CorpusStats {
        records: records_n,
        per_source,
        annotated,
        with_prose,
        mean_verse_tokens: if records_n == 0 {
            0.0
        } else {
            verse_tokens as f64 / records_n as f64
        },
        mean_prose_tokens: if with_prose == 0 {
            0.0
        } else {
            prose_tokens as f64 / with_prose as f64
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, source: &str, verse: &str) -> VerseRecord {
        VerseRecord {
            id: id.into(),
            verse: verse.into(),
            prose: None,
            source: source.into(),
            annotation: None,
        }
    }

    #[test]
    fn counts_per_source() {
        let records = vec![
            record("1", "ramayana", "a b"),
            record("2", "ramayana", "c"),
            record("3", "ramayana", "d e f"),
        ];
        let stats = corpus_stats(&records);
        assert_eq!(stats.per_source.get("ramayana"), Some(&3));
        assert_eq!(stats.records, 3);
        assert_eq!(stats.mean_verse_tokens, 2.0);
    }

    #[test]
    fn empty_input_all_zero() {
        let stats = corpus_stats(&[]);
        assert_eq!(stats.records, 0);
        assert!(stats.per_source.is_empty());
        assert_eq!(stats.annotated, 0);
        assert_eq!(stats.mean_verse_tokens, 0.0);
    }

    #[test]
    fn mixed_sources_counted_by_hand() {
        // Hand enumeration: a appears twice, b once.
        let records = vec![
            record("1", "a", "x"),
            record("2", "b", "y"),
            record("3", "a", "z"),
        ];
        let stats = corpus_stats(&records);
        assert_eq!(stats.per_source.get("a"), Some(&2));
        assert_eq!(stats.per_source.get("b"), Some(&1));
    }

    #[test]
    fn permutation_invariant() {
        let mut records = vec![
            record("1", "a", "x q"),
            record("2", "b", "y"),
            record("3", "a", "z w v"),
        ];
        let forward = corpus_stats(&records);
        records.reverse();
        assert_eq!(forward, corpus_stats(&records));
    }
}
