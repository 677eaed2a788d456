//! Prediction-file records: `{id, prose_pred}` jsonl, optionally with
//! human-adjudicated rule outcomes.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PredRecord {
    pub id: String,
    pub prose_pred: String,
    /// Adjudicated passing rules (1..=5), when a human scored them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<u8>>,
}

pub fn load_predictions(path: &Path) -> anyhow::Result<Vec<PredRecord>> {
    let file = std::fs::File::open(path)
        .with_context(|| format!("cannot read predictions {}", path.display()))?;
    let mut records = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: PredRecord = serde_json::from_str(&line)
            .with_context(|| format!("{}:{}: malformed prediction", path.display(), lineno + 1))?;
        records.push(record);
    }
    Ok(records)
}

pub fn write_predictions(records: &[PredRecord], path: &Path) -> anyhow::Result<()> {
    let mut out = std::fs::File::create(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    for record in records {
        writeln!(out, "{}", serde_json::to_string(record)?)?;
    }
    Ok(())
}
