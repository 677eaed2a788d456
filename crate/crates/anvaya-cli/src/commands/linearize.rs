//! `anvaya linearize`: canonical prose for every annotated record.

use std::path::PathBuf;

use anyhow::Context;
use clap::Parser;
use rayon::prelude::*;

use anvaya_core::corpus::load_corpus;
use anvaya_core::linearizer::linearize;

use crate::config::{self, FileConfig};
use crate::manifest::RunManifest;
use crate::records::{write_predictions, PredRecord};
use crate::RunOutcome;

#[derive(Parser)]
pub struct Args {
    /// Corpus file with annotated records.
    #[arg(long)]
    pub input: PathBuf,
    /// Output jsonl of {id, prose_pred}.
    #[arg(long)]
    pub output: PathBuf,
    /// Rule-profile json; built-in defaults when absent.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    #[arg(long, value_parser = ["jsonl", "tsv"])]
    pub format: Option<String>,
    /// Worker threads for per-record processing.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub fn run(args: Args) -> anyhow::Result<RunOutcome> {
    let file_config = FileConfig::load(args.config.as_deref())?;
    let format = config::resolve_format(args.format.as_deref(), &file_config)?;
    let (profile, profile_path) = config::resolve_profile(args.profile.as_deref(), &file_config)?;
    let jobs = config::resolve_jobs(args.jobs, &file_config);

    let records = load_corpus(&args.input, format)
        .with_context(|| format!("loading {}", args.input.display()))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("building worker pool")?;
    // Output stays in input order regardless of completion order.
    let results: Vec<(String, Result<String, String>)> = pool.install(|| {
        records
            .par_iter()
            .map(|record| {
                let outcome = match &record.annotation {
                    None => Err("record carries no annotation".to_string()),
                    Some(annotation) => {
                        linearize(annotation, &profile).map_err(|e| e.to_string())
                    }
                };
                (record.id.clone(), outcome)
            })
            .collect()
    });

    let mut predictions = Vec::new();
    let mut failures = 0usize;
    for (id, outcome) in results {
        match outcome {
            Ok(prose_pred) => predictions.push(PredRecord {
                id,
                prose_pred,
                rules: None,
            }),
            Err(reason) => {
                failures += 1;
                eprintln!("failed {id}: {reason}");
            }
        }
    }
    write_predictions(&predictions, &args.output)?;
    println!("processed {} records, {} failed", predictions.len(), failures);

    let manifest = RunManifest::new(
        "linearize",
        serde_json::json!({
            "format": format_name(format),
            "jobs": jobs,
            "profile_path": profile_path.as_ref().map(|p| p.display().to_string()),
        }),
    )
    .input("corpus", &args.input)
    .profile_hash(profile.hash());
    manifest.write_next_to(&args.output)?;

    Ok(if failures == 0 {
        RunOutcome::Clean
    } else {
        RunOutcome::PartialFailures(failures)
    })
}

pub fn format_name(format: anvaya_core::corpus::CorpusFormat) -> &'static str {
    match format {
        anvaya_core::corpus::CorpusFormat::Jsonl => "jsonl",
        anvaya_core::corpus::CorpusFormat::Tsv => "tsv",
    }
}
