//! Bundled prompt data files and their block format.
//!
//! A data file is a sequence of named blocks. A line of the form
//! `[name]` opens a block; everything until the next header belongs to
//! it, with surrounding blank lines trimmed. Demonstration blocks use
//! `sloka:` and `prose:` lines plus an optional multi-line `reasoning:`
//! section.

use std::collections::BTreeMap;

use super::{Demonstration, PromptError};

const BLOCKS: &str = include_str!("../../data/prompts/blocks.txt");
const FS_EXAMPLES: &str = include_str!("../../data/prompts/fs_examples.txt");
const COT_EXAMPLES: &str = include_str!("../../data/prompts/cot_examples.txt");

/// Parse a block file into name → content.
pub(super) fn parse_blocks(text: &str) -> BTreeMap<String, String> {
    let mut blocks = BTreeMap::new();
    let mut name: Option<String> = None;
    let mut content: Vec<&str> = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.len() >= 2 && trimmed.starts_with('[') && trimmed.ends_with(']') {
            if let Some(prev) = name.take() {
                blocks.insert(prev, join_block(&content));
            }
            content.clear();
            name = Some(trimmed[1..trimmed.len() - 1].to_string());
        } else if name.is_some() {
            content.push(line);
        }
    }
    if let Some(prev) = name {
        blocks.insert(prev, join_block(&content));
    }
    blocks
}

fn join_block(lines: &[&str]) -> String {
    let mut start = 0;
    let mut end = lines.len();
    while start < end && lines[start].trim().is_empty() {
        start += 1;
    }
    while end > start && lines[end - 1].trim().is_empty() {
        end -= 1;
    }
    lines[start..end].join("\n")
}

pub(super) fn template_block(name: &str) -> Result<String, PromptError> {
    parse_blocks(BLOCKS)
        .remove(name)
        .ok_or_else(|| PromptError::MissingBlock {
            name: name.to_string(),
        })
}

fn parse_demonstrations(text: &str) -> Vec<Demonstration> {
    let blocks = parse_blocks(text);
    let mut out = Vec::new();
    let mut n = 1;
    while let Some(block) = blocks.get(&format!("example-{n}")) {
        let mut verse = String::new();
        let mut prose = String::new();
        let mut reasoning: Vec<&str> = Vec::new();
        let mut in_reasoning = false;
        for line in block.lines() {
            if let Some(rest) = line.strip_prefix("sloka:") {
                verse = rest.trim().to_string();
                in_reasoning = false;
            } else if let Some(rest) = line.strip_prefix("prose:") {
                prose = rest.trim().to_string();
                in_reasoning = false;
            } else if line.trim() == "reasoning:" {
                in_reasoning = true;
            } else if in_reasoning {
                reasoning.push(line);
            }
        }
        out.push(Demonstration {
            verse,
            prose,
            reasoning: if reasoning.is_empty() {
                None
            } else {
                Some(reasoning.join("\n"))
            },
        });
        n += 1;
    }
    out
}

/// The bundled few-shot demonstration pool (three verse–prose pairs).
pub fn bundled_fs_examples() -> Vec<Demonstration> {
    parse_demonstrations(FS_EXAMPLES)
}

/// The bundled CoT demonstration pool (two pairs with step-by-step
/// reasoning).
pub fn bundled_cot_examples() -> Vec<Demonstration> {
    parse_demonstrations(COT_EXAMPLES)
}

/// The heading phrase of one rule block, used by the ablation checks.
pub fn rule_heading(rule: u8) -> &'static str {
    match rule {
        1 => "Sandhi Analysis",
        2 => "Clause Structuring",
        3 => "Modifier Chunking",
        4 => "Intra-Clause Word Order",
        5 => "Particle Placement",
        _ => "",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_blocks() {
        let blocks = parse_blocks("[a]\nline1\nline2\n\n[b]\nonly\n");
        assert_eq!(blocks["a"], "line1\nline2");
        assert_eq!(blocks["b"], "only");
    }

    #[test]
    fn bundled_blocks_are_complete() {
        for name in [
            "task",
            "rules-heading",
            "rule-1",
            "rule-2",
            "rule-3",
            "rule-4",
            "rule-5",
            "format-prose",
            "format-cot",
            "format-reasoning",
            "examples-heading",
        ] {
            assert!(template_block(name).is_ok(), "missing block {name}");
        }
    }

    #[test]
    fn rule_blocks_carry_their_headings_and_numbers() {
        for rule in 1u8..=5 {
            let block = template_block(&format!("rule-{rule}")).unwrap();
            assert!(block.contains(rule_heading(rule)));
            assert!(block.starts_with(&format!("{rule}. ")));
        }
    }

    #[test]
    fn fs_pool_has_three_pairs_without_reasoning() {
        let pool = bundled_fs_examples();
        assert_eq!(pool.len(), 3);
        assert!(pool.iter().all(|d| d.reasoning.is_none()));
        assert!(pool[0].prose.starts_with("putraśokasamāhataḥ"));
        assert!(pool[2].prose.ends_with("prāhiṇot"));
    }

    #[test]
    fn cot_pool_has_two_reasoning_pairs() {
        let pool = bundled_cot_examples();
        assert_eq!(pool.len(), 2);
        for demo in &pool {
            let reasoning = demo.reasoning.as_deref().expect("reasoning present");
            assert!(reasoning.contains("-Applying Rule 1:"));
            assert!(reasoning.contains("-Applying Rule 5:"));
        }
    }
}
