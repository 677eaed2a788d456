//! Prompt rendering and the ablation family.

use std::collections::BTreeMap;

use super::data::{bundled_cot_examples, template_block};
use super::{Demonstration, PromptError, PromptSpec, TagConvention};

/// Render a spec to its prompt string: task description, then the rule
/// blocks selected by the mask (in rule order, keeping their original
/// numbers), the response-format instructions of the tag convention,
/// and finally the demonstrations. Equal specs render byte-identically.
pub fn render_prompt(spec: &PromptSpec) -> Result<String, PromptError> {
    spec.validate()?;

    let mut sections: Vec<String> = vec![template_block("task")?];

    if !spec.rule_mask.is_empty() {
        sections.push(template_block("rules-heading")?);
        for rule in &spec.rule_mask {
            sections.push(template_block(&format!("rule-{rule}"))?);
        }
    }

    let format_block = match spec.tag_convention {
        TagConvention::ProseOnly => "format-prose",
        TagConvention::ThinkProse => "format-cot",
        TagConvention::ReasoningAnswer => "format-reasoning",
    };
    sections.push(template_block(format_block)?);

    if !spec.examples.is_empty() {
        sections.push(template_block("examples-heading")?);
        for (i, example) in spec.examples.iter().enumerate() {
            sections.push(render_example(i + 1, example, spec.tag_convention)?);
        }
    }

    Ok(sections.join("\n\n"))
}

fn render_example(
    number: usize,
    example: &Demonstration,
    convention: TagConvention,
) -> Result<String, PromptError> {
    let response = match convention {
        TagConvention::ProseOnly => format!("<prose>{}</prose>", example.prose),
        TagConvention::ThinkProse => {
            let reasoning =
                example
                    .reasoning
                    .as_deref()
                    .ok_or(PromptError::MissingReasoning {
                        example: number - 1,
                    })?;
            format!("<think>\n{}\n</think>\n<prose>{}</prose>", reasoning, example.prose)
        }
        TagConvention::ReasoningAnswer => {
            let reasoning =
                example
                    .reasoning
                    .as_deref()
                    .ok_or(PromptError::MissingReasoning {
                        example: number - 1,
                    })?;
            format!(
                "<reasoning>\n{}\n</reasoning>\n<answer>{}</answer>",
                reasoning, example.prose
            )
        }
    };
    Ok(format!(
        "Example {number}:\n\nINPUT:\nsloka: {}\n\nRESPONSE:\n{response}",
        example.verse
    ))
}

/// The eight prompt-ablation variants: the bare task description, the
/// full five-rule prompt, the five leave-one-rule-out prompts, and the
/// CoT variant with reasoning demonstrations. `base` must carry the
/// full mask; the leave-one-out variants inherit its strategy and
/// examples, the CoT variant draws the bundled reasoning pool.
pub fn ablation_family(base: &PromptSpec) -> Result<BTreeMap<String, PromptSpec>, PromptError> {
    base.validate()?;
    if base.rule_mask != PromptSpec::full_mask() {
        return Err(PromptError::BaseMaskNotFull);
    }

    let mut family = BTreeMap::new();
    family.insert("P_base".to_string(), PromptSpec::zs_plain());
    family.insert("P_full".to_string(), base.clone());
    let names = [
        (1u8, "P_NoSandhi"),
        (2, "P_NoClause"),
        (3, "P_NoChunking"),
        (4, "P_NoOrder"),
        (5, "P_NoParticles"),
    ];
    for (rule, name) in names {
        let mut variant = base.clone();
        variant.rule_mask.remove(&rule);
        family.insert(name.to_string(), variant);
    }
    family.insert(
        "CoT".to_string(),
        PromptSpec::cot(PromptSpec::full_mask(), bundled_cot_examples()),
    );
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prompts::data::rule_heading;
    use crate::prompts::bundled_fs_examples;

    fn full_fs() -> PromptSpec {
        PromptSpec::fs_rules(PromptSpec::full_mask(), bundled_fs_examples())
    }

    /// The single contiguous region where two renderings differ.
    fn diff_region(a: &str, b: &str) -> (String, String) {
        let a_bytes = a.as_bytes();
        let b_bytes = b.as_bytes();
        let mut start = 0;
        while start < a_bytes.len() && start < b_bytes.len() && a_bytes[start] == b_bytes[start] {
            start += 1;
        }
        let mut a_end = a_bytes.len();
        let mut b_end = b_bytes.len();
        while a_end > start && b_end > start && a_bytes[a_end - 1] == b_bytes[b_end - 1] {
            a_end -= 1;
            b_end -= 1;
        }
        (
            String::from_utf8_lossy(&a_bytes[start..a_end]).into_owned(),
            String::from_utf8_lossy(&b_bytes[start..b_end]).into_owned(),
        )
    }

    #[test]
    fn full_prompt_contains_all_headings_and_examples() {
        let prompt = render_prompt(&full_fs()).unwrap();
        for rule in 1..=5 {
            assert!(prompt.contains(rule_heading(rule)));
        }
        assert_eq!(prompt.matches("Example ").count(), 3);
        assert!(prompt.contains("Canonical Rules for Anvaya Construction"));
    }

    #[test]
    fn zs_plain_has_task_only() {
        let prompt = render_prompt(&PromptSpec::zs_plain()).unwrap();
        assert!(prompt.contains("Task:"));
        assert!(!prompt.contains("Canonical Rules"));
        assert!(!prompt.contains("Example 1:"));
    }

    #[test]
    fn partial_mask_drops_exactly_the_clause_block() {
        let full = render_prompt(&full_fs()).unwrap();
        let mut spec = full_fs();
        spec.rule_mask.remove(&2);
        let without = render_prompt(&spec).unwrap();
        assert!(!without.contains("Clause Structuring"));
        let (removed, added) = diff_region(&full, &without);
        assert!(added.is_empty(), "only a removal expected: {added:?}");
        assert!(removed.contains("Clause Structuring"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = render_prompt(&full_fs()).unwrap();
        let b = render_prompt(&full_fs().clone()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cot_example_without_reasoning_is_an_error() {
        let spec = PromptSpec::cot(
            PromptSpec::full_mask(),
            vec![Demonstration {
                verse: "x".into(),
                prose: "y".into(),
                reasoning: None,
            }],
        );
        assert_eq!(
            render_prompt(&spec),
            Err(PromptError::MissingReasoning { example: 0 })
        );
    }

    #[test]
    fn family_has_eight_distinct_variants() {
        let family = ablation_family(&full_fs()).unwrap();
        assert_eq!(family.len(), 8);
        let rendered: Vec<String> = family
            .values()
            .map(|spec| render_prompt(spec).unwrap())
            .collect();
        for i in 0..rendered.len() {
            for j in i + 1..rendered.len() {
                assert_ne!(rendered[i], rendered[j]);
            }
        }
    }

    #[test]
    fn no_particles_mask_is_one_through_four() {
        let family = ablation_family(&full_fs()).unwrap();
        let mask: Vec<u8> = family["P_NoParticles"].rule_mask.iter().copied().collect();
        assert_eq!(mask, vec![1, 2, 3, 4]);
    }

    #[test]
    fn family_requires_full_base_mask() {
        let mut base = full_fs();
        base.rule_mask.remove(&3);
        assert_eq!(ablation_family(&base), Err(PromptError::BaseMaskNotFull));
    }
}
