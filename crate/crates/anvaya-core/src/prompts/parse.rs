//! Tolerant extraction of tagged model responses.

use serde::Serialize;

use super::TagConvention;

/// Result of parsing one raw model response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParsedResponse {
    /// The final prose, when an answer tag was found and non-empty.
    pub prose: Option<String>,
    pub reasoning: Option<String>,
    pub raw: String,
    /// Parse notes: alternate vocabularies, missing closing tags, absent
    /// answers.
    pub diagnostics: Vec<String>,
}

/// Innermost content of the first complete `<tag>…</tag>` pair; when the
/// closing tag is missing, the text after the last opening tag.
/// The bool is `true` when the pair was properly closed.
fn extract_tag(raw: &str, tag: &str) -> Option<(String, bool)> {
    let open = format!("<{tag}>");
    let close = format!("</{tag}>");
    if let Some(close_at) = raw.find(&close) {
        let open_at = raw[..close_at].rfind(&open)?;
        let content = &raw[open_at + open.len()..close_at];
        return Some((content.to_string(), true));
    }
    raw.rfind(&open)
        .map(|open_at| (raw[open_at + open.len()..].to_string(), false))
}

fn answer_tags(convention: TagConvention) -> (&'static str, &'static str) {
    match convention {
        TagConvention::ProseOnly | TagConvention::ThinkProse => ("prose", "answer"),
        TagConvention::ReasoningAnswer => ("answer", "prose"),
    }
}

fn reasoning_tags(convention: TagConvention) -> (&'static str, &'static str) {
    match convention {
        TagConvention::ProseOnly | TagConvention::ThinkProse => ("think", "reasoning"),
        TagConvention::ReasoningAnswer => ("reasoning", "think"),
    }
}

/// Extract the final answer (and reasoning, when present) from a raw
/// response. The convention's own tags are preferred; the alternate
/// vocabulary is accepted with a diagnostic, as is a missing closing
/// tag. A response without any recognized answer tag yields an absent
/// prose with a diagnostic, never a hard error.
pub fn parse_response(raw: &str, convention: TagConvention) -> ParsedResponse {
    let mut diagnostics = Vec::new();

    let (primary, alternate) = answer_tags(convention);
    let prose = match extract_tag(raw, primary) {
        Some((content, closed)) => {
            if !closed {
                diagnostics.push(format!("missing closing tag </{primary}>; took text to end"));
            }
            Some(content)
        }
        None => match extract_tag(raw, alternate) {
            Some((content, closed)) => {
                diagnostics.push(format!("used alternate answer tag <{alternate}>"));
                if !closed {
                    diagnostics
                        .push(format!("missing closing tag </{alternate}>; took text to end"));
                }
                Some(content)
            }
            None => {
                diagnostics.push("no answer tag found".into());
                None
            }
        },
    };
    let prose = prose.map(|p| p.trim().to_string()).filter(|p| {
        if p.is_empty() {
            diagnostics.push("answer tag was empty".into());
        }
        !p.is_empty()
    });

    let (primary_r, alternate_r) = reasoning_tags(convention);
    let reasoning = extract_tag(raw, primary_r)
        .or_else(|| extract_tag(raw, alternate_r))
        .map(|(content, _)| content.trim().to_string())
        .filter(|r| !r.is_empty());

    ParsedResponse {
        prose,
        reasoning,
        raw: raw.to_string(),
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_formed_prose_tag() {
        let parsed = parse_response("<prose>saḥ gacchati</prose>", TagConvention::ProseOnly);
        assert_eq!(parsed.prose.as_deref(), Some("saḥ gacchati"));
        assert!(parsed.diagnostics.is_empty());
    }

    #[test]
    fn text_without_tags_has_no_prose() {
        let parsed = parse_response("the model rambled instead", TagConvention::ProseOnly);
        assert_eq!(parsed.prose, None);
        assert!(parsed.diagnostics.iter().any(|d| d.contains("no answer tag")));
    }

    #[test]
    fn missing_closing_tag_recovers_to_end() {
        let parsed = parse_response("<prose>ardham eva", TagConvention::ProseOnly);
        assert_eq!(parsed.prose.as_deref(), Some("ardham eva"));
        assert!(parsed
            .diagnostics
            .iter()
            .any(|d| d.contains("missing closing tag")));
    }

    #[test]
    fn think_prose_accepts_reasoning_answer_vocabulary() {
        let raw = "<reasoning>\nstep 1\n</reasoning>\n<answer>kālah bhūtāni pacati</answer>";
        let parsed = parse_response(raw, TagConvention::ThinkProse);
        assert_eq!(parsed.prose.as_deref(), Some("kālah bhūtāni pacati"));
        assert_eq!(parsed.reasoning.as_deref(), Some("step 1"));
        assert!(parsed
            .diagnostics
            .iter()
            .any(|d| d.contains("alternate answer tag")));
    }

    #[test]
    fn own_tags_preferred_over_alternates() {
        let raw = "<answer>wrong</answer><prose>right</prose>";
        let parsed = parse_response(raw, TagConvention::ThinkProse);
        assert_eq!(parsed.prose.as_deref(), Some("right"));
    }

    #[test]
    fn innermost_pair_wins_when_nested() {
        let raw = "<prose>outer <prose>inner</prose> tail</prose>";
        let parsed = parse_response(raw, TagConvention::ProseOnly);
        assert_eq!(parsed.prose.as_deref(), Some("inner"));
    }

    #[test]
    fn wrapping_then_parsing_is_identity_on_plain_payloads() {
        for convention in [
            TagConvention::ProseOnly,
            TagConvention::ThinkProse,
            TagConvention::ReasoningAnswer,
        ] {
            let payload = "tataḥ saḥ takṣakaḥ nāgaḥ prāhiṇot";
            let tag = match convention {
                TagConvention::ReasoningAnswer => "answer",
                _ => "prose",
            };
            let raw = format!("<{tag}>{payload}</{tag}>");
            let parsed = parse_response(&raw, convention);
            assert_eq!(parsed.prose.as_deref(), Some(payload));
        }
    }
}
