//! Metric tokenization: whitespace split over normalized IAST, with
//! sentence punctuation optionally detached into separate tokens.

use serde::{Deserialize, Serialize};

use crate::text::{is_iast_punctuation, normalize_iast};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tokenization {
    /// Whitespace split only.
    Whitespace,
    /// Whitespace split, then `, . ? !` split off as their own tokens.
    DetachPunctuation,
}

impl std::fmt::Display for Tokenization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tokenization::Whitespace => write!(f, "whitespace"),
            Tokenization::DetachPunctuation => write!(f, "whitespace+detach-punctuation"),
        }
    }
}

/// Tokenize with the default scheme (punctuation detached).
pub fn tokenize_iast(text: &str) -> Vec<String> {
    tokenize_with(text, Tokenization::DetachPunctuation)
}

pub fn tokenize_with(text: &str, scheme: Tokenization) -> Vec<String> {
    let normalized = normalize_iast(text);
    let words = normalized.split_whitespace();
    match scheme {
        Tokenization::Whitespace => words.map(str::to_string).collect(),
        Tokenization::DetachPunctuation => {
            let mut out = Vec::new();
            for word in words {
                let mut current = String::new();
                for c in word.chars() {
                    if is_iast_punctuation(c) {
                        if !current.is_empty() {
                            out.push(std::mem::take(&mut current));
                        }
                        out.push(c.to_string());
                    } else {
                        current.push(c);
                    }
                }
                if !current.is_empty() {
                    out.push(current);
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_on_whitespace() {
        assert_eq!(tokenize_iast("a b  c"), vec!["a", "b", "c"]);
    }

    #[test]
    fn empty_text_yields_no_tokens() {
        assert!(tokenize_iast("").is_empty());
        assert!(tokenize_iast("   ").is_empty());
    }

    #[test]
    fn three_word_tail() {
        assert_eq!(
            tokenize_iast("mriyeta iti cintyate"),
            vec!["mriyeta", "iti", "cintyate"]
        );
    }

    #[test]
    fn detaches_punctuation() {
        assert_eq!(tokenize_iast("gacchati."), vec!["gacchati", "."]);
        assert_eq!(tokenize_iast("kim? iti"), vec!["kim", "?", "iti"]);
        assert_eq!(
            tokenize_with("gacchati.", Tokenization::Whitespace),
            vec!["gacchati."]
        );
    }
}
