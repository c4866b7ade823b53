//! Review corpus ingestion: one JSON record per line, blank lines ignored,
//! every problem reported with its line number.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::preprocess::{Label, Review};

/// On-disk form of one review. `label` is optional; classification does not
/// need it, evaluation and tuning do.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusRecord {
    pub category: String,
    pub product_name: String,
    pub content: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
}

impl From<&Review> for CorpusRecord {
    fn from(review: &Review) -> Self {
        CorpusRecord {
            category: review.category.clone(),
            product_name: review.product_name.clone(),
            content: review.content.clone(),
            label: review.label,
        }
    }
}

/// A parsed review together with the 1-based line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberedReview {
    pub line: usize,
    pub review: Review,
}

/// Corpus ingestion errors.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus file {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Parse JSON-lines corpus text, keeping line numbers.
pub fn parse_corpus(text: &str) -> Result<Vec<NumberedReview>, CorpusError> {
    let mut reviews = Vec::new();
    for (offset, raw) in text.lines().enumerate() {
        let line = offset + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let record: CorpusRecord =
            serde_json::from_str(raw).map_err(|source| CorpusError::Malformed {
                line,
                message: source.to_string(),
            })?;
        let review = Review::new(
            record.category,
            record.product_name,
            record.content,
            record.label,
        )
        .map_err(|source| CorpusError::Malformed {
            line,
            message: source.to_string(),
        })?;
        reviews.push(NumberedReview { line, review });
    }
    Ok(reviews)
}

/// Read and parse a JSON-lines corpus file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<NumberedReview>, CorpusError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(&text)
}

/// Serialize reviews to JSON-lines corpus text, one record per line.
pub fn serialize_corpus(reviews: &[Review]) -> String {
    let mut out = String::new();
    for review in reviews {
        let record = CorpusRecord::from(review);
        out.push_str(&serde_json::to_string(&record).expect("records are plain data"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_labeled_and_unlabeled_records() {
        let text = concat!(
            r#"{"category":"phone","product_name":"iphone","content":"Nice.","label":"truthful"}"#,
            "\n\n",
            r#"{"category":"hotel","product_name":"sheraton","content":"Loud room."}"#,
            "\n",
        );
        let reviews = parse_corpus(text).unwrap();
        assert_eq!(reviews.len(), 2);
        assert_eq!(reviews[0].line, 1);
        assert_eq!(reviews[0].review.label, Some(Label::Truthful));
        assert_eq!(reviews[1].line, 3);
        assert_eq!(reviews[1].review.label, None);
    }

    #[test]
    fn rejects_malformed_lines_with_numbers() {
        let text = concat!(
            r#"{"category":"phone","product_name":"iphone","content":"Nice.","label":"truthful"}"#,
            "\n",
            "not json\n",
        );
        match parse_corpus(text) {
            Err(CorpusError::Malformed { line: 2, .. }) => {}
            other => panic!("expected line-2 error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_fields_and_bad_labels() {
        let extra = r#"{"category":"phone","product_name":"x","content":"y","rating":5}"#;
        assert!(matches!(
            parse_corpus(extra),
            Err(CorpusError::Malformed { line: 1, .. })
        ));
        let bad_label = r#"{"category":"phone","product_name":"x","content":"y","label":"spammy"}"#;
        assert!(matches!(
            parse_corpus(bad_label),
            Err(CorpusError::Malformed { line: 1, .. })
        ));
    }

    #[test]
    fn rejects_empty_content_with_line_number() {
        let text = r#"{"category":"phone","product_name":"x","content":"  "}"#;
        match parse_corpus(text) {
            Err(CorpusError::Malformed { line: 1, message }) => {
                assert!(message.contains("content"));
            }
            other => panic!("expected malformed line 1, got {other:?}"),
        }
    }

    #[test]
    fn serialization_round_trips() {
        let reviews = vec![
            Review::new("phone", "iphone", "Great screen.", Some(Label::Truthful)).unwrap(),
            Review::new("hotel", "sheraton", "Meh.", None).unwrap(),
        ];
        let text = serialize_corpus(&reviews);
        let parsed = parse_corpus(&text).unwrap();
        let back: Vec<Review> = parsed.into_iter().map(|n| n.review).collect();
        assert_eq!(reviews, back);
    }

    #[test]
    fn missing_file_reports_path() {
        match load_corpus("/nonexistent/corpus.jsonl") {
            Err(CorpusError::Read { path, .. }) => assert!(path.contains("corpus.jsonl")),
            other => panic!("expected read error, got {other:?}"),
        }
    }
}
