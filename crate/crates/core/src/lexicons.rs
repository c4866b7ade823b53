//! Word lists and unusual-pattern matchers used by the detectors: positive
//! and negative opinion words, extreme intensifiers, advertisement phrases,
//! and the built-in URL / email / phone / price regexes.
//!
//! A lexicon directory holds five plain-text files, one term per line with
//! `#` comments: `positive.txt`, `negative.txt`, `extreme.txt`,
//! `adphrases.txt`, and `tags.txt`. The first four are plain term lists
//! (multi-word phrases are meaningful only in `adphrases.txt`); `tags.txt`
//! carries `<term> <TAG>` pairs feeding the closed-class stage of the POS
//! tagger.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};

use once_cell::sync::Lazy;
use regex::Regex;
use thiserror::Error;

use crate::preprocess::PosTag;

/// Kind of unusual pattern found in review text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternKind {
    Url,
    Email,
    Phone,
    Price,
    AdPhrase,
}

/// One unusual-pattern match, with byte offsets into the normalized text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternHit {
    pub kind: PatternKind,
    pub span: Range<usize>,
    pub matched: String,
}

/// Errors raised while loading lexicons.
#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    MissingFile {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon {name} is empty")]
    EmptyLexicon { name: String },
    #[error("term {term:?} appears in both positive and negative lexicons")]
    OverlapError { term: String },
    #[error("{file} line {line}: {message}")]
    Malformed {
        file: String,
        line: usize,
        message: String,
    },
}

static URL_RE: Lazy<Regex> = Lazy::new(|| Regex::new(r"(https?://|www\.)[^\s]+").unwrap());
static EMAIL_RE: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"[A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,}").unwrap());
static PHONE_RE: Lazy<Regex> = Lazy::new(|| Regex::new(r"\+?\d[\d\-\s().]{6,}\d").unwrap());
static PRICE_RE: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"[$€£]\s?\d+([.,]\d+)?|\b\d+(\.\d+)?\s?(usd|dollars?)\b").unwrap());

/// Immutable set of loaded lexicons plus the ad-phrase matcher compiled from
/// them. Safe for unrestricted concurrent reads.
#[derive(Debug, Clone)]
pub struct LexiconSet {
    positive: BTreeSet<String>,
    negative: BTreeSet<String>,
    extreme: BTreeSet<String>,
    ad_phrases: BTreeSet<String>,
    tags: BTreeMap<String, PosTag>,
    ad_regex: Regex,
}

impl LexiconSet {
    /// Positive opinion terms.
    pub fn positive(&self) -> &BTreeSet<String> {
        &self.positive
    }

    /// Negative opinion terms.
    pub fn negative(&self) -> &BTreeSet<String> {
        &self.negative
    }

    /// Extreme intensifier terms.
    pub fn extreme(&self) -> &BTreeSet<String> {
        &self.extreme
    }

    /// Advertisement phrases.
    pub fn ad_phrases(&self) -> &BTreeSet<String> {
        &self.ad_phrases
    }

    /// Closed-class tag lexicon lookup for a normalized term.
    pub fn tag_of(&self, term: &str) -> Option<PosTag> {
        self.tags.get(term).copied()
    }

    /// Number of entries in the tag lexicon.
    pub fn tag_count(&self) -> usize {
        self.tags.len()
    }

    /// Whether a normalized token is a positive opinion word.
    pub fn is_positive(&self, term: &str) -> bool {
        self.positive.contains(term)
    }

    /// Whether a normalized token is a negative opinion word.
    pub fn is_negative(&self, term: &str) -> bool {
        self.negative.contains(term)
    }

    /// Whether a normalized token is an extreme intensifier.
    pub fn is_extreme(&self, term: &str) -> bool {
        self.extreme.contains(term)
    }
}

/// Load the five lexicon files from `dir`, normalizing every term.
pub fn load_lexicons(dir: impl AsRef<Path>) -> Result<LexiconSet, LexiconError> {
    let dir = dir.as_ref();
    let positive = load_term_file(&dir.join("positive.txt"))?;
    let negative = load_term_file(&dir.join("negative.txt"))?;
    let extreme = load_term_file(&dir.join("extreme.txt"))?;
    let ad_phrases = load_term_file(&dir.join("adphrases.txt"))?;
    let tags = load_tag_file(&dir.join("tags.txt"))?;

    if let Some(term) = positive.intersection(&negative).next() {
        return Err(LexiconError::OverlapError { term: term.clone() });
    }

    let ad_regex = build_ad_regex(&ad_phrases);
    Ok(LexiconSet {
        positive,
        negative,
        extreme,
        ad_phrases,
        tags,
        ad_regex,
    })
}

/// Find every unusual pattern in normalized text: non-overlapping
/// leftmost-longest hits per kind, merged in ascending span order.
pub fn match_unusual_patterns(text: &str, lex: &LexiconSet) -> Vec<PatternHit> {
    let mut hits = Vec::new();
    let kinds: [(PatternKind, &Regex); 5] = [
        (PatternKind::Url, &URL_RE),
        (PatternKind::Email, &EMAIL_RE),
        (PatternKind::Phone, &PHONE_RE),
        (PatternKind::Price, &PRICE_RE),
        (PatternKind::AdPhrase, &lex.ad_regex),
    ];
    for (kind, regex) in kinds {
        for found in regex.find_iter(text) {
            hits.push(PatternHit {
                kind,
                span: found.range(),
                matched: found.as_str().to_string(),
            });
        }
    }
    hits.sort_by(|a, b| {
        (a.span.start, a.span.end, a.kind).cmp(&(b.span.start, b.span.end, b.kind))
    });
    hits
}

fn read_lines(path: &Path) -> Result<Vec<(usize, String)>, LexiconError> {
    let text = fs::read_to_string(path).map_err(|source| LexiconError::MissingFile {
        path: path.to_path_buf(),
        source,
    })?;
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if !line.is_empty() {
            lines.push((idx + 1, line.to_string()));
        }
    }
    Ok(lines)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_term_file(path: &Path) -> Result<BTreeSet<String>, LexiconError> {
    let mut terms = BTreeSet::new();
    for (_, line) in read_lines(path)? {
        terms.insert(normalize_term(&line));
    }
    if terms.is_empty() {
        return Err(LexiconError::EmptyLexicon {
            name: file_name(path),
        });
    }
    Ok(terms)
}

fn load_tag_file(path: &Path) -> Result<BTreeMap<String, PosTag>, LexiconError> {
    let mut tags = BTreeMap::new();
    for (line_no, line) in read_lines(path)? {
        let Some((term, tag_word)) = line.rsplit_once(char::is_whitespace) else {
            return Err(LexiconError::Malformed {
                file: file_name(path),
                line: line_no,
                message: "expected `<term> <TAG>`".into(),
            });
        };
        let Some(tag) = PosTag::from_keyword(tag_word.trim()) else {
            return Err(LexiconError::Malformed {
                file: file_name(path),
                line: line_no,
                message: format!("unknown tag {tag_word:?}"),
            });
        };
        tags.insert(normalize_term(term), tag);
    }
    if tags.is_empty() {
        return Err(LexiconError::EmptyLexicon {
            name: file_name(path),
        });
    }
    Ok(tags)
}

fn normalize_term(raw: &str) -> String {
    raw.to_lowercase()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Compile the ad-phrase alternation, longest phrase first so overlapping
/// phrases resolve to the longest match, anchored to word boundaries.
fn build_ad_regex(phrases: &BTreeSet<String>) -> Regex {
    let mut ordered: Vec<&String> = phrases.iter().collect();
    ordered.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let alternation = ordered
        .iter()
        .map(|p| regex::escape(p))
        .collect::<Vec<_>>()
        .join("|");
    Regex::new(&format!(r"\b(?:{alternation})\b")).expect("escaped alternation compiles")
}
