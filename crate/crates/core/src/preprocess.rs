//! Review preprocessing: normalization, sentence splitting, tokenization,
//! coarse POS tagging, and ontology-backed entity extraction.
//!
//! The output of [`preprocess_review`] is the complete data contract the
//! detectors consume: tokens with tags, sentence ranges, entity mentions with
//! branch-relative roles, unmatched candidate surfaces, and counts of the
//! reviewed product's name (total and fully capitalized).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::lexicons::LexiconSet;
use crate::ontology::{ClassRole, EntityRole, Ontology};

/// Longest entity n-gram attempted during extraction; matches the longest
/// multi-word surfaces shipped in the ontology fixtures.
pub const MAX_NGRAM: usize = 3;

/// Gold or predicted classification label for a review.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    NonReview,
    BrandOnly,
    OffTopic,
    Untruthful,
    Truthful,
}

impl Label {
    /// All labels in pipeline order, `truthful` last.
    pub const ALL: [Label; 5] = [
        Label::NonReview,
        Label::BrandOnly,
        Label::OffTopic,
        Label::Untruthful,
        Label::Truthful,
    ];

    /// Whether this label marks any of the four spam types.
    pub fn is_spam(self) -> bool {
        self != Label::Truthful
    }

    /// Snake-case name as used in corpus files and reports.
    pub fn as_str(self) -> &'static str {
        match self {
            Label::NonReview => "non_review",
            Label::BrandOnly => "brand_only",
            Label::OffTopic => "off_topic",
            Label::Untruthful => "untruthful",
            Label::Truthful => "truthful",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosTag {
    Noun,
    Adj,
    Verb,
    Adv,
    Pron,
    Det,
    Other,
}

impl PosTag {
    /// Uppercase keyword as written in `tags.txt`.
    pub fn keyword(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Adj => "ADJ",
            PosTag::Verb => "VERB",
            PosTag::Adv => "ADV",
            PosTag::Pron => "PRON",
            PosTag::Det => "DET",
            PosTag::Other => "OTHER",
        }
    }

    /// Parse the uppercase keyword used in `tags.txt`.
    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "NOUN" => Some(PosTag::Noun),
            "ADJ" => Some(PosTag::Adj),
            "VERB" => Some(PosTag::Verb),
            "ADV" => Some(PosTag::Adv),
            "PRON" => Some(PosTag::Pron),
            "DET" => Some(PosTag::Det),
            "OTHER" => Some(PosTag::Other),
            _ => None,
        }
    }
}

/// A raw review record: what product it claims to review and what it says.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Review {
    pub category: String,
    pub product_name: String,
    pub content: String,
    pub label: Option<Label>,
}

impl Review {
    /// Build a review, rejecting empty categories or content up front.
    pub fn new(
        category: impl Into<String>,
        product_name: impl Into<String>,
        content: impl Into<String>,
        label: Option<Label>,
    ) -> Result<Self, PreprocessError> {
        let review = Review {
            category: category.into(),
            product_name: product_name.into(),
            content: content.into(),
            label,
        };
        if review.category.trim().is_empty() {
            return Err(PreprocessError::InvalidReview {
                message: "category must be non-empty".into(),
            });
        }
        if review.content.trim().is_empty() {
            return Err(PreprocessError::InvalidReview {
                message: "content must be non-empty".into(),
            });
        }
        Ok(review)
    }
}

/// One word token: the original slice, its normalized form, and a coarse tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface_raw: String,
    pub surface_norm: String,
    pub tag: PosTag,
}

/// An ontology-matched entity occurrence inside the token stream.
///
/// `role` is branch relative (`Foreign` for surfaces known only in another
/// product branch); `base_role` is the matched class's own role, which for
/// foreign mentions tells what the surface means in its home branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityMention {
    pub surface_norm: String,
    pub role: EntityRole,
    pub base_role: ClassRole,
    pub token_span: Range<usize>,
    pub is_all_caps: bool,
}

/// Everything the detectors need to know about one review.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessedReview {
    pub review: Review,
    pub tokens: Vec<Token>,
    /// Token index ranges, one per sentence, partitioning `tokens` in order.
    pub sentences: Vec<Range<usize>>,
    pub mentions: Vec<EntityMention>,
    /// Noun/adjective surfaces with no ontology match, deduplicated in
    /// first-occurrence order.
    pub candidates: Vec<String>,
    pub name_mentions: u32,
    pub name_mentions_caps: u32,
}

/// Result of [`extract_entities`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityExtraction {
    pub mentions: Vec<EntityMention>,
    pub candidates: Vec<String>,
    pub name_mentions: u32,
    pub name_mentions_caps: u32,
}

/// Errors raised while preprocessing.
#[derive(Debug, Error)]
pub enum PreprocessError {
    #[error("invalid review: {message}")]
    InvalidReview { message: String },
    #[error("unknown product category {0:?}")]
    UnknownCategory(String),
}

/// Unicode-canonicalize, drop control characters, collapse whitespace runs to
/// single spaces, and trim, preserving letter case.
fn clean(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for c in text.nfc() {
        if c.is_control() || c.is_whitespace() {
            pending_space = true;
        } else {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(c);
        }
    }
    out
}

/// Normalize text: [`clean`]ing plus case folding.
pub fn normalize(text: &str) -> String {
    clean(text).to_lowercase()
}

/// Split text into sentences after `.`, `!`, or `?` followed by whitespace or
/// end of text. Whitespace-only input yields no sentences; any other input
/// yields at least one.
pub fn split_sentences(text: &str) -> Vec<&str> {
    fn push<'a>(sentences: &mut Vec<&'a str>, slice: &'a str) {
        let trimmed = slice.trim();
        if !trimmed.is_empty() {
            sentences.push(trimmed);
        }
    }
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if matches!(c, '.' | '!' | '?') {
            let at_boundary = match chars.peek() {
                None => true,
                Some((_, next)) => next.is_whitespace(),
            };
            if at_boundary {
                let end = i + c.len_utf8();
                push(&mut sentences, &text[start..end]);
                start = end;
            }
        }
    }
    if start < text.len() {
        push(&mut sentences, &text[start..]);
    }
    sentences
}

/// Split text into word surfaces: maximal alphanumeric runs, keeping
/// apostrophes that sit between alphanumerics ("world's" stays one token).
pub fn tokenize(text: &str) -> Vec<&str> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let mut prev_alnum = false;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        let is_word_char = c.is_alphanumeric()
            || (c == '\''
                && prev_alnum
                && chars.peek().is_some_and(|(_, next)| next.is_alphanumeric()));
        if is_word_char {
            start.get_or_insert(i);
        } else if let Some(s) = start.take() {
            tokens.push(&text[s..i]);
        }
        prev_alnum = c.is_alphanumeric();
    }
    if let Some(s) = start {
        tokens.push(&text[s..]);
    }
    tokens
}

/// Tag word surfaces with coarse parts of speech: closed-class lexicon lookup
/// first, then suffix heuristics, then the `NOUN` default.
pub fn pos_tag<S: AsRef<str>>(tokens: &[S], lex: &LexiconSet) -> Vec<Token> {
    tokens
        .iter()
        .map(|surface| {
            let surface_raw = surface.as_ref().to_string();
            let surface_norm = surface_raw.to_lowercase();
            let tag = lex
                .tag_of(&surface_norm)
                .or_else(|| suffix_tag(&surface_norm))
                .unwrap_or(PosTag::Noun);
            Token {
                surface_raw,
                surface_norm,
                tag,
            }
        })
        .collect()
}

/// Suffix heuristics for open-class words; requires a stem of at least two
/// characters so short words like "bed" or "red" fall through to the noun
/// default.
fn suffix_tag(word: &str) -> Option<PosTag> {
    let chars = word.chars().count();
    let ends = |suffix: &str| word.ends_with(suffix) && chars >= suffix.len() + 2;
    if ends("ly") {
        return Some(PosTag::Adv);
    }
    for suffix in ["ous", "ful", "ive", "able", "ible", "al", "ic", "er"] {
        if ends(suffix) {
            return Some(PosTag::Adj);
        }
    }
    for suffix in ["ing", "ed", "ize", "ise"] {
        if ends(suffix) {
            return Some(PosTag::Verb);
        }
    }
    None
}

/// Canonical unigram form used for ontology lookup: possessive markers
/// stripped, then a plain plural `s` dropped from longer words.
pub fn canonical_surface(surface: &str) -> String {
    let mut term = surface.to_string();
    if let Some(stripped) = term.strip_suffix("'s") {
        term = stripped.to_string();
    } else if let Some(stripped) = term.strip_suffix('\'') {
        term = stripped.to_string();
    }
    if term.chars().count() > 3
        && term.ends_with('s')
        && !term.ends_with("ss")
        && !term.ends_with("us")
        && !term.ends_with("is")
    {
        term.pop();
    }
    term
}

fn is_entity_pos(tag: PosTag) -> bool {
    matches!(tag, PosTag::Noun | PosTag::Adj)
}

fn raw_all_caps(raw: &str) -> bool {
    let mut has_alpha = false;
    for c in raw.chars() {
        if c.is_alphabetic() {
            if !c.is_uppercase() {
                return false;
            }
            has_alpha = true;
        }
    }
    has_alpha
}

fn join_norms(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| t.surface_norm.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Extract entity mentions and candidates from tagged tokens, and count
/// occurrences of the reviewed product's name over the whole token stream.
///
/// Mentions come from maximal noun/adjective runs scanned left to right,
/// preferring the longest ontology-matched n-gram (up to [`MAX_NGRAM`]) at
/// each position, so spans never overlap. Unmatched unigrams are retried in
/// [`canonical_surface`] form before joining the candidate list.
pub fn extract_entities(
    tokens: &[Token],
    ontology: &Ontology,
    category: &str,
    product_name: &str,
) -> Result<EntityExtraction, PreprocessError> {
    if !ontology.has_category(category) {
        return Err(PreprocessError::UnknownCategory(category.to_string()));
    }
    let lookup = |surface: &str| {
        ontology
            .classify_detailed(category, surface)
            .expect("category existence checked above")
    };

    let mut mentions = Vec::new();
    let mut candidates = Vec::new();
    let mut seen_candidates = BTreeSet::new();
    let mention = |surface: String, roles: (EntityRole, ClassRole), span: Range<usize>| {
        let is_all_caps = tokens[span.clone()]
            .iter()
            .all(|t| raw_all_caps(&t.surface_raw));
        EntityMention {
            surface_norm: surface,
            role: roles.0,
            base_role: roles.1,
            token_span: span,
            is_all_caps,
        }
    };

    let mut run_start = 0;
    while run_start < tokens.len() {
        if !is_entity_pos(tokens[run_start].tag) {
            run_start += 1;
            continue;
        }
        let mut run_end = run_start;
        while run_end < tokens.len() && is_entity_pos(tokens[run_end].tag) {
            run_end += 1;
        }

        let mut pos = run_start;
        while pos < run_end {
            let consumed = 'longest: {
                for n in (2..=MAX_NGRAM).rev() {
                    if pos + n > run_end {
                        continue;
                    }
                    let surface = join_norms(&tokens[pos..pos + n]);
                    if let Some(roles) = lookup(&surface) {
                        mentions.push(mention(surface, roles, pos..pos + n));
                        break 'longest n;
                    }
                }
                let exact = tokens[pos].surface_norm.clone();
                if let Some(roles) = lookup(&exact) {
                    mentions.push(mention(exact, roles, pos..pos + 1));
                } else {
                    let canonical = canonical_surface(&exact);
                    if let Some(roles) = lookup(&canonical) {
                        mentions.push(mention(canonical, roles, pos..pos + 1));
                    } else if seen_candidates.insert(canonical.clone()) {
                        candidates.push(canonical);
                    }
                }
                1
            };
            pos += consumed;
        }
        run_start = run_end;
    }

    let (name_mentions, name_mentions_caps) = count_name_mentions(tokens, product_name);
    Ok(EntityExtraction {
        mentions,
        candidates,
        name_mentions,
        name_mentions_caps,
    })
}

/// Count exact, non-overlapping occurrences of the normalized product name as
/// a token phrase, plus how many of them are written in all capitals.
fn count_name_mentions(tokens: &[Token], product_name: &str) -> (u32, u32) {
    let normalized = normalize(product_name);
    let name_tokens = tokenize(&normalized);
    if name_tokens.is_empty() {
        return (0, 0);
    }
    let width = name_tokens.len();
    let mut count = 0;
    let mut caps = 0;
    let mut at = 0;
    while at + width <= tokens.len() {
        let window = &tokens[at..at + width];
        if window
            .iter()
            .zip(&name_tokens)
            .all(|(token, name)| token.surface_norm == *name)
        {
            count += 1;
            if window.iter().all(|token| raw_all_caps(&token.surface_raw)) {
                caps += 1;
            }
            at += width;
        } else {
            at += 1;
        }
    }
    (count, caps)
}

/// Run the full preprocessing pipeline over one review.
pub fn preprocess_review(
    review: &Review,
    ontology: &Ontology,
    lex: &LexiconSet,
) -> Result<PreprocessedReview, PreprocessError> {
    let cleaned = clean(&review.content);
    let mut tokens = Vec::new();
    let mut sentences = Vec::new();
    for slice in split_sentences(&cleaned) {
        let words = tokenize(slice);
        let start = tokens.len();
        tokens.extend(pos_tag(&words, lex));
        sentences.push(start..tokens.len());
    }
    let extraction = extract_entities(&tokens, ontology, &review.category, &review.product_name)?;
    Ok(PreprocessedReview {
        review: review.clone(),
        tokens,
        sentences,
        mentions: extraction.mentions,
        candidates: extraction.candidates,
        name_mentions: extraction.name_mentions,
        name_mentions_caps: extraction.name_mentions_caps,
    })
}
