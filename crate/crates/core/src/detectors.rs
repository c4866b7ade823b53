//! The four spam detectors, their shared feature profile, and the threshold
//! record they are parameterized by.
//!
//! [`classify`] applies the detectors in a fixed pipeline order (non-review,
//! brand-only, off-topic, untruthful); the first one that fires decides the
//! label and every review passing all four is `truthful`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicons::{match_unusual_patterns, LexiconSet};
use crate::ontology::{ClassRole, EntityRole};
use crate::preprocess::{normalize, Label, PreprocessedReview};

/// The four spam types, in pipeline order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpamType {
    NonReview,
    BrandOnly,
    OffTopic,
    Untruthful,
}

impl SpamType {
    /// Pipeline order.
    pub const ALL: [SpamType; 4] = [
        SpamType::NonReview,
        SpamType::BrandOnly,
        SpamType::OffTopic,
        SpamType::Untruthful,
    ];

    /// The label assigned when this detector fires.
    pub fn label(self) -> Label {
        match self {
            SpamType::NonReview => Label::NonReview,
            SpamType::BrandOnly => Label::BrandOnly,
            SpamType::OffTopic => Label::OffTopic,
            SpamType::Untruthful => Label::Untruthful,
        }
    }

    /// Snake-case name, identical to the corresponding label's.
    pub fn as_str(self) -> &'static str {
        self.label().as_str()
    }
}

/// Detector thresholds and score weights.
///
/// Field order matters: tie-breaking in tuning compares candidates
/// lexicographically in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    /// Unusual-pattern hits at or above which a text is no review.
    pub theta_u: u32,
    /// Opinion-word ratio below which a text is no review.
    pub theta_o: f64,
    /// Brand-mention ratio at or above which a review is brand-only.
    pub theta_b: f64,
    /// Minimum entity mentions before the brand-only rule applies.
    pub m_min: u32,
    /// Foreign-mention ratio bound for off-topic.
    pub theta_f: f64,
    /// Product-name mismatch ratio bound for off-topic.
    pub theta_n: f64,
    /// Untruthfulness score bound.
    pub theta_ut: f64,
    /// Weight of opinion polarity in the untruthfulness score.
    pub w1: f64,
    /// Weight of the duplicate-name signal.
    pub w2: f64,
    /// Weight of the capitalized-name signal.
    pub w3: f64,
    /// Weight of the extreme-word signal.
    pub w4: f64,
    /// Minimum opinion words before the untruthful rule applies.
    pub op_min: u32,
    /// Extreme-word ratio treated as saturation in the score.
    pub ext_ref: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            theta_u: 2,
            theta_o: 0.02,
            theta_b: 0.6,
            m_min: 3,
            theta_f: 0.4,
            theta_n: 0.5,
            theta_ut: 0.5,
            w1: 0.25,
            w2: 0.25,
            w3: 0.25,
            w4: 0.25,
            op_min: 2,
            ext_ref: 0.05,
        }
    }
}

/// Weight-sum tolerance for [`Thresholds::validate`].
const WEIGHT_SUM_EPS: f64 = 1e-9;

impl Thresholds {
    /// Check every field against its documented range.
    pub fn validate(&self) -> Result<(), ThresholdsError> {
        fn unit(field: &'static str, value: f64) -> Result<(), ThresholdsError> {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(ThresholdsError::OutOfRange {
                    field,
                    detail: format!("{value} is outside [0, 1]"),
                })
            }
        }
        if self.theta_u < 1 {
            return Err(ThresholdsError::OutOfRange {
                field: "theta_u",
                detail: "must be at least 1".into(),
            });
        }
        if self.m_min < 1 {
            return Err(ThresholdsError::OutOfRange {
                field: "m_min",
                detail: "must be at least 1".into(),
            });
        }
        unit("theta_o", self.theta_o)?;
        unit("theta_b", self.theta_b)?;
        unit("theta_f", self.theta_f)?;
        unit("theta_n", self.theta_n)?;
        unit("theta_ut", self.theta_ut)?;
        for (field, value) in [
            ("w1", self.w1),
            ("w2", self.w2),
            ("w3", self.w3),
            ("w4", self.w4),
        ] {
            unit(field, value)?;
        }
        let sum = self.w1 + self.w2 + self.w3 + self.w4;
        if (sum - 1.0).abs() > WEIGHT_SUM_EPS {
            return Err(ThresholdsError::WeightSum { sum });
        }
        if !(self.ext_ref > 0.0 && self.ext_ref <= 1.0) {
            return Err(ThresholdsError::OutOfRange {
                field: "ext_ref",
                detail: format!("{} is outside (0, 1]", self.ext_ref),
            });
        }
        Ok(())
    }

    /// All fields as floats, in declaration order, for lexicographic
    /// tie-breaking.
    pub(crate) fn tie_break_key(&self) -> [f64; 13] {
        [
            self.theta_u as f64,
            self.theta_o,
            self.theta_b,
            self.m_min as f64,
            self.theta_f,
            self.theta_n,
            self.theta_ut,
            self.w1,
            self.w2,
            self.w3,
            self.w4,
            self.op_min as f64,
            self.ext_ref,
        ]
    }
}

/// Invalid threshold configuration.
#[derive(Debug, Error)]
pub enum ThresholdsError {
    #[error("threshold {field} out of range: {detail}")]
    OutOfRange { field: &'static str, detail: String },
    #[error("weights w1..w4 must sum to 1, got {sum}")]
    WeightSum { sum: f64 },
}

/// Everything the detectors look at, precomputed once per review.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeatureProfile {
    /// Unusual-pattern hits (URLs, emails, phones, prices, ad phrases).
    pub u: u32,
    /// Opinion words per token.
    pub o: f64,
    /// Own-branch origin mentions per mention.
    pub brand_ratio: f64,
    /// Total entity mentions.
    pub mention_total: u32,
    /// Foreign-branch mentions per mention.
    pub foreign_ratio: f64,
    /// Popular-name mentions that are not the reviewed product's name, per
    /// popular-name mention.
    pub name_mismatch_ratio: f64,
    /// |pos - neg| / (pos + neg).
    pub polarity: f64,
    /// Product-name mentions per sentence.
    pub dup_name: f64,
    /// Fully capitalized product-name mentions per name mention.
    pub caps_ratio: f64,
    /// Extreme words per token.
    pub extreme_ratio: f64,
    pub pos_count: u32,
    pub neg_count: u32,
}

/// One satisfied detector condition: the feature inspected, its value, and
/// the threshold it was compared against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trigger {
    pub feature: &'static str,
    pub value: f64,
    pub threshold: f64,
}

impl Trigger {
    fn new(feature: &'static str, value: f64, threshold: f64) -> Self {
        Trigger {
            feature,
            value,
            threshold,
        }
    }
}

/// Classification outcome for one review.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub label: Label,
    /// Conditions that produced a spam label; empty for `truthful`.
    pub triggered: Vec<Trigger>,
    pub profile: FeatureProfile,
}

fn ratio(numerator: u32, denominator: u32) -> f64 {
    f64::from(numerator) / f64::from(denominator.max(1))
}

/// Compute the full feature profile for a preprocessed review.
pub fn compute_features(p: &PreprocessedReview, lex: &LexiconSet) -> FeatureProfile {
    let normalized = normalize(&p.review.content);
    let u = match_unusual_patterns(&normalized, lex).len() as u32;

    let mut pos_count = 0u32;
    let mut neg_count = 0u32;
    let mut extreme_count = 0u32;
    for token in &p.tokens {
        if lex.is_positive(&token.surface_norm) {
            pos_count += 1;
        }
        if lex.is_negative(&token.surface_norm) {
            neg_count += 1;
        }
        if lex.is_extreme(&token.surface_norm) {
            extreme_count += 1;
        }
    }
    let token_count = p.tokens.len() as u32;
    let opinion_count = pos_count + neg_count;

    let mention_total = p.mentions.len() as u32;
    let mut origin = 0u32;
    let mut foreign = 0u32;
    let mut popular = 0u32;
    let mut popular_mismatch = 0u32;
    let product_name = normalize(&p.review.product_name);
    for mention in &p.mentions {
        match mention.role {
            EntityRole::Origin => origin += 1,
            EntityRole::Foreign => foreign += 1,
            _ => {}
        }
        if mention.base_role == ClassRole::PopularName {
            popular += 1;
            if mention.surface_norm != product_name {
                popular_mismatch += 1;
            }
        }
    }

    FeatureProfile {
        u,
        o: ratio(opinion_count, token_count),
        brand_ratio: ratio(origin, mention_total),
        mention_total,
        foreign_ratio: ratio(foreign, mention_total),
        name_mismatch_ratio: ratio(popular_mismatch, popular),
        polarity: ratio(pos_count.abs_diff(neg_count), opinion_count),
        dup_name: ratio(p.name_mentions, p.sentences.len() as u32),
        caps_ratio: ratio(p.name_mentions_caps, p.name_mentions),
        extreme_ratio: ratio(extreme_count, token_count),
        pos_count,
        neg_count,
    }
}

/// Non-review: enough unusual patterns, or too little opinion to be a review.
pub fn detect_non_review(f: &FeatureProfile, t: &Thresholds) -> bool {
    f.u >= t.theta_u || f.o < t.theta_o
}

/// Brand-only: enough mentions, and most of them are about the brand.
pub fn detect_brand_only(f: &FeatureProfile, t: &Thresholds) -> bool {
    f.mention_total >= t.m_min && f.brand_ratio >= t.theta_b
}

/// Off-topic: mentions belong to another branch and the named product is not
/// the reviewed one.
pub fn detect_off_topic(f: &FeatureProfile, t: &Thresholds) -> bool {
    f.foreign_ratio >= t.theta_f && f.name_mismatch_ratio >= t.theta_n
}

/// Weighted untruthfulness score; the unbounded signals are clamped so every
/// summand stays in [0, 1].
pub fn untruthful_score(f: &FeatureProfile, t: &Thresholds) -> f64 {
    t.w1 * f.polarity
        + t.w2 * f.dup_name.min(1.0)
        + t.w3 * f.caps_ratio
        + t.w4 * (f.extreme_ratio / t.ext_ref).min(1.0)
}

/// Untruthful: opinionated enough, and the combined score clears the bound.
pub fn detect_untruthful(f: &FeatureProfile, t: &Thresholds) -> bool {
    f.pos_count + f.neg_count >= t.op_min && untruthful_score(f, t) >= t.theta_ut
}

/// Apply a single detector.
pub fn detector_fires(kind: SpamType, f: &FeatureProfile, t: &Thresholds) -> bool {
    match kind {
        SpamType::NonReview => detect_non_review(f, t),
        SpamType::BrandOnly => detect_brand_only(f, t),
        SpamType::OffTopic => detect_off_topic(f, t),
        SpamType::Untruthful => detect_untruthful(f, t),
    }
}

fn triggers_for(kind: SpamType, f: &FeatureProfile, t: &Thresholds) -> Vec<Trigger> {
    let mut triggered = Vec::new();
    match kind {
        SpamType::NonReview => {
            if f.u >= t.theta_u {
                triggered.push(Trigger::new("u", f.u.into(), t.theta_u.into()));
            }
            if f.o < t.theta_o {
                triggered.push(Trigger::new("o", f.o, t.theta_o));
            }
        }
        SpamType::BrandOnly => {
            triggered.push(Trigger::new(
                "mention_total",
                f.mention_total.into(),
                t.m_min.into(),
            ));
            triggered.push(Trigger::new("brand_ratio", f.brand_ratio, t.theta_b));
        }
        SpamType::OffTopic => {
            triggered.push(Trigger::new("foreign_ratio", f.foreign_ratio, t.theta_f));
            triggered.push(Trigger::new(
                "name_mismatch_ratio",
                f.name_mismatch_ratio,
                t.theta_n,
            ));
        }
        SpamType::Untruthful => {
            triggered.push(Trigger::new(
                "opinion_count",
                (f.pos_count + f.neg_count).into(),
                t.op_min.into(),
            ));
            triggered.push(Trigger::new(
                "untruthful_score",
                untruthful_score(f, t),
                t.theta_ut,
            ));
        }
    }
    triggered
}

/// Label a precomputed profile: first firing detector wins, else `truthful`.
pub fn classify_profile(f: &FeatureProfile, t: &Thresholds) -> Label {
    for kind in SpamType::ALL {
        if detector_fires(kind, f, t) {
            return kind.label();
        }
    }
    Label::Truthful
}

/// Classify one preprocessed review, explaining any spam verdict.
pub fn classify(p: &PreprocessedReview, lex: &LexiconSet, t: &Thresholds) -> Verdict {
    let profile = compute_features(p, lex);
    for kind in SpamType::ALL {
        if detector_fires(kind, &profile, t) {
            return Verdict {
                label: kind.label(),
                triggered: triggers_for(kind, &profile, t),
                profile,
            };
        }
    }
    Verdict {
        label: Label::Truthful,
        triggered: Vec::new(),
        profile,
    }
}
