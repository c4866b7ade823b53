//! Confusion matrices, precision/recall/F, and corpus-level evaluation
//! reports, overall and per spam type.
//!
//! The overall evaluation runs the full pipeline and scores spam against
//! truthful. Each per-type evaluation restricts the corpus to that spam type
//! plus the truthful reviews and tests only the matching detector, so every
//! detector is measured in isolation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detectors::{
    classify_profile, compute_features, detector_fires, FeatureProfile, SpamType, Thresholds,
};
use crate::lexicons::LexiconSet;
use crate::ontology::Ontology;
use crate::preprocess::{preprocess_review, Label, PreprocessError, Review};

/// Binary confusion counts; "positive" means spam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

/// Precision, recall, and their harmonic mean. Zero denominators yield 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

/// Evaluation errors.
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("prediction and gold lists differ in length ({pred} vs {gold})")]
    LengthMismatch { pred: usize, gold: usize },
    #[error("cannot evaluate an empty input")]
    EmptyInput,
    #[error("review at index {0} has no label")]
    UnlabeledReview(usize),
    #[error(transparent)]
    Preprocess(#[from] PreprocessError),
}

/// Count a confusion matrix from parallel prediction and gold label lists,
/// with `is_spam` defining the positive class.
pub fn confusion(
    pred: &[Label],
    gold: &[Label],
    is_spam: impl Fn(Label) -> bool,
) -> Result<ConfusionMatrix, EvalError> {
    if pred.len() != gold.len() {
        return Err(EvalError::LengthMismatch {
            pred: pred.len(),
            gold: gold.len(),
        });
    }
    if pred.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut cm = ConfusionMatrix {
        tp: 0,
        fp: 0,
        fn_: 0,
        tn: 0,
    };
    for (&p, &g) in pred.iter().zip(gold) {
        match (is_spam(g), is_spam(p)) {
            (true, true) => cm.tp += 1,
            (false, true) => cm.fp += 1,
            (true, false) => cm.fn_ += 1,
            (false, false) => cm.tn += 1,
        }
    }
    Ok(cm)
}

/// Precision, recall, and F for a matrix.
pub fn metrics(cm: &ConfusionMatrix) -> Metrics {
    fn fraction(numerator: u64, denominator: u64) -> f64 {
        if denominator == 0 {
            0.0
        } else {
            numerator as f64 / denominator as f64
        }
    }
    let precision = fraction(cm.tp, cm.tp + cm.fp);
    let recall = fraction(cm.tp, cm.tp + cm.fn_);
    let f_measure = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Metrics {
        precision,
        recall,
        f_measure,
    }
}

/// Matrix counts and derived metrics for one evaluation slice, laid out flat
/// so the report serializes with the documented key order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

impl SubsetReport {
    fn from_matrix(cm: ConfusionMatrix) -> Self {
        let m = metrics(&cm);
        SubsetReport {
            tp: cm.tp,
            fp: cm.fp,
            fn_: cm.fn_,
            tn: cm.tn,
            precision: m.precision,
            recall: m.recall,
            f: m.f_measure,
        }
    }

    fn empty() -> Self {
        SubsetReport {
            tp: 0,
            fp: 0,
            fn_: 0,
            tn: 0,
            precision: 0.0,
            recall: 0.0,
            f: 0.0,
        }
    }
}

/// Review counts keyed by label name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelCounts {
    pub gold: BTreeMap<String, u64>,
    pub predicted: BTreeMap<String, u64>,
}

/// Full evaluation output: overall spam-vs-truthful scores, one isolated
/// score per spam type, and label counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub overall: SubsetReport,
    pub per_type: BTreeMap<String, SubsetReport>,
    pub counts: LabelCounts,
}

fn label_histogram(labels: &[Label]) -> BTreeMap<String, u64> {
    let mut counts: BTreeMap<String, u64> = Label::ALL
        .iter()
        .map(|l| (l.as_str().to_string(), 0))
        .collect();
    for label in labels {
        *counts
            .get_mut(label.as_str())
            .expect("all labels preseeded") += 1;
    }
    counts
}

/// Classify every review and score the result.
pub fn evaluate_corpus(
    corpus: &[Review],
    ontology: &Ontology,
    lex: &LexiconSet,
    t: &Thresholds,
) -> Result<EvalReport, EvalError> {
    let mut gold = Vec::with_capacity(corpus.len());
    for (index, review) in corpus.iter().enumerate() {
        gold.push(review.label.ok_or(EvalError::UnlabeledReview(index))?);
    }

    let computed: Vec<Result<FeatureProfile, PreprocessError>> = corpus
        .par_iter()
        .map(|review| preprocess_review(review, ontology, lex).map(|p| compute_features(&p, lex)))
        .collect();
    let mut profiles = Vec::with_capacity(computed.len());
    for result in computed {
        profiles.push(result?);
    }

    let pred: Vec<Label> = profiles.iter().map(|f| classify_profile(f, t)).collect();
    let overall = SubsetReport::from_matrix(confusion(&pred, &gold, Label::is_spam)?);

    let mut per_type = BTreeMap::new();
    for kind in SpamType::ALL {
        let positive = kind.label();
        let mut subset_gold = Vec::new();
        let mut subset_pred = Vec::new();
        for (index, &g) in gold.iter().enumerate() {
            if g != positive && g != Label::Truthful {
                continue;
            }
            subset_gold.push(g);
            subset_pred.push(if detector_fires(kind, &profiles[index], t) {
                positive
            } else {
                Label::Truthful
            });
        }
        let report = if subset_gold.is_empty() {
            SubsetReport::empty()
        } else {
            SubsetReport::from_matrix(confusion(&subset_pred, &subset_gold, |l| l == positive)?)
        };
        per_type.insert(kind.as_str().to_string(), report);
    }

    Ok(EvalReport {
        overall,
        per_type,
        counts: LabelCounts {
            gold: label_histogram(&gold),
            predicted: label_histogram(&pred),
        },
    })
}
