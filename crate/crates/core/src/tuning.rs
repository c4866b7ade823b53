//! Threshold learning by discrete grid search, maximizing the overall
//! spam-vs-truthful F-measure on a labeled corpus.
//!
//! Two modes: `exhaustive` enumerates the full Cartesian grid; `coordinate`
//! runs greedy coordinate descent over the grid axes in pipeline order,
//! starting from the default thresholds, with two full passes. Both modes
//! break ties toward the lexicographically smaller threshold record, so
//! results are reproducible regardless of evaluation order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detectors::{classify_profile, compute_features, FeatureProfile, Thresholds};
use crate::evaluation::{metrics, ConfusionMatrix};
use crate::lexicons::LexiconSet;
use crate::preprocess::PreprocessedReview;

/// Hard cap on exhaustive grid size, to fail fast instead of running for
/// hours on an over-specified grid.
pub const MAX_EXHAUSTIVE_POINTS: u128 = 10_000_000;

/// Candidate values per threshold axis. Weights are searched as whole
/// `[w1, w2, w3, w4]` records so every candidate stays on the simplex.
///
/// Omitted axes default to a single candidate holding that field's default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub theta_u: Vec<u32>,
    pub theta_o: Vec<f64>,
    pub theta_b: Vec<f64>,
    pub m_min: Vec<u32>,
    pub theta_f: Vec<f64>,
    pub theta_n: Vec<f64>,
    pub theta_ut: Vec<f64>,
    pub weights: Vec<[f64; 4]>,
    pub op_min: Vec<u32>,
    pub ext_ref: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        let t = Thresholds::default();
        GridSpec {
            theta_u: vec![t.theta_u],
            theta_o: vec![t.theta_o],
            theta_b: vec![t.theta_b],
            m_min: vec![t.m_min],
            theta_f: vec![t.theta_f],
            theta_n: vec![t.theta_n],
            theta_ut: vec![t.theta_ut],
            weights: vec![[t.w1, t.w2, t.w3, t.w4]],
            op_min: vec![t.op_min],
            ext_ref: vec![t.ext_ref],
        }
    }
}

/// Grid axes in pipeline order; used by coordinate descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Axis {
    ThetaU,
    ThetaO,
    ThetaB,
    MMin,
    ThetaF,
    ThetaN,
    ThetaUt,
    Weights,
    OpMin,
    ExtRef,
}

const AXES: [Axis; 10] = [
    Axis::ThetaU,
    Axis::ThetaO,
    Axis::ThetaB,
    Axis::MMin,
    Axis::ThetaF,
    Axis::ThetaN,
    Axis::ThetaUt,
    Axis::Weights,
    Axis::OpMin,
    Axis::ExtRef,
];

impl GridSpec {
    /// Check that every axis is non-empty and every candidate respects the
    /// Thresholds field invariants.
    pub fn validate(&self) -> Result<(), TuneError> {
        fn check<T>(field: &'static str, list: &[T]) -> Result<(), TuneError> {
            if list.is_empty() {
                Err(TuneError::EmptyGrid { field })
            } else {
                Ok(())
            }
        }
        check("theta_u", &self.theta_u)?;
        check("theta_o", &self.theta_o)?;
        check("theta_b", &self.theta_b)?;
        check("m_min", &self.m_min)?;
        check("theta_f", &self.theta_f)?;
        check("theta_n", &self.theta_n)?;
        check("theta_ut", &self.theta_ut)?;
        check("weights", &self.weights)?;
        check("op_min", &self.op_min)?;
        check("ext_ref", &self.ext_ref)?;

        let defaults = Thresholds::default();
        for axis in AXES {
            for index in 0..self.axis_len(axis) {
                let mut probe = defaults;
                self.apply(axis, index, &mut probe);
                probe
                    .validate()
                    .map_err(|source| TuneError::InvalidCandidate {
                        field: axis.name(),
                        detail: source.to_string(),
                    })?;
            }
        }
        Ok(())
    }

    fn axis_len(&self, axis: Axis) -> usize {
        match axis {
            Axis::ThetaU => self.theta_u.len(),
            Axis::ThetaO => self.theta_o.len(),
            Axis::ThetaB => self.theta_b.len(),
            Axis::MMin => self.m_min.len(),
            Axis::ThetaF => self.theta_f.len(),
            Axis::ThetaN => self.theta_n.len(),
            Axis::ThetaUt => self.theta_ut.len(),
            Axis::Weights => self.weights.len(),
            Axis::OpMin => self.op_min.len(),
            Axis::ExtRef => self.ext_ref.len(),
        }
    }

    fn apply(&self, axis: Axis, index: usize, t: &mut Thresholds) {
        match axis {
            Axis::ThetaU => t.theta_u = self.theta_u[index],
            Axis::ThetaO => t.theta_o = self.theta_o[index],
            Axis::ThetaB => t.theta_b = self.theta_b[index],
            Axis::MMin => t.m_min = self.m_min[index],
            Axis::ThetaF => t.theta_f = self.theta_f[index],
            Axis::ThetaN => t.theta_n = self.theta_n[index],
            Axis::ThetaUt => t.theta_ut = self.theta_ut[index],
            Axis::Weights => {
                let [w1, w2, w3, w4] = self.weights[index];
                t.w1 = w1;
                t.w2 = w2;
                t.w3 = w3;
                t.w4 = w4;
            }
            Axis::OpMin => t.op_min = self.op_min[index],
            Axis::ExtRef => t.ext_ref = self.ext_ref[index],
        }
    }

    /// Number of points in the full Cartesian grid.
    pub fn point_count(&self) -> u128 {
        AXES.iter()
            .map(|axis| self.axis_len(*axis) as u128)
            .product()
    }

    /// Decode the `index`-th grid point; earlier axes vary slowest.
    pub fn point(&self, index: u128) -> Thresholds {
        let mut t = Thresholds::default();
        let mut remainder = index;
        for axis in AXES.iter().rev() {
            let len = self.axis_len(*axis) as u128;
            self.apply(*axis, (remainder % len) as usize, &mut t);
            remainder /= len;
        }
        t
    }
}

/// Search strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Coordinate,
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::ThetaU => "theta_u",
            Axis::ThetaO => "theta_o",
            Axis::ThetaB => "theta_b",
            Axis::MMin => "m_min",
            Axis::ThetaF => "theta_f",
            Axis::ThetaN => "theta_n",
            Axis::ThetaUt => "theta_ut",
            Axis::Weights => "weights",
            Axis::OpMin => "op_min",
            Axis::ExtRef => "ext_ref",
        }
    }
}

/// Outcome of a tuning run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuneResult {
    pub best: Thresholds,
    pub best_f: f64,
    pub evaluations: u64,
}

/// Tuning errors.
#[derive(Debug, Error)]
pub enum TuneError {
    #[error("cannot tune on an empty corpus")]
    EmptyCorpus,
    #[error("review at index {0} has no label")]
    UnlabeledReview(usize),
    #[error("grid axis {field} has no candidates")]
    EmptyGrid { field: &'static str },
    #[error("grid axis {field} has an invalid candidate: {detail}")]
    InvalidCandidate { field: &'static str, detail: String },
    #[error("exhaustive grid has {points} points, limit is {limit}")]
    GridTooLarge { points: u128, limit: u128 },
}

/// Overall spam-vs-truthful F of one threshold candidate.
fn objective(profiles: &[(FeatureProfile, bool)], t: &Thresholds) -> f64 {
    let mut cm = ConfusionMatrix {
        tp: 0,
        fp: 0,
        fn_: 0,
        tn: 0,
    };
    for (profile, gold_spam) in profiles {
        let predicted_spam = classify_profile(profile, t).is_spam();
        match (*gold_spam, predicted_spam) {
            (true, true) => cm.tp += 1,
            (false, true) => cm.fp += 1,
            (true, false) => cm.fn_ += 1,
            (false, false) => cm.tn += 1,
        }
    }
    metrics(&cm).f_measure
}

/// Prefer higher F; on equal F prefer the lexicographically smaller record.
fn better(a: (f64, Thresholds), b: (f64, Thresholds)) -> (f64, Thresholds) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            let ka = a.1.tie_break_key();
            let kb = b.1.tie_break_key();
            for (x, y) in ka.iter().zip(kb.iter()) {
                match x.total_cmp(y) {
                    std::cmp::Ordering::Less => return a,
                    std::cmp::Ordering::Greater => return b,
                    std::cmp::Ordering::Equal => {}
                }
            }
            a
        }
    }
}

/// Search the grid for the thresholds maximizing overall F on the corpus.
pub fn tune(
    corpus: &[PreprocessedReview],
    lex: &LexiconSet,
    grid: &GridSpec,
    mode: Mode,
) -> Result<TuneResult, TuneError> {
    if corpus.is_empty() {
        return Err(TuneError::EmptyCorpus);
    }
    for (index, review) in corpus.iter().enumerate() {
        if review.review.label.is_none() {
            return Err(TuneError::UnlabeledReview(index));
        }
    }
    grid.validate()?;

    let profiles: Vec<(FeatureProfile, bool)> = corpus
        .par_iter()
        .map(|p| {
            (
                compute_features(p, lex),
                p.review.label.expect("checked above").is_spam(),
            )
        })
        .collect();

    match mode {
        Mode::Exhaustive => tune_exhaustive(&profiles, grid),
        Mode::Coordinate => Ok(tune_coordinate(&profiles, grid)),
    }
}

fn tune_exhaustive(
    profiles: &[(FeatureProfile, bool)],
    grid: &GridSpec,
) -> Result<TuneResult, TuneError> {
    let points = grid.point_count();
    if points > MAX_EXHAUSTIVE_POINTS {
        return Err(TuneError::GridTooLarge {
            points,
            limit: MAX_EXHAUSTIVE_POINTS,
        });
    }
    let count = points as u64;
    let (best_f, best) = (0..count)
        .into_par_iter()
        .map(|index| {
            let candidate = grid.point(index as u128);
            (objective(profiles, &candidate), candidate)
        })
        .reduce_with(better)
        .expect("validated grid has at least one point");
    Ok(TuneResult {
        best,
        best_f,
        evaluations: count,
    })
}

fn tune_coordinate(profiles: &[(FeatureProfile, bool)], grid: &GridSpec) -> TuneResult {
    let mut current = Thresholds::default();
    let mut current_f = objective(profiles, &current);
    let mut evaluations = 1u64;

    for _pass in 0..2 {
        for axis in AXES {
            let scored: Vec<(f64, Thresholds)> = (0..grid.axis_len(axis))
                .into_par_iter()
                .map(|index| {
                    let mut candidate = current;
                    grid.apply(axis, index, &mut candidate);
                    let f = if candidate == current {
                        current_f
                    } else {
                        objective(profiles, &candidate)
                    };
                    (f, candidate)
                })
                .collect();
            evaluations += scored
                .iter()
                .filter(|(_, candidate)| *candidate != current)
                .count() as u64;
            let (f, candidate) = scored
                .into_iter()
                .reduce(better)
                .expect("validated axis is non-empty");
            current = candidate;
            current_f = f;
        }
    }

    TuneResult {
        best: current,
        best_f: current_f,
        evaluations,
    }
}
