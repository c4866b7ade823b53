//! Rule-based opinion spam detection for product and hotel reviews.
//!
//! A review claims to describe one product out of a known category. This
//! crate decides whether the text is a real opinion about that product or
//! one of four spam types, using a product-knowledge ontology and small
//! opinion lexicons instead of a trained model:
//!
//! * `non_review`: advertisements, links, or other text with no opinion,
//! * `brand_only`: talk about the maker or supplier instead of the product,
//! * `off_topic`: a review of some other kind of product,
//! * `untruthful`: one-sided praise or smearing with telltale emphasis.
//!
//! Reviews passing all four detectors are `truthful`.
//!
//! The pipeline: [`preprocess::preprocess_review`] normalizes, splits, and
//! tags the text and resolves entity mentions against an [`ontology`];
//! [`detectors::compute_features`] condenses that into a numeric profile;
//! [`detectors::classify`] applies the four threshold rules in order. The
//! thresholds can be learned from a labeled corpus with [`tuning::tune`] and
//! scored with [`evaluation::evaluate_corpus`].
//!
//! ```
//! use opspam::preprocess::{normalize, split_sentences, tokenize};
//!
//! assert_eq!(normalize("  GREAT   Phone!! "), "great phone!!");
//! assert_eq!(split_sentences("Good. Bad!"), ["Good.", "Bad!"]);
//! assert_eq!(tokenize("world's leader"), ["world's", "leader"]);
//! ```
//!
//! Classifying a review end to end:
//!
//! ```no_run
//! use opspam::detectors::{classify, Thresholds};
//! use opspam::lexicons::load_lexicons;
//! use opspam::ontology::load_ontology;
//! use opspam::preprocess::{preprocess_review, Review};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let ontology = load_ontology("fixtures/phone_hotel.ont")?;
//! let lex = load_lexicons("fixtures/lexicons")?;
//! let review = Review::new("phone", "iphone 4s", "Great screen, solid battery.", None)?;
//! let preprocessed = preprocess_review(&review, &ontology, &lex)?;
//! let verdict = classify(&preprocessed, &lex, &Thresholds::default());
//! println!("{}", verdict.label);
//! # Ok(())
//! # }
//! ```
//!
//! The `opspam` binary exposes the same operations as `classify`,
//! `evaluate`, `tune`, and `check-ontology` subcommands over JSON files.

pub mod cli;
pub mod corpus;
pub mod detectors;
pub mod evaluation;
pub mod lexicons;
pub mod ontology;
pub mod preprocess;
pub mod synth;
pub mod tuning;

#[cfg(test)]
pub(crate) mod testutil;

pub use detectors::{classify, FeatureProfile, SpamType, Thresholds, Verdict};
pub use evaluation::{evaluate_corpus, EvalReport};
pub use lexicons::{load_lexicons, LexiconSet};
pub use ontology::{load_ontology, Ontology};
pub use preprocess::{preprocess_review, Label, Review};
pub use tuning::{tune, GridSpec, TuneResult};
