//! Career-mobility analytics over publication corpora.
//!
//! The pipeline has two prediction phases on top of a validated corpus of
//! geocoded institutions and publications:
//!
//! 1. [`trajectory`] rebuilds each scientist's career as a deduplicated
//!    sequence of (year, institution) tuples and derives relocation events;
//!    [`profile`] turns a (scientist, year, window) triple into an 11-feature
//!    scientific profile and quantile-standardizes feature vectors across a
//!    population; [`move_predict`] trains logistic-regression and decision-tree
//!    classifiers on balanced move/stay examples under 10-fold cross-validation.
//! 2. [`gravity`] predicts the destination of a move with a singly-constrained
//!    gravity model (log size, log distance) or its social extension
//!    (collaborator fraction and destination-quality features), trained by SGD
//!    on a candidate-sampled softmax likelihood and evaluated with rank CDFs
//!    and mean percentile ranking.
//!
//! [`corpus`] also ships a seeded synthetic generator that plants both signals
//! (a xenophilia-driven move hazard and a known destination-choice coefficient
//! vector) so that every stage can be verified by parameter recovery.
//!
//! The `sciflow` binary in [`cli`] chains the stages end to end.

pub mod cli;
pub mod corpus;
pub mod gravity;
pub mod move_predict;
pub mod profile;
pub mod trajectory;

pub use corpus::{
    generate_synthetic, haversine_km, load_corpus, write_corpus, Corpus, CorpusError, GeoPoint,
    Institution, Publication, SynthConfig,
};
pub use trajectory::{affiliation_at, build_trajectory, extract_moves, CareerTrajectory, Move};
