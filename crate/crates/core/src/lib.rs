//! Logical classification of data whose features take values in finite
//! partially ordered sets.
//!
//! The crate is layered bottom-up:
//!
//! - [`poset`]: a single finite order given by its Hasse diagram.
//! - [`product`]: products of posets and brute-force oracles for the maximal
//!   and minimal elements independent of a set.
//! - [`dualization`]: the matrix formulation, ordered irredundant
//!   σ-coverings, and the enumerator that produces them.
//! - [`classifier`]: elementary classifiers, their predicates, training by
//!   dualization, the reversed-order duplication transform, and voting.
//! - [`dataio`]: order specifications, datasets, model and instance files.
//! - [`eval`]: stratified cross-validation and metrics reports.

pub mod classifier;
pub mod dataio;
pub mod dualization;
pub mod eval;
pub mod poset;
pub mod product;
pub mod random;

pub use classifier::{ElementaryClassifier, Method, TiePolicy, TrainedModel, TrainingSet};
pub use dataio::OrderSpec;
pub use dualization::{CoveringMatrix, Enumerator, SigmaCovering};
pub use poset::Poset;
pub use product::{Element, ProductSpace};
