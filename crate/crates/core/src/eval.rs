//! Stratified k-fold cross-validation.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::{
    duplicate_features, ClassifierError, Method, Prediction, TiePolicy, TrainOptions,
    TrainedModel, TrainingSet,
};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("need at least 2 folds, got {0}")]
    TooFewFolds(usize),
    #[error("class `{class}` has {count} objects, fewer than {folds} folds")]
    TooFewObjectsPerClass {
        class: String,
        count: usize,
        folds: usize,
    },
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
}

#[derive(Debug, Clone, Copy)]
pub struct EvalConfig {
    pub method: Method,
    pub folds: usize,
    pub seed: u64,
    pub max_rank: Option<usize>,
    /// Duplicate features with reversed copies before training.
    pub duplicate: bool,
    pub tie: TiePolicy,
    /// Run folds concurrently. Results do not depend on this.
    pub parallel: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            method: Method::Representative,
            folds: 3,
            seed: 0,
            max_rank: None,
            duplicate: false,
            tie: TiePolicy::Abstain,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldReport {
    pub test_size: usize,
    pub correct: usize,
    pub abstained: usize,
    pub accuracy: f64,
    pub rules: usize,
    pub seconds: f64,
}

/// Metrics of one cross-validation run. Abstentions count as errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub method: Method,
    pub duplicated: bool,
    pub folds: usize,
    pub seed: u64,
    pub objects: usize,
    /// Correct predictions over all test objects.
    pub accuracy: f64,
    pub abstain_fraction: f64,
    pub seconds: f64,
    pub fold: Vec<FoldReport>,
}

impl EvalReport {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }
}

/// Fold index of every object. Each class is shuffled with a ChaCha8 stream
/// seeded by `seed` and dealt round-robin, continuing where the previous
/// class stopped so fold sizes differ by at most one.
pub fn stratified_folds(ts: &TrainingSet, folds: usize, seed: u64) -> Result<Vec<usize>, EvalError> {
    if folds < 2 {
        return Err(EvalError::TooFewFolds(folds));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assign = vec![0; ts.objects().len()];
    let mut next = 0;
    for k in 0..ts.num_classes() {
        let mut members: Vec<usize> = (0..ts.labels().len())
            .filter(|&i| ts.labels()[i] == k)
            .collect();
        if members.len() < folds {
            return Err(EvalError::TooFewObjectsPerClass {
                class: ts.class_names()[k].clone(),
                count: members.len(),
                folds,
            });
        }
        members.shuffle(&mut rng);
        for i in members {
            assign[i] = next;
            next = (next + 1) % folds;
        }
    }
    Ok(assign)
}

fn run_fold(ts: &TrainingSet, assign: &[usize], f: usize, cfg: &EvalConfig) -> Result<FoldReport, EvalError> {
    let start = Instant::now();
    let train_idx: Vec<usize> = (0..assign.len()).filter(|&i| assign[i] != f).collect();
    let test_idx: Vec<usize> = (0..assign.len()).filter(|&i| assign[i] == f).collect();
    let train = ts.subset(&train_idx);
    let model = TrainedModel::train(
        &train,
        cfg.method,
        TrainOptions { max_rank: cfg.max_rank, parallel: !cfg.parallel },
    )?;
    let mut correct = 0;
    let mut abstained = 0;
    for &i in &test_idx {
        match model.classify(&ts.objects()[i], cfg.tie)? {
            Prediction::Class(k) if k == ts.labels()[i] => correct += 1,
            Prediction::Class(_) => {}
            Prediction::Abstain => abstained += 1,
        }
    }
    Ok(FoldReport {
        test_size: test_idx.len(),
        correct,
        abstained,
        accuracy: correct as f64 / test_idx.len() as f64,
        rules: model.classes.iter().map(|c| c.rules.len()).sum(),
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Stratified cross-validation of a training set. Folds are computed on the
/// original objects; duplication, if requested, is applied afterwards.
pub fn evaluate(ts: &TrainingSet, cfg: &EvalConfig) -> Result<EvalReport, EvalError> {
    let start = Instant::now();
    let assign = stratified_folds(ts, cfg.folds, cfg.seed)?;
    let data = if cfg.duplicate && !ts.is_duplicated() {
        duplicate_features(ts)?
    } else {
        ts.clone()
    };
    let fold: Vec<FoldReport> = if cfg.parallel {
        (0..cfg.folds)
            .into_par_iter()
            .map(|f| run_fold(&data, &assign, f, cfg))
            .collect::<Result<_, _>>()?
    } else {
        (0..cfg.folds)
            .map(|f| run_fold(&data, &assign, f, cfg))
            .collect::<Result<_, _>>()?
    };
    let n: usize = fold.iter().map(|r| r.test_size).sum();
    let correct: usize = fold.iter().map(|r| r.correct).sum();
    let abstained: usize = fold.iter().map(|r| r.abstained).sum();
    Ok(EvalReport {
        method: cfg.method,
        duplicated: data.is_duplicated(),
        folds: cfg.folds,
        seed: cfg.seed,
        objects: n,
        accuracy: correct as f64 / n as f64,
        abstain_fraction: abstained as f64 / n as f64,
        seconds: start.elapsed().as_secs_f64(),
        fold,
    })
}
