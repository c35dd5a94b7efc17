//! Elementary classifiers over partially ordered feature domains.
//!
//! An elementary classifier `(σ, H)` prescribes a value `σᵢ` for each feature
//! in `H`. An object `S` *generates* it when `S` is below `σ` on every feature
//! of `H` (proximity `B̂`); with antichain domains this is plain equality.
//!
//! Training reduces to dualization. Irredundant coverings of a class `K` are
//! the maximal elements independent of `R(K)`; irredundant representative
//! classifiers of `K` are the maximal elements independent of the other
//! classes that still dominate some object of `K`. Both are produced by
//! [`crate::dualization::Enumerator`] and mapped back through the embedding
//! that fills unselected features with greatest elements.


use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dualization::{CoveringMatrix, DualizationError, Enumerator, SigmaCovering};
use crate::poset::Poset;
use crate::product::{Element, ProductError, ProductSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Dualization(#[from] DualizationError),
    #[error("class index {0} out of range")]
    UnknownClass(usize),
    #[error("class `{0}` has no training objects")]
    EmptyClass(String),
    #[error("{objects} objects but {labels} labels")]
    LabelCount { objects: usize, labels: usize },
    #[error("objects {first} and {second} have identical descriptions in different classes")]
    OverlappingClasses { first: usize, second: usize },
    #[error("object does not belong to the model's feature space: {0}")]
    SpaceMismatch(String),
    #[error("malformed elementary classifier: {0}")]
    Malformed(String),
}

/// `(σ, H)`: strictly increasing feature indices with one value each.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryClassifier {
    pub features: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl ElementaryClassifier {
    pub fn new(features: Vec<usize>, sigma: Vec<usize>) -> Self {
        ElementaryClassifier { features, sigma }
    }

    pub fn rank(&self) -> usize {
        self.features.len()
    }

    pub fn validate(&self, sp: &ProductSpace) -> Result<(), ClassifierError> {
        let bad = |m: String| Err(ClassifierError::Malformed(m));
        if self.features.len() != self.sigma.len() {
            return bad("feature and value counts differ".into());
        }
        if self.features.windows(2).any(|w| w[0] >= w[1]) {
            return bad("features must be strictly increasing".into());
        }
        for (&j, &s) in self.features.iter().zip(&self.sigma) {
            if j >= sp.dims() || s >= sp.factor(j).len() {
                return bad(format!("feature {j} value {s} out of range"));
            }
        }
        Ok(())
    }
}

impl From<SigmaCovering> for ElementaryClassifier {
    fn from(c: SigmaCovering) -> Self {
        ElementaryClassifier::new(c.columns, c.sigma)
    }
}

/// `B̂(σ, S, H)`: the object is below `σ` on every feature of `H`.
pub fn proximity(sp: &ProductSpace, ec: &ElementaryClassifier, s: &Element) -> bool {
    ec.features
        .iter()
        .zip(&ec.sigma)
        .all(|(&j, &v)| sp.factor(j).leq(s.0[j], v))
}

/// `B(σ, S, H)`: the object equals `σ` on every feature of `H`.
pub fn proximity_classical(ec: &ElementaryClassifier, s: &Element) -> bool {
    ec.features.iter().zip(&ec.sigma).all(|(&j, &v)| s.0[j] == v)
}

/// `S_(σ,H)`: `σ` on `H`, greatest elements elsewhere.
pub fn embed(sp: &ProductSpace, ec: &ElementaryClassifier) -> Result<Element, ClassifierError> {
    ec.validate(sp)?;
    let mut out = Vec::with_capacity(sp.dims());
    for (j, p) in sp.factors().iter().enumerate() {
        match ec.features.iter().position(|&f| f == j) {
            Some(i) => out.push(ec.sigma[i]),
            None => out.push(
                p.greatest()
                    .ok_or(DualizationError::NoGreatestElement(j))?,
            ),
        }
    }
    Ok(Element(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingSet {
    space: ProductSpace,
    objects: Vec<Element>,
    labels: Vec<usize>,
    class_names: Vec<String>,
    feature_names: Vec<String>,
    fingerprint: String,
    duplicated: bool,
}

impl TrainingSet {
    /// Class `k` is named `class_names[k]`; every class needs an object.
    pub fn new(
        space: ProductSpace,
        objects: Vec<Element>,
        labels: Vec<usize>,
        class_names: Vec<String>,
    ) -> Result<Self, ClassifierError> {
        if objects.len() != labels.len() {
            return Err(ClassifierError::LabelCount {
                objects: objects.len(),
                labels: labels.len(),
            });
        }
        for o in &objects {
            space.validate(o)?;
        }
        let mut seen = vec![false; class_names.len()];
        for &l in &labels {
            *seen.get_mut(l).ok_or(ClassifierError::UnknownClass(l))? = true;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(ClassifierError::EmptyClass(class_names[k].clone()));
        }
        let feature_names = (0..space.dims()).map(|j| format!("x{}", j + 1)).collect();
        Ok(TrainingSet {
            space,
            objects,
            labels,
            class_names,
            feature_names,
            fingerprint: String::new(),
            duplicated: false,
        })
    }

    pub fn with_feature_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.space.dims(), "one name per feature");
        self.feature_names = names;
        self
    }

    pub fn with_fingerprint(mut self, fingerprint: impl Into<String>) -> Self {
        self.fingerprint = fingerprint.into();
        self
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn objects(&self) -> &[Element] {
        &self.objects
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn is_duplicated(&self) -> bool {
        self.duplicated
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    /// `R(K)`.
    pub fn class_objects(&self, k: usize) -> Vec<Element> {
        self.objects
            .iter()
            .zip(&self.labels)
            .filter(|&(_, &l)| l == k)
            .map(|(o, _)| o.clone())
            .collect()
    }

    /// `R(K̄)`: every object outside class `k`.
    pub fn complement_objects(&self, k: usize) -> Vec<Element> {
        self.objects
            .iter()
            .zip(&self.labels)
            .filter(|&(_, &l)| l != k)
            .map(|(o, _)| o.clone())
            .collect()
    }

    /// Restriction to the given object indices. Classes left empty are kept
    /// in the name table.
    pub fn subset(&self, indices: &[usize]) -> TrainingSet {
        TrainingSet {
            objects: indices.iter().map(|&i| self.objects[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            ..self.clone()
        }
    }

    fn check_class(&self, k: usize) -> Result<(), ClassifierError> {
        if k >= self.num_classes() {
            return Err(ClassifierError::UnknownClass(k));
        }
        Ok(())
    }

    /// Number of objects of class `k` that generate `ec`.
    pub fn generating_count(&self, ec: &ElementaryClassifier, k: usize) -> usize {
        self.objects
            .iter()
            .zip(&self.labels)
            .filter(|&(o, &l)| l == k && proximity(&self.space, ec, o))
            .count()
    }

    fn generated_outside(&self, ec: &ElementaryClassifier, k: usize) -> bool {
        self.objects
            .iter()
            .zip(&self.labels)
            .any(|(o, &l)| l != k && proximity(&self.space, ec, o))
    }

    /// No pair of objects, one in `k` and one outside, both generate `ec`.
    pub fn is_correct(&self, ec: &ElementaryClassifier, k: usize) -> bool {
        self.generating_count(ec, k) == 0 || !self.generated_outside(ec, k)
    }

    /// Correct and generated by at least one object of `k`.
    pub fn is_representative(&self, ec: &ElementaryClassifier, k: usize) -> bool {
        self.generating_count(ec, k) > 0 && !self.generated_outside(ec, k)
    }

    /// Generated by no object of `k`.
    pub fn is_covering(&self, ec: &ElementaryClassifier, k: usize) -> bool {
        self.generating_count(ec, k) == 0
    }

    /// Every object contains a representative classifier of its own class
    /// supported on `features`.
    ///
    /// The object's own values on `features` are the smallest `σ` it
    /// generates, and correctness only gets harder as `σ` grows, so checking
    /// that single `σ` per object decides the definition.
    pub fn is_test(&self, features: &[usize]) -> bool {
        let mut feats = features.to_vec();
        feats.sort_unstable();
        feats.dedup();
        self.objects.iter().zip(&self.labels).all(|(s, &k)| {
            let ec = ElementaryClassifier::new(
                feats.clone(),
                feats.iter().map(|&j| s.0[j]).collect(),
            );
            !self.generated_outside(&ec, k)
        })
    }
}

/// A classifier with its voting weight `P_(σ,H)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightedClassifier {
    pub classifier: ElementaryClassifier,
    pub weight: u64,
}

/// Irredundant coverings of class `k`, each with weight 1.
pub fn train_coverings(
    ts: &TrainingSet,
    k: usize,
    max_rank: Option<usize>,
) -> Result<Vec<WeightedClassifier>, ClassifierError> {
    ts.check_class(k)?;
    let m = CoveringMatrix::new(ts.space.clone(), ts.class_objects(k))?;
    let sols = Enumerator::new(&m)?.max_rank(max_rank).collect();
    Ok(sols
        .into_iter()
        .map(|s| WeightedClassifier {
            classifier: s.covering.into(),
            weight: 1,
        })
        .collect())
}

/// Irredundant representative classifiers of class `k` against all other
/// classes, weighted by the number of objects of `k` that generate them.
pub fn train_representatives(
    ts: &TrainingSet,
    k: usize,
    max_rank: Option<usize>,
) -> Result<Vec<WeightedClassifier>, ClassifierError> {
    ts.check_class(k)?;
    let m = CoveringMatrix::new(ts.space.clone(), ts.complement_objects(k))?;
    let sols = Enumerator::new(&m)?
        .max_rank(max_rank)
        .dominating(ts.class_objects(k))?
        .collect();
    Ok(sols
        .into_iter()
        .map(|s| WeightedClassifier {
            classifier: s.covering.into(),
            weight: s.support as u64,
        })
        .collect())
}

/// Suffix appended to the names of reversed feature copies.
pub const REVERSED_SUFFIX: &str = "~rev";

/// The reversed copy of one factor: drop a synthetic top, reverse, complete.
pub fn reversed_factor(p: &Poset) -> Poset {
    p.without_synthetic_top()
        .reversed()
        .completed()
        .expect("reversal of a valid factor completes")
}

/// The space followed by the reversed copy of each of its factors.
pub fn duplicated_space(sp: &ProductSpace) -> Result<ProductSpace, ClassifierError> {
    let mut factors: Vec<Poset> = sp.factors().to_vec();
    factors.extend(sp.factors().iter().map(reversed_factor));
    Ok(ProductSpace::new(factors)?)
}

/// Appends a reversed-order copy of every feature.
///
/// Objects `(a₁,…,aₙ)` become `(a₁,…,aₙ,a₁,…,aₙ)`. Afterwards two objects
/// of different classes are incomparable, so every object generates a
/// representative classifier of its own class.
pub fn duplicate_features(ts: &TrainingSet) -> Result<TrainingSet, ClassifierError> {
    let mut first_seen: std::collections::HashMap<&Element, usize> = Default::default();
    for (i, o) in ts.objects.iter().enumerate() {
        match first_seen.get(o) {
            Some(&f) if ts.labels[f] != ts.labels[i] => {
                return Err(ClassifierError::OverlappingClasses { first: f, second: i })
            }
            Some(_) => {}
            None => {
                first_seen.insert(o, i);
            }
        }
    }
    for (i, o) in ts.objects.iter().enumerate() {
        for (j, &v) in o.0.iter().enumerate() {
            let p = ts.space.factor(j);
            if p.has_synthetic_top() && p.greatest() == Some(v) {
                return Err(ClassifierError::Malformed(format!(
                    "object {i} takes the added greatest value of feature {j}"
                )));
            }
        }
    }
    let space = duplicated_space(&ts.space)?;
    let objects = ts
        .objects
        .iter()
        .map(|o| {
            let mut v = o.0.clone();
            v.extend_from_slice(&o.0);
            Element(v)
        })
        .collect();
    let mut feature_names = ts.feature_names.clone();
    feature_names.extend(
        ts.feature_names
            .iter()
            .map(|n| format!("{n}{REVERSED_SUFFIX}")),
    );
    Ok(TrainingSet {
        space,
        objects,
        labels: ts.labels.clone(),
        class_names: ts.class_names.clone(),
        feature_names,
        fingerprint: ts.fingerprint.clone(),
        duplicated: true,
    })
}

/// Applies the same duplication to a single object.
pub fn duplicate_object(s: &Element) -> Element {
    let mut v = s.0.clone();
    v.extend_from_slice(&s.0);
    Element(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Representative,
    Covering,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "representative" => Ok(Method::Representative),
            "covering" => Ok(Method::Covering),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Representative => "representative",
            Method::Covering => "covering",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Ties and empty evidence produce no decision.
    #[default]
    Abstain,
    /// Ties go to the lowest class index.
    LowestIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Class(usize),
    Abstain,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassScore {
    pub raw: f64,
    pub normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRules {
    pub name: String,
    pub rules: Vec<WeightedClassifier>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TrainOptions {
    pub max_rank: Option<usize>,
    /// Train classes on the rayon pool.
    pub parallel: bool,
}

/// Per class voting classifiers over a fixed feature space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainedModel {
    pub method: Method,
    pub fingerprint: String,
    pub duplicated: bool,
    pub space: ProductSpace,
    pub feature_names: Vec<String>,
    pub classes: Vec<ClassRules>,
}

impl TrainedModel {
    pub fn train(
        ts: &TrainingSet,
        method: Method,
        opts: TrainOptions,
    ) -> Result<TrainedModel, ClassifierError> {
        let one = |k: usize| match method {
            Method::Representative => train_representatives(ts, k, opts.max_rank),
            Method::Covering => train_coverings(ts, k, opts.max_rank),
        };
        let per_class: Vec<Vec<WeightedClassifier>> = if opts.parallel {
            (0..ts.num_classes())
                .into_par_iter()
                .map(one)
                .collect::<Result<_, _>>()?
        } else {
            (0..ts.num_classes()).map(one).collect::<Result<_, _>>()?
        };
        Ok(TrainedModel {
            method,
            fingerprint: ts.fingerprint.clone(),
            duplicated: ts.duplicated,
            space: ts.space.clone(),
            feature_names: ts.feature_names.clone(),
            classes: ts
                .class_names
                .iter()
                .cloned()
                .zip(per_class)
                .map(|(name, rules)| ClassRules { name, rules })
                .collect(),
        })
    }

    pub fn class_names(&self) -> Vec<&str> {
        self.classes.iter().map(|c| c.name.as_str()).collect()
    }

    /// Per class vote: weighted generated classifiers over total weight for
    /// the representative method, non-generated coverings over their count
    /// for the covering method. A class without classifiers scores 0.
    pub fn estimate(&self, s: &Element) -> Result<Vec<ClassScore>, ClassifierError> {
        self.space
            .validate(s)
            .map_err(|e| ClassifierError::SpaceMismatch(e.to_string()))?;
        Ok(self
            .classes
            .iter()
            .map(|c| {
                let (raw, total) = match self.method {
                    Method::Representative => c.rules.iter().fold((0.0, 0.0), |(r, t), w| {
                        let b = proximity(&self.space, &w.classifier, s) as u64 as f64;
                        (r + w.weight as f64 * b, t + w.weight as f64)
                    }),
                    Method::Covering => c.rules.iter().fold((0.0, 0.0), |(r, t), w| {
                        let b = proximity(&self.space, &w.classifier, s) as u64 as f64;
                        (r + 1.0 - b, t + 1.0)
                    }),
                };
                ClassScore {
                    raw,
                    normalized: if total > 0.0 { raw / total } else { 0.0 },
                }
            })
            .collect())
    }

    pub fn classify(&self, s: &Element, tie: TiePolicy) -> Result<Prediction, ClassifierError> {
        let scores = self.estimate(s)?;
        if self.classes.iter().all(|c| c.rules.is_empty()) {
            return Ok(Prediction::Abstain);
        }
        let best = scores
            .iter()
            .map(|s| s.normalized)
            .fold(f64::NEG_INFINITY, f64::max);
        let winners: Vec<usize> = scores
            .iter()
            .enumerate()
            .filter(|(_, s)| s.normalized == best)
            .map(|(k, _)| k)
            .collect();
        Ok(match (winners.as_slice(), tie) {
            ([only], _) => Prediction::Class(*only),
            ([first, ..], TiePolicy::LowestIndex) => Prediction::Class(*first),
            _ => Prediction::Abstain,
        })
    }
}
