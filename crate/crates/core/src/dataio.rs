//! File formats: order specifications, datasets, models and dualization
//! instances.
//!
//! Everything structured is TOML with unknown keys rejected. Datasets may
//! also be plain CSV with a header row, paired with a separate order spec.
//! The layouts are documented with examples in `docs/formats.md` at the
//! repository root.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classifier::{
    duplicate_features, duplicated_space, ClassRules, ClassifierError, ElementaryClassifier,
    Method, TrainedModel, TrainingSet, WeightedClassifier,
};
use crate::dualization::{CoveringMatrix, DualizationError, Solution};
use crate::poset::{Poset, PosetError, TOP_LABEL};
use crate::product::{Element, ProductError, ProductSpace};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("TOML: {0}")]
    Toml(String),
    #[error("CSV line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error("duplicate feature name `{0}`")]
    DuplicateFeature(String),
    #[error("feature `{feature}`: {source}")]
    Order {
        feature: String,
        #[source]
        source: PosetError,
    },
    #[error("feature `{0}` uses the reserved label `{TOP_LABEL}`")]
    ReservedLabelCollision(String),
    #[error("feature `{feature}`: chain_auto value `{value}` is not numeric")]
    NotNumeric { feature: String, value: String },
    #[error("feature `{0}`: covers are only allowed for kind = \"poset\"")]
    UnexpectedCovers(String),
    #[error("feature `{feature}`: cover refers to unknown value `{value}`")]
    UnknownCoverValue { feature: String, value: String },
    #[error("line {line}: value `{value}` is not declared for feature `{feature}`")]
    UnknownValue {
        feature: String,
        value: String,
        line: usize,
    },
    #[error("line {line}: blank value for `{column}`")]
    BlankValue { column: String, line: usize },
    #[error("line {line}: expected {expected} fields, found {found}")]
    Arity {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("dataset has no column for feature `{0}`")]
    MissingColumn(String),
    #[error("dataset column `{0}` is not declared in the order spec")]
    UnknownColumn(String),
    #[error("model was trained with order spec {model}, got {spec}")]
    FingerprintMismatch { model: String, spec: String },
    #[error("model refers to unknown {what} `{name}`")]
    UnknownModelName { what: &'static str, name: String },
    #[error("dataset is empty")]
    Empty,
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Dualization(#[from] DualizationError),
}

impl From<toml::de::Error> for DataError {
    fn from(e: toml::de::Error) -> Self {
        DataError::Toml(e.to_string())
    }
}

impl From<toml::ser::Error> for DataError {
    fn from(e: toml::ser::Error) -> Self {
        DataError::Toml(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureKind {
    /// Values ordered as listed.
    Chain,
    /// Numeric values, ordered ascending.
    ChainAuto,
    Antichain,
    /// Explicit Hasse diagram in `covers`.
    Poset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureSpec {
    pub name: String,
    pub kind: FeatureKind,
    pub values: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub covers: Vec<[String; 2]>,
}

impl FeatureSpec {
    pub fn chain(name: &str, values: &[&str]) -> Self {
        FeatureSpec {
            name: name.into(),
            kind: FeatureKind::Chain,
            values: values.iter().map(|s| s.to_string()).collect(),
            covers: Vec::new(),
        }
    }

    pub fn antichain(name: &str, values: &[&str]) -> Self {
        FeatureSpec {
            kind: FeatureKind::Antichain,
            ..FeatureSpec::chain(name, values)
        }
    }

    /// The declared order, before completion with a greatest element.
    pub fn poset(&self) -> Result<Poset, DataError> {
        let wrap = |source| DataError::Order {
            feature: self.name.clone(),
            source,
        };
        match self.kind {
            FeatureKind::Chain | FeatureKind::ChainAuto => {
                Poset::chain(self.values.iter().cloned()).map_err(wrap)
            }
            FeatureKind::Antichain => Poset::antichain(self.values.iter().cloned()).map_err(wrap),
            FeatureKind::Poset => {
                let index: HashMap<&str, usize> = self
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.as_str(), i))
                    .collect();
                let mut edges = Vec::with_capacity(self.covers.len());
                for [lo, hi] in &self.covers {
                    let look = |v: &String| {
                        index.get(v.as_str()).copied().ok_or_else(|| {
                            DataError::UnknownCoverValue {
                                feature: self.name.clone(),
                                value: v.clone(),
                            }
                        })
                    };
                    edges.push((look(lo)?, look(hi)?));
                }
                Poset::new(self.values.iter().cloned(), edges).map_err(wrap)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    #[serde(default)]
    duplicate_reversed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    class_column: Option<String>,
    feature: Vec<FeatureSpec>,
}

/// Per-feature orders plus global options. Always held in canonical form:
/// `chain_auto` features are resolved into sorted chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpec {
    pub features: Vec<FeatureSpec>,
    /// Append reversed copies of all features before training.
    pub duplicate_reversed: bool,
    /// CSV column holding the class; the last column when unset.
    pub class_column: Option<String>,
}

impl OrderSpec {
    pub fn new(features: Vec<FeatureSpec>) -> Result<Self, DataError> {
        let spec = OrderSpec {
            features,
            duplicate_reversed: false,
            class_column: None,
        };
        spec.canonical()
    }

    fn canonical(mut self) -> Result<Self, DataError> {
        let mut names = HashSet::new();
        for f in &mut self.features {
            if !names.insert(f.name.clone()) {
                return Err(DataError::DuplicateFeature(f.name.clone()));
            }
            if f.values.iter().any(|v| v == TOP_LABEL) {
                return Err(DataError::ReservedLabelCollision(f.name.clone()));
            }
            if f.kind != FeatureKind::Poset && !f.covers.is_empty() {
                return Err(DataError::UnexpectedCovers(f.name.clone()));
            }
            if f.kind == FeatureKind::ChainAuto {
                let mut keyed = Vec::with_capacity(f.values.len());
                for v in &f.values {
                    let x: f64 = v.trim().parse().map_err(|_| DataError::NotNumeric {
                        feature: f.name.clone(),
                        value: v.clone(),
                    })?;
                    keyed.push((x, v.clone()));
                }
                keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
                f.values = keyed.into_iter().map(|(_, v)| v).collect();
                f.kind = FeatureKind::Chain;
            }
            f.poset()?;
        }
        Ok(self)
    }

    pub fn to_toml(&self) -> Result<String, DataError> {
        Ok(toml::to_string(&SpecDoc {
            duplicate_reversed: self.duplicate_reversed,
            class_column: self.class_column.clone(),
            feature: self.features.clone(),
        })?)
    }

    /// First 16 hex digits of the SHA-256 of the canonical TOML form.
    pub fn fingerprint(&self) -> String {
        let text = self.to_toml().expect("order spec serializes");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn feature_names(&self) -> Vec<String> {
        self.features.iter().map(|f| f.name.clone()).collect()
    }

    pub fn posets(&self) -> Result<Vec<Poset>, DataError> {
        self.features.iter().map(FeatureSpec::poset).collect()
    }
}

pub fn parse_order_spec(text: &str) -> Result<OrderSpec, DataError> {
    let doc: SpecDoc = toml::from_str(text)?;
    OrderSpec {
        features: doc.feature,
        duplicate_reversed: doc.duplicate_reversed,
        class_column: doc.class_column,
    }
    .canonical()
}

/// The feature space with every factor given a greatest element.
pub fn complete_greatest(spec: &OrderSpec) -> Result<ProductSpace, DataError> {
    let factors = spec
        .features
        .iter()
        .map(|f| {
            f.poset()?.completed().map_err(|source| DataError::Order {
                feature: f.name.clone(),
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ProductSpace::new(factors)?)
}

/// Rows of value labels in spec feature order, with their class labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDataset {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub classes: Vec<String>,
    /// Source line of each row, for error messages.
    pub lines: Vec<usize>,
}

impl RawDataset {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn check_value(spec: &OrderSpec, j: usize, value: &str, line: usize) -> Result<usize, DataError> {
    let f = &spec.features[j];
    f.values
        .iter()
        .position(|v| v == value)
        .ok_or_else(|| DataError::UnknownValue {
            feature: f.name.clone(),
            value: value.to_string(),
            line,
        })
}

/// Parses a CSV table with a header row. Every spec feature needs a column;
/// the class is `spec.class_column` or the last column.
pub fn parse_dataset(text: &str, spec: &OrderSpec) -> Result<RawDataset, DataError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| DataError::Csv { line: 1, msg: e.to_string() })?
        .iter()
        .map(str::to_string)
        .collect();
    let class_idx = match &spec.class_column {
        Some(c) => header
            .iter()
            .position(|h| h == c)
            .ok_or_else(|| DataError::MissingColumn(c.clone()))?,
        None => header.len().checked_sub(1).ok_or(DataError::Empty)?,
    };
    let mut cols = Vec::with_capacity(spec.features.len());
    for f in &spec.features {
        let i = header
            .iter()
            .position(|h| h == &f.name)
            .ok_or_else(|| DataError::MissingColumn(f.name.clone()))?;
        cols.push(i);
    }
    for (i, h) in header.iter().enumerate() {
        if i != class_idx && !cols.contains(&i) {
            return Err(DataError::UnknownColumn(h.clone()));
        }
    }

    let mut out = RawDataset {
        feature_names: spec.feature_names(),
        rows: Vec::new(),
        classes: Vec::new(),
        lines: Vec::new(),
    };
    for rec in rdr.records() {
        let rec = rec.map_err(|e| DataError::Csv {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != header.len() {
            return Err(DataError::Arity { line, expected: header.len(), found: rec.len() });
        }
        for (i, v) in rec.iter().enumerate() {
            if v.is_empty() {
                return Err(DataError::BlankValue { column: header[i].clone(), line });
            }
        }
        let row: Vec<String> = cols.iter().map(|&i| rec[i].to_string()).collect();
        for (j, v) in row.iter().enumerate() {
            check_value(spec, j, v, line)?;
        }
        out.rows.push(row);
        out.classes.push(rec[class_idx].to_string());
        out.lines.push(line);
    }
    if out.rows.is_empty() {
        return Err(DataError::Empty);
    }
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DataSection {
    rows: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatasetDoc {
    #[serde(default)]
    duplicate_reversed: bool,
    feature: Vec<FeatureSpec>,
    data: DataSection,
}

/// Parses a self-contained TOML dataset: the order spec followed by a
/// `[data]` table whose rows list the feature values then the class.
pub fn parse_dataset_document(text: &str) -> Result<(OrderSpec, RawDataset), DataError> {
    let doc: DatasetDoc = toml::from_str(text)?;
    let spec = OrderSpec {
        features: doc.feature,
        duplicate_reversed: doc.duplicate_reversed,
        class_column: None,
    }
    .canonical()?;
    let n = spec.features.len();
    let mut out = RawDataset {
        feature_names: spec.feature_names(),
        rows: Vec::new(),
        classes: Vec::new(),
        lines: Vec::new(),
    };
    for (i, mut row) in doc.data.rows.into_iter().enumerate() {
        let line = i + 1;
        if row.len() != n + 1 {
            return Err(DataError::Arity { line, expected: n + 1, found: row.len() });
        }
        if let Some(c) = row.iter().position(String::is_empty) {
            let column = spec.features.get(c).map_or("class".into(), |f| f.name.clone());
            return Err(DataError::BlankValue { column, line });
        }
        let class = row.pop().expect("arity checked");
        for (j, v) in row.iter().enumerate() {
            check_value(&spec, j, v, line)?;
        }
        out.rows.push(row);
        out.classes.push(class);
        out.lines.push(line);
    }
    if out.rows.is_empty() {
        return Err(DataError::Empty);
    }
    Ok((spec, out))
}

/// Serializes a dataset in the self-contained TOML form.
pub fn dataset_document(spec: &OrderSpec, data: &RawDataset) -> Result<String, DataError> {
    let rows = data
        .rows
        .iter()
        .zip(&data.classes)
        .map(|(r, c)| {
            let mut r = r.clone();
            r.push(c.clone());
            r
        })
        .collect();
    Ok(toml::to_string(&DatasetDoc {
        duplicate_reversed: spec.duplicate_reversed,
        feature: spec.features.clone(),
        data: DataSection { rows },
    })?)
}

/// Encodes one row of value labels (spec feature order) as an element of
/// the completed space.
pub fn encode_object(spec: &OrderSpec, values: &[String], line: usize) -> Result<Element, DataError> {
    if values.len() != spec.features.len() {
        return Err(DataError::Arity {
            line,
            expected: spec.features.len(),
            found: values.len(),
        });
    }
    values
        .iter()
        .enumerate()
        .map(|(j, v)| check_value(spec, j, v, line))
        .collect::<Result<Vec<_>, _>>()
        .map(Element)
}

/// Builds the training set: completed space, encoded objects, classes in
/// order of first appearance. Duplicates features when the spec or
/// `duplicate` asks for it.
pub fn to_training_set(
    spec: &OrderSpec,
    data: &RawDataset,
    duplicate: bool,
) -> Result<TrainingSet, DataError> {
    let space = complete_greatest(spec)?;
    let mut class_names: Vec<String> = Vec::new();
    let mut labels = Vec::with_capacity(data.len());
    let mut objects = Vec::with_capacity(data.len());
    for ((row, class), &line) in data.rows.iter().zip(&data.classes).zip(&data.lines) {
        objects.push(encode_object(spec, row, line)?);
        let k = match class_names.iter().position(|c| c == class) {
            Some(k) => k,
            None => {
                class_names.push(class.clone());
                class_names.len() - 1
            }
        };
        labels.push(k);
    }
    let ts = TrainingSet::new(space, objects, labels, class_names)?
        .with_feature_names(spec.feature_names())
        .with_fingerprint(spec.fingerprint());
    if duplicate || spec.duplicate_reversed {
        Ok(duplicate_features(&ts)?)
    } else {
        Ok(ts)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    features: Vec<String>,
    values: Vec<String>,
    weight: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassDoc {
    name: String,
    #[serde(default)]
    rule: Vec<RuleDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    method: Method,
    fingerprint: String,
    duplicated: bool,
    features: Vec<String>,
    class: Vec<ClassDoc>,
}

pub fn save_model(model: &TrainedModel) -> Result<String, DataError> {
    let class = model
        .classes
        .iter()
        .map(|c| ClassDoc {
            name: c.name.clone(),
            rule: c
                .rules
                .iter()
                .map(|w| RuleDoc {
                    features: w
                        .classifier
                        .features
                        .iter()
                        .map(|&j| model.feature_names[j].clone())
                        .collect(),
                    values: w
                        .classifier
                        .features
                        .iter()
                        .zip(&w.classifier.sigma)
                        .map(|(&j, &v)| model.space.factor(j).label(v).to_string())
                        .collect(),
                    weight: w.weight,
                })
                .collect(),
        })
        .collect();
    Ok(toml::to_string(&ModelDoc {
        method: model.method,
        fingerprint: model.fingerprint.clone(),
        duplicated: model.duplicated,
        features: model.feature_names.clone(),
        class,
    })?)
}

/// Loads a model saved by [`save_model`], rebuilding its feature space from
/// the order spec it was trained with.
pub fn load_model(text: &str, spec: &OrderSpec) -> Result<TrainedModel, DataError> {
    let doc: ModelDoc = toml::from_str(text)?;
    let fp = spec.fingerprint();
    if doc.fingerprint != fp {
        return Err(DataError::FingerprintMismatch { model: doc.fingerprint, spec: fp });
    }
    let mut space = complete_greatest(spec)?;
    let mut feature_names = spec.feature_names();
    if doc.duplicated {
        space = duplicated_space(&space)?;
        feature_names.extend(
            spec.feature_names()
                .into_iter()
                .map(|n| format!("{n}{}", crate::classifier::REVERSED_SUFFIX)),
        );
    }
    if doc.features != feature_names {
        return Err(DataError::UnknownModelName {
            what: "feature list",
            name: doc.features.join(","),
        });
    }
    let mut classes = Vec::with_capacity(doc.class.len());
    for c in doc.class {
        let mut rules = Vec::with_capacity(c.rule.len());
        for r in c.rule {
            if r.features.len() != r.values.len() {
                return Err(ClassifierError::Malformed(format!(
                    "rule with {} features and {} values",
                    r.features.len(),
                    r.values.len()
                ))
                .into());
            }
            let mut pairs = Vec::with_capacity(r.features.len());
            for (f, v) in r.features.iter().zip(&r.values) {
                let j = feature_names.iter().position(|n| n == f).ok_or_else(|| {
                    DataError::UnknownModelName { what: "feature", name: f.clone() }
                })?;
                let x = space.factor(j).index_of(v).ok_or_else(|| DataError::UnknownModelName {
                    what: "value",
                    name: v.clone(),
                })?;
                pairs.push((j, x));
            }
            let ec = ElementaryClassifier::new(
                pairs.iter().map(|p| p.0).collect(),
                pairs.iter().map(|p| p.1).collect(),
            );
            ec.validate(&space)?;
            rules.push(WeightedClassifier { classifier: ec, weight: r.weight });
        }
        classes.push(ClassRules { name: c.name, rules });
    }
    Ok(TrainedModel {
        method: doc.method,
        fingerprint: doc.fingerprint,
        duplicated: doc.duplicated,
        space,
        feature_names,
        classes,
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    feature: Vec<FeatureSpec>,
    rows: Vec<Vec<String>>,
}

/// Parses a dualization instance: factor orders as in an order spec, then
/// `rows`, each a tuple of value labels. Factors are completed with greatest
/// elements.
pub fn parse_instance(text: &str) -> Result<(OrderSpec, CoveringMatrix), DataError> {
    let doc: InstanceDoc = toml::from_str(text)?;
    let spec = OrderSpec::new(doc.feature)?;
    let space = complete_greatest(&spec)?;
    let rows = doc
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| encode_object(&spec, r, i + 1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((spec, CoveringMatrix::new(space, rows)?))
}

/// Serializes an instance; rows are written one per line.
pub fn instance_document(spec: &OrderSpec, m: &CoveringMatrix) -> Result<String, DataError> {
    let head = toml::to_string(&SpecDoc {
        duplicate_reversed: false,
        class_column: None,
        feature: spec.features.clone(),
    })?;
    let head = head.trim_start_matches("duplicate_reversed = false\n").trim_start();
    let mut out = String::from("rows = [\n");
    for r in m.rows() {
        let labels: Vec<String> = r
            .0
            .iter()
            .enumerate()
            .map(|(j, &v)| format!("{:?}", m.space().factor(j).label(v)))
            .collect();
        out.push_str(&format!("    [{}],\n", labels.join(", ")));
    }
    out.push_str("]\n\n");
    out.push_str(head);
    Ok(out)
}

/// One output line: `H=(j₁,…) sigma=(v₁,…) x=(…)`, columns 1-based, values
/// as labels.
pub fn format_solution(space: &ProductSpace, s: &Solution) -> String {
    let cols: Vec<String> = s.covering.columns.iter().map(|j| (j + 1).to_string()).collect();
    let sigma: Vec<&str> = s
        .covering
        .columns
        .iter()
        .zip(&s.covering.sigma)
        .map(|(&j, &v)| space.factor(j).label(v))
        .collect();
    let x: Vec<&str> = s
        .element
        .0
        .iter()
        .enumerate()
        .map(|(j, &v)| space.factor(j).label(v))
        .collect();
    format!("H=({}) sigma=({}) x=({})", cols.join(","), sigma.join(","), x.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPEC: &str = r#"
[[feature]]
name = "size"
kind = "chain"
values = ["low", "med", "high"]

[[feature]]
name = "color"
kind = "antichain"
values = ["r", "g", "b"]
"#;

    #[test]
    fn chain_value_resolves_to_index() {
        let spec = parse_order_spec(SPEC).unwrap();
        let e = encode_object(&spec, &["med".into(), "g".into()], 1).unwrap();
        assert_eq!(e, Element(vec![1, 1]));
    }

    #[test]
    fn unknown_value_rejected() {
        let spec = parse_order_spec(SPEC).unwrap();
        let err = parse_dataset("size,color,class\nlow,purple,a\n", &spec).unwrap_err();
        assert!(matches!(err, DataError::UnknownValue { ref value, line: 2, .. } if value == "purple"));
    }

    #[test]
    fn unknown_fields_rejected() {
        let bad = format!("{SPEC}\nextra = 1\n");
        assert!(matches!(parse_order_spec(&bad), Err(DataError::Toml(_))));
        let bad = SPEC.replace("kind = \"chain\"", "kind = \"chain\"\nweight = 3");
        assert!(matches!(parse_order_spec(&bad), Err(DataError::Toml(_))));
    }

    #[test]
    fn spec_validation() {
        let dup = SPEC.replace("name = \"color\"", "name = \"size\"");
        assert!(matches!(parse_order_spec(&dup), Err(DataError::DuplicateFeature(_))));
        let top = SPEC.replace("\"b\"]", "\"__top__\"]");
        assert!(matches!(parse_order_spec(&top), Err(DataError::ReservedLabelCollision(_))));
        let dup_label = SPEC.replace("\"b\"]", "\"r\"]");
        assert!(matches!(parse_order_spec(&dup_label), Err(DataError::Order { .. })));
        let cyc = r#"
[[feature]]
name = "p"
kind = "poset"
values = ["a", "b"]
covers = [["a", "b"], ["b", "a"]]
"#;
        assert!(matches!(
            parse_order_spec(cyc),
            Err(DataError::Order { source: PosetError::CycleDetected(_), .. })
        ));
        let covers_on_chain = r#"
[[feature]]
name = "p"
kind = "chain"
values = ["a", "b"]
covers = [["a", "b"]]
"#;
        assert!(matches!(parse_order_spec(covers_on_chain), Err(DataError::UnexpectedCovers(_))));
    }

    #[test]
    fn chain_auto_sorts_numerically() {
        let s = r#"
[[feature]]
name = "age"
kind = "chain_auto"
values = ["10", "9", "100", "2.5"]
"#;
        let spec = parse_order_spec(s).unwrap();
        assert_eq!(spec.features[0].kind, FeatureKind::Chain);
        assert_eq!(spec.features[0].values, vec!["2.5", "9", "10", "100"]);
        let bad = s.replace("\"9\"", "\"nine\"");
        assert!(matches!(parse_order_spec(&bad), Err(DataError::NotNumeric { .. })));
    }

    #[test]
    fn completion_of_spec() {
        let spec = parse_order_spec(SPEC).unwrap();
        let sp = complete_greatest(&spec).unwrap();
        assert_eq!(sp.factor(0).len(), 3);
        assert_eq!(sp.factor(0).greatest(), Some(2));
        assert_eq!(sp.factor(1).len(), 4);
        assert_eq!(sp.factor(1).label(3), TOP_LABEL);
        let diamond = r#"
[[feature]]
name = "d"
kind = "poset"
values = ["bot", "a", "b", "top"]
covers = [["bot", "a"], ["bot", "b"], ["a", "top"], ["b", "top"]]
"#;
        let sp = complete_greatest(&parse_order_spec(diamond).unwrap()).unwrap();
        assert_eq!(sp.factor(0).len(), 4);
    }

    #[test]
    fn fingerprint_tracks_canonical_form() {
        let a = parse_order_spec(SPEC).unwrap();
        let b = parse_order_spec(&SPEC.replace("\n\n", "\n\n\n")).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = parse_order_spec(&SPEC.replace("\"antichain\"", "\"chain\"")).unwrap();
        assert_ne!(a.fingerprint(), c.fingerprint());
        assert_eq!(a.fingerprint().len(), 16);
    }

    #[test]
    fn csv_checks() {
        let spec = parse_order_spec(SPEC).unwrap();
        assert!(matches!(
            parse_dataset("size,color,class\nlow,,a\n", &spec),
            Err(DataError::BlankValue { .. })
        ));
        assert!(matches!(
            parse_dataset("size,class\nlow,a\n", &spec),
            Err(DataError::MissingColumn(_))
        ));
        assert!(matches!(
            parse_dataset("size,color,weight,class\nlow,r,3,a\n", &spec),
            Err(DataError::UnknownColumn(_))
        ));
        // Column order is free; class is the last column.
        let d = parse_dataset("color,size,class\nr,low,a\ng,high,b\n", &spec).unwrap();
        assert_eq!(d.rows[1], vec!["high".to_string(), "g".to_string()]);
        assert_eq!(d.classes, vec!["a", "b"]);
    }

    #[test]
    fn training_set_from_document() {
        let text = format!("{SPEC}\n[data]\nrows = [[\"low\", \"r\", \"x\"], [\"high\", \"b\", \"y\"], [\"med\", \"r\", \"x\"]]\n");
        let (spec, raw) = parse_dataset_document(&text).unwrap();
        let ts = to_training_set(&spec, &raw, false).unwrap();
        assert_eq!(ts.class_names(), &["x".to_string(), "y".to_string()]);
        assert_eq!(ts.labels(), &[0, 1, 0]);
        assert_eq!(ts.fingerprint(), spec.fingerprint());
        let dup = to_training_set(&spec, &raw, true).unwrap();
        assert_eq!(dup.space().dims(), 4);
        assert!(dup.is_duplicated());

        let back = dataset_document(&spec, &raw).unwrap();
        let (spec2, raw2) = parse_dataset_document(&back).unwrap();
        assert_eq!(spec2, spec);
        assert_eq!(raw2.rows, raw.rows);
        assert_eq!(raw2.classes, raw.classes);
    }

    #[test]
    fn instance_round_trip() {
        let text = r#"
rows = [
    ["1", "1"],
]

[[feature]]
name = "a"
kind = "chain"
values = ["0", "1", "2"]

[[feature]]
name = "b"
kind = "chain"
values = ["0", "1", "2"]
"#;
        let (spec, m) = parse_instance(text).unwrap();
        assert_eq!(m.rows(), &[Element(vec![1, 1])]);
        let again = instance_document(&spec, &m).unwrap();
        let (spec2, m2) = parse_instance(&again).unwrap();
        assert_eq!(spec, spec2);
        assert_eq!(m, m2);
    }
}
