//! When objects of different classes are comparable, some objects generate
//! no representative classifier. Appending reversed copies of the features
//! makes every object generate one, so the training set is classified
//! without error.
//!
//! `cargo run --example duplication`

use poset_classify::classifier::{duplicate_features, proximity, train_representatives, TrainOptions};
use poset_classify::{Element, Method, Poset, ProductSpace, TiePolicy, TrainedModel, TrainingSet};

fn report(ts: &TrainingSet) {
    let rules: Vec<_> = (0..ts.num_classes())
        .map(|k| train_representatives(ts, k, None).unwrap())
        .collect();
    let model = TrainedModel::train(ts, Method::Representative, TrainOptions::default()).unwrap();
    for (o, &l) in ts.objects().iter().zip(ts.labels()) {
        let generated = rules[l].iter().filter(|w| proximity(ts.space(), &w.classifier, o)).count();
        let got = model.classify(o, TiePolicy::Abstain).unwrap();
        println!("  {o} class {}: generates {generated} representatives, classified {got:?}", ts.class_names()[l]);
    }
}

fn main() {
    let c = || Poset::chain(["0", "1", "2", "3"]).unwrap();
    let space = ProductSpace::new(vec![c(), c()]).unwrap();
    let objects = vec![
        Element(vec![0, 0]),
        Element(vec![1, 1]),
        Element(vec![2, 2]),
        Element(vec![3, 0]),
        Element(vec![0, 3]),
    ];
    let labels = vec![0, 1, 0, 1, 1];
    let ts = TrainingSet::new(space, objects, labels, vec!["A".into(), "B".into()]).unwrap();

    println!("original features:");
    report(&ts);
    println!("\nwith reversed copies:");
    let dup = duplicate_features(&ts).unwrap();
    println!("  features {:?}", dup.feature_names());
    report(&dup);
}
