//! Training and voting on a tiny dataset over two 3-element chains.
//!
//! `cargo run --example toy_training`

use poset_classify::classifier::{Prediction, TrainOptions};
use poset_classify::dataio::{parse_dataset_document, save_model, to_training_set};
use poset_classify::{Element, Method, TiePolicy, TrainedModel};

const TOY: &str = include_str!("../data/toy_c3.toml");

fn main() {
    let (spec, raw) = parse_dataset_document(TOY).unwrap();
    let ts = to_training_set(&spec, &raw, false).unwrap();

    for method in [Method::Representative, Method::Covering] {
        let model = TrainedModel::train(&ts, method, TrainOptions::default()).unwrap();
        println!("== {method} ==\n{}", save_model(&model).unwrap());
        for a in 0..3 {
            for b in 0..3 {
                let s = Element(vec![a, b]);
                let p = match model.classify(&s, TiePolicy::Abstain).unwrap() {
                    Prediction::Class(k) => model.classes[k].name.clone(),
                    Prediction::Abstain => "-".into(),
                };
                print!("{s}:{p:<3} ");
            }
            println!();
        }
        println!();
    }
}
