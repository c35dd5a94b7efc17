//! Two classes split by a staircase in the plane. Unordered values need many
//! classifiers that each cover few points. Chains alone only describe sets
//! closed downwards, so the upper class gets no representatives; adding
//! reversed copies fixes that with a handful of classifiers.
//!
//! `cargo run --example staircase`

use poset_classify::classifier::{duplicate_features, duplicate_object, Prediction, TrainOptions};
use poset_classify::{Element, Method, Poset, ProductSpace, TiePolicy, TrainedModel, TrainingSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIDE: usize = 8;

fn label(a: usize, b: usize) -> usize {
    usize::from(a + b > SIDE - 1)
}

fn accuracy(space: &ProductSpace, train: &[(Element, usize)], test: &[(Element, usize)], dup: bool) -> (f64, usize) {
    let ts = TrainingSet::new(
        space.clone(),
        train.iter().map(|p| p.0.clone()).collect(),
        train.iter().map(|p| p.1).collect(),
        vec!["below".into(), "above".into()],
    )
    .unwrap();
    let ts = if dup { duplicate_features(&ts).unwrap() } else { ts };
    let model = TrainedModel::train(&ts, Method::Representative, TrainOptions::default()).unwrap();
    let correct = test
        .iter()
        .filter(|(s, l)| {
            let s = if dup { duplicate_object(s) } else { s.clone() };
            model.classify(&s, TiePolicy::Abstain).unwrap() == Prediction::Class(*l)
        })
        .count();
    let rules = model.classes.iter().map(|c| c.rules.len()).sum();
    (correct as f64 / test.len() as f64, rules)
}

fn main() {
    let values: Vec<String> = (0..SIDE).map(|i| i.to_string()).collect();
    let chains = ProductSpace::new(vec![Poset::chain(values.clone()).unwrap(); 2]).unwrap();
    let flat = Poset::antichain(values).unwrap().completed().unwrap();
    let unordered = ProductSpace::new(vec![flat.clone(), flat]).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut points: Vec<(Element, usize)> = (0..SIDE * SIDE)
        .map(|i| (Element(vec![i / SIDE, i % SIDE]), label(i / SIDE, i % SIDE)))
        .collect();
    // Hold out a third of the grid.
    for i in (1..points.len()).rev() {
        points.swap(i, rng.random_range(0..=i));
    }
    let (test, train) = points.split_at(points.len() / 3);

    for (name, space, dup) in [
        ("unordered values", &unordered, false),
        ("chains", &chains, false),
        ("chains + reversed", &chains, true),
    ] {
        let (acc, rules) = accuracy(space, train, test, dup);
        println!("{name:<18} accuracy {:.1}% with {rules} classifiers", 100.0 * acc);
    }
}
