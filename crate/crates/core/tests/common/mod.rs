#![allow(dead_code)]

use std::collections::HashSet;

use poset_classify::{Element, Poset, ProductSpace, TrainingSet};
use rand::Rng;

/// Representative classifiers computed with equality proximity directly from
/// the definition, for antichain domains. Shares no code with the
/// dualization path.
///
/// For every object and every feature subset, the object's own values form a
/// candidate; it is kept when no object of another class matches it and no
/// proper sub-classifier is also representative. Exponential in the number
/// of features.
pub fn classical_representatives(
    objects: &[Vec<usize>],
    labels: &[usize],
    k: usize,
) -> Vec<(Vec<usize>, Vec<usize>, u64)> {
    let n = objects.first().map_or(0, Vec::len);
    let matches = |feats: &[usize], sigma: &[usize], o: &[usize]| {
        feats.iter().zip(sigma).all(|(&j, &v)| o[j] == v)
    };
    let representative = |feats: &[usize], sigma: &[usize]| {
        let mut inside = false;
        for (o, &l) in objects.iter().zip(labels) {
            if matches(feats, sigma, o) {
                if l == k {
                    inside = true;
                } else {
                    return false;
                }
            }
        }
        inside
    };
    let mut out: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    for (o, &l) in objects.iter().zip(labels) {
        if l != k {
            continue;
        }
        for mask in 0u64..(1u64 << n) {
            let feats: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
            let sigma: Vec<usize> = feats.iter().map(|&j| o[j]).collect();
            if !representative(&feats, &sigma) {
                continue;
            }
            let irredundant = (0..feats.len()).all(|drop| {
                let f: Vec<usize> = feats.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &j)| j).collect();
                let s: Vec<usize> = sigma.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                !representative(&f, &s)
            });
            if irredundant {
                out.insert((feats, sigma));
            }
        }
    }
    let mut v: Vec<_> = out
        .into_iter()
        .map(|(f, s)| {
            let w = objects
                .iter()
                .zip(labels)
                .filter(|&(o, &l)| l == k && matches(&f, &s, o))
                .count() as u64;
            (f, s, w)
        })
        .collect();
    v.sort();
    v
}

/// A random training set with `classes` classes and no object shared
/// between classes, on a product of up to `max_factors` factors.
pub fn random_training_set<R: Rng>(
    rng: &mut R,
    shapes: &[poset_classify::random::FactorShape],
    max_factors: usize,
    max_objects: usize,
    classes: usize,
) -> TrainingSet {
    loop {
        let sp = poset_classify::random::random_space(rng, shapes, max_factors, 4);
        let n = rng.random_range(classes..=max_objects);
        let mut objects: Vec<Element> = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            // Datasets never contain an added greatest value.
            let x = Element(
                sp.factors()
                    .iter()
                    .map(|p| loop {
                        let v = rng.random_range(0..p.len());
                        if !(p.has_synthetic_top() && p.greatest() == Some(v)) {
                            break v;
                        }
                    })
                    .collect(),
            );
            let l = if i < classes { i } else { rng.random_range(0..classes) };
            match objects.iter().position(|o| o == &x) {
                Some(p) if labels[p] != l => continue,
                _ => {}
            }
            objects.push(x);
            labels.push(l);
        }
        if (0..classes).all(|k| labels.contains(&k)) {
            let names = (0..classes).map(|k| format!("K{}", k + 1)).collect();
            return TrainingSet::new(sp, objects, labels, names).unwrap();
        }
    }
}

/// An all-antichain space: `sizes[i]` unordered values plus a greatest one.
pub fn antichain_space(sizes: &[usize]) -> ProductSpace {
    ProductSpace::new(
        sizes
            .iter()
            .map(|&k| {
                Poset::antichain((0..k).map(|i| i.to_string()))
                    .unwrap()
                    .completed()
                    .unwrap()
            })
            .collect(),
    )
    .unwrap()
}
