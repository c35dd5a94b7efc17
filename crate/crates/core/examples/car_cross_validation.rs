//! Cross-validates the Car dataset under several feature orderings.
//!
//! `cargo run --release --example car_cross_validation [spec.toml ...]`

use std::time::Instant;

use poset_classify::dataio::{parse_dataset, parse_order_spec, to_training_set};
use poset_classify::eval::{evaluate, EvalConfig};
use poset_classify::Method;

const DATA: &str = include_str!("../data/car.csv");
const SPECS: &[(&str, &str)] = &[
    ("antichain", include_str!("../data/car_antichain.toml")),
    ("chains", include_str!("../data/car_chains.toml")),
    ("mixed", include_str!("../data/car_mixed.toml")),
    ("chains+dup", include_str!("../data/car_chains_dup.toml")),
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let extra: Vec<(String, String)> = std::env::args()
        .skip(1)
        .map(|p| Ok((p.clone(), std::fs::read_to_string(&p)?)))
        .collect::<std::io::Result<_>>()?;
    let specs: Vec<(&str, &str)> = if extra.is_empty() {
        SPECS.to_vec()
    } else {
        extra.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect()
    };
    for method in [Method::Representative, Method::Covering] {
        for (name, text) in &specs {
            let spec = parse_order_spec(text)?;
            let ts = to_training_set(&spec, &parse_dataset(DATA, &spec)?, false)?;
            let start = Instant::now();
            let mut accs = Vec::new();
            let mut abst = 0.0;
            for seed in 0..5 {
                let r = evaluate(&ts, &EvalConfig { method, seed, ..Default::default() })?;
                accs.push(r.accuracy);
                abst += r.abstain_fraction / 5.0;
            }
            let mean = accs.iter().sum::<f64>() / accs.len() as f64;
            println!(
                "{method:<14} {name:<12} accuracy {:.1}%  abstain {:.1}%  ({:.1}s)",
                100.0 * mean,
                100.0 * abst,
                start.elapsed().as_secs_f64()
            );
        }
    }
    Ok(())
}
