//! Streams solutions of a random all-chain instance and reports the longest
//! gap between consecutive solutions.
//!
//! `cargo run --release --example perf_smoke [rows] [cols] [chain_len] [limit] [seed]`

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use poset_classify::{CoveringMatrix, Element, Enumerator, Poset, ProductSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let arg = |i: usize, d: u64| std::env::args().nth(i).map_or(d, |s| s.parse().unwrap());
    let (rows, cols, len, limit, seed) =
        (arg(1, 50) as usize, arg(2, 20) as usize, arg(3, 5) as usize, arg(4, 10_000) as usize, arg(5, 0));
    let labels: Vec<String> = (0..len).map(|i| i.to_string()).collect();
    let space = ProductSpace::new(vec![Poset::chain(labels).unwrap(); cols]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r: Vec<Element> = (0..rows)
        .map(|_| Element((0..cols).map(|_| rng.random_range(0..len)).collect()))
        .collect();
    let m = CoveringMatrix::new(space, r).unwrap();
    let en = Enumerator::new(&m).unwrap();

    let start = Instant::now();
    let mut last = start;
    let mut first = None;
    let mut worst = Duration::ZERO;
    let mut count = 0usize;
    let _ = en.for_each(|_| {
        let now = Instant::now();
        match first {
            None => first = Some(now - start),
            Some(_) => worst = worst.max(now - last),
        }
        last = now;
        count += 1;
        if limit > 0 && count >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    println!(
        "{count} solutions in {:.3}s, first after {:.3}ms, max gap {:.3}ms, {} root partitions",
        start.elapsed().as_secs_f64(),
        first.unwrap_or_default().as_secs_f64() * 1e3,
        worst.as_secs_f64() * 1e3,
        en.partitions().len()
    );
}
