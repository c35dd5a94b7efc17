//! Maximal elements independent of a set, found by enumerating ordered
//! irredundant coverings and checked against a scan of the whole product.
//!
//! `cargo run --example dualize_poset`

use poset_classify::dualization::covering_to_element;
use poset_classify::{CoveringMatrix, Element, Enumerator, Poset, ProductSpace};

fn main() {
    // A diamond, a three-element chain and an unordered pair with a top.
    let diamond = Poset::new(["bot", "l", "r", "top"], [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let chain = Poset::chain(["lo", "mid", "hi"]).unwrap();
    let pair = Poset::antichain(["a", "b"]).unwrap().completed().unwrap();
    let space = ProductSpace::new(vec![diamond, chain, pair]).unwrap();

    let rows = vec![Element(vec![1, 1, 0]), Element(vec![2, 0, 1]), Element(vec![0, 2, 2])];
    for r in &rows {
        let labels: Vec<&str> = r.0.iter().enumerate().map(|(j, &v)| space.factor(j).label(v)).collect();
        println!("row {}", labels.join(" "));
    }
    let m = CoveringMatrix::new(space.clone(), rows).unwrap();

    let solutions = Enumerator::new(&m).unwrap().collect();
    println!("\n{} ordered irredundant coverings:", solutions.len());
    for s in &solutions {
        println!("  {}", poset_classify::dataio::format_solution(&space, s));
    }

    let mut ours: Vec<Element> = solutions
        .iter()
        .map(|s| covering_to_element(&space, &s.covering).unwrap())
        .collect();
    ours.sort();
    let scan = space.brute_force_max_independent(m.rows()).unwrap();
    println!("\nbrute force over {} elements agrees: {}", space.cardinality(), ours == scan);
}
