//! With every factor the chain 0 < 1 the enumerator reduces to minimal
//! transversals of the hypergraph given by the 1-entries of each row.
//!
//! `cargo run --example boolean_transversals`

use poset_classify::dualization::{enumerate_coverings, irreducible_boolean_coverings};
use poset_classify::{CoveringMatrix, Element, Poset, ProductSpace};

fn main() {
    let bits = [
        [1, 1, 0, 0, 0],
        [0, 1, 1, 0, 0],
        [0, 0, 1, 1, 0],
        [0, 0, 0, 1, 1],
        [1, 0, 0, 0, 1],
    ];
    let space = ProductSpace::new(vec![Poset::chain(["0", "1"]).unwrap(); 5]).unwrap();
    let rows = bits.iter().map(|r| Element(r.to_vec())).collect();
    let m = CoveringMatrix::new(space, rows).unwrap();

    let ours: Vec<Vec<usize>> = enumerate_coverings(&m, None)
        .unwrap()
        .into_iter()
        .map(|c| c.columns)
        .collect();
    let bool_rows: Vec<Vec<bool>> = bits.iter().map(|r| r.iter().map(|&b| b == 1).collect()).collect();
    let classical = irreducible_boolean_coverings(&bool_rows);

    println!("5-cycle hypergraph, minimal transversals (1-based columns):");
    for c in &ours {
        let cols: Vec<String> = c.iter().map(|j| (j + 1).to_string()).collect();
        println!("  {{{}}}", cols.join(", "));
    }
    println!("matches sequential transversal construction: {}", ours == classical);
}
