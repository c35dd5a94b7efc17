//! Seeded generators for random posets, product spaces and matrices.
//!
//! Used by the oracle checks in tests, by `oracle-check`, and by the
//! benchmarks in `examples/`.

use rand::Rng;

use crate::poset::Poset;
use crate::product::{Element, ProductSpace};

/// Shape of a randomly generated factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorShape {
    Chain,
    /// Antichain completed with a greatest element.
    AntichainTop,
    /// Bottom, two incomparable middles, top (sizes other than 4 fall back to a chain).
    Diamond,
    /// Random order completed with a greatest element.
    RandomTop,
    /// Random order, possibly without a greatest element.
    Random,
}

pub const MIXED: &[FactorShape] = &[
    FactorShape::Chain,
    FactorShape::AntichainTop,
    FactorShape::Diamond,
    FactorShape::RandomTop,
];

fn labels(k: usize) -> Vec<String> {
    (0..k).map(|i| i.to_string()).collect()
}

/// A random partial order on `k` elements whose linear extension is `0..k`.
pub fn random_order<R: Rng + ?Sized>(rng: &mut R, k: usize, density: f64) -> Poset {
    let mut lt = vec![false; k * k];
    for i in 0..k {
        for j in (i + 1)..k {
            lt[i * k + j] = rng.random_bool(density);
        }
    }
    // Transitive closure, then keep only covers.
    for m in 0..k {
        for i in 0..k {
            if lt[i * k + m] {
                for j in 0..k {
                    if lt[m * k + j] {
                        lt[i * k + j] = true;
                    }
                }
            }
        }
    }
    let mut covers = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            if lt[i * k + j] && !(i + 1..j).any(|c| lt[i * k + c] && lt[c * k + j]) {
                covers.push((i, j));
            }
        }
    }
    Poset::new(labels(k), covers).expect("acyclic by construction")
}

/// A random factor of the given shape with at most `max_size` elements.
pub fn random_factor<R: Rng + ?Sized>(rng: &mut R, shape: FactorShape, max_size: usize) -> Poset {
    let max_size = max_size.max(1);
    match shape {
        FactorShape::Chain => Poset::chain(labels(rng.random_range(1..=max_size))).unwrap(),
        FactorShape::AntichainTop => {
            let k = rng.random_range(1..=max_size.saturating_sub(1).max(1));
            Poset::antichain(labels(k)).unwrap().completed().unwrap()
        }
        FactorShape::Diamond if max_size >= 4 => {
            Poset::new(labels(4), [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
        }
        FactorShape::Diamond => Poset::chain(labels(max_size)).unwrap(),
        FactorShape::RandomTop => {
            let k = rng.random_range(1..=max_size.saturating_sub(1).max(1));
            random_order(rng, k, 0.4).completed().unwrap()
        }
        FactorShape::Random => {
            let k = rng.random_range(1..=max_size);
            random_order(rng, k, 0.4)
        }
    }
}

/// A product of `1..=max_factors` factors drawn from `shapes`.
pub fn random_space<R: Rng + ?Sized>(
    rng: &mut R,
    shapes: &[FactorShape],
    max_factors: usize,
    max_size: usize,
) -> ProductSpace {
    let n = rng.random_range(1..=max_factors.max(1));
    let factors = (0..n)
        .map(|_| {
            let s = shapes[rng.random_range(0..shapes.len())];
            random_factor(rng, s, max_size)
        })
        .collect();
    ProductSpace::new(factors).unwrap()
}

pub fn random_element<R: Rng + ?Sized>(rng: &mut R, sp: &ProductSpace) -> Element {
    Element(
        sp.factors()
            .iter()
            .map(|p| rng.random_range(0..p.len()))
            .collect(),
    )
}

/// `0..=max_rows` uniformly random rows (repeats allowed).
pub fn random_rows<R: Rng + ?Sized>(rng: &mut R, sp: &ProductSpace, max_rows: usize) -> Vec<Element> {
    let m = rng.random_range(0..=max_rows);
    (0..m).map(|_| random_element(rng, sp)).collect()
}

/// A random antichain of the space, built by rejection from random elements.
pub fn random_antichain<R: Rng + ?Sized>(
    rng: &mut R,
    sp: &ProductSpace,
    max_len: usize,
) -> Vec<Element> {
    let mut out: Vec<Element> = Vec::new();
    for _ in 0..max_len * 4 {
        if out.len() >= max_len {
            break;
        }
        let x = random_element(rng, sp);
        if out.iter().all(|y| !sp.comparable(&x.0, &y.0)) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_factors_have_expected_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            for &s in MIXED {
                let p = random_factor(&mut rng, s, 4);
                assert!(p.len() <= 4);
                assert!(p.greatest().is_some(), "{s:?}");
                if s == FactorShape::Chain {
                    assert!(p.is_chain());
                }
            }
        }
    }

    #[test]
    fn antichains_are_antichains() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let sp = random_space(&mut rng, MIXED, 3, 4);
            let a = random_antichain(&mut rng, &sp, 6);
            assert!(sp.is_antichain(&a));
        }
    }
}
