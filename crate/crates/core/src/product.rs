//! Products of finite posets with the componentwise order.
//!
//! Besides the order itself this module holds the exhaustive oracles:
//! explicit upward/downward closures and the maximal/minimal elements
//! independent of a set `R`. They scan the whole product and are meant for
//! validation on small spaces; [`crate::dualization`] is the scalable route.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::poset::Poset;

/// Default cap on the number of elements an oracle scan may visit.
pub const DEFAULT_ORACLE_BOUND: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("a product space needs at least one factor")]
    NoFactors,
    #[error("element has {got} components, space has {expected} factors")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("component {position} = {value} is outside factor of size {size}")]
    ComponentOutOfRange { position: usize, value: usize, size: usize },
    #[error("product has {size} elements, above the oracle bound {bound}")]
    SpaceTooLarge { size: u128, bound: u128 },
}

/// One element of a product space: a component index per factor.
/// Ordered lexicographically by component index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub Vec<usize>);

impl Element {
    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for Element {
    fn from(v: Vec<usize>) -> Self {
        Element(v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpace {
    factors: Vec<Poset>,
    oracle_bound: u128,
}

impl ProductSpace {
    pub fn new(factors: Vec<Poset>) -> Result<Self, ProductError> {
        if factors.is_empty() {
            return Err(ProductError::NoFactors);
        }
        Ok(ProductSpace {
            factors,
            oracle_bound: DEFAULT_ORACLE_BOUND,
        })
    }

    pub fn with_oracle_bound(mut self, bound: u128) -> Self {
        self.oracle_bound = bound;
        self
    }

    pub fn dims(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Poset] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &Poset {
        &self.factors[i]
    }

    /// Number of elements, saturating at `u128::MAX`.
    pub fn cardinality(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, p| acc.saturating_mul(p.len() as u128))
    }

    pub fn validate(&self, x: &Element) -> Result<(), ProductError> {
        if x.len() != self.dims() {
            return Err(ProductError::DimensionMismatch {
                expected: self.dims(),
                got: x.len(),
            });
        }
        for (position, (&value, p)) in x.0.iter().zip(&self.factors).enumerate() {
            if value >= p.len() {
                return Err(ProductError::ComponentOutOfRange {
                    position,
                    value,
                    size: p.len(),
                });
            }
        }
        Ok(())
    }

    pub fn element(&self, components: Vec<usize>) -> Result<Element, ProductError> {
        let x = Element(components);
        self.validate(&x)?;
        Ok(x)
    }

    /// Componentwise `x ⪯ y`, with dimension and range checks.
    pub fn product_leq(&self, x: &Element, y: &Element) -> Result<bool, ProductError> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.leq(x.components(), y.components()))
    }

    /// Componentwise `x ⪯ y` on raw components; callers guarantee validity.
    #[inline]
    pub fn leq(&self, x: &[usize], y: &[usize]) -> bool {
        self.factors
            .iter()
            .zip(x.iter().zip(y))
            .all(|(p, (&a, &b))| p.leq(a, b))
    }

    #[inline]
    pub fn lt(&self, x: &[usize], y: &[usize]) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: &[usize], y: &[usize]) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn greatest_element(&self) -> Option<Element> {
        self.factors
            .iter()
            .map(Poset::greatest)
            .collect::<Option<Vec<_>>>()
            .map(Element)
    }

    /// The product of the reversed factors.
    pub fn reversed(&self) -> ProductSpace {
        ProductSpace {
            factors: self.factors.iter().map(Poset::reversed).collect(),
            oracle_bound: self.oracle_bound,
        }
    }

    fn check_oracle_bound(&self) -> Result<(), ProductError> {
        let size = self.cardinality();
        if size > self.oracle_bound {
            return Err(ProductError::SpaceTooLarge {
                size,
                bound: self.oracle_bound,
            });
        }
        Ok(())
    }

    /// Every element in lexicographic order. Subject to the oracle bound.
    pub fn elements(&self) -> Result<impl Iterator<Item = Element> + '_, ProductError> {
        self.check_oracle_bound()?;
        let sizes: Vec<usize> = self.factors.iter().map(Poset::len).collect();
        let mut next = Some(vec![0usize; sizes.len()]);
        Ok(std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            let mut i = succ.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                succ[i] += 1;
                if succ[i] < sizes[i] {
                    next = Some(succ);
                    break;
                }
                succ[i] = 0;
            }
            Some(Element(cur))
        }))
    }

    fn validate_all(&self, r: &[Element]) -> Result<(), ProductError> {
        r.iter().try_for_each(|x| self.validate(x))
    }

    /// `R⁺`: elements of the space that follow some element of `r`, sorted.
    pub fn upward_closure(&self, r: &[Element]) -> Result<Vec<Element>, ProductError> {
        self.validate_all(r)?;
        Ok(self
            .elements()?
            .filter(|x| r.iter().any(|a| self.leq(&a.0, &x.0)))
            .collect())
    }

    /// `R⁻`: elements of the space that precede some element of `r`, sorted.
    pub fn downward_closure(&self, r: &[Element]) -> Result<Vec<Element>, ProductError> {
        self.validate_all(r)?;
        Ok(self
            .elements()?
            .filter(|x| r.iter().any(|a| self.leq(&x.0, &a.0)))
            .collect())
    }

    /// `I(R⁺)` by exhaustive scan: maximal elements of `P \ R⁺`, sorted.
    pub fn brute_force_max_independent(&self, r: &[Element]) -> Result<Vec<Element>, ProductError> {
        self.validate_all(r)?;
        let outside: Vec<Element> = self
            .elements()?
            .filter(|x| !r.iter().any(|a| self.leq(&a.0, &x.0)))
            .collect();
        Ok(self.maximal_of(&outside))
    }

    /// `I(R⁻)` by exhaustive scan: minimal elements of `P \ R⁻`, sorted.
    pub fn brute_force_min_independent(&self, r: &[Element]) -> Result<Vec<Element>, ProductError> {
        self.validate_all(r)?;
        let outside: Vec<Element> = self
            .elements()?
            .filter(|x| !r.iter().any(|a| self.leq(&x.0, &a.0)))
            .collect();
        Ok(self.minimal_of(&outside))
    }

    /// Maximal elements of a finite set, deduplicated and sorted.
    pub fn maximal_of(&self, set: &[Element]) -> Vec<Element> {
        let out: BTreeSet<Element> = set
            .iter()
            .filter(|x| !set.iter().any(|y| self.lt(&x.0, &y.0)))
            .cloned()
            .collect();
        out.into_iter().collect()
    }

    /// Minimal elements of a finite set, deduplicated and sorted.
    pub fn minimal_of(&self, set: &[Element]) -> Vec<Element> {
        let out: BTreeSet<Element> = set
            .iter()
            .filter(|x| !set.iter().any(|y| self.lt(&y.0, &x.0)))
            .cloned()
            .collect();
        out.into_iter().collect()
    }

    pub fn is_antichain(&self, set: &[Element]) -> bool {
        set.iter().enumerate().all(|(i, x)| {
            set[i + 1..]
                .iter()
                .all(|y| x == y || !self.comparable(&x.0, &y.0))
        })
    }
}
