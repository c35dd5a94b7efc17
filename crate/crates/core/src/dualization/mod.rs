//! Dualization over products of posets in matrix form.
//!
//! A [`CoveringMatrix`] holds a set `R` of elements of a product space as
//! rows. A [`SigmaCovering`] `(H, σ)` picks columns `H` and a non-greatest
//! value `σᵢ` for each of them. It is an *ordered irredundant σ-covering* when
//!
//! 1. for every selected column `jᵢ` and every upper cover `y` of `σᵢ` some row
//!    `β` has `βᵢ ∈ Q₂(σᵢ, y)` and `βₜ ⪯ σₜ` on every other selected column, and
//! 2. no row restricted to `H` precedes `σ`.
//!
//! Filling the unselected columns with greatest elements turns such coverings
//! into exactly the maximal elements independent of `R`, which is what
//! [`Enumerator`] produces.

mod boolean;
mod enumerate;

pub use boolean::irreducible_boolean_coverings;
pub use enumerate::{enumerate_coverings, Enumerator, Partition, Solution};

use std::fmt;

use thiserror::Error;

use crate::product::{Element, ProductError, ProductSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualizationError {
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error("factor {0} has no greatest element")]
    NoGreatestElement(usize),
    #[error("covering is malformed: {0}")]
    MalformedCovering(String),
    #[error("factor {0} is not a chain")]
    NotAChain(usize),
}

/// The matrix `L_R`: one row per element of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringMatrix {
    space: ProductSpace,
    rows: Vec<Element>,
}

impl CoveringMatrix {
    pub fn new(space: ProductSpace, rows: Vec<Element>) -> Result<Self, DualizationError> {
        for r in &rows {
            space.validate(r)?;
        }
        Ok(CoveringMatrix { space, rows })
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn rows(&self) -> &[Element] {
        &self.rows
    }
}

/// Column set `H` (strictly increasing) with one value per column.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaCovering {
    pub columns: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl SigmaCovering {
    pub fn new(columns: Vec<usize>, sigma: Vec<usize>) -> Self {
        SigmaCovering { columns, sigma }
    }

    pub fn empty() -> Self {
        SigmaCovering::new(Vec::new(), Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Checks shape, ranges, and that no value is its factor's greatest element.
    pub fn validate(&self, sp: &ProductSpace) -> Result<(), DualizationError> {
        let bad = |m: String| Err(DualizationError::MalformedCovering(m));
        if self.columns.len() != self.sigma.len() {
            return bad(format!(
                "{} columns but {} values",
                self.columns.len(),
                self.sigma.len()
            ));
        }
        if self.columns.windows(2).any(|w| w[0] >= w[1]) {
            return bad("columns must be strictly increasing".into());
        }
        for (&j, &s) in self.columns.iter().zip(&self.sigma) {
            if j >= sp.dims() {
                return bad(format!("column {j} out of range"));
            }
            let p = sp.factor(j);
            if s >= p.len() {
                return bad(format!("value {s} out of range in column {j}"));
            }
            if p.greatest() == Some(s) {
                return bad(format!("value in column {j} is the greatest element"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SigmaCovering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize], plus: usize| {
            v.iter()
                .map(|x| (x + plus).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "H=({}) sigma=({})", join(&self.columns, 1), join(&self.sigma, 0))
    }
}

/// Fills the unselected columns with greatest elements.
pub fn covering_to_element(
    sp: &ProductSpace,
    c: &SigmaCovering,
) -> Result<Element, DualizationError> {
    c.validate(sp)?;
    let mut out = Vec::with_capacity(sp.dims());
    let mut sel = c.columns.iter().zip(&c.sigma).peekable();
    for (j, p) in sp.factors().iter().enumerate() {
        match sel.peek() {
            Some(&(&col, &s)) if col == j => {
                out.push(s);
                sel.next();
            }
            _ => out.push(p.greatest().ok_or(DualizationError::NoGreatestElement(j))?),
        }
    }
    Ok(Element(out))
}

/// Selects the components that are not the greatest element of their factor.
pub fn element_to_covering(
    sp: &ProductSpace,
    x: &Element,
) -> Result<SigmaCovering, DualizationError> {
    sp.validate(x)?;
    let mut c = SigmaCovering::empty();
    for (j, (&v, p)) in x.0.iter().zip(sp.factors()).enumerate() {
        if p.greatest() != Some(v) {
            c.columns.push(j);
            c.sigma.push(v);
        }
    }
    Ok(c)
}

fn below_sigma_except(
    sp: &ProductSpace,
    row: &Element,
    c: &SigmaCovering,
    skip: Option<usize>,
) -> bool {
    c.columns
        .iter()
        .zip(&c.sigma)
        .enumerate()
        .filter(|&(t, _)| Some(t) != skip)
        .all(|(_, (&j, &s))| sp.factor(j).leq(row.0[j], s))
}

/// Direct check of both defining conditions on the submatrix `L_R^H`.
///
/// Condition 1 is read existentially: for each `(i, y)` at least one row of
/// the required form must be present.
pub fn is_ordered_irredundant_covering(m: &CoveringMatrix, c: &SigmaCovering) -> bool {
    let sp = m.space();
    if c.validate(sp).is_err() {
        return false;
    }
    // Condition 2: no row of L_R^H precedes σ (equality included).
    if m.rows().iter().any(|r| below_sigma_except(sp, r, c, None)) {
        return false;
    }
    // Condition 1.
    c.columns.iter().zip(&c.sigma).enumerate().all(|(i, (&j, &s))| {
        let p = sp.factor(j);
        p.upper_covers(s).iter().all(|&y| {
            let q2 = p.q2(s, y).expect("y is an upper cover");
            m.rows()
                .iter()
                .any(|r| q2.contains(&r.0[j]) && below_sigma_except(sp, r, c, Some(i)))
        })
    })
}

/// Condition 1 specialised to products of chains: every selected column `i`
/// needs a row equal to the successor of `σᵢ` there and below `σ` elsewhere.
///
/// Works on element positions along each chain and never consults covers or
/// `Q₂`; it exists to cross-check [`is_ordered_irredundant_covering`].
pub fn chain_condition_one(m: &CoveringMatrix, c: &SigmaCovering) -> Result<bool, DualizationError> {
    let sp = m.space();
    c.validate(sp)?;
    // rank[j][v] = position of element v along chain j.
    let mut rank = Vec::with_capacity(sp.dims());
    for (j, p) in sp.factors().iter().enumerate() {
        if !p.is_chain() {
            return Err(DualizationError::NotAChain(j));
        }
        let pos: Vec<usize> = (0..p.len())
            .map(|v| (0..p.len()).filter(|&u| u != v && p.leq(u, v)).count())
            .collect();
        rank.push(pos);
    }
    Ok(c.columns.iter().zip(&c.sigma).enumerate().all(|(i, (&j, &s))| {
        let next = rank[j][s] + 1;
        m.rows().iter().any(|r| {
            rank[j][r.0[j]] == next
                && c.columns
                    .iter()
                    .zip(&c.sigma)
                    .enumerate()
                    .all(|(t, (&jt, &st))| t == i || rank[jt][r.0[jt]] <= rank[jt][st])
        })
    }))
}

/// Condition 2 alone: no row restricted to `H` precedes `σ`.
pub fn no_row_precedes_sigma(m: &CoveringMatrix, c: &SigmaCovering) -> bool {
    !m.rows()
        .iter()
        .any(|r| below_sigma_except(m.space(), r, c, None))
}
