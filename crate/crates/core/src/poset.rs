//! Finite partially ordered sets given by their Hasse diagram.
//!
//! A [`Poset`] is built from labelled elements and cover edges `(lower, upper)`.
//! The full order is derived once at construction and stored as a dense
//! reachability table, so every query afterwards is a table lookup. Element
//! identity is the positional index; labels are only used for presentation
//! and file formats.

use std::collections::HashSet;

use thiserror::Error;

/// Label reserved for the greatest element added by [`Poset::completed`].
pub const TOP_LABEL: &str = "__top__";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("a poset needs at least one element")]
    Empty,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("cover edge ({lower}, {upper}) refers to an element outside 0..{len}")]
    EdgeOutOfRange { lower: usize, upper: usize, len: usize },
    #[error("cover relation contains a cycle through `{0}`")]
    CycleDetected(String),
    #[error("edge `{lower}` < `{upper}` is implied by other edges and is not a cover")]
    NonImmediateCover { lower: String, upper: String },
    #[error("`{upper}` does not cover `{lower}`")]
    NotACover { lower: String, upper: String },
    #[error("label `{0}` is reserved")]
    ReservedLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    leq: Vec<bool>,
    upper: Vec<Vec<usize>>,
    greatest: Option<usize>,
    least: Option<usize>,
    synthetic_top: bool,
}

impl Poset {
    /// Builds a poset from labels and Hasse edges.
    ///
    /// Duplicate edges are merged. Edges that close a cycle are rejected, and
    /// so are edges already implied by a longer path.
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        cover_edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PosetError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let k = labels.len();
        if k == 0 {
            return Err(PosetError::Empty);
        }
        let mut seen = HashSet::with_capacity(k);
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }

        let mut covers: Vec<(usize, usize)> = Vec::new();
        for (a, b) in cover_edges {
            if a >= k || b >= k {
                return Err(PosetError::EdgeOutOfRange { lower: a, upper: b, len: k });
            }
            if a == b {
                return Err(PosetError::CycleDetected(labels[a].clone()));
            }
            if !covers.contains(&(a, b)) {
                covers.push((a, b));
            }
        }
        covers.sort_unstable();

        // Reflexive-transitive closure, Warshall style.
        let mut leq = vec![false; k * k];
        for i in 0..k {
            leq[i * k + i] = true;
        }
        for &(a, b) in &covers {
            leq[a * k + b] = true;
        }
        for m in 0..k {
            for i in 0..k {
                if leq[i * k + m] {
                    for j in 0..k {
                        if leq[m * k + j] {
                            leq[i * k + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..k {
            for b in (a + 1)..k {
                if leq[a * k + b] && leq[b * k + a] {
                    return Err(PosetError::CycleDetected(labels[a].clone()));
                }
            }
        }
        for &(a, b) in &covers {
            let implied = (0..k).any(|c| c != a && c != b && leq[a * k + c] && leq[c * k + b]);
            if implied {
                return Err(PosetError::NonImmediateCover {
                    lower: labels[a].clone(),
                    upper: labels[b].clone(),
                });
            }
        }

        let mut upper = vec![Vec::new(); k];
        for &(a, b) in &covers {
            upper[a].push(b);
        }
        let greatest = (0..k).find(|&g| (0..k).all(|y| leq[y * k + g]));
        let least = (0..k).find(|&l| (0..k).all(|y| leq[l * k + y]));

        Ok(Poset {
            labels,
            covers,
            leq,
            upper,
            greatest,
            least,
            synthetic_top: false,
        })
    }

    /// Chain ordered by list position: `labels[0] < labels[1] < ...`.
    pub fn chain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, PosetError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let edges: Vec<_> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Poset::new(labels, edges)
    }

    /// Pairwise incomparable elements.
    pub fn antichain<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self, PosetError> {
        Poset::new(labels, std::iter::empty())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `a ⪯ b`. Panics on out-of-range indices.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let k = self.labels.len();
        assert!(a < k && b < k, "element index out of range");
        self.leq[a * k + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Elements that immediately follow `x` (its upper covers), ascending.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// Elements that do not precede `x` and precede `y`, where `y` covers `x`.
    pub fn q2(&self, x: usize, y: usize) -> Result<Vec<usize>, PosetError> {
        if !self.upper[x].contains(&y) {
            return Err(PosetError::NotACover {
                lower: self.labels[x].clone(),
                upper: self.labels[y].clone(),
            });
        }
        Ok((0..self.len())
            .filter(|&a| !self.leq(a, x) && self.leq(a, y))
            .collect())
    }

    pub fn greatest(&self) -> Option<usize> {
        self.greatest
    }

    pub fn least(&self) -> Option<usize> {
        self.least
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].is_empty()).collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.comparable(a, b)))
    }

    /// True when the greatest element was added by [`Poset::completed`].
    pub fn has_synthetic_top(&self) -> bool {
        self.synthetic_top
    }

    /// Same elements with the order reversed. The greatest element of the
    /// result is the least element of `self`, when there is one.
    pub fn reversed(&self) -> Poset {
        let k = self.len();
        let mut leq = vec![false; k * k];
        for a in 0..k {
            for b in 0..k {
                leq[a * k + b] = self.leq[b * k + a];
            }
        }
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        let mut upper = vec![Vec::new(); k];
        for &(a, b) in &covers {
            upper[a].push(b);
        }
        Poset {
            labels: self.labels.clone(),
            covers,
            leq,
            upper,
            greatest: self.least,
            least: self.greatest,
            synthetic_top: false,
        }
    }

    /// Adds a greatest element labelled [`TOP_LABEL`] above every maximal
    /// element, unless a greatest element already exists. Idempotent.
    pub fn completed(&self) -> Result<Poset, PosetError> {
        if self.greatest.is_some() {
            return Ok(self.clone());
        }
        if self.index_of(TOP_LABEL).is_some() {
            return Err(PosetError::ReservedLabel(TOP_LABEL.to_string()));
        }
        let top = self.len();
        let mut labels = self.labels.clone();
        labels.push(TOP_LABEL.to_string());
        let edges = self
            .covers
            .iter()
            .copied()
            .chain(self.maximal_elements().into_iter().map(|m| (m, top)));
        let mut p = Poset::new(labels, edges)?;
        p.synthetic_top = true;
        Ok(p)
    }

    /// Removes a greatest element previously added by [`Poset::completed`].
    pub fn without_synthetic_top(&self) -> Poset {
        if !self.synthetic_top {
            return self.clone();
        }
        let top = self.greatest.expect("synthetic top is the greatest element");
        let labels: Vec<String> = self.labels.iter().take(top).cloned().collect();
        let edges: Vec<_> = self.covers.iter().copied().filter(|&(_, b)| b != top).collect();
        Poset::new(labels, edges).expect("sub-order of a valid poset")
    }
}
