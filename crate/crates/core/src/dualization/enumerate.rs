//! Backtracking enumeration of ordered irredundant σ-coverings.
//!
//! The search starts from the element whose components are all greatest and
//! only ever lowers a column once. At each node it takes a row that still
//! precedes the current element (an *uncovered* row) and branches over every
//! `(column, value)` pair that would escape it. Pairs tried earlier at a node
//! are forbidden in the later siblings, so every solution is reached along one
//! path only.
//!
//! Two monotone facts drive the pruning. Lowering columns can only turn
//! covered rows into still-covered rows, and the rows that witness
//! condition 1 for an assigned column can only disappear. A node whose
//! assigned columns have lost all witnesses for some upper cover is
//! abandoned, and a node with no uncovered rows is a solution.

use std::ops::ControlFlow;

use rayon::prelude::*;

use super::{CoveringMatrix, DualizationError, SigmaCovering};
use crate::product::{Element, ProductSpace};

/// One maximal independent element together with its covering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Solution {
    pub covering: SigmaCovering,
    pub element: Element,
    /// Number of `dominated` rows that precede the element (0 when unset).
    pub support: usize,
}

/// A disjoint slice of the search tree, runnable on its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    forbidden: Vec<(usize, usize)>,
    first: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct Enumerator<'m> {
    matrix: &'m CoveringMatrix,
    max_rank: Option<usize>,
    dominated: Option<Vec<Element>>,
    rows: Vec<usize>,
    n_rows: usize,
    tops: Vec<usize>,
    offsets: Vec<usize>,
}

impl<'m> Enumerator<'m> {
    /// Every factor must have a greatest element.
    pub fn new(matrix: &'m CoveringMatrix) -> Result<Self, DualizationError> {
        let sp = matrix.space();
        let tops = sp
            .factors()
            .iter()
            .enumerate()
            .map(|(j, p)| p.greatest().ok_or(DualizationError::NoGreatestElement(j)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut offsets = Vec::with_capacity(sp.dims() + 1);
        let mut acc = 0;
        for p in sp.factors() {
            offsets.push(acc);
            acc += p.len();
        }
        offsets.push(acc);

        // Only minimal rows matter: R⁺ is generated by them.
        let minimal = sp.minimal_of(matrix.rows());
        let rows: Vec<usize> = minimal.iter().flat_map(|r| r.0.iter().copied()).collect();
        Ok(Enumerator {
            matrix,
            max_rank: None,
            dominated: None,
            n_rows: minimal.len(),
            rows,
            tops,
            offsets,
        })
    }

    /// Only emit coverings of rank at most `max_rank`.
    pub fn max_rank(mut self, max_rank: Option<usize>) -> Self {
        self.max_rank = max_rank;
        self
    }

    /// Only emit elements that follow at least one of `rows`.
    ///
    /// The filter is applied during the search: lowering columns can only
    /// lose dominated rows, so a branch without any is cut immediately.
    pub fn dominating(mut self, rows: Vec<Element>) -> Result<Self, DualizationError> {
        for r in &rows {
            self.matrix.space().validate(r)?;
        }
        self.dominated = Some(rows);
        Ok(self)
    }

    pub fn space(&self) -> &ProductSpace {
        self.matrix.space()
    }

    /// Streams solutions in discovery order until `f` breaks.
    pub fn for_each<F>(&self, mut f: F) -> ControlFlow<()>
    where
        F: FnMut(&Solution) -> ControlFlow<()>,
    {
        let mut s = Search::new(self);
        s.run(&mut f)
    }

    /// All solutions in canonical order.
    pub fn collect(&self) -> Vec<Solution> {
        let mut out = Vec::new();
        let _ = self.for_each(|s| {
            out.push(s.clone());
            ControlFlow::Continue(())
        });
        out.sort();
        out
    }

    /// Splits the tree at the root into independent partitions.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut s = Search::new(self);
        if !s.feasible() {
            return Vec::new();
        }
        if s.uncovered_count() == 0 {
            return vec![Partition {
                forbidden: Vec::new(),
                first: None,
            }];
        }
        if self.max_rank == Some(0) {
            return Vec::new();
        }
        let branches = s.branches().unwrap_or_default();
        (0..branches.len())
            .map(|i| Partition {
                forbidden: branches[..i].to_vec(),
                first: Some(branches[i]),
            })
            .collect()
    }

    /// Streams the solutions of one partition.
    pub fn for_each_in<F>(&self, part: &Partition, mut f: F) -> ControlFlow<()>
    where
        F: FnMut(&Solution) -> ControlFlow<()>,
    {
        let mut s = Search::new(self);
        for &(j, v) in &part.forbidden {
            s.forbidden[self.offsets[j] + v] = true;
        }
        match part.first {
            None => s.emit(&mut f),
            Some((j, v)) => {
                s.assign(j, v);
                if s.feasible() {
                    s.node(&mut f)
                } else {
                    ControlFlow::Continue(())
                }
            }
        }
    }

    /// All solutions in canonical order, partitions explored in parallel.
    pub fn collect_parallel(&self) -> Vec<Solution> {
        let parts = self.partitions();
        let mut out: Vec<Solution> = parts
            .par_iter()
            .flat_map_iter(|p| {
                let mut local = Vec::new();
                let _ = self.for_each_in(p, |s| {
                    local.push(s.clone());
                    ControlFlow::Continue(())
                });
                local
            })
            .collect();
        out.sort();
        out
    }
}

/// All ordered irredundant σ-coverings of `m` with rank at most `max_rank`,
/// in canonical order.
pub fn enumerate_coverings(
    m: &CoveringMatrix,
    max_rank: Option<usize>,
) -> Result<Vec<SigmaCovering>, DualizationError> {
    Ok(Enumerator::new(m)?
        .max_rank(max_rank)
        .collect()
        .into_iter()
        .map(|s| s.covering)
        .collect())
}

struct Search<'e, 'm> {
    en: &'e Enumerator<'m>,
    x: Vec<usize>,
    assigned: Vec<bool>,
    stack: Vec<usize>,
    viol: Vec<u32>,
    viol_sum: Vec<usize>,
    dom_viol: Vec<u32>,
    dom_alive: usize,
    forbidden: Vec<bool>,
    marks: Vec<Vec<bool>>,
}

impl<'e, 'm> Search<'e, 'm> {
    fn new(en: &'e Enumerator<'m>) -> Self {
        let n = en.tops.len();
        let dom = en.dominated.as_ref().map_or(0, Vec::len);
        Search {
            en,
            x: en.tops.clone(),
            assigned: vec![false; n],
            stack: Vec::with_capacity(n),
            viol: vec![0; en.n_rows],
            viol_sum: vec![0; en.n_rows],
            dom_viol: vec![0; dom],
            dom_alive: dom,
            forbidden: vec![false; *en.offsets.last().unwrap_or(&0)],
            marks: vec![Vec::new(); n],
        }
    }

    #[inline]
    fn space(&self) -> &'e ProductSpace {
        self.en.matrix.space()
    }

    #[inline]
    fn row(&self, r: usize) -> &'e [usize] {
        let n = self.en.tops.len();
        &self.en.rows[r * n..(r + 1) * n]
    }

    fn uncovered_count(&self) -> usize {
        self.viol.iter().filter(|&&v| v == 0).count()
    }

    fn run<F>(&mut self, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Solution) -> ControlFlow<()>,
    {
        if !self.feasible() {
            return ControlFlow::Continue(());
        }
        self.node(f)
    }

    fn node<F>(&mut self, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Solution) -> ControlFlow<()>,
    {
        if self.uncovered_count() == 0 {
            return self.emit(f);
        }
        if self.en.max_rank.is_some_and(|m| self.stack.len() >= m) {
            return ControlFlow::Continue(());
        }
        let Some(branches) = self.branches() else {
            return ControlFlow::Continue(());
        };
        let mut result = ControlFlow::Continue(());
        for &(j, v) in &branches {
            self.assign(j, v);
            if self.feasible() {
                result = self.node(f);
            }
            self.unassign(j);
            if result.is_break() {
                break;
            }
            self.forbidden[self.en.offsets[j] + v] = true;
        }
        for &(j, v) in &branches {
            self.forbidden[self.en.offsets[j] + v] = false;
        }
        result
    }

    fn emit<F>(&self, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Solution) -> ControlFlow<()>,
    {
        let mut covering = SigmaCovering::empty();
        for (j, (&v, &top)) in self.x.iter().zip(&self.en.tops).enumerate() {
            if v != top {
                covering.columns.push(j);
                covering.sigma.push(v);
            }
        }
        f(&Solution {
            covering,
            element: Element(self.x.clone()),
            support: self.dom_alive,
        })
    }

    /// Candidate pairs for the uncovered row with the fewest of them, or
    /// `None` when some uncovered row cannot be escaped at all.
    fn branches(&self) -> Option<Vec<(usize, usize)>> {
        let sp = self.space();
        let n = self.en.tops.len();
        let uncovered: Vec<usize> = (0..self.en.n_rows).filter(|&r| self.viol[r] == 0).collect();

        // escape[j][a]: viable values v in column j with a ⋠ v.
        let mut escape: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        for j in (0..n).filter(|&j| !self.assigned[j]) {
            let p = sp.factor(j);
            let mut present = vec![false; p.len()];
            for &r in &uncovered {
                present[self.row(r)[j]] = true;
            }
            let mut dom_present = Vec::new();
            if let Some(dom) = &self.en.dominated {
                dom_present = vec![false; p.len()];
                for (q, d) in dom.iter().enumerate() {
                    if self.dom_viol[q] == 0 {
                        dom_present[d.0[j]] = true;
                    }
                }
            }
            let viable: Vec<usize> = (0..p.len())
                .filter(|&v| v != self.en.tops[j] && !self.forbidden[self.en.offsets[j] + v])
                .filter(|&v| {
                    p.upper_covers(v).iter().all(|&y| {
                        (0..p.len()).any(|a| present[a] && !p.leq(a, v) && p.leq(a, y))
                    })
                })
                .filter(|&v| {
                    dom_present.is_empty() || (0..p.len()).any(|a| dom_present[a] && p.leq(a, v))
                })
                .collect();
            let mut per_value = vec![Vec::new(); p.len()];
            for a in (0..p.len()).filter(|&a| present[a]) {
                per_value[a] = viable.iter().copied().filter(|&v| !p.leq(a, v)).collect();
            }
            escape[j] = per_value;
        }

        let mut best: Option<(usize, usize)> = None;
        for &r in &uncovered {
            let row = self.row(r);
            let count: usize = (0..n)
                .filter(|&j| !self.assigned[j])
                .map(|j| escape[j][row[j]].len())
                .sum();
            if count == 0 {
                return None;
            }
            if best.is_none_or(|(c, _)| count < c) {
                best = Some((count, r));
            }
        }
        let (_, r) = best?;
        let row = self.row(r);
        Some(
            (0..n)
                .filter(|&j| !self.assigned[j])
                .flat_map(|j| escape[j][row[j]].iter().map(move |&v| (j, v)))
                .collect(),
        )
    }

    fn assign(&mut self, j: usize, v: usize) {
        let p = self.space().factor(j);
        for r in 0..self.en.n_rows {
            if !p.leq(self.row(r)[j], v) {
                self.viol[r] += 1;
                self.viol_sum[r] += j;
            }
        }
        if let Some(dom) = &self.en.dominated {
            for (q, d) in dom.iter().enumerate() {
                if !p.leq(d.0[j], v) {
                    if self.dom_viol[q] == 0 {
                        self.dom_alive -= 1;
                    }
                    self.dom_viol[q] += 1;
                }
            }
        }
        self.x[j] = v;
        self.assigned[j] = true;
        self.stack.push(j);
    }

    fn unassign(&mut self, j: usize) {
        let p = self.space().factor(j);
        let v = self.x[j];
        for r in 0..self.en.n_rows {
            if !p.leq(self.row(r)[j], v) {
                self.viol[r] -= 1;
                self.viol_sum[r] -= j;
            }
        }
        if let Some(dom) = &self.en.dominated {
            for (q, d) in dom.iter().enumerate() {
                if !p.leq(d.0[j], v) {
                    self.dom_viol[q] -= 1;
                    if self.dom_viol[q] == 0 {
                        self.dom_alive += 1;
                    }
                }
            }
        }
        self.x[j] = self.en.tops[j];
        self.assigned[j] = false;
        let popped = self.stack.pop();
        debug_assert_eq!(popped, Some(j));
    }

    /// Dominated rows remain and every assigned column keeps a witness for
    /// each upper cover of its value.
    fn feasible(&mut self) -> bool {
        if self.en.dominated.is_some() && self.dom_alive == 0 {
            return false;
        }
        let sp = self.en.matrix.space();
        let mut needed = 0;
        for &t in &self.stack {
            let k = sp.factor(t).upper_covers(self.x[t]).len();
            let m = &mut self.marks[t];
            m.clear();
            m.resize(k, false);
            needed += k;
        }
        if needed == 0 {
            return true;
        }
        let n = self.en.tops.len();
        let mut found = 0;
        for r in 0..self.en.n_rows {
            if self.viol[r] != 1 {
                continue;
            }
            let t = self.viol_sum[r];
            let p = sp.factor(t);
            let a = self.en.rows[r * n + t];
            for (ci, &y) in p.upper_covers(self.x[t]).iter().enumerate() {
                if !self.marks[t][ci] && p.leq(a, y) {
                    self.marks[t][ci] = true;
                    found += 1;
                }
            }
            if found == needed {
                return true;
            }
        }
        false
    }
}
