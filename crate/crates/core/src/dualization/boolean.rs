use std::collections::BTreeSet;

/// All irreducible coverings of a Boolean matrix: column sets that hit a 1 in
/// every row and stop doing so when any column is removed.
///
/// Classical Berge-style sequential transversal construction, written without
/// any of the poset machinery so it can serve as an independent check of the
/// Boolean case. Column sets come back sorted lexicographically.
pub fn irreducible_boolean_coverings(rows: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let mut current: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    for row in rows {
        let ones: Vec<usize> = row
            .iter()
            .enumerate()
            .filter_map(|(j, &b)| b.then_some(j))
            .collect();
        let mut next: Vec<BTreeSet<usize>> = Vec::new();
        for t in &current {
            if ones.iter().any(|j| t.contains(j)) {
                next.push(t.clone());
            } else {
                for &j in &ones {
                    let mut grown = t.clone();
                    grown.insert(j);
                    next.push(grown);
                }
            }
        }
        next.sort();
        next.dedup();
        current = next
            .iter()
            .filter(|t| !next.iter().any(|u| u.len() < t.len() && u.is_subset(t)))
            .cloned()
            .collect();
    }
    let mut out: Vec<Vec<usize>> = current.into_iter().map(|t| t.into_iter().collect()).collect();
    out.sort();
    out
}
