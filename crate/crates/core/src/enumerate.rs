//! Exhaustive generation of unlabeled cographs.
//!
//! Every cograph on `n ≥ 2` vertices is either a union of at least two
//! "non-union" cotrees (a leaf or a join-rooted tree) or the complement of one.
//! Union-rooted trees are produced as multisets of smaller non-union trees in
//! nondecreasing `(size, index)` order, so each isomorphism class appears once
//! without any isomorphism test. Practical up to about `n = 12` (43 930 classes).

use crate::cotree::Cotree;

/// Cotree tables indexed by vertex count.
pub struct CographCatalog {
    /// `union_rooted[k]`: one tree per class of disconnected cographs on `k` vertices.
    union_rooted: Vec<Vec<Cotree>>,
}

impl CographCatalog {
    pub fn new() -> Self {
        CographCatalog { union_rooted: vec![Vec::new(), Vec::new()] }
    }

    fn extend_to(&mut self, n: usize) {
        while self.union_rooted.len() <= n {
            let k = self.union_rooted.len();
            // parts: non-union trees of sizes 1..k-1
            let parts: Vec<Vec<Cotree>> = (0..k)
                .map(|s| match s {
                    0 => Vec::new(),
                    1 => vec![Cotree::leaf()],
                    _ => self.union_rooted[s].iter().map(Cotree::complement).collect(),
                })
                .collect();
            let mut out = Vec::new();
            let mut chosen = Vec::new();
            multisets(&parts, k, (1, 0), &mut chosen, &mut out);
            self.union_rooted.push(out);
        }
    }

    /// One cotree per isomorphism class of cographs on `n` vertices.
    pub fn cographs(&mut self, n: usize) -> Vec<Cotree> {
        match n {
            0 => vec![Cotree::empty()],
            1 => vec![Cotree::leaf()],
            _ => {
                self.extend_to(n);
                let u = &self.union_rooted[n];
                u.iter().cloned().chain(u.iter().map(Cotree::complement)).collect()
            }
        }
    }
}

impl Default for CographCatalog {
    fn default() -> Self {
        Self::new()
    }
}

fn multisets(
    parts: &[Vec<Cotree>],
    remaining: usize,
    min: (usize, usize),
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Cotree>,
) {
    if remaining == 0 {
        let trees = chosen.iter().map(|&(s, i)| parts[s][i].clone()).collect();
        out.push(Cotree::union(trees));
        return;
    }
    for size in min.0..parts.len().min(remaining + 1) {
        let start = if size == min.0 { min.1 } else { 0 };
        for index in start..parts[size].len() {
            chosen.push((size, index));
            multisets(parts, remaining - size, (size, index), chosen, out);
            chosen.pop();
        }
    }
}

/// Stream of one cotree per isomorphism class of cographs on `n` vertices.
pub fn enumerate_cographs(n: usize) -> impl Iterator<Item = Cotree> {
    CographCatalog::new().cographs(n).into_iter()
}

/// All cographs with `1..=n_max` vertices, smallest first.
pub fn enumerate_up_to(n_max: usize) -> Vec<Cotree> {
    let mut cat = CographCatalog::new();
    (1..=n_max).flat_map(|n| cat.cographs(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_cographs(1).count(), 1);
        let two: Vec<_> = enumerate_cographs(2).map(|t| t.realize().edge_count()).collect();
        assert_eq!(two.len(), 2);
        assert!(two.contains(&0) && two.contains(&1));
        assert_eq!(enumerate_cographs(3).count(), 4);
    }

    #[test]
    fn codes_are_unique() {
        for n in 1..=8 {
            let codes: HashSet<_> = enumerate_cographs(n).map(|t| t.canonical_code()).collect();
            assert_eq!(codes.len(), enumerate_cographs(n).count(), "n = {n}");
        }
    }

    #[test]
    fn known_class_counts() {
        // number of cographs on n unlabeled vertices
        let expected = [1, 2, 4, 10, 24, 66, 180, 522, 1532, 4624];
        let mut cat = CographCatalog::new();
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(cat.cographs(i + 1).len(), e, "n = {}", i + 1);
        }
    }

    #[test]
    fn every_tree_has_requested_order() {
        for t in enumerate_up_to(6) {
            assert_eq!(t.realize().order(), t.order());
        }
    }
}
