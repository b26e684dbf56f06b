//! Simple undirected graphs with bitset adjacency rows.
//!
//! Vertices are `0..n`. Graphs are immutable once built; every operator
//! returns a fresh graph. Under [`Graph::disjoint_union`] and [`Graph::join`]
//! the left operand keeps its labels and the right operand is shifted by the
//! left operand's order.

use crate::bitset::BitSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<BitSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { rows: vec![BitSet::new(n); n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.rows[v] = BitSet::full(n);
            g.rows[v].remove(v);
        }
        g
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(rows: Vec<BitSet>) -> Self {
        Graph { rows }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighborhood(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            out.extend(self.rows[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let rows = (0..n)
            .map(|v| {
                let mut row = BitSet::full(n);
                row.difference_with(&self.rows[v]);
                row.remove(v);
                row
            })
            .collect();
        Graph { rows }
    }

    fn combine(&self, other: &Graph, cross: bool) -> Graph {
        let (a, b) = (self.order(), other.order());
        let mut g = Graph::empty(a + b);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(a + u, a + v);
        }
        if cross {
            for u in 0..a {
                for v in 0..b {
                    g.add_edge(u, a + v);
                }
            }
        }
        g
    }

    /// `self + other`: no edges between the two parts.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        self.combine(other, false)
    }

    /// `self ⊕ other`: every vertex of `self` adjacent to every vertex of `other`.
    pub fn join(&self, other: &Graph) -> Graph {
        self.combine(other, true)
    }

    /// `k` disjoint copies of `self`.
    pub fn copies(&self, k: usize) -> Graph {
        (0..k).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let n = self.order();
        let mut seen = BitSet::new(n);
        for &v in vertices {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if seen.contains(v) {
                return Err(GraphError::DuplicateVertex(v));
            }
            seen.insert(v);
        }
        let k = vertices.len();
        let mut g = Graph::empty(k);
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(vertices[i], vertices[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// `G - v`, with vertices above `v` shifted down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.order()).filter(|&w| w != v).collect();
        self.induced_subgraph(&keep).expect("vertices in range")
    }

    /// Acyclicity via union-find over the edge list.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.order()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (u, v) in self.edges() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&BitSet::full(self.order())).into_iter().map(|c| c.iter().collect()).collect()
    }

    /// Components of the subgraph induced by `mask`.
    pub(crate) fn components_within(&self, mask: &BitSet) -> Vec<BitSet> {
        let mut rest = mask.clone();
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = BitSet::new(self.order());
            let mut frontier = BitSet::new(self.order());
            frontier.insert(start);
            rest.remove(start);
            while let Some(v) = frontier.first() {
                frontier.remove(v);
                comp.insert(v);
                let mut next = self.rows[v].clone();
                next.intersect_with(&rest);
                rest.difference_with(&next);
                frontier.union_with(&next);
            }
            out.push(comp);
        }
        out
    }

    /// Components of the complement of the subgraph induced by `mask`.
    pub(crate) fn co_components_within(&self, mask: &BitSet) -> Vec<BitSet> {
        let mut rest = mask.clone();
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = BitSet::new(self.order());
            let mut frontier = BitSet::new(self.order());
            frontier.insert(start);
            rest.remove(start);
            while let Some(v) = frontier.first() {
                frontier.remove(v);
                comp.insert(v);
                // non-neighbours of v still unvisited
                let mut next = rest.clone();
                next.difference_with(&self.rows[v]);
                rest.difference_with(&next);
                frontier.union_with(&next);
            }
            out.push(comp);
        }
        out
    }

    /// Largest clique by exhaustive search; intended for small graphs.
    pub fn clique_number(&self) -> usize {
        fn grow(g: &Graph, cand: BitSet, size: usize, best: &mut usize) {
            if size + cand.count() <= *best {
                return;
            }
            match cand.first() {
                None => *best = (*best).max(size),
                Some(v) => {
                    let mut with = cand.clone();
                    with.intersect_with(g.neighborhood(v));
                    grow(g, with, size + 1, best);
                    let mut without = cand;
                    without.remove(v);
                    grow(g, without, size, best);
                }
            }
        }
        let mut best = 0;
        grow(self, BitSet::full(self.order()), 0, &mut best);
        best
    }
}
