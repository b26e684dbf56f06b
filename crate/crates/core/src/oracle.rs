//! Brute-force ground truth for small graphs of any kind.
//!
//! Nothing here uses cograph structure: partitions are found by backtracking
//! over per-vertex class assignments, with a rollback union-find catching
//! cycles inside forest classes.

use crate::graph::Graph;
use crate::solver::Triple;
use crate::strength::StrengthProfile;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    /// search-tree nodes visited before giving up
    pub max_assignments: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 12, max_assignments: 200_000_000 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("search aborted after {0} assignments")]
    BudgetExceeded(u64),
}

#[derive(Clone)]
struct RollbackUnionFind {
    parent: Vec<isize>,
    history: Vec<(usize, isize)>,
}

impl RollbackUnionFind {
    fn new(n: usize) -> Self {
        RollbackUnionFind { parent: vec![-1; n], history: Vec::new() }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] >= 0 {
            v = self.parent[v] as usize;
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut x, mut y) = (self.find(a), self.find(b));
        if x == y {
            return false;
        }
        if self.parent[x] > self.parent[y] {
            std::mem::swap(&mut x, &mut y);
        }
        self.history.push((y, self.parent[y]));
        self.parent[x] += self.parent[y];
        self.parent[y] = x as isize;
        true
    }

    fn time(&self) -> usize {
        self.history.len()
    }

    fn rollback(&mut self, t: usize) {
        while self.history.len() > t {
            let (v, old) = self.history.pop().unwrap();
            let p = self.parent[v] as usize;
            self.parent[p] -= old;
            self.parent[v] = old;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Free,
    Forest(usize),
    Indep(usize),
    Deleted,
}

struct Search<'a> {
    g: &'a Graph,
    order: &'a [usize],
    budget: Triple,
    slot: Vec<Slot>,
    uf: RollbackUnionFind,
    forests_open: usize,
    indep_open: usize,
    deleted: usize,
    visited: u64,
    limit: u64,
}

impl Search<'_> {
    fn run(&mut self, i: usize) -> Result<bool, OracleError> {
        self.visited += 1;
        if self.visited > self.limit {
            return Err(OracleError::BudgetExceeded(self.limit));
        }
        if i == self.order.len() {
            return Ok(true);
        }
        let v = self.order[i];
        // a vertex may open class k only when classes below k are open
        for k in 0..self.budget.p.min(self.forests_open + 1) {
            let mark = self.uf.time();
            let acyclic = self
                .g
                .neighbors(v)
                .filter(|&u| self.slot[u] == Slot::Forest(k))
                .collect::<Vec<_>>()
                .into_iter()
                .all(|u| self.uf.union(v, u));
            if acyclic {
                let opened = k == self.forests_open;
                self.slot[v] = Slot::Forest(k);
                self.forests_open += opened as usize;
                let found = self.run(i + 1)?;
                self.forests_open -= opened as usize;
                self.slot[v] = Slot::Free;
                if found {
                    self.uf.rollback(mark);
                    return Ok(true);
                }
            }
            self.uf.rollback(mark);
        }
        for k in 0..self.budget.q.min(self.indep_open + 1) {
            if self.g.neighbors(v).any(|u| self.slot[u] == Slot::Indep(k)) {
                continue;
            }
            let opened = k == self.indep_open;
            self.slot[v] = Slot::Indep(k);
            self.indep_open += opened as usize;
            let found = self.run(i + 1)?;
            self.indep_open -= opened as usize;
            self.slot[v] = Slot::Free;
            if found {
                return Ok(true);
            }
        }
        if self.deleted < self.budget.r {
            self.slot[v] = Slot::Deleted;
            self.deleted += 1;
            let found = self.run(i + 1)?;
            self.deleted -= 1;
            self.slot[v] = Slot::Free;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Vertices by descending degree, ties by id.
pub fn default_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

pub fn brute_force_partitionable(g: &Graph, t: Triple) -> Result<bool, OracleError> {
    brute_force_partitionable_with(g, t, OracleBudget::default(), &default_order(g))
}

/// Exhaustive search for a `t`-partition assigning vertices in `order`.
pub fn brute_force_partitionable_with(
    g: &Graph,
    t: Triple,
    budget: OracleBudget,
    order: &[usize],
) -> Result<bool, OracleError> {
    let n = g.order();
    if n > budget.max_vertices {
        return Err(OracleError::TooManyVertices { n, max: budget.max_vertices });
    }
    assert_eq!(order.len(), n, "order must list every vertex once");
    let mut s = Search {
        g,
        order,
        budget: t,
        slot: vec![Slot::Free; n],
        uf: RollbackUnionFind::new(n),
        forests_open: 0,
        indep_open: 0,
        deleted: 0,
        visited: 0,
        limit: budget.max_assignments,
    };
    s.run(0)
}

pub fn brute_force_arboricity(g: &Graph) -> Result<usize, OracleError> {
    for p in 0..=g.order() {
        if brute_force_partitionable(g, Triple::new(p, 0, 0))? {
            return Ok(p);
        }
    }
    unreachable!("every vertex can be its own forest")
}

pub fn brute_force_chromatic(g: &Graph) -> Result<usize, OracleError> {
    for q in 0..=g.order() {
        if brute_force_partitionable(g, Triple::new(0, q, 0))? {
            return Ok(q);
        }
    }
    unreachable!("every vertex can be its own colour")
}

/// Largest induced `K_s` and largest induced complement of `sK_2`, by subset enumeration.
pub fn brute_force_strength(g: &Graph) -> Result<StrengthProfile, OracleError> {
    let n = g.order();
    let max = OracleBudget::default().max_vertices.max(20);
    if n > max {
        return Err(OracleError::TooManyVertices { n, max });
    }
    let (mut omega, mut tau) = (0, 0);
    for mask in 0u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let k = verts.len();
        let missing = |v: usize| verts.iter().filter(|&&u| u != v && !g.has_edge(u, v)).count();
        if k > omega && verts.iter().all(|&v| missing(v) == 0) {
            omega = k;
        }
        if k.is_multiple_of(2) && k / 2 > tau && verts.iter().all(|&v| missing(v) == 1) {
            tau = k / 2;
        }
    }
    Ok(StrengthProfile::new(omega, tau))
}
