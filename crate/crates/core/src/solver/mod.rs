//! `(p,q,r)`-partitions of cographs by dynamic programming over the cotree.
//!
//! A `(p,q,r)`-partition splits the vertices into `p` classes inducing forests,
//! `q` independent classes, and at most `r` deleted vertices. For every cotree
//! node the solver keeps the set of budgets the subgraph below it can meet.
//! Union nodes combine budgets with [`derive_union`], join nodes with
//! [`derive_join`]; in a join a forest meeting both sides is a star whose
//! centre lies on one side and whose leaves form an independent set on the other.

mod certificate;
mod table;

pub use certificate::{check_partition, extract_certificate, Certificate, CertificateError, Label};
pub use table::TripleSet;

use crate::cotree::{recognize, Cotree, P4Witness};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use table::{Domain, Table};
use thiserror::Error;

/// A budget: `p` forest classes, `q` independent classes, `r` deletions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Triple {
    pub const fn new(p: usize, q: usize, r: usize) -> Self {
        Triple { p, q, r }
    }

    /// `p + q + r`, the size measure used to bound the DP.
    pub fn solver_weight(&self) -> usize {
        self.p + self.q + self.r
    }

    /// `2p + q + r`; additive over join derivations.
    pub fn obstruction_weight(&self) -> usize {
        2 * self.p + self.q + self.r
    }

    /// Componentwise `≤`.
    pub fn dominated_by(&self, other: &Triple) -> bool {
        self.p <= other.p && self.q <= other.q && self.r <= other.r
    }

    /// Whether a `self`-partition can be turned into an `other`-partition by
    /// adding empty classes, relabelling independent classes as forests, or
    /// moving deleted vertices into new singleton classes.
    pub fn relaxes_to(&self, other: &Triple) -> bool {
        self.p <= other.p && self.p + self.q <= other.p + other.q && self.solver_weight() <= other.solver_weight()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("expected a triple like `p,q,r` or `(p,q,r)`, got {0:?}")]
pub struct TripleParseError(pub String);

impl FromStr for Triple {
    type Err = TripleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || TripleParseError(s.to_string());
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        let parts: Vec<usize> =
            t.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<_, _>>().map_err(|_| err())?;
        match parts.as_slice() {
            &[p, q, r] => Ok(Triple::new(p, q, r)),
            _ => Err(err()),
        }
    }
}

/// Parses a list of triples such as `(1,0,0),(0,2,1)` or `1,0,0;0,2,1`.
pub fn parse_triple_list(s: &str) -> Result<Vec<Triple>, TripleParseError> {
    let t = s.trim();
    if t.contains('(') {
        t.split(')')
            .map(|chunk| chunk.trim().trim_start_matches(',').trim())
            .filter(|chunk| !chunk.is_empty())
            .map(|chunk| chunk.trim_start_matches('(').parse())
            .collect()
    } else if t.contains(';') {
        t.split(';').map(str::parse).collect()
    } else {
        let nums: Vec<&str> = t.split(',').collect();
        if !nums.len().is_multiple_of(3) || nums.is_empty() {
            return Err(TripleParseError(s.to_string()));
        }
        nums.chunks(3).map(|c| c.join(",").parse()).collect()
    }
}

/// Budget of `G_u + G_d` from budgets of the two sides.
pub fn derive_union(up: Triple, down: Triple) -> Triple {
    Triple::new(up.p.max(down.p), up.q.max(down.q), up.r + down.r)
}

/// Budgets of `G_u ⊕ G_d` from budgets of the two sides.
///
/// `t_u` stars take a centre from the up side's deletions and an independent
/// class of the down side as leaves; `t_d` stars the other way round. Result
/// is sorted and free of duplicates.
pub fn derive_join(up: Triple, down: Triple) -> Vec<Triple> {
    let cross = up.r.min(down.q) + up.q.min(down.r);
    (0..=cross).map(|t| Triple::new(up.p + down.p + t, up.q + down.q - t, up.r + down.r - t)).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("input is not a cograph: vertices {0} induce a P4")]
    NotCograph(P4Witness),
    #[error("no {0}-partition exists")]
    Infeasible(Triple),
}

impl From<P4Witness> for SolveError {
    fn from(w: P4Witness) -> Self {
        SolveError::NotCograph(w)
    }
}

/// Feasibility of every triple inside `bounds`.
pub fn feasible_set(tree: &Cotree, bounds: Triple) -> TripleSet {
    let domain = Domain::new(bounds);
    TripleSet::from_table(bounds, &root_table(tree, domain))
}

fn root_table(tree: &Cotree, domain: Domain) -> Table {
    if tree.is_empty() {
        return Table::empty_graph(domain);
    }
    let nodes = tree.nodes();
    let mut done: Vec<Option<Table>> = Vec::with_capacity(nodes.len());
    for node in nodes {
        let table = if node.children.is_empty() {
            Table::leaf(domain)
        } else {
            let mut kids = node.children.iter().map(|&c| done[c].take().expect("post-order"));
            let first = kids.next().unwrap();
            kids.fold(first, |acc, next| acc.combine(node.kind, &next))
        };
        done.push(Some(table));
    }
    done.pop().unwrap().unwrap()
}

pub fn cotree_partitionable(tree: &Cotree, t: Triple) -> bool {
    feasible_set(tree, t).contains(t)
}

/// Recognizes `g` and decides whether it admits a `t`-partition.
pub fn is_partitionable(g: &Graph, t: Triple) -> Result<bool, SolveError> {
    let tree = recognize(g)?;
    Ok(cotree_partitionable(&tree, t))
}

/// Smallest `k ≥ 0` with `ok(root table for bounds(k))`, doubling the box.
fn search_min(tree: &Cotree, bounds: impl Fn(usize) -> Triple, read: impl Fn(&Table, usize) -> Option<usize>) -> usize {
    let mut cap = 1;
    loop {
        let table = root_table(tree, Domain::new(bounds(cap)));
        if let Some(k) = read(&table, cap) {
            return k;
        }
        cap *= 2;
    }
}

/// Vertex arboricity: least `p` with a `(p,0,0)`-partition.
pub fn vertex_arboricity(tree: &Cotree) -> usize {
    search_min(tree, |c| Triple::new(c, 0, 0), |t, c| (0..=c).find(|&p| t.min_r(p, 0) == Some(0)))
}

/// Chromatic number: least `q` with a `(0,q,0)`-partition.
pub fn chromatic_number(tree: &Cotree) -> usize {
    search_min(tree, |c| Triple::new(0, c, 0), |t, c| (0..=c).find(|&q| t.min_r(0, q) == Some(0)))
}

/// Least `r` with a `(p,q,r)`-partition.
pub fn min_deletions(tree: &Cotree, p: usize, q: usize) -> usize {
    let table = root_table(tree, Domain::new(Triple::new(p, q, tree.order())));
    table.min_r(p, q).expect("deleting every vertex is always possible")
}

/// Least `q` such that the graph has a `q`-colourable feedback vertex set,
/// i.e. a `(1,q,0)`-partition.
pub fn min_q_feedback(tree: &Cotree) -> usize {
    search_min(tree, |c| Triple::new(1, c, 0), |t, c| (0..=c).find(|&q| t.min_r(1, q) == Some(0)))
}
