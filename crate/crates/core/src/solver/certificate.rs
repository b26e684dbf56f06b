//! Partition certificates: extraction from the DP and independent validation.

use super::table::{join_outputs, Cell, Domain, Table};
use super::{SolveError, Triple};
use crate::cotree::{Cotree, NodeKind};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Class of one vertex. Class indices start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Forest(usize),
    Independent(usize),
    Deleted,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Forest(i) => write!(f, "F{i}"),
            Label::Independent(j) => write!(f, "Q{j}"),
            Label::Deleted => f.write_str("R"),
        }
    }
}

impl FromStr for Label {
    type Err = CertificateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CertificateError::BadLabel(s.to_string());
        if s == "R" {
            return Ok(Label::Deleted);
        }
        let (kind, idx) = s.split_at_checked(1).ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match kind {
            "F" => Ok(Label::Forest(idx)),
            "Q" => Ok(Label::Independent(idx)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate labels {labels} vertices but the graph has {n}")]
    WrongLength { labels: usize, n: usize },
    #[error("malformed class label {0:?}")]
    BadLabel(String),
    #[error("vertex {0} labelled twice or out of range")]
    BadVertex(usize),
    #[error("malformed certificate JSON: {0}")]
    Json(String),
}

/// One label per vertex, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub labels: Vec<Label>,
}

#[derive(Serialize, Deserialize)]
struct LabelEntry {
    v: usize,
    class: String,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    labels: Vec<LabelEntry>,
}

impl Certificate {
    /// `{"labels":[{"v":0,"class":"F1"},...]}`
    pub fn to_json(&self) -> serde_json::Value {
        let labels = self.labels.iter().enumerate().map(|(v, l)| LabelEntry { v, class: l.to_string() }).collect();
        serde_json::to_value(CertificateJson { labels }).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CertificateError> {
        let raw: CertificateJson =
            serde_json::from_value(v.clone()).map_err(|e| CertificateError::Json(e.to_string()))?;
        let n = raw.labels.len();
        let mut labels = vec![None; n];
        for e in raw.labels {
            match labels.get_mut(e.v) {
                Some(slot @ None) => *slot = Some(e.class.parse()?),
                _ => return Err(CertificateError::BadVertex(e.v)),
            }
        }
        Ok(Certificate { labels: labels.into_iter().map(|l| l.expect("all slots filled")).collect() })
    }

    /// Vertices carrying `label`, ascending.
    pub fn class(&self, label: Label) -> Vec<usize> {
        (0..self.labels.len()).filter(|&v| self.labels[v] == label).collect()
    }
}

/// Validates `cert` against `g` and the budget `t`.
///
/// Returns `Ok(false)` when a class index exceeds the budget, a forest class
/// contains a cycle, an independent class contains an edge, or more than `r`
/// vertices are deleted.
pub fn check_partition(g: &Graph, cert: &Certificate, t: Triple) -> Result<bool, CertificateError> {
    if cert.labels.len() != g.order() {
        return Err(CertificateError::WrongLength { labels: cert.labels.len(), n: g.order() });
    }
    let mut deleted = 0;
    for &l in &cert.labels {
        match l {
            Label::Forest(0) | Label::Independent(0) => return Err(CertificateError::BadLabel(l.to_string())),
            Label::Forest(i) if i > t.p => return Ok(false),
            Label::Independent(j) if j > t.q => return Ok(false),
            Label::Deleted => deleted += 1,
            _ => {}
        }
    }
    if deleted > t.r {
        return Ok(false);
    }
    for i in 1..=t.p {
        let class = cert.class(Label::Forest(i));
        if !g.induced_subgraph(&class).expect("in range").is_forest() {
            return Ok(false);
        }
    }
    for j in 1..=t.q {
        if !g.is_independent(&cert.class(Label::Independent(j))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Class slots of a partial solution: `forests.len()` and `indep.len()` are the
/// budgets in use (slots may be empty).
#[derive(Default, Debug)]
struct Partial {
    forests: Vec<Vec<usize>>,
    indep: Vec<Vec<usize>>,
    deleted: Vec<usize>,
}

impl Partial {
    /// Reshapes a partial that fits `from` into one that fits `to`, given
    /// `from.relaxes_to(&to)`.
    fn relax(mut self, to: Triple) -> Partial {
        while self.indep.len() > to.q {
            let class = self.indep.pop().unwrap();
            self.forests.push(class);
        }
        self.deleted.sort_unstable();
        while self.deleted.len() > to.r {
            let v = self.deleted.pop().unwrap();
            if self.indep.len() < to.q {
                self.indep.push(vec![v]);
            } else {
                self.forests.push(vec![v]);
            }
        }
        debug_assert!(self.forests.len() <= to.p && self.indep.len() <= to.q);
        self.forests.resize_with(to.p, Vec::new);
        self.indep.resize_with(to.q, Vec::new);
        self
    }
}

/// A table in the fold of a node's children: `Fold(node, j)` combines
/// children `0..=j+1`; `Node(x)` is the full table of `x`.
#[derive(Clone, Copy)]
enum Slot {
    Node(usize),
    Fold(usize, usize),
}

struct Solved<'a> {
    tree: &'a Cotree,
    /// per node: fold tables, the last one being the node's own table
    folds: Vec<Vec<Table>>,
}

impl Solved<'_> {
    fn table(&self, s: Slot) -> &Table {
        match s {
            Slot::Node(x) => self.folds[x].last().unwrap(),
            Slot::Fold(x, j) => &self.folds[x][j],
        }
    }

    fn operands(&self, x: usize, j: usize) -> (Slot, Slot) {
        let kids = &self.tree.node(x).children;
        let left = if j == 0 { Slot::Node(kids[0]) } else { Slot::Fold(x, j - 1) };
        (left, Slot::Node(kids[j + 1]))
    }

    fn extract(&self, s: Slot, target: Triple) -> Partial {
        let (x, j) = match s {
            Slot::Node(x) => match self.tree.node(x).kind {
                NodeKind::Leaf(v) => {
                    let p = Partial { deleted: vec![v], ..Partial::default() };
                    return p.relax(target);
                }
                _ => (x, self.folds[x].len() - 1),
            },
            Slot::Fold(x, j) => (x, j),
        };
        let (left, right) = self.operands(x, j);
        let (lt, rt) = (self.table(left), self.table(right));
        let Triple { p, q, .. } = target;
        match self.tree.node(x).kind {
            NodeKind::Union => {
                let (rl, rr) = (lt.min_r(p, q).unwrap(), rt.min_r(p, q).unwrap());
                let a = self.extract(left, Triple::new(p, q, rl));
                let b = self.extract(right, Triple::new(p, q, rr));
                let mut out = Partial { forests: a.forests, indep: a.indep, deleted: a.deleted };
                for (i, c) in b.forests.into_iter().enumerate() {
                    out.forests[i].extend(c);
                }
                for (i, c) in b.indep.into_iter().enumerate() {
                    out.indep[i].extend(c);
                }
                out.deleted.extend(b.deleted);
                out.relax(target)
            }
            NodeKind::Join => {
                let dom = lt.domain();
                let (up_cells, down_cells) = (lt.frontier(), rt.frontier());
                let (a, b, t) = find_join_choice(dom, &up_cells, &down_cells, target)
                    .expect("target is feasible, so some frontier pair derives it");
                let up = self.extract(left, Triple::new(a.p, a.q, a.r));
                let down = self.extract(right, Triple::new(b.p, b.q, b.r));
                let t_up = t.min(a.r.min(b.q));
                let t_down = t - t_up;
                merge_join(up, down, t_up, t_down).relax(target)
            }
            NodeKind::Leaf(_) => unreachable!(),
        }
    }
}

fn find_join_choice(dom: Domain, up: &[Cell], down: &[Cell], target: Triple) -> Option<(Cell, Cell, usize)> {
    for a in up {
        for b in down {
            for (p, q, r) in join_outputs(dom, a, b) {
                if Triple::new(p, q, r).relaxes_to(&target) {
                    return Some((*a, *b, p - a.p - b.p));
                }
            }
        }
    }
    None
}

/// Joins two partials, turning `t_up` up-side deletions into star centres over
/// the last `t_up` independent classes of the down side, and symmetrically.
fn merge_join(mut up: Partial, mut down: Partial, t_up: usize, t_down: usize) -> Partial {
    up.deleted.sort_unstable();
    down.deleted.sort_unstable();
    let mut stars = Vec::with_capacity(t_up + t_down);
    let leaves_down = down.indep.split_off(down.indep.len() - t_up);
    let centres_up: Vec<usize> = up.deleted.drain(..t_up.min(up.deleted.len())).collect();
    for (i, leaves) in leaves_down.into_iter().enumerate() {
        let mut star = leaves;
        star.extend(centres_up.get(i));
        stars.push(star);
    }
    let leaves_up = up.indep.split_off(up.indep.len() - t_down);
    let centres_down: Vec<usize> = down.deleted.drain(..t_down.min(down.deleted.len())).collect();
    for (i, leaves) in leaves_up.into_iter().enumerate() {
        let mut star = leaves;
        star.extend(centres_down.get(i));
        stars.push(star);
    }
    let mut forests = up.forests;
    forests.extend(down.forests);
    forests.extend(stars);
    let mut indep = up.indep;
    indep.extend(down.indep);
    let mut deleted = up.deleted;
    deleted.extend(down.deleted);
    Partial { forests, indep, deleted }
}

/// A `t`-partition of the cograph with cotree `tree`, reconstructed from the DP.
pub fn extract_certificate(tree: &Cotree, t: Triple) -> Result<Certificate, SolveError> {
    let n = tree.order();
    if n == 0 {
        return Ok(Certificate { labels: Vec::new() });
    }
    let dom = Domain::new(t);
    let mut folds: Vec<Vec<Table>> = Vec::with_capacity(tree.nodes().len());
    for node in tree.nodes() {
        if node.children.is_empty() {
            folds.push(vec![Table::leaf(dom)]);
            continue;
        }
        let kids = &node.children;
        let mut chain = Vec::with_capacity(kids.len() - 1);
        let mut acc = folds[kids[0]].last().unwrap().combine(node.kind, folds[kids[1]].last().unwrap());
        for &c in &kids[2..] {
            let next = acc.combine(node.kind, folds[c].last().unwrap());
            chain.push(acc);
            acc = next;
        }
        chain.push(acc);
        folds.push(chain);
    }
    let root = tree.root().unwrap();
    if folds[root].last().unwrap().min_r(t.p, t.q).is_none_or(|r| r > t.r) {
        return Err(SolveError::Infeasible(t));
    }
    let solved = Solved { tree, folds };
    let partial = solved.extract(Slot::Node(root), t);
    let mut labels = vec![Label::Deleted; n];
    for (i, class) in partial.forests.iter().enumerate() {
        for &v in class {
            labels[v] = Label::Forest(i + 1);
        }
    }
    for (j, class) in partial.indep.iter().enumerate() {
        for &v in class {
            labels[v] = Label::Independent(j + 1);
        }
    }
    Ok(Certificate { labels })
}
