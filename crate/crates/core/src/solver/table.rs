//! Per-node DP tables.
//!
//! For a query box `(P,Q,R)` the DP runs over the domain
//! `{p ≤ P, p+q ≤ P+Q, p+q+r ≤ P+Q+R}`: a join may need child budgets with
//! more independent classes or deletions than the box allows (they turn into
//! stars), but never outside this domain. Feasible sets are closed under
//! adding budget and under the moves `q→p`, `r→q`, `r→p`, so a table only
//! stores the least feasible `r` for each `(p,q)`.

use super::Triple;
use crate::cotree::NodeKind;
use serde::{Deserialize, Serialize};

const INF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Domain {
    pub p_max: usize,
    /// bound on `p + q`
    pub s_max: usize,
    /// bound on `p + q + r`
    pub w_max: usize,
}

impl Domain {
    pub fn new(bounds: Triple) -> Self {
        Domain { p_max: bounds.p, s_max: bounds.p + bounds.q, w_max: bounds.solver_weight() }
    }
}

/// Least feasible deletion count per `(p, q)`, `INF` when none fits the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Table {
    dom: Domain,
    min_r: Vec<u32>,
}

/// A cell `(p, q, least r)` of a table.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Cell {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Table {
    fn filled(dom: Domain, value: u32) -> Self {
        Table { dom, min_r: vec![value; (dom.p_max + 1) * (dom.s_max + 1)] }
    }

    #[inline]
    fn idx(&self, p: usize, q: usize) -> usize {
        p * (self.dom.s_max + 1) + q
    }

    #[inline]
    fn get(&self, p: usize, q: usize) -> u32 {
        self.min_r[self.idx(p, q)]
    }

    #[inline]
    fn lower(&mut self, p: usize, q: usize, r: u32) {
        let i = self.idx(p, q);
        if r < self.min_r[i] {
            self.min_r[i] = r;
        }
    }

    pub fn domain(&self) -> Domain {
        self.dom
    }

    /// Least `r` with `(p,q,r)` feasible, if it lies in the domain.
    pub fn min_r(&self, p: usize, q: usize) -> Option<usize> {
        if p > self.dom.p_max || p + q > self.dom.s_max {
            return None;
        }
        match self.get(p, q) {
            INF => None,
            r => Some(r as usize),
        }
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let s = self.dom.s_max;
        (0..=self.dom.p_max).flat_map(move |p| (0..=s - p).map(move |q| (p, q)))
    }

    pub fn empty_graph(dom: Domain) -> Self {
        let mut t = Table::filled(dom, INF);
        for (p, q) in t.cells().collect::<Vec<_>>() {
            t.lower(p, q, 0);
        }
        t
    }

    pub fn leaf(dom: Domain) -> Self {
        let mut t = Table::filled(dom, INF);
        for (p, q) in t.cells().collect::<Vec<_>>() {
            let r = if p + q >= 1 { 0 } else { 1 };
            if p + q + r <= dom.w_max {
                t.lower(p, q, r as u32);
            }
        }
        t
    }

    /// Applies the closure moves, then drops values outside the domain.
    fn close(&mut self) {
        let dec = |x: u32| if x == INF { INF } else { x.saturating_sub(1) };
        let s = self.dom.s_max;
        for p in 0..=self.dom.p_max {
            for q in 0..=s - p {
                let mut v = self.get(p, q);
                if p > 0 {
                    v = v.min(dec(self.get(p - 1, q))).min(self.get(p - 1, q + 1));
                }
                if q > 0 {
                    v = v.min(dec(self.get(p, q - 1)));
                }
                if v != INF && p + q + v as usize > self.dom.w_max {
                    v = INF;
                }
                let i = self.idx(p, q);
                self.min_r[i] = v;
            }
        }
    }

    /// Componentwise-minimal feasible cells.
    pub fn frontier(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (p, q) in self.cells() {
            let v = self.get(p, q);
            if v == INF {
                continue;
            }
            let left = if p > 0 { self.get(p - 1, q) } else { INF };
            let below = if q > 0 { self.get(p, q - 1) } else { INF };
            if v < left && v < below {
                out.push(Cell { p, q, r: v as usize });
            }
        }
        out
    }

    pub fn combine(&self, kind: NodeKind, other: &Table) -> Table {
        match kind {
            NodeKind::Union => self.union(other),
            NodeKind::Join => self.join(other),
            NodeKind::Leaf(_) => unreachable!("leaves have no children"),
        }
    }

    fn union(&self, other: &Table) -> Table {
        let mut t = Table::filled(self.dom, INF);
        for (p, q) in self.cells() {
            let (a, b) = (self.get(p, q), other.get(p, q));
            if a != INF && b != INF && p + q + (a + b) as usize <= self.dom.w_max {
                t.lower(p, q, a + b);
            }
        }
        t
    }

    fn join(&self, other: &Table) -> Table {
        let dom = self.dom;
        let mut t = Table::filled(dom, INF);
        let (up, down) = (self.frontier(), other.frontier());
        for a in &up {
            for b in &down {
                for (p, q, r) in join_outputs(dom, a, b) {
                    t.lower(p, q, r as u32);
                }
            }
        }
        t.close();
        t
    }
}

/// Triples derived from one pair of cells that land inside the domain.
pub(crate) fn join_outputs(dom: Domain, a: &Cell, b: &Cell) -> impl Iterator<Item = (usize, usize, usize)> {
    let base_p = a.p + b.p;
    let s = a.p + a.q + b.p + b.q;
    let rr = a.r + b.r;
    let cross = if base_p > dom.p_max || s > dom.s_max { None } else { Some(a.r.min(b.q) + a.q.min(b.r)) };
    // r decreases with t, so skip t values that still overflow the weight bound
    let t_lo = (s + rr).saturating_sub(dom.w_max);
    let t_hi = cross.map_or(0, |c| c.min(dom.p_max - base_p.min(dom.p_max)));
    let (lo, hi) = if cross.is_some() { (t_lo, t_hi) } else { (1, 0) };
    (lo..=hi).map(move |t| (base_p + t, s - base_p - t, rr - t))
}

/// Feasibility of every triple in a box, with its frontier of minimal triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSet {
    bounds: Triple,
    cells: Vec<bool>,
}

impl TripleSet {
    pub(crate) fn from_table(bounds: Triple, table: &Table) -> Self {
        let mut cells = Vec::with_capacity((bounds.p + 1) * (bounds.q + 1) * (bounds.r + 1));
        for p in 0..=bounds.p {
            for q in 0..=bounds.q {
                let min_r = table.min_r(p, q);
                for r in 0..=bounds.r {
                    cells.push(min_r.is_some_and(|m| m <= r));
                }
            }
        }
        TripleSet { bounds, cells }
    }

    pub fn bounds(&self) -> Triple {
        self.bounds
    }

    fn index(&self, t: Triple) -> usize {
        (t.p * (self.bounds.q + 1) + t.q) * (self.bounds.r + 1) + t.r
    }

    /// Membership; triples outside the box report `false`.
    pub fn contains(&self, t: Triple) -> bool {
        t.dominated_by(&self.bounds) && self.cells[self.index(t)]
    }

    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        let b = self.bounds;
        (0..=b.p)
            .flat_map(move |p| (0..=b.q).flat_map(move |q| (0..=b.r).map(move |r| Triple::new(p, q, r))))
            .filter(|&t| self.contains(t))
    }

    /// Feasible triples with no feasible triple strictly below them componentwise.
    pub fn frontier(&self) -> Vec<Triple> {
        self.iter()
            .filter(|t| {
                let below = [
                    t.p.checked_sub(1).map(|p| Triple::new(p, t.q, t.r)),
                    t.q.checked_sub(1).map(|q| Triple::new(t.p, q, t.r)),
                    t.r.checked_sub(1).map(|r| Triple::new(t.p, t.q, r)),
                ];
                below.iter().flatten().all(|&b| !self.contains(b))
            })
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&c| c)
    }

    /// `{"box":[P,Q,R], "frontier":[[p,q,r],...]}`
    pub fn to_json(&self) -> serde_json::Value {
        let b = self.bounds;
        serde_json::json!({
            "box": [b.p, b.q, b.r],
            "frontier": self.frontier().iter().map(|t| [t.p, t.q, t.r]).collect::<Vec<_>>(),
        })
    }

    /// Rebuilds a set from its JSON form by closing the frontier upward.
    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let b: [usize; 3] = serde_json::from_value(v.get("box")?.clone()).ok()?;
        let frontier: Vec<[usize; 3]> = serde_json::from_value(v.get("frontier")?.clone()).ok()?;
        let bounds = Triple::new(b[0], b[1], b[2]);
        let mut set = TripleSet { bounds, cells: vec![false; (b[0] + 1) * (b[1] + 1) * (b[2] + 1)] };
        for p in 0..=b[0] {
            for q in 0..=b[1] {
                for r in 0..=b[2] {
                    let t = Triple::new(p, q, r);
                    if frontier.iter().any(|f| Triple::new(f[0], f[1], f[2]).dominated_by(&t)) {
                        let i = set.index(t);
                        set.cells[i] = true;
                    }
                }
            }
        }
        Some(set)
    }
}
