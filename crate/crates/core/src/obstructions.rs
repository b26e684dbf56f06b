//! Obstruction families, the minimal-obstruction checker and exhaustive search.

use crate::cotree::{recognize, Cotree};
use crate::dsl::parse_cotree;
use crate::enumerate::enumerate_up_to;
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::solver::{
    chromatic_number, extract_certificate, feasible_set, min_deletions, vertex_arboricity, Certificate, Triple,
    TripleSet,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("goal set must contain at least one triple")]
    EmptyGoal,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("forest has {got} vertices, expected {expected}")]
    WrongForestSize { expected: usize, got: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A finite, non-empty set of target triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleGoalSet {
    triples: Vec<Triple>,
}

impl TripleGoalSet {
    pub fn new(mut triples: Vec<Triple>) -> Result<Self, ObstructionError> {
        if triples.is_empty() {
            return Err(ObstructionError::EmptyGoal);
        }
        triples.sort();
        triples.dedup();
        Ok(TripleGoalSet { triples })
    }

    pub fn single(t: Triple) -> Self {
        TripleGoalSet { triples: vec![t] }
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    fn bounds(&self) -> Triple {
        self.triples.iter().fold(Triple::default(), |b, t| Triple::new(b.p.max(t.p), b.q.max(t.q), b.r.max(t.r)))
    }

    fn feasible(&self, tree: &Cotree) -> TripleSet {
        feasible_set(tree, self.bounds())
    }

    /// First goal triple the cograph admits, in sorted order.
    pub fn first_admitted(&self, tree: &Cotree) -> Option<Triple> {
        let set = self.feasible(tree);
        self.triples.iter().copied().find(|&t| set.contains(t))
    }
}

/// Why `G - v` is no longer an obstruction. The certificate labels `G - v`
/// with vertices above `v` shifted down by one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertex: usize,
    pub triple: Triple,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub cotree: Cotree,
    pub graph6: String,
    pub goal: TripleGoalSet,
    pub is_obstruction: bool,
    pub is_minimal: bool,
    /// one per vertex, filled only for obstructions
    pub witnesses: Vec<Witness>,
}

impl ObstructionReport {
    /// `{graph6, dsl, goal, minimal, witnesses}`
    pub fn to_json(&self) -> serde_json::Value {
        let witnesses: Vec<_> = self
            .witnesses
            .iter()
            .map(|w| {
                serde_json::json!({
                    "vertex": w.vertex,
                    "triple": [w.triple.p, w.triple.q, w.triple.r],
                    "certificate": w.certificate.to_json()["labels"],
                })
            })
            .collect();
        serde_json::json!({
            "graph6": self.graph6,
            "dsl": self.cotree.to_dsl(),
            "goal": self.goal.triples.iter().map(|t| [t.p, t.q, t.r]).collect::<Vec<_>>(),
            "obstruction": self.is_obstruction,
            "minimal": self.is_minimal,
            "witnesses": witnesses,
        })
    }
}

/// Checks that no goal triple fits `tree` but every one-vertex deletion fits one.
pub fn is_minimal_obstruction(tree: &Cotree, goal: &TripleGoalSet) -> ObstructionReport {
    let g = tree.realize();
    let is_obstruction = goal.first_admitted(tree).is_none();
    let mut witnesses = Vec::new();
    if is_obstruction {
        for v in 0..g.order() {
            let sub = recognize(&g.remove_vertex(v)).expect("induced subgraphs of cographs are cographs");
            let Some(triple) = goal.first_admitted(&sub) else { break };
            let certificate = extract_certificate(&sub, triple).expect("triple is feasible");
            witnesses.push(Witness { vertex: v, triple, certificate });
        }
    }
    let is_minimal = is_obstruction && witnesses.len() == g.order();
    ObstructionReport {
        cotree: tree.clone(),
        graph6: to_graph6(&g),
        goal: goal.clone(),
        is_obstruction,
        is_minimal,
        witnesses,
    }
}

pub const A2_DSL: [&str; 7] = [
    "K(5)",
    "C(U(3*K(3)))",
    "J(U(2*K(3)),I(2))",
    "J(U(2*J(2*I(2))),I(3))",
    "J(J(2*I(2)),U(K(1),K(2)))",
    "J(U(J(2*I(2)),K(3)),I(2))",
    "C(U(3*K(2),K(1)))",
];

fn dsl(s: &str) -> Cotree {
    parse_cotree(s).unwrap_or_else(|e| panic!("built-in expression {s:?}: {e}"))
}

/// The seven minimal obstructions for vertex arboricity two.
pub fn family_a2() -> Vec<Cotree> {
    A2_DSL.iter().map(|s| dsl(s)).collect()
}

/// Expressions of the arboricity-`p` obstruction family.
pub fn family_ap_dsl(p: usize) -> Result<Vec<String>, ObstructionError> {
    if p < 2 {
        return Err(ObstructionError::Parameter(format!("family needs p >= 2, got {p}")));
    }
    let mut out = vec![
        format!("K({})", 2 * p + 1),
        format!("C(U({}*K({})))", p + 1, p + 1),
        format!("J(U(2*K({})),I(2))", 2 * p - 1),
        format!("J(U(2*C(U({p}*K({p})))),I({}))", p + 1),
        format!("J(C(U({p}*K(2))),U(K(1),K({p})))"),
        format!("J(U(C(U({p}*K({p}))),K({})),I(2))", 2 * p - 1),
    ];
    for i in 0..=(p - 1) / 2 {
        let ones = p - 1 - 2 * i;
        if ones == 0 {
            out.push(format!("C(U({}*K(2)))", p + 1 + i));
        } else {
            out.push(format!("C(U({}*K(2),{ones}*K(1)))", p + 1 + i));
        }
    }
    Ok(out)
}

pub fn family_ap(p: usize) -> Result<Vec<Cotree>, ObstructionError> {
    Ok(family_ap_dsl(p)?.iter().map(|s| dsl(s)).collect())
}

/// Integer partitions of `m` as non-increasing part lists.
fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

fn star(k: usize) -> Cotree {
    if k == 1 {
        Cotree::leaf()
    } else {
        Cotree::join(vec![Cotree::leaf(), Cotree::edgeless(k - 1)])
    }
}

/// Every star forest on `m` vertices with at least one edge.
pub fn star_forests(m: usize) -> Result<Vec<Cotree>, ObstructionError> {
    if m < 2 {
        return Err(ObstructionError::Parameter(format!("star forests need m >= 2, got {m}")));
    }
    Ok(partitions(m)
        .into_iter()
        .filter(|parts| parts[0] >= 2)
        .map(|parts| Cotree::union(parts.into_iter().map(star).collect()))
        .collect())
}

/// The complement of `(p+1-i) K_{p+1-i}` joined with `i` star forests on `p+2-i` vertices.
pub fn family_oi(p: usize, i: usize, forests: &[Cotree]) -> Result<Cotree, ObstructionError> {
    if p < 2 || i > p {
        return Err(ObstructionError::Parameter(format!("need 2 <= p and i <= p, got p={p}, i={i}")));
    }
    if forests.len() != i {
        return Err(ObstructionError::Parameter(format!("expected {i} forests, got {}", forests.len())));
    }
    let m = p + 2 - i;
    for f in forests {
        if f.order() != m {
            return Err(ObstructionError::WrongForestSize { expected: m, got: f.order() });
        }
        if !f.realize().is_forest() {
            return Err(ObstructionError::Parameter("argument is not a forest".into()));
        }
    }
    let k = p + 1 - i;
    let base = Cotree::union(vec![Cotree::complete(k); k]).complement();
    let mut parts = vec![base];
    parts.extend(forests.iter().cloned());
    Ok(Cotree::join(parts))
}

/// Non-decreasing index sequences of length `k` over `0..m`.
fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in from..m {
            cur.push(x);
            go(m, k, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All `O_i` graphs for `(p, i)`, one per multiset of star forests.
pub fn all_oi(p: usize, i: usize) -> Result<Vec<Cotree>, ObstructionError> {
    let forests = if i == 0 { Vec::new() } else { star_forests(p + 2 - i)? };
    multisets(forests.len(), i)
        .into_iter()
        .map(|pick| {
            let chosen: Vec<Cotree> = pick.iter().map(|&x| forests[x].clone()).collect();
            family_oi(p, i, &chosen)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OiCount {
    pub p: usize,
    pub i: usize,
    /// star forests available per slot
    pub forests: usize,
    /// multisets of size `i` over those forests
    pub multisets: u64,
    /// `forests^i / i!`
    pub formula: f64,
    /// distinct graphs after canonical-code deduplication
    pub distinct: usize,
    pub formula_matches: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

pub fn count_oi(p: usize, i: usize) -> Result<OiCount, ObstructionError> {
    let graphs = all_oi(p, i)?;
    let mut codes: Vec<_> = graphs.iter().map(Cotree::canonical_code).collect();
    codes.sort();
    codes.dedup();
    let m = if i == 0 { 0 } else { star_forests(p + 2 - i)?.len() };
    let fact: f64 = (1..=i).map(|x| x as f64).product();
    let formula = (m as f64).powi(i as i32) / fact;
    let distinct = codes.len();
    Ok(OiCount {
        p,
        i,
        forests: m,
        multisets: if i == 0 { 1 } else { binomial((m + i - 1) as u64, i as u64) },
        formula,
        distinct,
        formula_matches: formula == distinct as f64,
    })
}

/// `(G1 + G2) ⊕ I_{p+2}`, after checking that both inputs have vertex
/// arboricity and chromatic number `p + 1`.
pub fn build_h(g1: &Cotree, g2: &Cotree, p: usize) -> Result<Cotree, ObstructionError> {
    for (name, g) in [("G1", g1), ("G2", g2)] {
        let (rho, chi) = (vertex_arboricity(g), chromatic_number(g));
        if rho != p + 1 || chi != p + 1 {
            return Err(ObstructionError::Precondition(format!(
                "{name} has arboricity {rho} and chromatic number {chi}, expected {}",
                p + 1
            )));
        }
    }
    Ok(Cotree::join(vec![Cotree::union(vec![g1.clone(), g2.clone()]), Cotree::edgeless(p + 2)]))
}

/// Whether some vertex subset of `g` induces a copy of `h`.
pub fn contains_induced(g: &Graph, h: &Graph) -> bool {
    let (n, k) = (g.order(), h.order());
    if k > n {
        return false;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(h.degree(u)));
    let fits = |x: usize, u: usize| g.degree(x) >= h.degree(u) && n - 1 - g.degree(x) >= k - 1 - h.degree(u);
    let candidates: Vec<Vec<usize>> = (0..k).map(|u| (0..n).filter(|&x| fits(x, u)).collect()).collect();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; n];

    fn extend(
        i: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        g: &Graph,
        h: &Graph,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let u = order[i];
        for &x in &candidates[u] {
            if used[x] {
                continue;
            }
            let consistent = order[..i].iter().all(|&w| h.has_edge(u, w) == g.has_edge(x, image[w]));
            if !consistent {
                continue;
            }
            image[u] = x;
            used[x] = true;
            if extend(i + 1, order, candidates, g, h, image, used) {
                return true;
            }
            used[x] = false;
        }
        false
    }

    extend(0, &order, &candidates, g, h, &mut image, &mut used)
}

pub fn is_family_free(g: &Graph, family: &[Graph]) -> bool {
    family.iter().all(|h| !contains_induced(g, h))
}

/// Minimal obstructions among all cographs with at most `n_max` vertices,
/// sorted by canonical code. `jobs = None` uses the global thread pool.
pub fn search_minimal_obstructions(
    n_max: usize,
    goal: &TripleGoalSet,
    jobs: Option<usize>,
) -> Result<Vec<ObstructionReport>, ObstructionError> {
    if n_max > 12 {
        return Err(ObstructionError::Parameter(format!("search is limited to 12 vertices, got {n_max}")));
    }
    let trees = enumerate_up_to(n_max);
    let run = || {
        let mut found: Vec<(Vec<u8>, ObstructionReport)> = trees
            .par_iter()
            .filter(|t| goal.first_admitted(t).is_none())
            .map(|t| is_minimal_obstruction(t, goal))
            .filter(|r| r.is_minimal)
            .map(|r| (r.cotree.canonical_code().as_bytes().to_vec(), r))
            .collect();
        found.sort_by(|a, b| a.0.cmp(&b.0));
        found.into_iter().map(|(_, r)| r).collect()
    };
    match jobs {
        None => Ok(run()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| ObstructionError::Parameter(e.to_string()))?;
            Ok(pool.install(run))
        }
    }
}

/// Components of a disconnected graph with `r_i` = least deletions to make
/// the component `q`-colourable, minus one. `None` when some component is
/// already `q`-colourable.
pub fn component_budgets(tree: &Cotree, q: usize) -> Option<Vec<(Cotree, usize)>> {
    let g = tree.realize();
    g.components()
        .into_iter()
        .map(|comp| {
            let sub = recognize(&g.induced_subgraph(&comp).expect("in range")).expect("cograph");
            let r = min_deletions(&sub, 0, q).checked_sub(1)?;
            Some((sub, r))
        })
        .collect()
}

/// Groups reports by vertex count, for summaries.
pub fn by_order(reports: &[ObstructionReport]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for r in reports {
        *out.entry(r.cotree.order()).or_insert(0) += 1;
    }
    out
}
