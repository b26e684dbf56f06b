//! Clique strength of a cograph.
//!
//! A thin `s`-clique is an induced `K_s` (strength `s`); a thick `s`-clique is
//! an induced complete multipartite graph with `s` parts of size two, the
//! complement of `sK_2` (strength `s + 1`). The least `q` for which a cograph
//! has a `(1,q,0)`-partition is its strength minus two.
//!
//! Bottom-up rules: a leaf has `ω = 1`, `τ = 0`. A union takes the maximum of
//! its children for both, and `τ ≥ 1` because two vertices from different
//! children are non-adjacent. A join sums both: every non-adjacent pair of a
//! thick clique lies inside one child.

use crate::cotree::{Cotree, NodeKind};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrengthProfile {
    /// largest thin clique
    pub omega: usize,
    /// largest thick clique
    pub tau: usize,
    pub strength: usize,
}

impl StrengthProfile {
    pub fn new(omega: usize, tau: usize) -> Self {
        StrengthProfile { omega, tau, strength: omega.max(tau + 1) }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("strength is undefined for the empty graph")]
pub struct EmptyGraph;

pub fn strength_profile(tree: &Cotree) -> Result<StrengthProfile, EmptyGraph> {
    if tree.is_empty() {
        return Err(EmptyGraph);
    }
    let mut prof: Vec<(usize, usize)> = Vec::with_capacity(tree.nodes().len());
    for node in tree.nodes() {
        let kids = node.children.iter().map(|&c| prof[c]);
        let entry = match node.kind {
            NodeKind::Leaf(_) => (1, 0),
            NodeKind::Union => {
                let (w, t) = kids.fold((0, 0), |(w, t), (cw, ct)| (w.max(cw), t.max(ct)));
                (w, t.max(1))
            }
            NodeKind::Join => kids.fold((0, 0), |(w, t), (cw, ct)| (w + cw, t + ct)),
        };
        prof.push(entry);
    }
    let (omega, tau) = *prof.last().unwrap();
    Ok(StrengthProfile::new(omega, tau))
}

/// `max(0, s(G) - 2)`; zero for the single-vertex graph.
pub fn q_from_strength(tree: &Cotree) -> Result<usize, EmptyGraph> {
    strength_profile(tree).map(|s| s.strength.saturating_sub(2))
}
