//! Normalized cotrees: recognition, realization, metrics and canonical codes.
//!
//! A [`Cotree`] is stored as an arena in post-order (children before their
//! parent, root last). Constructors keep it normalized: every internal node has
//! at least two children and no node has a child of its own kind.

use crate::bitset::BitSet;
use crate::graph::Graph;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf(usize),
    Union,
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub children: Vec<usize>,
    /// Number of leaves below (and including) this node.
    pub leaves: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Cotree {
    nodes: Vec<Node>,
}

/// Four vertices `a-b-c-d` inducing a path in the input graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct P4Witness(pub [usize; 4]);

impl fmt::Display for P4Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a}-{b}-{c}-{d}")
    }
}

/// Isomorphism invariant of the realized graph; equal codes mean isomorphic cographs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Debug for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cotree({})", self.to_dsl())
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dsl())
    }
}

impl Cotree {
    /// The cotree of the graph with no vertices.
    pub fn empty() -> Self {
        Cotree { nodes: Vec::new() }
    }

    pub fn leaf() -> Self {
        Cotree { nodes: vec![Node { kind: NodeKind::Leaf(0), children: vec![], leaves: 1 }] }
    }

    pub fn complete(k: usize) -> Self {
        Cotree::join((0..k).map(|_| Cotree::leaf()).collect())
    }

    pub fn edgeless(k: usize) -> Self {
        Cotree::union((0..k).map(|_| Cotree::leaf()).collect())
    }

    pub fn union(parts: Vec<Cotree>) -> Self {
        Cotree::compose(NodeKind::Union, parts)
    }

    pub fn join(parts: Vec<Cotree>) -> Self {
        Cotree::compose(NodeKind::Join, parts)
    }

    /// `k` disjoint copies.
    pub fn repeat(&self, k: usize) -> Self {
        Cotree::union(vec![self.clone(); k])
    }

    fn compose(kind: NodeKind, parts: Vec<Cotree>) -> Self {
        let mut parts: Vec<Cotree> = parts.into_iter().filter(|p| !p.is_empty()).collect();
        if parts.len() <= 1 {
            return parts.pop().unwrap_or_else(Cotree::empty);
        }
        let total_nodes: usize = parts.iter().map(|p| p.nodes.len()).sum();
        let mut nodes = Vec::with_capacity(total_nodes + 1);
        let mut children = Vec::new();
        let mut vertex_offset = 0;
        for part in parts {
            let node_offset = nodes.len();
            let root = part.nodes.len() - 1;
            let merge = part.nodes[root].kind == kind;
            for (i, mut node) in part.nodes.into_iter().enumerate() {
                if i == root && merge {
                    children.extend(node.children.iter().map(|c| c + node_offset));
                    continue;
                }
                if let NodeKind::Leaf(v) = &mut node.kind {
                    *v += vertex_offset;
                }
                for c in &mut node.children {
                    *c += node_offset;
                }
                nodes.push(node);
                if i == root {
                    children.push(nodes.len() - 1);
                }
            }
            vertex_offset = children_leaf_total(&nodes, &children);
        }
        let leaves = vertex_offset;
        nodes.push(Node { kind, children, leaves });
        Cotree { nodes }
    }

    /// Swaps union and join nodes; the result realizes the complement graph.
    pub fn complement(&self) -> Self {
        let nodes = self
            .nodes
            .iter()
            .map(|n| Node {
                kind: match n.kind {
                    NodeKind::Union => NodeKind::Join,
                    NodeKind::Join => NodeKind::Union,
                    leaf => leaf,
                },
                ..n.clone()
            })
            .collect();
        Cotree { nodes }
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of vertices of the realized graph.
    pub fn order(&self) -> usize {
        self.nodes.last().map_or(0, |r| r.leaves)
    }

    pub fn root(&self) -> Option<usize> {
        self.nodes.len().checked_sub(1)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    /// Vertex ids below `node`, in left-to-right leaf order.
    pub fn vertices_under(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes[node].leaves);
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            match self.nodes[x].kind {
                NodeKind::Leaf(v) => out.push(v),
                _ => stack.extend(self.nodes[x].children.iter().rev()),
            }
        }
        out
    }

    pub fn realize(&self) -> Graph {
        let n = self.order();
        let mut rows = vec![BitSet::new(n); n];
        let mut below: Vec<Vec<usize>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let verts = match node.kind {
                NodeKind::Leaf(v) => vec![v],
                kind => {
                    let groups: Vec<&Vec<usize>> = node.children.iter().map(|&c| &below[c]).collect();
                    if kind == NodeKind::Join {
                        for (i, a) in groups.iter().enumerate() {
                            for b in &groups[i + 1..] {
                                for &u in a.iter() {
                                    for &v in b.iter() {
                                        rows[u].insert(v);
                                        rows[v].insert(u);
                                    }
                                }
                            }
                        }
                    }
                    groups.into_iter().flatten().copied().collect()
                }
            };
            below.push(verts);
        }
        Graph::from_rows(rows)
    }

    /// Longest root-to-leaf path, counted in edges (a single leaf has height 0).
    pub fn height(&self) -> usize {
        let mut h = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            h[i] = node.children.iter().map(|&c| h[c] + 1).max().unwrap_or(0);
        }
        h.last().copied().unwrap_or(0)
    }

    /// Largest arity of a join node, or 0 if there is none.
    pub fn max_join_children(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Join).map(|n| n.children.len()).max().unwrap_or(0)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        let mut codes: Vec<Vec<u8>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let code = match node.kind {
                NodeKind::Leaf(_) => b"v".to_vec(),
                kind => {
                    let mut kids: Vec<&[u8]> = node.children.iter().map(|&c| codes[c].as_slice()).collect();
                    kids.sort_unstable();
                    let mut code = vec![if kind == NodeKind::Union { b'U' } else { b'J' }, b'('];
                    for k in kids {
                        code.extend_from_slice(k);
                    }
                    code.push(b')');
                    code
                }
            };
            codes.push(code);
        }
        CanonicalCode(codes.pop().unwrap_or_default())
    }

    /// Expression in the cotree DSL; parsing it back yields an isomorphic cotree.
    pub fn to_dsl(&self) -> String {
        if self.is_empty() {
            return String::new();
        }
        let mut text: Vec<String> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let s = match node.kind {
                NodeKind::Leaf(_) => "K(1)".to_string(),
                kind => {
                    let all_leaves = node.leaves == node.children.len();
                    match (kind, all_leaves) {
                        (NodeKind::Union, true) => format!("I({})", node.leaves),
                        (NodeKind::Join, true) => format!("K({})", node.leaves),
                        _ => {
                            let mut args: Vec<String> = Vec::new();
                            let kids: Vec<&str> = node.children.iter().map(|&c| text[c].as_str()).collect();
                            let mut i = 0;
                            while i < kids.len() {
                                let run = kids[i..].iter().take_while(|k| **k == kids[i]).count();
                                if run > 1 {
                                    args.push(format!("{run}*{}", kids[i]));
                                } else {
                                    args.push(kids[i].to_string());
                                }
                                i += run;
                            }
                            let tag = if kind == NodeKind::Union { 'U' } else { 'J' };
                            format!("{tag}({})", args.join(","))
                        }
                    }
                }
            };
            text.push(s);
        }
        text.pop().unwrap()
    }

    /// Rebuilds the arena, letting `order` permute each internal node's child list.
    /// Leaf vertex ids are preserved.
    pub fn reorder_children(&self, order: &mut dyn FnMut(&mut Vec<usize>)) -> Cotree {
        let Some(root) = self.root() else { return Cotree::empty() };
        let mut nodes = Vec::with_capacity(self.nodes.len());
        // explicit stack: (old index, children already emitted?)
        let mut stack = vec![(root, false)];
        let mut emitted: Vec<usize> = Vec::new();
        let mut pending: Vec<Vec<usize>> = Vec::new();
        while let Some((x, expanded)) = stack.pop() {
            let node = &self.nodes[x];
            if node.children.is_empty() {
                nodes.push(node.clone());
                emitted.push(nodes.len() - 1);
                continue;
            }
            if !expanded {
                let mut kids = node.children.clone();
                order(&mut kids);
                stack.push((x, true));
                for &c in kids.iter().rev() {
                    stack.push((c, false));
                }
                pending.push(kids);
            } else {
                let kids = pending.pop().unwrap();
                let start = emitted.len() - kids.len();
                let children = emitted.split_off(start);
                nodes.push(Node { kind: node.kind, children, leaves: node.leaves });
                emitted.push(nodes.len() - 1);
            }
        }
        Cotree { nodes }
    }
}

fn children_leaf_total(nodes: &[Node], children: &[usize]) -> usize {
    children.iter().map(|&c| nodes[c].leaves).sum()
}

/// Builds the cotree of `g`, or returns an induced `P4` if `g` is not a cograph.
///
/// Leaves carry the original vertex ids. At each step the vertex set is split
/// into components, or failing that into co-components; when neither split
/// exists and more than one vertex remains, an induced path is extracted.
pub fn recognize(g: &Graph) -> Result<Cotree, P4Witness> {
    let mut nodes = Vec::new();
    if g.order() > 0 {
        build(g, BitSet::full(g.order()), &mut nodes)?;
    }
    Ok(Cotree { nodes })
}

fn build(g: &Graph, mask: BitSet, nodes: &mut Vec<Node>) -> Result<usize, P4Witness> {
    let size = mask.count();
    if size == 1 {
        let v = mask.first().unwrap();
        nodes.push(Node { kind: NodeKind::Leaf(v), children: vec![], leaves: 1 });
        return Ok(nodes.len() - 1);
    }
    let (kind, parts) = {
        let comps = g.components_within(&mask);
        if comps.len() > 1 {
            (NodeKind::Union, comps)
        } else {
            let co = g.co_components_within(&mask);
            if co.len() > 1 {
                (NodeKind::Join, co)
            } else {
                return Err(find_p4(g, &mask));
            }
        }
    };
    let mut children = Vec::with_capacity(parts.len());
    for part in parts {
        children.push(build(g, part, nodes)?);
    }
    nodes.push(Node { kind, children, leaves: size });
    Ok(nodes.len() - 1)
}

/// Induced P4 inside `mask`, which must be connected and co-connected with ≥ 2 vertices.
fn find_p4(g: &Graph, mask: &BitSet) -> P4Witness {
    for b in mask.iter() {
        for c in g.neighborhood(b).iter().filter(|&c| mask.contains(c)) {
            let mut ends_a = g.neighborhood(b).clone();
            ends_a.intersect_with(mask);
            ends_a.difference_with(g.neighborhood(c));
            ends_a.remove(c);
            if ends_a.is_empty() {
                continue;
            }
            let mut ends_d = g.neighborhood(c).clone();
            ends_d.intersect_with(mask);
            ends_d.difference_with(g.neighborhood(b));
            ends_d.remove(b);
            for a in ends_a.iter() {
                let mut d = ends_d.clone();
                d.difference_with(g.neighborhood(a));
                if let Some(d) = d.first() {
                    return P4Witness([a, b, c, d]);
                }
            }
        }
    }
    unreachable!("a connected, co-connected graph on two or more vertices contains an induced P4")
}

/// Brute-force P4 test over all ordered quadruples; for small graphs only.
pub fn has_induced_p4(g: &Graph) -> bool {
    let n = g.order();
    for b in 0..n {
        for c in g.neighbors(b) {
            for a in g.neighbors(b) {
                if a == c || g.has_edge(a, c) {
                    continue;
                }
                for d in g.neighbors(c) {
                    if d != b && d != a && !g.has_edge(d, b) && !g.has_edge(d, a) {
                        return true;
                    }
                }
            }
        }
    }
    false
}
