#![allow(dead_code)]

use copart::graph::Graph;
use copart::Cotree;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random cotree on exactly `n` leaves: each internal node splits its
/// leaves into 2 to 4 random non-empty parts.
pub fn random_cotree(rng: &mut ChaCha8Rng, n: usize) -> Cotree {
    fn build(rng: &mut ChaCha8Rng, n: usize, join: bool) -> Cotree {
        if n == 1 {
            return Cotree::leaf();
        }
        let k = rng.gen_range(2..=4.min(n));
        let mut cuts: Vec<usize> = Vec::new();
        while cuts.len() < k - 1 {
            let c = rng.gen_range(1..n);
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
        cuts.sort_unstable();
        cuts.push(n);
        let mut prev = 0;
        let parts = cuts
            .into_iter()
            .map(|c| {
                let part = build(rng, c - prev, !join);
                prev = c;
                part
            })
            .collect();
        if join {
            Cotree::join(parts)
        } else {
            Cotree::union(parts)
        }
    }
    let join = rng.gen_bool(0.5);
    build(rng, n, join)
}

/// Binary cotree whose splits fall in the middle third, so height is `O(log n)`.
pub fn balanced_cotree(rng: &mut ChaCha8Rng, n: usize) -> Cotree {
    fn build(rng: &mut ChaCha8Rng, n: usize, join: bool) -> Cotree {
        if n == 1 {
            return Cotree::leaf();
        }
        let left = if n < 3 { 1 } else { rng.gen_range(n / 3..=n - n / 3) };
        let parts = vec![build(rng, left, !join), build(rng, n - left, !join)];
        if join {
            Cotree::join(parts)
        } else {
            Cotree::union(parts)
        }
    }
    let join = rng.gen_bool(0.5);
    build(rng, n, join)
}

/// Every labelled graph on `n` vertices, `n ≤ 7`.
pub fn all_labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let m = pairs.len();
    (0u64..1 << m).map(move |mask| {
        let edges: Vec<(usize, usize)> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least adjacency bit string over all relabellings.
pub fn brute_canonical_form(g: &Graph) -> Vec<bool> {
    let n = g.order();
    permutations(n)
        .into_iter()
        .map(|perm| {
            (0..n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .map(|(i, j)| g.has_edge(perm[i], perm[j]))
                .collect::<Vec<bool>>()
        })
        .min()
        .unwrap()
}

/// One representative per isomorphism class of graphs on `n ≤ 6` vertices.
pub fn all_unlabelled_graphs(n: usize) -> Vec<Graph> {
    let mut seen = std::collections::HashSet::new();
    all_labelled_graphs(n).filter(|g| seen.insert(brute_canonical_form(g))).collect()
}
