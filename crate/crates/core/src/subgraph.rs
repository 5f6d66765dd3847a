//! Subgraph (monomorphism) search: injective maps `φ: V(H) -> V(G)` with
//! `uv ∈ E(H) ⇒ φ(u)φ(v) ∈ E(G)`.

use crate::bits::{self, Ones};
use crate::graph::Graph;

/// Some embedding of `h` into `g` as a (not necessarily induced) subgraph.
pub fn subgraph_embed(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    subgraph_embed_pinned(h, g, &vec![None; h.n()])
}

/// As [`subgraph_embed`], with `pinned[i] = Some(x)` forcing `φ(i) = x`.
pub fn subgraph_embed_pinned(h: &Graph, g: &Graph, pinned: &[Option<usize>]) -> Option<Vec<usize>> {
    assert_eq!(pinned.len(), h.n());
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return None;
    }
    let order = search_order(h, pinned);
    let mut image = vec![usize::MAX; h.n()];
    let mut used = vec![0u64; g.words()];
    // Pinned vertices must be distinct and consistent among themselves.
    for (i, p) in pinned.iter().enumerate() {
        if let Some(x) = *p {
            if x >= g.n() || bits::test(&used, x) || h.degree(i) > g.degree(x) {
                return None;
            }
            bits::set(&mut used, x);
            image[i] = x;
        }
    }
    for (u, v) in h.edges() {
        if let (Some(a), Some(b)) = (pinned[u], pinned[v]) {
            if !g.has_edge(a, b) {
                return None;
            }
        }
    }
    let free: Vec<usize> = order.into_iter().filter(|&i| pinned[i].is_none()).collect();
    if let (Some(hm), Some(gm)) = (h.masks(), g.masks()) {
        let used = used[0];
        if extend_small(&hm, &gm, &free, 0, &mut image, used) {
            return Some(image);
        }
        None
    } else if extend_wide(h, g, &free, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

/// Pinned vertices first, then repeatedly the unplaced vertex with the most
/// already-ordered neighbours (ties: higher degree, lower index).
fn search_order(h: &Graph, pinned: &[Option<usize>]) -> Vec<usize> {
    let n = h.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for (i, p) in pinned.iter().enumerate() {
        if p.is_some() {
            placed[i] = true;
            order.push(i);
        }
    }
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = h.neighbors(v).filter(|&w| placed[w]).count();
                (back, h.degree(v), usize::MAX - v)
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    order
}

fn extend_small(hm: &[u64], gm: &[u64], free: &[usize], depth: usize, image: &mut [usize], used: u64) -> bool {
    let Some(&v) = free.get(depth) else {
        return true;
    };
    let need = hm[v].count_ones();
    let mut cand = !used & bits::low_mask(gm.len());
    for w in Ones(hm[v]) {
        if image[w] != usize::MAX {
            cand &= gm[image[w]];
        }
    }
    for x in Ones(cand) {
        if gm[x].count_ones() < need {
            continue;
        }
        image[v] = x;
        if extend_small(hm, gm, free, depth + 1, image, used | 1 << x) {
            return true;
        }
    }
    image[v] = usize::MAX;
    false
}

fn extend_wide(h: &Graph, g: &Graph, free: &[usize], depth: usize, image: &mut [usize], used: &mut Vec<u64>) -> bool {
    let Some(&v) = free.get(depth) else {
        return true;
    };
    let need = h.degree(v);
    let placed_nbrs: Vec<usize> = h.neighbors(v).filter(|&w| image[w] != usize::MAX).map(|w| image[w]).collect();
    for x in 0..g.n() {
        if bits::test(used, x) || g.degree(x) < need || !placed_nbrs.iter().all(|&y| g.has_edge(x, y)) {
            continue;
        }
        image[v] = x;
        bits::set(used, x);
        let ok = extend_wide(h, g, free, depth + 1, image, used);
        bits::clear(used, x);
        if ok {
            return true;
        }
    }
    image[v] = usize::MAX;
    false
}

/// Whether `map` is an injective edge-preserving map from `h` into `g`.
pub fn is_subgraph_map(h: &Graph, g: &Graph, map: &[usize]) -> bool {
    if map.len() != h.n() || map.iter().any(|&x| x >= g.n()) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &x in map {
        if std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    h.edges().all(|(u, v)| g.has_edge(map[u], map[v]))
}
