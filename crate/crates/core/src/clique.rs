//! Exact clique and independence numbers, and k-clique listing.
//!
//! Maximum clique uses branch-and-bound over candidate bitsets with a greedy
//! colouring bound (a colour class is an independent set, so `c` classes
//! can contribute at most `c` further clique vertices).

use crate::bits::{self, Ones};
use crate::graph::Graph;

/// `ω(G)`.
pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

/// `α(G) = ω(Ḡ)`.
pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

/// A maximum clique, sorted.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut best = Vec::new();
    if let Some(masks) = g.masks() {
        let mut cur = Vec::new();
        expand_small(&masks, bits::low_mask(g.n()), &mut cur, &mut best);
    } else {
        let mut cur = Vec::new();
        let all: Vec<u64> = (0..g.words())
            .map(|w| {
                let lo = w * 64;
                bits::low_mask(g.n().saturating_sub(lo).min(64))
            })
            .collect();
        expand_wide(g, all, &mut cur, &mut best);
    }
    best.sort_unstable();
    best
}

/// Greedy colouring of the candidate set; returns vertices in colour order
/// with their colour numbers (1-based), ascending.
fn colour_order(masks: &[u64], cand: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(cand.count_ones() as usize);
    let mut rest = cand;
    let mut colour = 0;
    while rest != 0 {
        colour += 1;
        let mut avail = rest;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !masks[v];
            rest &= !(1 << v);
            out.push((v, colour));
        }
    }
    out
}

fn expand_small(masks: &[u64], mut cand: u64, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    let order = colour_order(masks, cand);
    for &(v, c) in order.iter().rev() {
        if cur.len() + c <= best.len() {
            return;
        }
        cur.push(v);
        let next = cand & masks[v];
        if next == 0 {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand_small(masks, next, cur, best);
        }
        cur.pop();
        cand &= !(1 << v);
    }
}

fn colour_order_wide(g: &Graph, cand: &[u64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut rest = cand.to_vec();
    let mut colour = 0;
    while rest.iter().any(|&w| w != 0) {
        colour += 1;
        let mut avail = rest.clone();
        loop {
            let Some(v) = bits::iter(&avail).next() else { break };
            for (a, r) in avail.iter_mut().zip(g.row(v)) {
                *a &= !r;
            }
            bits::clear(&mut avail, v);
            bits::clear(&mut rest, v);
            out.push((v, colour));
        }
    }
    out
}

fn expand_wide(g: &Graph, mut cand: Vec<u64>, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    let order = colour_order_wide(g, &cand);
    for &(v, c) in order.iter().rev() {
        if cur.len() + c <= best.len() {
            return;
        }
        cur.push(v);
        let next: Vec<u64> = cand.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
        if next.iter().all(|&w| w == 0) {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand_wide(g, next, cur, best);
        }
        cur.pop();
        bits::clear(&mut cand, v);
    }
}

/// All `k`-cliques as sorted vertex lists, in lexicographic order.
pub fn find_k_cliques(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur = Vec::with_capacity(k);
    if let Some(masks) = g.masks() {
        fn rec(masks: &[u64], cand: u64, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            if (cand.count_ones() as usize) < k - cur.len() {
                return;
            }
            for v in Ones(cand) {
                cur.push(v);
                let above = if v == 63 { 0 } else { !0u64 << (v + 1) };
                rec(masks, cand & masks[v] & above, k, cur, out);
                cur.pop();
            }
        }
        rec(&masks, bits::low_mask(g.n()), k, &mut cur, &mut out);
    } else {
        fn rec(g: &Graph, cand: Vec<usize>, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for (i, &v) in cand.iter().enumerate() {
                if cand.len() - i < k - cur.len() {
                    break;
                }
                cur.push(v);
                let next = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
                rec(g, next, k, cur, out);
                cur.pop();
            }
        }
        rec(g, (0..g.n()).collect(), k, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_multipartite, cycle, petersen};

    fn brute_clique_number(g: &Graph) -> usize {
        let n = g.n();
        (0u64..1 << n)
            .filter(|&s| {
                let vs: Vec<usize> = Ones(s).collect();
                g.is_clique(&vs)
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_examples() {
        let k8m = complete_multipartite(&[2, 2, 2, 2]);
        assert_eq!(independence_number(&k8m), 2);
        assert_eq!(clique_number(&cycle(5)), 2);
        assert_eq!(clique_number(&complete(7)), 7);
        assert_eq!(clique_number(&petersen()), 2);
        assert_eq!(independence_number(&petersen()), 4);
    }

    #[test]
    fn k_cliques_of_k2222() {
        let g = complete_multipartite(&[2, 2, 2, 2]);
        let found = find_k_cliques(&g, 4);
        assert_eq!(found.len(), 16);
        let brute: Vec<Vec<usize>> = (0u64..256)
            .filter(|s| s.count_ones() == 4)
            .map(|s| Ones(s).collect::<Vec<_>>())
            .filter(|vs| g.is_clique(vs))
            .collect();
        let mut sorted = brute.clone();
        sorted.sort();
        assert_eq!(found, sorted);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(1..=11);
            let p = rng.gen::<f64>();
            let edges: Vec<_> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|_| rng.gen_bool(p)).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            assert_eq!(clique_number(&g), brute_clique_number(&g), "{g:?}");
        }
    }

    #[test]
    fn wide_path_agrees_with_word_path() {
        // 70 vertices: disjoint K6 plus a long cycle
        let g = complete(6).disjoint_union(&cycle(64));
        assert!(g.n() > crate::graph::WORD_LIMIT);
        assert_eq!(clique_number(&g), 6);
        assert_eq!(find_k_cliques(&g, 3).len(), 20);
        assert_eq!(independence_number(&g), 1 + 32);
    }
}
