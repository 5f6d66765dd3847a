#![allow(dead_code)]

use minorforge::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    minorforge::extremal::trial_rng(seed, stream)
}

/// `G(n, p)`.
pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Every labelled graph on `n` vertices, indexed by its edge mask.
pub fn labelled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap()
    })
}

/// Isomorphism-invariant key by trying every permutation: the smallest
/// upper-triangle bit string.
pub fn brute_key(g: &Graph) -> u64 {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut key = 0u64;
        let mut bit = 0;
        for j in 0..n {
            for i in 0..j {
                if g.has_edge(perm[i], perm[j]) {
                    key |= 1 << bit;
                }
                bit += 1;
            }
        }
        best = best.min(key);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of unlabelled graphs on `n` vertices by Burnside's lemma over
/// all vertex permutations.
pub fn burnside_count(n: usize) -> u64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: u128 = 0;
    let mut group = 0u128;
    loop {
        // cycles of the induced action on unordered pairs
        let mut seen = vec![vec![false; n]; n];
        let mut cycles = 0u32;
        for j in 0..n {
            for i in 0..j {
                if seen[i][j] {
                    continue;
                }
                cycles += 1;
                let (mut a, mut b) = (i, j);
                while !seen[a.min(b)][a.max(b)] {
                    seen[a.min(b)][a.max(b)] = true;
                    a = perm[a];
                    b = perm[b];
                }
            }
        }
        total += 1u128 << cycles;
        group += 1;
        if !next_permutation(&mut perm) {
            return (total / group) as u64;
        }
    }
}

/// Contraction gain by trying every map from the side's vertices to
/// `{unused, branch set 0, …, branch set p-1}`.
pub fn brute_gain(inst: &minorforge::SeparatorInstance, side: usize) -> usize {
    let gi = inst.side_graph(side);
    let p = inst.s.len();
    let k = gi.n() - p;
    let mut best = 0;
    let mut assign = vec![0usize; k];
    loop {
        let mut sets: Vec<Vec<usize>> = (0..p).map(|j| vec![j]).collect();
        for (x, &a) in assign.iter().enumerate() {
            if a > 0 {
                sets[a - 1].push(p + x);
            }
        }
        if sets.iter().all(|b| gi.induced_subgraph(b).0.is_connected()) {
            let mut d = 0;
            for i in 0..p {
                for j in i + 1..p {
                    if !gi.has_edge(i, j) && sets[i].iter().any(|&a| sets[j].iter().any(|&b| gi.has_edge(a, b))) {
                        d += 1;
                    }
                }
            }
            best = best.max(d);
        }
        let mut i = 0;
        while i < k && assign[i] == p {
            assign[i] = 0;
            i += 1;
        }
        if i == k {
            return best;
        }
        assign[i] += 1;
    }
}

/// Random separation on `n` vertices with `S = {0, 1, 2, 3}` and side 1 of
/// size `a`.
pub fn random_separation(n: usize, a: usize, p: f64, rng: &mut ChaCha8Rng) -> minorforge::SeparatorInstance {
    let side = |v: usize| if v < 4 { 0 } else if v < 4 + a { 1 } else { 2 };
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if (side(i) == 0 || side(j) == 0 || side(i) == side(j)) && rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let g = Graph::from_edges(n, edges).unwrap();
    minorforge::SeparatorInstance::new(g, (0..4).collect(), (4..4 + a).collect()).unwrap()
}
